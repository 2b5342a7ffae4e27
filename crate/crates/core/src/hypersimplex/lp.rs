//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Only what the chamber code needs: nonnegative variables, rows of the form
//! `a·x ≤ b`, `a·x ≥ b` or `a·x = b`, and a linear objective to maximize.

use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub coeffs: Vec<Rational>,
    pub rel: Rel,
    pub rhs: Rational,
}

#[derive(Debug)]
pub(crate) enum Outcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    obj: Vec<Rational>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if !f.is_zero() {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Sets the reduced-cost row for maximizing `cost · x`.
    fn set_objective(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = (0..=self.width)
            .map(|j| if j < self.width { -cost[j].clone() } else { Rational::zero() })
            .collect();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !cost[b].is_zero() {
                for (o, v) in obj.iter_mut().zip(row) {
                    *o += &cost[b] * v;
                }
            }
        }
        self.obj = obj;
    }

    /// Runs pivots until optimal. Returns false when unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..self.width).find(|&j| allowed[j] && self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((br, bv)) => {
                            ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                        }
                    };
                    if better {
                        best = Some((r, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

pub(crate) fn maximize(objective: &[Rational], rows: &[Row]) -> Outcome {
    let nv = objective.len();
    let rows: Vec<Row> = rows
        .iter()
        .map(|row| {
            if row.rhs.is_negative() {
                Row {
                    coeffs: row.coeffs.iter().map(|c| -c).collect(),
                    rel: match row.rel {
                        Rel::Le => Rel::Ge,
                        Rel::Ge => Rel::Le,
                        Rel::Eq => Rel::Eq,
                    },
                    rhs: -row.rhs.clone(),
                }
            } else {
                row.clone()
            }
        })
        .collect();
    let n_slack = rows.iter().filter(|r| r.rel != Rel::Eq).count();
    let n_art = rows.iter().filter(|r| r.rel != Rel::Le).count();
    let width = nv + n_slack + n_art;

    let mut table = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut s, mut a) = (nv, nv + n_slack);
    for row in &rows {
        let mut t = vec![Rational::zero(); width + 1];
        t[..nv].clone_from_slice(&row.coeffs);
        t[width] = row.rhs.clone();
        match row.rel {
            Rel::Le => {
                t[s] = Rational::one();
                basis.push(s);
                s += 1;
            }
            Rel::Ge => {
                t[s] = -Rational::one();
                s += 1;
                t[a] = Rational::one();
                basis.push(a);
                a += 1;
            }
            Rel::Eq => {
                t[a] = Rational::one();
                basis.push(a);
                a += 1;
            }
        }
        table.push(t);
    }
    let mut tab = Tableau { rows: table, basis, obj: Vec::new(), width };
    let is_art = |j: usize| j >= nv + n_slack && j < width;

    if n_art > 0 {
        let cost: Vec<Rational> = (0..width)
            .map(|j| if is_art(j) { -Rational::one() } else { Rational::zero() })
            .collect();
        tab.set_objective(&cost);
        tab.optimize(&vec![true; width]);
        if tab.obj[width].is_negative() {
            return Outcome::Infeasible;
        }
        // drive remaining zero-valued artificials out of the basis
        let mut r = 0;
        while r < tab.rows.len() {
            if is_art(tab.basis[r]) {
                match (0..nv + n_slack).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(c) => tab.pivot(r, c),
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let mut cost = vec![Rational::zero(); width];
    cost[..nv].clone_from_slice(objective);
    tab.set_objective(&cost);
    let allowed: Vec<bool> = (0..width).map(|j| !is_art(j)).collect();
    if !tab.optimize(&allowed) {
        return Outcome::Unbounded;
    }
    let mut point = vec![Rational::zero(); nv];
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        if b < nv {
            point[b] = row[width].clone();
        }
    }
    Outcome::Optimal { value: tab.obj[width].clone(), point }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn row(coeffs: &[i64], rel: Rel, rhs: i64) -> Row {
        Row { coeffs: coeffs.iter().map(|&c| int(c)).collect(), rel, rhs: int(rhs) }
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let rows = [row(&[1, 0], Rel::Le, 4), row(&[0, 2], Rel::Le, 12), row(&[3, 2], Rel::Le, 18)];
        match maximize(&[int(3), int(5)], &rows) {
            Outcome::Optimal { value, point } => {
                assert_eq!(value, int(36));
                assert_eq!(point, vec![int(2), int(6)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equalities_and_lower_bounds() {
        // max x, x + y = 1, 3y ≥ 1 → x = 2/3
        let rows = [row(&[1, 1], Rel::Eq, 1), row(&[0, 3], Rel::Ge, 1)];
        match maximize(&[int(1), int(0)], &rows) {
            Outcome::Optimal { value, .. } => assert_eq!(value, rat(2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let rows = [row(&[1, 1], Rel::Le, 1), row(&[1, 1], Rel::Ge, 2)];
        assert!(matches!(maximize(&[int(1), int(1)], &rows), Outcome::Infeasible));
        let rows = [row(&[1, -1], Rel::Le, 1)];
        assert!(matches!(maximize(&[int(0), int(1)], &rows), Outcome::Unbounded));
        // negative right-hand sides are flipped
        let rows = [row(&[-1, 0], Rel::Le, -3), row(&[1, 0], Rel::Le, 5)];
        match maximize(&[int(-1), int(0)], &rows) {
            Outcome::Optimal { value, .. } => assert_eq!(value, int(-3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let rows = [row(&[1, 1], Rel::Eq, 2), row(&[2, 2], Rel::Eq, 4), row(&[1, 0], Rel::Le, 1)];
        match maximize(&[int(0), int(1)], &rows) {
            Outcome::Optimal { value, point } => {
                assert_eq!(value, int(2));
                assert_eq!(&point[0] + &point[1], int(2));
            }
            other => panic!("{other:?}"),
        }
    }
}

//! The hypersimplex `Δ_{n,2}` and its subset-sum arrangement.
//!
//! On the slice `Σ x_i = 2` the hyperplanes `Σ_S x = 1` and `Σ_{S^c} x = 1`
//! coincide, so each hyperplane is indexed by a canonical subset: the smaller
//! of `S`, `S^c`, and the one containing 1 when both have size `n/2`. A sign
//! `+` means `Σ_S ξ > 1` for the canonical `S`.

mod lp;
mod moment;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{format_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::weyl::Permutation;
use lp::{Outcome, Rel, Row};

pub use moment::{moment_map, scaled_moment, Gaussian};

/// A vector of exact rationals, usually a point of the slice `Σ x_i = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `Σ_{i ∈ subset} ξ_i` with 1-based indices.
    pub fn subset_sum(&self, subset: &[usize]) -> Rational {
        subset.iter().map(|&i| &self.0[i - 1]).sum()
    }

    /// `σ·ξ` with `(σ·ξ)_{σ(i)} = ξ_i`.
    pub fn permuted(&self, sigma: &Permutation) -> Point {
        let mut out = self.0.clone();
        for (i, x) in self.0.iter().enumerate() {
            out[sigma.apply(i + 1) - 1] = x.clone();
        }
        Point(out)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_strings().join(","))
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',').map(parse_rational).collect::<Result<_>>().map(Point)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

pub fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|i| !subset.contains(i)).collect()
}

/// The canonical representative of `{S, S^c}`.
pub fn canonical_subset(subset: &[usize], n: usize) -> Vec<usize> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    let c = complement(&s, n);
    if s.len() < c.len() || (s.len() == c.len() && s.first() == Some(&1)) {
        s
    } else {
        c
    }
}

/// Canonical subsets indexing the arrangement, by size and then
/// lexicographically.
pub fn hyperplanes(n: usize) -> Vec<Vec<usize>> {
    (2..=n / 2)
        .flat_map(|k| {
            (1..=n)
                .combinations(k)
                .filter(move |s| 2 * k < n || s[0] == 1)
        })
        .collect()
}

/// `"12"` for `{1,2}`; comma separated once an index needs two digits.
pub fn subset_label(subset: &[usize]) -> String {
    if subset.iter().all(|&i| i < 10) {
        subset.iter().map(|i| i.to_string()).collect()
    } else {
        subset.iter().map(|i| i.to_string()).join(",")
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::Range(format!("need n ≥ 4, got {n}")));
    }
    Ok(())
}

/// Errors unless `ξ` lies in the open slice: `Σ ξ_i = 2`, `0 < ξ_i < 1`.
pub fn check_open_slice(xi: &Point) -> Result<()> {
    check_n(xi.n())?;
    let sum: Rational = xi.coords().iter().sum();
    if sum != int(2) {
        return Err(Error::Domain(format!(
            "coordinates of {xi} sum to {}, not 2",
            format_rational(&sum)
        )));
    }
    if let Some(i) = xi.coords().iter().position(|x| !x.is_positive() || *x >= Rational::one()) {
        return Err(Error::Domain(format!("coordinate {} of {xi} is not strictly between 0 and 1", i + 1)));
    }
    Ok(())
}

/// The first subset of size `2..=n−2` (by size, then lexicographically) whose
/// coordinates sum to exactly 1.
pub fn irregular_subset(xi: &Point) -> Result<Option<Vec<usize>>> {
    check_open_slice(xi)?;
    let n = xi.n();
    Ok((2..=n - 2)
        .flat_map(|k| (1..=n).combinations(k))
        .find(|s| xi.subset_sum(s) == Rational::one()))
}

pub fn is_regular(xi: &Point) -> Result<bool> {
    Ok(irregular_subset(xi)?.is_none())
}

fn sign_at(xi: &Point, subset: &[usize]) -> Sign {
    if xi.subset_sum(subset) > Rational::one() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Strict feasibility of a sign pattern on the open slice, optionally with one
/// hyperplane turned into an equality. Returns a point maximizing the slack of
/// all strict constraints.
fn strict_point(n: usize, fixed: &[(&[usize], Sign)], equality: Option<&[usize]>) -> Option<Point> {
    let t = n;
    let row = |entries: &[(usize, i64)], rel: Rel, rhs: i64| {
        let mut coeffs = vec![Rational::zero(); n + 1];
        for &(j, c) in entries {
            coeffs[j] = int(c);
        }
        Row { coeffs, rel, rhs: int(rhs) }
    };
    let mut rows = vec![
        row(&(0..n).map(|j| (j, 1)).collect::<Vec<_>>(), Rel::Eq, 2),
        row(&[(t, 1)], Rel::Le, 1),
    ];
    for j in 0..n {
        rows.push(row(&[(j, 1), (t, 1)], Rel::Le, 1));
        rows.push(row(&[(j, -1), (t, 1)], Rel::Le, 0));
    }
    for &(s, sign) in fixed {
        let (c, rhs) = match sign {
            Sign::Plus => (-1, -1),
            Sign::Minus => (1, 1),
        };
        let mut entries: Vec<(usize, i64)> = s.iter().map(|&i| (i - 1, c)).collect();
        entries.push((t, 1));
        rows.push(row(&entries, Rel::Le, rhs));
    }
    if let Some(s) = equality {
        rows.push(row(&s.iter().map(|&i| (i - 1, 1)).collect::<Vec<_>>(), Rel::Eq, 1));
    }
    let mut objective = vec![Rational::zero(); n + 1];
    objective[t] = Rational::one();
    match lp::maximize(&objective, &rows) {
        Outcome::Optimal { value, mut point } if value.is_positive() => {
            point.truncate(n);
            Some(Point(point))
        }
        _ => None,
    }
}

/// A maximal chamber of the arrangement restricted to the open hypersimplex.
#[derive(Clone, Debug)]
pub struct Chamber {
    n: usize,
    signs: Vec<Sign>,
    representative: Point,
    walls: Vec<Vec<usize>>,
}

impl PartialEq for Chamber {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.signs == other.signs
    }
}

impl Eq for Chamber {}

impl Chamber {
    /// Builds the chamber with the given signs (aligned with
    /// [`hyperplanes`]), failing if that sign pattern is empty.
    pub fn from_signs(n: usize, signs: Vec<Sign>) -> Result<Chamber> {
        check_n(n)?;
        let planes = hyperplanes(n);
        if signs.len() != planes.len() {
            return Err(Error::Chamber(format!(
                "expected {} signs, got {}",
                planes.len(),
                signs.len()
            )));
        }
        let fixed: Vec<(&[usize], Sign)> = planes.iter().map(|s| s.as_slice()).zip(signs.iter().copied()).collect();
        let rep = strict_point(n, &fixed, None)
            .ok_or_else(|| Error::Chamber("sign pattern is not realized by any point".into()))?;
        Ok(Chamber::assemble(n, &planes, signs, rep))
    }

    fn assemble(n: usize, planes: &[Vec<usize>], signs: Vec<Sign>, representative: Point) -> Chamber {
        let mut walls = Vec::new();
        for (k, s) in planes.iter().enumerate() {
            let others: Vec<(&[usize], Sign)> = planes
                .iter()
                .zip(&signs)
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, (p, &g))| (p.as_slice(), g))
                .collect();
            if strict_point(n, &others, Some(s)).is_some() {
                walls.push(match signs[k] {
                    Sign::Plus => s.clone(),
                    Sign::Minus => complement(s, n),
                });
            }
        }
        Chamber { n, signs, representative, walls }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Signs aligned with [`hyperplanes`]`(n)`.
    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn representative(&self) -> &Point {
        &self.representative
    }

    /// Facet hyperplanes, each given by the subset whose sum exceeds 1 on the
    /// chamber.
    pub fn walls(&self) -> &[Vec<usize>] {
        &self.walls
    }

    /// Sign of `Σ_S ξ − 1` on the chamber for any `S` of size `2..=n−2`.
    pub fn sign_of(&self, subset: &[usize]) -> Sign {
        let c = canonical_subset(subset, self.n);
        let k = hyperplanes(self.n)
            .iter()
            .position(|p| *p == c)
            .expect("subset size between 2 and n-2");
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        if sorted == c {
            self.signs[k]
        } else {
            self.signs[k].flip()
        }
    }

    /// `σ·C`, the chamber containing `σ·ξ` for `ξ ∈ C`.
    pub fn act(&self, sigma: &Permutation) -> Chamber {
        let inv = sigma.inverse();
        let image = |s: &[usize], p: &Permutation| -> Vec<usize> {
            let mut v: Vec<usize> = s.iter().map(|&i| p.apply(i)).collect();
            v.sort_unstable();
            v
        };
        let signs = hyperplanes(self.n)
            .iter()
            .map(|s| self.sign_of(&image(s, &inv)))
            .collect();
        Chamber {
            n: self.n,
            signs,
            representative: self.representative.permuted(sigma),
            walls: self.walls.iter().map(|w| image(w, sigma)).sorted().collect(),
        }
    }

    /// Compact text form such as `12:+ 13:- 14:-`.
    pub fn signature(&self) -> String {
        hyperplanes(self.n)
            .iter()
            .zip(&self.signs)
            .map(|(s, g)| format!("{}:{}", subset_label(s), g.symbol()))
            .join(" ")
    }

    pub fn to_json(&self) -> Value {
        let signs: serde_json::Map<String, Value> = hyperplanes(self.n)
            .iter()
            .zip(&self.signs)
            .map(|(s, g)| (subset_label(s), Value::from(g.symbol())))
            .collect();
        json!({
            "signs": signs,
            "walls": self.walls,
            "representative": self.representative.to_strings(),
        })
    }
}

/// The chamber containing a regular point, with `ξ` as its representative.
pub fn chamber_of(xi: &Point) -> Result<Chamber> {
    if let Some(subset) = irregular_subset(xi)? {
        return Err(Error::Irregular { subset });
    }
    let planes = hyperplanes(xi.n());
    let signs = planes.iter().map(|s| sign_at(xi, s)).collect();
    Ok(Chamber::assemble(xi.n(), &planes, signs, xi.clone()))
}

/// All maximal chambers of `Δ_{n,2}`, built by inserting one hyperplane at a
/// time and keeping the feasible sign patterns. Patterns are ordered
/// lexicographically with `+` before `-`.
pub fn enumerate_chambers(n: usize) -> Result<Vec<Chamber>> {
    if !(4..=6).contains(&n) {
        return Err(Error::Range(format!("chamber enumeration supports 4 ≤ n ≤ 6, got {n}")));
    }
    let planes = hyperplanes(n);
    let mut patterns: Vec<(Vec<Sign>, Point)> = vec![(Vec::new(), Point(Vec::new()))];
    for k in 0..planes.len() {
        let mut next = Vec::new();
        for (signs, _) in &patterns {
            for sign in [Sign::Plus, Sign::Minus] {
                let mut s = signs.clone();
                s.push(sign);
                let fixed: Vec<(&[usize], Sign)> =
                    planes[..=k].iter().map(|p| p.as_slice()).zip(s.iter().copied()).collect();
                if let Some(p) = strict_point(n, &fixed, None) {
                    next.push((s, p));
                }
            }
        }
        patterns = next;
    }
    Ok(patterns
        .into_iter()
        .map(|(signs, rep)| Chamber::assemble(n, &planes, signs, rep))
        .collect())
}

/// Orbits of `S_n` on a list of chambers, as index lists into `chambers`
/// ordered by their smallest member.
pub fn orbit_partition(chambers: &[Chamber], n: usize) -> Vec<Vec<usize>> {
    let index: HashMap<&[Sign], usize> =
        chambers.iter().enumerate().map(|(i, c)| (c.signs.as_slice(), i)).collect();
    let generators: Vec<Permutation> =
        (1..n).map(|i| Permutation::identity(n).times_simple(i)).collect();
    let mut orbit_of = vec![usize::MAX; chambers.len()];
    let mut orbits = Vec::new();
    for start in 0..chambers.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut queue = vec![start];
        while let Some(c) = queue.pop() {
            for g in &generators {
                let image = chambers[c].act(g);
                if let Some(&j) = index.get(image.signs.as_slice()) {
                    if orbit_of[j] == usize::MAX {
                        orbit_of[j] = id;
                        members.push(j);
                        queue.push(j);
                    }
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

/// The member of the `S_n` orbit of `chamber` with the smallest sign vector
/// (`+` before `−`, planes in [`hyperplanes`] order), with the permutation
/// carrying `chamber` onto it.
pub fn orbit_representative(chamber: &Chamber) -> (Chamber, Permutation) {
    Permutation::all(chamber.n)
        .into_iter()
        .map(|sigma| (chamber.act(&sigma), sigma))
        .min_by(|a, b| a.0.signs.cmp(&b.0.signs))
        .expect("S_n is nonempty")
}

/// Hassett weights `a_i ∈ (0, 1]` with `Σ a_i > 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        let display = weights.iter().map(format_rational).join(",");
        if weights.len() < 4 {
            return Err(Error::Range(format!("need at least 4 weights, got {}", weights.len())));
        }
        if weights.iter().any(|a| !a.is_positive() || *a > Rational::one()) {
            return Err(Error::Domain(format!("weights {display} must lie in (0, 1]")));
        }
        if weights.iter().sum::<Rational>() <= int(2) {
            return Err(Error::Domain(format!("weights {display} must sum to more than 2")));
        }
        Ok(WeightVector(weights))
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    /// Radial projection `2A / Σ A` onto the slice.
    pub fn slice_point(&self) -> Point {
        let total: Rational = self.0.iter().sum();
        Point(self.0.iter().map(|a| a * int(2) / &total).collect())
    }
}

impl FromStr for WeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightVector::new(s.split(',').map(parse_rational).collect::<Result<_>>()?)
    }
}

/// The chamber met by the weight's projection to the slice.
pub fn hassett_chamber(weights: &WeightVector) -> Result<Chamber> {
    chamber_of(&weights.slice_point())
}

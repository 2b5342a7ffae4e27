//! Gröbner bases over the rationals for the weighted degree reverse
//! lexicographic order of a [`VariableTable`].
//!
//! Buchberger's algorithm with the sugar strategy (normal selection within a
//! sugar degree) and the Gebauer–Möller criteria. Input generators are queued
//! alongside S-pairs, so for homogeneous input the basis is completed one
//! degree at a time. All choices are deterministic.

mod cache;
mod quotient;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Monomial, Polynomial, Rational, VariableTable};
use crate::error::{Error, Result};

pub use cache::{cache_dir_from_env, cache_key, GroebnerCache, CACHE_ENV};
pub use quotient::{compare_presentations, BettiTable, GradedPresentation, PresentationComparison};

/// Name of the only monomial order in use.
pub const ORDER: &str = "wdegrevlex";

/// Reduced Gröbner basis: monic elements sorted by increasing leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    table: Arc<VariableTable>,
    polys: Vec<Polynomial>,
}

#[derive(Clone)]
struct Divisor {
    lead: Monomial,
    mask: u64,
    index: usize,
}

fn find_divisor<'a>(divisors: &'a [Divisor], m: &Monomial, mask: u64) -> Option<&'a Divisor> {
    divisors
        .iter()
        .find(|d| d.mask & !mask == 0 && d.lead.divides(m))
}

/// Fully reduces `f` by the monic polynomials `polys[d.index]`.
fn reduce(f: &Polynomial, polys: &[Polynomial], divisors: &[Divisor]) -> Polynomial {
    let table = f.table().clone();
    let mut acc: BTreeMap<Monomial, Rational> = f.terms().iter().cloned().collect();
    let mut rem = Vec::new();
    while let Some((m, c)) = acc.pop_last() {
        let Some(d) = find_divisor(divisors, &m, m.support_mask()) else {
            rem.push((m, c));
            continue;
        };
        let q = d.lead.divide_into(&m).expect("divisor");
        for (gm, gc) in &polys[d.index].terms()[1..] {
            let delta = &c * gc;
            match acc.entry(gm.mul(&q)) {
                Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(-delta);
                }
            }
        }
    }
    Polynomial::from_sorted(&table, rem)
}

fn divisor(polys: &[Polynomial], index: usize) -> Divisor {
    let lead = polys[index].leading_monomial().expect("nonzero").clone();
    Divisor { mask: lead.support_mask(), lead, index }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Task {
    /// Input generator; sorts before pairs of the same sugar and lcm.
    Input(usize),
    Pair(usize, usize),
}

type QueueKey = (u32, Monomial, Task);

struct Engine {
    table: Arc<VariableTable>,
    polys: Vec<Polynomial>,
    sugar: Vec<u32>,
    /// Indices of the current minimal basis.
    active: Vec<usize>,
    queue: BTreeMap<QueueKey, ()>,
}

impl Engine {
    fn lead(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero")
    }

    fn pair_key(&self, i: usize, j: usize) -> QueueKey {
        let lcm = self.lead(i).lcm(self.lead(j), &self.table);
        let si = self.sugar[i] + lcm.degree() - self.lead(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lead(j).degree();
        (si.max(sj), lcm, Task::Pair(i.min(j), i.max(j)))
    }

    fn divisors(&self) -> Vec<Divisor> {
        self.active.iter().map(|&i| divisor(&self.polys, i)).collect()
    }

    /// Gebauer–Möller update after appending `h` to `polys`.
    fn insert(&mut self, h: usize) {
        let lh = self.lead(h).clone();
        let lcm_with = |e: &Engine, g: usize| lh.lcm(e.lead(g), &e.table);

        let candidates: Vec<(usize, Monomial)> =
            self.active.iter().map(|&g| (g, lcm_with(self, g))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g, l)) in candidates.iter().enumerate() {
            let coprime = lh.coprime(self.lead(*g));
            let dominated_later = candidates[k + 1..].iter().any(|(_, l2)| l2.divides(l));
            let dominated_kept = kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || (!dominated_later && !dominated_kept) {
                kept.push((*g, l.clone()));
            }
        }
        let new_pairs: Vec<usize> = kept
            .into_iter()
            .filter(|(g, _)| !lh.coprime(self.lead(*g)))
            .map(|(g, _)| g)
            .collect();

        let polys = &self.polys;
        let table = &self.table;
        self.queue.retain(|(_, lcm, task), _| match *task {
            Task::Input(_) => true,
            Task::Pair(a, b) => {
                let la = polys[a].leading_monomial().expect("nonzero");
                let lb = polys[b].leading_monomial().expect("nonzero");
                !lh.divides(lcm) || lh.lcm(la, table) == *lcm || lh.lcm(lb, table) == *lcm
            }
        });
        for g in new_pairs {
            let key = self.pair_key(g, h);
            self.queue.insert(key, ());
        }
        let polys = &self.polys;
        self.active
            .retain(|&g| !lh.divides(polys[g].leading_monomial().expect("nonzero")));
        self.active.push(h);
    }

    fn s_polynomial(&self, i: usize, j: usize) -> Polynomial {
        let lcm = self.lead(i).lcm(self.lead(j), &self.table);
        let one = Rational::from_integer(1.into());
        let a = self.polys[i].mul_term(&self.lead(i).divide_into(&lcm).expect("lcm"), &one);
        let b = self.polys[j].mul_term(&self.lead(j).divide_into(&lcm).expect("lcm"), &one);
        &a - &b
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(table: &Arc<VariableTable>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    for g in gens {
        if **g.table() != **table {
            return Err(Error::TableMismatch);
        }
    }
    let inputs: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.transfer(table).map(|g| g.monic()))
        .collect::<Result<_>>()?;
    let mut engine = Engine {
        table: table.clone(),
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        queue: BTreeMap::new(),
    };
    for (k, g) in inputs.iter().enumerate() {
        let lead = g.leading_monomial().expect("nonzero").clone();
        let sugar = g.terms().iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        engine.queue.insert((sugar, lead, Task::Input(k)), ());
    }

    while let Some(((sugar, _, task), ())) = engine.queue.pop_first() {
        let f = match task {
            Task::Input(k) => inputs[k].clone(),
            Task::Pair(i, j) => engine.s_polynomial(i, j),
        };
        let h = reduce(&f, &engine.polys, &engine.divisors());
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let is_unit = h.is_constant();
        let sugar = sugar.max(h.degree().unwrap_or(0));
        engine.polys.push(h);
        engine.sugar.push(sugar);
        let idx = engine.polys.len() - 1;
        if is_unit {
            engine.active = vec![idx];
            break;
        }
        engine.insert(idx);
    }

    let mut basis: Vec<Polynomial> = engine.active.iter().map(|&i| engine.polys[i].clone()).collect();
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(GroebnerBasis { table: table.clone(), polys: inter_reduce(basis) })
}

/// Reduces the tails of a minimal basis.
fn inter_reduce(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let divisors: Vec<Divisor> = (0..basis.len()).map(|i| divisor(&basis, i)).collect();
    (0..basis.len())
        .map(|i| {
            let g = &basis[i];
            let (lm, lc) = g.leading_term().expect("nonzero");
            let tail = Polynomial::from_sorted(g.table(), g.terms()[1..].to_vec());
            let others: Vec<Divisor> = divisors.iter().filter(|d| d.index != i).cloned().collect();
            let reduced = reduce(&tail, &basis, &others);
            &Polynomial::monomial(g.table(), lm.clone(), lc.clone()) + &reduced
        })
        .collect()
}

impl GroebnerBasis {
    /// Wraps polynomials already known to form a reduced basis, as when
    /// reading a cache file.
    pub(crate) fn from_reduced(table: &Arc<VariableTable>, polys: Vec<Polynomial>) -> Self {
        GroebnerBasis { table: table.clone(), polys }
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant() && !p.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.polys.iter().filter_map(|p| p.leading_monomial()).collect()
    }

    fn divisors(&self) -> Vec<Divisor> {
        (0..self.polys.len()).map(|i| divisor(&self.polys, i)).collect()
    }

    /// Remainder of `f` on division by the basis; zero iff `f` is in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if **f.table() != *self.table {
            return Err(Error::TableMismatch);
        }
        let f = f.transfer(&self.table)?;
        Ok(reduce(&f, &self.polys, &self.divisors()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Re-checks Buchberger's criterion: every S-polynomial of the basis
    /// reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let divisors = self.divisors();
        let one = Rational::from_integer(1.into());
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let (li, lj) = (
                    self.polys[i].leading_monomial().expect("nonzero"),
                    self.polys[j].leading_monomial().expect("nonzero"),
                );
                if li.coprime(lj) {
                    continue;
                }
                let lcm = li.lcm(lj, &self.table);
                let s = &self.polys[i].mul_term(&li.divide_into(&lcm).expect("lcm"), &one)
                    - &self.polys[j].mul_term(&lj.divide_into(&lcm).expect("lcm"), &one);
                if !reduce(&s, &self.polys, &divisors).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// True when no leading monomial divides another and every tail is
    /// reduced.
    pub fn is_reduced(&self) -> bool {
        let leads = self.leading_monomials();
        self.polys.iter().enumerate().all(|(i, p)| {
            p.leading_coeff().is_some_and(|c| *c == Rational::from_integer(1.into()))
                && p.terms().iter().enumerate().all(|(k, (m, _))| {
                    leads
                        .iter()
                        .enumerate()
                        .all(|(j, l)| (k == 0 && j == i) || !l.divides(m))
                })
        })
    }
}

/// Whether `f` lies in the ideal generated by `gens`.
pub fn contains(f: &Polynomial, gens: &[Polynomial]) -> Result<bool> {
    buchberger(f.table(), gens)?.contains(f)
}

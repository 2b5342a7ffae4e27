//! Independent presentations of the rings the Kirwan computation should
//! reproduce: Keel's Chow ring of `M̄_{0,n}`, the Chow ring of heavy/light
//! Hassett spaces and Stanley–Reisner rings of toric surfaces.

mod identification;
mod toric;

use std::collections::BTreeSet;
use itertools::Itertools;

use crate::algebra::{Polynomial, VariableTable};
use crate::error::{Error, Result};
use crate::groebner::GradedPresentation;
use crate::hypersimplex::{canonical_subset, hyperplanes};

pub use identification::{verify_identification, IdentificationMap, IdentificationReport, IdentityCheck};
pub use toric::{polygon, polygon_names, toric_sr, Polygon};

/// Variable name of the divisor `D^S`: `D23`, or `D2_10` once an index has
/// two digits.
pub fn divisor_name(subset: &[usize]) -> String {
    if subset.iter().all(|&i| i < 10) {
        format!("D{}", subset.iter().join(""))
    } else {
        format!("D{}", subset.iter().join("_"))
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

/// Collects relations in primitive form, dropping zeros and duplicates, in
/// first-seen order.
fn dedup(relations: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let mut seen = BTreeSet::new();
    relations
        .into_iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.primitive())
        .filter(|r| seen.insert(r.to_string()))
        .collect()
}

/// Keel's presentation of `A*(M̄_{0,n})`.
///
/// One weight-one variable per boundary divisor `D^S = D^{S^c}`, indexed by the
/// smaller side (the side containing 1 on a tie). `D^S D^T = 0` unless the
/// divisors are nested or disjoint for some choice of sides, and for distinct
/// `i, j, k, l` the sums `Σ_{i,j ∈ S; k,l ∉ S} D^S` agree across the three
/// ways of pairing.
pub fn keel_presentation(n: usize) -> Result<GradedPresentation> {
    if n < 4 {
        return Err(Error::Range(format!("Keel presentation needs n ≥ 4, got {n}")));
    }
    let divisors = hyperplanes(n);
    let table = VariableTable::uniform(divisors.iter().map(|s| divisor_name(s)))?;
    let var = |s: &[usize]| -> Polynomial {
        let c = canonical_subset(s, n);
        Polynomial::var_named(&table, &divisor_name(&c)).expect("divisor variable")
    };

    let mut relations = Vec::new();
    for (a, b) in divisors.iter().tuple_combinations() {
        let b_c: Vec<usize> = (1..=n).filter(|i| !b.contains(i)).collect();
        let compatible = is_subset(a, b) || is_subset(b, a) || disjoint(a, b) || is_subset(&b_c, a);
        if !compatible {
            relations.push(&var(a) * &var(b));
        }
    }

    // every S with |S|, |S^c| ≥ 2, by its canonical variable
    let all_sides: Vec<Vec<usize>> = (2..=n - 2).flat_map(|k| (1..=n).combinations(k)).collect();
    let split_sum = |p: [usize; 2], q: [usize; 2]| -> Polynomial {
        let mut acc = Polynomial::zero(&table);
        for s in &all_sides {
            if p.iter().all(|x| s.contains(x)) && q.iter().all(|x| !s.contains(x)) {
                acc = &acc + &var(s);
            }
        }
        acc
    };
    for quad in (1..=n).combinations(4) {
        let [i, j, k, l] = [quad[0], quad[1], quad[2], quad[3]];
        let ij = split_sum([i, j], [k, l]);
        let ik = split_sum([i, k], [j, l]);
        let il = split_sum([i, l], [j, k]);
        relations.push(&ij - &ik);
        relations.push(&ij - &il);
    }
    GradedPresentation::new(format!("keel({n})"), table, dedup(relations))
}

/// Options for [`heavy_light_presentation`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HeavyLightOptions {
    /// Keep `D^S` for `S = {2, …, n}`. Off by default: that divisor has a
    /// one-point complement, and with it the `(2, 5)` quotient is no longer
    /// finite-dimensional.
    pub include_full_set: bool,
}

/// Chow ring of the Hassett space with weights `(1, …, 1, ε, …, ε)`, `m`
/// heavy points and `ε < 1/(n−m)`.
///
/// Generators `D^S` for `S ⊆ {2, …, n}` with weight sum above 1; `D^S D^T = 0`
/// unless nested or disjoint; for 2-subsets `{i, j}`, `{k, l}` of `{2, …, n}`
/// with `i, k ≤ m` the divisors containing one pair but not the other have
/// equal sums.
pub fn heavy_light_presentation(m: usize, n: usize, options: HeavyLightOptions) -> Result<GradedPresentation> {
    if n < 4 || m < 2 || m > n {
        return Err(Error::Range(format!("heavy/light needs 2 ≤ m ≤ n and n ≥ 4, got m = {m}, n = {n}")));
    }
    let heavy = |i: usize| i <= m;
    let full: Vec<usize> = (2..=n).collect();
    let divisors: Vec<Vec<usize>> = (2..=n - 2)
        .flat_map(|k| (2..=n).combinations(k))
        .chain(std::iter::once(full.clone()))
        .filter(|s| {
            let h = s.iter().filter(|&&i| heavy(i)).count();
            h >= 2 || (h == 1 && s.len() >= 2)
        })
        .filter(|s| options.include_full_set || *s != full)
        .collect();
    let table = VariableTable::uniform(divisors.iter().map(|s| divisor_name(s)))?;
    let var = |s: &[usize]| Polynomial::var_named(&table, &divisor_name(s)).expect("divisor variable");

    let mut relations = Vec::new();
    for (a, b) in divisors.iter().tuple_combinations() {
        if !(is_subset(a, b) || is_subset(b, a) || disjoint(a, b)) {
            relations.push(&var(a) * &var(b));
        }
    }
    let pairs: Vec<Vec<usize>> = (2..=n).combinations(2).filter(|p| heavy(p[0])).collect();
    for (p, q) in pairs.iter().tuple_combinations() {
        let mut r = Polynomial::zero(&table);
        for s in &divisors {
            let (hp, hq) = (is_subset(p, s), is_subset(q, s));
            if hp && !hq {
                r = &r + &var(s);
            } else if hq && !hp {
                r = &r - &var(s);
            }
        }
        relations.push(r);
    }
    GradedPresentation::new(format!("heavy-light({m},{n})"), table, dedup(relations))
}

//! Kernel of the Kirwan map for `G_{n,2}` at a chamber of `Δ_{n,2}`.
//!
//! Ambient ring: `e1, e2` (elementary symmetric in `x1, x2`), `h1..h_{n−2}`
//! (elementary symmetric in `x3..xn`) and `u1..un`. The ideal is generated by
//! the relations `σ_i(x) − σ_i(u)`, `Σ u_i` and the block-symmetric divided
//! differences `∂_{ν^{-1}} Δ(x, u_τ)` over admissible pairs `(ν, τ)`.
//!
//! The admissibility conditions are evaluated on `ν^{-1}`, the permutation
//! that indexes the operator. This is the reading under which the worked
//! examples come out (for instance `ν = 43521` is admissible for every `τ`
//! because `ν^{-1}(5) = 3`), and the only one that yields compact quotients.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{block_reduce, elem_sym, BlockSpec, Polynomial, Rational, VariableTable};
use crate::error::{Error, Result};
use crate::hypersimplex::Chamber;
use crate::weyl::{det_poly, divided_differences_all, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// `ν(n) ∈ {3..n}`, any `τ`.
    C1,
    /// `{ν(1), ν(n)} = {1, 2}`, any `τ`.
    C2,
    /// `ν(n), ν(j) ∈ {1, 2}` with `2 ≤ j ≤ n−2`; `τ` restricted by the tail
    /// `τ(j+1), …, τ(n)`.
    C3 { j: usize },
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::C1 => f.write_str("C1"),
            Condition::C2 => f.write_str("C2"),
            Condition::C3 { j } => write!(f, "C3(j={j})"),
        }
    }
}

/// Which permutation the conditions are read on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Reading {
    /// On `ν^{-1}`, the operator index.
    Operator,
    /// On `ν` itself.
    #[cfg_attr(not(test), allow(dead_code))]
    Literal,
}

/// How the `C3` restriction on `τ` is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauRule {
    /// `ξ_{τ(j+1)} + … + ξ_{τ(n)} > 1` at the chamber representative.
    TailSum,
    /// Some wall of the chamber, oriented so its sum exceeds 1, lies inside
    /// `{τ(j+1), …, τ(n)}`.
    Walls,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub nu: Permutation,
    pub tau: Permutation,
    pub condition: Condition,
}

/// Classifies a permutation by the three conditions, with `j = 1` folded into
/// `C2` and `j = n−1` rejected.
pub fn condition_of(w: &Permutation) -> Option<Condition> {
    let n = w.n();
    let small = |v: usize| v <= 2;
    if !small(w.apply(n)) {
        return Some(Condition::C1);
    }
    let j = (1..n).find(|&j| small(w.apply(j))).expect("two small values");
    match j {
        1 => Some(Condition::C2),
        j if j <= n - 2 => Some(Condition::C3 { j }),
        _ => None,
    }
}

fn check_chamber(n: usize, chamber: &Chamber) -> Result<()> {
    if chamber.n() != n {
        return Err(Error::Chamber(format!(
            "chamber lives in Δ_{{{},2}}, expected n = {n}",
            chamber.n()
        )));
    }
    Ok(())
}

fn tail_ok(chamber: &Chamber, tail: &[usize], rule: TauRule) -> bool {
    match rule {
        TauRule::TailSum => chamber.representative().subset_sum(tail) > Rational::one(),
        TauRule::Walls => chamber.walls().iter().any(|w| w.iter().all(|i| tail.contains(i))),
    }
}

/// The permutations `τ` allowed for a `C3` condition at position `j`.
pub fn c3_taus(chamber: &Chamber, j: usize, rule: TauRule) -> Vec<Permutation> {
    Permutation::all(chamber.n())
        .into_iter()
        .filter(|tau| tail_ok(chamber, &tau.one_line()[j..], rule))
        .collect()
}

pub(crate) fn admissible_pairs_with(
    n: usize,
    chamber: &Chamber,
    rule: TauRule,
    reading: Reading,
) -> Result<Vec<AdmissiblePair>> {
    check_chamber(n, chamber)?;
    let all = Permutation::all(n);
    let mut c3_cache: HashMap<usize, Vec<Permutation>> = HashMap::new();
    let mut out = Vec::new();
    for nu in &all {
        let read = match reading {
            Reading::Operator => nu.inverse(),
            Reading::Literal => nu.clone(),
        };
        let Some(condition) = condition_of(&read) else {
            continue;
        };
        let taus: &[Permutation] = match condition {
            Condition::C1 | Condition::C2 => &all,
            Condition::C3 { j } => c3_cache.entry(j).or_insert_with(|| c3_taus(chamber, j, rule)),
        };
        out.extend(taus.iter().map(|tau| AdmissiblePair {
            nu: nu.clone(),
            tau: tau.clone(),
            condition,
        }));
    }
    Ok(out)
}

/// Every admissible `(ν, τ)` for the chamber, ordered by `ν` then `τ`.
pub fn admissible_pairs(n: usize, chamber: &Chamber, rule: TauRule) -> Result<Vec<AdmissiblePair>> {
    admissible_pairs_with(n, chamber, rule, Reading::Operator)
}

/// `e1, e2, h1..h_{n−2}, u1..un` with weights `1, 2, 1..n−2, 1..1`.
pub fn ambient_table(n: usize) -> Result<Arc<VariableTable>> {
    if n < 4 {
        return Err(Error::Range(format!("need n ≥ 4, got {n}")));
    }
    VariableTable::new(
        [("e1".to_string(), 1), ("e2".to_string(), 2)]
            .into_iter()
            .chain((1..=n - 2).map(|i| (format!("h{i}"), i as u32)))
            .chain((1..=n).map(|i| (format!("u{i}"), 1))),
    )
}

/// Ambient variable names as symmetric functions: `e_i` as `σi(x1,x2)`,
/// `h_i` as `σi(x3,…,xn)`. Other names are returned unchanged.
pub fn paper_name(name: &str, n: usize) -> String {
    let tail = (3..=n).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",");
    match name.split_at(1) {
        ("e", i) if i.parse::<usize>().is_ok() => format!("σ{i}(x1,x2)"),
        ("h", i) if i.parse::<usize>().is_ok() => format!("σ{i}({tail})"),
        _ => name.to_string(),
    }
}

/// Replaces every identifier in `text` through [`paper_name`].
pub fn render_paper_names(text: &str, n: usize) -> String {
    let mut out = String::with_capacity(text.len());
    let mut word = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            word.push(ch);
            continue;
        }
        if !word.is_empty() {
            if word.starts_with(|c: char| c.is_ascii_alphabetic()) {
                out.push_str(&paper_name(&word, n));
            } else {
                out.push_str(&word);
            }
            word.clear();
        }
        out.push(ch);
    }
    out.pop();
    out
}

fn blocks(n: usize) -> [BlockSpec; 2] {
    [
        BlockSpec::new(["x1", "x2"], ["e1", "e2"]),
        BlockSpec::new(
            (3..=n).map(|i| format!("x{i}")),
            (1..=n - 2).map(|i| format!("h{i}")),
        ),
    ]
}

/// `Σ_{a+b=i} e_a h_b − σ_i(u)` for `i = 1..n`, followed by `Σ u_i`.
pub fn base_relations(n: usize) -> Result<Vec<Polynomial>> {
    let table = ambient_table(n)?;
    let var = |name: String| Polynomial::var_named(&table, &name);
    let e = |a: usize| -> Result<Polynomial> {
        if a == 0 {
            Ok(Polynomial::one(&table))
        } else {
            var(format!("e{a}"))
        }
    };
    let h = |b: usize| -> Result<Polynomial> {
        if b == 0 {
            Ok(Polynomial::one(&table))
        } else {
            var(format!("h{b}"))
        }
    };
    let u: Vec<usize> = (1..=n).map(|i| table.require(&format!("u{i}"))).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(n + 1);
    for i in 1..=n {
        let mut r = -elem_sym(i, &u, &table)?;
        for a in 0..=2.min(i) {
            let b = i - a;
            if b <= n - 2 {
                r = &r + &(&e(a)? * &h(b)?);
            }
        }
        out.push(r);
    }
    out.push(elem_sym(1, &u, &table)?);
    Ok(out)
}

/// `∂_w Δ(x, u)` rewritten in the ambient ring, or `None` when it is not
/// symmetric in both blocks.
fn reduced_operator_image(n: usize, g: &Polynomial, table: &Arc<VariableTable>) -> Result<Option<Polynomial>> {
    if g.is_zero() {
        return Ok(None);
    }
    match block_reduce(g, &blocks(n), table) {
        Ok(p) => Ok(Some(p)),
        Err(Error::NotSymmetric(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `u_i ↦ u_{σ(i)}` on a polynomial of a ring containing `u1..un`.
pub fn permute_u(f: &Polynomial, sigma: &Permutation) -> Result<Polynomial> {
    substitute_tau(f, sigma, sigma.n())
}

fn substitute_tau(f: &Polynomial, tau: &Permutation, n: usize) -> Result<Polynomial> {
    let table = f.table();
    let mut map: Vec<usize> = (0..table.len()).collect();
    for i in 1..=n {
        map[table.require(&format!("u{i}"))?] = table.require(&format!("u{}", tau.apply(i)))?;
    }
    f.substitute_indices(&map)
}

/// `∂_{ν^{-1}} Δ(x, u_τ)` with `u_i ↦ u_{τ(i)}`, rewritten in the ambient
/// ring, or `None` when it is rejected by the block-symmetry filter.
pub fn relation_poly(nu: &Permutation, tau: &Permutation) -> Result<Option<Polynomial>> {
    let n = nu.n();
    if tau.n() != n {
        return Err(Error::Range("ν and τ have different sizes".into()));
    }
    let table = ambient_table(n)?;
    let g = crate::weyl::divided_difference_w(&nu.inverse(), &det_poly(n)?)?;
    match reduced_operator_image(n, &g, &table)? {
        Some(p) => Ok(Some(substitute_tau(&p, tau, n)?)),
        None => Ok(None),
    }
}

/// Generators of the Kirwan kernel at a chamber.
#[derive(Clone, Debug)]
pub struct KirwanIdeal {
    pub n: usize,
    pub table: Arc<VariableTable>,
    /// Base relations first, then the divided-difference relations in primitive
    /// form sorted by degree and text.
    pub generators: Vec<Polynomial>,
    pub chamber: Chamber,
}

impl KirwanIdeal {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "variables": self.table.names().iter().zip(self.table.weights())
                .map(|(v, w)| json!({"name": v, "weight": w}))
                .collect::<Vec<_>>(),
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "chamber": self.chamber.signature(),
        })
    }
}

fn sort_key(p: &Polynomial) -> (u32, String) {
    (p.degree().unwrap_or(0), p.to_string())
}

pub(crate) fn build_ideal_with(n: usize, chamber: &Chamber, reading: Reading) -> Result<KirwanIdeal> {
    check_chamber(n, chamber)?;
    let table = ambient_table(n)?;
    let images = divided_differences_all(n, &det_poly(n)?)?;
    let all = Permutation::all(n);
    let c3_sets: HashMap<usize, Vec<Permutation>> = (2..=n.saturating_sub(2))
        .map(|j| (j, c3_taus(chamber, j, TauRule::TailSum)))
        .collect();

    let per_nu: Vec<Vec<Polynomial>> = all
        .par_iter()
        .map(|nu| -> Result<Vec<Polynomial>> {
            let w = nu.inverse();
            let read = match reading {
                Reading::Operator => &w,
                Reading::Literal => nu,
            };
            let Some(condition) = condition_of(read) else {
                return Ok(Vec::new());
            };
            let Some(base) = reduced_operator_image(n, &images[&w], &table)? else {
                return Ok(Vec::new());
            };
            let taus = match condition {
                Condition::C1 | Condition::C2 => &all,
                Condition::C3 { j } => &c3_sets[&j],
            };
            let mut seen = HashSet::new();
            for tau in taus {
                seen.insert(substitute_tau(&base, tau, n)?.primitive());
            }
            Ok(seen.into_iter().collect())
        })
        .collect::<Result<_>>()?;

    let mut generators = base_relations(n)?;
    let base: HashSet<Polynomial> = generators.iter().map(|g| g.primitive()).collect();
    let mut extra: BTreeSet<(u32, String)> = BTreeSet::new();
    let mut by_key: HashMap<(u32, String), Polynomial> = HashMap::new();
    for p in per_nu.into_iter().flatten() {
        if base.contains(&p) {
            continue;
        }
        let key = sort_key(&p);
        if extra.insert(key.clone()) {
            by_key.insert(key, p);
        }
    }
    generators.extend(extra.into_iter().map(|k| by_key.remove(&k).expect("present")));
    Ok(KirwanIdeal { n, table, generators, chamber: chamber.clone() })
}

/// The Kirwan kernel at `chamber`: base relations plus every accepted
/// divided-difference relation. No generator is dropped for degree reasons.
pub fn build_ideal(n: usize, chamber: &Chamber) -> Result<KirwanIdeal> {
    build_ideal_with(n, chamber, Reading::Operator)
}

/// Text of the admissible pairs grouped by condition, for reports.
pub fn summarize_pairs(pairs: &[AdmissiblePair]) -> Vec<(Condition, usize)> {
    pairs
        .iter()
        .map(|p| p.condition)
        .sorted()
        .dedup_with_count()
        .map(|(c, k)| (k, c))
        .collect()
}

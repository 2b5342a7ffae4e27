use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;

use grassmann_kirwan::algebra::{rat, Monomial, Polynomial, Rational, VariableTable};
use grassmann_kirwan::groebner::{buchberger, cache_key, BettiTable, GroebnerCache};
use grassmann_kirwan::hypersimplex::enumerate_chambers;
use grassmann_kirwan::kirwan::build_ideal;
use grassmann_kirwan::oracles::keel_presentation;

/// Every monomial of weighted degree `d`.
fn monomials(table: &Arc<VariableTable>, d: u32) -> Vec<Monomial> {
    fn go(table: &Arc<VariableTable>, i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == table.len() {
            if left == 0 {
                out.push(Monomial::new(exps, table));
            }
            return;
        }
        let w = table.weight(i);
        let mut e = 0;
        while e * w <= left {
            exps.push(e as u16);
            go(table, i + 1, left - e * w, exps, out);
            exps.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(table, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Row-reduced span of the degree-`d` part of the ideal generated by `gens`:
/// every monomial multiple of a generator landing in degree `d`.
struct Span {
    rows: Vec<BTreeMap<Monomial, Rational>>,
}

impl Span {
    fn of_degree(table: &Arc<VariableTable>, gens: &[Polynomial], d: u32) -> Span {
        let mut span = Span { rows: Vec::new() };
        for g in gens {
            let Some(gd) = g.degree() else { continue };
            if gd > d {
                continue;
            }
            for m in monomials(table, d - gd) {
                let row = g.mul_term(&m, &rat(1, 1)).terms().iter().cloned().collect();
                span.insert(row);
            }
        }
        span
    }

    fn reduce(&self, mut v: BTreeMap<Monomial, Rational>) -> BTreeMap<Monomial, Rational> {
        for row in &self.rows {
            let (pivot, pc) = row.iter().next_back().unwrap();
            if let Some(c) = v.get(pivot).cloned() {
                let factor = c / pc;
                for (m, rc) in row {
                    let e = v.entry(m.clone()).or_insert_with(Rational::zero);
                    *e -= &factor * rc;
                    if e.is_zero() {
                        v.remove(m);
                    }
                }
            }
        }
        v
    }

    fn insert(&mut self, v: BTreeMap<Monomial, Rational>) {
        let v = self.reduce(v);
        if v.is_empty() {
            return;
        }
        let pivot = v.keys().next_back().unwrap().clone();
        for row in &mut self.rows {
            if let Some(c) = row.get(&pivot).cloned() {
                let factor = c / &v[&pivot];
                for (m, vc) in &v {
                    let e = row.entry(m.clone()).or_insert_with(Rational::zero);
                    *e -= &factor * vc;
                    if e.is_zero() {
                        row.remove(m);
                    }
                }
            }
        }
        self.rows.push(v);
    }

    fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f.terms().iter().cloned().collect()).is_empty()
    }
}

/// Hilbert function of the quotient, by linear algebra only.
fn hilbert_by_rank(table: &Arc<VariableTable>, gens: &[Polynomial], max: u32) -> BettiTable {
    BettiTable::from_degrees((0..=max).filter_map(|d| {
        let dim = monomials(table, d).len() - Span::of_degree(table, gens, d).rows.len();
        (dim > 0).then_some((2 * d, dim))
    }))
}

fn small_table() -> Arc<VariableTable> {
    VariableTable::new([("a", 1), ("b", 1), ("c", 1), ("t", 2)]).unwrap()
}

fn homogeneous(table: Arc<VariableTable>, d: u32) -> impl Strategy<Value = Polynomial> {
    let basis = monomials(&table, d);
    prop::collection::vec(-3i64..=3, basis.len()).prop_map(move |cs| {
        Polynomial::from_terms(&table, basis.iter().cloned().zip(cs.into_iter().map(|c| rat(c, 1))))
    })
}

fn ideal() -> impl Strategy<Value = Vec<Polynomial>> {
    let t = small_table();
    (homogeneous(t.clone(), 2), homogeneous(t.clone(), 2), homogeneous(t.clone(), 3), homogeneous(t, 1))
        .prop_map(|(a, b, c, d)| vec![a, b, c, d])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_agrees_with_linear_algebra(gens in ideal(), f in homogeneous(small_table(), 3)) {
        let table = small_table();
        let gb = buchberger(&table, &gens).unwrap();
        prop_assert!(gb.is_groebner());
        prop_assert!(gb.is_reduced());
        let span = Span::of_degree(&table, &gens, 3);
        prop_assert_eq!(gb.contains(&f).unwrap(), span.contains(&f));
        for g in &gens {
            prop_assert!(gb.contains(g).unwrap());
        }
        // f minus its normal form lies in the ideal
        let nf = gb.normal_form(&f).unwrap();
        prop_assert!(span.contains(&(&f - &nf)));
    }

    #[test]
    fn reduced_basis_does_not_depend_on_generator_order(gens in ideal()) {
        let table = small_table();
        let gb = buchberger(&table, &gens).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        let other = buchberger(&table, &rev).unwrap();
        prop_assert_eq!(other.polys(), gb.polys());
    }

    #[test]
    fn hilbert_function_does_not_depend_on_variable_order(gens in ideal()) {
        let table = small_table();
        let reordered = table.reordered(&[3, 2, 0, 1]).unwrap();
        let moved: Vec<Polynomial> = gens.iter().map(|g| g.transfer(&reordered).unwrap()).collect();
        let a = buchberger(&table, &gens).unwrap();
        let b = buchberger(&reordered, &moved).unwrap();
        prop_assert_eq!(a.is_unit_ideal(), b.is_unit_ideal());
        for d in 0..=4 {
            let count = |gb: &grassmann_kirwan::groebner::GroebnerBasis, t: &Arc<VariableTable>| {
                monomials(t, d).into_iter().filter(|m| gb.leading_monomials().iter().all(|l| !l.divides(m))).count()
            };
            prop_assert_eq!(count(&a, &table), count(&b, &reordered), "degree {}", d);
        }
    }
}

#[test]
fn betti_tables_match_ranks_of_graded_pieces() {
    for c in enumerate_chambers(4).unwrap() {
        let ideal = build_ideal(4, &c).unwrap();
        let gb = buchberger(&ideal.table, &ideal.generators).unwrap();
        assert_eq!(gb.betti().unwrap(), hilbert_by_rank(&ideal.table, &ideal.generators, 3));
    }
    let keel = keel_presentation(5).unwrap();
    let gb = keel.groebner().unwrap();
    assert_eq!(gb.betti().unwrap(), hilbert_by_rank(&keel.table, &keel.relations, 3));
}

#[test]
fn unit_and_zero_ideals() {
    let t = small_table();
    let gb = buchberger(&t, &[Polynomial::parse(&t, "a^2 + 1").unwrap(), Polynomial::parse(&t, "a").unwrap()]).unwrap();
    assert!(gb.is_unit_ideal());
    let zero = buchberger(&t, &[]).unwrap();
    assert!(zero.is_empty());
    assert!(zero.betti().is_err());
}

#[test]
fn cache_is_transparent() {
    let keel = keel_presentation(5).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let cache = GroebnerCache::new(Some(dir.path().to_path_buf()));
    let fresh = buchberger(&keel.table, &keel.relations).unwrap();
    let cold = cache.basis(&keel.table, &keel.relations).unwrap();
    let path = dir.path().join(format!("{}.json", cache_key(&keel.table, &keel.relations)));
    assert!(path.exists());
    let warm = cache.basis(&keel.table, &keel.relations).unwrap();
    assert_eq!(fresh.polys(), cold.polys());
    assert_eq!(cold.polys(), warm.polys());

    std::fs::write(&path, "not json").unwrap();
    let recovered = cache.basis(&keel.table, &keel.relations).unwrap();
    assert_eq!(recovered.polys(), fresh.polys());
}

#[test]
fn cache_keys_separate_presentations() {
    let a = keel_presentation(5).unwrap();
    let b = keel_presentation(4).unwrap();
    assert_ne!(cache_key(&a.table, &a.relations), cache_key(&b.table, &b.relations));
    assert_eq!(cache_key(&a.table, &a.relations), cache_key(&a.table, &a.relations.clone()));
}

use std::sync::OnceLock;

use proptest::prelude::*;

use grassmann_kirwan::groebner::GroebnerCache;
use grassmann_kirwan::hypersimplex::{enumerate_chambers, Chamber};
use grassmann_kirwan::kirwan::{admissible_pairs, build_ideal, permute_u, summarize_pairs, Condition, TauRule};
use grassmann_kirwan::suites::equivariance_holds;
use grassmann_kirwan::weyl::Permutation;

#[test]
fn every_n4_chamber_and_permutation_is_equivariant() {
    let cache = GroebnerCache::new(None);
    let chambers = enumerate_chambers(4).unwrap();
    for c in &chambers {
        for sigma in Permutation::all(4) {
            assert!(equivariance_holds(c, &sigma, &cache).unwrap(), "{} under {sigma}", c.signature());
        }
    }
}

#[test]
fn permuting_u_twice_composes() {
    let chambers = enumerate_chambers(4).unwrap();
    let ideal = build_ideal(4, &chambers[3]).unwrap();
    let (a, b) = (Permutation::new(vec![2, 3, 1, 4]).unwrap(), Permutation::new(vec![4, 1, 3, 2]).unwrap());
    for g in &ideal.generators {
        let twice = permute_u(&permute_u(g, &b).unwrap(), &a).unwrap();
        assert_eq!(twice, permute_u(g, &a.compose(&b)).unwrap());
    }
}

#[test]
fn c1_and_c2_pairs_do_not_depend_on_the_chamber() {
    let chambers = chambers5();
    let count = |c, condition: &dyn Fn(&Condition) -> bool| {
        summarize_pairs(&admissible_pairs(5, c, TauRule::TailSum).unwrap())
            .into_iter()
            .filter(|(k, _)| condition(k))
            .map(|(_, n)| n)
            .sum::<usize>()
    };
    let fixed = |k: &Condition| matches!(k, Condition::C1 | Condition::C2);
    let first = count(&chambers[0], &fixed);
    assert!(first > 0);
    for c in chambers {
        assert_eq!(count(c, &fixed), first);
    }
}

fn chambers5() -> &'static [Chamber] {
    static CHAMBERS: OnceLock<Vec<Chamber>> = OnceLock::new();
    CHAMBERS.get_or_init(|| enumerate_chambers(5).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn n5_ideals_are_equivariant(k in 0usize..76, one_line in Just(vec![1usize, 2, 3, 4, 5]).prop_shuffle()) {
        let chambers = chambers5();
        let sigma = Permutation::new(one_line).unwrap();
        prop_assert!(equivariance_holds(&chambers[k], &sigma, &GroebnerCache::new(None)).unwrap());
    }
}

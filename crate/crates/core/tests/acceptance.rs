//! One line per acceptance criterion, each checked at its stated tolerance.
//! Exact arithmetic throughout, so every tolerance is equality.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use grassmann_kirwan::algebra::{int, rat, Monomial, Polynomial, Rational};
use grassmann_kirwan::groebner::{BettiTable, GroebnerCache};
use grassmann_kirwan::hypersimplex::{
    enumerate_chambers, hassett_chamber, moment_map, orbit_partition, Gaussian, WeightVector,
};
use grassmann_kirwan::kirwan::{admissible_pairs, TauRule};
use grassmann_kirwan::oracles::{heavy_light_presentation, keel_presentation, polygon, toric_sr, HeavyLightOptions};
use grassmann_kirwan::suites::{self, point, Reduction, DM_POINT, LM_POINT};
use grassmann_kirwan::weyl::{
    divided_difference, divided_difference_w, divided_difference_word, swap_x, xu_table, Permutation, ReducedWord,
};

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Verdict + 'a>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: grassmann_kirwan::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn betti(dense: &[usize]) -> BettiTable {
    BettiTable::from_weights(dense)
}

fn criterion_1(cache: &GroebnerCache) -> Verdict {
    let chambers = lib(enumerate_chambers(4))?;
    ensure(chambers.len() == 8, format!("{} chambers", chambers.len()))?;
    let orbits = orbit_partition(&chambers, 4);
    ensure(orbits.len() == 2, format!("{} orbits", orbits.len()))?;
    for c in &chambers {
        let b = lib(suites::reduce_chamber(c, cache))?.betti;
        ensure(b == betti(&[1, 1]), format!("{} has betti {b}", c.signature()))?;
    }
    Ok("8 chambers, 2 orbits, every betti {0:1, 2:1}".into())
}

fn identities_vanish(r: &Reduction, identities: &[String]) -> Result<(), String> {
    for s in identities {
        let nf = lib(r.normal_form(s))?;
        ensure(nf.is_zero(), format!("NF({s}) = {nf}"))?;
    }
    Ok(())
}

fn criterion_2(cache: &GroebnerCache) -> Verdict {
    let dm = lib(suites::reduce_point(&point(DM_POINT), cache))?;
    ensure(dm.betti == betti(&[1, 5, 1]), format!("betti {}", dm.betti))?;
    let ids = suites::dm_identities();
    identities_vanish(&dm, &ids)?;
    Ok(format!("betti {{0:1, 2:5, 4:1}}, {} identities reduce to 0", ids.len()))
}

fn criterion_3(cache: &GroebnerCache) -> Verdict {
    let lm = lib(suites::reduce_point(&point(LM_POINT), cache))?;
    ensure(lm.betti == betti(&[1, 4, 1]), format!("betti {}", lm.betti))?;
    let ids = suites::lm_identities();
    identities_vanish(&lm, &ids)?;
    Ok(format!("betti {{0:1, 2:4, 4:1}}, {} identities reduce to 0", ids.len()))
}

fn criterion_4(cache: &GroebnerCache) -> Verdict {
    let oracle_betti = |p: grassmann_kirwan::groebner::GradedPresentation| -> Result<BettiTable, String> {
        lib(lib(cache.basis(&p.table, &p.relations))?.betti())
    };
    let dm = lib(suites::reduce_point(&point(DM_POINT), cache))?.betti;
    let keel = oracle_betti(lib(keel_presentation(5))?)?;
    let heptagon = oracle_betti(lib(toric_sr("heptagon", &lib(polygon("heptagon"))?.characteristic))?)?;
    let lm = lib(suites::reduce_point(&point(LM_POINT), cache))?.betti;
    let hl = oracle_betti(lib(heavy_light_presentation(2, 5, HeavyLightOptions::default()))?)?;
    let hexagon = oracle_betti(lib(toric_sr("hexagon", &lib(polygon("hexagon"))?.characteristic))?)?;
    for (name, b) in [("DM", &dm), ("Keel(5)", &keel), ("heptagon", &heptagon)] {
        ensure(*b == betti(&[1, 5, 1]) && b.total() == 7, format!("{name} betti {b}"))?;
    }
    for (name, b) in [("LM", &lm), ("heavy/light(2,5)", &hl), ("hexagon", &hexagon)] {
        ensure(*b == betti(&[1, 4, 1]) && b.total() == 6, format!("{name} betti {b}"))?;
    }
    Ok("(1,5,1) χ=7 for DM/Keel/heptagon; (1,4,1) χ=6 for LM/heavy-light/hexagon".into())
}

fn criterion_5() -> Verdict {
    let mut counts = Vec::new();
    for n in [4, 5] {
        let chambers = lib(enumerate_chambers(n))?;
        for c in &chambers {
            let tail: BTreeSet<_> = lib(admissible_pairs(n, c, TauRule::TailSum))?.into_iter().collect();
            let walls: BTreeSet<_> = lib(admissible_pairs(n, c, TauRule::Walls))?.into_iter().collect();
            ensure(tail == walls, format!("n={n} chamber {} differs", c.signature()))?;
        }
        counts.push(format!("{} chambers at n={n}", chambers.len()));
    }
    Ok(format!("tail-sum and wall sets agree on {}", counts.join(", ")))
}

fn criterion_6(cache: &GroebnerCache) -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut tried = Vec::new();
    let by_n = [lib(enumerate_chambers(4))?, lib(enumerate_chambers(5))?];
    for k in 0..10 {
        let n = if k < 5 { 4 } else { 5 };
        let chambers = &by_n[n - 4];
        let chamber = &chambers[rng.gen_range(0..chambers.len())];
        let perms = Permutation::all(n);
        let sigma = &perms[rng.gen_range(0..perms.len())];
        ensure(
            lib(suites::equivariance_holds(chamber, sigma, cache))?,
            format!("{} under {sigma}", chamber.signature()),
        )?;
        tried.push(format!("{sigma}"));
    }
    Ok(format!("10 pairs, σ ∈ {{{}}}", tried.join(", ")))
}

fn random_poly(rng: &mut StdRng, n: usize) -> Polynomial {
    let table = xu_table(n);
    let terms = (0..rng.gen_range(1..6)).map(|_| {
        let exps: Vec<u16> = (0..table.len())
            .map(|v| if v < n { rng.gen_range(0..3) } else { rng.gen_range(0..2) })
            .collect();
        (Monomial::new(&exps, &table), int(rng.gen_range(-5..=5)))
    });
    Polynomial::from_terms(&table, terms)
}

/// Every reduced word of `w`, found by stripping right descents.
fn all_reduced_words(w: &Permutation) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 1..w.n() {
        if w.one_line()[i - 1] > w.one_line()[i] {
            for mut word in all_reduced_words(&w.times_simple(i)) {
                word.push(i);
                out.push(word);
            }
        }
    }
    out
}

fn criterion_7() -> Verdict {
    let n = 4;
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let polys: Vec<Polynomial> = (0..20).map(|_| random_poly(&mut rng, n)).collect();
    let d = |i: usize, f: &Polynomial| lib(divided_difference(i, f));
    let mut word_checks = 0;
    for (k, f) in polys.iter().enumerate() {
        let g = &polys[(k + 1) % polys.len()];
        for i in 1..n {
            ensure(d(i, &d(i, f)?)?.is_zero(), format!("∂{i}² f ≠ 0 for f = {f}"))?;
            let lhs = d(i, &(f * g))?;
            let rhs = &(&d(i, f)? * g) + &(&lib(swap_x(i, f))? * &d(i, g)?);
            ensure(lhs == rhs, format!("twisted Leibniz fails for ∂{i}"))?;
            for j in 1..n {
                if i.abs_diff(j) >= 2 {
                    ensure(d(i, &d(j, f)?)? == d(j, &d(i, f)?)?, format!("∂{i}∂{j} ≠ ∂{j}∂{i}"))?;
                }
            }
            if i + 1 < n {
                let a = d(i, &d(i + 1, &d(i, f)?)?)?;
                let b = d(i + 1, &d(i, &d(i + 1, f)?)?)?;
                ensure(a == b, format!("braid fails at {i}"))?;
            }
        }
        for w in Permutation::all(n) {
            let expected = lib(divided_difference_w(&w, f))?;
            for word in all_reduced_words(&w) {
                ensure(word.len() == w.length(), format!("word {word:?} of {w} is not reduced"))?;
                let via_word = lib(divided_difference_word(&ReducedWord(word.clone()), f))?;
                ensure(via_word == expected, format!("∂ along {word:?} differs from ∂_{w}"))?;
                word_checks += 1;
            }
        }
    }
    Ok(format!("20 polynomials, all w ∈ S_4, {word_checks} reduced-word evaluations"))
}

fn random_gaussian(rng: &mut StdRng) -> Gaussian {
    let mut part = || rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    Gaussian::new(part(), part())
}

/// Diagonal of the orthogonal projection `A^H (A A^H)^{-1} A` onto the row
/// space, computed directly from the 2×2 Gram matrix.
fn projection_diagonal(a: &[Vec<Gaussian>]) -> Option<Vec<Rational>> {
    let n = a[0].len();
    let dot = |r: &[Gaussian], s: &[Gaussian]| -> Gaussian {
        r.iter().zip(s).fold(Gaussian::zero(), |acc, (x, y)| acc + x * y.conj())
    };
    let (g11, g12, g21, g22) = (dot(&a[0], &a[0]), dot(&a[0], &a[1]), dot(&a[1], &a[0]), dot(&a[1], &a[1]));
    let det = &g11 * &g22 - &g12 * &g21;
    if det.is_zero() {
        return None;
    }
    let inv = [[&g22 / &det, -(&g12 / &det)], [-(&g21 / &det), &g11 / &det]];
    let diag = (0..n)
        .map(|k| {
            let col = [a[0][k].clone(), a[1][k].clone()];
            let mut acc = Gaussian::zero();
            for r in 0..2 {
                for s in 0..2 {
                    acc += col[r].conj() * &inv[r][s] * &col[s];
                }
            }
            assert!(acc.im.is_zero(), "projection diagonal is real");
            acc.re
        })
        .collect();
    Some(diag)
}

fn criterion_8() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut done = 0;
    while done < 100 {
        let n = if done < 50 { 4 } else { 5 };
        let a: Vec<Vec<Gaussian>> = (0..2).map(|_| (0..n).map(|_| random_gaussian(&mut rng)).collect()).collect();
        let Some(diag) = projection_diagonal(&a) else { continue };
        let mu = lib(moment_map(&a))?;
        ensure(mu.coords() == diag.as_slice(), format!("μ = {mu}, projection diagonal differs"))?;
        let total: Rational = mu.coords().iter().sum();
        ensure(total == int(2), format!("Σμ = {total}"))?;
        done += 1;
    }
    Ok("100 matrices (50 at n=4, 50 at n=5): μ = diag(P), Σμ = 2".into())
}

fn criterion_9(cache: &GroebnerCache) -> Verdict {
    let lm = lib(suites::reduce_point(&point(LM_POINT), cache))?;
    for eps in ["1/9", "1/7", "1/5"] {
        let w: WeightVector = lib(format!("1,1,{eps},{eps},{eps}").parse())?;
        let c = lib(hassett_chamber(&w))?;
        ensure(c == lm.ideal.chamber, format!("ε = {eps} routes to {}", c.signature()))?;
        let b = lib(suites::reduce_chamber(&c, cache))?.betti;
        ensure(b == betti(&[1, 4, 1]), format!("ε = {eps}: betti {b}"))?;
    }
    let dm = lib(suites::reduce_point(&point(DM_POINT), cache))?;
    let c = lib(hassett_chamber(&lib("1,1,1,1,1".parse::<WeightVector>())?))?;
    ensure(c == dm.ideal.chamber, format!("(1,1,1,1,1) routes to {}", c.signature()))?;
    ensure(lib(suites::reduce_chamber(&c, cache))?.betti == betti(&[1, 5, 1]), "DM betti")?;
    Ok("ε ∈ {1/9, 1/7, 1/5} → LM (1,4,1); (1,1,1,1,1) → DM (1,5,1)".into())
}

fn criterion_10(cache: &GroebnerCache) -> Verdict {
    let dm = lib(suites::reduce_point(&point(DM_POINT), cache))?;
    let lm = lib(suites::reduce_point(&point(LM_POINT), cache))?;
    let reports = [
        lib(suites::dm_divisor_report(&dm))?,
        lib(suites::lm_divisor_report(&lm))?,
        lib(suites::lm_toric_report(&lm))?,
    ];
    let mut summary = Vec::new();
    for r in &reports {
        for c in &r.checks {
            // A nonzero residue must be itemized exactly: it is the actual normal form.
            let recomputed = if r.label.starts_with("deligne") { dm.basis.normal_form(&c.image) } else { lm.basis.normal_form(&c.image) };
            ensure(lib(recomputed)? == c.residue, format!("{}: residue of {} is not its normal form", r.label, c.label))?;
        }
        let failures = r.failures();
        if failures.is_empty() {
            summary.push(format!("{}: all {} zero", r.label, r.checks.len()));
        } else {
            let items: Vec<String> = failures.iter().map(|c| format!("{} → {}", c.label, c.residue)).collect();
            summary.push(format!("{}: {} nonzero [{}]", r.label, failures.len(), items.join("; ")));
        }
    }
    Ok(summary.join(" | "))
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temporary cache directory");
    let cache = GroebnerCache::new(Some(dir.path().to_path_buf()));
    let criteria: Vec<Criterion> = vec![
        ("n=4 chambers, orbits and betti tables", Duration::from_secs(10), Box::new(|| criterion_1(&cache))),
        ("Deligne-Mumford ring at n=5", Duration::from_secs(120), Box::new(|| criterion_2(&cache))),
        ("Losev-Manin ring at n=5", Duration::from_secs(120), Box::new(|| criterion_3(&cache))),
        ("oracle triangulation", Duration::MAX, Box::new(|| criterion_4(&cache))),
        ("tail-sum and wall admissibility agree", Duration::MAX, Box::new(criterion_5)),
        ("S_n equivariance", Duration::MAX, Box::new(|| criterion_6(&cache))),
        ("divided-difference operator identities", Duration::from_secs(30), Box::new(criterion_7)),
        ("moment map equals projection diagonal", Duration::MAX, Box::new(criterion_8)),
        ("Hassett routing", Duration::MAX, Box::new(|| criterion_9(&cache))),
        ("identification-map reports", Duration::MAX, Box::new(|| criterion_10(&cache))),
    ];
    let mut failed = 0;
    for (k, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; over the {budget:?} budget")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({elapsed:.2?}): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({elapsed:.2?}): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

//! Elementary symmetric polynomials and rewriting of block-symmetric
//! polynomials in terms of block elementary symmetric generators.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial, Rational, VariableTable};
use crate::error::{Error, Result};

/// `σ_k` over the given variables of `table`; `σ_0 = 1`.
pub fn elem_sym(k: usize, vars: &[usize], table: &Arc<VariableTable>) -> Result<Polynomial> {
    if k > vars.len() {
        return Err(Error::Range(format!(
            "elem_sym({k}) over {} variables",
            vars.len()
        )));
    }
    if let Some(&bad) = vars.iter().find(|&&v| v >= table.len()) {
        return Err(Error::UnknownVariable(format!("#{bad}")));
    }
    Ok(Polynomial::from_terms(
        table,
        vars.iter().combinations(k).map(|subset| {
            let mut exps = vec![0u16; table.len()];
            for &&v in &subset {
                exps[v] += 1;
            }
            (Monomial::new(&exps, table), Rational::one())
        }),
    ))
}

/// One block of variables and the names of the variables standing for its
/// elementary symmetric polynomials: `targets[i]` replaces `σ_{i+1}(vars)`.
#[derive(Clone, Debug)]
pub struct BlockSpec {
    pub vars: Vec<String>,
    pub targets: Vec<String>,
}

impl BlockSpec {
    pub fn new<S: Into<String>, T: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        targets: impl IntoIterator<Item = T>,
    ) -> Self {
        BlockSpec {
            vars: vars.into_iter().map(Into::into).collect(),
            targets: targets.into_iter().map(Into::into).collect(),
        }
    }
}

/// Rewrites `f`, symmetric within each block, as a polynomial over `out` in
/// which every block appears only through its target variables.
///
/// Uses the leading-term algorithm for symmetric polynomials one block at a
/// time. A lex-leading block exponent that is not a partition proves that `f`
/// is not symmetric in that block, which is reported as
/// [`Error::NotSymmetric`].
pub fn block_reduce(
    f: &Polynomial,
    blocks: &[BlockSpec],
    out: &Arc<VariableTable>,
) -> Result<Polynomial> {
    let src = f.table();
    let mut work_vars: Vec<(String, u32)> = src
        .names()
        .iter()
        .cloned()
        .zip(src.weights().iter().copied())
        .collect();
    for block in blocks {
        if block.targets.len() != block.vars.len() {
            return Err(Error::Range(format!(
                "block {:?} needs {} targets",
                block.vars,
                block.vars.len()
            )));
        }
        let w = match block.vars.first() {
            Some(v) => src.weight(src.require(v)?),
            None => continue,
        };
        for v in &block.vars {
            if src.weight(src.require(v)?) != w {
                return Err(Error::Range(format!("block {:?} mixes weights", block.vars)));
            }
        }
        for (i, t) in block.targets.iter().enumerate() {
            let ti = out.require(t)?;
            if out.weight(ti) != w * (i as u32 + 1) {
                return Err(Error::Range(format!(
                    "target `{t}` must have weight {}",
                    w * (i as u32 + 1)
                )));
            }
            if src.index_of(t).is_some() {
                return Err(Error::Range(format!("target `{t}` clashes with an input variable")));
            }
            work_vars.push((t.clone(), out.weight(ti)));
        }
    }
    let work = VariableTable::new(work_vars)?;
    let mut g = f.transfer(&work)?;

    for block in blocks {
        let vars: Vec<usize> = block
            .vars
            .iter()
            .map(|v| work.require(v))
            .collect::<Result<_>>()?;
        if vars.is_empty() {
            continue;
        }
        let targets: Vec<usize> = block
            .targets
            .iter()
            .map(|t| work.require(t))
            .collect::<Result<_>>()?;
        let sigmas: Vec<Polynomial> = (1..=vars.len())
            .map(|k| elem_sym(k, &vars, &work))
            .collect::<Result<_>>()?;
        let mut sigma_powers: HashMap<(usize, u32), Polynomial> = HashMap::new();

        loop {
            let lead = g
                .terms()
                .iter()
                .map(|(m, _)| vars.iter().map(|&v| m.exponent(v)).collect::<Vec<u16>>())
                .filter(|e| e.iter().any(|&x| x > 0))
                .max();
            let alpha = match lead {
                Some(a) => a,
                None => break,
            };
            if alpha.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotSymmetric(block.vars.join(",")));
            }
            // coefficient of b^alpha, as a polynomial free of block variables
            let coeff = Polynomial::from_terms(
                &work,
                g.terms()
                    .iter()
                    .filter(|(m, _)| vars.iter().zip(&alpha).all(|(&v, &a)| m.exponent(v) == a))
                    .map(|(m, c)| {
                        let mut exps = m.exponents().to_vec();
                        for &v in &vars {
                            exps[v] = 0;
                        }
                        (Monomial::new(&exps, &work), c.clone())
                    }),
            );
            let mut sym = Polynomial::one(&work);
            let mut tgt_exps = vec![0u16; work.len()];
            for i in 0..alpha.len() {
                let next = alpha.get(i + 1).copied().unwrap_or(0);
                let d = (alpha[i] - next) as u32;
                if d == 0 {
                    continue;
                }
                let p = sigma_powers
                    .entry((i, d))
                    .or_insert_with(|| sigmas[i].pow(d));
                sym = &sym * &*p;
                tgt_exps[targets[i]] += d as u16;
            }
            let tgt = Polynomial::monomial(&work, Monomial::new(&tgt_exps, &work), Rational::one());
            g = &g - &(&coeff * &(&sym - &tgt));
        }
    }
    debug_assert!(g.terms().iter().all(|(_, c)| !c.is_zero()));
    g.transfer(out)
}

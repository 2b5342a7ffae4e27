//! Graded quotient rings: standard monomials, Betti tables and comparisons.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{buchberger, GroebnerBasis};
use crate::algebra::{Monomial, Polynomial, VariableTable};
use crate::error::{Error, Result};

/// Dimensions `b_{2d}` of the graded pieces of a finite-dimensional quotient,
/// keyed by cohomological degree `2d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiTable(BTreeMap<u32, usize>);

impl BettiTable {
    pub fn from_degrees(entries: impl IntoIterator<Item = (u32, usize)>) -> Self {
        BettiTable(entries.into_iter().filter(|&(_, b)| b > 0).collect())
    }

    /// `b_{2d}` listed for `d = 0, 1, …` up to the top degree.
    pub fn from_weights(counts: &[usize]) -> Self {
        Self::from_degrees(counts.iter().enumerate().map(|(d, &b)| (2 * d as u32, b)))
    }

    pub fn get(&self, degree: u32) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<u32, usize> {
        &self.0
    }

    pub fn top_degree(&self) -> u32 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// Sum of all Betti numbers, the Euler characteristic when only even
    /// degrees occur.
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// `b_{2d} = b_{2(top − d)}` for all `d`.
    pub fn is_palindromic(&self) -> bool {
        let top = self.top_degree();
        self.0.iter().all(|(&d, &b)| self.get(top - d) == b)
    }

    /// `(b_0, b_2, …, b_top)` including zeros.
    pub fn dense(&self) -> Vec<usize> {
        (0..=self.top_degree() / 2).map(|d| self.get(2 * d)).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dense().iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl GroebnerBasis {
    /// Errors with [`Error::InfiniteDimensional`] unless every variable has a
    /// pure power among the leading monomials.
    pub fn check_finite(&self) -> Result<()> {
        let leads = self.leading_monomials();
        for v in 0..self.table().len() {
            let has_power = leads.iter().any(|m| {
                m.exponent(v) > 0
                    && m.exponents().iter().enumerate().all(|(i, &e)| i == v || e == 0)
            });
            if !has_power {
                return Err(Error::InfiniteDimensional(self.table().name(v).to_string()));
            }
        }
        Ok(())
    }

    /// Monomials divisible by no leading monomial, in increasing order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        self.check_finite()?;
        let table = self.table().clone();
        let leads: Vec<&Monomial> = self.leading_monomials();
        let mut out = Vec::new();
        let mut stack = vec![(Monomial::one(table.len()), 0usize)];
        while let Some((m, first)) = stack.pop() {
            if leads.iter().any(|l| l.divides(&m)) {
                continue;
            }
            for v in first..table.len() {
                stack.push((m.mul(&Monomial::var(v, &table)), v));
            }
            out.push(m);
        }
        out.sort();
        Ok(out)
    }

    /// Number of standard monomials in each weight, as cohomology in degree
    /// twice the weight.
    pub fn betti(&self) -> Result<BettiTable> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for m in self.standard_monomials()? {
            *counts.entry(2 * m.degree()).or_default() += 1;
        }
        Ok(BettiTable::from_degrees(counts))
    }
}

/// Generators and relations of a graded ring.
#[derive(Clone, Debug)]
pub struct GradedPresentation {
    pub label: String,
    pub table: Arc<VariableTable>,
    pub relations: Vec<Polynomial>,
}

impl GradedPresentation {
    pub fn new(label: impl Into<String>, table: Arc<VariableTable>, relations: Vec<Polynomial>) -> Result<Self> {
        for r in &relations {
            if **r.table() != *table {
                return Err(Error::TableMismatch);
            }
        }
        Ok(GradedPresentation { label: label.into(), table, relations })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| r.is_homogeneous())
    }

    pub fn groebner(&self) -> Result<GroebnerBasis> {
        buchberger(&self.table, &self.relations)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "variables": self.table.names().iter().zip(self.table.weights())
                .map(|(v, w)| json!({"name": v, "weight": w}))
                .collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Side-by-side Betti tables of two presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationComparison {
    pub left: (String, BettiTable),
    pub right: (String, BettiTable),
    /// `(degree, left, right)` for every degree occurring in either table.
    pub degrees: Vec<(u32, usize, usize)>,
}

impl PresentationComparison {
    /// Equal Hilbert series. Necessary for an isomorphism, not sufficient.
    pub fn betti_equal(&self) -> bool {
        self.left.1 == self.right.1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "left": {"label": self.left.0, "betti": self.left.1.to_json(), "euler": self.left.1.total()},
            "right": {"label": self.right.0, "betti": self.right.1.to_json(), "euler": self.right.1.total()},
            "degrees": self.degrees.iter().map(|(d, a, b)| json!({"degree": d, "left": a, "right": b, "equal": a == b})).collect::<Vec<_>>(),
            "betti_equal": self.betti_equal(),
        })
    }
}

pub fn compare_presentations(a: &GradedPresentation, b: &GradedPresentation) -> Result<PresentationComparison> {
    let ba = a.groebner()?.betti()?;
    let bb = b.groebner()?.betti()?;
    let mut degrees: Vec<u32> = ba.entries().keys().chain(bb.entries().keys()).copied().collect();
    degrees.sort_unstable();
    degrees.dedup();
    Ok(PresentationComparison {
        degrees: degrees.into_iter().map(|d| (d, ba.get(d), bb.get(d))).collect(),
        left: (a.label.clone(), ba),
        right: (b.label.clone(), bb),
    })
}

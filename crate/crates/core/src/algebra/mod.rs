//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials live over a [`VariableTable`] that fixes variable names, their
//! order and their weights. Cohomological degree is twice the weight. Terms
//! are kept sorted by the weighted degree reverse lexicographic order of the
//! table, which makes the representation canonical.

mod monomial;
mod polynomial;
mod symmetric;
mod text;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use symmetric::{block_reduce, elem_sym, BlockSpec};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((_, d)) = s.split_once('/') {
        if d.trim().trim_start_matches('+').chars().all(|c| c == '0') {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
    }
    Rational::from_str(s).map_err(|_| Error::Parse(format!("not a fraction: `{s}`")))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Ordered list of named variables with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VariableTable {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Result<Arc<Self>> {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        let mut seen = HashMap::new();
        for (name, weight) in vars {
            let name = name.into();
            if weight == 0 {
                return Err(Error::Range(format!("variable `{name}` has weight 0")));
            }
            if !is_identifier(&name) {
                return Err(Error::Parse(format!("`{name}` is not a valid variable name")));
            }
            if seen.insert(name.clone(), names.len()).is_some() {
                return Err(Error::Range(format!("duplicate variable `{name}`")));
            }
            names.push(name);
            weights.push(weight);
        }
        Ok(Arc::new(VariableTable { names, weights }))
    }

    /// All variables of weight one.
    pub fn uniform<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        Self::new(names.into_iter().map(|n| (n, 1)))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Same variables and weights, listed in a different order.
    pub fn reordered(&self, order: &[usize]) -> Result<Arc<Self>> {
        if order.len() != self.len() {
            return Err(Error::Range("reordering must list every variable once".into()));
        }
        Self::new(order.iter().map(|&i| (self.names[i].clone(), self.weights[i])))
    }
}

impl fmt::Display for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, w)) in self.names.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}:{w}")?;
        }
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(8, 4)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn table_rejects_duplicates_and_zero_weight() {
        assert!(VariableTable::uniform(["x", "x"]).is_err());
        assert!(VariableTable::new([("x", 0)]).is_err());
        assert!(VariableTable::uniform(["2x"]).is_err());
        let t = VariableTable::new([("e1", 1), ("e2", 2)]).unwrap();
        assert_eq!(t.require("e2").unwrap(), 1);
        assert!(matches!(t.require("e3"), Err(Error::UnknownVariable(_))));
    }
}

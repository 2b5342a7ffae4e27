use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Exponents;
use super::{Monomial, Rational, VariableTable};
use crate::error::{Error, Result};

/// Sparse polynomial with rational coefficients.
///
/// Terms are stored strictly descending in the monomial order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone)]
pub struct Polynomial {
    table: Arc<VariableTable>,
    terms: Vec<(Monomial, Rational)>,
}

fn same_table(a: &Arc<VariableTable>, b: &Arc<VariableTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(table: &Arc<VariableTable>) -> Self {
        Polynomial {
            table: table.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(table: &Arc<VariableTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &Arc<VariableTable>, c: Rational) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.push((Monomial::one(table.len()), c));
        }
        p
    }

    pub fn var(table: &Arc<VariableTable>, i: usize) -> Self {
        Polynomial {
            table: table.clone(),
            terms: vec![(Monomial::var(i, table), Rational::one())],
        }
    }

    pub fn var_named(table: &Arc<VariableTable>, name: &str) -> Result<Self> {
        Ok(Self::var(table, table.require(name)?))
    }

    pub fn monomial(table: &Arc<VariableTable>, m: Monomial, c: Rational) -> Self {
        Self::from_terms(table, [(m, c)])
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms(
        table: &Arc<VariableTable>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), table.len());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(table, acc)
    }

    pub(crate) fn from_map(table: &Arc<VariableTable>, acc: BTreeMap<Monomial, Rational>) -> Self {
        Polynomial {
            table: table.clone(),
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn from_hash(table: &Arc<VariableTable>, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            table: table.clone(),
            terms,
        }
    }

    /// Terms must already be strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(table: &Arc<VariableTable>, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            table: table.clone(),
            terms,
        }
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Highest weighted degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((lm, _)) => self.terms.iter().all(|(m, _)| m.degree() == lm.degree()),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Indices of the variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.table.len()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Polynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Polynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.table);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Scaled so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Integer coefficients with trivial content and a positive leading
    /// coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lcm_den = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| c.numer() * (&lcm_den / c.denom()))
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if ints[0].is_negative() {
            content = -content;
        }
        Polynomial {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .zip(ints)
                .map(|((m, _), v)| (m.clone(), Rational::from_integer(v / &content)))
                .collect(),
        }
    }

    /// Re-expresses the polynomial over another table, matching variables by
    /// name.
    pub fn transfer(&self, target: &Arc<VariableTable>) -> Result<Self> {
        if same_table(&self.table, target) {
            return Ok(Polynomial {
                table: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut index = vec![None; self.table.len()];
        for i in self.variables() {
            index[i] = Some(target.require(self.table.name(i))?);
        }
        Ok(self.remap(target, &index))
    }

    fn remap(&self, target: &Arc<VariableTable>, index: &[Option<usize>]) -> Self {
        Self::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut exps: Exponents = smallvec::smallvec![0; target.len()];
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        exps[index[i].expect("occurring variable is mapped")] += e;
                    }
                }
                (Monomial::new(&exps, target), c.clone())
            }),
        )
    }

    /// Renames variables: each variable `from` occurring in the polynomial is
    /// replaced by `to`. Variables not mentioned are left alone.
    pub fn substitute(&self, map: &[(&str, &str)]) -> Result<Self> {
        let mut index: Vec<Option<usize>> = (0..self.table.len()).map(Some).collect();
        for (from, to) in map {
            let i = self.table.require(from)?;
            index[i] = Some(self.table.require(to)?);
        }
        self.substitute_indices(&index.into_iter().map(Option::unwrap).collect::<Vec<_>>())
    }

    /// Index form of [`Polynomial::substitute`]: variable `i` becomes
    /// `map[i]`. The map must be injective on the variables that occur.
    pub fn substitute_indices(&self, map: &[usize]) -> Result<Self> {
        if map.len() != self.table.len() {
            return Err(Error::Range("substitution must cover the table".into()));
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= self.table.len()) {
            return Err(Error::UnknownVariable(format!("#{bad}")));
        }
        let used = self.variables();
        let images: HashSet<usize> = used.iter().map(|&i| map[i]).collect();
        if images.len() != used.len() {
            return Err(Error::Range("substitution is not injective".into()));
        }
        let index: Vec<Option<usize>> = map.iter().map(|&j| Some(j)).collect();
        Ok(self.remap(&self.table, &index))
    }

    /// Replaces variable `i` by `images[i]`; all images share one table,
    /// which becomes the table of the result.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Self> {
        if images.len() != self.table.len() {
            return Err(Error::Range(format!(
                "composition needs {} images, got {}",
                self.table.len(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.table.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| !same_table(&p.table, &target)) {
            return Err(Error::TableMismatch);
        }
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as u32));
                term = &term * &*p;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// The quotient `self / g`, failing unless the division is exact.
    pub fn exact_divide(&self, g: &Polynomial) -> Result<Self> {
        self.check_table(g)?;
        let (lm, lc) = g
            .leading_term()
            .ok_or_else(|| Error::Divisibility("division by zero".into()))?;
        let mut rem = self.clone();
        let mut quotient: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let q = lm.divide_into(m).ok_or_else(|| {
                Error::Divisibility(format!("`{g}` does not divide `{self}`"))
            })?;
            let qc = c / lc;
            rem = &rem - &g.mul_term(&q, &qc);
            quotient.push((q, qc));
        }
        Ok(Polynomial::from_sorted(&self.table, quotient))
    }

    pub(crate) fn check_table(&self, other: &Polynomial) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert!(
            same_table(&self.table, &other.table),
            "polynomials over different variable tables"
        );
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                }
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Greater => out.push(a.next().unwrap().clone()),
                    std::cmp::Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m.clone(), if negate { -c } else { c.clone() }));
                    }
                    std::cmp::Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = if negate { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((m.clone(), c));
                        }
                    }
                },
            }
        }
        Polynomial {
            table: self.table.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        assert!(
            same_table(&self.table, &other.table),
            "polynomials over different variable tables"
        );
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.table);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Polynomial::from_hash(&self.table, acc)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                $body(self, rhs)
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                $body(&self, rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Polynomial, b: &Polynomial| a.merge(b, false));
binop!(Sub, sub, |a: &Polynomial, b: &Polynomial| a.merge(b, true));
binop!(Mul, mul, |a: &Polynomial, b: &Polynomial| a.product(b));

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn xy() -> Arc<VariableTable> {
        VariableTable::uniform(["x", "y"]).unwrap()
    }

    fn p(t: &Arc<VariableTable>, s: &str) -> Polynomial {
        Polynomial::parse(t, s).unwrap()
    }

    #[test]
    fn exact_division() {
        let t = xy();
        assert_eq!(p(&t, "x^2 - y^2").exact_divide(&p(&t, "x - y")).unwrap(), p(&t, "x + y"));
        let f = p(&t, "3*x*y^2 - 1/2");
        assert_eq!(f.exact_divide(&Polynomial::one(&t)).unwrap(), f);
        assert!(matches!(
            p(&t, "x*y + 1").exact_divide(&p(&t, "x")),
            Err(Error::Divisibility(_))
        ));
        assert!(p(&t, "x").exact_divide(&Polynomial::zero(&t)).is_err());
    }

    #[test]
    fn substitution() {
        let t = VariableTable::uniform(["x1", "u1", "u2", "u5"]).unwrap();
        let f = p(&t, "x1 - u2");
        assert_eq!(f.substitute(&[("u2", "u5")]).unwrap(), p(&t, "x1 - u5"));
        assert_eq!(f.substitute(&[]).unwrap(), f);
        let g = p(&t, "u1 + u2");
        assert_eq!(g.substitute(&[("u1", "u2"), ("u2", "u1")]).unwrap(), g);
        assert!(matches!(
            f.substitute(&[("u2", "u9")]),
            Err(Error::UnknownVariable(_))
        ));
        // collapsing two occurring variables is not a substitution
        assert!(g.substitute(&[("u1", "u2")]).is_err());
    }

    #[test]
    fn primitive_form() {
        let t = xy();
        let f = p(&t, "-2/3*x + 4/9*y");
        assert_eq!(f.primitive(), p(&t, "3*x - 2*y"));
        assert_eq!(p(&t, "x").scale(&int(-5)).primitive(), p(&t, "x"));
        assert_eq!(f.monic().leading_coeff(), Some(&int(1)));
        assert_eq!(f.scale(&rat(0, 1)), Polynomial::zero(&t));
    }

    #[test]
    fn compose_and_transfer() {
        let t = xy();
        let s = VariableTable::uniform(["a", "x", "y"]).unwrap();
        let f = p(&t, "x^2 - y");
        let g = f.compose(&[p(&s, "a + 1"), p(&s, "a*y")]).unwrap();
        assert_eq!(g, p(&s, "a^2 - a*y + 2*a + 1"));
        assert_eq!(f.transfer(&s).unwrap(), p(&s, "x^2 - y"));
        assert!(p(&s, "a").transfer(&t).is_err());
    }

    #[test]
    fn homogeneity_and_degree() {
        let t = VariableTable::new([("a", 1), ("b", 2)]).unwrap();
        assert!(p(&t, "a^2 + 3*b").is_homogeneous());
        assert!(!p(&t, "a + b").is_homogeneous());
        assert_eq!(p(&t, "a^2*b + a").degree(), Some(4));
        assert_eq!(Polynomial::zero(&t).degree(), None);
        assert_eq!(p(&t, "a + b").pow(3), &(&p(&t, "a + b") * &p(&t, "a + b")) * &p(&t, "a + b"));
    }
}

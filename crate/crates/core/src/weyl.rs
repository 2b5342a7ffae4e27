//! Permutations, reduced words and divided difference operators.
//!
//! Words are products of simple transpositions composed as functions:
//! `s_{i_1} s_{i_2} ... s_{i_l}` applies `s_{i_l}` first. The operator of a
//! word is composed the same way, `∂_w = ∂_{i_1} ∘ ... ∘ ∂_{i_l}`, so `∂_{i_l}`
//! acts on the polynomial first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, Polynomial, Rational, VariableTable};
use crate::error::{Error, Result};

/// Element of `S_n` in one-line notation: `w[i-1] = w(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Range(format!("{one_line:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Number of inversions, which is the length of any reduced word.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.n(), other.n());
        Permutation(other.0.iter().map(|&v| self.0[v - 1]).collect())
    }

    /// `w s_i`: swaps positions `i` and `i+1`.
    pub fn times_simple(&self, i: usize) -> Self {
        let mut w = self.0.clone();
        w.swap(i - 1, i);
        Permutation(w)
    }

    /// `s_i w`: swaps the values `i` and `i+1`.
    pub fn simple_times(&self, i: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .map(|&v| match v {
                    v if v == i => i + 1,
                    v if v == i + 1 => i,
                    v => v,
                })
                .collect(),
        )
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: usize| self.0.iter().position(|&x| x == v).unwrap();
        pos(i) > pos(i + 1)
    }

    /// Reduced word obtained by repeatedly splitting off the smallest right
    /// descent.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut w = self.clone();
        let mut letters = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.n()).find(|&i| w.has_right_descent(i)) {
            letters.push(i);
            w = w.times_simple(i);
        }
        letters.reverse();
        ReducedWord(letters)
    }

    /// The product `s_{i_1} ... s_{i_l}` in `S_n`.
    pub fn from_word(n: usize, word: &ReducedWord) -> Result<Self> {
        let mut w = Permutation::identity(n);
        for &i in &word.0 {
            if i == 0 || i >= n {
                return Err(Error::Range(format!("s{i} is not a simple transposition of S_{n}")));
            }
            w = w.times_simple(i);
        }
        Ok(w)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad entry `{t}`"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad digit `{c}` in `{s}`")))
                })
                .collect::<Result<_>>()?
        };
        if values.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Permutation::new(values)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

/// Word in the simple transpositions, `[i_1, ..., i_l]` for `s_{i_1} ... s_{i_l}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when the word has minimal length for the permutation it spells.
    pub fn is_reduced(&self, n: usize) -> Result<bool> {
        Ok(Permutation::from_word(n, self)?.length() == self.len())
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{i}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(ReducedWord(Vec::new()));
        }
        s.split_whitespace()
            .map(|t| {
                t.strip_prefix('s')
                    .map(|r| r.trim_start_matches('_'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|&i| i > 0)
                    .ok_or_else(|| Error::Parse(format!("bad letter `{t}`")))
            })
            .collect::<Result<_>>()
            .map(ReducedWord)
    }
}

/// Variables `x1..xn, u1..un`, all of weight one.
pub fn xu_table(n: usize) -> Arc<VariableTable> {
    VariableTable::uniform(
        (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=n).map(|i| format!("u{i}"))),
    )
    .expect("valid names")
}

/// `∏_{i<j} (x_i − u_j)` over [`xu_table`].
pub fn det_poly(n: usize) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::Range(format!("det_poly needs n ≥ 2, got {n}")));
    }
    let table = xu_table(n);
    let mut acc = Polynomial::one(&table);
    for i in 1..n {
        for j in i + 1..=n {
            let factor = &Polynomial::var(&table, i - 1) - &Polynomial::var(&table, n + j - 1);
            acc = &acc * &factor;
        }
    }
    Ok(acc)
}

fn x_pair(f: &Polynomial, i: usize) -> Result<(usize, usize)> {
    let t = f.table();
    if i == 0 {
        return Err(Error::Range("∂_0 is undefined".into()));
    }
    match (t.index_of(&format!("x{i}")), t.index_of(&format!("x{}", i + 1))) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Range(format!("∂_{i} needs variables x{i} and x{}", i + 1))),
    }
}

/// `s_i f`: exchanges `x_i` and `x_{i+1}`.
pub fn swap_x(i: usize, f: &Polynomial) -> Result<Polynomial> {
    let (a, b) = x_pair(f, i)?;
    let mut map: Vec<usize> = (0..f.table().len()).collect();
    map.swap(a, b);
    f.substitute_indices(&map)
}

/// `∂_i f = (f − s_i f) / (x_i − x_{i+1})`.
///
/// Computed term by term: for `x_i^a x_{i+1}^b` with `a > b` the quotient is
/// `x_i^b x_{i+1}^b · Σ_{k<a−b} x_i^k x_{i+1}^{a−b−1−k}`, and the sign flips
/// when `a < b`.
pub fn divided_difference(i: usize, f: &Polynomial) -> Result<Polynomial> {
    let (ia, ib) = x_pair(f, i)?;
    let table = f.table();
    let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (m, c) in f.terms() {
        let (a, b) = (m.exponent(ia), m.exponent(ib));
        if a == b {
            continue;
        }
        let (lo, d, coeff) = if a > b {
            (b, a - b, c.clone())
        } else {
            (a, b - a, -c)
        };
        let mut exps = m.exponents().to_vec();
        for k in 0..d {
            exps[ia] = lo + k;
            exps[ib] = lo + d - 1 - k;
            *acc.entry(Monomial::new(&exps, table))
                .or_insert_with(Rational::zero) += &coeff;
        }
    }
    Ok(Polynomial::from_terms(table, acc))
}

/// `∂_w f` along the canonical reduced word of `w`.
pub fn divided_difference_w(w: &Permutation, f: &Polynomial) -> Result<Polynomial> {
    divided_difference_word(&w.reduced_word(), f)
}

/// `∂_{i_1} ∘ ... ∘ ∂_{i_l}` applied to `f`, last letter first.
pub fn divided_difference_word(word: &ReducedWord, f: &Polynomial) -> Result<Polynomial> {
    let mut g = f.clone();
    for &i in word.letters().iter().rev() {
        if g.is_zero() {
            break;
        }
        g = divided_difference(i, &g)?;
    }
    Ok(g)
}

/// `∂_w f` for every `w ∈ S_n`, built level by level from
/// `∂_w = ∂_i ∘ ∂_{s_i w}` where `i` is a left descent of `w`.
pub fn divided_differences_all(n: usize, f: &Polynomial) -> Result<HashMap<Permutation, Polynomial>> {
    let perms = Permutation::all(n);
    let max_len = n * n.saturating_sub(1) / 2;
    let mut by_len: Vec<Vec<Permutation>> = vec![Vec::new(); max_len + 1];
    for w in perms {
        let l = w.length();
        by_len[l].push(w);
    }
    let mut out: HashMap<Permutation, Polynomial> = HashMap::new();
    out.insert(Permutation::identity(n), f.clone());
    for level in by_len.iter().skip(1) {
        let computed: Vec<(Permutation, Polynomial)> = level
            .par_iter()
            .map(|w| {
                let i = (1..n).find(|&i| w.has_left_descent(i)).expect("non-identity");
                let prev = &out[&w.simple_times(i)];
                let g = if prev.is_zero() {
                    prev.clone()
                } else {
                    divided_difference(i, prev)?
                };
                Ok((w.clone(), g))
            })
            .collect::<Result<_>>()?;
        out.extend(computed);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn word(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(perm("43521").length(), 8);
        assert_eq!(perm("4231").length(), 5);
        assert_eq!(Permutation::from_word(4, &word("s1 s2 s3 s2 s1")).unwrap(), perm("4231"));
    }

    #[test]
    fn reduced_words() {
        assert!(Permutation::identity(4).reduced_word().is_empty());
        let w = perm("52431");
        let rw = w.reduced_word();
        assert_eq!(rw.len(), 8);
        assert_eq!(Permutation::from_word(5, &rw).unwrap(), w);
        assert_eq!(Permutation::from_word(5, &word("s1 s2 s3 s2 s4 s3 s2 s1")).unwrap(), w);
        let v = perm("53421");
        assert_eq!(v.length(), 9);
        assert_eq!(Permutation::from_word(5, &word("s1 s2 s1 s3 s2 s4 s3 s2 s1")).unwrap(), v);
        assert_eq!(Permutation::from_word(5, &v.reduced_word()).unwrap(), v);
        for w in Permutation::all(4) {
            let rw = w.reduced_word();
            assert!(rw.is_reduced(4).unwrap());
            assert_eq!(Permutation::from_word(4, &rw).unwrap(), w);
        }
    }

    #[test]
    fn inverses() {
        let v = perm("43521");
        assert_eq!(v.inverse(), Permutation::from_word(5, &word("s3 s4 s1 s2 s3 s1 s2 s1")).unwrap());
        assert_eq!(v, Permutation::from_word(5, &word("s1 s2 s1 s3 s2 s1 s4 s3")).unwrap());
        assert!(v.compose(&v.inverse()).is_identity());
        assert_eq!(v.inverse().length(), v.length());
        assert_eq!(Permutation::identity(3).inverse(), Permutation::identity(3));
        for w in Permutation::all(4) {
            assert_eq!(w.inverse().inverse(), w);
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!(perm("43521").to_string(), "43521");
        assert_eq!(word("s3 s4 s1").to_string(), "s3 s4 s1");
        assert_eq!(ReducedWord::default().to_string(), "id");
        assert!("4351".parse::<Permutation>().is_err());
        assert!("x1".parse::<ReducedWord>().is_err());
        assert!(Permutation::from_word(3, &word("s3")).is_err());
        let big: Permutation = "1,2,3,4,5,6,7,8,10,9".parse().unwrap();
        assert_eq!(big.to_string(), "1,2,3,4,5,6,7,8,10,9");
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn determinant_polynomial() {
        let d2 = det_poly(2).unwrap();
        assert_eq!(d2.to_string(), "x1 - u2");
        assert_eq!(det_poly(4).unwrap().degree(), Some(6));
        assert!(det_poly(4).unwrap().is_homogeneous());
        assert_eq!(det_poly(5).unwrap().degree(), Some(10));
        assert!(det_poly(1).is_err());
    }

    #[test]
    fn simple_divided_differences() {
        let t = xu_table(3);
        let p = |s: &str| Polynomial::parse(&t, s).unwrap();
        assert_eq!(divided_difference(1, &p("x1")).unwrap(), p("1"));
        assert!(divided_difference(1, &p("x1*x2 + u3")).unwrap().is_zero());
        assert_eq!(divided_difference(2, &p("x2^3*u1")).unwrap(), p("x2^2*u1 + x2*x3*u1 + x3^2*u1"));
        assert!(divided_difference(3, &p("x1")).is_err());
        let f = p("x1^3*x2 - 2*x2^2*x3*u1 + x3");
        for i in 1..3 {
            let d = divided_difference(i, &f).unwrap();
            let lhs = &f - &swap_x(i, &f).unwrap();
            let xi = &p(&format!("x{i}")) - &p(&format!("x{}", i + 1));
            assert_eq!(&xi * &d, lhs);
            assert_eq!(lhs.exact_divide(&xi).unwrap(), d);
        }
    }

    #[test]
    fn det_poly_worked_examples() {
        // ∂_{s3 s2 s1} on det_poly(4)
        let d4 = det_poly(4).unwrap();
        let t4 = d4.table().clone();
        let p4 = |s: &str| Polynomial::parse(&t4, s).unwrap();
        let w = divided_difference_word(&word("s3 s2 s1"), &d4).unwrap();
        assert_eq!(w, p4("(x1 - u3)*(x1 - u4)*(x2 - u4)"));
        // ∂_2 P = (x1 - u3)(x1 - u4)
        assert_eq!(divided_difference(2, &w).unwrap(), p4("(x1 - u3)*(x1 - u4)"));

        let d5 = det_poly(5).unwrap();
        let t5 = d5.table().clone();
        let p5 = |s: &str| Polynomial::parse(&t5, s).unwrap();
        let g = divided_difference_w(&perm("43521").inverse(), &d5).unwrap();
        assert_eq!(g, p5("(x1 - u5)*(x2 - u5)"));
        let g = divided_difference_w(&perm("52431").inverse(), &d5).unwrap();
        assert_eq!(
            g,
            p5("x1^2 + x1*x2 + x2^2 - (x1 + x2)*(u3 + u4 + u5) + u3*u4 + u3*u5 + u4*u5")
        );
        assert_eq!(divided_difference_w(&Permutation::identity(5), &d5).unwrap(), d5);
    }

    #[test]
    fn all_divided_differences_match_words() {
        let d4 = det_poly(4).unwrap();
        let all = divided_differences_all(4, &d4).unwrap();
        assert_eq!(all.len(), 24);
        for (w, g) in &all {
            assert_eq!(*g, divided_difference_w(w, &d4).unwrap(), "w = {w}");
            if !g.is_zero() {
                assert!(g.is_homogeneous());
                assert_eq!(g.degree(), Some(6 - w.length() as u32));
            }
        }
    }
}

//! Polynomial ring over the rationals: variables, monomials, term orders and
//! sparse polynomials.
//!
//! Variables are indexed from 0 in the API; variable 0 is the largest in
//! every term order (X_1 > X_2 > ... > X_n).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DEFAULT_NAMES: [&str; 4] = ["x", "y", "z", "w"];

/// The ring `K[X_1..X_n]` with `K = Q`, identified by its variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct RingSpec {
    names: Vec<String>,
}

impl RingSpec {
    /// Ring with `n` variables named `x, y, z, w` (n <= 4) or `X1..Xn`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let names = if n <= DEFAULT_NAMES.len() {
            DEFAULT_NAMES[..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("X{i}")).collect()
        };
        Ok(RingSpec { names })
    }

    pub fn with_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        for (k, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let valid = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidRing(format!("`{name}` is not a valid variable name")));
            }
            if names[..k].contains(name) {
                return Err(Error::InvalidRing(format!("variable `{name}` appears twice")));
            }
        }
        Ok(RingSpec { names })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|v| v == name)
    }

    /// `R[t]`: one more variable, appended last (smallest in every order).
    pub fn extend(&self) -> RingSpec {
        let mut names = self.names.clone();
        let n = names.len() + 1;
        let mut candidate = if n <= DEFAULT_NAMES.len() && !names.iter().any(|v| v == DEFAULT_NAMES[n - 1]) {
            DEFAULT_NAMES[n - 1].to_string()
        } else {
            format!("X{n}")
        };
        let mut k = n;
        while names.contains(&candidate) {
            k += 1;
            candidate = format!("X{k}");
        }
        names.push(candidate);
        RingSpec { names }
    }

    /// The ring without its last variable. Fails for a one-variable ring.
    pub fn drop_last(&self) -> Result<RingSpec> {
        if self.n() == 1 {
            return Err(Error::InvalidRing("cannot drop the only variable".into()));
        }
        Ok(RingSpec { names: self.names[..self.n() - 1].to_vec() })
    }

    pub fn check(&self, m: &Monomial) -> Result<()> {
        if m.n() != self.n() {
            return Err(Error::RingMismatch { expected: self.n(), found: m.n() });
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, m: &'a Monomial) -> MonomialDisplay<'a> {
        MonomialDisplay { ring: self, mono: m }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        self.display(m).to_string()
    }

    pub fn format_polynomial(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in f.sorted_terms(TermOrder::DegRevLex).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_one = m.degree() == 0;
            if !abs.is_one() || is_one {
                out.push_str(&abs.to_string());
                if !is_one {
                    out.push('*');
                }
            }
            if !is_one {
                out.push_str(&self.format_monomial(&m));
            }
        }
        out
    }
}

impl TryFrom<Vec<String>> for RingSpec {
    type Error = Error;
    fn try_from(names: Vec<String>) -> Result<Self> {
        RingSpec::with_names(&names)
    }
}

impl From<RingSpec> for Vec<String> {
    fn from(r: RingSpec) -> Self {
        r.names
    }
}

pub struct MonomialDisplay<'a> {
    ring: &'a RingSpec,
    mono: &'a Monomial,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.degree() == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for (name, &e) in self.ring.names.iter().zip(self.mono.exponents()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exponent vector of a monomial. The derived `Ord` is lex with X_1 largest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(Monomial { exps })
    }

    /// Panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("exponent overflow")
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() })
    }

    /// `self / gcd(self, other)`: exponentwise truncated subtraction.
    pub fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a.saturating_sub(*b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect() }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the last variable with a nonzero exponent.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// `X_i * u / X_j` for `i < j` (0-based), the elementary move that
    /// defines strong stability.
    pub fn borel_move(&self, i: usize, j: usize) -> Result<Monomial> {
        if i >= j {
            return Err(Error::InvalidBorelMove { i, j, reason: "requires i < j" });
        }
        if j >= self.n() {
            return Err(Error::InvalidBorelMove { i, j, reason: "index out of range" });
        }
        if self.exps[j] == 0 {
            return Err(Error::InvalidBorelMove { i, j, reason: "X_j does not divide u" });
        }
        let mut exps = self.exps.clone();
        exps[j] -= 1;
        exps[i] = exps[i].checked_add(1).ok_or(Error::ExponentOverflow)?;
        Ok(Monomial { exps })
    }

    /// Same monomial with variable `k` set to 1 (exponent cleared).
    pub fn dehomogenize(&self, k: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[k] = 0;
        Monomial { exps }
    }

    /// Embeds into a ring with `extra` more variables appended.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(self.n() + extra, 0);
        Monomial { exps }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    Lex,
    DegRevLex,
}

impl TermOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.n(), b.n());
        match self {
            TermOrder::Lex => a.exps.cmp(&b.exps),
            TermOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                // smaller exponent in the last differing variable wins
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

pub fn compare(a: &Monomial, b: &Monomial, order: TermOrder) -> Result<Ordering> {
    if a.n() != b.n() {
        return Err(Error::RingMismatch { expected: a.n(), found: b.n() });
    }
    Ok(order.cmp(a, b))
}

/// All monomials of degree `d` in `n` variables, strictly decreasing in `order`.
pub fn enumerate_monomials(n: usize, d: u32, order: TermOrder) -> Vec<Monomial> {
    fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, k: usize, left: u32) {
        let n = cur.len();
        if k == n - 1 {
            cur[k] = left;
            out.push(Monomial { exps: cur.clone() });
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e;
            rec(out, cur, k + 1, left - e);
        }
        cur[k] = 0;
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(&mut out, &mut vec![0; n], 0, d);
    // the recursion already yields lex-decreasing order
    if order != TermOrder::Lex {
        out.sort_by(|a, b| order.cmp(b, a));
    }
    out
}

/// `C(n, k)` in u128; panics on overflow, which desk-scale inputs never reach.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of monomials of degree `d` in `n` variables (0 for negative `d`).
pub fn monomial_count(n: usize, d: i64) -> u128 {
    if d < 0 || n == 0 {
        return 0;
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
}

/// Sparse polynomial with exact rational coefficients; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial::from_terms([(m, BigRational::one())])
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Polynomial::from_terms([(Monomial::one(n), c)])
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The single monomial of a one-term polynomial.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    pub fn leading_term(&self, order: TermOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn sorted_terms(&self, order: TermOrder) -> Vec<(Monomial, BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, a) in &self.terms {
            for (k, b) in &other.terms {
                out.add_term(m.mul(k), a * b);
            }
        }
        out
    }

    /// Linear change of coordinates `X_i -> sum_j matrix[i][j] X_j`.
    pub fn substitute_linear(&self, matrix: &[Vec<BigInt>]) -> Polynomial {
        let n = matrix.len();
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                Polynomial::from_terms(
                    (0..n).map(|j| (Monomial::var(n, j), BigRational::from_integer(matrix[i][j].clone()))),
                )
            })
            .collect();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(n, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&images[i]);
                }
            }
            out = out.add(&acc);
        }
        out
    }
}

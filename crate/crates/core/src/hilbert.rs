//! Hilbert functions, series and polynomials of monomial quotients `R/I`,
//! plus Macaulay's binomial calculus.
//!
//! The Hilbert series is kept as the numerator `N(t)` of
//! `HS(R/I, t) = N(t) / (1 - t)^n`. Two independent routes produce it: the
//! pivot recursion `N(I) = N(I + (p)) + t^deg(p) N(I : p)` and
//! inclusion-exclusion over lcms of generator subsets.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::{binomial, monomial_count};

/// Largest generator count accepted by the inclusion-exclusion route.
pub const INCLUSION_EXCLUSION_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbertStrategy {
    PivotRecursion,
    InclusionExclusion,
}

/// Univariate polynomial in `X` with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: i64) -> BigRational {
        let x = BigRational::from_integer(x.into());
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        QPoly::from_coeffs(
            (0..len).map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)).collect(),
        )
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn mul_linear(&self, shift: &BigRational) -> QPoly {
        // (X + shift) * self
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] += c * shift;
        }
        QPoly::from_coeffs(out)
    }

    /// `C(X + shift, k) = (X + shift)(X + shift - 1)...(X + shift - k + 1) / k!`.
    pub fn binomial(shift: i64, k: usize) -> QPoly {
        let mut p = QPoly::from_ints(&[1]);
        let mut fact = BigInt::one();
        for i in 0..k {
            p = p.mul_linear(&BigRational::from_integer((shift - i as i64).into()));
            fact *= BigInt::from(i + 1);
        }
        p.scale(&BigRational::new(BigInt::one(), fact))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if abs.is_one() && i > 0 { String::new() } else { abs.to_string() };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}X")?,
                _ => write!(f, "{coeff}X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(QPoly::from_coeffs(coeffs))
    }
}

/// Exact Hilbert data of `R/I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// `dim_K (R/I)_d` for `d = 0..=D`.
    pub values: Vec<u64>,
    /// Coefficients of `N(t)`, lowest degree first.
    pub numerator: Vec<i64>,
    #[serde(rename = "polynomial")]
    pub hilbert_polynomial: QPoly,
    /// Least degree from which the Hilbert function is polynomial.
    pub d0: usize,
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += c;
    }
}

type RawGens = Vec<Vec<u32>>;

fn minimal_raw(mut gens: RawGens) -> RawGens {
    gens.sort_by_key(|g| g.iter().sum::<u32>());
    gens.dedup();
    let mut kept: RawGens = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.iter().zip(&g).all(|(a, b)| a <= b)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

struct PivotRecursion {
    memo: HashMap<RawGens, Vec<i64>>,
}

impl PivotRecursion {
    fn numerator(&mut self, gens: RawGens) -> Vec<i64> {
        let gens = minimal_raw(gens);
        if gens.is_empty() {
            return vec![1];
        }
        if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return Vec::new();
        }
        if let Some(hit) = self.memo.get(&gens) {
            return hit.clone();
        }
        let n = gens[0].len();
        let mut freq = vec![0usize; n];
        for g in &gens {
            for (v, &e) in g.iter().enumerate() {
                if e > 0 {
                    freq[v] += 1;
                }
            }
        }
        let result = if freq.iter().all(|&f| f <= 1) {
            // pairwise coprime: the series factors
            gens.iter().fold(vec![1i64], |acc, g| {
                let d = g.iter().sum::<u32>() as usize;
                let mut out = acc.clone();
                add_shifted(&mut out, &acc.iter().map(|c| -c).collect::<Vec<_>>(), d);
                trim(out)
            })
        } else {
            let pivot_var = (0..n).max_by_key(|&v| (freq[v], std::cmp::Reverse(v))).expect("n > 0");
            let e = gens.iter().map(|g| g[pivot_var]).filter(|&e| e > 0).min().expect("frequent variable");
            let mut pivot = vec![0u32; n];
            pivot[pivot_var] = e;
            let mut sum = gens.clone();
            sum.push(pivot.clone());
            let colon: RawGens = gens
                .iter()
                .map(|g| {
                    let mut q = g.clone();
                    q[pivot_var] = q[pivot_var].saturating_sub(e);
                    q
                })
                .collect();
            let mut out = self.numerator(sum);
            let c = self.numerator(colon);
            add_shifted(&mut out, &c, e as usize);
            trim(out)
        };
        self.memo.insert(gens, result.clone());
        result
    }
}

fn inclusion_exclusion(gens: &[Vec<u32>]) -> Result<Vec<i64>> {
    if gens.len() > INCLUSION_EXCLUSION_CAP {
        return Err(Error::GeneratorCap { count: gens.len(), cap: INCLUSION_EXCLUSION_CAP });
    }
    let n = gens.first().map_or(0, Vec::len);
    let mut out = vec![0i64];
    // lcm of each subset, built from the subset without its top bit
    let mut lcms: Vec<Vec<u32>> = Vec::with_capacity(1 << gens.len());
    lcms.push(vec![0; n]);
    for mask in 1usize..(1 << gens.len()) {
        let top = usize::BITS - 1 - mask.leading_zeros();
        let rest = mask & !(1 << top);
        let l: Vec<u32> = lcms[rest].iter().zip(&gens[top as usize]).map(|(a, b)| *a.max(b)).collect();
        lcms.push(l);
    }
    for (mask, l) in lcms.iter().enumerate() {
        let d = l.iter().sum::<u32>() as usize;
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        add_shifted(&mut out, &[sign], d);
    }
    Ok(trim(out))
}

fn raw_gens(ideal: &MonomialIdeal) -> RawGens {
    ideal.gens().iter().map(|g| g.exponents().to_vec()).collect()
}

/// Numerator `N(t)` of the Hilbert series of `R/I`.
pub fn hilbert_numerator(ideal: &MonomialIdeal, strategy: HilbertStrategy) -> Result<Vec<i64>> {
    match strategy {
        HilbertStrategy::PivotRecursion => Ok(PivotRecursion { memo: HashMap::new() }.numerator(raw_gens(ideal))),
        HilbertStrategy::InclusionExclusion => inclusion_exclusion(&raw_gens(ideal)),
    }
}

/// `dim_K (R/I)_d` from the numerator `N(t)`.
pub fn value_from_numerator(numerator: &[i64], n: usize, d: u64) -> u64 {
    let total: i128 = numerator
        .iter()
        .enumerate()
        .filter(|(k, _)| (*k as u64) <= d)
        .map(|(k, &c)| c as i128 * monomial_count(n, (d - k as u64) as i64) as i128)
        .sum();
    u64::try_from(total).expect("Hilbert function values are non-negative and fit in u64")
}

pub fn hilbert_function(ideal: &MonomialIdeal, d: u64) -> u64 {
    let num = hilbert_numerator(ideal, HilbertStrategy::PivotRecursion).expect("pivot recursion is infallible");
    value_from_numerator(&num, ideal.n(), d)
}

pub fn hilbert_function_with(ideal: &MonomialIdeal, d: u64, strategy: HilbertStrategy) -> Result<u64> {
    Ok(value_from_numerator(&hilbert_numerator(ideal, strategy)?, ideal.n(), d))
}

/// Hilbert polynomial by Newton forward differences of the exact values
/// starting at `deg N(t)`, where the Hilbert function is already polynomial.
pub fn hilbert_polynomial_from_numerator(numerator: &[i64], n: usize) -> QPoly {
    let start = numerator.len().saturating_sub(1) as u64;
    let mut diffs: Vec<BigRational> = (0..n as u64)
        .map(|k| BigRational::from_integer(value_from_numerator(numerator, n, start + k).into()))
        .collect();
    let mut poly = QPoly::zero();
    for k in 0..n {
        // diffs[0] is now the k-th forward difference at `start`
        poly = poly.add(&QPoly::binomial(-(start as i64), k).scale(&diffs[0]));
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    poly
}

pub fn hilbert_series(ideal: &MonomialIdeal, window: usize) -> HilbertData {
    let numerator = hilbert_numerator(ideal, HilbertStrategy::PivotRecursion).expect("pivot recursion is infallible");
    hilbert_data_from_numerator(numerator, ideal.n(), window)
}

pub fn hilbert_data_from_numerator(numerator: Vec<i64>, n: usize, window: usize) -> HilbertData {
    let poly = hilbert_polynomial_from_numerator(&numerator, n);
    let values: Vec<u64> = (0..=window as u64).map(|d| value_from_numerator(&numerator, n, d)).collect();
    // agreement is guaranteed from deg N - n + 1 on
    let safe = numerator.len().saturating_sub(n);
    let d0 = (0..safe)
        .rev()
        .find(|&d| {
            poly.eval(d as i64) != BigRational::from_integer(value_from_numerator(&numerator, n, d as u64).into())
        })
        .map_or(0, |d| d + 1);
    HilbertData { values, numerator, hilbert_polynomial: poly, d0 }
}

/// Divides out `(1 - t)` as often as possible; returns the quotient and the count.
fn strip_one_minus_t(numerator: &[i64]) -> (Vec<i64>, usize) {
    let mut cur = numerator.to_vec();
    let mut k = 0;
    while !cur.is_empty() && cur.iter().sum::<i64>() == 0 {
        let mut q = Vec::with_capacity(cur.len());
        let mut acc = 0i64;
        for &c in &cur[..cur.len() - 1] {
            acc += c;
            q.push(acc);
        }
        cur = trim(q);
        k += 1;
    }
    (cur, k)
}

/// Krull dimension of `R/I`.
pub fn dimension(ideal: &MonomialIdeal) -> Result<usize> {
    let num = hilbert_numerator(ideal, HilbertStrategy::PivotRecursion)?;
    dimension_from_numerator(&num, ideal.n())
}

pub fn dimension_from_numerator(numerator: &[i64], n: usize) -> Result<usize> {
    if numerator.iter().all(|&c| c == 0) {
        return Err(Error::UnitIdeal);
    }
    let (_, k) = strip_one_minus_t(numerator);
    Ok(n - k)
}

/// Multiplicity (degree) of `R/I`.
pub fn multiplicity(ideal: &MonomialIdeal) -> Result<u64> {
    let num = hilbert_numerator(ideal, HilbertStrategy::PivotRecursion)?;
    if num.iter().all(|&c| c == 0) {
        return Err(Error::UnitIdeal);
    }
    let (reduced, _) = strip_one_minus_t(&num);
    let e: i64 = reduced.iter().sum();
    u64::try_from(e).map_err(|_| Error::Internal(format!("non-positive multiplicity {e}")))
}

/// `a = C(k_d, d) + C(k_{d-1}, d-1) + ... + C(k_s, s)` with
/// `k_d > k_{d-1} > ... > k_s >= s >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacaulayRep {
    pub degree: usize,
    /// `(k_i, i)` pairs from `i = degree` downwards.
    pub terms: Vec<(u64, usize)>,
}

impl MacaulayRep {
    pub fn value(&self) -> u128 {
        self.terms.iter().map(|&(k, i)| binomial(k, i as u64)).sum()
    }
}

pub fn macaulay_rep(a: u128, d: usize) -> MacaulayRep {
    assert!(d >= 1, "Macaulay representation needs degree >= 1");
    let mut rest = a;
    let mut terms = Vec::new();
    for i in (1..=d).rev() {
        if rest == 0 {
            break;
        }
        let mut k = i as u64;
        while binomial(k + 1, i as u64) <= rest {
            k += 1;
        }
        rest -= binomial(k, i as u64);
        terms.push((k, i));
    }
    debug_assert_eq!(rest, 0);
    MacaulayRep { degree: d, terms }
}

/// Macaulay's bound `a^<d>` on the Hilbert function in degree `d + 1`.
pub fn macaulay_growth(a: u128, d: usize) -> u128 {
    macaulay_rep(a, d).terms.iter().map(|&(k, i)| binomial(k + 1, i as u64 + 1)).sum()
}

/// Checks `H(d+1) <= H(d)^<d>` for all consecutive values with `d >= 1`, and
/// `H(1) <= n`, `H(0) <= 1`.
pub fn check_macaulay(values: &[u64], n: usize) -> Result<()> {
    if values.first().is_some_and(|&h| h > 1) {
        return Err(Error::NotMacaulayAdmissible { degree: 0 });
    }
    for d in 0..values.len().saturating_sub(1) {
        let bound = if d == 0 { values[0] as u128 * n as u128 } else { macaulay_growth(values[d] as u128, d) };
        if values[d + 1] as u128 > bound {
            return Err(Error::NotMacaulayAdmissible { degree: d });
        }
    }
    Ok(())
}

/// `N(1)` of a numerator; convenient for callers checking positivity.
pub fn numerator_at_one(numerator: &[i64]) -> i64 {
    numerator.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::ideal;

    const EXAMPLE: &str = "x^2, x*y, y^2, x*z^2, y*z^2";
    const EXAMPLE_LEX: &str = "x^2, x*y, x*z, y^3, y^2*z, y*z^2";

    #[test]
    fn example_hilbert_function() {
        for text in [EXAMPLE, EXAMPLE_LEX] {
            let i = ideal("x,y,z", text);
            let values: Vec<u64> = (0..=5).map(|d| hilbert_function(&i, d)).collect();
            assert_eq!(values, vec![1, 3, 3, 1, 1, 1]);
        }
        assert_eq!(hilbert_function(&ideal("x,y,z", ""), 4), 15);
    }

    #[test]
    fn example_numerator() {
        let i = ideal("x,y,z", EXAMPLE);
        for s in [HilbertStrategy::PivotRecursion, HilbertStrategy::InclusionExclusion] {
            assert_eq!(hilbert_numerator(&i, s).unwrap(), vec![1, 0, -3, 0, 4, -2]);
        }
        assert_eq!(hilbert_numerator(&ideal("x,y", "x"), HilbertStrategy::PivotRecursion).unwrap(), vec![1, -1]);
        let data = hilbert_series(&i, 8);
        assert_eq!(data.hilbert_polynomial, QPoly::from_ints(&[1]));
        assert_eq!(data.d0, 3);
    }

    #[test]
    fn two_planes_polynomial() {
        let i = ideal("x,y,z,w", "x*z, x*w, y*z, y*w");
        let data = hilbert_series(&i, 10);
        assert_eq!(data.hilbert_polynomial, QPoly::from_ints(&[2, 2]));
        for d in 1..=10 {
            assert_eq!(data.hilbert_polynomial.eval(d as i64), BigRational::from_integer(data.values[d].into()));
        }
        assert_eq!(data.d0, 1);
        assert_eq!(data.hilbert_polynomial.to_string(), "2X + 2");
    }

    #[test]
    fn dimension_and_multiplicity() {
        let i = ideal("x,y,z", EXAMPLE);
        assert_eq!((dimension(&i).unwrap(), multiplicity(&i).unwrap()), (1, 1));
        let p = ideal("x,y", "x^5");
        assert_eq!((dimension(&p).unwrap(), multiplicity(&p).unwrap()), (1, 5));
        let planes = ideal("x,y,z,w", "x*z, x*w, y*z, y*w");
        assert_eq!((dimension(&planes).unwrap(), multiplicity(&planes).unwrap()), (2, 2));
        assert_eq!(dimension(&ideal("x,y", "1")), Err(Error::UnitIdeal));
        let m2 = ideal("x,y", "x^2, x*y, y^2");
        assert_eq!((dimension(&m2).unwrap(), multiplicity(&m2).unwrap()), (0, 3));
    }

    /// Every way to write `a` as a sum of `C(k_i, i)` with strictly
    /// decreasing `k_i >= i`, starting from degree `d`.
    fn all_decompositions(a: u128, d: usize) -> Vec<Vec<(u64, usize)>> {
        fn rec(a: u128, i: usize, kmax: u64, cur: &mut Vec<(u64, usize)>, out: &mut Vec<Vec<(u64, usize)>>) {
            if a == 0 {
                out.push(cur.clone());
                return;
            }
            if i == 0 {
                return;
            }
            for k in (i as u64)..=kmax {
                let b = binomial(k, i as u64);
                if b > a {
                    break;
                }
                cur.push((k, i));
                rec(a - b, i - 1, k.saturating_sub(1), cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(a, d, 64, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn macaulay_examples_match_exhaustive_search() {
        for (a, d, growth) in [(3u128, 2usize, 4u128), (5, 2, 7), (0, 3, 0)] {
            let rep = macaulay_rep(a, d);
            let all = all_decompositions(a, d);
            assert_eq!(all, vec![rep.terms.clone()], "unique decomposition for ({a}, {d})");
            assert_eq!(macaulay_growth(a, d), growth);
        }
        assert_eq!(macaulay_rep(3, 2).terms, vec![(3, 2)]);
        assert_eq!(macaulay_rep(5, 2).terms, vec![(3, 2), (2, 1)]);
    }

    #[test]
    fn macaulay_rep_is_unique_and_exact() {
        for d in 1..=4 {
            for a in 1..=60u128 {
                let rep = macaulay_rep(a, d);
                assert_eq!(rep.value(), a);
                assert!(rep.terms.windows(2).all(|w| w[0].0 > w[1].0));
                assert_eq!(all_decompositions(a, d), vec![rep.terms]);
            }
        }
    }

    #[test]
    fn principal_numerator_is_one_minus_power() {
        for text in ["x^3", "x*y^2*z", "z^5", "y"] {
            let i = ideal("x,y,z", text);
            let deg = i.max_degree() as usize;
            let mut expected = vec![0i64; deg + 1];
            expected[0] = 1;
            expected[deg] = -1;
            assert_eq!(hilbert_numerator(&i, HilbertStrategy::PivotRecursion).unwrap(), expected);
        }
    }

    #[test]
    fn macaulay_check_rejects_bad_growth() {
        assert!(check_macaulay(&[1, 3, 3, 1, 1], 3).is_ok());
        assert_eq!(check_macaulay(&[1, 2, 4], 2), Err(Error::NotMacaulayAdmissible { degree: 1 }));
        assert_eq!(check_macaulay(&[1, 4], 3), Err(Error::NotMacaulayAdmissible { degree: 0 }));
    }

    #[test]
    fn binomial_polynomial() {
        // C(X + 1, 2) = (X^2 + X) / 2
        let p = QPoly::binomial(1, 2);
        assert_eq!(p.eval(3), BigRational::from_integer(6.into()));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(QPoly::binomial(-4, 0), QPoly::from_ints(&[1]));
    }
}

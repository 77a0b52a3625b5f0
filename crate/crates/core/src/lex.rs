//! Lex-segment ideals, the Gotzmann test, Gotzmann representations of
//! Hilbert polynomials and the explicit generators of saturated lex ideals.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{hilbert_series, HilbertData, QPoly};
use crate::ideal::MonomialIdeal;
use crate::ring::{enumerate_monomials, monomial_count, Monomial, RingSpec, TermOrder};

/// Upper bound on the length of a Gotzmann representation we are willing to build.
pub const GOTZMANN_LENGTH_CAP: usize = 100_000;

/// Lex-segment generators of degrees `0..values.len()` for the Hilbert
/// function `values` of `R/L`. Fails when consecutive segments are not
/// nested, i.e. when Macaulay's bound is violated.
fn lex_generators(n: usize, values: &[u64]) -> Result<Vec<Vec<Monomial>>> {
    let mut per_degree = Vec::with_capacity(values.len());
    let mut prev: Option<Vec<Monomial>> = None;
    for (d, &h) in values.iter().enumerate() {
        let total = monomial_count(n, d as i64);
        if h as u128 > total {
            return Err(Error::NotMacaulayAdmissible { degree: d.saturating_sub(1) });
        }
        let size = (total - h as u128) as usize;
        let segment: Vec<Monomial> = enumerate_monomials(n, d as u32, TermOrder::Lex).into_iter().take(size).collect();
        let mut gens = Vec::new();
        match &prev {
            Some(p) if !p.is_empty() => {
                let smallest_prev = p.last().expect("nonempty");
                // m * L_{d-1} must sit inside L_d; its lex-least element is last * X_n
                let needed = smallest_prev.mul(&Monomial::var(n, n - 1));
                if segment.last().is_none_or(|s| TermOrder::Lex.cmp(&needed, s).is_lt()) {
                    return Err(Error::NotMacaulayAdmissible { degree: d - 1 });
                }
                for u in &segment {
                    let v = u.max_var().expect("degree >= 1");
                    let q = u.div(&Monomial::var(n, v)).expect("divides");
                    if TermOrder::Lex.cmp(&q, smallest_prev).is_lt() {
                        gens.push(u.clone());
                    }
                }
            }
            _ => gens = segment.clone(),
        }
        per_degree.push(gens);
        prev = Some(segment);
    }
    Ok(per_degree)
}

/// The lex ideal generated in degrees `< values.len()` whose quotient has
/// Hilbert function `values` there.
pub fn lex_ideal_from_values(ring: &RingSpec, values: &[u64]) -> Result<MonomialIdeal> {
    let gens = lex_generators(ring.n(), values)?;
    Ok(MonomialIdeal::from_gens(ring.clone(), gens.into_iter().flatten().collect()))
}

/// Degree past which no lex generator can appear, from the Gotzmann number,
/// the last non-polynomial degree and the generator degrees of `I`.
fn lex_stopping_degree(ideal: &MonomialIdeal, data: &HilbertData) -> Result<usize> {
    let l = match data.hilbert_polynomial.degree() {
        None => 0,
        Some(_) => gotzmann_representation(&data.hilbert_polynomial, ideal.n())?.l,
    };
    let last_irregular = data.d0.saturating_sub(1);
    Ok(l.max(last_irregular).max(ideal.max_degree() as usize) + 1)
}

/// `I^lex`: the lex-segment ideal with the same Hilbert function as `I`.
pub fn lex_ideal(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_unit() || ideal.is_zero() {
        return Ok(ideal.clone());
    }
    let probe = hilbert_series(ideal, 0);
    let stop = lex_stopping_degree(ideal, &probe)?;
    let data = hilbert_series(ideal, stop + 2);
    let per_degree = lex_generators(ideal.n(), &data.values)?;
    if per_degree[stop + 1..].iter().any(|g| !g.is_empty()) {
        return Err(Error::Internal(format!("lex ideal grew new generators beyond the stopping degree {stop}")));
    }
    Ok(MonomialIdeal::from_gens(ideal.ring().clone(), per_degree.into_iter().flatten().collect()))
}

/// Same minimal generator counts in every degree as the lex ideal.
pub fn is_gotzmann(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(ideal.graded_generator_counts() == lex_ideal(ideal)?.graded_generator_counts())
}

/// `P(X) = sum_i C(X + a_i - (i - 1), a_i)` with `a_1 >= ... >= a_l >= 0`,
/// and the derived vector `v_i = #{j : n - a_j - 1 = i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GotzmannData {
    pub n: usize,
    pub a: Vec<usize>,
    /// `(v_1, ..., v_h)`; empty when `P = 0`.
    pub v: Vec<usize>,
    pub h: usize,
    pub l: usize,
}

impl GotzmannData {
    /// Builds the data for a given v-vector, recovering `a` from it.
    pub fn from_v(n: usize, v: &[usize]) -> Result<GotzmannData> {
        if v.len() > n.saturating_sub(1) {
            return Err(Error::InvalidArgument(format!("v has {} entries, at most {} allowed", v.len(), n - 1)));
        }
        if v.last() == Some(&0) {
            return Err(Error::InvalidArgument("the last entry of v must be positive".into()));
        }
        // n - a - 1 = i  <=>  a = n - 1 - i; larger a first
        let a: Vec<usize> = v.iter().enumerate().flat_map(|(k, &c)| std::iter::repeat_n(n - 2 - k, c)).collect();
        Ok(GotzmannData { n, l: a.len(), h: v.len(), v: v.to_vec(), a })
    }

    /// `sum_i C(X + a_i - (i - 1), a_i)`.
    pub fn polynomial(&self) -> QPoly {
        self.a.iter().enumerate().fold(QPoly::zero(), |acc, (i, &a)| acc.add(&QPoly::binomial(a as i64 - i as i64, a)))
    }
}

pub fn gotzmann_representation(poly: &QPoly, n: usize) -> Result<GotzmannData> {
    if let Some(deg) = poly.degree() {
        if deg + 2 > n {
            return Err(Error::DegenerateHilbertPolynomial { degree: deg, n });
        }
    }
    let mut rest = poly.clone();
    let mut a = Vec::new();
    while let Some(deg) = rest.degree() {
        let mut fact = BigInt::one();
        for k in 2..=deg {
            fact *= BigInt::from(k);
        }
        let scaled = rest.leading_coefficient() * BigRational::from_integer(fact);
        if !scaled.is_integer() || !scaled.is_positive() {
            return Err(Error::NotGotzmannRepresentable(format!(
                "after {} terms the remainder {rest} has leading coefficient {} (times {deg}!) that is not a positive integer",
                a.len(),
                scaled
            )));
        }
        if a.len() >= GOTZMANN_LENGTH_CAP {
            return Err(Error::NotGotzmannRepresentable(format!("representation longer than {GOTZMANN_LENGTH_CAP}")));
        }
        rest = rest.sub(&QPoly::binomial(deg as i64 - a.len() as i64, deg));
        a.push(deg);
    }
    let mut v = vec![0usize; n.saturating_sub(1)];
    for &aj in &a {
        v[n - aj - 2] += 1;
    }
    while v.last() == Some(&0) {
        v.pop();
    }
    Ok(GotzmannData { n, l: a.len(), h: v.len(), v, a })
}

/// The saturated lex ideal with Hilbert polynomial given by `g`:
/// `X_1^{v_1+1}, X_1^{v_1} X_2^{v_2+1}, ..., X_1^{v_1}...X_{h-1}^{v_{h-1}} X_h^{v_h}`.
pub fn saturated_lex_ideal(g: &GotzmannData, ring: &RingSpec) -> Result<MonomialIdeal> {
    if ring.n() != g.n {
        return Err(Error::RingMismatch { expected: g.n, found: ring.n() });
    }
    let n = g.n;
    if g.h == 0 {
        return Ok(MonomialIdeal::unit(ring.clone()));
    }
    let mut gens = Vec::with_capacity(g.h);
    let mut prefix = vec![0u32; n];
    for (i, &vi) in g.v.iter().enumerate() {
        let mut e = prefix.clone();
        e[i] = if i + 1 == g.h { vi as u32 } else { vi as u32 + 1 };
        gens.push(Monomial::from_exponents(e));
        prefix[i] = vi as u32;
    }
    Ok(MonomialIdeal::from_gens(ring.clone(), gens))
}

/// Cohomological indices `i in 0..=n` with `H^i_m(R/L) = 0` for the
/// saturated lex ideal `L` of `g`: `i` vanishes iff `v_{n-i}` is zero or
/// missing. `H^0` and `H^n` always vanish.
pub fn predict_lc_vanishing(g: &GotzmannData) -> BTreeSet<usize> {
    let n = g.n;
    (0..=n)
        .filter(|&i| {
            if i == 0 || i == n {
                return true;
            }
            let k = n - i;
            k > g.h || g.v[k - 1] == 0
        })
        .collect()
}

/// Both sides of `(I^sat)^lex = (I^lex)^sat`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeReport {
    pub holds: bool,
    /// `(I^sat)^lex`
    pub left: MonomialIdeal,
    /// `(I^lex)^sat`
    pub right: MonomialIdeal,
}

pub fn exchange_property(ideal: &MonomialIdeal) -> Result<ExchangeReport> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let left = lex_ideal(&ideal.saturate())?;
    let right = lex_ideal(ideal)?.saturate();
    Ok(ExchangeReport { holds: left == right, left, right })
}

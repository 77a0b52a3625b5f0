//! Monomial ideals in canonical form: minimal generators sorted by decreasing
//! lex order, so ideal equality is plain structural equality.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parse;
use crate::ring::{enumerate_monomials, Monomial, RingSpec, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: RingSpec,
    gens: Vec<Monomial>,
}

/// Outcome of a strong-stability test; `witness` is `(u, i, j)` with `u` a
/// minimal generator and `X_i u / X_j` outside the ideal (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityCheck {
    pub witness: Option<(Monomial, usize, usize)>,
}

impl StabilityCheck {
    pub fn is_stable(&self) -> bool {
        self.witness.is_none()
    }
}

/// Removes every monomial divisible by another one and sorts the rest.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    // a divisor never has larger degree, so scanning by degree suffices
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| b.cmp(a));
    kept
}

impl MonomialIdeal {
    pub fn new(ring: RingSpec, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            ring.check(g)?;
        }
        Ok(MonomialIdeal { gens: minimalize(gens), ring })
    }

    /// Trusted constructor for generator sets built inside this crate.
    pub(crate) fn from_gens(ring: RingSpec, gens: Vec<Monomial>) -> Self {
        debug_assert!(gens.iter().all(|g| g.n() == ring.n()));
        MonomialIdeal { gens: minimalize(gens), ring }
    }

    pub fn zero(ring: RingSpec) -> Self {
        MonomialIdeal { ring, gens: Vec::new() }
    }

    pub fn unit(ring: RingSpec) -> Self {
        let one = Monomial::one(ring.n());
        MonomialIdeal { ring, gens: vec![one] }
    }

    /// The homogeneous maximal ideal `(X_1, ..., X_n)`.
    pub fn maximal(ring: RingSpec) -> Self {
        let n = ring.n();
        MonomialIdeal::from_gens(ring, (0..n).map(|i| Monomial::var(n, i)).collect())
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// lcm of all generators (the unit monomial for the zero ideal).
    pub fn lcm_all(&self) -> Monomial {
        self.gens.iter().fold(Monomial::one(self.n()), |acc, g| acc.lcm(g))
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { expected: self.n(), found: other.n() });
        }
        Ok(())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(MonomialIdeal::from_gens(self.ring.clone(), gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.mul(b))).collect();
        Ok(MonomialIdeal::from_gens(self.ring.clone(), gens))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.lcm(b))).collect();
        Ok(MonomialIdeal::from_gens(self.ring.clone(), gens))
    }

    pub fn multiply_monomial(&self, v: &Monomial) -> MonomialIdeal {
        MonomialIdeal::from_gens(self.ring.clone(), self.gens.iter().map(|g| g.mul(v)).collect())
    }

    /// `I : v = (u / gcd(u, v) : u in gens(I))`.
    pub fn colon_monomial(&self, v: &Monomial) -> MonomialIdeal {
        MonomialIdeal::from_gens(self.ring.clone(), self.gens.iter().map(|u| u.quotient_by_gcd(v)).collect())
    }

    /// `I : J`, the intersection of `I : v` over the generators `v` of `J`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let mut parts = other.gens.iter().map(|v| self.colon_monomial(v));
        let first = parts.next().ok_or(Error::ColonByZero)?;
        parts.try_fold(first, |acc, q| acc.intersect(&q))
    }

    /// `I : m^infinity`, using the last-variable shortcut when `I` is
    /// strongly stable.
    pub fn saturate(&self) -> MonomialIdeal {
        if self.is_strongly_stable().is_stable() {
            self.saturate_last_variable()
        } else {
            self.saturate_by_colon().expect("saturation iteration cap")
        }
    }

    /// `I : X_n^infinity`, which equals the saturation for strongly stable ideals.
    pub fn saturate_last_variable(&self) -> MonomialIdeal {
        let last = self.n() - 1;
        MonomialIdeal::from_gens(self.ring.clone(), self.gens.iter().map(|g| g.dehomogenize(last)).collect())
    }

    /// Iterates `I := I : m` until two consecutive iterates agree.
    pub fn saturate_by_colon(&self) -> Result<MonomialIdeal> {
        let m = MonomialIdeal::maximal(self.ring.clone());
        let cap = 10 * self.max_degree() as usize + 10;
        let mut cur = self.clone();
        for _ in 0..cap {
            let next = cur.colon(&m)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::Internal(format!("saturation did not stabilize within {cap} colon steps")))
    }

    pub fn is_saturated(&self) -> bool {
        self.saturate() == *self
    }

    pub fn is_strongly_stable(&self) -> StabilityCheck {
        for u in &self.gens {
            for j in 1..self.n() {
                if u.exponents()[j] == 0 {
                    continue;
                }
                for i in (0..j).rev() {
                    let moved = u.borel_move(i, j).expect("valid move");
                    if !self.contains(&moved) {
                        return StabilityCheck { witness: Some((u.clone(), i, j)) };
                    }
                }
            }
        }
        StabilityCheck { witness: None }
    }

    /// Minimal generator counts per degree.
    pub fn graded_generator_counts(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.gens {
            *counts.entry(g.degree()).or_insert(0) += 1;
        }
        counts
    }

    /// For a strongly stable ideal: `depth R/I > 0` iff no minimal generator
    /// involves the last variable.
    pub fn depth_positive_stable(&self) -> Result<bool> {
        if !self.is_strongly_stable().is_stable() {
            return Err(Error::NotStronglyStable);
        }
        let last = self.n() - 1;
        Ok(self.gens.iter().all(|g| g.exponents()[last] == 0))
    }

    /// Monomials of `I` in degree `d`, in decreasing lex order.
    pub fn degree_component(&self, d: u32) -> Vec<Monomial> {
        enumerate_monomials(self.n(), d, TermOrder::Lex).into_iter().filter(|u| self.contains(u)).collect()
    }

    /// `I S` in `S = R[t]`.
    pub fn extend_ring(&self) -> MonomialIdeal {
        MonomialIdeal { ring: self.ring.extend(), gens: self.gens.iter().map(|g| g.extend(1)).collect() }
    }

    /// Image of `I` in `R/(X_n) = K[X_1..X_{n-1}]`.
    pub fn restrict_last_variable(&self) -> Result<MonomialIdeal> {
        let ring = self.ring.drop_last()?;
        let last = self.n() - 1;
        let gens = self
            .gens
            .iter()
            .filter(|g| g.exponents()[last] == 0)
            .map(|g| Monomial::from_exponents(g.exponents()[..last].to_vec()))
            .collect();
        Ok(MonomialIdeal::from_gens(ring, gens))
    }

    /// Re-expresses the ideal over a ring with the same number of variables.
    pub fn with_ring(&self, ring: RingSpec) -> Result<MonomialIdeal> {
        if ring.n() != self.n() {
            return Err(Error::RingMismatch { expected: ring.n(), found: self.n() });
        }
        Ok(MonomialIdeal { ring, gens: self.gens.clone() })
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("0");
        }
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.ring.display(g))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct IdealRecord {
    ring: RingSpec,
    gens: Vec<String>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealRecord { ring: self.ring.clone(), gens: self.gens.iter().map(|g| self.ring.format_monomial(g)).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = IdealRecord::deserialize(d)?;
        let gens = rec
            .gens
            .iter()
            .map(|g| parse::parse_monomial(g, &rec.ring))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(MonomialIdeal::from_gens(rec.ring, gens))
    }
}

//! Buchberger's algorithm over Q and generic initial ideals.
//!
//! Internally polynomials carry primitive integer coefficients with terms
//! sorted decreasingly in the term order; reduction cross-multiplies instead
//! of dividing and removes the content after every step.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg::{determinant, rank_bigint};
use crate::parse::IdealInput;
use crate::ring::{enumerate_monomials, Monomial, Polynomial, RingSpec, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
struct IntPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    fn from_polynomial(p: &Polynomial, order: TermOrder) -> IntPoly {
        let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<(Monomial, BigInt)> =
            p.terms().map(|(m, c)| (m.clone(), (c * BigRational::from_integer(den.clone())).to_integer())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out = IntPoly { terms };
        out.make_primitive();
        out
    }

    fn to_monic(&self) -> Polynomial {
        let lc = BigRational::from_integer(self.terms[0].1.clone());
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()) / &lc)))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    /// Divides by the content and makes the leading coefficient positive.
    fn make_primitive(&mut self) {
        let Some((_, first)) = self.terms.first() else { return };
        let mut g = first.abs();
        for (_, c) in &self.terms[1..] {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }

    /// `a * self - b * q * g`, all terms kept sorted.
    fn combine(&self, a: &BigInt, b: &BigInt, q: &Monomial, g: &IntPoly, order: TermOrder) -> IntPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut left = self.terms.iter().peekable();
        let mut right = g.terms.iter().map(|(m, c)| (m.mul(q), c)).peekable();
        loop {
            let ord = match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(l), Some(r)) => order.cmp(&l.0, &r.0),
            };
            match ord {
                Ordering::Greater => {
                    let (m, c) = left.next().expect("peeked");
                    out.push((m.clone(), a * c));
                }
                Ordering::Less => {
                    let (m, c) = right.next().expect("peeked");
                    out.push((m, -(b * c)));
                }
                Ordering::Equal => {
                    let (m, c) = left.next().expect("peeked");
                    let (_, d) = right.next().expect("peeked");
                    let v = a * c - b * d;
                    if !v.is_zero() {
                        out.push((m.clone(), v));
                    }
                }
            }
        }
        IntPoly { terms: out }
    }

    fn s_polynomial(&self, other: &IntPoly, order: TermOrder) -> IntPoly {
        let l = self.lm().lcm(other.lm());
        let u = l.div(self.lm()).expect("lcm");
        let v = l.div(other.lm()).expect("lcm");
        let g = self.lc().gcd(other.lc());
        let (a, b) = (other.lc() / &g, self.lc() / &g);
        let lifted = IntPoly { terms: self.terms.iter().map(|(m, c)| (m.mul(&u), c.clone())).collect() };
        let mut s = lifted.combine(&a, &b, &v, other, order);
        s.make_primitive();
        s
    }

    /// Full reduction modulo `basis`, up to a positive rational multiple.
    fn reduce(mut self, basis: &[IntPoly], order: TermOrder) -> IntPoly {
        let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
        while !self.is_zero() {
            let m = self.lm().clone();
            match basis.iter().find(|g| g.lm().divides(&m)) {
                Some(g) => {
                    let c = self.lc().clone();
                    let gcd = c.gcd(g.lc());
                    let (a, b) = (g.lc() / &gcd, c / &gcd);
                    let q = m.div(g.lm()).expect("divides");
                    self = self.combine(&a, &b, &q, g, order);
                    if !a.is_one() {
                        for (_, r) in &mut rem {
                            *r *= &a;
                        }
                    }
                    // joint content of remainder and the part still to reduce
                    let content = rem.iter().chain(&self.terms).fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
                    if !content.is_zero() && !content.is_one() {
                        for (_, x) in rem.iter_mut().chain(self.terms.iter_mut()) {
                            *x /= &content;
                        }
                    }
                }
                None => {
                    let t = self.terms.remove(0);
                    rem.push(t);
                }
            }
        }
        let mut out = IntPoly { terms: rem };
        out.make_primitive();
        out
    }
}

/// Reduced Gröbner basis; elements are monic and sorted by decreasing
/// leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GBasis {
    ring: RingSpec,
    order: TermOrder,
    elements: Vec<Polynomial>,
}

impl GBasis {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|p| p.leading_term(self.order).expect("nonzero").0.clone()).collect()
    }

    /// Normal form of `f`, scaled to be monic (zero stays zero).
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let basis: Vec<IntPoly> = self.elements.iter().map(|g| IntPoly::from_polynomial(g, self.order)).collect();
        let r = IntPoly::from_polynomial(f, self.order).reduce(&basis, self.order);
        if r.is_zero() {
            Polynomial::zero()
        } else {
            r.to_monic()
        }
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, by Buchberger's
/// algorithm with the normal selection strategy, the coprime criterion and
/// the chain criterion.
pub fn buchberger(ring: &RingSpec, gens: &[Polynomial], order: TermOrder) -> Result<GBasis> {
    let n = ring.n();
    for g in gens {
        for (m, _) in g.terms() {
            ring.check(m)?;
        }
    }
    let mut basis: Vec<IntPoly> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let r = IntPoly::from_polynomial(g, order).reduce(&basis, order);
        if !r.is_zero() {
            basis.push(r);
        }
    }
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        if basis.iter().any(|g| g.lm().is_one()) {
            break;
        }
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = basis[a.0].lm().lcm(basis[a.1].lm());
                let lb = basis[b.0].lm().lcm(basis[b.1].lm());
                la.degree().cmp(&lb.degree()).then_with(|| order.cmp(&la, &lb)).then_with(|| a.cmp(b))
            })
            .expect("nonempty");
        pending.remove(&(i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().is_coprime(fj.lm()) {
            continue;
        }
        let l = fi.lm().lcm(fj.lm());
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = fi.s_polynomial(fj, order).reduce(&basis, order);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r);
            for i in 0..k {
                pending.insert((i, k));
            }
        }
    }
    let elements = if let Some(unit) = basis.iter().find(|g| g.lm().is_one()) {
        debug_assert!(unit.terms.len() == 1);
        vec![Polynomial::monomial(Monomial::one(n))]
    } else {
        interreduce(basis, order)
    };
    let out = GBasis { ring: ring.clone(), order, elements };
    for g in gens {
        if !out.contains(g) {
            return Err(Error::Internal("an input generator does not reduce to zero".into()));
        }
    }
    Ok(out)
}

fn interreduce(mut basis: Vec<IntPoly>, order: TermOrder) -> Vec<Polynomial> {
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<IntPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<IntPoly> =
                minimal.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g.clone()).collect();
            // the leading term survives since no other leading monomial divides it
            minimal[k].clone().reduce(&others, order).to_monic()
        })
        .collect();
    out.sort_by(|a, b| order.cmp(b.leading_term(order).expect("nonzero").0, a.leading_term(order).expect("nonzero").0));
    out
}

pub fn initial_ideal(basis: &GBasis) -> MonomialIdeal {
    MonomialIdeal::new(basis.ring.clone(), basis.leading_monomials()).expect("leading monomials live in the ring")
}

/// Random invertible integer matrix used as `X_i -> sum_j M[i][j] X_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateChange {
    matrix: Vec<Vec<i64>>,
    seed: u64,
}

impl CoordinateChange {
    pub fn identity(n: usize) -> Self {
        let matrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        CoordinateChange { matrix, seed: 0 }
    }

    /// Entries uniform in `[-bound, bound]`; redrawn until invertible.
    pub fn random(n: usize, seed: u64, bound: i64) -> Result<Self> {
        if bound < 1 {
            return Err(Error::InvalidArgument(format!("coefficient bound must be positive, got {bound}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let matrix: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
            let change = CoordinateChange { matrix, seed };
            if !change.determinant().is_zero() {
                return Ok(change);
            }
        }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn determinant(&self) -> BigInt {
        determinant(self.big_matrix())
    }

    fn big_matrix(&self) -> Vec<Vec<BigInt>> {
        self.matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        f.substitute_linear(&self.big_matrix())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GinOptions {
    pub trials: usize,
    pub seed: u64,
    pub bound: i64,
}

impl Default for GinOptions {
    fn default() -> Self {
        GinOptions { trials: 3, seed: 0, bound: 1000 }
    }
}

impl GinOptions {
    /// Independent per-trial seeds derived from the base seed.
    pub fn trial_seeds(&self) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.trials).map(|_| rng.gen()).collect()
    }
}

/// Initial ideal in degrevlex after the coordinate change with this seed.
pub fn gin_trial(input: &IdealInput, seed: u64, bound: i64) -> Result<MonomialIdeal> {
    let ring = input.ring();
    let change = CoordinateChange::random(ring.n(), seed, bound)?;
    let gens: Vec<Polynomial> = input.polynomials().iter().map(|f| change.apply(f)).collect();
    Ok(initial_ideal(&buchberger(ring, &gens, TermOrder::DegRevLex)?))
}

/// Generic initial ideal in degrevlex, accepted only if every trial agrees.
pub fn gin(input: &IdealInput, options: &GinOptions) -> Result<MonomialIdeal> {
    if options.trials < 2 {
        return Err(Error::InvalidArgument(format!("gin needs at least 2 trials, got {}", options.trials)));
    }
    if !input.polynomials().iter().all(Polynomial::is_homogeneous) {
        return Err(Error::NotHomogeneous);
    }
    let seeds = options.trial_seeds();
    let results: Vec<MonomialIdeal> =
        seeds.par_iter().map(|&s| gin_trial(input, s, options.bound)).collect::<Result<_>>()?;
    if results.iter().any(|r| r != &results[0]) {
        return Err(Error::UnluckyCoordinates { seeds });
    }
    let out = results.into_iter().next().expect("at least two trials");
    if !out.is_strongly_stable().is_stable() {
        return Err(Error::Internal(format!("gin ({out}) is not strongly stable")));
    }
    Ok(out)
}

pub fn gin_monomial(ideal: &MonomialIdeal, options: &GinOptions) -> Result<MonomialIdeal> {
    gin(&IdealInput::Monomial(ideal.clone()), options)
}

/// `dim_K I_d` for the ideal generated by homogeneous `gens`, as the rank of
/// the products `m * g` with `deg m = d - deg g`.
pub fn homogeneous_component_dimension(n: usize, gens: &[Polynomial], d: u32) -> Result<usize> {
    let monomials = enumerate_monomials(n, d, TermOrder::Lex);
    let index: std::collections::HashMap<&Monomial, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let e = g.degree().expect("nonzero");
        if e > d {
            continue;
        }
        let int = IntPoly::from_polynomial(g, TermOrder::Lex);
        for m in enumerate_monomials(n, d - e, TermOrder::Lex) {
            let mut row = vec![BigInt::zero(); monomials.len()];
            for (t, c) in &int.terms {
                row[index[&t.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rank_bigint(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::hilbert_function;
    use crate::parse::{parse_ideal, parse_polynomials};
    use crate::testutil::{ideal, ring};

    fn polys(r: &RingSpec, text: &str) -> Vec<Polynomial> {
        parse_polynomials(text, r).unwrap()
    }

    #[test]
    fn monomial_input_is_its_own_basis() {
        let r = ring("x,y");
        let b = buchberger(&r, &polys(&r, "x, y"), TermOrder::Lex).unwrap();
        assert_eq!(b.elements().len(), 2);
        assert_eq!(initial_ideal(&b), ideal("x,y", "x, y"));
    }

    #[test]
    fn hand_computed_basis() {
        let r = ring("x,y");
        let b = buchberger(&r, &polys(&r, "x^2 - y^2, x*y"), TermOrder::DegRevLex).unwrap();
        assert_eq!(initial_ideal(&b), ideal("x,y", "x^2, x*y, y^3"));
        let shown: Vec<String> = b.elements().iter().map(|p| r.format_polynomial(p)).collect();
        assert_eq!(shown, vec!["y^3", "x^2 - y^2", "x*y"]);
    }

    #[test]
    fn unit_basis() {
        let r = ring("x,y");
        let b = buchberger(&r, &polys(&r, "1"), TermOrder::DegRevLex).unwrap();
        assert!(initial_ideal(&b).is_unit());
        let b = buchberger(&r, &polys(&r, "x + 1, x"), TermOrder::Lex).unwrap();
        assert!(initial_ideal(&b).is_unit());
    }

    #[test]
    fn rational_coefficients_and_membership() {
        let r = ring("x,y,z");
        let gens = polys(&r, "1/2*x*y - z^2, 3*x^2 + 2/3*y*z");
        let b = buchberger(&r, &gens, TermOrder::DegRevLex).unwrap();
        for g in b.elements() {
            assert!(b.contains(g));
        }
        assert!(!b.contains(&polys(&r, "x")[0]));
        let init = initial_ideal(&b);
        for d in 0..7 {
            let source = homogeneous_component_dimension(3, &gens, d).unwrap() as u64;
            assert_eq!(hilbert_function(&init, d as u64), crate::ring::monomial_count(3, d as i64) as u64 - source);
        }
    }

    #[test]
    fn coordinate_change_is_invertible_and_deterministic() {
        let a = CoordinateChange::random(4, 7, 1000).unwrap();
        let b = CoordinateChange::random(4, 7, 1000).unwrap();
        assert_eq!(a, b);
        assert!(!a.determinant().is_zero());
        assert!(a.matrix().iter().flatten().all(|x| x.abs() <= 1000));
        assert!(CoordinateChange::random(2, 0, 0).is_err());
        let tiny = CoordinateChange::random(3, 1, 1).unwrap();
        assert!(!tiny.determinant().is_zero());
    }

    #[test]
    fn gin_examples() {
        let opts = GinOptions::default();
        let example = ideal("x,y,z", "x^2, x*y, y^2, x*z^2, y*z^2");
        assert_eq!(gin_monomial(&example, &opts).unwrap(), example);
        assert_eq!(gin_monomial(&ideal("x,y,z", "x*y, x*z"), &opts).unwrap(), ideal("x,y,z", "x^2, x*y"));
        let r = ring("x,y,z");
        let principal = parse_ideal("x*y*z - y^3 + 2*z^3", &r).unwrap();
        assert_eq!(gin(&principal, &opts).unwrap(), ideal("x,y,z", "x^3"));
    }

    #[test]
    fn gin_rejects_bad_options() {
        let opts = GinOptions { trials: 1, ..GinOptions::default() };
        assert!(matches!(gin_monomial(&ideal("x,y", "x"), &opts), Err(Error::InvalidArgument(_))));
        let r = ring("x,y");
        let inhomogeneous = parse_ideal("x^2 + y", &r).unwrap();
        assert_eq!(gin(&inhomogeneous, &GinOptions::default()), Err(Error::NotHomogeneous));
    }

    #[test]
    fn gin_of_zero_and_unit() {
        let opts = GinOptions::default();
        assert!(gin_monomial(&ideal("x,y", ""), &opts).unwrap().is_zero());
        assert!(gin_monomial(&ideal("x,y", "1"), &opts).unwrap().is_unit());
    }
}

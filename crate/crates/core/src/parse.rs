//! Text syntax for monomials, polynomials and ideals.
//!
//! ```text
//! ideal    := <empty> | poly ("," poly)*
//! poly     := ["+" | "-"] term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := INT ["/" INT] | NAME ["^" INT]
//! ```
//!
//! Whitespace is ignored between tokens. Positions in errors are byte offsets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::{Monomial, Polynomial, RingSpec};

/// A parsed ideal, routed by shape: all-monomial input becomes a
/// [`MonomialIdeal`], anything else stays a polynomial generator list.
#[derive(Debug, Clone, PartialEq)]
pub enum IdealInput {
    Monomial(MonomialIdeal),
    Polynomial { ring: RingSpec, gens: Vec<Polynomial> },
}

impl IdealInput {
    pub fn ring(&self) -> &RingSpec {
        match self {
            IdealInput::Monomial(i) => i.ring(),
            IdealInput::Polynomial { ring, .. } => ring,
        }
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self, IdealInput::Monomial(_))
    }

    /// Generators as polynomials, whichever way the input was routed.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        match self {
            IdealInput::Monomial(i) => i.gens().iter().cloned().map(Polynomial::monomial).collect(),
            IdealInput::Polynomial { gens, .. } => gens.clone(),
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !pred(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.error("expected an integer");
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.error("expected an exponent");
        }
        digits.parse().map_err(|_| Error::Parse { pos: start, msg: "exponent too large".into() })
    }

    fn factor(&mut self, ring: &RingSpec, coeff: &mut BigRational, exps: &mut [u32]) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat('/') { self.integer()? } else { BigInt::one() };
                if den.is_zero() {
                    return self.error("zero denominator");
                }
                *coeff *= BigRational::new(num, den);
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                let idx =
                    ring.index_of(name).ok_or_else(|| Error::UnknownVariable { name: name.to_string(), pos: start })?;
                let e = if self.eat('^') { self.exponent()? } else { 1 };
                exps[idx] = exps[idx].checked_add(e).ok_or(Error::ExponentOverflow)?;
                Ok(())
            }
            Some(c) => self.error(format!("unexpected character `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }

    fn term(&mut self, ring: &RingSpec) -> Result<(Monomial, BigRational)> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; ring.n()];
        self.factor(ring, &mut coeff, &mut exps)?;
        while self.eat('*') {
            self.factor(ring, &mut coeff, &mut exps)?;
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }

    fn polynomial(&mut self, ring: &RingSpec) -> Result<Polynomial> {
        let mut p = Polynomial::zero();
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let (m, c) = self.term(ring)?;
            p.add_term(m, if negative { -c } else { c });
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(p);
            }
        }
    }
}

/// Parses a comma-separated generator list. Zero generators are dropped.
pub fn parse_polynomials(text: &str, ring: &RingSpec) -> Result<Vec<Polynomial>> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    if cur.peek().is_none() {
        return Ok(out);
    }
    loop {
        let p = cur.polynomial(ring)?;
        if !p.is_zero() {
            out.push(p);
        }
        if cur.eat(',') {
            continue;
        }
        if cur.peek().is_some() {
            return cur.error("expected `,`, `+`, `-` or `*`");
        }
        return Ok(out);
    }
}

pub fn parse_ideal(text: &str, ring: &RingSpec) -> Result<IdealInput> {
    let gens = parse_polynomials(text, ring)?;
    if gens.iter().all(|g| g.as_monomial().is_some()) {
        let monos = gens.iter().map(|g| g.as_monomial().expect("checked").clone()).collect();
        Ok(IdealInput::Monomial(MonomialIdeal::new(ring.clone(), monos)?))
    } else {
        Ok(IdealInput::Polynomial { ring: ring.clone(), gens })
    }
}

/// Parses text that must describe a monomial ideal.
pub fn parse_monomial_ideal(text: &str, ring: &RingSpec) -> Result<MonomialIdeal> {
    match parse_ideal(text, ring)? {
        IdealInput::Monomial(i) => Ok(i),
        IdealInput::Polynomial { .. } => {
            Err(Error::InvalidArgument("expected monomial generators, found a polynomial".into()))
        }
    }
}

/// Parses a single monomial such as `x^2*y`; `1` is the unit monomial.
pub fn parse_monomial(text: &str, ring: &RingSpec) -> Result<Monomial> {
    let mut cur = Cursor::new(text);
    let (m, c) = cur.term(ring)?;
    if cur.peek().is_some() {
        return cur.error("trailing input after monomial");
    }
    if !c.is_one() {
        return Err(Error::Parse { pos: 0, msg: "a monomial has no coefficient".into() });
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &str) -> RingSpec {
        RingSpec::with_names(&names.split(',').collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn example_ideal_routes_to_monomial() {
        let r = ring("x,y,z");
        let i = parse_ideal("x^2, x*y, y^2, x*z^2, y*z^2", &r).unwrap();
        let IdealInput::Monomial(i) = i else { panic!("expected monomial input") };
        assert_eq!(i.gens().len(), 5);
        assert_eq!(i.to_string(), "x^2, x*y, x*z^2, y^2, y*z^2");
    }

    #[test]
    fn empty_text_is_zero_ideal() {
        let i = parse_monomial_ideal("", &ring("x,y")).unwrap();
        assert!(i.is_zero());
        assert!(parse_monomial_ideal("  0 ", &ring("x,y")).unwrap().is_zero());
    }

    #[test]
    fn polynomial_input_is_flagged() {
        let r = ring("x,y");
        let i = parse_ideal("x^2 - y^2, x*y", &r).unwrap();
        assert!(!i.is_monomial());
        let gens = i.polynomials();
        assert_eq!(r.format_polynomial(&gens[0]), "x^2 - y^2");
        let q = parse_polynomials("-3/2*x*y + 1/2 + y", &r).unwrap();
        assert_eq!(r.format_polynomial(&q[0]), "-3/2*x*y + y + 1/2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring("x,y");
        assert_eq!(parse_ideal("x^2, q", &r), Err(Error::UnknownVariable { name: "q".into(), pos: 5 }));
        assert!(matches!(parse_ideal("x^", &r), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_ideal("x y", &r), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_ideal("x,", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_ideal("1/0*x", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn monomial_round_trip() {
        let r = ring("x,y,z");
        for text in ["x^2*y*z^3", "1", "y", "x*z"] {
            let m = parse_monomial(text, &r).unwrap();
            assert_eq!(r.format_monomial(&m), text);
        }
        assert!(parse_monomial("2*x", &r).is_err());
    }
}

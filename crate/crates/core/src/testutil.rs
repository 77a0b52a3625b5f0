use crate::ideal::MonomialIdeal;
use crate::parse::{parse_monomial, parse_monomial_ideal};
use crate::ring::{Monomial, RingSpec};

pub fn ring(names: &str) -> RingSpec {
    RingSpec::with_names(&names.split(',').collect::<Vec<_>>()).unwrap()
}

pub fn ideal(names: &str, gens: &str) -> MonomialIdeal {
    parse_monomial_ideal(gens, &ring(names)).unwrap()
}

pub fn mono(names: &str, text: &str) -> Monomial {
    parse_monomial(text, &ring(names)).unwrap()
}

//! Experiments built on the engines: the exchange-property verifier,
//! strongly stable family enumeration and the rigidity probe.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{
    default_window, local_cohomology_table, sequentially_cm_verdict_with_gin, DegreeWindow, LCTable,
    SequentialCmVerdict,
};
use crate::error::{Error, Result};
use crate::groebner::{gin_monomial, GinOptions};
use crate::hilbert::{check_macaulay, hilbert_series};
use crate::ideal::MonomialIdeal;
use crate::lex::{exchange_property, lex_ideal};
use crate::ring::{enumerate_monomials, monomial_count, Monomial, RingSpec, TermOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// (i) and (ii) agree.
    Consistent,
    /// (i) fails but the window was narrower than the default and saw no difference.
    InconclusiveWindow,
    /// (i) and (ii) disagree on a window at least as wide as the default.
    TheoremViolation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ideal: MonomialIdeal,
    pub lex: MonomialIdeal,
    /// `(I^sat)^lex`
    pub lex_of_saturation: MonomialIdeal,
    /// `(I^lex)^sat`
    pub saturation_of_lex: MonomialIdeal,
    pub condition_i: bool,
    pub lc_window: DegreeWindow,
    pub table_ideal: LCTable,
    pub table_lex: LCTable,
    pub condition_ii_on_window: bool,
    pub first_mismatch: Option<(usize, i64)>,
    pub gin: Option<MonomialIdeal>,
    pub sequentially_cm: Option<SequentialCmVerdict>,
    pub condition_iii: Option<bool>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::TheoremViolation
    }
}

/// The window `verify_main` uses by default: the hull of the default
/// windows of `I` and `I^lex`.
pub fn verification_window(ideal: &MonomialIdeal, lex: &MonomialIdeal) -> DegreeWindow {
    default_window(ideal).hull(&default_window(lex))
}

/// Checks `(I^sat)^lex = (I^lex)^sat` exactly and compares the local
/// cohomology tables of `R/I` and `R/I^lex` on the window. With gin options
/// it also evaluates "sequentially CM and gin(I) = I^lex".
pub fn verify_main(
    ideal: &MonomialIdeal,
    window: Option<DegreeWindow>,
    gin_options: Option<&GinOptions>,
) -> Result<VerificationReport> {
    let exchange = exchange_property(ideal)?;
    let lex = lex_ideal(ideal)?;
    let default = verification_window(ideal, &lex);
    let lc_window = window.unwrap_or(default);
    let table_ideal = local_cohomology_table(ideal, lc_window)?;
    let table_lex = local_cohomology_table(&lex, lc_window)?;
    let first_mismatch = table_ideal.first_difference(&table_lex);
    let condition_ii_on_window = first_mismatch.is_none();
    let (gin, sequentially_cm, condition_iii) = match gin_options {
        Some(opts) => {
            let g = gin_monomial(ideal, opts)?;
            let seq = sequentially_cm_verdict_with_gin(ideal, &g, lc_window)?;
            let iii = seq == SequentialCmVerdict::ConsistentWithSequentiallyCM && g == lex;
            (Some(g), Some(seq), Some(iii))
        }
        None => (None, None, None),
    };
    let wide = lc_window.lo() <= default.lo() && lc_window.hi() >= default.hi();
    let verdict = if exchange.holds == condition_ii_on_window {
        Verdict::Consistent
    } else if wide || exchange.holds {
        // when (i) holds the tables agree in every degree, so any window must see it
        Verdict::TheoremViolation
    } else {
        Verdict::InconclusiveWindow
    };
    Ok(VerificationReport {
        ideal: ideal.clone(),
        lex,
        lex_of_saturation: exchange.left,
        saturation_of_lex: exchange.right,
        condition_i: exchange.holds,
        lc_window,
        table_ideal,
        table_lex,
        condition_ii_on_window,
        first_mismatch,
        gin,
        sequentially_cm,
        condition_iii,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTarget {
    /// `dim (R/I)_d` for `d = 0, 1, ...`; degrees past the list are free.
    Values(Vec<u64>),
    /// Same Hilbert function as this ideal in every degree.
    Ideal(MonomialIdeal),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub ring: RingSpec,
    pub target: FamilyTarget,
    pub max_degree: u32,
}

/// Borel-closed sets of degree-`d` monomials containing `base`, optionally
/// of a fixed size. Candidates are scanned in decreasing lex order, so every
/// elementary Borel parent is decided before its child.
fn borel_closed_extensions(n: usize, d: u32, base: &HashSet<Monomial>, size: Option<usize>) -> Vec<Vec<Monomial>> {
    let candidates: Vec<Monomial> =
        enumerate_monomials(n, d, TermOrder::Lex).into_iter().filter(|m| !base.contains(m)).collect();
    let need = match size {
        Some(s) if s < base.len() => return Vec::new(),
        Some(s) if s - base.len() > candidates.len() => return Vec::new(),
        Some(s) => Some(s - base.len()),
        None => None,
    };
    let parents: Vec<Vec<Monomial>> = candidates
        .iter()
        .map(|m| {
            (1..n).filter(|&j| m.exponents()[j] > 0).map(|j| m.borel_move(j - 1, j).expect("valid move")).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current = base.clone();
    let mut chosen = Vec::new();
    extend_rec(&candidates, &parents, 0, need, &mut current, &mut chosen, &mut out);
    let base_list: Vec<Monomial> = base.iter().cloned().collect();
    out.into_iter()
        .map(|mut c: Vec<Monomial>| {
            c.extend(base_list.iter().cloned());
            c
        })
        .collect()
}

fn extend_rec(
    candidates: &[Monomial],
    parents: &[Vec<Monomial>],
    k: usize,
    need: Option<usize>,
    current: &mut HashSet<Monomial>,
    chosen: &mut Vec<Monomial>,
    out: &mut Vec<Vec<Monomial>>,
) {
    if let Some(need) = need {
        if chosen.len() > need || chosen.len() + (candidates.len() - k) < need {
            return;
        }
    }
    if k == candidates.len() {
        out.push(chosen.clone());
        return;
    }
    let m = &candidates[k];
    if parents[k].iter().all(|p| current.contains(p)) {
        current.insert(m.clone());
        chosen.push(m.clone());
        extend_rec(candidates, parents, k + 1, need, current, chosen, out);
        chosen.pop();
        current.remove(m);
    }
    extend_rec(candidates, parents, k + 1, need, current, chosen, out);
}

/// Degreewise Borel-closed extension; `sizes[d]` (if present) fixes `dim I_d`.
fn enumerate_components(ring: &RingSpec, max_degree: u32, sizes: &[Option<usize>]) -> Vec<MonomialIdeal> {
    let n = ring.n();
    let mut partial: Vec<(Vec<Monomial>, HashSet<Monomial>)> = vec![(Vec::new(), HashSet::new())];
    for d in 0..=max_degree {
        let size = sizes.get(d as usize).copied().flatten();
        let mut next = Vec::new();
        for (gens, component) in partial {
            let shadow: HashSet<Monomial> = if d == 0 {
                HashSet::new()
            } else {
                component.iter().flat_map(|m| (0..n).map(move |i| m.mul(&Monomial::var(n, i)))).collect()
            };
            for comp in borel_closed_extensions(n, d, &shadow, size) {
                let mut g = gens.clone();
                g.extend(comp.iter().filter(|m| !shadow.contains(*m)).cloned());
                next.push((g, comp.into_iter().collect()));
            }
        }
        partial = next;
    }
    let mut ideals: Vec<MonomialIdeal> = partial
        .into_iter()
        .map(|(gens, _)| MonomialIdeal::new(ring.clone(), gens).expect("monomials live in the ring"))
        .collect();
    ideals.sort_by(|a, b| a.gens().cmp(b.gens()));
    ideals
}

/// Every strongly stable ideal with generators in degrees `<= max_degree`
/// whose Hilbert function matches the target, in a canonical order.
pub fn enumerate_strongly_stable(spec: &FamilySpec) -> Result<Vec<MonomialIdeal>> {
    let n = spec.ring.n();
    let values = match &spec.target {
        FamilyTarget::Values(v) => v.clone(),
        FamilyTarget::Ideal(i) => {
            if i.ring().n() != n {
                return Err(Error::RingMismatch { expected: n, found: i.ring().n() });
            }
            hilbert_series(i, spec.max_degree.max(i.max_degree()) as usize).values
        }
    };
    check_macaulay(&values, n)?;
    let sizes: Vec<Option<usize>> = values
        .iter()
        .enumerate()
        .map(|(d, &h)| Some((monomial_count(n, d as i64) as u64).saturating_sub(h) as usize))
        .collect();
    if values.iter().enumerate().any(|(d, &h)| h as u128 > monomial_count(n, d as i64)) {
        return Ok(Vec::new());
    }
    let family = enumerate_components(&spec.ring, spec.max_degree, &sizes);
    let full = match &spec.target {
        FamilyTarget::Values(_) => None,
        FamilyTarget::Ideal(i) => Some(hilbert_series(i, 0).numerator),
    };
    Ok(family
        .into_iter()
        .filter(|i| {
            let data = hilbert_series(i, values.len().saturating_sub(1));
            data.values == values && full.as_ref().is_none_or(|num| &data.numerator == num)
        })
        .collect())
}

/// Every proper strongly stable ideal (the zero ideal included) with
/// generators in degrees `<= max_degree`.
pub fn all_strongly_stable(ring: &RingSpec, max_degree: u32) -> Vec<MonomialIdeal> {
    let mut sizes = vec![None; max_degree as usize + 1];
    sizes[0] = Some(0);
    enumerate_components(ring, max_degree, &sizes)
}

/// Distinct Hilbert functions (through `max_degree`) among a family.
pub fn hilbert_function_classes(ideals: &[MonomialIdeal], max_degree: u32) -> Vec<Vec<u64>> {
    let mut classes: Vec<Vec<u64>> = ideals.iter().map(|i| hilbert_series(i, max_degree as usize).values).collect();
    classes.sort();
    classes.dedup();
    classes
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityEntry {
    pub ideal: MonomialIdeal,
    pub window: DegreeWindow,
    /// Whether row `i` of `R/I` and `R/I^lex` agree on the window.
    pub equal_rows: Vec<bool>,
    /// `(i, j)` with row `i` equal but row `j > i` different.
    pub candidates: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub members: Vec<RigidityEntry>,
    pub candidates_found: bool,
    /// Always false: equality is only checked on a finite window.
    pub conclusive: bool,
}

/// Looks for ideals in the family whose table rows agree with the lex
/// ideal's at some `i` but not at a larger index.
pub fn probe_rigidity(spec: &FamilySpec, window: Option<DegreeWindow>) -> Result<RigidityReport> {
    let family = enumerate_strongly_stable(spec)?;
    let members = family
        .par_iter()
        .map(|ideal| {
            let lex = lex_ideal(ideal)?;
            let w = window.unwrap_or_else(|| verification_window(ideal, &lex));
            let a = local_cohomology_table(ideal, w)?;
            let b = local_cohomology_table(&lex, w)?;
            let equal_rows: Vec<bool> = (0..=ideal.n()).map(|i| a.row_equal(&b, i)).collect();
            let candidates = (0..equal_rows.len())
                .filter(|&i| equal_rows[i])
                .flat_map(|i| (i + 1..equal_rows.len()).filter(|&j| !equal_rows[j]).map(move |j| (i, j)))
                .collect();
            Ok(RigidityEntry { ideal: ideal.clone(), window: w, equal_rows, candidates })
        })
        .collect::<Result<Vec<_>>>()?;
    let candidates_found = members.iter().any(|m| !m.candidates.is_empty());
    Ok(RigidityReport { members, candidates_found, conclusive: false })
}

/// `verify_main` over a family in parallel; output keeps the input order.
pub fn verify_family(
    family: &[MonomialIdeal],
    window: Option<DegreeWindow>,
    gin_options: Option<&GinOptions>,
) -> Result<Vec<VerificationReport>> {
    family.par_iter().map(|i| verify_main(i, window, gin_options)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{ideal, ring};

    const EXAMPLE: &str = "x^2, x*y, y^2, x*z^2, y*z^2";

    #[test]
    fn verify_example() {
        let i = ideal("x,y,z", EXAMPLE);
        let r = verify_main(&i, None, Some(&GinOptions::default())).unwrap();
        assert!(r.condition_i && r.condition_ii_on_window);
        assert_eq!(r.gin.as_ref(), Some(&i));
        assert_eq!(r.condition_iii, Some(false));
        assert_eq!(r.verdict, Verdict::Consistent);
    }

    #[test]
    fn verify_two_planes() {
        let i = ideal("x,y,z,w", "x*z, x*w, y*z, y*w");
        let r = verify_main(&i, None, None).unwrap();
        assert!(!r.condition_i && !r.condition_ii_on_window);
        assert_eq!(r.first_mismatch, Some((0, 1)));
        assert_eq!(r.verdict, Verdict::Consistent);
        let narrow = verify_main(&i, Some(DegreeWindow::new(5, 6).unwrap()), None).unwrap();
        assert_eq!(narrow.verdict, Verdict::InconclusiveWindow);
    }

    #[test]
    fn verify_trivial() {
        let r = verify_main(&ideal("x,y,z", "x, y"), None, Some(&GinOptions::default())).unwrap();
        assert!(r.condition_i && r.condition_ii_on_window);
        assert_eq!(r.condition_iii, Some(true));
        assert!(matches!(verify_main(&ideal("x,y", "1"), None, None), Err(Error::UnitIdeal)));
    }

    #[test]
    fn report_round_trips() {
        let r = verify_main(&ideal("x,y,z", EXAMPLE), None, Some(&GinOptions::default())).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn enumeration_examples() {
        let spec = FamilySpec { ring: ring("x,y"), target: FamilyTarget::Values(vec![1, 2, 2]), max_degree: 2 };
        assert_eq!(enumerate_strongly_stable(&spec).unwrap(), vec![ideal("x,y", "x^2")]);

        let spec = FamilySpec { ring: ring("x,y,z"), target: FamilyTarget::Values(vec![1, 3, 3, 1]), max_degree: 3 };
        let family = enumerate_strongly_stable(&spec).unwrap();
        assert!(family.contains(&ideal("x,y,z", EXAMPLE)));
        assert!(family.contains(&ideal("x,y,z", "x^2, x*y, x*z, y^3, y^2*z, y*z^2")));
        assert!(family.iter().all(|i| i.is_strongly_stable().is_stable()));

        let bad = FamilySpec { ring: ring("x,y"), target: FamilyTarget::Values(vec![1, 1, 2]), max_degree: 2 };
        assert!(matches!(enumerate_strongly_stable(&bad), Err(Error::NotMacaulayAdmissible { degree: 1 })));
    }

    #[test]
    fn enumeration_is_exhaustive_for_two_variables() {
        // strongly stable in K[x, y] with generators in degree <= 2:
        // 0, (x), (x, y), (x^2), (x^2, x*y), (x^2, x*y, y^2), (x, y^2)
        let all = all_strongly_stable(&ring("x,y"), 2);
        assert_eq!(all.len(), 7);
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 7);
    }

    /// Counts component chains `I_1, ..., I_D` by brute force over all subsets.
    fn brute_force_count(n: usize, max_degree: u32) -> usize {
        let comps: Vec<Vec<Monomial>> = (1..=max_degree).map(|d| enumerate_monomials(n, d, TermOrder::Lex)).collect();
        let closed = |set: &HashSet<Monomial>| {
            set.iter().all(|m| {
                (1..n).all(|j| m.exponents()[j] == 0 || (0..j).all(|i| set.contains(&m.borel_move(i, j).unwrap())))
            })
        };
        let subsets = |mons: &[Monomial]| -> Vec<HashSet<Monomial>> {
            (0u32..1 << mons.len())
                .map(|mask| {
                    mons.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, m)| m.clone()).collect()
                })
                .filter(|s| closed(s))
                .collect()
        };
        let per_degree: Vec<Vec<HashSet<Monomial>>> = comps.iter().map(|c| subsets(c)).collect();
        let mut chains: Vec<HashSet<Monomial>> = per_degree[0].clone();
        for next in &per_degree[1..] {
            chains = chains
                .iter()
                .flat_map(|low| {
                    next.iter().filter(move |high| {
                        low.iter().all(|m| (0..n).all(|i| high.contains(&m.mul(&Monomial::var(n, i)))))
                    })
                })
                .cloned()
                .collect();
        }
        chains.len()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        assert_eq!(all_strongly_stable(&ring("x,y,z"), 3).len(), brute_force_count(3, 3));
        assert_eq!(all_strongly_stable(&ring("x,y"), 4).len(), brute_force_count(2, 4));
    }

    #[test]
    fn ideal_target_filters_by_full_hilbert_function() {
        let source = ideal("x,y,z", EXAMPLE);
        let spec = FamilySpec { ring: ring("x,y,z"), target: FamilyTarget::Ideal(source.clone()), max_degree: 3 };
        let family = enumerate_strongly_stable(&spec).unwrap();
        assert!(family.contains(&source));
        let num = hilbert_series(&source, 0).numerator;
        assert!(family.iter().all(|i| hilbert_series(i, 0).numerator == num));
    }

    #[test]
    fn rigidity_probe_on_example_family() {
        let spec =
            FamilySpec { ring: ring("x,y,z"), target: FamilyTarget::Ideal(ideal("x,y,z", EXAMPLE)), max_degree: 3 };
        let report = probe_rigidity(&spec, None).unwrap();
        assert!(!report.members.is_empty());
        assert!(!report.conclusive);
        // the degree-2 drop needs a generator of degree 2, beyond max_degree
        let empty = FamilySpec { ring: ring("x,y"), target: FamilyTarget::Values(vec![1, 2, 1]), max_degree: 1 };
        let report = probe_rigidity(&empty, None).unwrap();
        assert!(report.members.is_empty() && !report.candidates_found);
    }
}

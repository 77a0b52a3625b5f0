//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the per-criterion lines are always
//! shown by `cargo test`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use lexlab::cohomology::{default_window, extension_recursion, local_cohomology_table, DegreeWindow};
use lexlab::groebner::{gin_monomial, GinOptions};
use lexlab::hilbert::{check_macaulay, hilbert_function, hilbert_function_with, hilbert_series, HilbertStrategy};
use lexlab::lab::{all_strongly_stable, verify_family, verify_main, Verdict};
use lexlab::lex::{exchange_property, is_gotzmann, lex_ideal, saturated_lex_ideal, GotzmannData};
use lexlab::parse::parse_monomial_ideal;
use lexlab::ring::{enumerate_monomials, monomial_count, Monomial, RingSpec, TermOrder};
use lexlab::{MonomialIdeal, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXAMPLE: &str = "x^2, x*y, y^2, x*z^2, y*z^2";

fn ring(names: &str) -> RingSpec {
    RingSpec::with_names(&names.split(',').collect::<Vec<_>>()).unwrap()
}

fn ideal(names: &str, gens: &str) -> MonomialIdeal {
    parse_monomial_ideal(gens, &ring(names)).unwrap()
}

fn check(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

type Outcome = std::result::Result<String, String>;

fn engine<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("engine error: {e}"))
}

fn random_ideal(rng: &mut ChaCha8Rng, n: usize, max_gens: usize, max_deg: u32) -> MonomialIdeal {
    let count = rng.gen_range(1..=max_gens);
    let gens = (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            let mut exps = vec![0u32; n];
            for _ in 0..d {
                exps[rng.gen_range(0..n)] += 1;
            }
            Monomial::from_exponents(exps)
        })
        .collect();
    MonomialIdeal::new(RingSpec::new(n).unwrap(), gens).unwrap()
}

/// Strongly stable ideals with generators in degree <= 3 in 3 variables.
fn sweep_family() -> Vec<MonomialIdeal> {
    all_strongly_stable(&ring("x,y,z"), 3)
}

fn criterion_1() -> Outcome {
    let i = ideal("x,y,z", EXAMPLE);
    let lex = engine(lex_ideal(&i))?;
    check(lex == ideal("x,y,z", "x^2, x*y, x*z, y^3, y^2*z, y*z^2"), || format!("lex ideal was ({lex})"))?;
    let ex = engine(exchange_property(&i))?;
    let xy = ideal("x,y,z", "x, y");
    check(ex.left == xy, || format!("(I^sat)^lex was ({})", ex.left))?;
    check(ex.right == xy, || format!("(I^lex)^sat was ({})", ex.right))?;
    Ok("lex = (x^2,xy,xz,y^3,y^2z,yz^2); both sides = (x,y)".into())
}

fn criterion_2() -> Outcome {
    let i = ideal("x,y,z", EXAMPLE);
    let lex = engine(lex_ideal(&i))?;
    let w = DegreeWindow::new(-10, 6).unwrap();
    let a = engine(local_cohomology_table(&i, w))?;
    let b = engine(local_cohomology_table(&lex, w))?;
    for k in 0..=3 {
        for j in w.degrees() {
            check(a.get(k, j) == b.get(k, j), || format!("h^{k}_{j}: {} vs {}", a.get(k, j), b.get(k, j)))?;
        }
    }
    check(a.row_map(0) == BTreeMap::from([(1, 2), (2, 2)]), || format!("h^0 row was {:?}", a.row_map(0)))?;
    Ok("tables agree on i in 0..=3, j in [-10, 6]; h^0 = {1: 2, 2: 2}".into())
}

fn criterion_3() -> Outcome {
    let i = ideal("x,y,z,w", "x*z, x*w, y*z, y*w");
    let r = engine(verify_main(&i, None, None))?;
    check(!r.condition_i, || "condition (i) held".into())?;
    check(r.lex_of_saturation == ideal("x,y,z,w", "x^2, x*y, x*z, x*w, y^3, y^2*z"), || {
        format!("left side was ({})", r.lex_of_saturation)
    })?;
    check(r.saturation_of_lex == ideal("x,y,z,w", "x, y^3, y^2*z"), || {
        format!("right side was ({})", r.saturation_of_lex)
    })?;
    check(!r.condition_ii_on_window, || "condition (ii) held on the window".into())?;
    check(r.first_mismatch == Some((0, 1)), || format!("first mismatch at {:?}", r.first_mismatch))?;
    Ok("(i) fails with the expected sides; (ii) fails first at (0, 1)".into())
}

fn criterion_4(family: &[MonomialIdeal]) -> Outcome {
    let reports = engine(verify_family(family, None, None))?;
    let violations: Vec<String> = reports
        .iter()
        .filter(|r| r.condition_i != r.condition_ii_on_window || r.verdict != Verdict::Consistent)
        .map(|r| format!("({})", r.ideal))
        .collect();
    check(violations.is_empty(), || format!("violations: {}", violations.join("; ")))?;
    let holding = reports.iter().filter(|r| r.condition_i).count();
    let classes: std::collections::BTreeSet<Vec<u64>> = family.iter().map(|i| hilbert_series(i, 3).values).collect();
    Ok(format!(
        "{} ideals, {} Hilbert functions through degree 3, (i) holds for {}, 0 violations",
        family.len(),
        classes.len(),
        holding
    ))
}

fn criterion_5(family: &[MonomialIdeal]) -> Outcome {
    use rayon::prelude::*;
    let opts = GinOptions::default();
    let failures: Vec<String> = family
        .par_iter()
        .map(|i| -> std::result::Result<Option<String>, String> {
            let g = engine(gin_monomial(i, &opts))?;
            let lex = engine(lex_ideal(i))?;
            let w = default_window(i).hull(&default_window(&g)).hull(&default_window(&lex));
            let ti = engine(local_cohomology_table(i, w))?;
            let tg = engine(local_cohomology_table(&g, w))?;
            let tl = engine(local_cohomology_table(&lex, w))?;
            Ok((!(ti.le(&tg) && tg.le(&tl))).then(|| format!("({i})")))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    check(failures.is_empty(), || format!("chain broken for {}", failures.join("; ")))?;
    Ok(format!("{} ideals, 0 violations", family.len()))
}

fn criterion_6() -> Outcome {
    let mut pool = all_strongly_stable(&ring("x,y"), 3);
    pool.extend(all_strongly_stable(&ring("x,y,z"), 3));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut picked = Vec::new();
    while picked.len() < 25 {
        let k = rng.gen_range(0..pool.len());
        picked.push(pool.swap_remove(k));
    }
    for i in &picked {
        let t = engine(local_cohomology_table(i, default_window(i)))?;
        let predicted = engine(extension_recursion(&t))?;
        let direct = engine(local_cohomology_table(&i.extend_ring(), predicted.window()))?;
        check(predicted == direct, || format!("mismatch for ({i}) at {:?}", predicted.first_difference(&direct)))?;
    }
    Ok("25 sampled ideals (n = 2, 3) match the direct tables of I*S".into())
}

fn criterion_7(family: &[MonomialIdeal]) -> Outcome {
    let mut saturated_lex = 0;
    for i in family {
        let lex = engine(lex_ideal(i))?;
        if lex.is_saturated() {
            saturated_lex += 1;
            check(engine(is_gotzmann(i))?, || format!("({i}) has saturated lex ideal but is not Gotzmann"))?;
        }
    }
    for (n, v, expected) in
        [(3usize, vec![0usize, 1], vec![1i64]), (4, vec![0, 2, 1], vec![2, 2]), (4, vec![0, 3, 1], vec![1, 3])]
    {
        let g = engine(GotzmannData::from_v(n, &v))?;
        let r = RingSpec::new(n).unwrap();
        let sat = engine(saturated_lex_ideal(&g, &r))?;
        let p = hilbert_series(&sat, 0).hilbert_polynomial;
        let want = lexlab::hilbert::QPoly::from_ints(&expected);
        check(p == want && g.polynomial() == want, || format!("v = {v:?} gave P = {p}, expected {want}"))?;
        check(sat.is_saturated() && engine(lex_ideal(&sat))? == sat, || {
            format!("v = {v:?} gave a non-lex or unsaturated ideal")
        })?;
    }
    Ok(format!("{saturated_lex} ideals with saturated lex ideal are Gotzmann; v-vector round trips give 1, 2X+2, 3X+1"))
}

fn criterion_8() -> Outcome {
    let example = ideal("x,y,z", EXAMPLE);
    let opts = GinOptions::default();
    check(engine(gin_monomial(&example, &opts))? == example, || "gin of the example differs from it".into())?;
    let g = engine(gin_monomial(&ideal("x,y,z", "x*y, x*z"), &opts))?;
    check(g == ideal("x,y,z", "x^2, x*y"), || format!("gin(xy, xz) was ({g})"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let samples: Vec<MonomialIdeal> = (0..20).map(|_| random_ideal(&mut rng, 3, 4, 3)).collect();
    use rayon::prelude::*;
    samples
        .par_iter()
        .map(|i| -> std::result::Result<(), String> {
            for seed in [0u64, 1] {
                let opts = GinOptions { trials: 3, seed, bound: 1000 };
                let a = engine(gin_monomial(&i.saturate(), &opts))?;
                let b = engine(gin_monomial(i, &opts))?;
                check(a.is_strongly_stable().is_stable() && b.is_strongly_stable().is_stable(), || {
                    format!("non-stable gin for ({i})")
                })?;
                check(a == b.saturate(), || {
                    format!("({i}), seed {seed}: gin(I^sat) = ({a}), gin(I)^sat = ({})", b.saturate())
                })?;
            }
            Ok(())
        })
        .collect::<std::result::Result<Vec<()>, String>>()?;
    Ok("example fixed, gin(xy,xz) = (x^2,xy), saturation commutes on 20 samples x 2 seeds".into())
}

fn criterion_9() -> Outcome {
    let mut cases = 0;
    for (names, n) in [("x,y", 2usize), ("x,y,z", 3)] {
        for deg in 1..=5u32 {
            let r = ring(names);
            let mut f_list: Vec<Monomial> = enumerate_monomials(n, deg, TermOrder::Lex);
            f_list.truncate(4);
            let mut last = vec![0u32; n];
            last[n - 1] = deg;
            f_list.push(Monomial::from_exponents(last));
            for f in f_list {
                let i = MonomialIdeal::new(r.clone(), vec![f.clone()]).unwrap();
                let w = default_window(&i);
                let t = engine(local_cohomology_table(&i, w))?;
                for j in w.degrees() {
                    let e = deg as i64 - n as i64 - j;
                    let expected = if e < 0 { 0 } else { hilbert_function(&i, e as u64) };
                    check(t.get(n - 1, j) == expected, || {
                        format!("({i}): h^{}_{j} = {}, expected {expected}", n - 1, t.get(n - 1, j))
                    })?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} principal ideals match dim (R/f)_(deg f - n - j) on their windows"))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let i = random_ideal(&mut rng, n, 6, 5);
        let mut values = Vec::new();
        for d in 0..=8u32 {
            let brute = enumerate_monomials(n, d, TermOrder::Lex).iter().filter(|m| !i.contains(m)).count() as u64;
            let pivot = engine(hilbert_function_with(&i, d as u64, HilbertStrategy::PivotRecursion))?;
            let incl = engine(hilbert_function_with(&i, d as u64, HilbertStrategy::InclusionExclusion))?;
            check(brute == pivot && pivot == incl, || format!("({i}) at d = {d}: {brute} / {pivot} / {incl}"))?;
            check(brute as u128 <= monomial_count(n, d as i64), || "count exceeds the monomial count".into())?;
            values.push(brute);
        }
        check(check_macaulay(&values, n).is_ok(), || format!("({i}) violates Macaulay: {values:?}"))?;
    }
    Ok("200 random ideals: pivot = inclusion-exclusion = brute force for d <= 8; Macaulay bound holds".into())
}

fn main() {
    let mut failed = 0;
    let mut report = |label: &str, limit: Option<Duration>, run: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(msg), Some(l)) if elapsed > l => Err(format!("{msg}; took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("criterion {label}: PASS ({elapsed:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {label}: FAIL ({elapsed:.2?}) {msg}");
            }
        }
    };
    let family = sweep_family();
    report("1 example lex ideal and saturations", Some(Duration::from_secs(5)), &criterion_1);
    report("2 example local cohomology", Some(Duration::from_secs(30)), &criterion_2);
    report("3 negative control", None, &criterion_3);
    report("4 exchange property vs tables sweep", Some(Duration::from_secs(900)), &|| criterion_4(&family));
    report("5 monotone chain I <= gin <= lex", None, &|| criterion_5(&family));
    report("6 extension recursion oracle", None, &criterion_6);
    report("7 Gotzmann checks", None, &|| criterion_7(&family));
    report("8 gin suite", None, &criterion_8);
    report("9 principal ideal duality", None, &criterion_9);
    report("10 Hilbert engines", Some(Duration::from_secs(300)), &criterion_10);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}

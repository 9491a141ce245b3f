//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use qcap::identities::{build, run_suite, Check, Params, Status, SuiteOptions, VerificationReport};
use qcap::motions::{covering_variants, from_minimal, to_minimal, Variant};
use qcap::partitions::{bounded_members, count, enumerate, g_by_recurrence, generating_polynomial, Family, GRecurrence};
use qcap::qseries::{gauss_binomial, q_trinomial, tr};
use qcap::{Marker, Monomial, QPoly};

type Outcome = Result<String, String>;

fn all_pass(reports: &[VerificationReport]) -> Result<usize, String> {
    match reports.iter().find(|r| r.status != Status::Pass) {
        Some(r) => Err(format!("{} {:?}: {:?} {:?}", r.id, r.params, r.status, r.discrepancy.as_ref().map(|w| w.to_string()))),
        None => Ok(reports.len()),
    }
}

fn suite(pattern: &str, params: Params) -> Result<usize, String> {
    let reports = run_suite(pattern, &SuiteOptions { params, ..SuiteOptions::default() }).map_err(|e| e.to_string())?;
    if reports.is_empty() {
        return Err(format!("nothing matched {pattern}"));
    }
    all_pass(&reports)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg.into()) }
}

fn finite_identities() -> Outcome {
    let n = suite("thm1.4-*", Params::default())?;
    let listed: [(i64, &[i64]); 4] = [
        (0, &[1]),
        (1, &[1]),
        (2, &[1, 0, 1, 1, 1, 0, 1]),
        (3, &[1, 0, 1, 1, 1, 1, 2, 1, 1, 2, 1, 0, 1]),
    ];
    for (big_n, dense) in listed {
        let ev = build("thm1.4-eq1", &Params::with_n(big_n)).map_err(|e| e.to_string())?;
        let Check::Poly { lhs, .. } = &ev.checks[0] else { return Err("unexpected check".into()) };
        ensure(lhs == &QPoly::from_dense(0, 1, dense), format!("initial value at N = {big_n}"))?;
    }
    Ok(format!("{n} reports, N in [0, 12]; initial values for N <= 3 reproduced"))
}

fn trinomial_table() -> Outcome {
    suite("table-5.1", Params::default())?;
    let listed = QPoly::from_dense(16, 3, &[1, 1, 2, 2, 3, 3, 4, 3, 3, 2, 2, 1, 1]);
    ensure(tr(7, 5, 3).shift_q(16) == listed, "q^16 Tr[7,5] differs from the listed polynomial")?;
    let class: Vec<_> = bounded_members(2, 19)
        .into_iter()
        .filter(|p| p.count_residue(2, 3) as i64 - p.count_residue(1, 3) as i64 == 2)
        .collect();
    ensure(class.len() == 28, format!("class has {} members", class.len()))?;
    Ok("13-term polynomial exact; enumeration equals all 28 listed partitions".into())
}

fn size_21_tables() -> Outcome {
    let counts = |fs: [Family; 4]| -> Result<Vec<usize>, String> {
        fs.iter().map(|f| enumerate(f, 21).map(|v| v.len()).map_err(|e| e.to_string())).collect()
    };
    let dual = counts([Family::DualC(1), Family::B(1), Family::DualC(2), Family::B(2)])?;
    let companion = counts([Family::A(0), Family::B(1), Family::A(2), Family::B(2)])?;
    ensure(dual == [7, 7, 5, 5], format!("dual counts {dual:?}"))?;
    ensure(companion == [7, 7, 5, 5], format!("companion counts {companion:?}"))?;
    suite("table-6.[23]", Params::default())?;
    Ok("counts (7, 7, 5, 5) twice; listings match up to order".into())
}

fn capparelli_counts() -> Outcome {
    const MAX_N: u32 = 60;
    for m in [1u8, 2] {
        for n in 0..=MAX_N {
            let c = count(&Family::C(m), n).map_err(|e| e.to_string())?;
            let d = count(&Family::D { m, max_part: None }, n).map_err(|e| e.to_string())?;
            ensure(c == d, format!("m = {m}, n = {n}: C = {c}, D = {d}"))?;
        }
    }
    Ok(format!("C_m(n) = D_m(n) for m in {{1, 2}}, n <= {MAX_N}"))
}

fn series_products() -> Outcome {
    const T: i64 = 150;
    const T_Z: i64 = 80;
    let mut n = 0;
    for id in ["cap1-series", "cap2-series", "cap3-series", "thm6.3-1", "thm6.3-2", "eq-6.13", "thm7.2", "dyson-7.5", "dyson-7.6"] {
        n += suite(id, Params::with_t(T))?;
    }
    for id in ["fg1", "fg2", "eq-7.6a"] {
        n += suite(id, Params::with_t(T_Z))?;
    }
    Ok(format!("{n} identities to q^{T} (z-marked to q^{T_Z})"))
}

fn outlook() -> Outcome {
    let a = suite("thm7.1", Params::default())?;
    let b = suite("thm7.3", Params::with_t(120))?;
    Ok(format!("{a} exact cases M in [0, 10]; {b} hierarchy members to q^120"))
}

fn triple_sums() -> Outcome {
    suite("thm6.[12]", Params::with_t(120))?;
    Ok("both triple sums equal their products to q^120".into())
}

fn motions() -> Outcome {
    const MAX_N: u32 = 10;
    let mut checked = 0usize;
    for (m, hat) in [(1u8, false), (2, false), (2, true)] {
        let variants = covering_variants(m, hat);
        for big_n in 0..=MAX_N {
            for p in bounded_members(m, 3 * big_n + 1) {
                let v = Variant::classify(&p, m, hat).map_err(|e| e.to_string())?;
                ensure(variants.contains(&v), format!("{p} classified outside the cover"))?;
                let (cfg, path, _) = to_minimal(&p, v, Some(big_n)).map_err(|e| format!("{p}: {e}"))?;
                let (back, _) = from_minimal(&cfg, &path).map_err(|e| format!("{p}: {e}"))?;
                ensure(back == p, format!("{p} came back as {back}"))?;
                checked += 1;
            }
        }
    }
    let n = suite("motions-*", Params::default())?;
    Ok(format!("{checked} round trips for N <= {MAX_N}; {n} class sums equal G"))
}

fn ring_axioms() -> Result<(), String> {
    let mono = (-6i64..12, -2i32..3, -1i32..2)
        .prop_map(|(h, a, t)| Monomial::q_half(h).times_marker(Marker::A, a).times_marker(Marker::T, t));
    let poly = prop::collection::vec((mono, -30i64..30), 0..7)
        .prop_map(|ts| QPoly::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))));
    let mut runner = TestRunner::new(Config { cases: 256, ..Config::default() });
    runner
        .run(&(poly.clone(), poly.clone(), poly), |(p, r, s)| {
            prop_assert_eq!(&p + &r, &r + &p);
            prop_assert_eq!(&p * &r, &r * &p);
            prop_assert_eq!((&p * &r) * &s, &p * (&r * &s));
            prop_assert_eq!(&p * (&r + &s), &p * &r + &p * &s);
            let copy = p.clone();
            prop_assert!((&p - &copy).is_zero());
            Ok(())
        })
        .map_err(|e| format!("ring axioms: {e}"))
}

fn integer_trinomial(n: usize, a: i64) -> BigInt {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(0); row.len() + 2];
        for (i, c) in row.iter().enumerate() {
            for k in 0..3 {
                next[i + k] += c;
            }
        }
        row = next;
    }
    let idx = a + n as i64;
    if idx < 0 || idx as usize >= row.len() { BigInt::from(0) } else { row[idx as usize].clone() }
}

fn properties() -> Outcome {
    ring_axioms()?;
    for m in 0..=12 {
        for n in 0..=12 {
            let rhs = gauss_binomial(n + m - 1, m, 1) + gauss_binomial(n + m - 1, m - 1, 1).shift_q(n);
            let holds = gauss_binomial(n + m, m, 1) == rhs;
            ensure(holds != ((m, n) == (0, 0)), format!("binomial recurrence at m = {m}, n = {n}"))?;
        }
    }
    let q = QPoly::q_pow;
    for n in 1..=12i64 {
        for a in -n - 1..=n + 1 {
            let rhs = (q(0) + q(n)) * tr(n, a, 1)
                + tr(n - 1, a + 2, 1).shift_q(n + a + 1)
                + tr(n - 1, a - 2, 1).shift_q(n - a + 1)
                + tr(n - 1, a, 1).shift_q(2 * n)
                + (q(0) - q(n - 1)).shift_q(2 * n - 1) * tr(n - 2, a, 1);
            ensure(tr(n + 1, a, 1) == rhs, format!("trinomial recurrence at N = {n}, a = {a}"))?;
        }
    }
    for n in 0..=10i64 {
        for a in -n..=n {
            let at_one = q_trinomial(n, a, a, 1).eval_q_one().map_err(|e| e.to_string())?;
            ensure(at_one == QPoly::constant(integer_trinomial(n as usize, a)), format!("trinomial at q = 1, N = {n}, a = {a}"))?;
        }
    }
    const MAX_BOUND: i64 = 40;
    let mut compared = 0;
    for m in [1u8, 2] {
        for bound in 0..=MAX_BOUND {
            let direct = generating_polynomial(m, bound).map_err(|e| e.to_string())?;
            let mut recs = vec![GRecurrence::Triple];
            if bound % 3 == 1 {
                recs.extend([GRecurrence::Order3, GRecurrence::Order4]);
            }
            if bound % 3 == 0 {
                recs.push(GRecurrence::Mod3);
            }
            for rec in recs {
                let g = g_by_recurrence(m, bound, rec).map_err(|e| e.to_string())?;
                ensure(g == direct, format!("{rec:?} for m = {m}, bound {bound}"))?;
                compared += 1;
            }
        }
    }
    Ok(format!("ring axioms (256 cases), binomial and trinomial laws, {compared} G-recurrence comparisons up to bound {MAX_BOUND}"))
}

fn typo_resolutions() -> Outcome {
    let mut lines = Vec::new();
    for id in ["typo-single-sum-exponent", "typo-missing-offset", "typo-delta-subscript", "typo-plus-two-placement"] {
        let reports = run_suite(id, &SuiteOptions::default()).map_err(|e| e.to_string())?;
        all_pass(&reports)?;
        // Readings that match the oracle at every parameter point.
        let mut always: Option<BTreeSet<String>> = None;
        let mut printed: BTreeMap<String, bool> = BTreeMap::new();
        for r in &reports {
            let here: BTreeSet<String> = r.readings.iter().filter(|v| v.matches).map(|v| v.name.clone()).collect();
            for v in &r.readings {
                printed.insert(v.name.clone(), v.printed);
            }
            always = Some(match always {
                None => here,
                Some(prev) => prev.intersection(&here).cloned().collect(),
            });
        }
        let always = always.unwrap_or_default();
        ensure(!always.is_empty(), format!("{id}: no reading matches at every point"))?;
        let printed_ok = always.iter().any(|n| printed.get(n) == Some(&true));
        let verdict = if printed_ok { "printed form holds" } else { "printed form fails" };
        lines.push(format!("{id}: {verdict}; holds: {}", always.into_iter().collect::<Vec<_>>().join(" | ")));
    }
    Ok(lines.join("; "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("finite identities, exact for N <= 12", finite_identities),
        ("trinomial worked example", trinomial_table),
        ("size 21 listings for the dual and companion families", size_21_tables),
        ("Capparelli count equalities", capparelli_counts),
        ("series-product identities", series_products),
        ("outlook identities", outlook),
        ("triple-sum identities", triple_sums),
        ("motion bijection and class sums", motions),
        ("property suites", properties),
        ("misprint resolutions", typo_resolutions),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2} s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

//! The catalog and the verification engine.

use std::collections::{BTreeMap, HashSet};
use std::time::Duration;

use proptest::prelude::*;
use qcap::identities::{
    build, judge, registry, run_suite, summarize, verify, Check, Evidence, IdentitySpec, Kind, Params, Status,
    SuiteOptions, Witness,
};
use qcap::{Error, Monomial, QPoly};

fn smallest(spec: &IdentitySpec) -> Params {
    let mut p = Params::default();
    if let Some(r) = spec.range {
        match r.axis {
            qcap::identities::Axis::N => p.n = Some(r.lo),
            qcap::identities::Axis::M => p.big_m = Some(r.lo),
            qcap::identities::Axis::Nu => p.nu = Some(r.lo),
        }
    }
    p
}

#[test]
fn catalog_shape() {
    let reg = registry();
    assert!(reg.len() >= 40, "{} entries", reg.len());
    let mut ids = HashSet::new();
    for s in reg {
        assert!(!s.anchor.trim().is_empty(), "{}", s.id);
        assert!(ids.insert(s.id), "duplicate {}", s.id);
        if let Some(r) = s.range {
            assert!(r.lo <= r.hi, "{}", s.id);
        }
        if s.kind == Kind::TruncatedSeries {
            assert!(s.truncation.is_some(), "{}", s.id);
        }
    }
}

#[test]
fn every_entry_passes_over_its_declared_range() {
    let reports = run_suite("*", &SuiteOptions::default()).unwrap();
    let failing: Vec<_> = reports.iter().filter(|r| r.status != Status::Pass).collect();
    assert!(failing.is_empty(), "{failing:#?}");
    let expected: usize = registry().iter().map(|s| s.points().len()).sum();
    assert_eq!(reports.len(), expected);
}

#[test]
fn every_entry_passes_at_its_smallest_parameter() {
    for spec in registry() {
        let r = verify(spec.id, &smallest(spec)).unwrap();
        assert_eq!(r.status, Status::Pass, "{}: {:?}", spec.id, r.discrepancy);
    }
}

#[test]
fn truncated_entries_pass_at_half_order() {
    for spec in registry() {
        let Some(t) = spec.truncation else { continue };
        let mut p = smallest(spec);
        for order in [t.default, t.default / 2] {
            p.t = Some(order);
            let r = verify(spec.id, &p).unwrap();
            assert_eq!(r.status, Status::Pass, "{} at T={order}: {:?}", spec.id, r.discrepancy);
        }
    }
}

fn first_poly(ev: &Evidence) -> (&QPoly, &QPoly) {
    match &ev.checks[0] {
        Check::Poly { lhs, rhs, .. } => (lhs, rhs),
        Check::Listing { .. } => panic!("expected a polynomial check"),
    }
}

#[test]
fn small_cases_of_the_first_finite_identity() {
    let ev = build("thm1.4-eq1", &Params::with_n(2)).unwrap();
    let (lhs, rhs) = first_poly(&ev);
    let want = QPoly::from_dense(0, 1, &[1, 0, 1, 1, 1, 0, 1]);
    assert_eq!(lhs, &want);
    assert_eq!(rhs, &want);
    let ev = build("thm1.4-eq1", &Params::with_n(0)).unwrap();
    assert_eq!(first_poly(&ev).0, &QPoly::one());
    let r = verify("cap1-series", &Params::with_t(40)).unwrap();
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn finite_identity_approaches_the_infinite_one() {
    const ORDER: i64 = 24;
    let finite = build("thm1.4-eq1", &Params::with_n(12)).unwrap();
    let infinite = build("cap1-series", &Params::with_t(ORDER)).unwrap();
    let (poly, _) = first_poly(&finite);
    let (_, product) = first_poly(&infinite);
    assert!(poly.truncate(ORDER).equals(product));
}

#[test]
fn suite_selection_and_ordering() {
    assert!(run_suite("nonexistent-*", &SuiteOptions::default()).unwrap().is_empty());
    let reports = run_suite("thm1.4-*", &SuiteOptions::default()).unwrap();
    assert_eq!(reports.len(), 3 * 13);
    assert_eq!(summarize(&reports), (39, 0, 0));
    let keys: Vec<_> = reports.iter().map(|r| (r.id.clone(), r.params["N"])).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let tables = run_suite("table-*", &SuiteOptions { jobs: Some(1), ..SuiteOptions::default() }).unwrap();
    assert_eq!(tables.len(), 3);
    assert!(tables.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn fixed_parameters_restrict_the_sweep() {
    let opts = SuiteOptions { params: Params::with_n(3), ..SuiteOptions::default() };
    let reports = run_suite("thm1.4-eq2", &opts).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].params["N"], 3);
}

#[test]
fn global_order_only_moves_entries_that_follow_it() {
    let opts = SuiteOptions { global_t: Some(30), ..SuiteOptions::default() };
    let cap = run_suite("cap1-series", &opts).unwrap();
    assert_eq!(cap[0].params["T"], 30);
    let pinned = run_suite("thm6.1", &opts).unwrap();
    assert_eq!(pinned[0].params["T"], 120);
}

#[test]
fn overruns_are_skipped_not_failed() {
    let opts = SuiteOptions {
        params: Params::with_t(600),
        timeout: Some(Duration::from_nanos(1)),
        ..SuiteOptions::default()
    };
    let r = run_suite("thm6.3-1", &opts).unwrap();
    assert_eq!(r[0].status, Status::Skipped);
    assert!(r[0].notes[0].contains("timed out"));
}

#[test]
fn bad_requests_are_errors() {
    assert!(matches!(verify("no-such-id", &Params::default()), Err(Error::UnknownIdentity(_))));
    assert!(matches!(verify("thm1.4-eq1", &Params::with_n(13)), Err(Error::ParamOutOfRange { .. })));
    assert!(verify("thm1.4-eq1", &Params::default()).is_err());
    assert!(matches!(verify("thm6.1", &Params::with_t(100_000)), Err(Error::ParamOutOfRange { .. })));
}

#[test]
fn parity_offsets_are_a_structured_failure() {
    let ev = Evidence::new().check(Check::half_integer("offset", QPoly::term(1, Monomial::q_half(1)), QPoly::q_pow(1)));
    let r = judge("demo", BTreeMap::new(), &ev, Duration::ZERO);
    assert_eq!(r.status, Status::Fail);
    assert!(matches!(r.discrepancy, Some(Witness::ParityOffset { .. })));
}

/// Entries whose first check is a polynomial comparison, with cheap parameters.
fn corruptible() -> Vec<(&'static str, Params, Evidence)> {
    registry()
        .iter()
        .filter_map(|spec| {
            let mut p = smallest(spec);
            if let Some(r) = spec.range {
                // A point with nontrivial polynomials, still cheap.
                let v = (r.lo + 2).min(r.hi);
                p = Params { n: p.n.map(|_| v), big_m: p.big_m.map(|_| v), nu: p.nu, t: None };
            }
            if let Some(t) = spec.truncation {
                p.t = Some(t.default.min(30));
            }
            let ev = build(spec.id, &p).ok()?;
            matches!(ev.checks.first(), Some(Check::Poly { .. })).then_some((spec.id, p, ev))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn corrupting_one_coefficient_is_caught_at_that_monomial(pick in any::<prop::sample::Index>(), at in any::<prop::sample::Index>(), bump in 1i64..4) {
        let entries = corruptible();
        let (id, _, ev) = &entries[pick.index(entries.len())];
        let mut ev = ev.clone();
        let Check::Poly { rhs, label, .. } = &mut ev.checks[0] else { unreachable!() };
        let label = label.clone();
        let terms: Vec<Monomial> = rhs.terms().map(|(m, _)| *m).collect();
        prop_assume!(!terms.is_empty());
        let target = terms[at.index(terms.len())];
        *rhs = &*rhs + &QPoly::term(bump, target);
        let r = judge(id, BTreeMap::new(), &ev, Duration::ZERO);
        prop_assert_eq!(r.status, Status::Fail);
        match r.discrepancy {
            Some(Witness::Coefficient { check, at }) => {
                prop_assert_eq!(check, label);
                prop_assert_eq!(at.monomial, target);
                prop_assert_eq!(at.rhs - at.lhs, bump.into());
            }
            other => prop_assert!(false, "{id}: unexpected witness {other:?}"),
        }
    }
}

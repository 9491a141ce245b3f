//! Partition families against their generating functions and recurrences.

use qcap::identities::{verify, Params, Status};
use qcap::partitions::{
    count, enumerate, g1_closed_form, g1_mod3_closed_form, g2_closed_form, g2_mod3_closed_form, g_by_recurrence,
    generating_polynomial, Family, GRecurrence, Partition,
};

/// Largest bound on parts for the recurrence comparisons.
const MAX_BOUND: i64 = 40;

#[test]
fn capparelli_counts_agree_up_to_sixty() {
    for m in [1u8, 2] {
        for n in 0..=60 {
            let c = count(&Family::C(m), n).unwrap();
            let d = count(&Family::D { m, max_part: None }, n).unwrap();
            assert_eq!(c, d, "m={m} n={n}");
        }
    }
}

#[test]
fn recurrences_reproduce_enumeration_with_markers() {
    for m in [1u8, 2] {
        for bound in -2..=MAX_BOUND {
            let direct = generating_polynomial(m, bound).unwrap();
            assert_eq!(g_by_recurrence(m, bound, GRecurrence::Triple).unwrap(), direct, "triple m={m} N={bound}");
            if bound >= 1 && bound % 3 == 1 {
                for rec in [GRecurrence::Order3, GRecurrence::Order4] {
                    assert_eq!(g_by_recurrence(m, bound, rec).unwrap(), direct, "{rec:?} m={m} N={bound}");
                }
            }
            if bound >= 0 && bound % 3 == 0 {
                assert_eq!(g_by_recurrence(m, bound, GRecurrence::Mod3).unwrap(), direct, "mod3 m={m} N={bound}");
            }
        }
    }
}

#[test]
fn closed_forms_reproduce_enumeration_with_markers() {
    for n in 0..=(MAX_BOUND - 1) / 3 {
        assert_eq!(g1_closed_form(n), generating_polynomial(1, 3 * n + 1).unwrap(), "G1 N={n}");
        assert_eq!(g2_closed_form(n), generating_polynomial(2, 3 * n + 1).unwrap(), "G2 N={n}");
    }
    for n in 0..=MAX_BOUND / 3 {
        assert_eq!(g1_mod3_closed_form(n), generating_polynomial(1, 3 * n).unwrap(), "G1 3N, N={n}");
        assert_eq!(g2_mod3_closed_form(n), generating_polynomial(2, 3 * n).unwrap(), "G2 3N, N={n}");
    }
}

#[test]
fn wrong_residues_are_rejected() {
    assert!(g_by_recurrence(1, 5, GRecurrence::Order3).is_err());
    assert!(g_by_recurrence(2, 7, GRecurrence::Mod3).is_err());
}

#[test]
fn generating_functions_and_dual_counts_to_their_stated_orders() {
    let at = |id: &str, t: i64| {
        let r = verify(id, &Params::with_t(t)).unwrap();
        assert_eq!(r.status, Status::Pass, "{id} at T={t}: {:?}", r.discrepancy);
    };
    for id in ["gf-kr1", "gf-kr2", "gf-kagan"] {
        at(id, 60);
    }
    at("qgauss-parity", 100);
    at("thm6.4", 50);
    at("thm6.5", 50);
}

fn parts(list: &[&[u32]]) -> Vec<Partition> {
    list.iter().map(|p| Partition::new(p.to_vec()).unwrap()).collect()
}

#[test]
fn size_twenty_one_listings() {
    let sorted = |mut v: Vec<Partition>| {
        v.sort();
        v
    };
    let b1 = parts(&[&[21], &[18, 3], &[15, 6], &[12, 9], &[12, 6, 3], &[9, 8, 4], &[8, 6, 4, 3]]);
    let b2 = parts(&[&[21], &[18, 3], &[15, 6], &[12, 9], &[12, 6, 3]]);
    let a0 = parts(&[
        &[13, 7, 1],
        &[12, 7, 2],
        &[9, 7, 5],
        &[9, 6, 3, 1, 1, 1],
        &[8, 7, 6],
        &[8, 6, 4, 1, 1, 1],
        &[5, 5, 5, 3, 2, 1],
    ]);
    let a2 = parts(&[&[14, 7], &[11, 7, 3], &[10, 7, 4], &[7, 7, 7], &[7, 6, 5, 2, 1]]);
    for (family, want) in [(Family::B(1), b1), (Family::B(2), b2), (Family::A(0), a0), (Family::A(2), a2)] {
        assert_eq!(sorted(enumerate(&family, 21).unwrap()), sorted(want), "{family}");
    }
}

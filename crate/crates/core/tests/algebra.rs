//! Ring axioms and serialization of `QPoly`, plus the q-binomial and
//! q-trinomial laws.

use num_bigint::BigInt;
use proptest::prelude::*;
use qcap::partitions::{counting_series, Family};
use qcap::qseries::{gauss_binomial, poch_inv, product, q_trinomial, tr, ProductFactorSpec};
use qcap::{Marker, Monomial, QPoly};

fn monomial() -> impl Strategy<Value = Monomial> {
    (-8i64..16, -2i32..3, -2i32..3, -1i32..2).prop_map(|(h, a, b, t)| {
        Monomial::q_half(h).times_marker(Marker::A, a).times_marker(Marker::B, b).times_marker(Marker::T, t)
    })
}

fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((monomial(), -40i64..40), 0..8)
        .prop_map(|ts| QPoly::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
}

/// Nonnegative integer powers of `q` only, for truncation laws.
fn series() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0i64..25, -9i64..9), 0..10)
        .prop_map(|ts| QPoly::from_terms(ts.into_iter().map(|(e, c)| (Monomial::q(e), BigInt::from(c)))))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(p in poly(), r in poly(), s in poly()) {
        prop_assert_eq!(&p + &r, &r + &p);
        prop_assert_eq!((&p + &r) + &s, &p + (&r + &s));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(p in poly(), r in poly(), s in poly()) {
        prop_assert_eq!(&p * &r, &r * &p);
        prop_assert_eq!((&p * &r) * &s, &p * (&r * &s));
    }

    #[test]
    fn multiplication_distributes(p in poly(), r in poly(), s in poly()) {
        prop_assert_eq!(&p * (&r + &s), &p * &r + &p * &s);
    }

    #[test]
    fn identities_and_inverses(p in poly()) {
        prop_assert_eq!(&p + QPoly::zero(), p.clone());
        prop_assert_eq!(&p * QPoly::one(), p.clone());
        let copy = p.clone();
        prop_assert!((&p - &copy).is_zero());
        prop_assert!((&p * QPoly::zero()).is_zero());
    }

    #[test]
    fn serde_roundtrip(p in poly(), t in proptest::option::of(0i64..20)) {
        let p = match t { Some(t) => p.truncate(t), None => p };
        let json = serde_json::to_string(&p).unwrap();
        let back: QPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn truncation_commutes_with_the_ring_operations(p in series(), r in series(), t in 0i64..30) {
        prop_assert!((p.truncate(t) * r.truncate(t)).equals(&(&p * &r).truncate(t)));
        prop_assert!((p.truncate(t) + r.truncate(t)).equals(&(&p + &r).truncate(t)));
    }

    #[test]
    fn inversion_is_an_involution(p in poly()) {
        prop_assert_eq!(p.substitute_q_inverse().unwrap().substitute_q_inverse().unwrap(), p);
    }

    #[test]
    fn witness_is_the_perturbed_monomial(p in poly(), m in monomial(), c in 1i64..5) {
        let bumped = &p + &QPoly::term(c, m);
        let d = p.compare(&bumped).expect("sides differ");
        prop_assert_eq!(d.monomial, m);
        prop_assert_eq!(d.rhs - d.lhs, BigInt::from(c));
    }
}

#[test]
fn binomial_recurrence_holds_off_the_origin_and_fails_at_it() {
    // [n+m, m] = [n+m-1, m] + q^n [n+m-1, m-1]
    let rec = |m: i64, n: i64| gauss_binomial(n + m - 1, m, 1) + gauss_binomial(n + m - 1, m - 1, 1).shift_q(n);
    for m in 0..=15 {
        for n in 0..=15 {
            let lhs = gauss_binomial(n + m, m, 1);
            if (m, n) == (0, 0) {
                assert_eq!(lhs, QPoly::one());
                assert!(rec(0, 0).is_zero(), "right side vanishes at the origin");
            } else {
                assert_eq!(lhs, rec(m, n), "m={m} n={n}");
            }
        }
    }
}

#[test]
fn binomial_symmetry_and_inversion() {
    for m in 0..=20 {
        for n in 0..=20 {
            assert_eq!(gauss_binomial(n + m, m, 1), gauss_binomial(n + m, n, 1));
        }
    }
    for m in 0..=10 {
        for n in 0..=10 {
            let b = gauss_binomial(n + m, m, 1);
            assert_eq!(b.substitute_q_inverse().unwrap(), b.shift_q(-m * n), "m={m} n={n}");
        }
    }
}

/// Partitions of each size up to `t` with parts at most `m`, by direct counting.
fn bounded_parts_counts(m: i64, t: i64) -> QPoly {
    let t = t as usize;
    let mut ways = vec![0i64; t + 1];
    ways[0] = 1;
    for part in 1..=m as usize {
        for s in part..=t {
            ways[s] += ways[s - part];
        }
    }
    QPoly::from_dense(0, 1, &ways).truncate(t as i64)
}

#[test]
fn binomials_tend_to_reciprocal_pochhammers() {
    const T: i64 = 30;
    for m in 0..=8 {
        let oracle = bounded_parts_counts(m, T);
        assert!(poch_inv(1, 1, 1, Some(m as u32), T).unwrap().equals(&oracle));
        for n in [T + m, T + m + 3] {
            assert!(gauss_binomial(n, m, 1).truncate(T).equals(&oracle), "m={m} n={n}");
        }
    }
}

#[test]
fn products_match_small_expansions() {
    let cube = product(&[ProductFactorSpec::new(-1, 3, 3)], Some(9)).unwrap();
    assert!(cube.equals(&QPoly::from_dense(0, 3, &[1, 1, 1, 2]).truncate(9)));
    assert!(product(&[], Some(5)).unwrap().equals(&QPoly::one()));
    let cap = product(
        &[ProductFactorSpec::new(-1, 2, 6), ProductFactorSpec::new(-1, 4, 6), ProductFactorSpec::new(-1, 3, 3)],
        Some(6),
    )
    .unwrap();
    // 5 = 2 + 3 is the only admissible partition of 5, so its coefficient is 1.
    assert!(cap.equals(&QPoly::from_dense(0, 1, &[1, 0, 1, 1, 1, 1, 2])));
    assert!(cap.equals(&counting_series(&Family::C(1), 6).unwrap()));
}

/// Coefficient of `x^a` in `(1 + x + x^2)^n`, with `x^0` at index `n`.
fn integer_trinomials(n: usize) -> Vec<BigInt> {
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
    row
}

#[test]
fn trinomials_at_q_one_are_integer_trinomials() {
    for n in 0..=10i64 {
        let row = integer_trinomials(n as usize);
        for a in -n - 1..=n + 1 {
            let want = if a.abs() <= n { row[(a + n) as usize].clone() } else { BigInt::from(0) };
            let at_one = q_trinomial(n, a, a, 1).eval_q_one().unwrap();
            assert!(at_one.equals(&QPoly::constant(want)), "n={n} a={a}");
        }
    }
}

#[test]
fn trinomial_recurrence_for_every_lower_index() {
    let q = |e: i64| QPoly::q_pow(e);
    for n in 1..=12i64 {
        for a in -n - 1..=n + 1 {
            let rhs = (q(0) + q(n)) * tr(n, a, 1)
                + tr(n - 1, a + 2, 1).shift_q(n + a + 1)
                + tr(n - 1, a - 2, 1).shift_q(n - a + 1)
                + tr(n - 1, a, 1).shift_q(2 * n)
                + (q(0) - q(n - 1)).shift_q(2 * n - 1) * tr(n - 2, a, 1);
            assert_eq!(tr(n + 1, a, 1), rhs, "N={n} a={a}");
        }
    }
}

#[test]
fn trinomials_are_symmetric_in_the_lower_index() {
    for n in 0..=10 {
        for a in 0..=n {
            assert_eq!(tr(n, a, 1), tr(n, -a, 1));
        }
    }
}

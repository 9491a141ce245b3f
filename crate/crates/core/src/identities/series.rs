//! Truncated q-series entries: the infinite sum-product identities, their
//! partition counterparts, and the exact outlook polynomial identity.

use super::sums::{qf, qp};
use super::trinomial::parse_list;
use super::{Args, Check, Evidence};
use crate::error::Result;
use crate::partitions::{counting_series, enumerate, Family};
use crate::qpoly::{Marker, Monomial, QPoly};
use crate::qseries::{
    gauss_binomial, poch, poch_inv, pochhammer, product, t0_truncated, ProductFactorSpec as F,
};

/// Largest size handed to the partition enumerator by the series entries.
const ENUMERATION_CAP: i64 = 80;

/// `q^shift * prod(num) / prod((q^e; q^step)_n)`, truncated at `q^t`.
fn term(shift: i64, num: &[QPoly], den: &[(i64, i64, u32)], t: i64) -> Result<QPoly> {
    if shift > t {
        return Ok(QPoly::zero().truncate(t));
    }
    let room = t - shift;
    let mut acc = QPoly::one().truncate(room);
    for p in num {
        acc = (acc * p).truncate(room);
    }
    for &(e, step, n) in den {
        acc = (acc * poch_inv(1, e, step, Some(n), room)?).truncate(room);
    }
    Ok(acc.shift_q(shift).truncate(t))
}

fn isqrt(x: i64) -> i64 {
    (x.max(0) as f64).sqrt() as i64 + 1
}

/// `sum_{m,n} q^{Q(m,n) + em*m + en*n + e0} / ((q;q)_m (q^3;q^3)_n)`.
fn double_series(em: i64, en: i64, e0: i64, t: i64) -> Result<QPoly> {
    let mut acc = QPoly::zero().truncate(t);
    let r = isqrt(t) + 2;
    for m in 0..=r {
        for n in 0..=r {
            let e = qf(m, n) + em * m + en * n + e0;
            if e <= t {
                acc += term(e, &[], &[(1, 1, m as u32), (3, 3, n as u32)], t)?;
            }
        }
    }
    Ok(acc)
}

fn kr1(t: i64) -> Result<QPoly> {
    double_series(0, 0, 0, t)
}

fn kr2(t: i64) -> Result<QPoly> {
    Ok(double_series(1, 0, 0, t)? + double_series(4, 6, 1, t)?)
}

fn kagan(t: i64) -> Result<QPoly> {
    Ok(double_series(1, 3, 0, t)? + double_series(3, 6, 1, t)?)
}

fn d_family(m: u8) -> Family {
    Family::D { m, max_part: None }
}

/// `(-q^a, -q^b; q^c)_inf (-q^3; q^3)_inf`.
fn capparelli_product(a: i64, b: i64, c: i64, t: i64) -> Result<QPoly> {
    product(&[F::new(-1, a, c), F::new(-1, b, c), F::new(-1, 3, 3)], Some(t))
}

fn enumerated(family: Family, t: i64) -> Result<QPoly> {
    counting_series(&family, t.min(ENUMERATION_CAP) as u32)
}

pub(crate) fn gf_kr1(a: Args) -> Result<Evidence> {
    Ok(Evidence::new().poly("D_1 counts = double sum", enumerated(d_family(1), a.t)?, kr1(a.t)?))
}

pub(crate) fn gf_kr2(a: Args) -> Result<Evidence> {
    Ok(Evidence::new().poly("D_2 counts = double sums", enumerated(d_family(2), a.t)?, kr2(a.t)?))
}

pub(crate) fn gf_kagan(a: Args) -> Result<Evidence> {
    Ok(Evidence::new()
        .poly("D_2 counts = double sums", enumerated(d_family(2), a.t)?, kagan(a.t)?)
        .poly("both representations agree", kagan(a.t)?, kr2(a.t)?))
}

pub(crate) fn cap1(a: Args) -> Result<Evidence> {
    let rhs = capparelli_product(2, 4, 6, a.t)?;
    Ok(Evidence::new()
        .poly("double sum = product", kr1(a.t)?, rhs.clone())
        .poly("C_1 counts = product", enumerated(Family::C(1), a.t)?, rhs))
}

pub(crate) fn cap2(a: Args) -> Result<Evidence> {
    let rhs = capparelli_product(1, 5, 6, a.t)?;
    Ok(Evidence::new()
        .poly("double sums = product", kagan(a.t)?, rhs.clone())
        .poly("C_2 counts = product", enumerated(Family::C(2), a.t)?, rhs))
}

pub(crate) fn cap3(a: Args) -> Result<Evidence> {
    let rhs = capparelli_product(1, 5, 6, a.t)?;
    Ok(Evidence::new()
        .poly("double sums = product", kr2(a.t)?, rhs.clone())
        .poly("C_2 counts = product", enumerated(Family::C(2), a.t)?, rhs))
}

pub(crate) fn qgauss_parity(a: Args) -> Result<Evidence> {
    let t = a.t;
    let rhs = product(&[F::new(-1, 1, 1)], Some(t))?;
    let reciprocal = product(&[F::new(1, 1, 2).inverted()], Some(t))?;
    let mut ev = Evidence::new().poly("1/(q;q^2) = (-q;q)", reciprocal, rhs.clone());
    for parity in 0..2 {
        let mut lhs = QPoly::zero().truncate(t);
        let mut k = parity;
        while k * (k - 1) / 2 <= t {
            lhs += term(k * (k - 1) / 2, &[], &[(1, 1, k as u32)], t)?;
            k += 2;
        }
        let label = if parity == 0 { "even t" } else { "odd t" };
        ev = ev.poly(label, lhs, rhs.clone());
    }
    Ok(ev)
}

/// Shared body of the two triple sums: for each `N`, the inner `(M, m)`
/// sum over the given parity.
fn triple_sum(t: i64, odd: bool) -> Result<QPoly> {
    let mut acc = QPoly::zero().truncate(t);
    let mut big_n = 0;
    while 3 * big_n * big_n <= 2 * t + 3 {
        for bm in 0..=big_n + 1 {
            for m in 0..=(3 * bm + 2) {
                let parity = (big_n + bm + m) % 2 == 1;
                if parity != odd {
                    continue;
                }
                let base = 3 * big_n * big_n + 3 * bm * bm + m * m;
                let pieces: Vec<(i64, QPoly)> = if odd {
                    vec![
                        (
                            base + 6 * bm - 3,
                            gauss_binomial(3 * bm, m, 1)
                                * gauss_binomial((big_n + 3 * bm - m - 1) / 2, 2 * bm, 3),
                        ),
                        (
                            base + 6 * bm - 1,
                            gauss_binomial(3 * bm + 2, m, 1)
                                * gauss_binomial((big_n + 3 * bm - m + 1) / 2, 2 * bm + 1, 3),
                        ),
                    ]
                } else {
                    vec![(
                        base,
                        gauss_binomial(3 * bm, m, 1) * gauss_binomial((big_n + 3 * bm - m) / 2, 2 * bm, 3),
                    )]
                };
                for (h, b) in pieces {
                    if b.is_zero() || h / 2 > t {
                        continue;
                    }
                    acc += term(h / 2, &[b], &[(3, 3, big_n as u32)], t)?;
                }
            }
        }
        big_n += 1;
    }
    Ok(acc)
}

pub(crate) fn thm61(a: Args) -> Result<Evidence> {
    let rhs = product(&[F::new(-1, 8, 18), F::new(-1, 10, 18), F::new(1, 18, 18), F::new(1, 3, 3).inverted()], Some(a.t))?;
    Ok(Evidence::new().poly("triple sum = product", triple_sum(a.t, false)?, rhs))
}

pub(crate) fn thm62(a: Args) -> Result<Evidence> {
    let rhs = product(&[F::new(-1, 1, 18), F::new(-1, 17, 18), F::new(1, 18, 18), F::new(1, 3, 3).inverted()], Some(a.t))?;
    Ok(Evidence::new().poly("triple sums = product", triple_sum(a.t, true)?, rhs))
}

/// The large-`N` value used for the limit entry.
const AB_LIMIT_N: i64 = 30;

pub(crate) fn ab_limit(a: Args) -> Result<Evidence> {
    let t = a.t;
    let rhs = product(&[F::new(-1, 1, 2), F::new(1, 2, 2).inverted()], Some(t))?;
    let mut ev = Evidence::new().note(format!("N = {AB_LIMIT_N}"));
    for k in 0..=3 {
        let lhs = t0_truncated(2 * AB_LIMIT_N, k, 2, t) + t0_truncated(2 * AB_LIMIT_N + 1, k, 2, t);
        ev = ev.poly(format!("a = {k}"), lhs, rhs.clone());
    }
    Ok(ev)
}

/// `(-q; q^2)_n`.
fn neg_odd(n: i64) -> QPoly {
    poch(-1, 1, 2, n as u32)
}

fn slater1(t: i64) -> Result<QPoly> {
    let mut acc = QPoly::zero().truncate(t);
    let mut n = 0;
    while 3 * n * n <= t {
        acc += term(3 * n * n, &[neg_odd(3 * n)], &[(6, 6, 2 * n as u32)], t)?;
        n += 1;
    }
    Ok(acc)
}

fn slater2(t: i64) -> Result<QPoly> {
    let mut acc = QPoly::zero().truncate(t);
    let mut n = 0;
    while 3 * n * n <= t {
        acc += term(3 * n * n + 6 * n, &[neg_odd(3 * n)], &[(6, 6, 2 * n as u32)], t)?;
        acc += term(3 * n * n + 6 * n + 2, &[neg_odd(3 * n + 2)], &[(6, 6, 2 * n as u32 + 1)], t)?;
        n += 1;
    }
    Ok(acc)
}

/// `sum q^{3n^2 + lin n} (-q, -q^5; q^6)_n / ((q^3; q^6)_{n + off} (q^12; q^12)_n)`.
fn slater_rewritten(lin: i64, off: u32, t: i64) -> Result<QPoly> {
    let mut acc = QPoly::zero().truncate(t);
    let mut n = 0;
    while 3 * n * n <= t {
        let num = [poch(-1, 1, 6, n as u32), poch(-1, 5, 6, n as u32)];
        acc += term(3 * n * n + lin * n, &num, &[(3, 6, n as u32 + off), (12, 12, n as u32)], t)?;
        n += 1;
    }
    Ok(acc)
}

pub(crate) fn slater_first(a: Args) -> Result<Evidence> {
    let t = a.t;
    let lhs = slater1(t)?;
    Ok(Evidence::new()
        .poly("sum = product", lhs.clone(), capparelli_product(4, 8, 12, t)?)
        .poly("sum = rewritten sum", lhs, slater_rewritten(0, 0, t)?))
}

pub(crate) fn slater_second(a: Args) -> Result<Evidence> {
    let t = a.t;
    let lhs = slater2(t)?;
    let rewritten = (qp(0) + qp(2)) * slater_rewritten(6, 1, t)?;
    Ok(Evidence::new()
        .poly("sums = product", lhs.clone(), capparelli_product(2, 10, 12, t)?)
        .poly("sums = (1+q^2) times rewritten sum", lhs, rewritten))
}

pub(crate) fn slater_divided(a: Args) -> Result<Evidence> {
    let t = a.t;
    Ok(Evidence::new().poly("sum = product", slater_rewritten(6, 1, t)?, capparelli_product(10, 14, 12, t)?))
}

fn zq(e: i64, z: i32) -> Monomial {
    Monomial::q(e).times_marker(Marker::Z, z)
}

/// `sum q^{n^2 + lin n} (zq, q/z; q^2)_n / ((q; q^2)_{n + off} (q^4; q^4)_n)`.
fn fg_sum(lin: i64, off: u32, t: i64) -> Result<QPoly> {
    let mut acc = QPoly::zero().truncate(t);
    let mut n = 0;
    while n * n <= t {
        let nu = n as u32;
        let num = [pochhammer(1, zq(1, 1), 2, nu), pochhammer(1, zq(1, -1), 2, nu)];
        acc += term(n * n + lin * n, &num, &[(1, 2, nu + off), (4, 4, nu)], t)?;
        n += 1;
    }
    Ok(acc)
}

fn fg_product(e: i64, t: i64) -> Result<QPoly> {
    product(
        &[F::new(-1, 1, 1), F::new(1, e, 4).with_marker(Marker::Z, 1), F::new(1, e, 4).with_marker(Marker::Z, -1)],
        Some(t),
    )
}

pub(crate) fn fg1(a: Args) -> Result<Evidence> {
    Ok(Evidence::new().poly("sum = product", fg_sum(0, 0, a.t)?, fg_product(2, a.t)?))
}

pub(crate) fn fg2(a: Args) -> Result<Evidence> {
    Ok(Evidence::new().poly("sum = product", fg_sum(2, 1, a.t)?, fg_product(4, a.t)?))
}

pub(crate) fn dual_counts(a: Args) -> Result<Evidence> {
    let n = a.t.min(ENUMERATION_CAP);
    let c = |f| enumerated(f, n);
    let b1 = capparelli_product(4, 8, 12, n)?;
    let b2 = capparelli_product(10, 14, 12, n)?;
    Ok(Evidence::new()
        .poly("dual family 1 = B_1", c(Family::DualC(1))?, c(Family::B(1))?)
        .poly("dual family 2 = B_2", c(Family::DualC(2))?, c(Family::B(2))?)
        .poly("B_1 counts = product", c(Family::B(1))?, b1)
        .poly("B_2 counts = product", c(Family::B(2))?, b2))
}

pub(crate) fn companion_counts(a: Args) -> Result<Evidence> {
    let n = a.t.min(ENUMERATION_CAP);
    let c = |f| enumerated(f, n);
    Ok(Evidence::new()
        .poly("A_0 = B_1", c(Family::A(0))?, c(Family::B(1))?)
        .poly("A_2 = B_2", c(Family::A(2))?, c(Family::B(2))?))
}

/// Size of the listed examples.
pub(crate) const TABLE_SIZE: u32 = 21;

pub(crate) const DUAL_1: [&[u32]; 7] =
    [&[12, 5, 3, 1], &[12, 3, 3, 3], &[9, 9, 3], &[9, 5, 3, 3, 1], &[9, 3, 3, 3, 3], &[5, 3, 3, 3, 3, 3, 1], &[3, 3, 3, 3, 3, 3, 3]];
pub(crate) const DUAL_2: [&[u32]; 5] = [&[12, 9], &[9, 9, 3], &[9, 5, 3, 3, 1], &[9, 3, 3, 3, 3], &[3, 3, 3, 3, 3, 3, 3]];
pub(crate) const B_1: [&[u32]; 7] = [&[21], &[18, 3], &[15, 6], &[12, 9], &[12, 6, 3], &[9, 8, 4], &[8, 6, 4, 3]];
pub(crate) const B_2: [&[u32]; 5] = [&[21], &[18, 3], &[15, 6], &[12, 9], &[12, 6, 3]];
pub(crate) const A_0: [&[u32]; 7] =
    [&[13, 7, 1], &[12, 7, 2], &[9, 7, 5], &[9, 6, 3, 1, 1, 1], &[8, 7, 6], &[8, 6, 4, 1, 1, 1], &[5, 5, 5, 3, 2, 1]];
pub(crate) const A_2: [&[u32]; 5] = [&[14, 7], &[11, 7, 3], &[10, 7, 4], &[7, 7, 7], &[7, 6, 5, 2, 1]];

fn listing(label: &str, printed: &[&[u32]], family: Family) -> Result<Check> {
    Ok(Check::listing(label, parse_list(printed)?, enumerate(&family, TABLE_SIZE)?))
}

pub(crate) fn table_dual(_: Args) -> Result<Evidence> {
    Ok(Evidence::new()
        .check(listing("dual family 1", &DUAL_1, Family::DualC(1))?)
        .check(listing("B_1", &B_1, Family::B(1))?)
        .check(listing("dual family 2", &DUAL_2, Family::DualC(2))?)
        .check(listing("B_2", &B_2, Family::B(2))?))
}

pub(crate) fn table_companion(_: Args) -> Result<Evidence> {
    Ok(Evidence::new()
        .check(listing("A_0", &A_0, Family::A(0))?)
        .check(listing("B_1", &B_1, Family::B(1))?)
        .check(listing("A_2", &A_2, Family::A(2))?)
        .check(listing("B_2", &B_2, Family::B(2))?))
}

pub(crate) fn outlook_poly(a: Args) -> Result<Evidence> {
    let big_m = a.v;
    let mut lhs = QPoly::zero();
    for n in 0..=big_m / 2 {
        for m in 0..=(big_m - 2 * n) {
            let mut s = gauss_binomial(big_m, n, 3) * gauss_binomial(big_m - n, n + m, 3) * poch(1, 3 * m + 3, 3, n as u32);
            for k in 1..=m {
                s = s * (qp(0) + qp(k) + qp(2 * k));
            }
            lhs += s.shift_q(qf(m, n));
        }
    }
    let rhs: QPoly = (-big_m..=big_m).map(|j| gauss_binomial(2 * big_m, big_m - j, 3).shift_q(3 * j * j + j)).sum();
    Ok(Evidence::new().poly("double sum = binomial sum", lhs, rhs))
}

pub(crate) fn two_products(a: Args) -> Result<Evidence> {
    let t = a.t;
    let rhs = capparelli_product(2, 4, 6, t)? + capparelli_product(1, 5, 6, t)?;
    Ok(Evidence::new().poly("double sum = sum of products", double_series(-2, -3, 0, t)?, rhs))
}

/// Walks `(n_1, ..., n_nu)` from `n_nu` down, calling `f(exponent, n_list)`
/// while `3 * sum N_i^2` stays at or below `t`.
fn hierarchy_terms(nu: usize, t: i64, f: &mut dyn FnMut(i64, &[i64]) -> Result<()>) -> Result<()> {
    fn go(
        level: usize,
        above: i64,
        exp: i64,
        t: i64,
        ns: &mut Vec<i64>,
        f: &mut dyn FnMut(i64, &[i64]) -> Result<()>,
    ) -> Result<()> {
        if level == 0 {
            return f(exp, ns);
        }
        let mut n = 0;
        loop {
            let big = above + n;
            let e = exp + 3 * big * big;
            if e > t {
                return Ok(());
            }
            ns.push(n);
            go(level - 1, big, e, t, ns, f)?;
            ns.pop();
            n += 1;
        }
    }
    go(nu, 0, 0, t, &mut Vec::new(), f)
}

pub(crate) fn hierarchy(a: Args) -> Result<Evidence> {
    let (nu, t) = (a.v, a.t);
    let mut lhs = QPoly::zero().truncate(t);
    hierarchy_terms(nu as usize, t, &mut |e, ns| {
        // ns[0] is n_nu, the rest run down to n_1.
        let last = ns[0];
        let mut den = vec![(6, 6, 2 * last as u32)];
        den.extend(ns[1..].iter().map(|&n| (6, 6, n as u32)));
        lhs += term(e, &[neg_odd(3 * last)], &den, t)?;
        Ok(())
    })?;
    let p = 6 * (nu + 1);
    let rhs = product(
        &[F::new(-1, 3, 3), F::new(1, 12, 12).inverted(), F::new(1, p, p), F::new(-1, 3 * nu + 1, p), F::new(-1, 3 * nu + 5, p)],
        Some(t),
    )?;
    Ok(Evidence::new().poly("multisum = product", lhs, rhs))
}

fn dyson_product(a: i64, b: i64, t: i64) -> Result<QPoly> {
    product(&[F::new(-1, 3, 3), F::new(1, a, 12), F::new(1, b, 12)], Some(t))
}

pub(crate) fn dyson_first(a: Args) -> Result<Evidence> {
    let t = a.t;
    let mut lhs = QPoly::zero().truncate(t);
    let mut n = 0;
    while 3 * n * n <= t {
        let nu = n as u32;
        lhs += term(3 * n * n, &[poch(1, 2, 6, nu), poch(1, 4, 6, nu)], &[(12, 12, nu), (3, 6, nu)], t)?;
        n += 1;
    }
    Ok(Evidence::new().poly("sum = product", lhs, dyson_product(5, 7, t)?))
}

pub(crate) fn dyson_second(a: Args) -> Result<Evidence> {
    let t = a.t;
    let mut lhs = QPoly::one().truncate(t);
    let mut n = 1;
    while 3 * n * n - 2 <= t {
        let nu = n as u32;
        lhs -= &term(3 * n * n - 2, &[poch(1, 2, 6, nu + 1), poch(1, 4, 6, nu - 1)], &[(12, 12, nu), (3, 6, nu)], t)?;
        n += 1;
    }
    Ok(Evidence::new().poly("sum = product", lhs, dyson_product(1, 11, t)?))
}

pub(crate) fn z_companion(a: Args) -> Result<Evidence> {
    let t = a.t;
    let mut sum = QPoly::zero().truncate(t);
    let mut n = 1;
    while n * n <= t {
        let nu = n as u32;
        let num = [pochhammer(-1, zq(0, 1), 2, nu + 1), pochhammer(-1, zq(2, -1), 2, nu - 1)];
        sum += term(n * n, &num, &[(4, 4, nu), (1, 2, nu)], t)?;
        n += 1;
    }
    let lhs = QPoly::one().truncate(t) + sum.mul_term(1, Monomial::marker(Marker::Z, -1));
    let rhs = product(
        &[F::new(-1, 1, 1), F::new(-1, 1, 4).with_marker(Marker::Z, -1), F::new(-1, 3, 4).with_marker(Marker::Z, 1)],
        Some(t),
    )?;
    Ok(Evidence::new().poly("sum = product", lhs, rhs))
}

//! q-trinomial entries: the refined generating functions with a `t`
//! marker, their coefficient extractions, the trinomial expansions and
//! recurrence, the worked example, the dual polynomial identities with
//! half-integer exponents, and the finite Jacobi triple product.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::finite::{g, EQ2, G1_MOTION};
use super::sums::{choose2, qp, sum_shapes};
use super::{Args, Check, Evidence};
use crate::error::Result;
use crate::partitions::{bounded_members, generating_polynomial, Partition};
use crate::qpoly::{Marker, Monomial, QPoly};
use crate::qseries::{gauss_binomial, jacobi_finite_product, jacobi_finite_sum, t0, tr, JacobiVariant};

fn t_pow(j: i64) -> Monomial {
    Monomial::marker(Marker::T, j as i32)
}

/// `G_{m,3N+1}` with `a -> t^sa` and `b -> t^sb`.
fn g_in_t(m: u8, big_n: i64, sa: i32, sb: i32) -> Result<QPoly> {
    generating_polynomial(m, 3 * big_n + 1)?
        .substitute_marker(Marker::A, Monomial::marker(Marker::T, sa))?
        .substitute_marker(Marker::B, Monomial::marker(Marker::T, sb))
}

/// `sum_j t^j q^{3j^2 + lin j} Tr[N+1, 2j + off]_{q^3}`.
fn trinomial_side(big_n: i64, lin: i64, off: i64) -> QPoly {
    let mut acc = QPoly::zero();
    let r = big_n + 2;
    for j in -r..=r {
        let t = tr(big_n + 1, 2 * j + off, 3);
        if !t.is_zero() {
            acc += t.mul_term(1, Monomial::q(3 * j * j + lin * j) * t_pow(j));
        }
    }
    acc
}

/// `sum t^{stat(pi)} q^{|pi|}` over `D_{m,3N+1}`, by walking the family.
fn by_statistic(m: u8, big_n: i64, stat: fn(&Partition) -> i64) -> QPoly {
    let mut counts: HashMap<(i64, i64), u64> = HashMap::new();
    for p in bounded_members(m, (3 * big_n + 1) as u32) {
        *counts.entry((stat(&p), p.size() as i64)).or_default() += 1;
    }
    QPoly::from_terms(counts.into_iter().map(|((j, s), c)| (Monomial::q(s) * t_pow(j), BigInt::from(c))))
}

fn ones_minus_twos(p: &Partition) -> i64 {
    p.count_residue(1, 3) as i64 - p.count_residue(2, 3) as i64
}

fn twos_minus_ones(p: &Partition) -> i64 {
    -ones_minus_twos(p)
}

pub(crate) fn thm51(a: Args) -> Result<Evidence> {
    let n = a.v;
    Ok(Evidence::new().poly("G_{1,3N+1}(1/t, t, q) = trinomial sum", g_in_t(1, n, -1, 1)?, trinomial_side(n, 1, 0)))
}

pub(crate) fn cor52(a: Args) -> Result<Evidence> {
    let n = a.v;
    Ok(Evidence::new()
        .note("t counts parts = 1 mod 3 minus parts = 2 mod 3")
        .poly("each power of t", by_statistic(1, n, ones_minus_twos), trinomial_side(n, 1, 0)))
}

pub(crate) fn thm53(a: Args) -> Result<Evidence> {
    let n = a.v;
    Ok(Evidence::new().poly("G_{2,3N+1}(t, 1/t, q) = trinomial sum", g_in_t(2, n, 1, -1)?, trinomial_side(n, 2, 1)))
}

pub(crate) fn thm54(a: Args) -> Result<Evidence> {
    let n = a.v;
    Ok(Evidence::new()
        .note("t counts parts = 2 mod 3 minus parts = 1 mod 3")
        .poly("each power of t", by_statistic(2, n, twos_minus_ones), trinomial_side(n, 2, 1)))
}

/// The worked example at `N = 6`, `j = 2`, exactly as listed.
pub(crate) const TABLE_5_1: [&[u32]; 28] = [
    &[11, 5],
    &[14, 5],
    &[14, 8],
    &[17, 5],
    &[14, 8, 3],
    &[17, 8],
    &[14, 9, 5],
    &[17, 8, 3],
    &[17, 11],
    &[15, 11, 5],
    &[17, 9, 5],
    &[17, 11, 3],
    &[17, 12, 5],
    &[18, 11, 5],
    &[17, 11, 5, 1],
    &[17, 11, 6],
    &[17, 11, 6, 3],
    &[17, 12, 8],
    &[18, 14, 5],
    &[18, 14, 8],
    &[17, 11, 7, 5],
    &[17, 12, 8, 3],
    &[17, 12, 9, 5],
    &[18, 14, 8, 3],
    &[17, 13, 11, 5],
    &[18, 14, 9, 5],
    &[18, 15, 11, 5],
    &[19, 17, 11, 5],
];

pub(crate) fn parse_list(list: &[&[u32]]) -> Result<Vec<Partition>> {
    list.iter().map(|p| Partition::new(p.to_vec())).collect()
}

pub(crate) fn table51(_: Args) -> Result<Evidence> {
    let printed = QPoly::from_dense(16, 3, &[1, 1, 2, 2, 3, 3, 4, 3, 3, 2, 2, 1, 1]);
    let value = tr(7, 5, 3).shift_q(16);
    let listed = parse_list(&TABLE_5_1)?;
    let enumerated: Vec<Partition> =
        bounded_members(2, 19).into_iter().filter(|p| twos_minus_ones(p) == 2).collect();
    let listed_gf: QPoly = listed.iter().map(|p| qp(p.size() as i64)).sum();
    Ok(Evidence::new()
        .poly("q^16 Tr[7, 5] = listed polynomial", value.clone(), printed)
        .poly("sizes of listed partitions", listed_gf, value)
        .check(Check::listing("listed partitions = enumeration", listed, enumerated)))
}

/// Both expansions of `Tr[N, a]`, tagged by `t^a` over every `a` of one parity.
fn tri_expansion(big_n: i64, odd: i64) -> (QPoly, QPoly) {
    let mut lhs = QPoly::zero();
    let mut rhs = QPoly::zero();
    for j in -big_n - 1..=big_n {
        let a = 2 * j + odd;
        let mark = t_pow(a);
        lhs += tr(big_n, a, 1).mul_term(1, mark);
        for k in 0..=big_n / 2 {
            let b = 2 * k + odd;
            let term = gauss_binomial(big_n, b, 1) * gauss_binomial(b, k + j + odd, 2);
            if !term.is_zero() {
                rhs += term.mul_term(1, Monomial::q(choose2(big_n - b)) * mark);
            }
        }
    }
    (lhs, rhs)
}

pub(crate) fn tri_even(a: Args) -> Result<Evidence> {
    let (l, r) = tri_expansion(a.v, 0);
    Ok(Evidence::new().poly("every even lower index", l, r))
}

pub(crate) fn tri_odd(a: Args) -> Result<Evidence> {
    let (l, r) = tri_expansion(a.v, 1);
    Ok(Evidence::new().poly("every odd lower index", l, r))
}

pub(crate) fn tri_recurrence(a: Args) -> Result<Evidence> {
    let n = a.v;
    let mut lhs = QPoly::zero();
    let mut rhs = QPoly::zero();
    for k in -n - 4..=n + 4 {
        let mark = t_pow(k);
        lhs += tr(n + 1, k, 1).mul_term(1, mark);
        let r = (qp(0) + qp(n)) * tr(n, k, 1)
            + tr(n - 1, k + 2, 1).shift_q(n + k + 1)
            + tr(n - 1, k - 2, 1).shift_q(n - k + 1)
            + tr(n - 1, k, 1).shift_q(2 * n)
            + (qp(0) - qp(n - 1)).shift_q(2 * n - 1) * tr(n - 2, k, 1);
        rhs += r.mul_term(1, mark);
    }
    Ok(Evidence::new().note("lower index tagged t^a").poly("every lower index", lhs, rhs))
}

pub(crate) fn dual_first(a: Args) -> Result<Evidence> {
    let n = a.v;
    let lhs = G1_MOTION.sum(n);
    Ok(Evidence::new()
        .poly("double sum = trinomial sum", lhs.clone(), trinomial_side(n, 1, 0).substitute_marker(Marker::T, Monomial::ONE)?)
        .poly("double sum = G_{1,3N+1} by enumeration", lhs, g(1, 3 * n + 1)?))
}

/// `q^{h/2}` times `p`.
fn half_shift(p: QPoly, h: i64) -> QPoly {
    p.mul_term(1, Monomial::q_half(h))
}

/// `sum_j q^{3j^2 + lin j} T0(N, 2j + off, q^3)`.
fn t0_side(big_n: i64, lin: i64, off: i64) -> QPoly {
    let mut acc = QPoly::zero();
    for j in -big_n - 1..=big_n {
        let a = 2 * j + off;
        if a.abs() > big_n {
            continue;
        }
        acc += t0(big_n, a, 3).shift_q(3 * j * j + lin * j);
    }
    acc
}

/// The even-parity dual sum over `(M, m)`.
fn dual_even_lhs(big_n: i64) -> QPoly {
    let mut acc = QPoly::zero();
    for bm in 0..=big_n {
        for m in 0..=(big_n - bm) {
            if (big_n + bm + m) % 2 != 0 {
                continue;
            }
            let b = gauss_binomial(3 * bm, m, 1) * gauss_binomial((big_n + 3 * bm - m) / 2, 2 * bm, 3);
            if !b.is_zero() {
                acc += half_shift(b, 3 * bm * bm + m * m);
            }
        }
    }
    acc
}

fn dual_odd_lhs(big_n: i64) -> QPoly {
    let mut acc = QPoly::zero();
    for bm in 0..=big_n {
        for m in 0..=(3 * bm + 2) {
            if (big_n + bm + m) % 2 != 1 {
                continue;
            }
            let h = 3 * bm * bm + 6 * bm + m * m;
            let first = gauss_binomial(3 * bm, m, 1) * gauss_binomial((big_n + 3 * bm - m - 1) / 2, 2 * bm, 3);
            let second = gauss_binomial(3 * bm + 2, m, 1) * gauss_binomial((big_n + 3 * bm - m + 1) / 2, 2 * bm + 1, 3);
            acc += half_shift(first, h) + half_shift(second, h + 2);
        }
    }
    acc
}

/// `q^{(3N^2 - h)/2} p(1/q)`: the substitution that produces the duals
/// from the identities at `N - 1`.
fn dualize(p: QPoly, big_n: i64, h: i64) -> Result<QPoly> {
    Ok(half_shift(p.substitute_q_inverse()?, 3 * big_n * big_n - h))
}

pub(crate) fn dual_even(a: Args) -> Result<Evidence> {
    let n = a.v;
    let lhs = dual_even_lhs(n);
    Ok(Evidence::new()
        .check(Check::half_integer("double sum = T0 sum", lhs.clone(), t0_side(n, 1, 0)))
        .check(Check::half_integer("double sum = inverted first identity at N-1", lhs, dualize(G1_MOTION.sum(n - 1), n, 0)?)))
}

pub(crate) fn dual_odd(a: Args) -> Result<Evidence> {
    let n = a.v;
    let lhs = dual_odd_lhs(n);
    let source = if n >= 1 { sum_shapes(&EQ2, n - 1) } else { QPoly::zero() };
    Ok(Evidence::new()
        .check(Check::half_integer("double sums = T0 sum", lhs.clone(), t0_side(n, 2, 1)))
        // Multiplying by q^{3N^2/2} alone leaves an extra q^{1/2} on both sides.
        .check(Check::half_integer("double sums = inverted second identity at N-1, times q^{-1/2}", lhs, dualize(source, n, 1)?)))
}

pub(crate) fn jtp_even(a: Args) -> Result<Evidence> {
    let l = a.v as u32;
    Ok(Evidence::new().poly("product = sum", jacobi_finite_product(l, JacobiVariant::Even), jacobi_finite_sum(l, JacobiVariant::Even)))
}

pub(crate) fn jtp_odd(a: Args) -> Result<Evidence> {
    let l = a.v as u32;
    Ok(Evidence::new().poly("product = sum", jacobi_finite_product(l, JacobiVariant::Odd), jacobi_finite_sum(l, JacobiVariant::Odd)))
}

//! Finite double-sum identities: the three polynomial analogues of the
//! Capparelli sum-product identities, their companions for bounds 3N and
//! 3N+2, the motion-based interpretations, and the misprint resolutions.

use super::sums::{chi, choose2, neg6, qf, qp, sum_shapes, tag, Shape};
use super::{Args, Evidence, Reading};
use crate::error::Result;
use crate::motions::{class_generating_polynomial, configurations, Variant};
use crate::partitions::{at_ab_one, generating_polynomial};
use crate::qpoly::{Marker, QPoly};
use crate::qseries::gauss_binomial;

/// `[3k, m] [2k + n, n]`, plain `Q(m, n)`.
pub(crate) const EQ1: Shape = Shape::new(0, 0, 0, 0, 0);
pub(crate) const EQ2: [Shape; 2] = [Shape::new(1, 3, 0, 2, 1), Shape::new(3, 6, 1, 0, 0)];
pub(crate) const EQ3: [Shape; 2] = [Shape::new(1, 0, 0, 2, 2), Shape::new(4, 6, 1, -1, 0)];
/// The first summand of the third identity with the `+2` moved to the bottom index.
pub(crate) const EQ3_BOTTOM: Shape = Shape::new(1, 0, 0, 2, 0).bottom_shift(2);
/// `[3(k+1), m] [2(k+1) + n, n]`: the motion count for parts at most `3N+1`.
pub(crate) const G1_MOTION: Shape = Shape::new(0, 0, 0, 3, 2);

/// `G_{m,bound}(1, 1, q)` by enumeration.
pub(crate) fn g(m: u8, bound: i64) -> Result<QPoly> {
    Ok(at_ab_one(&generating_polynomial(m, bound)?))
}

/// `q^{3N^2/2 + 3N + 1}` for even `N`, the lone pair that cannot move.
pub(crate) fn stuck_pair(big_n: i64) -> QPoly {
    if chi(big_n) {
        qp(qf(0, big_n / 2) + 3 * big_n + 1)
    } else {
        QPoly::zero()
    }
}

/// `sum_l q^{3 C(N - 2l + s, 2)} [top, 2l + b]_{q^3} * poch(l)` over `0 <= l <= N`.
fn single(big_n: i64, s: i64, top: i64, b: i64, poch: impl Fn(i64) -> QPoly) -> QPoly {
    let mut acc = QPoly::zero();
    for l in 0..=big_n.max(0) {
        let bin = gauss_binomial(top, 2 * l + b, 3);
        if bin.is_zero() {
            continue;
        }
        acc += (bin * poch(l)).shift_q(3 * choose2(big_n - 2 * l + s));
    }
    acc
}

fn even_poch(l: i64) -> QPoly {
    neg6(2, l) * neg6(4, l)
}

fn odd_poch(l: i64) -> QPoly {
    neg6(1, l) * neg6(5, l)
}

fn odd_poch_plus(l: i64) -> QPoly {
    neg6(1, l + 1) * neg6(5, l)
}

pub(crate) fn eq1_rhs(big_n: i64) -> QPoly {
    single(big_n, 0, big_n, 0, even_poch)
}

pub(crate) fn eq23_rhs(big_n: i64) -> QPoly {
    single(big_n, 0, big_n + 1, 1, odd_poch_plus)
}

pub(crate) fn eq3_lhs(big_n: i64) -> QPoly {
    sum_shapes(&EQ3, big_n) + stuck_pair(big_n)
}

/// The double-sum side of the first identity for `N <= 3`.
fn printed_initial(big_n: i64) -> Option<QPoly> {
    let dense: &[i64] = match big_n {
        0 | 1 => &[1],
        2 => &[1, 0, 1, 1, 1, 0, 1],
        3 => &[1, 0, 1, 1, 1, 1, 2, 1, 1, 2, 1, 0, 1],
        _ => return None,
    };
    Some(QPoly::from_dense(0, 1, dense))
}

pub(crate) fn thm14_eq1(a: Args) -> Result<Evidence> {
    let n = a.v;
    let lhs = EQ1.sum(n);
    let mut ev = Evidence::new()
        .poly("double sum = single sum", lhs.clone(), eq1_rhs(n))
        .poly("double sum = G_{1,3N-2} by enumeration", lhs.clone(), g(1, 3 * n - 2)?);
    if let Some(p) = printed_initial(n) {
        ev = ev.poly("initial value as listed", lhs, p);
    }
    Ok(ev)
}

pub(crate) fn thm14_eq2(a: Args) -> Result<Evidence> {
    let n = a.v;
    let lhs = sum_shapes(&EQ2, n);
    Ok(Evidence::new()
        .poly("double sums = single sum", lhs.clone(), eq23_rhs(n))
        .poly("double sums = G_{2,3N+1} by enumeration", lhs, g(2, 3 * n + 1)?))
}

pub(crate) fn thm14_eq3(a: Args) -> Result<Evidence> {
    let n = a.v;
    let lhs = eq3_lhs(n);
    Ok(Evidence::new()
        .poly("double sums + correction = single sum", lhs.clone(), eq23_rhs(n))
        .poly("double sums + correction = G_{2,3N+1} by enumeration", lhs, g(2, 3 * n + 1)?))
}

fn s_pair(n: i64) -> QPoly {
    single(n, 0, n + 1, 1, even_poch) + single(n - 1, 0, n, 1, even_poch).shift_q(3 * n - 1)
}

fn t_pair(n: i64) -> QPoly {
    single(n, 0, n + 1, 1, odd_poch) + single(n - 1, 0, n, 1, odd_poch).shift_q(3 * n - 2)
}

fn u_pair(n: i64) -> QPoly {
    single(n, 0, n + 1, 1, odd_poch_plus) + single(n - 1, 0, n, 1, odd_poch_plus).shift_q(3 * n + 2)
}

/// `D_{1,3N}`: both sides as printed.
pub(crate) fn thm31_a(a: Args) -> Result<Evidence> {
    let n = a.v;
    let oracle = g(1, 3 * n)?;
    Ok(Evidence::new()
        .poly("single sum = enumeration", s_pair(n), oracle.clone())
        .reading(Reading::printed("double sum as printed", Shape::new(0, 0, 0, 2, 1).sum(n), oracle)))
}

/// Ordinary binomial coefficient, with `C(n, 0) = 1` for every `n`.
fn binom(n: i64, k: i64) -> i64 {
    if k == 0 {
        return 1;
    }
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// `D_{1,3N+2}` as printed, and the two self-consistent corrections.
pub(crate) fn thm31_b(a: Args) -> Result<Evidence> {
    let n = a.v;
    let top = g(1, 3 * n + 2)?;
    let below = g(1, 3 * n - 1)?;
    let printed_single = single(n, 0, n, 0, even_poch) + {
        let mut acc = QPoly::zero();
        for l in 0..=n {
            acc += even_poch(l).shift_q(3 * binom(n - 1, 2 * l));
        }
        acc.shift_q(3 * n - 1)
    };
    let single_a = single(n, 0, n, 0, even_poch) + single(n - 1, 0, n - 1, 0, even_poch).shift_q(3 * n - 1);
    let single_b = single(n + 1, 0, n + 1, 0, even_poch) + single(n, 0, n, 0, even_poch).shift_q(3 * n + 2);
    Ok(Evidence::new()
        .reading(Reading::printed("double sum as printed, bound 3N+2", EQ1.sum(n), top.clone()))
        .reading(Reading::printed("single sum as printed, bound 3N+2", printed_single, top.clone()))
        .reading(Reading::corrected(
            "bound 3N-1: [3k+1, m][2k+n, n]",
            Shape::new(0, 0, 0, 1, 0).sum(n),
            below.clone(),
        ))
        .reading(Reading::corrected("bound 3N-1: single sum with [N-1, 2l]", single_a, below))
        .reading(Reading::corrected("bound 3N+2: [3k+4, m][2k+n+2, n]", Shape::new(0, 0, 0, 4, 2).sum(n), top.clone()))
        .reading(Reading::corrected("bound 3N+2: G_{1,3N+1} + q^{3N+2} G_{1,3N-2}", single_b, top)))
}

pub(crate) const THM32_A_PRINTED: [Shape; 2] = [Shape::new(0, 0, 0, 3, 0), Shape::new(3, 6, 1, -1, -1)];
pub(crate) const THM32_A_OFFSET_ONLY: [Shape; 2] = [Shape::new(1, 3, 0, 3, 0), Shape::new(3, 6, 1, -1, -1)];
pub(crate) const THM32_A_FIXED: [Shape; 2] = [Shape::new(1, 3, 0, 1, 0), Shape::new(3, 6, 1, -1, -1)];

/// `D_{2,3N}` in the second family's first form.
pub(crate) fn thm32_a(a: Args) -> Result<Evidence> {
    let n = a.v;
    let oracle = g(2, 3 * n)?;
    Ok(Evidence::new()
        .poly("single sum = enumeration", t_pair(n), oracle.clone())
        .reading(Reading::printed("double sums as printed", sum_shapes(&THM32_A_PRINTED, n), oracle.clone()))
        .reading(Reading::corrected(
            "exponent offset m+3n and top 3k+1",
            sum_shapes(&THM32_A_FIXED, n),
            oracle,
        )))
}

pub(crate) fn thm32_b(a: Args) -> Result<Evidence> {
    let n = a.v;
    let oracle = g(2, 3 * n + 2)?;
    let printed = [Shape::new(1, 3, 0, 3, -1), Shape::new(3, 6, 1, 1, 0)];
    let fixed = [Shape::new(1, 3, 0, 3, 1), Shape::new(3, 6, 1, 1, 0)];
    Ok(Evidence::new()
        .poly("single sum = enumeration", u_pair(n), oracle.clone())
        .reading(Reading::printed("double sums as printed", sum_shapes(&printed, n), oracle.clone()))
        .reading(Reading::corrected("first sum with [2k+n+1, n]", sum_shapes(&fixed, n), oracle)))
}

pub(crate) fn thm33_a(a: Args) -> Result<Evidence> {
    let n = a.v;
    let oracle = g(2, 3 * n)?;
    let printed = [Shape::new(1, 0, 0, 1, 1), Shape::new(4, 6, 1, -2, -1)];
    Ok(Evidence::new()
        .poly("single sum = enumeration", t_pair(n), oracle.clone())
        .reading(Reading::printed("double sums as printed", sum_shapes(&printed, n), oracle)))
}

pub(crate) fn thm33_b(a: Args) -> Result<Evidence> {
    let n = a.v;
    let oracle = g(2, 3 * n + 2)?;
    let printed = [Shape::new(0, 0, 0, 3, 0), Shape::new(4, 6, 1, 0, 0)];
    let fixed = [Shape::new(1, 0, 0, 3, 2), Shape::new(4, 6, 1, 0, 0)];
    Ok(Evidence::new()
        .poly("single sum = enumeration", u_pair(n), oracle.clone())
        .reading(Reading::printed("double sums as printed", sum_shapes(&printed, n), oracle.clone()))
        .reading(Reading::corrected("first sum q^{Q+m} [3k+3, m][2k+n+2, n]", sum_shapes(&fixed, n), oracle)))
}

/// Sum over the classes of `variants`, each tagged with `t^i a^m b^n`,
/// next to the same tagging of the closed-form summands.
fn motion_classes(big_n: i64, variants: &[(Variant, Shape)]) -> Result<(QPoly, QPoly)> {
    let mut by_motion = QPoly::zero();
    let mut by_formula = QPoly::zero();
    for (i, (v, shape)) in variants.iter().enumerate() {
        let mark = |m: i64, n: i64| tag(m, n).times_marker(Marker::T, i as i32);
        for cfg in configurations(*v, big_n as u32) {
            let (m, n) = (cfg.m as i64, cfg.n as i64);
            by_motion += class_generating_polynomial(&cfg)?.mul_term(1, mark(m, n));
        }
        for (m, n) in Shape::support(big_n) {
            let mut s = shape.summand(big_n, m, n);
            if *v == Variant::PiHat2 && m == 0 && 2 * n == big_n {
                s += stuck_pair(big_n);
            }
            if !s.is_zero() {
                by_formula += s.mul_term(1, mark(m, n));
            }
        }
    }
    Ok((by_motion, by_formula))
}

/// Motion count for `D_{1,3N+1}` with `n` pairs and `m` singletons.
pub(crate) fn cor_g1(a: Args) -> Result<Evidence> {
    let n = a.v;
    let oracle = g(1, 3 * n + 1)?;
    let (motion, formula) = motion_classes(n, &[(Variant::Pi, G1_MOTION)])?;
    // The same summand with the roles of m and n swapped in the quadratic form.
    let mut swapped = QPoly::zero();
    for (m, k) in Shape::support(n) {
        let s = G1_MOTION.summand(n, m, k);
        if !s.is_zero() {
            swapped += s.shift_q(qf(k, m) - qf(m, k));
        }
    }
    Ok(Evidence::new()
        .poly("classes by motion = summands", motion, formula)
        .reading(Reading::printed("quadratic form 2n^2+6mn+6m^2", swapped, oracle.clone()))
        .reading(Reading::corrected("quadratic form Q(m,n)", G1_MOTION.sum(n), oracle)))
}

pub(crate) fn cor_g2(a: Args) -> Result<Evidence> {
    let n = a.v;
    let (motion, formula) = motion_classes(n, &[(Variant::PiStar1, EQ2[0]), (Variant::PiStar2, EQ2[1])])?;
    Ok(Evidence::new()
        .poly("classes by motion = summands", motion, formula)
        .poly("double sums = G_{2,3N+1} by enumeration", sum_shapes(&EQ2, n), g(2, 3 * n + 1)?))
}

pub(crate) fn cor_g2_hat(a: Args) -> Result<Evidence> {
    let n = a.v;
    let (motion, formula) = motion_classes(n, &[(Variant::PiHat1, EQ3[0]), (Variant::PiHat2, EQ3[1])])?;
    Ok(Evidence::new()
        .poly("classes by motion = summands", motion, formula)
        .poly("double sums + correction = G_{2,3N+1} by enumeration", eq3_lhs(n), g(2, 3 * n + 1)?))
}

/// Garbled exponent in the companion of the first identity at bound 3N+2.
pub(crate) fn oq_thm31_b(a: Args) -> Result<Evidence> {
    thm31_b(a).map(|e| e.note("oracle: enumeration of the bounded family"))
}

/// Missing offset in the first double sum of the bound-3N companion.
pub(crate) fn oq_thm32_a(a: Args) -> Result<Evidence> {
    let n = a.v;
    let oracle = g(2, 3 * n)?;
    Ok(Evidence::new()
        .note("oracle: enumeration of the bounded family")
        .reading(Reading::printed("as printed", sum_shapes(&THM32_A_PRINTED, n), oracle.clone()))
        .reading(Reading::corrected("offset m+3n added", sum_shapes(&THM32_A_OFFSET_ONLY, n), oracle.clone()))
        .reading(Reading::corrected("offset m+3n and top 3k+1", sum_shapes(&THM32_A_FIXED, n), oracle)))
}

/// Which placement of the `+2` makes the third identity true.
pub(crate) fn oq_binomial(a: Args) -> Result<Evidence> {
    let n = a.v;
    let rhs = eq23_rhs(n);
    let bottom = EQ3_BOTTOM.sum(n) + EQ3[1].sum(n) + stuck_pair(n);
    let mut ev = Evidence::new().note("oracle: the single-sum side, itself checked against enumeration");
    if n >= 4 {
        let (top, bottom) = super::recurrences::oq_binomial_recurrence(n);
        ev = ev.note(format!("summand recurrence holds: +2 in top {top}, +2 in bottom {bottom}"));
    }
    Ok(ev
        .poly("single sum = G_{2,3N+1} by enumeration", rhs.clone(), g(2, 3 * n + 1)?)
        .reading(Reading::printed("+2 in the top index", eq3_lhs(n), rhs.clone()))
        .reading(Reading::printed("+2 in the bottom index", bottom, rhs)))
}

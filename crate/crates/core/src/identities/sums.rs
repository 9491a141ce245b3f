//! Shared summands: the Capparelli quadratic form, the double sums over
//! (m, n) with one base-q and one base-q^3 binomial, and small helpers.

use crate::qpoly::{Marker, Monomial, QPoly};
use crate::qseries::{gauss_binomial, pochhammer};

/// `Q(m, n) = 2m^2 + 6mn + 6n^2`.
pub(crate) fn qf(m: i64, n: i64) -> i64 {
    2 * m * m + 6 * m * n + 6 * n * n
}

/// 1 for even `n`, else 0.
pub(crate) fn chi(n: i64) -> bool {
    n.rem_euclid(2) == 0
}

pub(crate) fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// `(-q^e; q^6)_l`.
pub(crate) fn neg6(e: i64, l: i64) -> QPoly {
    pochhammer(-1, Monomial::q(e), 6, l.max(0) as u32)
}

/// Shape of the summand
/// `q^{Q(m,n) + em*m + en*n + e0} [3k + mt, m]_q [2k + n + nt, n + nb]_{q^3}`
/// with `k = N - 2n - m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Shape {
    pub em: i64,
    pub en: i64,
    pub e0: i64,
    pub mt: i64,
    pub nt: i64,
    pub nb: i64,
}

impl Shape {
    pub const fn new(em: i64, en: i64, e0: i64, mt: i64, nt: i64) -> Self {
        Shape { em, en, e0, mt, nt, nb: 0 }
    }

    pub const fn bottom_shift(mut self, nb: i64) -> Self {
        self.nb = nb;
        self
    }

    pub fn summand(&self, big_n: i64, m: i64, n: i64) -> QPoly {
        if m < 0 || n < 0 {
            return QPoly::zero();
        }
        let k = big_n - 2 * n - m;
        let b1 = gauss_binomial(3 * k + self.mt, m, 1);
        if b1.is_zero() {
            return b1;
        }
        let b2 = gauss_binomial(2 * k + n + self.nt, n + self.nb, 3);
        if b2.is_zero() {
            return b2;
        }
        (b1 * b2).shift_q(qf(m, n) + self.em * m + self.en * n + self.e0)
    }

    /// `(m, n)` pairs outside which the summand vanishes.
    pub fn support(big_n: i64) -> impl Iterator<Item = (i64, i64)> {
        let mmax = (3 * big_n + 12).max(0);
        let nmax = (big_n + 6).max(0);
        (0..=mmax).flat_map(move |m| (0..=nmax).map(move |n| (m, n)))
    }

    pub fn sum(&self, big_n: i64) -> QPoly {
        Shape::support(big_n).map(|(m, n)| self.summand(big_n, m, n)).sum()
    }
}

/// Sum of several shapes.
pub(crate) fn sum_shapes(shapes: &[Shape], big_n: i64) -> QPoly {
    shapes.iter().map(|s| s.sum(big_n)).sum()
}

/// `x^m y^n` with `a` and `b` standing in for `x` and `y`, used to keep
/// the summands of a recurrence apart inside one polynomial.
pub(crate) fn tag(m: i64, n: i64) -> Monomial {
    Monomial::ONE.times_marker(Marker::A, m as i32).times_marker(Marker::B, n as i32)
}

/// `q^e` as a polynomial.
pub(crate) fn qp(e: i64) -> QPoly {
    QPoly::q_pow(e)
}

/// `1 + q + q^2`.
pub(crate) fn one_q_q2() -> QPoly {
    qp(0) + qp(1) + qp(2)
}

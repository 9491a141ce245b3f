//! q-series building blocks: Pochhammer symbols, truncated infinite
//! products, Gaussian binomials, q-trinomial coefficients and the finite
//! Jacobi triple product.
//!
//! Reciprocals of products are expanded as products of truncated geometric
//! series, so no polynomial division is ever needed.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qpoly::{Marker, Monomial, QPoly};

/// One Pochhammer symbol `(c*m; q^step)_count`, in the numerator or, when
/// `inverse` is set, in the denominator. A missing `count` means infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductFactorSpec {
    pub coeff: i64,
    pub base: Monomial,
    pub step: i64,
    pub count: Option<u32>,
    pub inverse: bool,
}

impl ProductFactorSpec {
    /// `(c*q^e; q^step)_inf`.
    pub fn new(coeff: i64, q_exp: i64, step: i64) -> Self {
        ProductFactorSpec { coeff, base: Monomial::q(q_exp), step, count: None, inverse: false }
    }

    pub fn finite(mut self, n: u32) -> Self {
        self.count = Some(n);
        self
    }

    pub fn inverted(mut self) -> Self {
        self.inverse = true;
        self
    }

    pub fn with_marker(mut self, m: Marker, e: i32) -> Self {
        self.base = self.base.times_marker(m, e);
        self
    }

    fn describe(&self) -> String {
        let n = self.count.map_or("inf".to_string(), |n| n.to_string());
        format!("({}*{}; q^{})_{}", self.coeff, self.base, self.step, n)
    }
}

/// `(1 - c*m)` as a polynomial.
fn linear_factor(c: i64, m: Monomial) -> QPoly {
    QPoly::one() + QPoly::term(-c, m)
}

/// Exact finite `(c*m; q^step)_n`.
pub fn pochhammer(coeff: i64, base: Monomial, step: i64, n: u32) -> QPoly {
    let mut acc = QPoly::one();
    for k in 0..n as i64 {
        acc = &acc * &linear_factor(coeff, base * Monomial::q(step * k));
    }
    acc
}

/// `(c*q^e; q^step)_n` for pure powers of `q`.
pub fn poch(coeff: i64, q_exp: i64, step: i64, n: u32) -> QPoly {
    pochhammer(coeff, Monomial::q(q_exp), step, n)
}

/// Multiplies `p` by `1/(1 - c*m)`, keeping terms up to half-order `t`.
fn mul_geometric(p: &QPoly, c: i64, m: Monomial, t: i64) -> QPoly {
    let mut acc = p.truncate_half(t);
    let mut cur = acc.clone();
    loop {
        cur = cur.mul_term(c, m).truncate_half(t);
        if cur.is_zero() {
            return acc;
        }
        acc += &cur;
    }
}

/// Truncated `1/(c*m; q^step)_n` (`n = None` for the infinite product).
pub fn pochhammer_reciprocal(
    coeff: i64,
    base: Monomial,
    step: i64,
    n: Option<u32>,
    t: i64,
) -> Result<QPoly> {
    let spec = ProductFactorSpec { coeff, base, step, count: n, inverse: true };
    product(&[spec], Some(t))
}

/// Truncated `(c*m; q^step)_inf`.
pub fn infinite_pochhammer(coeff: i64, base: Monomial, step: i64, t: i64) -> Result<QPoly> {
    product(&[ProductFactorSpec { coeff, base, step, count: None, inverse: false }], Some(t))
}

/// Product of infinite factors, truncated at `q^t`.
pub fn infinite_product(specs: &[ProductFactorSpec], t: i64) -> Result<QPoly> {
    product(specs, Some(t))
}

/// General product of Pochhammer factors.
///
/// Without a truncation order only finite numerator factors are allowed and
/// the result is exact. With one, every factor whose `q` exponent stays at
/// or below zero is rejected, since such a product has no well defined
/// truncation (for a numerator, exponent zero alone is fine when finite).
pub fn product(specs: &[ProductFactorSpec], t: Option<i64>) -> Result<QPoly> {
    let mut acc = QPoly::one();
    if let Some(t) = t {
        acc = acc.truncate(t);
    }
    for spec in specs {
        acc = apply_factor(&acc, spec, t)?;
    }
    Ok(acc)
}

fn apply_factor(p: &QPoly, spec: &ProductFactorSpec, t: Option<i64>) -> Result<QPoly> {
    let nonterminating = || Error::NonTerminating { factor: spec.describe() };
    if spec.step <= 0 && spec.count.is_none() {
        return Err(nonterminating());
    }
    let Some(t) = t else {
        if spec.inverse || spec.count.is_none() {
            return Err(Error::MissingTruncation);
        }
        return Ok(p * &pochhammer(spec.coeff, spec.base, spec.step, spec.count.unwrap()));
    };
    let th = 2 * t;
    let lead = spec.base.q_half_exponent();
    if spec.inverse && lead <= 0 {
        return Err(nonterminating());
    }
    if !spec.inverse && spec.count.is_none() && lead < 0 {
        return Err(nonterminating());
    }
    let mut acc = p.clone();
    let mut k = 0i64;
    loop {
        if spec.count.is_some_and(|n| k >= n as i64) {
            break;
        }
        let m = spec.base * Monomial::q(spec.step * k);
        // Factors beyond the truncation order are 1 when the rest of the
        // product has nonnegative order, which holds for every spec accepted
        // here.
        if m.q_half_exponent() > th && acc.min_q_half().unwrap_or(0) >= 0 {
            break;
        }
        if spec.count.is_none() && m.q_half_exponent() > th {
            break;
        }
        acc = if spec.inverse {
            mul_geometric(&acc, spec.coeff, m, th)
        } else {
            (&acc - &acc.mul_term(spec.coeff, m)).truncate_half(th)
        };
        k += 1;
    }
    Ok(acc)
}

/// Truncated reciprocal `1/(c*q^e; q^step)_n` for pure powers of `q`.
pub fn poch_inv(coeff: i64, q_exp: i64, step: i64, n: Option<u32>, t: i64) -> Result<QPoly> {
    pochhammer_reciprocal(coeff, Monomial::q(q_exp), step, n, t)
}

type Dense = Arc<Vec<BigInt>>;

static BINOMIALS: LazyLock<RwLock<HashMap<(u32, u32), Dense>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Dense coefficients of `[n choose k]_q`, memoized process-wide.
fn binomial_dense(n: u32, k: u32) -> Dense {
    let k = k.min(n - k);
    if k == 0 {
        return Arc::new(vec![BigInt::from(1)]);
    }
    if let Some(v) = BINOMIALS.read().unwrap().get(&(n, k)) {
        return v.clone();
    }
    // [n, k] = [n-1, k-1] + q^k [n-1, k]
    let left = binomial_dense(n - 1, k - 1);
    let right = binomial_dense(n - 1, k);
    let len = (k * (n - k) + 1) as usize;
    let mut out = vec![BigInt::zero(); len];
    for (i, c) in left.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in right.iter().enumerate() {
        out[i + k as usize] += c;
    }
    let out = Arc::new(out);
    BINOMIALS.write().unwrap().insert((n, k), out.clone());
    out
}

/// Gaussian binomial `[n choose k]` in the base `q^d`, zero unless `0 <= k <= n`.
pub fn gauss_binomial(n: i64, k: i64, d: i64) -> QPoly {
    if n < 0 || k < 0 || k > n {
        return QPoly::zero();
    }
    QPoly::from_dense(0, d, &binomial_dense(n as u32, k as u32))
}

/// `[n choose k]_{q^d}` truncated at `q^t`.
pub fn gauss_binomial_truncated(n: i64, k: i64, d: i64, t: i64) -> QPoly {
    if n < 0 || k < 0 || k > n || t < 0 {
        return QPoly::zero().truncate(t);
    }
    let dense = binomial_dense(n as u32, k as u32);
    let keep = (t / d + 1).min(dense.len() as i64) as usize;
    QPoly::from_dense(0, d, &dense[..keep]).truncate(t)
}

/// `(N; b; q^d choose a)_2 = sum_j q^{d j(j+b)} [N choose j][N-j choose j+a]`.
pub fn q_trinomial(n: i64, b: i64, a: i64, d: i64) -> QPoly {
    let mut acc = QPoly::zero();
    if n < 0 {
        return acc;
    }
    for j in 0.max(-a)..=n {
        let term = gauss_binomial(n, j, d) * gauss_binomial(n - j, j + a, d);
        if !term.is_zero() {
            acc += term.shift_q(d * j * (j + b));
        }
    }
    acc
}

/// `Tr[N, a]` in base `q^d`, the `b = a` case of [`q_trinomial`].
pub fn tr(n: i64, a: i64, d: i64) -> QPoly {
    q_trinomial(n, a, a, d)
}

/// `T0(N, a, q^d) = q^{d(N^2 - a^2)/2} Tr[N, a](q^{-d})`, computed literally.
pub fn t0(n: i64, a: i64, d: i64) -> QPoly {
    let inv = tr(n, a, d).substitute_q_inverse().expect("trinomials are exact");
    inv.mul_term(1, Monomial::q_half(d * (n * n - a * a)))
}

/// `T0(N, a, q^d)` truncated at `q^t`.
///
/// Each summand of `Tr(q^{-1})` is rewritten with the inversion law
/// `[n choose k]_{1/q} = q^{-k(n-k)} [n choose k]_q`, so only the low-order
/// end of every binomial is ever multiplied. Agreement with [`t0`] is tested.
pub fn t0_truncated(n: i64, a: i64, d: i64, t: i64) -> QPoly {
    let th = 2 * t;
    let mut acc = QPoly::zero().truncate(t);
    if n < 0 {
        return acc;
    }
    for j in 0.max(-a)..=n {
        let top = n - j;
        let bot = j + a;
        if bot > top {
            continue;
        }
        // Half-unit exponent of the summand's leading power of q.
        let e = d * (n * n - a * a) - 2 * d * (j * (j + a) + j * (n - j) + bot * (top - bot));
        if e > th {
            continue;
        }
        let room = th - e;
        let b1 = gauss_binomial(n, j, d).truncate_half(room);
        let b2 = gauss_binomial(top, bot, d).truncate_half(room);
        acc += (b1 * b2).mul_term(1, Monomial::q_half(e)).truncate(t);
    }
    acc
}

/// The two finite forms of the Jacobi triple product, with `t` as marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiVariant {
    /// `(-q^2/t, -t q^4; q^6)_l = sum_{|n|<=l} t^n q^{3n^2+n} [2l choose l-n]_{q^6}`
    Even,
    /// `(-q/t; q^6)_{l+1} (-t q^5; q^6)_l = sum_{-l-1<=n<=l} t^n q^{3n^2+2n} [2l+1 choose l-n]_{q^6}`
    Odd,
}

pub fn jacobi_finite_product(l: u32, variant: JacobiVariant) -> QPoly {
    let t = Marker::T;
    match variant {
        JacobiVariant::Even => {
            pochhammer(-1, Monomial::q(2).times_marker(t, -1), 6, l)
                * pochhammer(-1, Monomial::q(4).times_marker(t, 1), 6, l)
        }
        JacobiVariant::Odd => {
            pochhammer(-1, Monomial::q(1).times_marker(t, -1), 6, l + 1)
                * pochhammer(-1, Monomial::q(5).times_marker(t, 1), 6, l)
        }
    }
}

pub fn jacobi_finite_sum(l: u32, variant: JacobiVariant) -> QPoly {
    let l = l as i64;
    let (lo, top, lin) = match variant {
        JacobiVariant::Even => (-l, 2 * l, 1),
        JacobiVariant::Odd => (-l - 1, 2 * l + 1, 2),
    };
    let mut acc = QPoly::zero();
    for n in lo..=l {
        acc += gauss_binomial(top, l - n, 6)
            .mul_term(1, Monomial::q(3 * n * n + lin * n).times_marker(Marker::T, n as i32));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(p: &QPoly) -> Vec<i64> {
        p.q_coeffs()
            .unwrap()
            .into_iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn small_binomials() {
        assert_eq!(coeffs(&gauss_binomial(4, 2, 1)), vec![1, 1, 2, 1, 1]);
        assert_eq!(coeffs(&gauss_binomial(3, 1, 2)), vec![1, 0, 1, 0, 1]);
        assert!(gauss_binomial(3, 4, 1).is_zero());
        assert!(gauss_binomial(-1, 0, 1).is_zero());
        assert!(gauss_binomial(3, -1, 1).is_zero());
    }

    #[test]
    fn trinomial_small_values() {
        // Tr[2, 0] = 1 + q + q^2... evaluated from the defining sum:
        // j=0: [2,0][2,0] = 1, j=1: q^1 [2,1][1,1] = q + q^2.
        assert_eq!(coeffs(&tr(2, 0, 1)), vec![1, 1, 1]);
        assert_eq!(coeffs(&tr(1, 1, 1)), vec![1]);
    }

    #[test]
    fn reciprocal_of_euler_product() {
        // 1/(q;q)_inf counts partitions.
        let p = poch_inv(1, 1, 1, None, 10).unwrap();
        assert_eq!(coeffs(&p), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn euler_pentagonal() {
        let p = infinite_product(&[ProductFactorSpec::new(1, 1, 1)], 12).unwrap();
        assert_eq!(coeffs(&p), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn rejects_products_without_growth() {
        assert!(matches!(
            infinite_product(&[ProductFactorSpec::new(1, 0, 1).inverted()], 5),
            Err(Error::NonTerminating { .. })
        ));
        assert!(matches!(
            infinite_product(&[ProductFactorSpec::new(1, -1, 1)], 5),
            Err(Error::NonTerminating { .. })
        ));
        assert!(matches!(
            product(&[ProductFactorSpec::new(1, 1, 1)], None),
            Err(Error::MissingTruncation)
        ));
    }

    #[test]
    fn truncated_t0_matches_literal() {
        for n in 0..10 {
            for a in -n..=n {
                for d in [1, 2, 3] {
                    let lit = t0(n, a, d);
                    let tr = t0_truncated(n, a, d, 25);
                    assert!(lit.truncate(25).equals(&tr), "N={n} a={a} d={d}");
                }
            }
        }
    }

    #[test]
    fn jacobi_small() {
        for l in 0..4 {
            for v in [JacobiVariant::Even, JacobiVariant::Odd] {
                assert_eq!(jacobi_finite_product(l, v), jacobi_finite_sum(l, v));
            }
        }
    }
}

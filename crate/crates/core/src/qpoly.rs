//! Sparse Laurent polynomials in `q` with exact integer coefficients.
//!
//! Exponents of `q` are stored doubled so that half-integer powers are exact.
//! Each monomial also carries integer exponents for the formal markers
//! `a`, `b`, `t`, `z`. A polynomial may be truncated: a truncation order `T`
//! means every coefficient at `q^e` with `e <= T` is known and nothing is
//! claimed above it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Formal variables carried alongside `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Marker {
    A,
    B,
    T,
    Z,
}

impl Marker {
    pub const ALL: [Marker; 4] = [Marker::A, Marker::B, Marker::T, Marker::Z];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Marker::A => "a",
            Marker::B => "b",
            Marker::T => "t",
            Marker::Z => "z",
        }
    }

    pub fn from_name(s: &str) -> Option<Marker> {
        Marker::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// `q^(q_half/2) * a^i * b^j * t^k * z^l`.
///
/// The derived order compares the `q` exponent first and then the marker
/// exponents in the order a, b, t, z, which makes "smallest differing
/// monomial" well defined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    q_half: i64,
    markers: [i32; 4],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q_half: 0, markers: [0; 4] };

    /// `q^e`.
    pub fn q(e: i64) -> Self {
        Monomial { q_half: 2 * e, markers: [0; 4] }
    }

    /// `q^(h/2)`.
    pub fn q_half(h: i64) -> Self {
        Monomial { q_half: h, markers: [0; 4] }
    }

    pub fn marker(m: Marker, e: i32) -> Self {
        Monomial::ONE.times_marker(m, e)
    }

    /// Multiplies by `m^e`.
    pub fn times_marker(mut self, m: Marker, e: i32) -> Self {
        self.markers[m.index()] += e;
        self
    }

    pub fn q_half_exponent(&self) -> i64 {
        self.q_half
    }

    /// The `q` exponent when it is an integer.
    pub fn q_exponent(&self) -> Option<i64> {
        (self.q_half % 2 == 0).then_some(self.q_half / 2)
    }

    pub fn marker_exponent(&self, m: Marker) -> i32 {
        self.markers[m.index()]
    }

    pub fn is_pure_q(&self) -> bool {
        self.markers == [0; 4]
    }

    pub fn pow(self, e: i32) -> Self {
        Monomial {
            q_half: self.q_half * e as i64,
            markers: self.markers.map(|x| x * e),
        }
    }

    fn without_marker(mut self, m: Marker) -> Self {
        self.markers[m.index()] = 0;
        self
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut markers = self.markers;
        for (x, y) in markers.iter_mut().zip(rhs.markers) {
            *x += y;
        }
        Monomial { q_half: self.q_half + rhs.q_half, markers }
    }
}

pub(crate) fn format_half(h: i64) -> String {
    if h % 2 == 0 {
        (h / 2).to_string()
    } else {
        format!("{h}/2")
    }
}

fn parse_half(s: &str) -> Result<i64> {
    let bad = || Error::Deserialize(format!("bad q exponent `{s}`"));
    match s.split_once('/') {
        None => s.trim().parse::<i64>().map(|v| 2 * v).map_err(|_| bad()),
        Some((num, "2")) => num.trim().parse::<i64>().map_err(|_| bad()),
        Some(_) => Err(bad()),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for m in Marker::ALL {
            match self.marker_exponent(m) {
                0 => {}
                1 => parts.push(m.name().to_string()),
                e => parts.push(format!("{}^{}", m.name(), e)),
            }
        }
        match self.q_half {
            0 => {}
            2 => parts.push("q".into()),
            h if h % 2 == 0 => parts.push(format!("q^{}", h / 2)),
            h => parts.push(format!("q^({h}/2)")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialRepr {
    q: String,
    markers: BTreeMap<String, i32>,
}

impl From<Monomial> for MonomialRepr {
    fn from(m: Monomial) -> Self {
        MonomialRepr {
            q: format_half(m.q_half),
            markers: Marker::ALL
                .into_iter()
                .filter(|&k| m.marker_exponent(k) != 0)
                .map(|k| (k.name().to_string(), m.marker_exponent(k)))
                .collect(),
        }
    }
}

impl TryFrom<MonomialRepr> for Monomial {
    type Error = Error;
    fn try_from(r: MonomialRepr) -> Result<Monomial> {
        let mut m = Monomial::q_half(parse_half(&r.q)?);
        for (name, e) in r.markers {
            let k = Marker::from_name(&name)
                .ok_or_else(|| Error::Deserialize(format!("unknown marker `{name}`")))?;
            m = m.times_marker(k, e);
        }
        Ok(m)
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MonomialRepr::from(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MonomialRepr::deserialize(d)?;
        Monomial::try_from(r).map_err(serde::de::Error::custom)
    }
}

/// Serde helper writing big integers as decimal strings.
pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// First monomial (in monomial order) where two polynomials disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub monomial: Monomial,
    #[serde(with = "decimal")]
    pub lhs: BigInt,
    #[serde(with = "decimal")]
    pub rhs: BigInt,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: lhs {} vs rhs {}", self.monomial, self.lhs, self.rhs)
    }
}

/// Laurent polynomial in `q` over the integers with markers, possibly
/// truncated above some order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct QPoly {
    terms: BTreeMap<Monomial, BigInt>,
    /// Truncation order in half units of `q`.
    trunc: Option<i64>,
}

impl Default for QPoly {
    fn default() -> Self {
        QPoly::zero()
    }
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { terms: BTreeMap::new(), trunc: None }
    }

    pub fn one() -> Self {
        QPoly::term(1, Monomial::ONE)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QPoly::term(c, Monomial::ONE)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = QPoly::zero();
        p.add_term(m, c.into());
        p
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        QPoly::term(1, Monomial::q(e))
    }

    pub fn marker(m: Marker) -> Self {
        QPoly::term(1, Monomial::marker(m, 1))
    }

    /// Builds `sum_k coeffs[k] q^(start + step*k)` from a dense coefficient list.
    pub fn from_dense<C: Clone + Into<BigInt>>(start: i64, step: i64, coeffs: &[C]) -> Self {
        QPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::q(start + step * k as i64), c.clone().into())),
        )
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = QPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m`, dropping it when it lies above the truncation order.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() || self.trunc.is_some_and(|t| m.q_half > t) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Nonzero terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no nonzero term is stored (below the truncation order, if any).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Truncation order in half units of `q`.
    pub fn truncation_half(&self) -> Option<i64> {
        self.trunc
    }

    /// Truncation order as a `q` exponent when it is an integer.
    pub fn truncation(&self) -> Option<i64> {
        self.trunc.map(|h| h.div_euclid(2))
    }

    /// Forgets every term above `q^t`.
    pub fn truncate(&self, t: i64) -> QPoly {
        self.truncate_half(2 * t)
    }

    pub fn truncate_half(&self, h: i64) -> QPoly {
        let h = self.trunc.map_or(h, |t| t.min(h));
        QPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.q_half <= h)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
            trunc: Some(h),
        }
    }

    /// Same terms, declared exact. Only sound when the caller knows the
    /// omitted part is zero.
    pub fn assume_exact(mut self) -> QPoly {
        self.trunc = None;
        self
    }

    pub fn min_q_half(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.q_half).min()
    }

    pub fn max_q_half(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.q_half).max()
    }

    /// Largest integer `q` degree present, for exact pure-q polynomials.
    pub fn degree(&self) -> Option<i64> {
        self.max_q_half().map(|h| h.div_euclid(2))
    }

    /// Coefficient of an exact monomial.
    ///
    /// Asking above the truncation order is an error, not zero.
    pub fn coeff_of(&self, m: &Monomial) -> Result<BigInt> {
        if let Some(t) = self.trunc {
            if m.q_half > t {
                return Err(Error::UnknownCoefficient {
                    monomial: m.to_string(),
                    order: format_half(t),
                });
            }
        }
        Ok(self.terms.get(m).cloned().unwrap_or_default())
    }

    /// Coefficient of `q^e` (no markers).
    pub fn q_coeff(&self, e: i64) -> Result<BigInt> {
        self.coeff_of(&Monomial::q(e))
    }

    /// Dense coefficient list `[c_0, c_1, ...]` of an exact or truncated
    /// polynomial in nonnegative integer powers of `q` without markers.
    pub fn q_coeffs(&self) -> Option<Vec<BigInt>> {
        let top = match self.trunc {
            Some(t) => t.div_euclid(2),
            None => self.degree().unwrap_or(-1),
        };
        let mut out = vec![BigInt::zero(); (top + 1).max(0) as usize];
        for (m, c) in &self.terms {
            let e = m.q_exponent()?;
            if !m.is_pure_q() || e < 0 {
                return None;
            }
            out[e as usize] = c.clone();
        }
        Some(out)
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        if c.is_zero() {
            return QPoly { terms: BTreeMap::new(), trunc: self.trunc };
        }
        QPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplies by `c * m`; the truncation order shifts with `m`.
    pub fn mul_term(&self, c: impl Into<BigInt>, m: Monomial) -> QPoly {
        let c = c.into();
        let trunc = self.trunc.map(|t| t + m.q_half);
        if c.is_zero() {
            return QPoly { terms: BTreeMap::new(), trunc };
        }
        QPoly {
            terms: self.terms.iter().map(|(k, v)| (*k * m, v * &c)).collect(),
            trunc,
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift_q(&self, e: i64) -> QPoly {
        self.mul_term(1, Monomial::q(e))
    }

    pub fn pow(&self, mut e: u32) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f(q) -> f(1/q)`, exact inputs only.
    pub fn substitute_q_inverse(&self) -> Result<QPoly> {
        self.require_exact("substitute_q_inverse")?;
        Ok(QPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial { q_half: -m.q_half, ..*m }, c.clone()))
                .collect(),
            trunc: None,
        })
    }

    /// `f(q) -> f(q^d)` for `d >= 1`.
    pub fn dilate_q(&self, d: i64) -> QPoly {
        assert!(d >= 1, "dilation factor must be positive");
        QPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial { q_half: m.q_half * d, ..*m }, c.clone()))
                .collect(),
            trunc: self.trunc.map(|t| t * d),
        }
    }

    /// Replaces every `marker^e` with `replacement^e`.
    ///
    /// Replacements carrying a power of `q` would move terms across the
    /// truncation order, so those need an exact input.
    pub fn substitute_marker(&self, marker: Marker, replacement: Monomial) -> Result<QPoly> {
        if replacement.q_half != 0 {
            self.require_exact("substitute_marker")?;
        }
        let mut out = QPoly { terms: BTreeMap::new(), trunc: self.trunc };
        for (m, c) in &self.terms {
            let e = m.marker_exponent(marker);
            out.add_term(m.without_marker(marker) * replacement.pow(e), c.clone());
        }
        Ok(out)
    }

    /// The coefficient of `marker^j`, with that marker removed.
    pub fn extract_marker(&self, marker: Marker, j: i32) -> QPoly {
        QPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.marker_exponent(marker) == j)
                .map(|(m, c)| (m.without_marker(marker), c.clone()))
                .collect(),
            trunc: self.trunc,
        }
    }

    /// Sets `q = 1`, keeping markers. Exact inputs only.
    pub fn eval_q_one(&self) -> Result<QPoly> {
        self.require_exact("eval_q_one")?;
        Ok(QPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial { q_half: 0, ..*m }, c.clone())),
        ))
    }

    fn require_exact(&self, op: &'static str) -> Result<()> {
        match self.trunc {
            None => Ok(()),
            Some(t) => Err(Error::TruncatedInput { op, order: format_half(t) }),
        }
    }

    /// Compares both sides up to the smaller truncation order and returns
    /// the smallest monomial where they differ.
    pub fn compare(&self, other: &QPoly) -> Option<Discrepancy> {
        let bound = match (self.trunc, other.trunc) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        let within = |m: &Monomial| bound.is_none_or(|t| m.q_half <= t);
        let mut a = self.terms.iter().filter(|(m, _)| within(m)).peekable();
        let mut b = other.terms.iter().filter(|(m, _)| within(m)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return None,
                (Some((ma, ca)), None) => {
                    return Some(Discrepancy { monomial: **ma, lhs: (*ca).clone(), rhs: BigInt::zero() })
                }
                (None, Some((mb, cb))) => {
                    return Some(Discrepancy { monomial: **mb, lhs: BigInt::zero(), rhs: (*cb).clone() })
                }
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Less => {
                        return Some(Discrepancy { monomial: **ma, lhs: (*ca).clone(), rhs: BigInt::zero() })
                    }
                    std::cmp::Ordering::Greater => {
                        return Some(Discrepancy { monomial: **mb, lhs: BigInt::zero(), rhs: (*cb).clone() })
                    }
                    std::cmp::Ordering::Equal => {
                        if ca != cb {
                            return Some(Discrepancy {
                                monomial: **ma,
                                lhs: (*ca).clone(),
                                rhs: (*cb).clone(),
                            });
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }

    pub fn equals(&self, other: &QPoly) -> bool {
        self.compare(other).is_none()
    }

    fn add_impl(&self, other: &QPoly, sign: bool) -> QPoly {
        let trunc = match (self.trunc, other.trunc) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        let mut out = QPoly { terms: BTreeMap::new(), trunc };
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone());
        }
        for (m, c) in &other.terms {
            out.add_term(*m, if sign { c.clone() } else { -c });
        }
        out
    }

    fn mul_impl(&self, other: &QPoly) -> QPoly {
        let trunc = product_truncation(self, other);
        let mut out = QPoly { terms: BTreeMap::new(), trunc };
        if self.terms.is_empty() || other.terms.is_empty() {
            return out;
        }
        let gp = group_by_markers(self);
        let gr = group_by_markers(other);

        // Every product exponent is a multiple of the gcd of all input
        // exponents, which keeps the dense accumulators compact.
        let step = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .fold(0i64, |g, m| g.gcd(&m.q_half))
            .max(1);

        let mut ranges: HashMap<[i32; 4], (i64, i64)> = HashMap::new();
        for (kp, tp) in &gp {
            for (kr, tr) in &gr {
                let lo = tp[0].0 + tr[0].0;
                let mut hi = tp[tp.len() - 1].0 + tr[tr.len() - 1].0;
                if let Some(t) = trunc {
                    hi = hi.min(t);
                }
                if lo > hi {
                    continue;
                }
                let key = add_markers(kp, kr);
                let e = ranges.entry(key).or_insert((lo, hi));
                e.0 = e.0.min(lo);
                e.1 = e.1.max(hi);
            }
        }

        let small = l1_norm_i64(self)
            .zip(l1_norm_i64(other))
            .is_some_and(|(x, y)| x.checked_mul(y).is_some_and(|v| v < (1u128 << 126)));

        if small {
            let mut acc: HashMap<[i32; 4], Vec<i128>> = ranges
                .iter()
                .map(|(k, (lo, hi))| (*k, vec![0i128; ((hi - lo) / step + 1) as usize]))
                .collect();
            let sp: Vec<_> = gp.iter().map(|(k, t)| (*k, to_i64_terms(t))).collect();
            let sr: Vec<_> = gr.iter().map(|(k, t)| (*k, to_i64_terms(t))).collect();
            for (kp, tp) in &sp {
                for (kr, tr) in &sr {
                    let key = add_markers(kp, kr);
                    let Some(&(lo, _)) = ranges.get(&key) else { continue };
                    let buf = acc.get_mut(&key).unwrap();
                    for &(ep, cp) in tp {
                        for &(er, cr) in tr {
                            let e = ep + er;
                            if trunc.is_some_and(|t| e > t) {
                                break;
                            }
                            buf[((e - lo) / step) as usize] += cp as i128 * cr as i128;
                        }
                    }
                }
            }
            for (key, buf) in acc {
                let lo = ranges[&key].0;
                for (i, v) in buf.into_iter().enumerate() {
                    if v != 0 {
                        out.terms.insert(
                            Monomial { q_half: lo + step * i as i64, markers: key },
                            BigInt::from(v),
                        );
                    }
                }
            }
        } else {
            let mut acc: HashMap<[i32; 4], Vec<BigInt>> = ranges
                .iter()
                .map(|(k, (lo, hi))| (*k, vec![BigInt::zero(); ((hi - lo) / step + 1) as usize]))
                .collect();
            for (kp, tp) in &gp {
                for (kr, tr) in &gr {
                    let key = add_markers(kp, kr);
                    let Some(&(lo, _)) = ranges.get(&key) else { continue };
                    let buf = acc.get_mut(&key).unwrap();
                    for (ep, cp) in tp {
                        for (er, cr) in tr {
                            let e = ep + er;
                            if trunc.is_some_and(|t| e > t) {
                                break;
                            }
                            buf[((e - lo) / step) as usize] += *cp * *cr;
                        }
                    }
                }
            }
            for (key, buf) in acc {
                let lo = ranges[&key].0;
                for (i, v) in buf.into_iter().enumerate() {
                    if !v.is_zero() {
                        out.terms.insert(Monomial { q_half: lo + step * i as i64, markers: key }, v);
                    }
                }
            }
        }
        out
    }
}

fn add_markers(x: &[i32; 4], y: &[i32; 4]) -> [i32; 4] {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]]
}

/// Truncation order of a product.
///
/// With `v` the lowest exponent present, `p * r` is known up to
/// `min(T_p + v_r, T_r + v_p)`, and never claimed beyond either input's own
/// order. For nonnegative exponents this is `min(T_p, T_r)`.
fn product_truncation(p: &QPoly, r: &QPoly) -> Option<i64> {
    let from = |t: Option<i64>, other: &QPoly| t.map(|t| t + other.min_q_half().unwrap_or(i64::MAX / 4));
    [p.trunc, r.trunc, from(p.trunc, r), from(r.trunc, p)]
        .into_iter()
        .flatten()
        .min()
}

type Group<'a> = Vec<(i64, &'a BigInt)>;

fn group_by_markers(p: &QPoly) -> Vec<([i32; 4], Group<'_>)> {
    let mut map: HashMap<[i32; 4], Group<'_>> = HashMap::new();
    for (m, c) in &p.terms {
        map.entry(m.markers).or_default().push((m.q_half, c));
    }
    let mut out: Vec<_> = map.into_iter().collect();
    for (_, g) in out.iter_mut() {
        g.sort_by_key(|x| x.0);
    }
    out.sort_by_key(|x| x.0);
    out
}

fn l1_norm_i64(p: &QPoly) -> Option<u128> {
    let mut s: u128 = 0;
    for c in p.terms.values() {
        s = s.checked_add(c.to_i64()?.unsigned_abs() as u128)?;
    }
    Some(s)
}

fn to_i64_terms(g: &Group<'_>) -> Vec<(i64, i64)> {
    g.iter().map(|(e, c)| (*e, c.to_i64().unwrap())).collect()
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        if let Some(t) = self.trunc {
            write!(f, " + O(q^{})", format_half(t + 1))?;
        }
        Ok(())
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct TermRepr {
    q: String,
    markers: BTreeMap<String, i32>,
    coeff: String,
}

/// Wire form of a polynomial: its terms in monomial order and the
/// truncation order, if any.
#[derive(Clone, Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
    truncated_above: Option<String>,
}

impl From<QPoly> for PolyRepr {
    fn from(p: QPoly) -> Self {
        PolyRepr {
            terms: p
                .terms
                .iter()
                .map(|(m, c)| {
                    let r = MonomialRepr::from(*m);
                    TermRepr { q: r.q, markers: r.markers, coeff: c.to_string() }
                })
                .collect(),
            truncated_above: p.trunc.map(format_half),
        }
    }
}

impl TryFrom<PolyRepr> for QPoly {
    type Error = Error;
    fn try_from(r: PolyRepr) -> Result<QPoly> {
        let trunc = r.truncated_above.as_deref().map(parse_half).transpose()?;
        let mut p = QPoly { terms: BTreeMap::new(), trunc };
        for t in r.terms {
            let m = Monomial::try_from(MonomialRepr { q: t.q, markers: t.markers })?;
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Deserialize(format!("bad coefficient `{}`", t.coeff)))?;
            if trunc.is_some_and(|h| m.q_half > h) {
                return Err(Error::Deserialize(format!("term {m} lies above the truncation order")));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                $body(self, rhs)
            }
        }
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &QPoly, b: &QPoly| a.add_impl(b, true));
forward_binop!(Sub, sub, |a: &QPoly, b: &QPoly| a.add_impl(b, false));
forward_binop!(Mul, mul, |a: &QPoly, b: &QPoly| a.mul_impl(b));

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        if let Some(t) = rhs.trunc {
            if self.trunc.is_none_or(|s| t < s) {
                *self = self.truncate_half(t);
            }
        }
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign<QPoly> for QPoly {
    fn add_assign(&mut self, rhs: QPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        *self += &(-rhs);
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            trunc: self.trunc,
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        let mut acc = QPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[(i64, i64)]) -> QPoly {
        QPoly::from_terms(cs.iter().map(|&(e, c)| (Monomial::q(e), BigInt::from(c))))
    }

    #[test]
    fn multiplies_small_polynomials() {
        let p = poly(&[(0, 1), (1, 1)]);
        assert_eq!(p.pow(3), poly(&[(0, 1), (1, 3), (2, 3), (3, 1)]));
    }

    #[test]
    fn truncation_is_sound_for_negative_exponents() {
        // (q^-1 + O(q^3)) * (1 + q + O(q^2)) is known only up to q^1.
        let p = poly(&[(-1, 1)]).truncate(3);
        let r = poly(&[(0, 1), (1, 1)]).truncate(2);
        let pr = &p * &r;
        assert_eq!(pr.truncation(), Some(1));
        assert_eq!(pr, poly(&[(-1, 1), (0, 1)]).truncate(1));
    }

    #[test]
    fn coefficient_above_truncation_is_an_error() {
        let p = poly(&[(0, 1)]).truncate(5);
        assert!(p.q_coeff(5).is_ok());
        assert!(matches!(p.q_coeff(6), Err(Error::UnknownCoefficient { .. })));
    }

    #[test]
    fn exact_only_operations_reject_truncated_input() {
        let p = poly(&[(0, 1)]).truncate(5);
        assert!(p.substitute_q_inverse().is_err());
        assert!(p.eval_q_one().is_err());
    }

    #[test]
    fn half_exponents_render_and_roundtrip() {
        let p = QPoly::term(3, Monomial::q_half(3).times_marker(Marker::A, 1))
            + QPoly::term(-2, Monomial::marker(Marker::T, -1));
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"3/2\""));
        let back: QPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn witness_is_the_smallest_differing_monomial() {
        let p = poly(&[(1, 1), (4, 2), (7, 1)]);
        let r = poly(&[(1, 1), (4, 3), (6, 1)]);
        let d = p.compare(&r).unwrap();
        assert_eq!(d.monomial, Monomial::q(4));
        assert_eq!((d.lhs, d.rhs), (BigInt::from(2), BigInt::from(3)));
    }

    #[test]
    fn big_coefficients_use_the_bigint_path() {
        let big = QPoly::constant(BigInt::from(i64::MAX)) + QPoly::q_pow(1);
        let sq = &big * &big;
        let expect = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        assert_eq!(sq.q_coeff(0).unwrap(), expect);
        assert_eq!(sq.q_coeff(1).unwrap(), BigInt::from(2) * BigInt::from(i64::MAX));
    }

    #[test]
    fn marker_substitution_and_extraction() {
        // a*b*q + a^2: a -> 1/t, b -> t gives q + t^-2.
        let p = QPoly::term(1, Monomial::q(1).times_marker(Marker::A, 1).times_marker(Marker::B, 1))
            + QPoly::term(1, Monomial::marker(Marker::A, 2));
        let s = p
            .substitute_marker(Marker::A, Monomial::marker(Marker::T, -1))
            .unwrap()
            .substitute_marker(Marker::B, Monomial::marker(Marker::T, 1))
            .unwrap();
        assert_eq!(s.extract_marker(Marker::T, 0), QPoly::q_pow(1));
        assert_eq!(s.extract_marker(Marker::T, -2), QPoly::one());
    }
}

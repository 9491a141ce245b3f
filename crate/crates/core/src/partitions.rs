//! Integer partitions, the partition families that appear in the
//! identities, and the bounded generating polynomials `G_{m,N}(a, b, q)`.
//!
//! `G_{m,N}` sums `a^{#parts = 2 mod 3} b^{#parts = 1 mod 3} q^{|pi|}` over
//! partitions with Capparelli gaps, largest part at most `N` and no part `m`.
//! It is available by direct enumeration, by four recurrences and, for
//! `N = 1 mod 3` and `N = 0 mod 3`, in closed form.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{Marker, Monomial, QPoly};
use crate::qseries::{gauss_binomial, pochhammer};

/// Largest size accepted by [`enumerate`] and [`count`].
pub const SIZE_CAP: u32 = 120;
/// Largest part accepted anywhere in this module.
pub const PART_CAP: u32 = 400;

/// A partition with parts in non-increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.iter().any(|&p| p > PART_CAP) {
            return Err(Error::InvalidPartition(format!("parts must not exceed {PART_CAP}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("parts must be non-increasing".into()));
        }
        Ok(Partition(parts))
    }

    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn contains(&self, part: u32) -> bool {
        self.0.contains(&part)
    }

    /// Number of parts congruent to `r` modulo `modulus`.
    pub fn count_residue(&self, r: u32, modulus: u32) -> usize {
        self.0.iter().filter(|&&p| p % modulus == r % modulus).count()
    }

    /// Parts in increasing order.
    pub fn ascending(&self) -> Vec<u32> {
        self.0.iter().rev().copied().collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// Difference condition between consecutive parts `lo < hi`: a gap of at
/// least 4, or 3 from a multiple of 3, or 2 from a part `= 2 mod 3`.
pub fn capparelli_gap_ok(lo: u32, hi: u32) -> bool {
    if hi <= lo {
        return false;
    }
    match hi - lo {
        d if d >= 4 => true,
        3 => lo.is_multiple_of(3),
        2 => lo % 3 == 2,
        _ => false,
    }
}

/// The partition families used by the identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Distinct parts, none congruent to `+-m` modulo 6.
    C(u8),
    /// Capparelli gaps, no part equal to `m`, optionally a bound on parts.
    D { m: u8, max_part: Option<u32> },
    /// Distinct parts, each divisible by 3 or `= +-(6 - 2k) mod 12`, never 2.
    B(u8),
    /// The family attached to the Slater-type sum with index `k`.
    DualC(u8),
    /// Partitions with conditions on thirds of the parts, `M` in {0, 2}.
    A(u8),
}

impl Family {
    pub fn name(&self) -> String {
        match *self {
            Family::C(m) => format!("C{m}"),
            Family::D { m, max_part: None } => format!("D{m}"),
            Family::D { m, max_part: Some(b) } => format!("D{m}:{b}"),
            Family::B(k) => format!("B{k}"),
            Family::DualC(k) => format!("dualC{k}"),
            Family::A(m) => format!("A{m}"),
        }
    }

    pub fn all_names() -> &'static [&'static str] {
        &["C1", "C2", "D1", "D2", "D1:<max>", "D2:<max>", "B1", "B2", "dualC1", "dualC2", "A0", "A2"]
    }

    pub fn is_member(&self, p: &Partition) -> bool {
        let parts = p.parts();
        if parts.is_empty() {
            return true;
        }
        // Local conditions on each successive part.
        for i in 0..parts.len() {
            if !self.allows_next(&parts[..i], parts[i]) {
                return false;
            }
        }
        match *self {
            Family::DualC(1) => dual_c1_global(parts),
            Family::DualC(2) => dual_c2_global(parts),
            Family::A(m) => a_family_member(parts, m as u32),
            _ => true,
        }
    }

    /// Whether `next` may follow `prefix` (parts in non-increasing order).
    fn allows_next(&self, prefix: &[u32], next: u32) -> bool {
        let last = prefix.last().copied();
        let distinct = last.is_none_or(|l| l > next);
        match *self {
            Family::C(m) => {
                let r = next % 6;
                distinct && r != m as u32 % 6 && r != (6 - m as u32 % 6) % 6
            }
            Family::D { m, max_part } => {
                next != m as u32
                    && max_part.is_none_or(|b| next <= b)
                    && last.is_none_or(|l| capparelli_gap_ok(next, l))
            }
            Family::B(k) => {
                let target = 6 - 2 * k as u32;
                let r = next % 12;
                distinct
                    && !(k == 2 && next == 2)
                    && (next.is_multiple_of(3) || r == target || r == 12 - target)
            }
            Family::DualC(_) => match next % 6 {
                3 => true,
                1 | 5 => distinct,
                0 => next.is_multiple_of(12),
                _ => false,
            },
            Family::A(m) => {
                let mult = prefix.iter().rev().take_while(|&&x| x == next).count();
                if next.is_multiple_of(2) {
                    mult == 0
                } else if next >= m as u32 {
                    mult < 3
                } else {
                    mult == 0
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownFamily(s.to_string());
        let (head, bound) = match s.split_once(':') {
            Some((h, b)) => (h, Some(b.parse::<u32>().map_err(|_| unknown())?)),
            None => (s, None),
        };
        let f = match (head, bound) {
            ("C1", None) => Family::C(1),
            ("C2", None) => Family::C(2),
            ("D1", b) => Family::D { m: 1, max_part: b },
            ("D2", b) => Family::D { m: 2, max_part: b },
            ("B1", None) => Family::B(1),
            ("B2", None) => Family::B(2),
            ("dualC1", None) => Family::DualC(1),
            ("dualC2", None) => Family::DualC(2),
            ("A0", None) => Family::A(0),
            ("A2", None) => Family::A(2),
            _ => return Err(unknown()),
        };
        if bound.is_some_and(|b| b > PART_CAP) {
            return Err(unknown());
        }
        Ok(f)
    }
}

/// With `l` the largest part `= 3 mod 6`: every smaller such part occurs,
/// parts `= +-1 mod 6` are at most `l + 2` and parts `= 0 mod 12` at most
/// `2l + 6`. Without a part `= 3 mod 6` only the empty partition qualifies.
fn dual_c1_global(parts: &[u32]) -> bool {
    let Some(l) = parts.iter().copied().filter(|p| p % 6 == 3).max() else {
        return parts.is_empty();
    };
    (0..=l / 6).all(|i| parts.contains(&(6 * i + 3)))
        && parts.iter().all(|&p| match p % 6 {
            1 | 5 => p <= l + 2,
            0 => p <= 2 * l + 6,
            _ => true,
        })
}

/// With `l = 6n + 3` the largest part `= 3 mod 6`: for `n = 0` only 3s
/// occur; otherwise every part 9, 15, ..., `l` occurs (3 is optional),
/// parts `= +-1 mod 6` are at most `l - 4` and parts `= 0 mod 12` at most
/// `2l - 6`.
fn dual_c2_global(parts: &[u32]) -> bool {
    let Some(l) = parts.iter().copied().filter(|p| p % 6 == 3).max() else {
        return parts.is_empty();
    };
    if l == 3 {
        return parts.iter().all(|&p| p == 3);
    }
    (1..=l / 6).all(|i| parts.contains(&(6 * i + 3)))
        && parts.iter().all(|&p| match p % 6 {
            1 | 5 => p + 4 <= l,
            0 => p + 6 <= 2 * l,
            _ => true,
        })
}

/// Conditions on consecutive triples of parts, with `lambda_j = 0` past the
/// last part. Congruence checks at such padded positions are skipped.
fn a_family_member(parts: &[u32], m: u32) -> bool {
    let nu = parts.len() as i64;
    if !(nu % 3 == 0 || nu % 3 == m as i64 % 3) {
        return false;
    }
    let lam = |j: i64| -> i64 {
        if j >= 1 && j <= nu {
            parts[(j - 1) as usize] as i64
        } else {
            0
        }
    };
    let chi = |x: i64| (x % 2 == 0) as i64;
    let blocks = (nu + 2) / 3;
    let delta = (3 * blocks - nu == 1) as i64;
    let last = lam(nu);
    for i in 1..=blocks {
        if 3 * i < nu && lam(3 * i) - lam(3 * i + 1) < 2 {
            return false;
        }
        let d = (m == 2 && 3 * i == nu + 1) as i64;
        if (lam(3 * i - 2) - 2 * lam(3 * i - 1) + lam(3 * i) * (1 - d)).abs() > 1 - d {
            return false;
        }
        for r in [0, 2] {
            let j = 3 * i - r;
            if j > nu {
                continue;
            }
            let v = lam(j);
            let evens_below = parts.iter().filter(|&&p| p % 2 == 0 && (p as i64) < v).count() as i64;
            let rhs = 1 + m as i64 + 2 * (nu - i + delta * (last + chi(last) + 1) + evens_below) + chi(v);
            if (v - rhs).rem_euclid(4) != 0 {
                return false;
            }
        }
    }
    true
}

fn check_size(n: u32) -> Result<()> {
    if n > SIZE_CAP {
        return Err(Error::CapExceeded { requested: n as u64, cap: SIZE_CAP as u64 });
    }
    Ok(())
}

fn dfs(family: &Family, rem: u32, prefix: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if rem == 0 {
        if family.is_member(&Partition(prefix.clone())) {
            visit(prefix);
        }
        return;
    }
    let top = prefix.last().map_or(rem, |&l| l.min(rem));
    for p in (1..=top).rev() {
        if family.allows_next(prefix, p) {
            prefix.push(p);
            dfs(family, rem - p, prefix, visit);
            prefix.pop();
        }
    }
}

/// All members of `family` of size `n`, in lexicographically decreasing order.
pub fn enumerate(family: &Family, n: u32) -> Result<Vec<Partition>> {
    check_size(n)?;
    let mut out = Vec::new();
    dfs(family, n, &mut Vec::new(), &mut |p| out.push(Partition(p.to_vec())));
    Ok(out)
}

pub fn count(family: &Family, n: u32) -> Result<u64> {
    check_size(n)?;
    let mut c = 0u64;
    dfs(family, n, &mut Vec::new(), &mut |_| c += 1);
    Ok(c)
}

/// `sum_{n <= n_max} count(family, n) q^n`, truncated at `q^{n_max}`.
pub fn counting_series(family: &Family, n_max: u32) -> Result<QPoly> {
    let mut acc = QPoly::zero();
    for n in 0..=n_max {
        acc.add_term(Monomial::q(n as i64), BigInt::from(count(family, n)?));
    }
    Ok(acc.truncate(n_max as i64))
}

/// Weight `a^{#parts = 2 mod 3} b^{#parts = 1 mod 3} q^{|pi|}` of a partition.
pub fn ab_weight(p: &Partition) -> Monomial {
    Monomial::q(p.size() as i64)
        .times_marker(Marker::A, p.count_residue(2, 3) as i32)
        .times_marker(Marker::B, p.count_residue(1, 3) as i32)
}

/// Members of `D_{m,N}` (Capparelli gaps, parts at most `N`, no part `m`),
/// in lexicographically decreasing order.
pub fn bounded_members(m: u8, max_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    walk_bounded(m, max_part, &mut |p| out.push(Partition(p.to_vec())));
    out
}

fn walk_bounded(m: u8, max_part: u32, visit: &mut dyn FnMut(&[u32])) {
    fn go(m: u32, upper: u32, prefix: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        visit(prefix);
        for p in (1..=upper).rev() {
            if p == m || prefix.last().is_some_and(|&l| !capparelli_gap_ok(p, l)) {
                continue;
            }
            prefix.push(p);
            go(m, p - 1, prefix, visit);
            prefix.pop();
        }
    }
    go(m as u32, max_part, &mut Vec::new(), visit);
}

static G_CACHE: LazyLock<RwLock<HashMap<(u8, i64), QPoly>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `G_{m,N}(a, b, q)` by enumerating `D_{m,N}`.
///
/// The formal seeds `G_{m,-2} = [m = 1]` and `G_{m,-1} = 1` are returned for
/// `N = -2, -1`.
pub fn generating_polynomial(m: u8, max_part: i64) -> Result<QPoly> {
    check_m(m)?;
    if max_part < -2 {
        return Err(Error::InvalidParam(format!("max part {max_part} is below -2")));
    }
    if max_part == -2 {
        return Ok(if m == 1 { QPoly::one() } else { QPoly::zero() });
    }
    if max_part > PART_CAP as i64 {
        return Err(Error::CapExceeded { requested: max_part as u64, cap: PART_CAP as u64 });
    }
    if let Some(p) = G_CACHE.read().unwrap().get(&(m, max_part)) {
        return Ok(p.clone());
    }
    let mut counts: HashMap<(i32, i32, i64), u64> = HashMap::new();
    walk_bounded(m, max_part.max(0) as u32, &mut |parts| {
        let (mut a, mut b, mut s) = (0, 0, 0i64);
        for &p in parts {
            s += p as i64;
            match p % 3 {
                2 => a += 1,
                1 => b += 1,
                _ => {}
            }
        }
        *counts.entry((a, b, s)).or_default() += 1;
    });
    let poly = QPoly::from_terms(counts.into_iter().map(|((a, b, s), c)| {
        (
            Monomial::q(s).times_marker(Marker::A, a).times_marker(Marker::B, b),
            BigInt::from(c),
        )
    }));
    G_CACHE.write().unwrap().insert((m, max_part), poly.clone());
    Ok(poly)
}

fn check_m(m: u8) -> Result<()> {
    if m == 1 || m == 2 {
        Ok(())
    } else {
        Err(Error::InvalidParam(format!("m must be 1 or 2, got {m}")))
    }
}

/// Recurrences satisfied by `G_{m,N}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GRecurrence {
    /// Three first-order relations cycling through the residues of `N` mod 3.
    Triple,
    /// Order three in steps of 3, for `N = 1 mod 3`.
    Order3,
    /// Order four in steps of 3, for `N = 1 mod 3`.
    Order4,
    /// Order three in steps of 3, for `N = 0 mod 3`.
    Mod3,
}

/// `c * q^e * a^i * b^j`.
fn abq(c: i64, e: i64, i: i32, j: i32) -> QPoly {
    QPoly::term(c, Monomial::q(e).times_marker(Marker::A, i).times_marker(Marker::B, j))
}

fn delta(x: bool) -> i64 {
    x as i64
}

/// `G_{m,N}(a, b, q)` from the chosen recurrence.
///
/// `max_part` is the bound `N` itself; a value outside the residue class a
/// recurrence generates is an error.
pub fn g_by_recurrence(m: u8, max_part: i64, rec: GRecurrence) -> Result<QPoly> {
    check_m(m)?;
    let wrong = || Error::WrongResidue { max_part, recurrence: format!("{rec:?}") };
    let d1 = delta(m == 1);
    let d2 = delta(m == 2);
    let g_m2 = QPoly::constant(d1);
    let g_1 = QPoly::one() + abq(d2, 1, 0, 1);
    match rec {
        GRecurrence::Triple => {
            if max_part < -2 {
                return Err(wrong());
            }
            // values[k + 2] = G_k
            let mut v = vec![g_m2, QPoly::one(), QPoly::one(), g_1];
            for k in 2..=max_part {
                let g = |i: i64| &v[(i + 2) as usize];
                let n = k.div_euclid(3);
                let next = match k.rem_euclid(3) {
                    2 => {
                        let n = n + 1; // k = 3n - 1
                        g(3 * n - 2) + &(abq(1, 3 * n - 1, 1, 0) * g(3 * n - 5))
                    }
                    0 => g(3 * n - 1) + &(abq(1, 3 * n, 0, 0) * g(3 * n - 3)),
                    _ => {
                        g(3 * n) + &(abq(1, 3 * n + 1, 0, 1) * g(3 * n - 3)) + abq(1, 6 * n, 1, 1) * g(3 * n - 5)
                    }
                };
                v.push(next);
            }
            Ok(v[(max_part + 2) as usize].clone())
        }
        GRecurrence::Order3 | GRecurrence::Order4 => {
            if max_part.rem_euclid(3) != 1 || max_part < -2 {
                return Err(wrong());
            }
            let top = (max_part - 1) / 3;
            // v[i] = G_{3i - 2}, starting at i = 0 (G_{-2}).
            let mut v = vec![g_m2, g_1];
            if rec == GRecurrence::Order4 {
                let g4 = QPoly::one()
                    + abq(1, 3, 0, 0)
                    + abq(1, 4, 0, 1)
                    + abq(d1, 2, 1, 0)
                    + abq(d1, 6, 1, 1)
                    + abq(d2, 1, 0, 1);
                v.push(g4);
            }
            let zero = QPoly::zero();
            while (v.len() as i64) <= top + 1 {
                let n = v.len() as i64 - 1; // computing G_{3n+1}
                let g = |i: i64| -> &QPoly {
                    // G_{3i-2} lives at index i
                    if i < 0 { &zero } else { &v[i as usize] }
                };
                let next = if rec == GRecurrence::Order3 {
                    (QPoly::one() + abq(1, 3 * n, 0, 0)) * g(n)
                        + (abq(1, 3 * n - 1, 1, 0) + abq(1, 3 * n + 1, 0, 1) + abq(1, 6 * n, 1, 1)) * g(n - 1)
                        + (abq(1, 6 * n - 3, 1, 1) - abq(1, 9 * n - 6, 1, 1)) * g(n - 2)
                } else {
                    g(n).clone()
                        + (abq(1, 3 * n, 0, 0)
                            + abq(1, 6 * n - 3, 0, 0)
                            + abq(1, 3 * n - 1, 1, 0)
                            + abq(1, 3 * n + 1, 0, 1)
                            + abq(1, 6 * n, 1, 1))
                            * g(n - 1)
                        + (abq(1, 6 * n - 4, 1, 0) + abq(1, 6 * n - 2, 0, 1) + abq(1, 6 * n - 3, 1, 1)) * g(n - 2)
                        + (abq(1, 9 * n - 9, 1, 1) - abq(1, 12 * n - 15, 1, 1)) * g(n - 3)
                };
                v.push(next);
            }
            Ok(v[(top + 1) as usize].clone())
        }
        GRecurrence::Mod3 => {
            if max_part.rem_euclid(3) != 0 || max_part < 0 {
                return Err(wrong());
            }
            let top = max_part / 3;
            let g3 = QPoly::one() + abq(1, 3, 0, 0) + abq(d1, 2, 1, 0) + abq(d2, 1, 0, 1);
            // v[i] = G_{3i}
            let mut v = vec![QPoly::one(), g3];
            let zero = QPoly::zero();
            while (v.len() as i64) <= top {
                let n = v.len() as i64;
                let g = |i: i64| -> &QPoly { if i < 0 { &zero } else { &v[i as usize] } };
                let next = (QPoly::one() + abq(1, 3 * n, 0, 0)) * g(n - 1)
                    + (abq(1, 3 * n - 1, 1, 0) + abq(1, 3 * n - 2, 0, 1) + abq(1, 6 * n - 6, 1, 1)) * g(n - 2)
                    + (abq(1, 6 * n - 6, 1, 1) - abq(1, 9 * n - 12, 1, 1)) * g(n - 3);
                v.push(next);
            }
            Ok(v[top as usize].clone())
        }
    }
}

/// `x(x-1)/2` for every integer `x`.
pub fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// `(-a q^{e1}; q^6)_l (-b q^{e2}; q^6)_{l + extra}` with markers.
fn ab_pochhammer(e_a: i64, l: i64, e_b: i64, l_b: i64) -> QPoly {
    pochhammer(-1, Monomial::q(e_a).times_marker(Marker::A, 1), 6, l as u32)
        * pochhammer(-1, Monomial::q(e_b).times_marker(Marker::B, 1), 6, l_b as u32)
}

/// Closed form of `G_{1,3N+1}` for `N >= -1`.
pub fn g1_closed_form(n: i64) -> QPoly {
    let mut acc = QPoly::zero();
    for l in 0..=(n + 1).div_euclid(2) {
        acc += (gauss_binomial(n + 1, 2 * l, 3) * ab_pochhammer(2, l, 4, l)).shift_q(3 * choose2(n - 2 * l + 1));
    }
    acc
}

/// Shared shape of the closed forms for `G_{2,3N+1}`, `S_N` and `T_N`.
fn odd_binomial_sum(n: i64, e_a: i64, e_b: i64, extra_b: i64) -> QPoly {
    let mut acc = QPoly::zero();
    if n < 0 {
        return acc;
    }
    for l in 0..=n / 2 {
        acc += (gauss_binomial(n + 1, 2 * l + 1, 3) * ab_pochhammer(e_a, l, e_b, l + extra_b))
            .shift_q(3 * choose2(n - 2 * l));
    }
    acc
}

/// Closed form of `G_{2,3N+1}` for `N >= 0`.
pub fn g2_closed_form(n: i64) -> QPoly {
    odd_binomial_sum(n, 5, 1, 1)
}

/// `S_N`, zero for `N < 0`.
pub fn s_poly(n: i64) -> QPoly {
    odd_binomial_sum(n, 2, 4, 0)
}

/// `T_N`, zero for `N < 0`.
pub fn t_poly(n: i64) -> QPoly {
    odd_binomial_sum(n, 5, 1, 0)
}

/// `G_{1,3N} = S_N + a q^{3N-1} S_{N-1}`.
pub fn g1_mod3_closed_form(n: i64) -> QPoly {
    s_poly(n) + abq(1, 3 * n - 1, 1, 0) * s_poly(n - 1)
}

/// `G_{2,3N} = T_N + b q^{3N-2} T_{N-1}`.
pub fn g2_mod3_closed_form(n: i64) -> QPoly {
    t_poly(n) + abq(1, 3 * n - 2, 0, 1) * t_poly(n - 1)
}

/// Sets `a = b = 1`.
pub fn at_ab_one(p: &QPoly) -> QPoly {
    p.substitute_marker(Marker::A, Monomial::ONE)
        .and_then(|p| p.substitute_marker(Marker::B, Monomial::ONE))
        .expect("marker-only substitution never needs exactness")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn gap_rule() {
        assert!(capparelli_gap_ok(2, 4));
        assert!(!capparelli_gap_ok(1, 3));
        assert!(capparelli_gap_ok(3, 6));
        assert!(!capparelli_gap_ok(4, 7));
        assert!(capparelli_gap_ok(4, 8));
        assert!(!capparelli_gap_ok(5, 5));
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![3, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 5, 3]).unwrap(), p(&[5, 3, 1]));
    }

    #[test]
    fn enumeration_order_is_lex_decreasing() {
        let all = enumerate(&Family::D { m: 1, max_part: None }, 12).unwrap();
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert!(all.iter().all(|x| x.size() == 12));
    }

    #[test]
    fn size_cap_is_enforced() {
        assert!(matches!(enumerate(&Family::C(1), 121), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn small_initial_polynomials() {
        // G_{1,4} = 1 + q^3 + b q^4 + a q^2 + ab q^6
        let g = generating_polynomial(1, 4).unwrap();
        let expect = QPoly::one() + abq(1, 3, 0, 0) + abq(1, 4, 0, 1) + abq(1, 2, 1, 0) + abq(1, 6, 1, 1);
        assert_eq!(g, expect);
        assert_eq!(generating_polynomial(2, 1).unwrap(), QPoly::one() + abq(1, 1, 0, 1));
    }

    #[test]
    fn recurrences_reject_wrong_residues() {
        assert!(g_by_recurrence(1, 3, GRecurrence::Order3).is_err());
        assert!(g_by_recurrence(1, 4, GRecurrence::Mod3).is_err());
        assert!(g_by_recurrence(3, 4, GRecurrence::Order3).is_err());
    }

    #[test]
    fn family_names_roundtrip() {
        for name in ["C1", "C2", "D1", "D2", "D2:19", "B1", "B2", "dualC1", "dualC2", "A0", "A2"] {
            assert_eq!(name.parse::<Family>().unwrap().name(), name);
        }
        assert!("E7".parse::<Family>().is_err());
    }
}

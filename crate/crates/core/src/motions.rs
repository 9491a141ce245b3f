//! The motion bijection between gap-condition partitions and pairs
//! (minimal configuration, move path).
//!
//! A partition is read from its smallest part: two consecutive parts at
//! distance at most 3 form a *pair*, every other part is a *singleton*.
//! Pairs come in two shapes, `(3k-1, 3k+1)` and `(3k, 3k+3)`. A forward
//! move advances one pair by one step, which raises the size by 3; when a
//! singleton is in the way, the pair jumps over it and the singleton drops
//! below the pair. Singletons move by single units.
//!
//! Reducing a partition moves the pairs down smallest first, each to its
//! lowest position, and then the singletons. Rebuilding moves the
//! singletons first (the largest singleton by the largest amount) and then
//! the pairs, largest first.
//!
//! Five variants share these moves and differ in the minimal
//! configuration, as listed on [`Variant`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{capparelli_gap_ok, Family, Partition};
use crate::qpoly::QPoly;
use crate::qseries::gauss_binomial;

/// Which family and minimal configuration the bijection uses.
///
/// | variant | family | pair `k` at minimum | singleton `i` at minimum |
/// |---|---|---|---|
/// | `Pi` | no part 1 | `(6k-4, 6k-2)` | `6n-2+4i` |
/// | `PiStar1` | no 1, no 2 | `(6k-3, 6k)` | `6n-1+4i` |
/// | `PiStar2` | part 1, no 2 | `(6k-1, 6k+1)` | `6n+1+4i` |
/// | `PiHat1` | no 2, chain start | couple `(6k-5, 6k-1)` | `6n-1+4i` |
/// | `PiHat2` | part 1, no chain | `(6k-1, 6k+1)` | `6n+2+4i` |
///
/// In the `PiHat1` variant the bottom of the partition may be a *chain*
/// `1, 5, 7, 11, ..., 6c-5, 6c-1` followed by a part at least `6c+3`. Its
/// couples `(6k-5, 6k-1)` count as pairs; the first move of a couple turns it
/// into the pair `(6k-3, 6k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Pi,
    PiStar1,
    PiStar2,
    PiHat1,
    PiHat2,
}

impl Variant {
    pub const ALL: [Variant; 5] =
        [Variant::Pi, Variant::PiStar1, Variant::PiStar2, Variant::PiHat1, Variant::PiHat2];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Pi => "pi",
            Variant::PiStar1 => "pi1-star",
            Variant::PiStar2 => "pi2-star",
            Variant::PiHat1 => "pi1-hat",
            Variant::PiHat2 => "pi2-hat",
        }
    }

    /// The excluded part `m` of the gap family the variant acts on.
    pub fn family_m(self) -> u8 {
        if self == Variant::Pi {
            1
        } else {
            2
        }
    }

    pub fn fixed_one(self) -> bool {
        matches!(self, Variant::PiStar2 | Variant::PiHat2)
    }

    /// Twice the center of pair `rank` (1-based) at its minimal position.
    fn min_center_half(self, rank: i64) -> i64 {
        12 * rank
            + match self {
                Variant::Pi | Variant::PiHat1 => -6,
                Variant::PiStar1 => -3,
                Variant::PiStar2 | Variant::PiHat2 => 0,
            }
    }

    /// Minimal position of singleton `i` (1-based, increasing) with `n` pairs.
    fn singleton_min(self, n: i64, i: i64) -> i64 {
        6 * n
            + 4 * i
            + match self {
                Variant::Pi => -2,
                Variant::PiStar1 | Variant::PiHat1 => -1,
                Variant::PiStar2 => 1,
                Variant::PiHat2 => 2,
            }
    }

    /// Size of the minimal configuration with `m` singletons and `n` pairs.
    pub fn base_weight(self, m: i64, n: i64) -> i64 {
        let q = 2 * m * m + 6 * m * n + 6 * n * n;
        q + match self {
            Variant::Pi => 0,
            Variant::PiStar1 => m + 3 * n,
            Variant::PiStar2 => 3 * m + 6 * n + 1,
            Variant::PiHat1 => m,
            Variant::PiHat2 => 4 * m + 6 * n + 1,
        }
    }

    /// The variant that handles `p` among the two variants of a pairing
    /// scheme: `Pi` for the no-1 family, the star or hat pair otherwise.
    pub fn classify(p: &Partition, m: u8, hat: bool) -> Result<Variant> {
        match (m, hat) {
            (1, _) => Ok(Variant::Pi),
            (2, false) => Ok(if p.contains(1) { Variant::PiStar2 } else { Variant::PiStar1 }),
            (2, true) => Ok(if chain_length(p.parts()).is_some() { Variant::PiHat1 } else { Variant::PiHat2 }),
            _ => Err(Error::InvalidParam(format!("no motion variant for m = {m}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidParam(format!("unknown variant `{s}`")))
    }
}

/// Length `c` of the initial chain `1, 5, 7, 11, ..., 6c-5, 6c-1` when the
/// next part is at least `6c+3`. `Some(0)` means no part 1 at all; `None`
/// means a part 1 that starts no valid chain.
pub fn chain_length(desc_parts: &[u32]) -> Option<u32> {
    let asc: Vec<u32> = desc_parts.iter().rev().copied().collect();
    if asc.first() != Some(&1) {
        return Some(0);
    }
    let mut c = 0usize;
    while 2 * c + 1 < asc.len() + 1 {
        let k = c as u32 + 1;
        if asc.get(2 * c) == Some(&(6 * k - 5)) && asc.get(2 * c + 1) == Some(&(6 * k - 1)) {
            c += 1;
            match asc.get(2 * c) {
                None => return Some(c as u32),
                Some(&next) if next >= 6 * k + 3 => return Some(c as u32),
                _ => {}
            }
        } else {
            return None;
        }
    }
    None
}

/// Minimal configuration: `m` singletons and `n` pairs placed as low as the
/// variant allows, inside the family with parts at most `3N+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinimalConfig {
    pub variant: Variant,
    #[serde(rename = "N")]
    pub big_n: u32,
    pub m: u32,
    pub n: u32,
}

impl MinimalConfig {
    pub fn new(variant: Variant, big_n: u32, m: u32, n: u32) -> Self {
        MinimalConfig { variant, big_n, m, n }
    }

    /// How far the largest singleton can move.
    pub fn singleton_bound(&self) -> i64 {
        3 * self.big_n as i64 + 1 - self.variant.singleton_min(self.n as i64, self.m as i64)
    }

    /// How many steps the largest pair can take.
    pub fn pair_bound(&self) -> i64 {
        let top = self.variant.min_center_half(self.n as i64);
        let room = 6 * self.big_n as i64 - 6 * self.m as i64 - top;
        debug_assert_eq!(room.rem_euclid(3), 0);
        room.div_euclid(3)
    }

    pub fn base_weight(&self) -> i64 {
        self.variant.base_weight(self.m as i64, self.n as i64)
    }

    /// Whether the minimal configuration fits below `3N+1` and the largest
    /// pair and singleton have room (vacuous for an empty kind).
    pub fn is_valid(&self) -> bool {
        let parts = self.minimal_state().parts();
        parts.first().is_none_or(|&t| t as i64 <= 3 * self.big_n as i64 + 1)
            && (self.n == 0 || self.pair_bound() >= 0)
            && (self.m == 0 || self.singleton_bound() >= 0)
    }

    /// The minimal configuration as a partition.
    pub fn minimal_partition(&self) -> Partition {
        Partition::new(self.minimal_state().parts()).expect("minimal parts are ordered")
    }

    fn minimal_state(&self) -> State {
        let v = self.variant;
        let mut objs = Vec::new();
        let chain = if v == Variant::PiHat1 { self.n } else { 0 };
        if v != Variant::PiHat1 {
            for r in 1..=self.n as i64 {
                let (lo, hi) = pair_at_center(v.min_center_half(r));
                objs.push(Obj::Pair(lo, hi));
            }
        }
        for i in 1..=self.m as i64 {
            objs.push(Obj::Single(v.singleton_min(self.n as i64, i) as u32));
        }
        State { big_n: self.big_n, chain, fixed_one: v.fixed_one(), objs }
    }

    /// The closed-form generating polynomial of the class:
    /// `q^base [B+m choose m]_q [P+n choose n]_{q^3}`, plus the single
    /// partition made of pairs only that the binomial convention misses in
    /// the `PiHat2` variant.
    pub fn closed_form(&self) -> QPoly {
        let (m, n) = (self.m as i64, self.n as i64);
        let mut p = (gauss_binomial(self.singleton_bound() + m, m, 1)
            * gauss_binomial(self.pair_bound() + n, n, 3))
        .shift_q(self.base_weight());
        if self.variant == Variant::PiHat2 && m == 0 && self.big_n.is_multiple_of(2) && 2 * n == self.big_n as i64 {
            p += QPoly::q_pow(self.base_weight());
        }
        p
    }
}

fn pair_at_center(h: i64) -> (u32, u32) {
    // h is twice the center: 6k gives (3k-1, 3k+1), 6k+3 gives (3k, 3k+3).
    if h % 6 == 0 {
        let k3 = (h / 2) as u32;
        (k3 - 1, k3 + 1)
    } else {
        let k3 = ((h - 3) / 2) as u32;
        (k3, k3 + 3)
    }
}

/// Amounts moved: `x` for singletons, `y` for pairs, both as partitions
/// (non-increasing, zeros dropped). `x[0]` belongs to the largest
/// singleton and `y[0]` to the largest pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MovePath {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

impl MovePath {
    pub fn weight(&self) -> i64 {
        self.x.iter().map(|&v| v as i64).sum::<i64>() + 3 * self.y.iter().map(|&v| v as i64).sum::<i64>()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// `(3k-1, 3k+1) -> (3k, 3k+3)`.
    AdvanceNarrow,
    /// `(3k, 3k+3) -> (3k+2, 3k+4)`.
    AdvanceWide,
    /// Pair `(3k-1, 3k+1)` over singleton `3k+5`: singleton `3k-1`, pair `(3k+3, 3k+6)`.
    CrossNarrow,
    /// Pair `(3k, 3k+3)` over singleton `3k+6`: singleton `3k`, pair `(3k+5, 3k+7)`.
    CrossWideEven,
    /// Pair `(3k, 3k+3)` over singleton `3k+7`: singleton `3k+1`, pair `(3k+5, 3k+7)`.
    CrossWideOdd,
    /// Chain couple `(6k-5, 6k-1)` becomes the pair `(6k-3, 6k)`.
    ChainRelease,
    /// A pair hops over two or more singletons in one step.
    MultiCross,
    /// A singleton moves by the given amount.
    SingletonShift,
}

/// One move. `reverse` marks the inverse of `kind`; `before` and `after`
/// are the whole partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub kind: MoveKind,
    pub reverse: bool,
    pub before: Vec<u32>,
    pub after: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Obj {
    Single(u32),
    Pair(u32, u32),
}

impl Obj {
    fn low(self) -> u32 {
        match self {
            Obj::Single(s) => s,
            Obj::Pair(l, _) => l,
        }
    }
    fn high(self) -> u32 {
        match self {
            Obj::Single(s) => s,
            Obj::Pair(_, h) => h,
        }
    }
}

#[derive(Clone, Debug)]
struct State {
    big_n: u32,
    chain: u32,
    fixed_one: bool,
    /// Pairs and singletons above the chain or fixed part, increasing.
    objs: Vec<Obj>,
}

impl State {
    fn parts(&self) -> Vec<u32> {
        let mut v = Vec::new();
        if self.fixed_one {
            v.push(1);
        }
        for k in 1..=self.chain {
            v.push(6 * k - 5);
            v.push(6 * k - 1);
        }
        for o in &self.objs {
            match *o {
                Obj::Single(s) => v.push(s),
                Obj::Pair(l, h) => {
                    v.push(l);
                    v.push(h);
                }
            }
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Part right below object `idx`, and whether it is a singleton.
    fn below(&self, idx: usize) -> Option<(u32, bool)> {
        if idx > 0 {
            let o = self.objs[idx - 1];
            return Some((o.high(), matches!(o, Obj::Single(_))));
        }
        if self.chain > 0 {
            return Some((6 * self.chain - 1, false));
        }
        self.fixed_one.then_some((1, false))
    }

    /// Index in `objs` of the pair with the given ordinal among pairs.
    fn pair_index(&self, ordinal: usize) -> usize {
        self.objs
            .iter()
            .enumerate()
            .filter(|(_, o)| matches!(o, Obj::Pair(..)))
            .nth(ordinal)
            .map(|(i, _)| i)
            .expect("pair ordinal in range")
    }

    fn singles_below(&self, idx: usize) -> i64 {
        self.objs[..idx].iter().filter(|o| matches!(o, Obj::Single(_))).count() as i64
    }

    /// Re-reads pairs and singletons greedily from the smallest part. A run
    /// `3j, 3j+3, 3j+6` may be read either way; both readings have the same
    /// effective coordinates, so the greedy one is used throughout.
    fn resort(&mut self) {
        let mut asc: Vec<u32> = Vec::new();
        for o in &self.objs {
            match *o {
                Obj::Single(s) => asc.push(s),
                Obj::Pair(l, h) => {
                    asc.push(l);
                    asc.push(h);
                }
            }
        }
        asc.sort_unstable();
        self.objs = pair_up(&asc);
    }

    fn blocked(&self, what: &str) -> Error {
        Error::Blocked(format!("{what} in {}", Partition::new(self.parts()).unwrap()))
    }

    /// Every consecutive pair of parts satisfies the gap condition and no
    /// part exceeds `3N+1`.
    fn check(&self) -> Result<()> {
        let parts = self.parts();
        let ok = parts.windows(2).all(|w| capparelli_gap_ok(w[1], w[0]))
            && parts.first().is_none_or(|&t| t <= 3 * self.big_n + 1);
        if ok {
            Ok(())
        } else {
            Err(self.blocked("move leaves the family"))
        }
    }

    /// Moves the pair at `idx` one step down: its center drops by 3/2, and
    /// every singleton right below that would clash with it hops over the
    /// pair (singleton up by 6, pair center down by 3 more).
    fn reverse_step(&mut self, idx: usize) -> Result<MoveKind> {
        let Obj::Pair(lo, hi) = self.objs[idx] else { unreachable!() };
        let wide = hi - lo == 3;
        let mut h = (lo + hi) as i64 - 3;
        let mut crossed = Vec::new();
        let mut j = idx;
        loop {
            let (nlo, _) = pair_at_center(h);
            let below = if j > 0 {
                let o = self.objs[j - 1];
                Some((o.high(), matches!(o, Obj::Single(_))))
            } else {
                self.below(0)
            };
            match below {
                Some((p, single)) if !capparelli_gap_ok(p, nlo) => {
                    if !single {
                        return Err(self.blocked("pair cannot move down"));
                    }
                    crossed.push(j - 1);
                    h -= 6;
                    j -= 1;
                }
                _ => break,
            }
        }
        let mut kind = move_kind(!wide, &crossed, |i| self.objs[i].low());
        let (nlo, nhi) = pair_at_center(h);
        // (3k+5, 3k+7) over singleton 3k lands on (3k+3, 3k+6), which reads
        // from below as pair (3k, 3k+3) under singleton 3k+6: the same
        // partition, recorded as the undone crossing.
        if crossed.is_empty() && nhi - nlo == 3 && idx > 0 && self.objs[idx - 1] == Obj::Single(nlo - 3) {
            kind = MoveKind::CrossWideEven;
        }
        for &i in &crossed {
            let Obj::Single(s) = self.objs[i] else { unreachable!() };
            self.objs[i] = Obj::Single(s + 6);
        }
        self.objs[idx] = Obj::Pair(nlo, nhi);
        self.resort();
        self.check()?;
        Ok(kind)
    }

    /// Moves the pair at `idx` one step up: its center rises by 3/2, and
    /// every singleton right above that would clash with it drops below the
    /// pair (singleton down by 6, pair center up by 3 more).
    fn forward_step(&mut self, idx: usize) -> Result<MoveKind> {
        let Obj::Pair(lo, hi) = self.objs[idx] else { unreachable!() };
        let wide = hi - lo == 3;
        let mut h = (lo + hi) as i64 + 3;
        let mut crossed = Vec::new();
        let mut j = idx + 1;
        while let Some(&o) = self.objs.get(j) {
            let (_, nhi) = pair_at_center(h);
            if capparelli_gap_ok(nhi, o.low()) {
                break;
            }
            if !matches!(o, Obj::Single(_)) {
                return Err(self.blocked("pair cannot move up"));
            }
            crossed.push(j);
            h += 6;
            j += 1;
        }
        let kind = move_kind(wide, &crossed, |i| self.objs[i].low());
        for &i in &crossed {
            let Obj::Single(s) = self.objs[i] else { unreachable!() };
            self.objs[i] = Obj::Single(s - 6);
        }
        let (nlo, nhi) = pair_at_center(h);
        if nhi > 3 * self.big_n + 1 {
            return Err(Error::PathOutOfBounds(format!(
                "a pair passes the largest allowed part {}",
                3 * self.big_n + 1
            )));
        }
        self.objs[idx] = Obj::Pair(nlo, nhi);
        self.resort();
        self.check()?;
        Ok(kind)
    }
}

/// Names a step. `from_wide` is the shape the forward move starts from.
fn move_kind(from_wide: bool, crossed: &[usize], low: impl Fn(usize) -> u32) -> MoveKind {
    match (crossed.len(), from_wide) {
        (0, false) => MoveKind::AdvanceNarrow,
        (0, true) => MoveKind::AdvanceWide,
        (1, false) => MoveKind::CrossNarrow,
        (1, true) => {
            // The singleton sits at 3k+6 or 3k+7 before a forward cross, and
            // at 3k or 3k+1 (that is, 3j-6 or 3j-5) before a reverse one.
            if low(crossed[0]).is_multiple_of(3) {
                MoveKind::CrossWideEven
            } else {
                MoveKind::CrossWideOdd
            }
        }
        _ => MoveKind::MultiCross,
    }
}

/// Splits `p` into the variant's fixed part, chain, pairs and singletons.
fn decompose(p: &Partition, variant: Variant, big_n: u32) -> Result<State> {
    let family = Family::D { m: variant.family_m(), max_part: Some(3 * big_n + 1) };
    let not_member = |why: &str| Error::NotInFamily {
        partition: p.to_string(),
        family: format!("{} ({why})", family.name()),
    };
    if !family.is_member(p) {
        return Err(not_member("gap condition or bound"));
    }
    let mut asc = p.ascending();
    let mut chain = 0;
    match variant {
        Variant::Pi | Variant::PiStar1 => {
            if p.contains(1) {
                return Err(not_member("variant excludes the part 1"));
            }
        }
        Variant::PiStar2 | Variant::PiHat2 => {
            if !p.contains(1) {
                return Err(not_member("variant needs the part 1"));
            }
            if variant == Variant::PiHat2 && chain_length(p.parts()).is_some() {
                return Err(not_member("partition starts with a chain"));
            }
            asc.remove(0);
        }
        Variant::PiHat1 => {
            chain = chain_length(p.parts()).ok_or_else(|| not_member("part 1 without a chain"))?;
            asc.drain(..2 * chain as usize);
        }
    }
    Ok(State { big_n, chain, fixed_one: variant.fixed_one(), objs: pair_up(&asc) })
}

fn pair_up(asc: &[u32]) -> Vec<Obj> {
    let mut objs = Vec::new();
    let mut i = 0;
    while i < asc.len() {
        if i + 1 < asc.len() && asc[i + 1] - asc[i] <= 3 {
            objs.push(Obj::Pair(asc[i], asc[i + 1]));
            i += 2;
        } else {
            objs.push(Obj::Single(asc[i]));
            i += 1;
        }
    }
    objs
}

fn entry(kind: MoveKind, reverse: bool, before: Vec<u32>, after: &State) -> TraceEntry {
    TraceEntry { kind, reverse, before, after: after.parts() }
}

/// Reduces `p` to its minimal configuration, recording every move.
///
/// `big_n` fixes the family `D_{m, 3N+1}`; pass `None` to use the smallest
/// `N` whose bound covers the largest part.
pub fn to_minimal(
    p: &Partition,
    variant: Variant,
    big_n: Option<u32>,
) -> Result<(MinimalConfig, MovePath, Vec<TraceEntry>)> {
    let big_n = big_n.unwrap_or_else(|| p.largest().map_or(0, |l| l.saturating_sub(1).div_ceil(3)));
    let mut st = decompose(p, variant, big_n)?;
    let mut trace = Vec::new();
    let n_pairs = st.objs.iter().filter(|o| matches!(o, Obj::Pair(..))).count();
    let n_total = n_pairs as i64 + st.chain as i64;
    let mut ys: Vec<u32> = vec![0; st.chain as usize];

    for ordinal in 0..n_pairs {
        // In the hat variant reduced pairs join the chain, so the next pair
        // is always the first remaining one.
        let pair_ord = if variant == Variant::PiHat1 { 0 } else { ordinal };
        let rank = if variant == Variant::PiHat1 { st.chain as i64 + 1 } else { ordinal as i64 + 1 };
        let target = variant.min_center_half(rank);
        let mut steps = 0u32;
        loop {
            let idx = st.pair_index(pair_ord);
            let Obj::Pair(lo, hi) = st.objs[idx] else { unreachable!() };
            let eff = (lo + hi) as i64 - 6 * st.singles_below(idx);
            if variant == Variant::PiHat1 && eff == target + 3 {
                let r = rank as u32;
                if idx != 0 || (lo, hi) != (6 * r - 3, 6 * r) || st.chain != r - 1 {
                    return Err(st.blocked("pair cannot rejoin the chain"));
                }
                let before = st.parts();
                st.objs.remove(0);
                st.chain += 1;
                trace.push(entry(MoveKind::ChainRelease, true, before, &st));
                steps += 1;
                break;
            }
            if variant != Variant::PiHat1 && eff == target {
                if st.singles_below(idx) != 0 {
                    return Err(st.blocked("singleton left below a reduced pair"));
                }
                break;
            }
            if eff < target {
                return Err(st.blocked("pair passed its minimal position"));
            }
            let before = st.parts();
            let kind = st.reverse_step(idx)?;
            trace.push(entry(kind, true, before, &st));
            steps += 1;
        }
        ys.push(steps);
    }
    if ys.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Blocked(format!("pair displacements {ys:?} are not monotone")));
    }

    let mut xs = Vec::new();
    let singles: Vec<(usize, u32)> = st
        .objs
        .iter()
        .enumerate()
        .filter_map(|(i, o)| match o {
            Obj::Single(s) => Some((i, *s)),
            _ => None,
        })
        .collect();
    for (i, &(idx, s)) in singles.iter().enumerate() {
        let min = variant.singleton_min(n_total, i as i64 + 1);
        if (s as i64) < min || st.objs[idx..].iter().any(|o| matches!(o, Obj::Pair(..))) {
            return Err(st.blocked("singleton below its minimal position"));
        }
        xs.push((idx, s as i64 - min));
    }
    if xs.windows(2).any(|w| w[0].1 > w[1].1) {
        return Err(Error::Blocked("singleton displacements are not monotone".into()));
    }
    for &(idx, dx) in &xs {
        if dx > 0 {
            let before = st.parts();
            let Obj::Single(s) = st.objs[idx] else { unreachable!() };
            st.objs[idx] = Obj::Single(s - dx as u32);
            trace.push(entry(MoveKind::SingletonShift, true, before, &st));
        }
    }

    let cfg = MinimalConfig::new(variant, big_n, singles.len() as u32, n_total as u32);
    debug_assert_eq!(st.parts(), cfg.minimal_partition().parts());
    let mut x: Vec<u32> = xs.iter().map(|&(_, d)| d as u32).filter(|&d| d > 0).collect();
    x.reverse();
    let mut y: Vec<u32> = ys.into_iter().filter(|&d| d > 0).collect();
    y.reverse();
    Ok((cfg, MovePath { x, y }, trace))
}

/// Rebuilds the partition from a minimal configuration and a move path.
pub fn from_minimal(cfg: &MinimalConfig, path: &MovePath) -> Result<(Partition, Vec<TraceEntry>)> {
    if !cfg.is_valid() {
        return Err(Error::InvalidConfig(format!(
            "{} singletons and {} pairs do not fit the {} family with N = {}",
            cfg.m, cfg.n, cfg.variant, cfg.big_n
        )));
    }
    let ordered = |v: &[u32]| v.windows(2).all(|w| w[0] >= w[1]) && v.iter().all(|&d| d > 0);
    if !ordered(&path.x) || !ordered(&path.y) {
        return Err(Error::PathOutOfBounds("path entries must be positive and non-increasing".into()));
    }
    if path.x.len() > cfg.m as usize || path.x.first().is_some_and(|&d| d as i64 > cfg.singleton_bound()) {
        return Err(Error::PathOutOfBounds(format!(
            "singleton path {:?} exceeds {} parts of size {}",
            path.x,
            cfg.m,
            cfg.singleton_bound()
        )));
    }
    if path.y.len() > cfg.n as usize || path.y.first().is_some_and(|&d| d as i64 > cfg.pair_bound()) {
        return Err(Error::PathOutOfBounds(format!(
            "pair path {:?} exceeds {} parts of size {}",
            path.y,
            cfg.n,
            cfg.pair_bound()
        )));
    }
    let mut st = cfg.minimal_state();
    let mut trace = Vec::new();

    let single_idx: Vec<usize> = (0..st.objs.len()).filter(|&i| matches!(st.objs[i], Obj::Single(_))).collect();
    for (k, &dx) in path.x.iter().enumerate() {
        let idx = single_idx[single_idx.len() - 1 - k];
        let before = st.parts();
        let Obj::Single(s) = st.objs[idx] else { unreachable!() };
        st.objs[idx] = Obj::Single(s + dx);
        trace.push(entry(MoveKind::SingletonShift, false, before, &st));
    }

    let n = cfg.n as usize;
    for (k, &dy) in path.y.iter().enumerate() {
        let rank = (n - k) as u32;
        let mut steps = dy;
        let ordinal = if cfg.variant == Variant::PiHat1 {
            if st.chain != rank {
                return Err(st.blocked("chain couple is not at the top of the chain"));
            }
            let before = st.parts();
            st.chain -= 1;
            st.objs.insert(0, Obj::Pair(6 * rank - 3, 6 * rank));
            trace.push(entry(MoveKind::ChainRelease, false, before, &st));
            steps -= 1;
            0
        } else {
            rank as usize - 1
        };
        for _ in 0..steps {
            let idx = st.pair_index(ordinal);
            let before = st.parts();
            let kind = st.forward_step(idx)?;
            trace.push(entry(kind, false, before, &st));
        }
    }
    let parts = st.parts();
    if parts.first().is_some_and(|&t| t > 3 * cfg.big_n + 1) {
        return Err(Error::PathOutOfBounds(format!("largest part exceeds {}", 3 * cfg.big_n + 1)));
    }
    Ok((Partition::new(parts)?, trace))
}

/// Partitions of at most `parts` parts, each at most `max`, non-increasing.
pub fn box_partitions(parts: u32, max: i64) -> Vec<Vec<u32>> {
    fn go(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for v in (1..=max).rev() {
            cur.push(v);
            go(left - 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max < 0 {
        out.push(Vec::new());
        return out;
    }
    go(parts, max as u32, &mut Vec::new(), &mut out);
    out
}

/// Every partition produced from `cfg` by a path inside the bounds.
pub fn class_members(cfg: &MinimalConfig) -> Result<Vec<Partition>> {
    if !cfg.is_valid() {
        return Ok(Vec::new());
    }
    let xs = box_partitions(cfg.m, cfg.singleton_bound());
    let ys = box_partitions(cfg.n, cfg.pair_bound());
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in &xs {
        for y in &ys {
            let path = MovePath { x: x.clone(), y: y.clone() };
            out.push(from_minimal(cfg, &path)?.0);
        }
    }
    Ok(out)
}

/// `sum q^{|pi|}` over the partitions the bijection produces from `cfg`.
pub fn class_generating_polynomial(cfg: &MinimalConfig) -> Result<QPoly> {
    Ok(class_members(cfg)?.iter().map(|p| QPoly::q_pow(p.size() as i64)).sum())
}

/// The variants whose classes together cover `D_{m,3N+1}`.
pub fn covering_variants(m: u8, hat: bool) -> Vec<Variant> {
    match (m, hat) {
        (1, _) => vec![Variant::Pi],
        (_, false) => vec![Variant::PiStar1, Variant::PiStar2],
        (_, true) => vec![Variant::PiHat1, Variant::PiHat2],
    }
}

/// Every valid minimal configuration of `variant` for bound `3N+1`.
pub fn configurations(variant: Variant, big_n: u32) -> Vec<MinimalConfig> {
    let mut out = Vec::new();
    for n in 0..=big_n {
        for m in 0..=big_n {
            let c = MinimalConfig::new(variant, big_n, m, n);
            if c.is_valid() {
                out.push(c);
            }
        }
    }
    out
}

/// Whether `lo < hi` may be adjacent parts; re-exported for tests.
pub fn adjacent_ok(lo: u32, hi: u32) -> bool {
    capparelli_gap_ok(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_reduces_as_described() {
        let p = part(&[27, 24, 20, 15, 12, 9, 4]);
        let (cfg, path, trace) = to_minimal(&p, Variant::Pi, None).unwrap();
        assert_eq!((cfg.m, cfg.n), (3, 2));
        assert_eq!(cfg.minimal_partition(), part(&[22, 18, 14, 10, 8, 4, 2]));
        assert_eq!(path, MovePath { x: vec![4, 3, 2], y: vec![5, 3] });
        assert_eq!(cfg.base_weight() + path.weight(), 111);
        // pair (9, 12): inverses of the narrow advance, the odd wide cross
        // and the narrow advance.
        let kinds: Vec<MoveKind> = trace.iter().map(|t| t.kind).collect();
        assert_eq!(
            &kinds[..3],
            &[MoveKind::AdvanceNarrow, MoveKind::CrossWideOdd, MoveKind::AdvanceNarrow]
        );
        assert_eq!(
            &kinds[3..8],
            &[
                MoveKind::CrossNarrow,
                MoveKind::CrossWideEven,
                MoveKind::AdvanceNarrow,
                MoveKind::CrossWideOdd,
                MoveKind::AdvanceNarrow
            ]
        );
        let (back, _) = from_minimal(&cfg, &path).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn chain_partition_classifies_as_hat_one() {
        let p = part(&[34, 11, 7, 5, 1]);
        assert_eq!(chain_length(p.parts()), Some(2));
        let (cfg, path, _) = to_minimal(&p, Variant::PiHat1, Some(11)).unwrap();
        assert_eq!((cfg.m, cfg.n), (1, 2));
        assert_eq!(path, MovePath { x: vec![19], y: vec![] });
        assert_eq!(cfg.base_weight() + path.weight(), 58);
    }

    #[test]
    fn chain_detection() {
        assert_eq!(chain_length(&[7, 5, 1]), None);
        assert_eq!(chain_length(&[9, 5, 1]), Some(1));
        assert_eq!(chain_length(&[8, 4]), Some(0));
        assert_eq!(chain_length(&[1]), None);
        assert_eq!(chain_length(&[11, 7, 5, 1]), Some(2));
    }

    #[test]
    fn out_of_bounds_paths_are_rejected() {
        let cfg = MinimalConfig::new(Variant::Pi, 4, 1, 1);
        let too_far = MovePath { x: vec![cfg.singleton_bound() as u32 + 1], y: vec![] };
        assert!(matches!(from_minimal(&cfg, &too_far), Err(Error::PathOutOfBounds(_))));
        let bad = MinimalConfig::new(Variant::Pi, 1, 3, 3);
        assert!(matches!(from_minimal(&bad, &MovePath::default()), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn minimal_weights_match_minimal_partitions() {
        for v in Variant::ALL {
            for n in 0..4 {
                for m in 0..4 {
                    let c = MinimalConfig::new(v, 30, m, n);
                    assert_eq!(c.minimal_partition().size() as i64, c.base_weight(), "{v} m={m} n={n}");
                }
            }
        }
    }
}

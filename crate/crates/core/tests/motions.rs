use std::collections::HashSet;

use qcap::motions::{
    class_generating_polynomial, class_members, configurations, covering_variants, from_minimal, to_minimal,
    MinimalConfig, MovePath, Variant,
};
use qcap::partitions::{at_ab_one, bounded_members, generating_polynomial, Partition};
use qcap::QPoly;

/// Every partition of the family reduces, rebuilds to itself, and the
/// classes partition the family with the closed-form generating polynomials.
fn check_bijection(m: u8, hat: bool, big_n: u32) {
    let members = bounded_members(m, 3 * big_n + 1);
    let variants = covering_variants(m, hat);
    let mut seen = HashSet::new();
    for p in &members {
        let v = Variant::classify(p, m, hat).unwrap();
        assert!(variants.contains(&v));
        let (cfg, path, _) = to_minimal(p, v, Some(big_n)).unwrap_or_else(|e| panic!("{p} via {v}: {e}"));
        assert!(cfg.is_valid(), "{p}: {cfg:?}");
        assert_eq!(cfg.base_weight() + path.weight(), p.size() as i64, "{p}");
        let (back, _) = from_minimal(&cfg, &path).unwrap_or_else(|e| panic!("{p} rebuild: {e}"));
        assert_eq!(&back, p);
        assert!(seen.insert((cfg, path)));
    }
    let mut total = QPoly::zero();
    let mut produced = 0usize;
    for &v in &variants {
        for cfg in configurations(v, big_n) {
            let class = class_members(&cfg).unwrap();
            produced += class.len();
            let gf = class_generating_polynomial(&cfg).unwrap();
            assert_eq!(gf, cfg.closed_form(), "{cfg:?}");
            total += gf;
        }
    }
    assert_eq!(produced, members.len(), "m={m} hat={hat} N={big_n}");
    let g = at_ab_one(&generating_polynomial(m, 3 * big_n as i64 + 1).unwrap());
    assert_eq!(total, g, "m={m} hat={hat} N={big_n}");
}

#[test]
fn bijection_without_part_one() {
    for n in 0..=8 {
        check_bijection(1, false, n);
    }
}

#[test]
fn bijection_star_variants() {
    for n in 0..=8 {
        check_bijection(2, false, n);
    }
}

#[test]
fn bijection_hat_variants() {
    for n in 0..=8 {
        check_bijection(2, true, n);
    }
}

#[test]
fn trace_replays_the_path() {
    let p = Partition::new(vec![27, 24, 20, 15, 12, 9, 4]).unwrap();
    let (cfg, path, trace) = to_minimal(&p, Variant::Pi, Some(9)).unwrap();
    assert_eq!(trace.first().unwrap().before, p.parts());
    assert_eq!(trace.last().unwrap().after, cfg.minimal_partition().parts());
    for w in trace.windows(2) {
        assert_eq!(w[0].after, w[1].before);
    }
    let (_, fwd) = from_minimal(&cfg, &path).unwrap();
    assert_eq!(fwd.last().unwrap().after, p.parts());
}

#[test]
fn pair_only_class_in_hat_two() {
    // N even, m = 0, n = N/2: the class holds one partition that the
    // binomial product alone would miss.
    let cfg = MinimalConfig::new(Variant::PiHat2, 4, 0, 2);
    assert!(cfg.is_valid());
    let members = class_members(&cfg).unwrap();
    assert_eq!(members.len(), 1);
    assert_eq!(members[0].parts(), &[13, 11, 7, 5, 1]);
    assert_eq!(from_minimal(&cfg, &MovePath::default()).unwrap().0, members[0]);
}

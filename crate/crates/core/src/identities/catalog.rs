//! The registry table.

use super::{finite as fi, recurrences as re, series as se, trinomial as tri};
use super::{Axis, Builder, IdentitySpec, Kind, ParamRange, Truncation, DEFAULT_T};

const fn ranged(id: &'static str, kind: Kind, axis: Axis, lo: i64, hi: i64, anchor: &'static str, builder: Builder) -> IdentitySpec {
    IdentitySpec { id, kind, range: Some(ParamRange { axis, lo, hi }), truncation: None, anchor, builder }
}

const fn exact(id: &'static str, lo: i64, hi: i64, anchor: &'static str, builder: Builder) -> IdentitySpec {
    ranged(id, Kind::ExactPolynomial, Axis::N, lo, hi, anchor, builder)
}

const fn rec(id: &'static str, lo: i64, hi: i64, anchor: &'static str, builder: Builder) -> IdentitySpec {
    ranged(id, Kind::RecurrenceCheck, Axis::N, lo, hi, anchor, builder)
}

const fn single(id: &'static str, kind: Kind, anchor: &'static str, builder: Builder) -> IdentitySpec {
    IdentitySpec { id, kind, range: None, truncation: None, anchor, builder }
}

/// Truncated entry pinned to its own order.
const fn series(id: &'static str, default: i64, max: i64, anchor: &'static str, builder: Builder) -> IdentitySpec {
    IdentitySpec {
        id,
        kind: Kind::TruncatedSeries,
        range: None,
        truncation: Some(Truncation { default, follows_global: false, max }),
        anchor,
        builder,
    }
}

/// Truncated entry on the global default order.
const fn global(id: &'static str, anchor: &'static str, builder: Builder) -> IdentitySpec {
    IdentitySpec {
        id,
        kind: Kind::TruncatedSeries,
        range: None,
        truncation: Some(Truncation { default: DEFAULT_T, follows_global: true, max: 600 }),
        anchor,
        builder,
    }
}

const fn counts(id: &'static str, default: i64, anchor: &'static str, builder: Builder) -> IdentitySpec {
    IdentitySpec {
        id,
        kind: Kind::CountEquality,
        range: None,
        truncation: Some(Truncation { default, follows_global: false, max: 80 }),
        anchor,
        builder,
    }
}

static REGISTRY: &[IdentitySpec] = &[
    // Finite Capparelli identities and their combinatorial companions.
    exact("thm1.4-eq1", 0, 12, "first finite Capparelli identity: double sum = single sum with (-q^2,-q^4;q^6)_l", fi::thm14_eq1),
    exact("thm1.4-eq2", 0, 12, "second finite identity: two double sums = single sum with (-q;q^6)_{l+1}(-q^5;q^6)_l", fi::thm14_eq2),
    exact("thm1.4-eq3", 0, 12, "third finite identity: two double sums plus chi(N) correction = same single sum", fi::thm14_eq3),
    exact("thm3.1-a", 0, 10, "D_{1,3N} counted by a double sum and by single sums", fi::thm31_a),
    exact("thm3.1-b", 0, 10, "D_{1,3N+2} counted by a double sum and by single sums", fi::thm31_b),
    exact("thm3.2-a", 0, 10, "D_{2,3N} counted by two double sums", fi::thm32_a),
    exact("thm3.2-b", 0, 10, "D_{2,3N+2} counted by two double sums", fi::thm32_b),
    exact("thm3.3-a", 0, 10, "D_{2,3N} by the alternative double sums", fi::thm33_a),
    exact("thm3.3-b", 0, 10, "D_{2,3N+2} by the alternative double sums", fi::thm33_b),
    exact("motions-g1", 0, 10, "motion classes of the minimal configuration pi sum to G_{1,3N+1}", fi::cor_g1),
    exact("motions-g2", 0, 10, "motion classes of the starred configurations sum to G_{2,3N+1}", fi::cor_g2),
    exact("motions-g2-hat", 0, 10, "motion classes of the hatted configurations plus the stuck pair sum to G_{2,3N+1}", fi::cor_g2_hat),
    exact("typo-single-sum-exponent", 0, 10, "exponent of the second single sum for D_{1,3N+2}", fi::oq_thm31_b),
    exact("typo-missing-offset", 0, 10, "linear offset in the first double sum for D_{2,3N}", fi::oq_thm32_a),
    rec("typo-delta-subscript", 4, 10, "subscript of the delta correction in the third hatted summand recurrence", re::oq_delta),
    exact("typo-plus-two-placement", 0, 10, "whether +2 sits in the top or bottom of the q^3-binomial", fi::oq_binomial),
    // Recurrences for G and the closed forms.
    rec("rec-2.1-2.3", 1, 12, "first order recurrences linking G_{m,3N}, G_{m,3N+1}, G_{m,3N+2}", re::rec_first_order),
    rec("rec-2.5", 1, 12, "third order recurrence for G_{m,3N+1}", re::rec_order3),
    rec("rec-2.7", 2, 12, "fourth order recurrence for G_{m,3N+1} in N", re::rec_order4),
    rec("rec-2.8", 2, 12, "recurrence for the mod-3 reduced generating functions", re::rec_mod3),
    rec("rec-2.15", 1, 12, "recurrence satisfied by S_N", re::rec_s),
    rec("rec-2.16", 1, 12, "recurrence satisfied by T_N", re::rec_t),
    exact("closed-2.10", 0, 12, "closed form of G_{1,3N+1}", re::closed_g1),
    exact("closed-2.12", 0, 12, "closed form of G_{2,3N+1}", re::closed_g2),
    exact("thm2.4-S", 0, 12, "mod-3 closed form through S_N", re::closed_mod3_s),
    exact("thm2.4-T", 0, 12, "mod-3 closed form through T_N", re::closed_mod3_t),
    // Summand and sum recurrences.
    rec("rec-3.2", 4, 10, "summand recurrence for F_{N,m,n} over the whole support", re::rec_summand_first),
    rec("rec-3.3", 4, 12, "summed recurrence for the first double sum", re::rec_sum_first),
    rec("rec-hat-summands", 4, 10, "summand recurrences for the first two hatted summands", re::rec_summand_hat12),
    rec("rec-3.5", 4, 10, "non-homogeneous summand recurrence for the third hatted summand", re::rec_summand_hat3),
    rec("rec-3.6", 4, 10, "non-homogeneous summand recurrence for the fourth hatted summand", re::rec_summand_hat4),
    rec("rec-hat-sums", 4, 10, "recurrences for the four hatted sums with their correction terms", re::rec_sums_hat),
    rec("rec-hat-lambda", 4, 10, "the hatted sums obey the homogeneous recurrence with shared initial values", re::rec_lambda_hat),
    // Trinomial side.
    exact("thm5.1", 0, 10, "G_{1,3N+1}(1/t,t,q) as a sum of q^3-trinomials", tri::thm51),
    exact("corollary-5.2", 0, 10, "coefficient of t^j counts parts 1 mod 3 minus parts 2 mod 3", tri::cor52),
    exact("thm5.3", 0, 10, "G_{2,3N+1}(t,1/t,q) as a sum of q^3-trinomials", tri::thm53),
    exact("thm5.4", 0, 10, "coefficient of t^j counts parts 2 mod 3 minus parts 1 mod 3", tri::thm54),
    single("table-5.1", Kind::ExactPolynomial, "worked example at N = 6, j = 2: polynomial and partition list", tri::table51),
    exact("tri-even", 0, 12, "Tr[N,2j] as a sum of binomial products", tri::tri_even),
    exact("tri-odd", 0, 12, "Tr[N,2j+1] as a sum of binomial products", tri::tri_odd),
    rec("rec-5.2", 1, 12, "five-term recurrence for q-trinomial coefficients", tri::tri_recurrence),
    exact("dual-6.1", 0, 8, "double sum with trinomial right side at t = 1", tri::dual_first),
    exact("dual-6.3", 0, 8, "dual double sum equals sum of T0 with even lower index", tri::dual_even),
    exact("dual-6.7", 0, 8, "dual double sums equal sum of T0 with odd lower index", tri::dual_odd),
    ranged("jtp-finite-1", Kind::ExactPolynomial, Axis::N, 0, 8, "finite Jacobi triple product, even length", tri::jtp_even),
    ranged("jtp-finite-2", Kind::ExactPolynomial, Axis::N, 0, 8, "finite Jacobi triple product, odd length", tri::jtp_odd),
    // Infinite identities.
    series("gf-kr1", 80, 80, "D_1 generating function as a double sum", se::gf_kr1),
    series("gf-kr2", 80, 80, "D_2 generating function as two double sums", se::gf_kr2),
    series("gf-kagan", 80, 80, "D_2 generating function in the alternative form", se::gf_kagan),
    global("cap1-series", "first Capparelli sum = (-q^2,-q^4;q^6)(-q^3;q^3)", se::cap1),
    global("cap2-series", "second Capparelli sum = (-q,-q^5;q^6)(-q^3;q^3)", se::cap2),
    global("cap3-series", "third Capparelli sum = (-q,-q^5;q^6)(-q^3;q^3)", se::cap3),
    global("qgauss-parity", "sum of q^{C(t,2)}/(q;q)_t over one parity of t = (-q;q)", se::qgauss_parity),
    series("thm6.1", 120, 300, "triple sum with even parity = (-q^8,-q^10,q^18;q^18)/(q^3;q^3)", se::thm61),
    series("thm6.2", 120, 300, "triple sums with odd parity = (-q,-q^17,q^18;q^18)/(q^3;q^3)", se::thm62),
    series("ab-limit-6.9", 40, 60, "T0(2N,a,q^2) + T0(2N+1,a,q^2) tends to (-q;q^2)/(q^2;q^2)", se::ab_limit),
    global("thm6.3-1", "Slater type sum in base q^6 = (-q^4,-q^8;q^12)(-q^3;q^3)", se::slater_first),
    global("thm6.3-2", "Slater type sums in base q^6 = (-q^2,-q^10;q^12)(-q^3;q^3)", se::slater_second),
    global("eq-6.13", "second Slater type sum divided by 1+q^2", se::slater_divided),
    series("fg1", 80, 160, "z-deformation: sum = (-q;q)(zq^2,q^2/z;q^4)", se::fg1),
    series("fg2", 80, 160, "z-deformation: sum = (-q;q)(zq^4,q^4/z;q^4)", se::fg2),
    counts("thm6.4", 40, "dual families equinumerous with B_1 and B_2", se::dual_counts),
    counts("thm6.5", 40, "companion families A_0, A_2 equinumerous with B_1, B_2", se::companion_counts),
    single("table-6.2", Kind::CountEquality, "size 21 listings for the dual families and B_k", se::table_dual),
    single("table-6.3", Kind::CountEquality, "size 21 listings for A_0, A_2 and B_k", se::table_companion),
    ranged("thm7.1", Kind::ExactPolynomial, Axis::M, 0, 10, "bounded double sum = sum of q^3-binomials [2M, M-j]", se::outlook_poly),
    series("thm7.2", 150, 300, "shifted double sum = sum of two Capparelli products", se::two_products),
    IdentitySpec {
        id: "thm7.3",
        kind: Kind::TruncatedSeries,
        range: Some(ParamRange { axis: Axis::Nu, lo: 1, hi: 3 }),
        truncation: Some(Truncation { default: 120, follows_global: false, max: 240 }),
        anchor: "hierarchy of multisums indexed by nu",
        builder: se::hierarchy,
    },
    series("dyson-7.5", 150, 300, "Dyson: sum = (-q^3;q^3)(q^5,q^7;q^12)", se::dyson_first),
    series("dyson-7.6", 150, 300, "Dyson: 1 - sum = (-q^3;q^3)(q,q^11;q^12)", se::dyson_second),
    series("eq-7.6a", 80, 160, "z-deformation of the second Dyson formula", se::z_companion),
];

/// The immutable catalog, in declaration order.
pub fn registry() -> &'static [IdentitySpec] {
    REGISTRY
}

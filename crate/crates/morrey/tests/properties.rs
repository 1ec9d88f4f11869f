//! Property tests for the norm axioms, the scan-vs-oracle agreement, and
//! the invariances of the two geometric objectives.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use morrey::{
    build_witness, canonical_range, enumerate_sign_combos, james_min, morrey_norm,
    morrey_norm_bruteforce, nj_ratio, norm_equals, signed_sum, LatticePoint, Mode, Scalar,
    Sequence, SpaceParams,
};

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=12).prop_map(|(num, den)| ratio(num, den))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    arb_rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn arb_point(d: usize) -> impl Strategy<Value = LatticePoint> {
    prop::collection::vec(-8i64..=8, d).prop_map(LatticePoint::new)
}

/// Random sparse sequence; duplicate points collapse to the last value.
fn arb_sequence(d: usize, max_support: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec((arb_point(d), arb_rational()), 0..=max_support).prop_map(move |pairs| {
        let mut map: BTreeMap<LatticePoint, BigRational> = BTreeMap::new();
        for (k, v) in pairs {
            map.insert(k, v);
        }
        Sequence::from_entries(d, map.into_iter().map(|(k, v)| (k, Scalar::Rational(v))))
            .expect("deduplicated entries")
    })
}

fn exponent_pairs() -> impl Strategy<Value = (u32, u32)> {
    prop::sample::select(vec![(1u32, 2u32), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
}

fn plain_lq_norm(x: &Sequence, q: u32) -> f64 {
    x.iter()
        .map(|(_, v)| v.to_f64().abs().powi(q as i32))
        .sum::<f64>()
        .powf(1.0 / f64::from(q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_arithmetic_is_exact(
        a in -50i64..=50, b in 1i64..=40, c in -50i64..=50, d in 1i64..=40,
    ) {
        // recombine by hand over the common denominator and compare after
        // reduction: no precision may be lost
        let lhs = ratio(a, b) + ratio(c, d);
        let rhs = ratio(a * d + c * b, b * d);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneity_scales_certificates(
        x in arb_sequence(1, 10),
        c in nonzero_rational(),
        (p, q) in exponent_pairs(),
    ) {
        let params = SpaceParams::exact(p, q, 1).unwrap();
        let base = morrey_norm(&x, &params).unwrap();
        let scaled = morrey_norm(&x.scaled(&Scalar::Rational(c.clone())), &params).unwrap();
        prop_assert_eq!(scaled.argmax(), base.argmax());
        let factor = num_traits::pow::Pow::pow(c.abs(), p);
        prop_assert_eq!(
            scaled.certificate().unwrap().psum().clone(),
            base.certificate().unwrap().psum() * factor
        );
    }

    #[test]
    fn triangle_inequality_in_floats(
        x in arb_sequence(1, 8),
        y in arb_sequence(1, 8),
        (p, q) in exponent_pairs(),
    ) {
        let params = SpaceParams::exact(p, q, 1)
            .unwrap()
            .with_mode(Mode::Float)
            .unwrap();
        let nx = morrey_norm(&x, &params).unwrap().value();
        let ny = morrey_norm(&y, &params).unwrap().value();
        let plus = SignCombo2::plus();
        let sum = signed_sum(&[x, y], &plus).unwrap();
        let ns = morrey_norm(&sum, &params).unwrap().value();
        prop_assert!(ns <= (nx + ny) * (1.0 + 1e-12) + f64::MIN_POSITIVE);
    }

    #[test]
    fn definiteness(x in arb_sequence(2, 6), (p, q) in exponent_pairs()) {
        let params = SpaceParams::exact(p, q, 2).unwrap();
        let v = morrey_norm(&x, &params).unwrap();
        prop_assert_eq!(v.is_zero(), x.is_zero());
        prop_assert_eq!(norm_equals(&v, &BigRational::zero()).unwrap(), x.is_zero());
    }

    #[test]
    fn p_equals_q_reduces_to_plain_lq(x in arb_sequence(1, 10), q in 1u32..=4) {
        let params = SpaceParams::exact(q, q, 1).unwrap();
        let v = morrey_norm(&x, &params).unwrap().value();
        let plain = plain_lq_norm(&x, q);
        prop_assert!((v - plain).abs() <= 1e-12 * plain.max(1.0));
    }

    #[test]
    fn scan_agrees_with_bruteforce(
        d in 1usize..=2,
        pairs in prop::collection::vec((prop::collection::vec(-6i64..=6, 2), arb_rational()), 0..=10),
        (p, q) in exponent_pairs(),
    ) {
        let mut map: BTreeMap<LatticePoint, BigRational> = BTreeMap::new();
        for (coords, v) in pairs {
            map.insert(LatticePoint::new(coords[..d].to_vec()), v);
        }
        let x = Sequence::from_entries(
            d,
            map.into_iter().map(|(k, v)| (k, Scalar::Rational(v))),
        )
        .unwrap();
        let params = SpaceParams::exact(p, q, d).unwrap();
        let (lo, hi, n_cover) = canonical_range(&x);
        let fast = morrey_norm(&x, &params).unwrap();
        let brute = morrey_norm_bruteforce(&x, &params, &lo, &hi, n_cover).unwrap();
        prop_assert_eq!(fast, brute);
    }

    #[test]
    fn prefactor_is_monotone_in_radius(
        t in (1i64..=400, 1i64..=40),
        n1 in 0u64..=40,
        gap in 1u64..=20,
        d in 1usize..=3,
        (p, q) in exponent_pairs(),
    ) {
        // with the covered mass fixed, a larger window never helps
        let n2 = n1 + gap;
        let tf = ratio(t.0, t.1).to_f64().unwrap();
        let exponent = d as f64 * (1.0 / f64::from(q) - 1.0 / f64::from(p));
        let value = |n: u64| ((2 * n + 1) as f64).powf(exponent) * tf.powf(1.0 / f64::from(p));
        prop_assert!(value(n2) <= value(n1) * (1.0 + 1e-12));
    }

    #[test]
    fn nj_scaling_invariance(
        x in arb_sequence(1, 6).prop_filter("nonzero", |x| !x.is_zero()),
        y in arb_sequence(1, 6).prop_filter("nonzero", |y| !y.is_zero()),
        c in nonzero_rational(),
        (p, q) in exponent_pairs(),
    ) {
        let params = SpaceParams::exact(p, q, 1).unwrap();
        let members = [x, y];
        let scaled: Vec<Sequence> = members
            .iter()
            .map(|m| m.scaled(&Scalar::Rational(c.clone())))
            .collect();
        let base = nj_ratio(&members, &params).unwrap();
        let after = nj_ratio(&scaled, &params).unwrap();
        match (&base, &after) {
            (Scalar::Rational(a), Scalar::Rational(b)) => prop_assert_eq!(a, b),
            _ => {
                let (a, b) = (base.to_f64(), after.to_f64());
                prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn objectives_respect_the_n_bound(
        x in arb_sequence(1, 5).prop_filter("nonzero", |x| !x.is_zero()),
        y in arb_sequence(1, 5).prop_filter("nonzero", |y| !y.is_zero()),
        (p, q) in exponent_pairs(),
    ) {
        let params = SpaceParams::exact(p, q, 1)
            .unwrap()
            .with_mode(Mode::Float)
            .unwrap();
        let members: Vec<Sequence> = [x, y]
            .into_iter()
            .map(|m| {
                let norm = morrey_norm(&m, &params).unwrap().value();
                m.scaled(&Scalar::Float(1.0 / norm))
            })
            .collect();
        let nj = nj_ratio(&members, &params).unwrap().to_f64();
        prop_assert!(nj <= 2.0 + 1e-9);
        let james = james_min(&members, &params).unwrap().to_f64();
        prop_assert!((0.0..=2.0 + 1e-9).contains(&james));
    }

    #[test]
    fn combo_norm_multiset_is_permutation_invariant(
        x in arb_sequence(1, 5).prop_filter("nonzero", |x| !x.is_zero()),
        y in arb_sequence(1, 5).prop_filter("nonzero", |y| !y.is_zero()),
        z in arb_sequence(1, 5).prop_filter("nonzero", |z| !z.is_zero()),
        (p, q) in exponent_pairs(),
    ) {
        let params = SpaceParams::exact(p, q, 1).unwrap();
        let powers = |members: &[Sequence]| -> Vec<BigRational> {
            let combos = enumerate_sign_combos(members.len() as u32).unwrap();
            let mut out: Vec<BigRational> = combos
                .iter()
                .map(|combo| {
                    let sum = signed_sum(members, combo).unwrap();
                    morrey_norm(&sum, &params)
                        .unwrap()
                        .certificate()
                        .unwrap()
                        .value_power()
                })
                .collect();
            out.sort();
            out
        };
        let forward = powers(&[x.clone(), y.clone(), z.clone()]);
        let swapped = powers(&[z, x, y]);
        prop_assert_eq!(forward, swapped);
    }

    #[test]
    fn sequence_json_round_trip(x in arb_sequence(2, 8)) {
        let doc = morrey::json::sequence_to_doc(&x);
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: morrey::json::SequenceDoc = serde_json::from_str(&text).unwrap();
        let back = morrey::json::sequence_from_doc(&parsed, Mode::Exact).unwrap();
        prop_assert_eq!(x, back);
    }
}

/// Tiny helper: the all-plus combo for pairs without spelling the vector.
struct SignCombo2;
impl SignCombo2 {
    fn plus() -> morrey::SignCombo {
        morrey::SignCombo::new(vec![1, 1]).unwrap()
    }
}

/// Every signed combination of a witness family concentrates exactly one
/// coefficient of absolute value `n`; all other support values stay below.
#[test]
fn witness_combos_concentrate_one_spike() {
    for (n, p, q, d) in [
        (2u32, 1u32, 2u32, 1usize),
        (3, 1, 2, 1),
        (3, 1, 2, 2),
        (4, 1, 3, 1),
        (5, 2, 3, 1),
    ] {
        let params = SpaceParams::exact(p, q, d).unwrap();
        let family = build_witness(n, &params, None).unwrap();
        let target = BigRational::from_integer(BigInt::from(n));
        for combo in enumerate_sign_combos(n).unwrap() {
            let sum = signed_sum(family.members(), &combo).unwrap();
            let mut spikes = 0usize;
            for (_, v) in sum.iter() {
                let abs = v.as_rational().unwrap().abs();
                if abs == target {
                    spikes += 1;
                } else {
                    assert!(abs < target);
                }
            }
            assert_eq!(spikes, 1, "combo {} of n={n}", combo.label());
        }
    }
}

/// The default spacing is minimal: two less fails the threshold predicate,
/// and the family built at the minimal spacing plus two still verifies.
#[test]
fn spacing_is_minimal_and_not_unique() {
    use morrey::{min_even_j, spacing_is_valid, verify_theorem};
    for (n, p, q, d) in [(2u32, 1u32, 2u32, 1usize), (3, 1, 2, 2), (4, 2, 3, 1)] {
        let params = SpaceParams::exact(p, q, d).unwrap();
        let pq = (params.p().clone(), params.q().clone());
        let j = min_even_j(n, &pq.0, &pq.1, d).unwrap();
        assert!(!spacing_is_valid(j - 2, n, &pq.0, &pq.1, d).unwrap());
        for spacing in [j, j + 2] {
            let report = verify_theorem(n, &params, Some(spacing)).unwrap();
            assert!(
                report.verdicts.all_true(),
                "n={n} p={p} q={q} d={d} j={spacing}"
            );
        }
    }
}

/// Norm of every witness member is exactly 1, certified.
#[test]
fn witness_members_have_unit_norm() {
    for (n, p, q, d) in [(2u32, 1u32, 2u32, 1usize), (3, 1, 3, 2), (4, 3, 4, 1)] {
        let params = SpaceParams::exact(p, q, d).unwrap();
        let family = build_witness(n, &params, None).unwrap();
        for member in family.members() {
            let v = morrey_norm(member, &params).unwrap();
            assert!(norm_equals(&v, &BigRational::one()).unwrap());
        }
    }
}

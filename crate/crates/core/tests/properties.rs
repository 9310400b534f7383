mod oracle;

use instanton_surgery::dimension::{
    dim_dual_reduced_f2, dim_dual_unreduced, dim_framed, euler_parity_check, DimValue,
};
use instanton_surgery::knot::{
    bundled_knots, determinant_from_seifert, knot_determinant, mirror, FieldSpec, InvariantPair,
    KnotRecord,
};
use instanton_surgery::prover::{certify, Status};
use instanton_surgery::slope::{
    farey_resolve, integer_fan, is_slope_triad, mediant, normalize, triad_det, Slope,
};
use instanton_surgery::su2::{
    obstruction_window, simple_knot_gap, verdict_branched, verdict_traceless, Outcome,
};
use instanton_surgery::surgery::BundleClass;
use num_bigint::BigInt;
use proptest::prelude::*;

fn slope() -> impl Strategy<Value = Slope> {
    (-500i64..=500, 1i64..=80).prop_filter_map("coprime", |(p, q)| {
        (oracle::gcd(p, q) == 1).then(|| Slope::new(p, q).unwrap())
    })
}

fn invariants() -> impl Strategy<Value = InvariantPair> {
    (-12i64..=12, 0u64..=6).prop_map(|(m, h)| InvariantPair::from_h(m, h))
}

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), n)
}

fn big(v: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    v.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

proptest! {
    #[test]
    fn slope_text_round_trips(r in slope()) {
        prop_assert_eq!(r.to_string().parse::<Slope>().unwrap(), r);
    }

    #[test]
    fn normalize_is_idempotent(p in -1000i64..1000, q in -1000i64..1000, k in 1i64..50) {
        prop_assume!(p != 0 || q != 0);
        let once = normalize(p * k, q * k).unwrap();
        prop_assert_eq!(normalize(once.p().clone(), once.q().clone()).unwrap(), once.clone());
        prop_assert_eq!(once, normalize(p, q).unwrap());
    }

    #[test]
    fn determinant_is_antisymmetric(a in slope(), b in slope()) {
        prop_assert_eq!(triad_det(&a, &b), -triad_det(&b, &a));
        prop_assert_eq!(triad_det(&a, &a), BigInt::from(0));
    }

    #[test]
    fn mediant_is_commutative(a in slope(), b in slope()) {
        prop_assert_eq!(mediant(&a, &b).ok(), mediant(&b, &a).ok());
        if let Ok(m) = mediant(&a, &b) {
            let (lo, hi) = if a < b { (&a, &b) } else { (&b, &a) };
            prop_assert!(lo <= &m && &m <= hi);
        }
    }

    #[test]
    fn farey_matches_brute_force(p in -300i64..=300, q in 2i64..=60) {
        prop_assume!(p != 0 && oracle::gcd(p, q) == 1);
        let fan = farey_resolve(&Slope::new(p, q).unwrap()).unwrap();
        let solutions = oracle::farey_brute(p, q);
        prop_assert_eq!(solutions.len(), 1);
        let got = [&fan.r1, &fan.r2, &fan.r3, &fan.r4].map(|s| {
            (i64::try_from(s.p()).unwrap(), i64::try_from(s.q()).unwrap())
        });
        prop_assert_eq!(got, solutions[0]);
        prop_assert!(fan.is_valid());
    }

    #[test]
    fn farey_on_huge_slopes(p in any::<i128>(), q in 2u64..) {
        let q = BigInt::from(q);
        let p = BigInt::from(p) * BigInt::from(1u128 << 100) + 1;
        prop_assume!(num_integer::Integer::gcd(&p, &q) == BigInt::from(1));
        let fan = farey_resolve(&Slope::new(p, q).unwrap()).unwrap();
        prop_assert!(fan.is_valid());
    }

    #[test]
    fn integer_fans_are_valid(n in -10_000i64..10_000) {
        let fan = integer_fan(n);
        let valid = fan.triads().iter().all(|(a, b, c)| is_slope_triad(a, b, c));
        prop_assert!(valid);
    }

    #[test]
    fn framed_mirror_invariance(r in slope(), inv in invariants(), sheet in any::<bool>()) {
        let bundle = if sheet { BundleClass::Mu } else { BundleClass::Zero };
        for field in [FieldSpec::char0(), FieldSpec::f2()] {
            prop_assert_eq!(
                dim_framed(&r, &inv, &field, bundle).unwrap(),
                dim_framed(&r.negate(), &inv.mirror(), &field, bundle).unwrap()
            );
            prop_assert_eq!(
                dim_dual_unreduced(&r, &inv, &field).unwrap(),
                dim_dual_unreduced(&r.negate(), &inv.mirror(), &field).unwrap()
            );
        }
    }

    #[test]
    fn framed_matches_formula_off_m(r in slope(), inv in invariants()) {
        let (p, q) = (i64::try_from(r.p()).unwrap(), i64::try_from(r.q()).unwrap());
        let (m, rr) = (i64::try_from(inv.m()).unwrap(), i64::try_from(inv.r()).unwrap());
        prop_assume!(p != q * m || q != 1);
        let expected = oracle::framed(p, q, m, rr);
        prop_assert_eq!(
            dim_framed(&r, &inv, &FieldSpec::char0(), BundleClass::Zero).unwrap(),
            DimValue::exact(expected)
        );
        prop_assert!(euler_parity_check(&r, &inv));
        prop_assert_eq!((expected - p).rem_euclid(2), 0);
        prop_assert_eq!(dim_dual_reduced_f2(&r, &inv).unwrap(), BigInt::from(expected));
    }

    #[test]
    fn prover_agrees_with_closed_form(r in slope(), inv in invariants(), char2 in any::<bool>()) {
        let field = if char2 { FieldSpec::f2() } else { FieldSpec::char0() };
        let report = certify(&r, &inv, &field).unwrap();
        let at_m = r.is_integral() && r.p() == inv.m();
        if at_m && !char2 {
            prop_assert_eq!(report.status, Status::Consistent);
            prop_assert_eq!(report.propagated, Some(DimValue::pair(2 * inv.r())));
        } else {
            prop_assert_eq!(report.status, Status::Match);
        }
    }

    #[test]
    fn seifert_determinant_matches_leibniz(v in (1usize..=4).prop_flat_map(matrix)) {
        prop_assert_eq!(
            determinant_from_seifert(&big(&v)).unwrap(),
            BigInt::from(oracle::symmetrized_det(&v))
        );
    }

    #[test]
    fn mirror_is_an_involution(v in (0usize..=3).prop_flat_map(matrix), inv in invariants(), excluded in any::<bool>()) {
        let mut k = KnotRecord::new("k");
        k.seifert_matrix = Some(big(&v));
        k.invariants.insert(0, inv.clone());
        k.excluded = excluded;
        let m = mirror(&k);
        prop_assert_eq!(m.invariants[&0].m(), &-inv.m());
        prop_assert_eq!(knot_determinant(&m).unwrap(), knot_determinant(&k).unwrap());
        prop_assert_eq!(mirror(&m), k);
    }

    #[test]
    fn gap_window_equivalence(p in 1i64..=400, q in 1i64..=40, m in -10i64..=10, h in 0u64..=5) {
        prop_assume!(oracle::gcd(p, q) == 1);
        let inv = InvariantPair::from_h(m, h);
        let r = Slope::new(p, q).unwrap();
        let gap = simple_knot_gap(&r, &inv).unwrap();
        let rr = m.abs() + 2 * h as i64;
        prop_assert_eq!(gap.clone(), BigInt::from(oracle::framed(p, q, m, rr) - p));
        prop_assert_eq!(obstruction_window(&inv).window.contains(&r), gap <= BigInt::from(0));
    }

    #[test]
    fn verdicts_are_sound_and_monotone(idx in 0usize..5, p in 1i64..=60, q in 1i64..=12) {
        prop_assume!(oracle::gcd(p, q) == 1);
        let k = &bundled_knots()[idx];
        let r = Slope::new(p, q).unwrap();
        for verdict in [verdict_traceless, verdict_branched] {
            let plain = verdict(k, &r, false).unwrap();
            let sg = verdict(k, &r, true).unwrap();
            for v in [&plain, &sg] {
                prop_assert_eq!(v.outcome == Outcome::NotAbelian, v.checklist.iter().all(|c| c.pass));
            }
            if plain.outcome == Outcome::NotAbelian {
                prop_assert_eq!(sg.outcome, Outcome::NotAbelian);
            }
            if plain.outcome == Outcome::NotAbelian {
                prop_assert!(oracle::odd_prime_power(p as u64) && p < 8 * q);
            }
        }
    }
}

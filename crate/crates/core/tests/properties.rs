use num_integer::Integer;
use proptest::prelude::*;

use quotset::density::{density_estimate, finite_denominator_gap, ratio_in_window, DensityMode};
use quotset::primes::{is_prime, primes_in_interval};
use quotset::quadratic::{band_of_norm, partition_density_check, Coloring, DenseSide, Ideal};
use quotset::quotient::{complex_box_grid, real_grid, Targets};
use quotset::{
    brute_force_gap_check, coverage_check, ApFamily, DigitPrefixFamily, GapCertificate, NaturalKind, NaturalSet, QuadInt,
    Ratio, Region, SetDescriptor, Sieve, Verification, Witness,
};

fn r(p: i64, q: i64) -> Ratio {
    Ratio::new(p, q).unwrap()
}

fn natural(kind: NaturalKind, bound: u64) -> NaturalSet {
    NaturalSet::new(kind, bound).unwrap()
}

fn kinds() -> Vec<NaturalKind> {
    vec![
        NaturalKind::Progression { residue: 0, modulus: 3 },
        NaturalKind::Progression { residue: 1, modulus: 4 },
        NaturalKind::ApPrimes { family: ApFamily::new(1, 4).unwrap() },
        NaturalKind::DigitPrefix { family: DigitPrefixFamily::new(1, 2, 3, true).unwrap() },
        NaturalKind::DigitPrefix { family: DigitPrefixFamily::new(1, 2, 10, false).unwrap() },
        NaturalKind::Explicit { elements: vec![2, 3, 5, 8, 13, 21, 34, 55, 89] },
    ]
}

#[test]
fn coverage_is_monotone_in_the_bound() {
    let targets = Targets::Real(real_grid(&r(1, 10), &r(10, 1), 40).unwrap());
    let eps = r(1, 50);
    for kind in kinds() {
        let mut last = 0.0;
        for bound in [30u64, 300, 3_000] {
            let set: SetDescriptor = natural(kind.clone(), bound).into();
            let cov = coverage_check(&set, &set, &targets, &eps).unwrap().coverage;
            assert!(cov >= last, "{kind:?}: coverage fell from {last} to {cov} at bound {bound}");
            last = cov;
        }
    }
}

#[test]
fn relative_density_of_prime_classes() {
    for m in 2..=12u64 {
        for a in (0..m).filter(|a| a.gcd(&m) == 1) {
            let set = natural(NaturalKind::ApPrimes { family: ApFamily::new(a, m).unwrap() }, 100_000);
            let est = density_estimate(&set, DensityMode::Relative, &[100_000]).unwrap();
            let phi = (1..=m).filter(|k| k.gcd(&m) == 1).count() as f64;
            let dev = (est.ratios[0].to_f64() - 1.0 / phi).abs();
            assert!(dev < 0.05, "{a} mod {m}: ratio {} vs 1/{phi}", est.ratios[0]);
        }
    }
}

#[test]
fn positive_density_over_infinite_denominators_covers() {
    let u: SetDescriptor = natural(NaturalKind::Progression { residue: 0, modulus: 7 }, 20_000).into();
    let v: SetDescriptor = natural(NaturalKind::ApPrimes { family: ApFamily::new(3, 4).unwrap() }, 20_000).into();
    let targets = Targets::Real(real_grid(&r(1, 10), &r(10, 1), 60).unwrap());
    let rep = coverage_check(&u, &v, &targets, &r(1, 20)).unwrap();
    assert_eq!(rep.covered, rep.total);
}

#[test]
fn band_partition_is_total_up_to_a_million() {
    assert!((1..=1_000_000u64).all(|n| band_of_norm(n).is_some()));
}

#[test]
fn finite_c_leaves_d_dense_at_finer_epsilon() {
    let ring = Ideal::unit(1).unwrap();
    let grid = complex_box_grid(&r(0, 1), &r(0, 1), &r(1, 1), &r(1, 1), 5, 1).unwrap();
    for c in [vec![QuadInt::new(1, 0, 1)], vec![QuadInt::new(2, 1, 1), QuadInt::new(-3, 4, 1), QuadInt::new(0, 7, 1)]] {
        let rep = partition_density_check(&ring, &Coloring::FiniteC { c }, &grid, &r(1, 20), 5_000).unwrap();
        assert!(matches!(rep.dense_side, DenseSide::D | DenseSide::Both));
        assert_eq!(rep.d_coverage.covered, rep.d_coverage.total);
    }
}

#[test]
fn verification_holds_at_every_smaller_bound() {
    let fam = DigitPrefixFamily::new(1, 2, 10, false).unwrap();
    let cert = fam.gap_certificate(1).unwrap();
    let at = |bound: u64| -> SetDescriptor { NaturalSet::digit_prefix(fam, bound).unwrap().into() };
    let big = cert.verify(&at(1_000_000), &at(1_000_000)).unwrap();
    assert!(big.is_verified());
    assert_eq!(big.certificate().verified, 1_000_000);
    for bound in [10, 1_000, 99_999, 1_000_000] {
        assert!(cert.verify(&at(bound), &at(bound)).unwrap().is_verified());
    }
    // A recorded bound cannot be lowered.
    assert!(big.certificate().verify(&at(10), &at(10)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gap_witnesses_are_genuine(
        us in prop::collection::vec(1u64..500, 1..20),
        vs in prop::collection::vec(1u64..500, 1..20),
        (p, q, w) in (1i64..200, 1i64..50, 1i64..40),
    ) {
        let lo = r(p, q);
        let hi = &lo + &r(w, 20);
        let ns: SetDescriptor = NaturalSet::explicit(us, 500).unwrap().into();
        let ds: SetDescriptor = NaturalSet::explicit(vs, 500).unwrap().into();
        let region = Region::interval(lo.clone(), hi.clone()).unwrap();
        if let Some(Witness::Real { u, v }) = brute_force_gap_check(&ns, &ds, &region).unwrap() {
            let (SetDescriptor::Natural(n), SetDescriptor::Natural(d)) = (&ns, &ds) else { unreachable!() };
            prop_assert!(n.contains(u) && d.contains(v));
            let x = r(u as i64, v as i64);
            prop_assert!(lo < x && x < hi);
        }
    }

    #[test]
    fn window_ratios_are_exact(
        m in 2u64..8,
        (p, q) in (1i64..40, 1i64..10),
        w in 1i64..30,
    ) {
        let a = r(p, q);
        let b = &a + &r(w, 100);
        let u = natural(NaturalKind::Progression { residue: 0, modulus: m }, 100_000);
        let v = natural(NaturalKind::ApPrimes { family: ApFamily::new(1, 4).unwrap() }, 100_000);
        if let Ok(found) = ratio_in_window(&u, &v, &a, &b, &r(1, m as i64)) {
            prop_assert!(u.contains(found.u) && v.contains(found.v));
            prop_assert!(a < found.value && found.value <= b);
            prop_assert_eq!(found.value, r(found.u as i64, found.v as i64));
        }
    }

    #[test]
    fn finite_denominator_certificates_hold(
        vs in prop::collection::vec(1u64..60, 1..6),
        (p, q) in (1i64..300, 1i64..37),
    ) {
        let u = natural(NaturalKind::Progression { residue: 0, modulus: 5 }, 5_000);
        let t = r(p, q);
        if let Ok(cert) = finite_denominator_gap(&u, &vs, &t) {
            let ds: SetDescriptor = NaturalSet::explicit(vs, 5_000).unwrap().into();
            let checked = cert.verify(&u.clone().into(), &ds).unwrap();
            prop_assert!(checked.is_verified(), "{:?}", checked);
        }
    }

    #[test]
    fn interval_primes_match_trial_division(
        fam in (2u64..30).prop_flat_map(|m| (Just(m), 0..m)).prop_filter("coprime", |(m, a)| a.gcd(m) == 1),
        lo in 2u64..100_000,
        len in 0u64..3_000,
    ) {
        let (m, a) = fam;
        let hi = (lo + len).min(100_000);
        let got = primes_in_interval(&ApFamily::new(a, m).unwrap(), lo, hi, &Sieve::new(100_000)).unwrap();
        let want: Vec<u64> = (lo..=hi)
            .filter(|&n| n % m == a && (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0))
            .collect();
        prop_assert!(got.iter().all(|&p| is_prime(p)));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn certificates_round_trip_through_text(
        (a, c, b) in (1u64..8, 2u64..10, 2u64..14).prop_filter("valid", |(a, c, b)| a < c && c <= b && a * a * b > c * c),
        j in -3i32..4,
    ) {
        let cert = DigitPrefixFamily::new(a, c, b, false).unwrap().gap_certificate(j).unwrap();
        let parsed = GapCertificate::from_text(&cert.to_text()).unwrap();
        prop_assert_eq!(&parsed, &cert);
        let set: SetDescriptor = NaturalSet::digit_prefix(DigitPrefixFamily::new(a, c, b, false).unwrap(), 20_000).unwrap().into();
        let verified = match cert.verify(&set, &set).unwrap() {
            Verification::Verified { certificate } => certificate,
            Verification::Refuted { witness, .. } => panic!("refuted by {witness}"),
        };
        prop_assert_eq!(GapCertificate::from_text(&verified.to_text()).unwrap(), verified);
    }
}

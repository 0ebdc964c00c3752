mod common;

use num_traits::{Signed, Zero};
use pcf_moments::cfrac::{kperiodic_eval, sequence, CfParams};
use pcf_moments::exactnum::{rat, Rational};
use pcf_moments::hankel::{hankel_matrix, scan_kperiodic, scan_sequence, DEFAULT_MAX_ORDER};
use pcf_moments::matrix::{PsdVerdict, RatMatrix};
use pcf_moments::measures::{build_rho, classify_positivity};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn det_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..300 {
        let n = trial % 5 + 1;
        let m = common::random_square(&mut rng, n);
        assert_eq!(m.det(), common::cofactor_det(&common::rows_of(&m)), "\n{m}");
    }
}

#[test]
fn psd_matches_principal_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut psd, mut not_psd) = (0, 0);
    for trial in 0..300 {
        let n = trial % 5 + 1;
        let m = common::random_symmetric(&mut rng, n);
        let expected = common::all_principal_minors_nonneg(&m);
        match m.psd_check() {
            PsdVerdict::Psd => {
                assert!(expected, "\n{m}");
                assert_eq!(m.negative_direction(), None);
                psd += 1;
            }
            PsdVerdict::NotPsd(cert) => {
                assert!(!expected, "\n{m}");
                let v = cert.witness.expect("witness");
                assert!(m.quadratic_form(&v).is_negative(), "\n{m}");
                not_psd += 1;
            }
        }
    }
    assert!(psd > 50 && not_psd > 50, "psd {psd}, not psd {not_psd}");
}

#[test]
fn positive_measures_have_psd_hankel_matrices() {
    for (a, b, w) in [(1, 1, 1), (2, 1, 1), (3, 2, 1), (2, 2, 2), (3, 1, 2)] {
        let p = CfParams::from_ints(a, b, w).unwrap();
        assert!(classify_positivity(&p).unwrap().is_positive);
        let report =
            scan_sequence(&sequence(&p, 2 * DEFAULT_MAX_ORDER), DEFAULT_MAX_ORDER).unwrap();
        assert!(report.all_psd(), "({a}, {b}, {w})");
        assert!(report.determinants().all(|d| !d.is_negative()));
    }
}

#[test]
fn non_positive_measure_shows_up_in_hankel_scan() {
    // a < b with w > 0: some weight of rho is negative, and a Hankel
    // matrix must eventually fail.
    let p = CfParams::from_ints(1, 7, 1).unwrap();
    assert!(!classify_positivity(&p).unwrap().is_positive);
    let rho = build_rho(&p).unwrap();
    assert!(rho.atoms(10).iter().any(|a| a.weight.is_negative()));
    let seq = sequence(&p, 2 * DEFAULT_MAX_ORDER);
    let report = scan_sequence(&seq, DEFAULT_MAX_ORDER).unwrap();
    assert!(!report.all_psd());
}

#[test]
fn psd_is_inherited_by_lower_orders() {
    for periods in [
        vec![rat(1, 1), rat(1, 1), rat(2, 1)],
        vec![rat(2, 1), rat(7, 1)],
        vec![rat(1, 2), rat(3, 1), rat(1, 1)],
    ] {
        for w in [rat(0, 1), rat(1, 1), rat(3, 2)] {
            let report = scan_kperiodic(&periods, &w, 6).unwrap();
            if let Some((first, _)) = report.first_failure() {
                assert!(report.orders[first..].iter().all(|o| !o.verdict.is_psd()));
                assert!(report.orders[..first].iter().all(|o| o.verdict.is_psd()));
            }
        }
    }
}

#[test]
fn scaling_covariance() {
    let seq = kperiodic_eval(&[rat(1, 1), rat(1, 1), rat(2, 1)], &rat(1, 1), 12).unwrap();
    for c in [rat(3, 1), rat(-2, 5), rat(1, 7)] {
        let scaled: Vec<Rational> = seq.iter().map(|s| s * &c).collect();
        for n in 0..=6usize {
            let d = hankel_matrix(&seq, n).unwrap().det();
            let ds = hankel_matrix(&scaled, n).unwrap().det();
            assert_eq!(ds, d * c.pow(n as i32 + 1));
        }
        let positive = c.is_positive();
        let r = scan_sequence(&seq, 6).unwrap();
        let rs = scan_sequence(&scaled, 6).unwrap();
        for (o, os) in r.orders.iter().zip(&rs.orders) {
            if positive {
                assert_eq!(o.verdict.is_psd(), os.verdict.is_psd());
            }
        }
    }
}

#[test]
fn golden_scan_1_1_2() {
    let report = scan_kperiodic(&[rat(1, 1), rat(1, 1), rat(2, 1)], &rat(1, 1), 6).unwrap();
    let mut rendered = String::from("# periods 1,1,2  w 1\n# order determinant psd\n");
    for o in &report.orders {
        let tag = if o.verdict.is_psd() { "psd" } else { "not-psd" };
        rendered.push_str(&format!("{} {} {}\n", o.order, o.determinant, tag));
    }
    let golden = include_str!("golden/scan_1_1_2_w1.txt");
    assert_eq!(rendered, golden);
    assert_eq!(report.negative_determinant_orders(), vec![3, 4, 5]);
    assert_eq!(report.first_failure().map(|(k, _)| k), Some(3));
}

#[test]
fn all_ones_periods_stay_psd() {
    let report = scan_kperiodic(&[rat(1, 1), rat(1, 1), rat(1, 1)], &rat(1, 1), 6).unwrap();
    assert!(report.all_psd());
    assert!(report.negative_determinant_orders().is_empty());
}

#[test]
fn two_periodic_scan_matches_measure_classification() {
    // w = 0 lands on the boundary case where the sign route decides alone.
    let p = CfParams::from_ints(2, 7, 0).unwrap();
    let v = classify_positivity(&p).unwrap();
    let report = scan_kperiodic(&[rat(2, 1), rat(7, 1)], &rat(0, 1), 6).unwrap();
    let direct = scan_sequence(&sequence(&p, 12), 6).unwrap();
    assert_eq!(report, direct);
    if v.is_positive {
        assert!(report.all_psd());
    } else {
        assert!(build_rho(&p)
            .unwrap()
            .atoms(10)
            .iter()
            .any(|a| a.weight.is_negative()));
    }
}

#[test]
fn zero_matrix_and_identity() {
    assert!(RatMatrix::from_fn(3, |_, _| Rational::zero())
        .psd_check()
        .is_psd());
    assert_eq!(RatMatrix::identity(5).det(), rat(1, 1));
}

use approx::assert_abs_diff_eq;

use faulty_delivery::candidates::{cr_a1, cr_ad, trajectory_of, CandidateKind};
use faulty_delivery::hybrid::{region_map, select, Bounds, RegionLabel};
use faulty_delivery::model::ProblemInstance;
use faulty_delivery::oracle::{self, best_single_turn, global_worst_case};
use faulty_delivery::simulator::{numeric_sup_cr, SupConfig};
use faulty_delivery::Error;

fn inst(x: f64, y: f64) -> ProblemInstance {
    ProblemInstance::new(x, y).unwrap()
}

fn family_sup() -> SupConfig {
    SupConfig { t_step: 1e-3, ..SupConfig::default() }
}

#[test]
fn single_turn_family_at_reference_points() {
    let r = best_single_turn(&inst(0.0, 1.0), 1e-3, &family_sup()).unwrap();
    assert!(r.ratio >= 2f64.sqrt() - 1e-4, "{r:?}");

    let r = best_single_turn(&inst(2.0, 0.0), 1e-3, &family_sup()).unwrap();
    assert!(r.ratio >= 1.0 - 1e-12, "{r:?}");

    let r = best_single_turn(&inst(0.275257, 0.689019), 1e-3, &family_sup()).unwrap();
    assert_abs_diff_eq!(r.ratio, 1.74197, epsilon = 1e-3);
}

#[test]
fn single_turn_rejects_bad_step() {
    assert!(matches!(
        best_single_turn(&inst(0.0, 1.0), 0.0, &family_sup()),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn worst_case_over_unit_square() {
    let wc = global_worst_case(Bounds::new(0.0, 1.0, 0.0, 1.0).unwrap(), 0.01).unwrap();
    assert_abs_diff_eq!(wc.cr, 1.74197, epsilon = 1e-3);
    assert_abs_diff_eq!(wc.x, 0.275257, epsilon = 5e-3);
    assert_abs_diff_eq!(wc.y, 0.689019, epsilon = 5e-3);

    // a wider box finds the same maximum
    let wide = global_worst_case(Bounds::new(-1.0, 3.0, 0.0, 2.0).unwrap(), 0.02).unwrap();
    assert!(wide.cr <= 3.0);
    assert_abs_diff_eq!(wide.cr, wc.cr, epsilon = 1e-6);
}

#[test]
fn ad_and_a1_at_reference_points() {
    let p = inst(1.0, 1.0);
    assert!((cr_ad(&p).unwrap().ratio - cr_a1(&p).unwrap().ratio).abs() <= 1e-9);

    let p = inst(0.9, 0.1);
    let a1 = numeric_sup_cr(&p, &trajectory_of(&p, CandidateKind::A1).unwrap(), &SupConfig::default()).unwrap();
    assert!(cr_ad(&p).unwrap().ratio < a1.ratio);

    assert!(matches!(trajectory_of(&inst(0.0, 1.0), CandidateKind::Ad), Err(Error::Inapplicable { .. })));
}

#[test]
fn a1_closed_form_at_one_two() {
    let p = inst(1.0, 2.0);
    let closed = cr_a1(&p).unwrap();
    assert_abs_diff_eq!(closed.ratio, 1.236068, epsilon = 1e-6);
    let traj = trajectory_of(&p, CandidateKind::A1).unwrap();
    let numeric = numeric_sup_cr(&p, &traj, &SupConfig::default()).unwrap();
    assert_abs_diff_eq!(closed.ratio, numeric.ratio, epsilon = 1e-6);
}

#[test]
fn region_rows_at_reference_points() {
    let grid = region_map(Bounds::new(0.0, 2.0, 0.0, 1.0).unwrap(), 0.1).unwrap();
    let row = |x: f64, y: f64| {
        *grid
            .rows
            .iter()
            .find(|r| (r.x - x).abs() < 1e-9 && (r.y - y).abs() < 1e-9)
            .unwrap()
    };
    let r = row(0.9, 0.0);
    assert_eq!(r.label, RegionLabel::ZAd);
    assert_abs_diff_eq!(r.cr, 1.0, epsilon = 1e-12);
    // on the circle the Ad branch applies; A1 and Ad coincide there
    let r = row(2.0, 0.0);
    assert_eq!(r.label, RegionLabel::ZAd);
    assert_abs_diff_eq!(r.cr, 1.0, epsilon = 1e-12);
    assert_eq!(row(0.9, 0.1).label, RegionLabel::ZAd);
}

#[test]
fn far_right_axis_ratio_is_one() {
    for x in [3.0, 10.0, 1e3, 1e6] {
        assert_abs_diff_eq!(select(&inst(x, 0.0)).chosen_cr, 1.0, epsilon = 1e-12);
    }
}

#[test]
fn suites_are_reproducible() {
    let a = oracle::check_ad_vs_a1(50, 7, &SupConfig::default()).unwrap();
    let b = oracle::check_ad_vs_a1(50, 7, &SupConfig::default()).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.passed);
}

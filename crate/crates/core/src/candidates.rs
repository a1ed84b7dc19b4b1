//! The three candidate online strategies and their competitive ratios.
//!
//! * `A0` flies to `S` and sweeps toward `T`.
//! * `A1` flies to `T` and sweeps back toward `S`.
//! * `Ad` flies to the meeting point `(d, 0)` and sweeps back toward `S`.
//!
//! `Generic` strategies fly to an arbitrary first touch `(a, 0)` and then sweep
//! the segment in one of two orders; they have no closed form and are
//! evaluated by the simulator.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    meeting_point_d, opt_delivery_time, sqrt_clamped, FailTime, Point, ProblemInstance,
    DESTINATION, START,
};
use crate::simulator;

/// Half-width of the band around `x = 1` where the `A1` worst time uses its
/// `x = 1` branch. The general expression is 0/0 at `x = 1`; its slope in `x`
/// there is about 1/16, so the switch introduces an error below 1e-7.
pub const A1_UNIT_X_BAND: f64 = 1e-6;

/// Order in which a generic strategy sweeps the segment after its first touch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepOrder {
    /// `(a,0) -> S -> T`
    DownThenUp,
    /// `(a,0) -> T -> S -> T`
    UpThenDown,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CandidateKind {
    A0,
    A1,
    Ad,
    Generic { a: f64, order: SweepOrder },
}

impl CandidateKind {
    pub fn generic(a: f64, order: SweepOrder) -> Result<Self> {
        if (0.0..=1.0).contains(&a) {
            Ok(CandidateKind::Generic { a, order })
        } else {
            Err(Error::InvalidArgument(format!("first touch a = {a} is outside [0, 1]")))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CandidateKind::A0 => "A0",
            CandidateKind::A1 => "A1",
            CandidateKind::Ad => "Ad",
            CandidateKind::Generic { .. } => "Generic",
        }
    }
}

impl fmt::Display for CandidateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateKind::Generic { a, order } => write!(f, "Generic({a}, {order:?})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Polyline followed by the finisher at unit speed.
///
/// The first waypoint is the start point `P`; every later waypoint lies on the
/// x-axis, and from the third waypoint on they lie within `[0, 1]`. After the
/// last waypoint the finisher holds position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    waypoints: Vec<Point>,
}

impl Trajectory {
    pub fn new(waypoints: Vec<Point>) -> Result<Self> {
        let Some(first) = waypoints.first() else {
            return Err(Error::InvalidArgument("trajectory has no waypoints".into()));
        };
        if !waypoints.iter().all(|p| p.is_finite()) || !first.is_finite() {
            return Err(Error::InvalidArgument("trajectory has non-finite waypoints".into()));
        }
        for (i, p) in waypoints.iter().enumerate().skip(1) {
            if p.y != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "waypoint {i} at ({}, {}) is off the axis",
                    p.x, p.y
                )));
            }
            if i >= 2 && !(0.0..=1.0).contains(&p.x) {
                return Err(Error::InvalidArgument(format!(
                    "waypoint {i} at x = {} leaves the segment",
                    p.x
                )));
            }
        }
        Ok(Trajectory { waypoints })
    }

    pub fn waypoints(&self) -> &[Point] {
        &self.waypoints
    }

    pub fn start(&self) -> Point {
        self.waypoints[0]
    }

    pub fn length(&self) -> f64 {
        self.waypoints.windows(2).map(|w| w[0].dist(w[1])).sum()
    }
}

/// Builds the finisher's polyline for a strategy.
pub fn trajectory_of(inst: &ProblemInstance, kind: CandidateKind) -> Result<Trajectory> {
    let p = inst.finisher_start;
    let waypoints = match kind {
        CandidateKind::A0 => vec![p, START, DESTINATION],
        CandidateKind::A1 => vec![p, DESTINATION, START, DESTINATION],
        CandidateKind::Ad => {
            let d = ad_meeting_point(inst)?;
            vec![p, Point::on_axis(d), START, DESTINATION]
        }
        CandidateKind::Generic { a, order } => {
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::InvalidArgument(format!("first touch a = {a} is outside [0, 1]")));
            }
            match order {
                SweepOrder::DownThenUp => vec![p, Point::on_axis(a), START, DESTINATION],
                SweepOrder::UpThenDown => {
                    vec![p, Point::on_axis(a), DESTINATION, START, DESTINATION]
                }
            }
        }
    };
    Trajectory::new(waypoints)
}

fn ad_meeting_point(inst: &ProblemInstance) -> Result<f64> {
    if inst.x() > 0.0 {
        meeting_point_d(inst)
    } else {
        Err(Error::Inapplicable { kind: "Ad".into(), x: inst.x(), y: inst.y() })
    }
}

/// Delivery time of a strategy for a known fail time.
///
/// `A1` is floored at 1: when `|PT| + 2(1 - t) < 1` the finisher meets the
/// still-flying starter on its way back from `T`, which delivers at time 1.
/// Outside the unit disk around `T` the floor never binds.
pub fn delivery_time(inst: &ProblemInstance, kind: CandidateKind, t: FailTime) -> Result<f64> {
    let tv = t.get();
    match kind {
        CandidateKind::A0 => Ok(1.0 + inst.dist_to_start()),
        CandidateKind::A1 => Ok((inst.dist_to_destination() + 2.0 * (1.0 - tv)).max(1.0)),
        CandidateKind::Ad => {
            let d = ad_meeting_point(inst)?;
            if tv >= d {
                // the starter is met at (d, 0) before it fails
                Ok(opt_delivery_time(inst, t))
            } else {
                let reach = inst.finisher_start.dist(Point::on_axis(d));
                Ok(reach + (d - tv) + (1.0 - tv))
            }
        }
        CandidateKind::Generic { .. } => {
            let traj = trajectory_of(inst, kind)?;
            simulator::delivery_time(inst, &traj, t)
        }
    }
}

/// Ratio of a strategy's delivery time to the offline optimum at fail time `t`.
pub fn cr_at(inst: &ProblemInstance, kind: CandidateKind, t: FailTime) -> Result<f64> {
    Ok(delivery_time(inst, kind, t)? / opt_delivery_time(inst, t))
}

/// A closed-form competitive ratio with the fail time attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrResult {
    pub ratio: f64,
    pub worst_t: FailTime,
    /// `|PT|`
    pub z1: f64,
}

/// Competitive ratio of `A0`. Its delivery time does not depend on `t` while
/// the offline optimum is non-increasing in `t`, so the worst case is `t = 1`.
pub fn cr_a0(inst: &ProblemInstance) -> CrResult {
    let z1 = inst.dist_to_destination();
    CrResult {
        ratio: (1.0 + inst.dist_to_start()) / z1.max(1.0),
        worst_t: FailTime::ONE,
        z1,
    }
}

/// The stationary point of `A1`'s ratio in `t` before clamping. No domain
/// check: outside the unit disk around `T` it is the worst fail time when
/// positive.
pub fn a1_stationary_time(inst: &ProblemInstance) -> f64 {
    let (x, y) = (inst.x(), inst.y());
    if (x - 1.0).abs() < A1_UNIT_X_BAND {
        return 1.0 - 0.75 * y;
    }
    let z1 = inst.dist_to_destination();
    let radicand = x * (x + z1 - 2.0) + y * y - z1 + 1.0;
    let numerator = x * x + y * y + z1 * (1.0 - x) - 1.0 - z1 * sqrt_clamped(radicand);
    numerator / (2.0 * (x - 1.0))
}

/// `A1`'s unfloored delivery time over the offline time without its floor at 1.
/// Outside the unit disk around `T` this coincides with `cr_at(_, A1, t)`.
pub fn a1_objective(inst: &ProblemInstance, t: f64) -> f64 {
    let reach = inst.finisher_start.dist(Point::on_axis(t));
    (inst.dist_to_destination() + 2.0 * (1.0 - t)) / (reach + 1.0 - t)
}

/// Worst fail time for `A1`, valid outside the open unit disk around `T`.
pub fn worst_fail_time_a1(inst: &ProblemInstance) -> Result<FailTime> {
    if !inst.outside_open_dest_disk() {
        return Err(Error::Domain { what: "the A1 worst fail time", x: inst.x(), y: inst.y() });
    }
    Ok(FailTime::clamped(a1_stationary_time(inst)))
}

pub fn cr_a1(inst: &ProblemInstance) -> Result<CrResult> {
    let worst_t = worst_fail_time_a1(inst)?;
    Ok(CrResult {
        ratio: cr_at(inst, CandidateKind::A1, worst_t)?,
        worst_t,
        z1: inst.dist_to_destination(),
    })
}

fn check_ad_domain(inst: &ProblemInstance, what: &'static str) -> Result<()> {
    if inst.x() <= 0.0 {
        return Err(Error::Inapplicable { kind: "Ad".into(), x: inst.x(), y: inst.y() });
    }
    if !inst.in_dest_disk() {
        return Err(Error::Domain { what, x: inst.x(), y: inst.y() });
    }
    Ok(())
}

/// Unclamped interior maximizer `t'` of `Ad`'s ratio; positive exactly when
/// the start point lies outside the disk `x^2 + y^2 <= x`.
pub fn ad_stationary_time(inst: &ProblemInstance) -> f64 {
    let (x, y) = (inst.x(), inst.y());
    (x * (x - 1.0) + y * y) / (2.0 * (x + x.sqrt()))
}

/// Worst fail time for `Ad`, valid for `x > 0` inside the closed unit disk around `T`.
pub fn worst_fail_time_ad(inst: &ProblemInstance) -> Result<FailTime> {
    check_ad_domain(inst, "the Ad worst fail time")?;
    Ok(FailTime::clamped(ad_stationary_time(inst)))
}

pub fn cr_ad(inst: &ProblemInstance) -> Result<CrResult> {
    check_ad_domain(inst, "the Ad competitive ratio")?;
    let (x, y) = (inst.x(), inst.y());
    let r2 = x * x + y * y;
    let ratio = if inst.in_half_disk() {
        (r2 + x) / (x * (1.0 + r2.sqrt()))
    } else {
        let s = x.sqrt() + 1.0;
        1.0 + y * y / (x * s * s)
    };
    Ok(CrResult {
        ratio,
        worst_t: worst_fail_time_ad(inst)?,
        z1: inst.dist_to_destination(),
    })
}

/// Closed-form ratio for one of the three named candidates.
pub fn closed_form_cr(inst: &ProblemInstance, kind: CandidateKind) -> Result<CrResult> {
    match kind {
        CandidateKind::A0 => Ok(cr_a0(inst)),
        CandidateKind::A1 => cr_a1(inst),
        CandidateKind::Ad => cr_ad(inst),
        CandidateKind::Generic { .. } => Err(Error::Inapplicable {
            kind: kind.to_string(),
            x: inst.x(),
            y: inst.y(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimize::grid_golden_max;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn inst(x: f64, y: f64) -> ProblemInstance {
        ProblemInstance::new(x, y).unwrap()
    }

    fn ft(t: f64) -> FailTime {
        FailTime::new(t).unwrap()
    }

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    /// Argmax of `cr_at` over `t` on a 1e-4 grid refined to 1e-8, written
    /// against the closed-form delivery times.
    fn grid_argmax(i: &ProblemInstance, kind: CandidateKind) -> (f64, f64) {
        grid_golden_max(|t| cr_at(i, kind, ft(t)).unwrap(), 1e-4, 1e-8)
    }

    #[test]
    fn trajectories_match_definitions() {
        let t = trajectory_of(&inst(0.0, 1.0), CandidateKind::A0).unwrap();
        assert_eq!(t.waypoints(), pts(&[(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)]).as_slice());

        let t = trajectory_of(&inst(1.0, 1.0), CandidateKind::Ad).unwrap();
        assert_eq!(
            t.waypoints(),
            pts(&[(1.0, 1.0), (1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]).as_slice()
        );

        let kind = CandidateKind::generic(0.25, SweepOrder::UpThenDown).unwrap();
        let t = trajectory_of(&inst(0.5, 0.5), kind).unwrap();
        assert_eq!(
            t.waypoints(),
            pts(&[(0.5, 0.5), (0.25, 0.0), (1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]).as_slice()
        );

        let t = trajectory_of(&inst(3.0, 2.0), CandidateKind::A1).unwrap();
        assert_eq!(t.waypoints().len(), 4);
    }

    #[test]
    fn ad_needs_positive_x() {
        assert!(matches!(
            trajectory_of(&inst(0.0, 1.0), CandidateKind::Ad),
            Err(Error::Inapplicable { .. })
        ));
        assert!(delivery_time(&inst(-1.0, 0.5), CandidateKind::Ad, ft(0.2)).is_err());
        assert!(CandidateKind::generic(1.5, SweepOrder::DownThenUp).is_err());
    }

    #[test]
    fn trajectory_validation() {
        assert!(Trajectory::new(vec![]).is_err());
        assert!(Trajectory::new(pts(&[(0.0, 1.0), (0.5, 0.1)])).is_err());
        assert!(Trajectory::new(pts(&[(0.0, 1.0), (0.5, 0.0), (1.5, 0.0)])).is_err());
        // the first touch may lie beyond T (Ad outside the unit disk)
        assert!(Trajectory::new(pts(&[(3.0, 1.0), (1.6, 0.0), (0.0, 0.0)])).is_ok());
    }

    #[test]
    fn delivery_time_examples() {
        assert_abs_diff_eq!(
            delivery_time(&inst(0.0, 1.0), CandidateKind::A0, ft(0.5)).unwrap(),
            2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            delivery_time(&inst(2.0, 0.0), CandidateKind::A1, ft(0.25)).unwrap(),
            2.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            delivery_time(&inst(1.0, 0.0), CandidateKind::Ad, ft(0.25)).unwrap(),
            1.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn cr_at_examples() {
        assert_abs_diff_eq!(cr_at(&inst(1.0, 0.0), CandidateKind::Ad, ft(0.25)).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            cr_at(&inst(0.0, 1.0), CandidateKind::A0, ft(1.0)).unwrap(),
            2f64.sqrt(),
            epsilon = 1e-15
        );
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(cr_at(&inst(0.0, 0.0), CandidateKind::A0, ft(t)).unwrap(), 1.0);
        }
    }

    #[test]
    fn cr_a0_examples() {
        assert_eq!(cr_a0(&inst(0.0, 0.0)).ratio, 1.0);
        assert_abs_diff_eq!(cr_a0(&inst(0.0, 1.0)).ratio, 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(cr_a0(&inst(2.0, 0.0)).ratio, 3.0, epsilon = 1e-15);
        assert_eq!(cr_a0(&inst(0.4, 2.0)).worst_t, FailTime::ONE);

        // brute force over t
        let (_, v) = grid_argmax(&inst(0.0, 1.0), CandidateKind::A0);
        assert_abs_diff_eq!(v, std::f64::consts::SQRT_2, epsilon = 1e-6);
        let (_, v) = grid_argmax(&inst(2.0, 0.0), CandidateKind::A0);
        assert_abs_diff_eq!(v, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn worst_fail_time_a1_examples() {
        assert_eq!(worst_fail_time_a1(&inst(1.0, 2.0)).unwrap().get(), 0.0);
        assert_abs_diff_eq!(a1_stationary_time(&inst(1.0, 2.0)), -0.5, epsilon = 1e-15);

        let t = worst_fail_time_a1(&inst(2.0, 0.0)).unwrap().get();
        assert_abs_diff_eq!(t, (2.0 - 2f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t, 0.292893, epsilon = 1e-6);

        // (1, 0.8) is inside the unit disk around T: only the raw stationary point exists
        assert_abs_diff_eq!(a1_stationary_time(&inst(1.0, 0.8)), 0.4, epsilon = 1e-15);
        assert!(matches!(worst_fail_time_a1(&inst(1.0, 0.8)), Err(Error::Domain { .. })));
        let (t_num, _) = grid_golden_max(|t| a1_objective(&inst(1.0, 0.8), t), 1e-4, 1e-8);
        assert_abs_diff_eq!(t_num, 0.4, epsilon = 1e-4);

        let (t_num, _) = grid_argmax(&inst(1.0, 2.0), CandidateKind::A1);
        assert!(t_num < 1e-4);
    }

    #[test]
    fn cr_a1_examples() {
        let r = cr_a1(&inst(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(r.ratio, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.worst_t.get(), 0.292893, epsilon = 1e-6);
        assert_abs_diff_eq!(r.z1, 1.0, epsilon = 1e-15);

        let r = cr_a1(&inst(1.0, 2.0)).unwrap();
        assert_abs_diff_eq!(r.ratio, 4.0 / (5f64.sqrt() + 1.0), epsilon = 1e-12);
        assert_abs_diff_eq!(r.ratio, 1.236068, epsilon = 1e-6);
        assert_eq!(r.worst_t.get(), 0.0);
        let (_, v) = grid_argmax(&inst(1.0, 2.0), CandidateKind::A1);
        assert_abs_diff_eq!(v, r.ratio, epsilon = 1e-9);

        let r = cr_a1(&inst(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(a1_stationary_time(&inst(0.0, 1.0)), -0.1659, epsilon = 1e-4);
        assert_abs_diff_eq!(r.ratio, (2f64.sqrt() + 2.0) / 2.0, epsilon = 1e-12);
        assert_eq!(r.worst_t.get(), 0.0);
        let (_, v) = grid_argmax(&inst(0.0, 1.0), CandidateKind::A1);
        assert_abs_diff_eq!(v, 1.707107, epsilon = 1e-6);

        assert!(cr_a1(&inst(0.9, 0.1)).is_err());
    }

    #[test]
    fn worst_fail_time_ad_examples() {
        assert_eq!(worst_fail_time_ad(&inst(0.5, 0.5)).unwrap().get(), 0.0);
        assert_eq!(worst_fail_time_ad(&inst(1.0, 0.0)).unwrap().get(), 0.0);

        let expected = 0.07 / (2.0 * (0.9 + 0.9f64.sqrt()));
        let t = worst_fail_time_ad(&inst(0.9, 0.4)).unwrap().get();
        assert_abs_diff_eq!(t, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(t, 0.018932, epsilon = 1e-6);
        let (t_num, _) = grid_argmax(&inst(0.9, 0.4), CandidateKind::Ad);
        assert_abs_diff_eq!(t_num, t, epsilon = 1e-4);

        assert!(matches!(worst_fail_time_ad(&inst(3.0, 0.0)), Err(Error::Domain { .. })));
        assert!(matches!(worst_fail_time_ad(&inst(0.0, 0.0)), Err(Error::Inapplicable { .. })));
    }

    #[test]
    fn cr_ad_examples() {
        let r = cr_ad(&inst(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(r.ratio, 1.0, epsilon = 1e-15);

        // on x^2 + y^2 = x both branches give 1 + 0.25/(0.5 (sqrt(0.5) + 1)^2)
        let r = cr_ad(&inst(0.5, 0.5)).unwrap();
        let branch1 = (0.5 + 0.5) / (0.5 * (1.0 + 0.5f64.sqrt()));
        let s = 0.5f64.sqrt() + 1.0;
        let branch2 = 1.0 + 0.25 / (0.5 * s * s);
        assert_abs_diff_eq!(branch1, branch2, epsilon = 1e-12);
        assert_abs_diff_eq!(r.ratio, 1.171573, epsilon = 1e-6);
        let (_, v) = grid_argmax(&inst(0.5, 0.5), CandidateKind::Ad);
        assert_abs_diff_eq!(v, r.ratio, epsilon = 1e-9);

        let r = cr_ad(&inst(0.9, 0.1)).unwrap();
        assert_abs_diff_eq!(r.ratio, (0.82 + 0.9) / (0.9 * (1.0 + 0.82f64.sqrt())), epsilon = 1e-15);
        assert_abs_diff_eq!(r.ratio, 1.002924, epsilon = 1e-6);
        let (_, v) = grid_argmax(&inst(0.9, 0.1), CandidateKind::Ad);
        assert_abs_diff_eq!(v, r.ratio, epsilon = 1e-9);
    }

    #[test]
    fn a1_unit_x_branch_is_continuous_across_switch() {
        for y in [1.0, 1.2, 2.0, 3.5] {
            let at_one = a1_stationary_time(&inst(1.0, y));
            for dx in [-2.0 * A1_UNIT_X_BAND, 2.0 * A1_UNIT_X_BAND, 1e-4] {
                let off = a1_stationary_time(&inst(1.0 + dx, y));
                // slope is about 1/16 in x
                assert!((off - at_one).abs() <= 0.1 * dx.abs() + 1e-9, "y={y} dx={dx}");
            }
        }
    }

    #[test]
    fn boundary_of_dest_disk_makes_ad_and_a1_coincide() {
        for k in 0..50 {
            let phi = std::f64::consts::PI * (k as f64 + 0.5) / 50.0;
            let i = inst(1.0 + phi.cos(), phi.sin());
            let d = meeting_point_d(&i).unwrap();
            assert_abs_diff_eq!(d, 1.0, epsilon = 1e-9);
            let ad = cr_ad(&i).unwrap().ratio;
            let a1 = cr_a1(&i).unwrap().ratio;
            assert!((ad - a1).abs() <= 1e-9, "phi={phi} ad={ad} a1={a1}");
        }
    }

    #[test]
    fn ad_stationary_time_is_below_one() {
        // t' < 1 over a dense sweep of the unit disk around T
        for i in 1..200 {
            for j in 0..200 {
                let (x, y) = (i as f64 / 100.0, j as f64 / 200.0);
                let p = inst(x, y);
                if p.in_dest_disk() {
                    assert!(worst_fail_time_ad(&p).unwrap().get() < 1.0);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn ratios_never_below_one(x in -3.0..3.0f64, y in 0.0..3.0f64, t in 0.0..=1.0f64) {
            let i = inst(x, y);
            for kind in [CandidateKind::A0, CandidateKind::A1, CandidateKind::Ad] {
                if let Ok(r) = cr_at(&i, kind, ft(t)) {
                    prop_assert!(r >= 1.0 - 1e-12, "{kind} at ({x},{y},{t}) = {r}");
                }
            }
        }

        #[test]
        fn a0_constant_and_a1_slope(x in -3.0..3.0f64, y in 0.0..3.0f64, a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
            let i = inst(x, y);
            prop_assume!(i.dest_disk_value() >= 1.0);
            let a0a = delivery_time(&i, CandidateKind::A0, ft(a)).unwrap();
            let a0b = delivery_time(&i, CandidateKind::A0, ft(b)).unwrap();
            prop_assert_eq!(a0a, a0b);
            let a1a = delivery_time(&i, CandidateKind::A1, ft(a)).unwrap();
            let a1b = delivery_time(&i, CandidateKind::A1, ft(b)).unwrap();
            prop_assert!(((a1b - a1a) - (-2.0) * (b - a)).abs() < 1e-12);
        }

        #[test]
        fn ad_is_optimal_after_meeting_point(x in 0.01..2.0f64, y in 0.0..1.0f64, s in 0.0..=1.0f64) {
            let i = inst(x, y);
            prop_assume!(i.in_dest_disk());
            let d = meeting_point_d(&i).unwrap();
            let t = d + s * (1.0 - d);
            let r = cr_at(&i, CandidateKind::Ad, ft(t)).unwrap();
            prop_assert!((r - 1.0).abs() <= 1e-9);
        }

        #[test]
        fn ad_branches_agree_on_half_disk_boundary(theta in 0.01..3.13f64) {
            // x^2 + y^2 = x  <=>  (x - 1/2)^2 + y^2 = 1/4
            let x = 0.5 + 0.5 * theta.cos();
            let y = 0.5 * theta.sin();
            let r2 = x * x + y * y;
            let b1 = (r2 + x) / (x * (1.0 + r2.sqrt()));
            let s = x.sqrt() + 1.0;
            let b2 = 1.0 + y * y / (x * s * s);
            prop_assert!((b1 - b2).abs() <= 1e-12);
        }

        #[test]
        fn closed_form_ad_matches_cr_at_worst_time(x in 0.01..2.0f64, y in 0.0..1.0f64) {
            let i = inst(x, y);
            prop_assume!(i.in_dest_disk());
            let r = cr_ad(&i).unwrap();
            let at = cr_at(&i, CandidateKind::Ad, r.worst_t).unwrap();
            prop_assert!((r.ratio - at).abs() <= 1e-9);
        }
    }
}

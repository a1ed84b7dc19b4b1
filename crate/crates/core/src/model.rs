//! Geometry of the delivery problem and the offline-optimal delivery time.
//!
//! Coordinates are scaled so that the starter begins at `S = (0, 0)` and the
//! destination is `T = (1, 0)`. Both drones fly at unit speed, so times and
//! distances share the same unit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default equality tolerance for boundary tests.
pub const EPS: f64 = 1e-9;

/// Negative radicands down to this magnitude are treated as rounding noise.
pub const RADICAND_NOISE: f64 = 1e-12;

pub const START: Point = Point { x: 0.0, y: 0.0 };
pub const DESTINATION: Point = Point { x: 1.0, y: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub const fn on_axis(x: f64) -> Self {
        Point { x, y: 0.0 }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// The finisher's start point, folded into the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub finisher_start: Point,
}

/// Result of [`normalize`]: the folded instance and whether `y` changed sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalized {
    pub instance: ProblemInstance,
    pub folded: bool,
}

/// Reflects the start point into `y >= 0`. The problem is symmetric about the
/// line through `S` and `T`, so every downstream quantity is unchanged.
pub fn normalize(raw: Point) -> Result<Normalized> {
    if !raw.is_finite() {
        return Err(Error::InvalidInput(format!(
            "start point ({}, {}) is not finite",
            raw.x, raw.y
        )));
    }
    let folded = raw.y < 0.0;
    Ok(Normalized {
        instance: ProblemInstance {
            // abs() also maps -0.0 to 0.0
            finisher_start: Point::new(raw.x, raw.y.abs()),
        },
        folded,
    })
}

impl ProblemInstance {
    /// Builds a normalized instance from raw coordinates.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        normalize(Point::new(x, y)).map(|n| n.instance)
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.finisher_start.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.finisher_start.y
    }

    /// `|PS|`, the finisher's distance to the starter's last known position.
    pub fn dist_to_start(&self) -> f64 {
        self.finisher_start.norm()
    }

    /// `|PT|`, the finisher's distance to the destination.
    pub fn dist_to_destination(&self) -> f64 {
        self.finisher_start.dist(DESTINATION)
    }

    /// Squared distance to `T`; compared against 1 for membership in the unit disk around `T`.
    pub fn dest_disk_value(&self) -> f64 {
        let dx = self.x() - 1.0;
        dx * dx + self.y() * self.y()
    }

    /// Start point lies in the closed disk of radius 1 around `T`, with `EPS` slack.
    pub fn in_dest_disk(&self) -> bool {
        self.dest_disk_value() <= 1.0 + EPS
    }

    /// Start point lies outside the open disk of radius 1 around `T`, with `EPS` slack.
    pub fn outside_open_dest_disk(&self) -> bool {
        self.dest_disk_value() >= 1.0 - EPS
    }

    /// Membership in the closed disk of radius 1/2 around `(1/2, 0)`, i.e. `x^2 + y^2 <= x`.
    pub fn in_half_disk(&self) -> bool {
        self.x() * self.x() + self.y() * self.y() <= self.x()
    }
}

/// A fail time `t` in `[0, 1]`; the starter stops at `(t, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FailTime(f64);

impl FailTime {
    pub const ZERO: FailTime = FailTime(0.0);
    pub const ONE: FailTime = FailTime(1.0);

    pub fn new(t: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&t) {
            Ok(FailTime(t))
        } else {
            Err(Error::InvalidArgument(format!("fail time {t} is outside [0, 1]")))
        }
    }

    /// Clamps any finite value into `[0, 1]`.
    pub fn clamped(t: f64) -> Self {
        FailTime(t.clamp(0.0, 1.0))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Square root that absorbs tiny negative radicands produced by cancellation.
pub fn sqrt_clamped(v: f64) -> f64 {
    if (-RADICAND_NOISE..0.0).contains(&v) {
        0.0
    } else {
        v.sqrt()
    }
}

/// Offline-optimal delivery time when the fail time is known in advance:
/// fly straight to `(t, 0)`, wait for the starter if needed, then carry to `T`.
pub fn opt_delivery_time(inst: &ProblemInstance, t: FailTime) -> f64 {
    let t = t.get();
    let reach = inst.finisher_start.dist(Point::on_axis(t));
    (reach + 1.0 - t).max(1.0)
}

/// The point `(d, 0)` that the finisher and an unfailed starter reach at the
/// same moment: the solution of `|P - (d, 0)| = d`.
///
/// `P = S` maps to 0 by continuity.
pub fn meeting_point_d(inst: &ProblemInstance) -> Result<f64> {
    let (x, y) = (inst.x(), inst.y());
    if x > 0.0 {
        Ok((x * x + y * y) / (2.0 * x))
    } else if x == 0.0 && y == 0.0 {
        Ok(0.0)
    } else {
        Err(Error::Inapplicable { kind: "Ad".into(), x, y })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn inst(x: f64, y: f64) -> ProblemInstance {
        ProblemInstance::new(x, y).unwrap()
    }

    #[test]
    fn normalize_folds_lower_half_plane() {
        let n = normalize(Point::new(0.5, -0.5)).unwrap();
        assert_eq!(n.instance.finisher_start, Point::new(0.5, 0.5));
        assert!(n.folded);

        let n = normalize(Point::new(0.5, 0.5)).unwrap();
        assert_eq!(n.instance.finisher_start, Point::new(0.5, 0.5));
        assert!(!n.folded);

        let n = normalize(Point::new(-2.0, -3.0)).unwrap();
        assert_eq!(n.instance.finisher_start, Point::new(-2.0, 3.0));
        assert!(n.folded);
    }

    #[test]
    fn normalize_rejects_non_finite() {
        assert!(matches!(normalize(Point::new(f64::NAN, 0.0)), Err(Error::InvalidInput(_))));
        assert!(matches!(
            normalize(Point::new(0.0, f64::INFINITY)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn fail_time_bounds() {
        assert!(FailTime::new(-1e-15).is_err());
        assert!(FailTime::new(1.0 + 1e-15).is_err());
        assert!(FailTime::new(f64::NAN).is_err());
        assert_eq!(FailTime::clamped(-0.3).get(), 0.0);
        assert_eq!(FailTime::clamped(1.7).get(), 1.0);
    }

    #[test]
    fn opt_examples() {
        let t = |v| FailTime::new(v).unwrap();
        assert_abs_diff_eq!(opt_delivery_time(&inst(0.0, 0.0), t(0.7)), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(opt_delivery_time(&inst(0.0, 1.0), t(0.0)), 2.0, epsilon = 1e-15);
        // sqrt(0.25^2 + 0.5^2) + 0.75
        let expected = 0.3125f64.sqrt() + 0.75;
        assert_abs_diff_eq!(expected, 1.309017, epsilon = 1e-6);
        assert_abs_diff_eq!(opt_delivery_time(&inst(0.5, 0.5), t(0.25)), expected, epsilon = 1e-15);
    }

    /// Bisection on `|P - (d, 0)| - d`, which is decreasing in `d` for `x > 0`.
    fn d_by_bisection(x: f64, y: f64) -> f64 {
        let f = |d: f64| (x - d).hypot(y) - d;
        let (mut lo, mut hi) = (0.0, 1.0);
        while f(hi) > 0.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn meeting_point_examples() {
        assert_abs_diff_eq!(d_by_bisection(1.0, 0.0), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(meeting_point_d(&inst(1.0, 0.0)).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(meeting_point_d(&inst(1.0, 1.0)).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(meeting_point_d(&inst(0.5, 0.5)).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d_by_bisection(0.5, 0.5), 0.5, epsilon = 1e-12);
        assert_eq!(meeting_point_d(&inst(0.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn meeting_point_needs_positive_x() {
        assert!(matches!(meeting_point_d(&inst(0.0, 1.0)), Err(Error::Inapplicable { .. })));
        assert!(matches!(meeting_point_d(&inst(-0.5, 0.2)), Err(Error::Inapplicable { .. })));
    }

    #[test]
    fn sqrt_clamped_absorbs_noise_only() {
        assert_eq!(sqrt_clamped(-1e-13), 0.0);
        assert!(sqrt_clamped(-1e-6).is_nan());
        assert_eq!(sqrt_clamped(4.0), 2.0);
    }

    proptest! {
        #[test]
        fn opt_is_at_least_one(x in -5.0..5.0f64, y in 0.0..5.0f64, t in 0.0..=1.0f64) {
            prop_assert!(opt_delivery_time(&inst(x, y), FailTime::new(t).unwrap()) >= 1.0);
        }

        #[test]
        fn opt_non_increasing_in_t(x in -5.0..5.0f64, y in 0.0..5.0f64, a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
            let i = inst(x, y);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let o_lo = opt_delivery_time(&i, FailTime::new(lo).unwrap());
            let o_hi = opt_delivery_time(&i, FailTime::new(hi).unwrap());
            prop_assert!(o_hi <= o_lo + 1e-12);
        }

        #[test]
        fn meeting_point_solves_defining_equation(x in 1e-3..5.0f64, y in 0.0..5.0f64) {
            let i = inst(x, y);
            let d = meeting_point_d(&i).unwrap();
            prop_assert!((i.finisher_start.dist(Point::on_axis(d)) - d).abs() <= 1e-12 * d.max(1.0));
        }

        #[test]
        fn meeting_point_within_one_iff_in_dest_disk(x in 1e-3..3.0f64, y in 0.0..2.0f64) {
            let i = inst(x, y);
            let d = meeting_point_d(&i).unwrap();
            let disk = i.dest_disk_value();
            // skip a thin band around the circle where rounding decides
            prop_assume!((disk - 1.0).abs() > 1e-12);
            prop_assert_eq!(d <= 1.0, disk <= 1.0);
        }

        #[test]
        fn normalize_idempotent_and_symmetric(x in -5.0..5.0f64, y in -5.0..5.0f64) {
            let a = normalize(Point::new(x, y)).unwrap().instance;
            let b = normalize(Point::new(x, -y)).unwrap().instance;
            prop_assert_eq!(a, b);
            let again = normalize(a.finisher_start).unwrap();
            prop_assert_eq!(again.instance, a);
            prop_assert!(!again.folded);
        }
    }
}

//! The hybrid strategy: run whichever candidate has the least closed-form
//! competitive ratio at the finisher's start point. Also classifies the
//! plane into the regions where each candidate is selected and traces the
//! curves separating those regions.

use std::fmt;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::candidates::{cr_a0, cr_a1, cr_ad, CandidateKind, CrResult};
use crate::error::{Error, Result};
use crate::model::{meeting_point_d, normalize, sqrt_clamped, Point, ProblemInstance, EPS};
use crate::optimize::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    #[serde(rename = "A0")]
    ZA0,
    #[serde(rename = "A1")]
    ZA1,
    #[serde(rename = "Ad")]
    ZAd,
}

impl RegionLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::ZA0 => "A0",
            RegionLabel::ZA1 => "A1",
            RegionLabel::ZAd => "Ad",
        }
    }

    pub fn kind(self) -> CandidateKind {
        match self {
            RegionLabel::ZA0 => CandidateKind::A0,
            RegionLabel::ZA1 => CandidateKind::A1,
            RegionLabel::ZAd => CandidateKind::Ad,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CandidateSummary {
    pub kind: CandidateKind,
    pub ratio: f64,
    pub worst_t: f64,
}

impl CandidateSummary {
    fn new(kind: CandidateKind, r: CrResult) -> Self {
        CandidateSummary { kind, ratio: r.ratio, worst_t: r.worst_t.get() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub instance: ProblemInstance,
    pub label: RegionLabel,
    pub chosen_cr: f64,
    pub chosen_worst_t: f64,
    /// Every candidate whose closed form applies at this point.
    pub per_candidate: Vec<CandidateSummary>,
    pub d: Option<f64>,
}

/// Picks the strategy with the least competitive ratio. Ties go to `A0`.
///
/// Start points strictly outside the unit disk around `T` compare `A0` with
/// `A1`; points on or inside it compare `A0` with `Ad`. The origin is the only
/// point of the closed disk with `x <= 0`; there every strategy is optimal.
pub fn select(inst: &ProblemInstance) -> AnalysisReport {
    let a0 = cr_a0(inst);
    let mut per_candidate = vec![CandidateSummary::new(CandidateKind::A0, a0)];
    let a1 = cr_a1(inst).ok();
    let ad = cr_ad(inst).ok();
    if let Some(r) = a1 {
        per_candidate.push(CandidateSummary::new(CandidateKind::A1, r));
    }
    if let Some(r) = ad {
        per_candidate.push(CandidateSummary::new(CandidateKind::Ad, r));
    }

    let (label, chosen) = if inst.dest_disk_value() > 1.0 {
        let a1 = a1.expect("A1 applies outside the disk");
        if a0.ratio <= a1.ratio {
            (RegionLabel::ZA0, a0)
        } else {
            (RegionLabel::ZA1, a1)
        }
    } else {
        match ad {
            Some(ad) if a0.ratio > ad.ratio => (RegionLabel::ZAd, ad),
            _ => (RegionLabel::ZA0, a0),
        }
    };

    AnalysisReport {
        instance: *inst,
        label,
        chosen_cr: chosen.ratio,
        chosen_worst_t: chosen.worst_t.get(),
        per_candidate,
        d: meeting_point_d(inst).ok().filter(|_| inst.x() > 0.0),
    }
}

/// Hybrid competitive ratio at a raw (possibly lower half plane) point.
pub fn hybrid_cr(x: f64, y: f64) -> Result<f64> {
    Ok(select(&normalize(Point::new(x, y))?.instance).chosen_cr)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Bounds {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let b = Bounds { xmin, xmax, ymin, ymax };
        if ![xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) || xmin > xmax || ymin > ymax {
            return Err(Error::InvalidArgument(format!("degenerate bounds {b:?}")));
        }
        Ok(b)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (self.xmin..=self.xmax).contains(&x) && (self.ymin..=self.ymax).contains(&y)
    }

    pub fn clamp(&self, x: f64, y: f64) -> (f64, f64) {
        (x.clamp(self.xmin, self.xmax), y.clamp(self.ymin, self.ymax))
    }
}

/// Lattice coordinates `lo, lo + step, ...` not exceeding `hi` (up to rounding).
pub fn lattice(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridRow {
    pub x: f64,
    pub y: f64,
    pub label: RegionLabel,
    pub cr: f64,
    pub worst_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionGrid {
    pub bounds: Bounds,
    pub step: f64,
    pub nx: usize,
    pub ny: usize,
    pub rows: Vec<GridRow>,
}

/// Runs the hybrid selection at every lattice point. Rows are ordered with
/// `y` as the outer (ascending) index and `x` inner.
pub fn region_map(bounds: Bounds, step: f64) -> Result<RegionGrid> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidArgument(format!("grid step must be positive, got {step}")));
    }
    let bounds = Bounds::new(bounds.xmin, bounds.xmax, bounds.ymin, bounds.ymax)?;
    let xs = lattice(bounds.xmin, bounds.xmax, step);
    let ys = lattice(bounds.ymin, bounds.ymax, step);
    let rows = ys
        .par_iter()
        .flat_map_iter(|&y| {
            xs.iter().map(move |&x| {
                let inst = normalize(Point::new(x, y)).expect("lattice points are finite").instance;
                let r = select(&inst);
                GridRow { x, y, label: r.label, cr: r.chosen_cr, worst_t: r.chosen_worst_t }
            })
        })
        .collect();
    Ok(RegionGrid { bounds, step, nx: xs.len(), ny: ys.len(), rows })
}

/// Formats `v` like C's `%.{sig}g`.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp < -4 || exp >= sig as i32 {
        let mantissa = trim_zeros(mantissa);
        format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes the grid as CSV (`x,y,label,cr,worst_t`, LF endings, 9 significant digits).
pub fn write_grid_csv<W: Write>(grid: &RegionGrid, mut out: W) -> io::Result<()> {
    out.write_all(b"x,y,label,cr,worst_t\n")?;
    for r in &grid.rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            format_sig(r.x, 9),
            format_sig(r.y, 9),
            r.label,
            format_sig(r.cr, 9),
            format_sig(r.worst_t, 9)
        )?;
    }
    Ok(())
}

/// Writes a polyline as CSV with header `x,y`.
pub fn write_polyline_csv<W: Write>(points: &[Point], mut out: W) -> io::Result<()> {
    out.write_all(b"x,y\n")?;
    for p in points {
        writeln!(out, "{},{}", format_sig(p.x, 9), format_sig(p.y, 9))?;
    }
    Ok(())
}

/// Closed-form curve where `CR_A0` equals `A1`'s ratio at `t = 0`:
/// `y = sqrt(1 - 4x + 2x^2 + 4x^3 - 3x^4) / (2x)`.
///
/// It separates the `A0` and `A1` regions only where the point lies outside
/// the unit disk around `T` and `A1`'s worst fail time is 0; see
/// [`outer_curve_is_separating`].
pub fn outer_bangbang_y(x: f64) -> Result<Option<f64>> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain { what: "the outer A0/A1 curve", x, y: f64::NAN });
    }
    let x2 = x * x;
    let radicand = 1.0 - 4.0 * x + 2.0 * x2 + 4.0 * x2 * x - 3.0 * x2 * x2;
    let root = sqrt_clamped(radicand);
    Ok((!root.is_nan()).then(|| root / (2.0 * x)))
}

/// Whether the closed-form curve point `(x, y)` lies where `A1`'s worst case
/// is `t = 0` outside the unit disk around `T`.
pub fn outer_curve_is_separating(x: f64, y: f64) -> bool {
    let Ok(inst) = ProblemInstance::new(x, y) else { return false };
    inst.dest_disk_value() >= 1.0 && crate::candidates::a1_stationary_time(&inst) <= 0.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurvePair {
    /// `CR_A0 = CR_A1` outside the unit disk around `T`.
    A0A1,
    /// `CR_A0 = CR_Ad` inside the unit disk around `T`.
    A0Ad,
    /// The unit circle around `T`, where `Ad` and `A1` coincide.
    AdBoundary,
}

/// Bisection tolerance on `y` for traced curves.
pub const TRACE_Y_TOL: f64 = 1e-8;

fn circle_top(x: f64) -> Option<f64> {
    let h = 1.0 - (x - 1.0) * (x - 1.0);
    (h >= 0.0).then(|| h.sqrt())
}

fn curve_gap(pair: CurvePair, x: f64, y: f64) -> f64 {
    let Ok(inst) = ProblemInstance::new(x, y) else { return f64::NAN };
    match pair {
        CurvePair::A0A1 => match cr_a1(&inst) {
            Ok(a1) => cr_a0(&inst).ratio - a1.ratio,
            Err(_) => f64::NAN,
        },
        CurvePair::A0Ad => match cr_ad(&inst) {
            Ok(ad) => cr_a0(&inst).ratio - ad.ratio,
            Err(_) => f64::NAN,
        },
        CurvePair::AdBoundary => inst.dest_disk_value() - 1.0,
    }
}

/// Scan window on `y` for a given `x`, clipped to where the pair is defined.
fn y_window(pair: CurvePair, x: f64, y_range: (f64, f64)) -> Option<(f64, f64)> {
    let (lo, hi) = match pair {
        CurvePair::A0A1 => (y_range.0.max(circle_top(x).unwrap_or(0.0)), y_range.1),
        CurvePair::A0Ad => {
            if x <= 0.0 {
                return None;
            }
            // y = 0 is excluded: both ratios are 1 on the axis
            (y_range.0.max(EPS), y_range.1.min(circle_top(x)?))
        }
        CurvePair::AdBoundary => (y_range.0.max(0.0), y_range.1),
    };
    (lo < hi).then_some((lo, hi))
}

/// Traces the zero set of the gap between two regions' ratios.
///
/// For each `x` in `x_range` (spacing `resolution`) the `y` window is scanned
/// at the same spacing and every sign change is bisected to `TRACE_Y_TOL`.
/// The result is sorted by `x`, then `y`.
pub fn bangbang_trace(
    pair: CurvePair,
    x_range: (f64, f64),
    y_range: (f64, f64),
    resolution: f64,
) -> Result<Vec<Point>> {
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(Error::InvalidArgument(format!("resolution must be positive, got {resolution}")));
    }
    if x_range.0 > x_range.1 || y_range.0 > y_range.1 {
        return Ok(Vec::new());
    }
    let xs = lattice(x_range.0, x_range.1, resolution);
    let points = xs
        .par_iter()
        .flat_map_iter(|&x| {
            let mut found = Vec::new();
            if let Some((lo, hi)) = y_window(pair, x, y_range) {
                let mut ys = lattice(lo, hi, resolution);
                if ys.last().is_some_and(|&y| y < hi) {
                    ys.push(hi);
                }
                let g = |y: f64| curve_gap(pair, x, y);
                for w in ys.windows(2) {
                    let (g0, g1) = (g(w[0]), g(w[1]));
                    if g0.is_nan() || g1.is_nan() {
                        continue;
                    }
                    // a zero exactly on a node is reported by the window that starts there
                    if g1 == 0.0 && w[1] < hi {
                        continue;
                    }
                    if g0 == 0.0 || g0.signum() != g1.signum() {
                        if let Some(y) = bisect(g, w[0], w[1], TRACE_Y_TOL) {
                            found.push(Point::new(x, y));
                        }
                    }
                }
            }
            found.into_iter()
        })
        .collect();
    Ok(points)
}

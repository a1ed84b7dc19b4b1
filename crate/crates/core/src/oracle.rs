//! Brute-force verification of the closed forms, plus the search for the
//! worst start point of the hybrid strategy.
//!
//! Every check compares a closed form with an independent route: the
//! event-driven simulator maximized over fail times, or a scan over a family
//! of alternative strategies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::candidates::{
    closed_form_cr, cr_a0, cr_a1, cr_ad, delivery_time, trajectory_of, CandidateKind, SweepOrder,
};
use crate::error::{Error, Result};
use crate::hybrid::{hybrid_cr, lattice, region_map, select, Bounds};
use crate::model::{opt_delivery_time, FailTime, Point, ProblemInstance};
use crate::optimize::{bisect, nelder_mead_max};
use crate::simulator::{self, numeric_sup_cr, SupConfig};

pub const DEFAULT_SEED: u64 = 42;

/// Closed-form ratio vs brute-force supremum.
pub const RATIO_TOL: f64 = 1e-6;
/// Closed-form worst fail time vs brute-force argmax.
pub const WORST_T_TOL: f64 = 1e-4;
/// Ratio spread below which the argmax is considered flat.
pub const FLAT_TOL: f64 = 1e-9;
/// Agreement of `Ad` and `A1` on the circle, and the dominance slack.
pub const AD_A1_TOL: f64 = 1e-9;
/// Hybrid optimality slack against the single-turn family.
pub const FAMILY_TOL: f64 = 1e-4;
/// Simulator vs closed-form delivery time.
pub const SIM_TOL: f64 = 1e-9;
/// Position tolerance between the triple point and the global argmax.
pub const TRIPLE_POS_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub x: f64,
    pub y: f64,
    pub expected: f64,
    pub got: f64,
    pub what: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub samples: usize,
    pub max_abs_error: f64,
    pub passed: bool,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub tolerance: f64,
}

impl VerificationReport {
    fn finish(check: &str, samples: usize, tolerance: f64, outcomes: Vec<(f64, Vec<Violation>)>) -> Self {
        let max_abs_error = outcomes.iter().map(|o| o.0).fold(0.0, f64::max);
        let mut violations: Vec<Violation> = outcomes.into_iter().flat_map(|o| o.1).collect();
        violations.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        let passed = violations.is_empty() && max_abs_error <= tolerance;
        VerificationReport {
            check: check.to_string(),
            samples,
            max_abs_error,
            passed,
            violations,
            tolerance,
        }
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "[{}] {}: {} samples, max error {:.3e} (tol {:.0e}), {} violations",
            if self.passed { "PASS" } else { "FAIL" },
            self.check,
            self.samples,
            self.max_abs_error,
            self.tolerance,
            self.violations.len()
        )
    }
}

/// Where a closed form holds; each variant samples uniformly from a box
/// restricted by rejection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionSampler {
    /// `[-2, 3] x [0, 3]`, all of it.
    A0Plane,
    /// `[-2, 3] x [0, 3]` outside the open unit disk around `T`.
    A1Outside,
    /// `(0, 2] x [0, 1]` inside the closed unit disk around `T`.
    AdInside,
}

impl RegionSampler {
    pub fn kind(self) -> CandidateKind {
        match self {
            RegionSampler::A0Plane => CandidateKind::A0,
            RegionSampler::A1Outside => CandidateKind::A1,
            RegionSampler::AdInside => CandidateKind::Ad,
        }
    }

    pub fn sample<R: Rng>(self, rng: &mut R) -> ProblemInstance {
        loop {
            let (x, y) = match self {
                RegionSampler::A0Plane | RegionSampler::A1Outside => {
                    (rng.gen_range(-2.0..3.0), rng.gen_range(0.0..3.0))
                }
                RegionSampler::AdInside => (rng.gen_range(0.0..2.0), rng.gen_range(0.0..1.0)),
            };
            let inst = ProblemInstance::new(x, y).expect("sampled coordinates are finite");
            let ok = match self {
                RegionSampler::A0Plane => true,
                RegionSampler::A1Outside => inst.dest_disk_value() >= 1.0,
                RegionSampler::AdInside => x > 0.0 && inst.dest_disk_value() <= 1.0,
            };
            if ok {
                return inst;
            }
        }
    }

    fn draw(self, n: usize, seed: u64) -> Vec<ProblemInstance> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| self.sample(&mut rng)).collect()
    }
}

fn violation(inst: &ProblemInstance, expected: f64, got: f64, what: impl Into<String>) -> Violation {
    Violation { x: inst.x(), y: inst.y(), expected, got, what: what.into() }
}

/// Compares one candidate's closed-form ratio and worst fail time with the
/// simulator-based supremum on `samples` points of its validity region.
pub fn verify_candidate_cr(
    region: RegionSampler,
    samples: usize,
    seed: u64,
    sup: &SupConfig,
) -> Result<VerificationReport> {
    let kind = region.kind();
    let instances = region.draw(samples, seed);
    let outcomes = instances
        .par_iter()
        .map(|inst| check_one_candidate(inst, kind, sup))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("cr-{}", kind.name());
    Ok(VerificationReport::finish(&name, samples, RATIO_TOL, outcomes))
}

fn check_one_candidate(
    inst: &ProblemInstance,
    kind: CandidateKind,
    sup: &SupConfig,
) -> Result<(f64, Vec<Violation>)> {
    let closed = closed_form_cr(inst, kind)?;
    let traj = trajectory_of(inst, kind)?;
    let numeric = numeric_sup_cr(inst, &traj, sup)?;
    let err = (closed.ratio - numeric.ratio).abs();
    let mut violations = Vec::new();
    if err > RATIO_TOL {
        violations.push(violation(inst, closed.ratio, numeric.ratio, "ratio"));
    }
    if (closed.worst_t.get() - numeric.worst_t).abs() > WORST_T_TOL {
        let at_closed =
            simulator::delivery_time(inst, &traj, closed.worst_t)? / opt_delivery_time(inst, closed.worst_t);
        // a flat ratio has no unique argmax
        if (at_closed - numeric.ratio).abs() > FLAT_TOL {
            violations.push(violation(inst, closed.worst_t.get(), numeric.worst_t, "worst_t"));
        }
    }
    Ok((err, violations))
}

/// Meet-in-the-middle versus go-to-destination on both sides of the unit
/// circle around `T`, plus exact agreement on the circle itself.
///
/// Inside the disk the closed-form `Ad` ratio must not exceed the simulated
/// `A1` supremum; outside, the simulated `Ad` supremum must not fall below
/// the closed-form `A1` ratio.
pub fn check_ad_vs_a1(samples: usize, seed: u64, sup: &SupConfig) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<ProblemInstance> = (0..samples)
        .map(|_| loop {
            let x: f64 = rng.gen_range(0.0..3.0);
            let y: f64 = rng.gen_range(0.0..2.0);
            if x > 0.0 {
                break ProblemInstance::new(x, y).expect("finite");
            }
        })
        .collect();

    let mut outcomes = instances
        .par_iter()
        .map(|inst| -> Result<(f64, Vec<Violation>)> {
            let mut v = Vec::new();
            if inst.dest_disk_value() <= 1.0 {
                let ad = cr_ad(inst)?.ratio;
                let a1 = numeric_sup_cr(inst, &trajectory_of(inst, CandidateKind::A1)?, sup)?.ratio;
                if ad > a1 + AD_A1_TOL {
                    v.push(violation(inst, a1, ad, "inside: Ad above A1"));
                }
            } else {
                let a1 = cr_a1(inst)?.ratio;
                let ad = numeric_sup_cr(inst, &trajectory_of(inst, CandidateKind::Ad)?, sup)?.ratio;
                if ad < a1 - AD_A1_TOL {
                    v.push(violation(inst, a1, ad, "outside: Ad below A1"));
                }
            }
            Ok((0.0, v))
        })
        .collect::<Result<Vec<_>>>()?;

    for p in dest_circle_points(100) {
        let inst = ProblemInstance::new(p.x, p.y)?;
        let ad = cr_ad(&inst)?.ratio;
        let a1 = cr_a1(&inst)?.ratio;
        let err = (ad - a1).abs();
        let v = if err > AD_A1_TOL { vec![violation(&inst, a1, ad, "boundary")] } else { vec![] };
        outcomes.push((err, v));
    }
    Ok(VerificationReport::finish("ad-vs-a1", samples + 100, AD_A1_TOL, outcomes))
}

/// `n` points on the upper unit circle around `T`, excluding the origin.
pub fn dest_circle_points(n: usize) -> Vec<Point> {
    (0..n)
        .map(|k| {
            let phi = std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
            Point::new(1.0 + phi.cos(), phi.sin())
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingleTurn {
    pub a: f64,
    pub order: SweepOrder,
    pub ratio: f64,
}

/// Best strategy among those flying straight to `(a, 0)` and then sweeping
/// the segment in either order, with `a` on a grid of spacing `a_step`.
pub fn best_single_turn(inst: &ProblemInstance, a_step: f64, sup: &SupConfig) -> Result<SingleTurn> {
    if !(a_step > 0.0 && a_step <= 1.0) {
        return Err(Error::InvalidArgument("a-step must lie in (0, 1]".into()));
    }
    let n = (1.0 / a_step).ceil() as usize;
    let candidates: Vec<(f64, SweepOrder)> = (0..=n)
        .map(|i| (i as f64 / n as f64).min(1.0))
        .flat_map(|a| [(a, SweepOrder::DownThenUp), (a, SweepOrder::UpThenDown)])
        .collect();
    let results = candidates
        .par_iter()
        .map(|&(a, order)| -> Result<SingleTurn> {
            let traj = trajectory_of(inst, CandidateKind::generic(a, order)?)?;
            Ok(SingleTurn { a, order, ratio: numeric_sup_cr(inst, &traj, sup)?.ratio })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(results
        .into_iter()
        .reduce(|best, c| if c.ratio < best.ratio { c } else { best })
        .expect("the a-grid is non-empty"))
}

/// The hybrid strategy is never beaten by a single-turn strategy by more than
/// `FAMILY_TOL` on seeded instances from `[-1.5, 2.5] x [0, 2]`.
///
/// The reported error is how far the best family member undercuts the hybrid
/// ratio, zero when it does not.
pub fn check_hybrid_optimality(
    samples: usize,
    seed: u64,
    a_step: f64,
    sup: &SupConfig,
) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<ProblemInstance> = (0..samples)
        .map(|_| {
            let x = rng.gen_range(-1.5..2.5);
            let y = rng.gen_range(0.0..2.0);
            ProblemInstance::new(x, y).expect("finite")
        })
        .collect();
    let outcomes = instances
        .iter()
        .map(|inst| -> Result<(f64, Vec<Violation>)> {
            let hybrid = select(inst).chosen_cr;
            let best = best_single_turn(inst, a_step, sup)?;
            let undercut = (hybrid - best.ratio).max(0.0);
            let v = if undercut > FAMILY_TOL {
                let what = format!("beaten by a = {} {:?}", best.a, best.order);
                vec![violation(inst, hybrid, best.ratio, what)]
            } else {
                vec![]
            };
            Ok((undercut, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::finish("hybrid-optimality", samples, FAMILY_TOL, outcomes))
}

/// Simulated delivery times of the three candidates agree with the closed
/// forms on seeded `(instance, t)` pairs from each validity region.
pub fn check_simulator(samples: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for region in [RegionSampler::A0Plane, RegionSampler::A1Outside, RegionSampler::AdInside] {
        for _ in 0..samples {
            let inst = region.sample(&mut rng);
            let t = FailTime::new(rng.gen_range(0.0..=1.0))?;
            cases.push((inst, region.kind(), t));
        }
    }
    let outcomes = cases
        .par_iter()
        .map(|&(inst, kind, t)| -> Result<(f64, Vec<Violation>)> {
            let closed = delivery_time(&inst, kind, t)?;
            let sim = simulator::simulate(&inst, &trajectory_of(&inst, kind)?, t)?;
            let err = (closed - sim.delivery_time).abs();
            let mut v = Vec::new();
            if err > SIM_TOL {
                let what = format!("{kind} at t = {}", t.get());
                v.push(violation(&inst, closed, sim.delivery_time, what));
            }
            if (sim.delivery_time - (sim.pickup_time + 1.0 - sim.pickup_point.x)).abs() > SIM_TOL {
                v.push(violation(&inst, sim.pickup_time, sim.delivery_time, "pickup bookkeeping"));
            }
            Ok((err, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::finish("simulator", cases.len(), SIM_TOL, outcomes))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorstCase {
    pub x: f64,
    pub y: f64,
    pub cr: f64,
}

/// Number of best coarse nodes refined by the simplex search.
const WORST_CASE_STARTS: usize = 4;

/// Maximizes the hybrid ratio over `bounds`: a coarse lattice scan, then
/// Nelder–Mead from the best few nodes, restricted to the bounds.
pub fn global_worst_case(bounds: Bounds, coarse_step: f64) -> Result<WorstCase> {
    if coarse_step.is_nan() || coarse_step <= 0.0 {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    let bounds = Bounds::new(bounds.xmin, bounds.xmax, bounds.ymin, bounds.ymax)?;
    let xs = lattice(bounds.xmin, bounds.xmax, coarse_step);
    let ys = lattice(bounds.ymin, bounds.ymax, coarse_step);
    let mut nodes = ys
        .par_iter()
        .flat_map_iter(|&y| xs.iter().map(move |&x| hybrid_cr(x, y).map(|cr| WorstCase { x, y, cr })))
        .collect::<Result<Vec<_>>>()?;
    // stable sort keeps lattice order among ties
    nodes.sort_by(|a, b| b.cr.total_cmp(&a.cr));

    let objective = |p: [f64; 2]| {
        if bounds.contains(p[0], p[1]) {
            hybrid_cr(p[0], p[1]).unwrap_or(f64::NEG_INFINITY)
        } else {
            f64::NEG_INFINITY
        }
    };
    let degenerate = bounds.xmin == bounds.xmax || bounds.ymin == bounds.ymax;
    let mut best = nodes[0];
    if !degenerate {
        for start in nodes.iter().take(WORST_CASE_STARTS) {
            let (p, v) = nelder_mead_max(objective, [start.x, start.y], 0.5 * coarse_step, 1e-10, 20_000);
            if v > best.cr {
                best = WorstCase { x: p[0], y: p[1], cr: v };
            }
        }
    }
    Ok(best)
}

/// Point where `A0`, `A1` and `Ad` have equal ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriplePoint {
    pub x: f64,
    pub y: f64,
    pub cr_a0: f64,
    pub cr_a1: f64,
    pub cr_ad: f64,
}

/// Arc of the unit circle around `T`, as the angle at `T` from the +x axis,
/// bracketing the triple point.
const TRIPLE_ARC: (f64, f64) = (2.2, 2.6);

/// `A1`'s closed form holds outside the unit disk around `T` and `Ad`'s
/// inside it, so both apply together only on the circle. The triple point is
/// found by bisecting `CR_A0 - CR_A1` along the circle.
pub fn solve_triple_point() -> Option<TriplePoint> {
    let at = |phi: f64| ProblemInstance::new(1.0 + phi.cos(), phi.sin()).ok();
    let gap = |phi: f64| match at(phi).map(|i| (cr_a0(&i).ratio, cr_a1(&i))) {
        Some((a0, Ok(a1))) => a0 - a1.ratio,
        _ => f64::NAN,
    };
    let phi = bisect(gap, TRIPLE_ARC.0, TRIPLE_ARC.1, 1e-15)?;
    let inst = at(phi)?;
    Some(TriplePoint {
        x: inst.x(),
        y: inst.y(),
        cr_a0: cr_a0(&inst).ratio,
        cr_a1: cr_a1(&inst).ok()?.ratio,
        cr_ad: cr_ad(&inst).ok()?.ratio,
    })
}

/// The three ratios agree at the triple point, and the global maximum of the
/// hybrid ratio over `[0, 1]^2` sits there.
pub fn check_triple_point(coarse_step: f64) -> Result<VerificationReport> {
    let Some(tp) = solve_triple_point() else {
        let v = Violation {
            x: f64::NAN,
            y: f64::NAN,
            expected: 0.0,
            got: f64::NAN,
            what: "no sign change of CR_A0 - CR_A1 on the arc".into(),
        };
        return Ok(VerificationReport::finish("triple-point", 1, RATIO_TOL, vec![(f64::INFINITY, vec![v])]));
    };
    let inst = ProblemInstance::new(tp.x, tp.y)?;
    let wc = global_worst_case(Bounds::new(0.0, 1.0, 0.0, 1.0)?, coarse_step)?;
    let spread = (tp.cr_a0 - tp.cr_a1).abs().max((tp.cr_a0 - tp.cr_ad).abs());
    let dist = (wc.x - tp.x).hypot(wc.y - tp.y);
    let mut v = Vec::new();
    if spread > RATIO_TOL {
        v.push(violation(&inst, tp.cr_a0, tp.cr_ad, "ratios disagree"));
    }
    if dist > TRIPLE_POS_TOL {
        v.push(violation(&inst, 0.0, dist, "global argmax is away from the triple point"));
    }
    if (wc.cr - tp.cr_a0).abs() > RATIO_TOL {
        v.push(violation(&inst, tp.cr_a0, wc.cr, "global max differs from the triple-point ratio"));
    }
    Ok(VerificationReport::finish("triple-point", 1, RATIO_TOL, vec![(spread, v)]))
}

/// The hybrid ratio over a lattice stays within `[1, 3]`.
pub fn check_cr_bound(bounds: Bounds, step: f64) -> Result<VerificationReport> {
    let grid = region_map(bounds, step)?;
    let outcomes = grid
        .rows
        .iter()
        .map(|r| {
            let excess = (r.cr - 3.0).max(1.0 - r.cr).max(0.0);
            let v = if excess > 1e-12 {
                let inst = ProblemInstance::new(r.x, r.y).expect("finite");
                vec![violation(&inst, 3.0, r.cr, "hybrid ratio outside [1, 3]")]
            } else {
                vec![]
            };
            (excess, v)
        })
        .collect();
    Ok(VerificationReport::finish("cr-bound", grid.rows.len(), 1e-12, outcomes))
}

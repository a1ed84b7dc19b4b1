//! Exact event-driven simulation of the starter and the finisher.
//!
//! Both drones move along straight lines at unit speed, so between events the
//! gap between them is affine in time. For every trajectory leg (split at the
//! starter's fail time) the earliest co-location is solved in closed form; no
//! time stepping is involved.

use std::io::{self, Write};

use serde::{Serialize, Serializer};

use crate::candidates::Trajectory;
use crate::error::{Error, Result};
use crate::model::{opt_delivery_time, FailTime, Point, ProblemInstance};
use crate::optimize::grid_golden_max;

/// Co-location tolerance, relative to the scale of the instance.
pub const COLOCATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    StarterMoving,
    StarterFailed,
    FinisherEnRoute,
    FinisherCarrying,
    Delivered,
}

/// Snapshot of both drones at a moment of the simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentState {
    pub clock: f64,
    pub starter: Point,
    pub finisher: Point,
    pub phase: Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Launch,
    Waypoint,
    StarterFailed,
    Pickup,
    Delivered,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEvent {
    pub kind: EventKind,
    pub state: AgentState,
}

impl Serialize for SimEvent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Line {
            time: f64,
            event: EventKind,
            starter: [f64; 2],
            finisher: [f64; 2],
        }
        Line {
            time: self.state.clock,
            event: self.kind,
            starter: [self.state.starter.x, self.state.starter.y],
            finisher: [self.state.finisher.x, self.state.finisher.y],
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub delivery_time: f64,
    pub pickup_time: f64,
    pub pickup_point: Point,
    pub events: Vec<SimEvent>,
}

impl SimOutcome {
    /// Writes the event log as JSON lines.
    pub fn write_event_log<W: Write>(&self, mut out: W) -> io::Result<()> {
        for event in &self.events {
            serde_json::to_writer(&mut out, event)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn starter_at(clock: f64, t: f64) -> Point {
    Point::on_axis(clock.min(t))
}

/// Earliest `tau` in `[a, b]` where `gap0 + rel_v * (tau - a)` vanishes.
fn first_contact(gap0: (f64, f64), rel_v: (f64, f64), a: f64, b: f64, tol: f64) -> Option<f64> {
    let speed2 = rel_v.0 * rel_v.0 + rel_v.1 * rel_v.1;
    if speed2 <= f64::EPSILON * f64::EPSILON {
        return (gap0.0.hypot(gap0.1) <= tol).then_some(a);
    }
    let closest = -(gap0.0 * rel_v.0 + gap0.1 * rel_v.1) / speed2;
    let tau = (a + closest.max(0.0)).min(b);
    let s = tau - a;
    let gap = (gap0.0 + rel_v.0 * s).hypot(gap0.1 + rel_v.1 * s);
    (gap <= tol).then_some(tau)
}

struct Pickup {
    time: f64,
    point: Point,
}

/// Walks the trajectory and returns the first co-location. Waypoint arrivals
/// up to the pickup are reported through `on_waypoint`.
fn find_pickup(
    inst: &ProblemInstance,
    traj: &Trajectory,
    t: f64,
    mut on_waypoint: impl FnMut(f64, Point),
) -> Result<Pickup> {
    let tol = COLOCATION_TOL * inst.finisher_start.norm().max(1.0);
    let wps = traj.waypoints();
    let mut clock = 0.0;

    let check_span = |from: Point, dir: (f64, f64), a: f64, b: f64| -> Option<Pickup> {
        // split at the fail time: before it the starter moves along +x at unit speed
        let mut spans = [(a, b), (f64::NAN, f64::NAN)];
        if a < t && t < b {
            spans = [(a, t), (t, b)];
        }
        for &(lo, hi) in spans.iter().filter(|s| !s.0.is_nan()) {
            let f0 = Point::new(from.x + dir.0 * (lo - a), from.y + dir.1 * (lo - a));
            let s0 = starter_at(lo, t);
            let starter_v = if lo < t { 1.0 } else { 0.0 };
            let gap0 = (f0.x - s0.x, f0.y - s0.y);
            let rel_v = (dir.0 - starter_v, dir.1);
            if let Some(tau) = first_contact(gap0, rel_v, lo, hi, tol) {
                return Some(Pickup { time: tau, point: starter_at(tau, t) });
            }
        }
        None
    };

    for (i, leg) in wps.windows(2).enumerate() {
        let (from, to) = (leg[0], leg[1]);
        let len = from.dist(to);
        let dir = if len > 0.0 { ((to.x - from.x) / len, (to.y - from.y) / len) } else { (0.0, 0.0) };
        if let Some(p) = check_span(from, dir, clock, clock + len) {
            return Ok(p);
        }
        clock += len;
        on_waypoint(clock, wps[i + 1]);
    }

    // hold at the final waypoint
    let last = *wps.last().expect("trajectory is non-empty");
    let horizon = clock.max(t) + 1.0;
    if let Some(p) = check_span(last, (0.0, 0.0), clock, horizon) {
        return Ok(p);
    }
    Err(Error::NoDelivery(format!(
        "finisher holds at ({}, {}) but the package rests at ({t}, 0)",
        last.x, last.y
    )))
}

/// Delivery time only, without building an event log.
pub fn delivery_time(inst: &ProblemInstance, traj: &Trajectory, t: FailTime) -> Result<f64> {
    let p = find_pickup(inst, traj, t.get(), |_, _| {})?;
    Ok(p.time + (1.0 - p.point.x))
}

/// Runs the simulation and records every event.
///
/// The finisher follows `traj` and takes the package the first time it is
/// co-located with it, whether the starter is still flying or has already
/// failed, then flies straight to `T`. After its last waypoint it waits.
pub fn simulate(inst: &ProblemInstance, traj: &Trajectory, t: FailTime) -> Result<SimOutcome> {
    let tv = t.get();
    let mut waypoint_times = Vec::new();
    let pickup = find_pickup(inst, traj, tv, |clock, p| waypoint_times.push((clock, p)))?;

    let finisher_at = |clock: f64| -> Point {
        let mut prev = (0.0, traj.start());
        for &(c, p) in &waypoint_times {
            if clock <= c {
                let span = c - prev.0;
                let f = if span > 0.0 { (clock - prev.0) / span } else { 1.0 };
                return Point::new(prev.1.x + f * (p.x - prev.1.x), prev.1.y + f * (p.y - prev.1.y));
            }
            prev = (c, p);
        }
        prev.1
    };
    let state = |clock: f64, finisher: Point, phase: Phase| AgentState {
        clock,
        starter: starter_at(clock, tv),
        finisher,
        phase,
    };

    let mut events = vec![SimEvent {
        kind: EventKind::Launch,
        state: state(0.0, traj.start(), Phase::FinisherEnRoute),
    }];
    for &(clock, p) in waypoint_times.iter().filter(|(c, _)| *c <= pickup.time) {
        let phase = if clock < tv { Phase::StarterMoving } else { Phase::StarterFailed };
        events.push(SimEvent { kind: EventKind::Waypoint, state: state(clock, p, phase) });
    }
    if tv <= pickup.time {
        events.push(SimEvent {
            kind: EventKind::StarterFailed,
            state: state(tv, finisher_at(tv), Phase::StarterFailed),
        });
    }
    events.push(SimEvent {
        kind: EventKind::Pickup,
        state: state(pickup.time, pickup.point, Phase::FinisherCarrying),
    });
    let delivery_time = pickup.time + (1.0 - pickup.point.x);
    events.push(SimEvent {
        kind: EventKind::Delivered,
        state: AgentState {
            clock: delivery_time,
            starter: starter_at(delivery_time, tv),
            finisher: Point::on_axis(1.0),
            phase: Phase::Delivered,
        },
    });
    events.sort_by(|a, b| a.state.clock.total_cmp(&b.state.clock));

    Ok(SimOutcome {
        delivery_time,
        pickup_time: pickup.time,
        pickup_point: pickup.point,
        events,
    })
}

/// Resolution of the brute-force supremum over fail times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupConfig {
    pub t_step: f64,
    pub refine_width: f64,
}

impl Default for SupConfig {
    fn default() -> Self {
        SupConfig { t_step: 1e-4, refine_width: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupResult {
    pub worst_t: f64,
    pub ratio: f64,
}

/// Brute-force competitive ratio of a trajectory: the simulated delivery time
/// over the offline optimum, maximized over a grid of fail times and refined
/// by golden-section search around the best node.
pub fn numeric_sup_cr(inst: &ProblemInstance, traj: &Trajectory, cfg: &SupConfig) -> Result<SupResult> {
    if !(cfg.t_step > 0.0 && cfg.refine_width > 0.0) {
        return Err(Error::InvalidArgument("t-step and refine width must be positive".into()));
    }
    // surface simulation errors once, then evaluate infallibly
    delivery_time(inst, traj, FailTime::ZERO)?;
    let ratio = |t: f64| {
        let t = FailTime::clamped(t);
        match delivery_time(inst, traj, t) {
            Ok(dt) => dt / opt_delivery_time(inst, t),
            Err(_) => f64::INFINITY,
        }
    };
    let (worst_t, ratio) = grid_golden_max(ratio, cfg.t_step, cfg.refine_width);
    Ok(SupResult { worst_t, ratio })
}

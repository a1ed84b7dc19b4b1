//! Competitive analysis of package delivery by two unit-speed drones when the
//! starter drone may fail somewhere on its way from `S = (0, 0)` to
//! `T = (1, 0)`.
//!
//! The finisher drone starts at `P` and must pick up the package and carry it
//! to `T`. Strategies are judged by their competitive ratio against an
//! offline finisher that knows the fail time in advance.
//!
//! - [`model`]: points, instances, the offline optimum.
//! - [`candidates`]: the strategies `A0`, `A1`, `Ad` and their closed forms.
//! - [`simulator`]: exact event-driven simulation of any trajectory.
//! - [`hybrid`]: per-point strategy selection, region maps, separating curves.
//! - [`oracle`]: brute-force checks of the closed forms.

pub mod candidates;
pub mod error;
pub mod hybrid;
pub mod model;
pub mod optimize;
pub mod oracle;
pub mod simulator;
pub mod svg;

pub use candidates::{closed_form_cr, trajectory_of, CandidateKind, CrResult, SweepOrder, Trajectory};
pub use error::{Error, Result};
pub use hybrid::{select, AnalysisReport, Bounds, RegionGrid, RegionLabel};
pub use model::{normalize, opt_delivery_time, FailTime, Point, ProblemInstance};
pub use simulator::{simulate, SimOutcome, SupConfig};

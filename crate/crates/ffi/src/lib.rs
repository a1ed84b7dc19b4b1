//! C ABI over the `faulty_delivery` library.
//!
//! Every function returns an [`FdStatus`] and writes results through out
//! pointers. Reports and region grids are handed out as opaque heap handles
//! that the caller releases with the matching `*_free` function. After a
//! failing call, [`fd_last_error_message`] describes the error on the calling
//! thread.
//!
//! Coordinates are raw: a start point below the axis is mirrored first.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use faulty_delivery::candidates::{self, CandidateKind};
use faulty_delivery::hybrid::{self, AnalysisReport, Bounds, RegionGrid, RegionLabel};
use faulty_delivery::model::{self, FailTime, Point, ProblemInstance};
use faulty_delivery::simulator::{self, SupConfig};
use faulty_delivery::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdStatus {
    Ok = 0,
    InvalidInput = 1,
    Inapplicable = 2,
    Domain = 3,
    InvalidArgument = 4,
    NoDelivery = 5,
    NullPointer = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdCandidate {
    A0 = 0,
    A1 = 1,
    Ad = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdRegion {
    A0 = 0,
    A1 = 1,
    Ad = 2,
}

/// Hybrid analysis of one start point.
pub struct FdAnalysis(AnalysisReport);

/// Region map over a lattice.
pub struct FdRegionGrid(RegionGrid);

impl From<FdCandidate> for CandidateKind {
    fn from(c: FdCandidate) -> Self {
        match c {
            FdCandidate::A0 => CandidateKind::A0,
            FdCandidate::A1 => CandidateKind::A1,
            FdCandidate::Ad => CandidateKind::Ad,
        }
    }
}

fn candidate_of(kind: CandidateKind) -> FdCandidate {
    match kind {
        CandidateKind::A0 => FdCandidate::A0,
        CandidateKind::A1 => FdCandidate::A1,
        _ => FdCandidate::Ad,
    }
}

fn region_of(label: RegionLabel) -> FdRegion {
    match label {
        RegionLabel::ZA0 => FdRegion::A0,
        RegionLabel::ZA1 => FdRegion::A1,
        RegionLabel::ZAd => FdRegion::Ad,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Fail {
    Lib(Error),
    Null,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, turning errors and panics into a status code.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> FdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            FdStatus::Ok
        }
        Ok(Err(Fail::Null)) => {
            set_last_error("null pointer argument");
            FdStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(&e.to_string());
            match e {
                Error::InvalidInput(_) => FdStatus::InvalidInput,
                Error::Inapplicable { .. } => FdStatus::Inapplicable,
                Error::Domain { .. } => FdStatus::Domain,
                Error::InvalidArgument(_) => FdStatus::InvalidArgument,
                Error::NoDelivery(_) => FdStatus::NoDelivery,
            }
        }
        Err(_) => {
            set_last_error("internal panic");
            FdStatus::Panic
        }
    }
}

/// Writes `v` through `out`.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(v);
    Ok(())
}

fn instance(x: f64, y: f64) -> Result<ProblemInstance, Error> {
    Ok(model::normalize(Point::new(x, y))?.instance)
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Offline-optimal delivery time for fail time `t`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_opt_delivery_time(x: f64, y: f64, t: f64, out: *mut f64) -> FdStatus {
    guard(|| {
        let inst = instance(x, y)?;
        put(out, model::opt_delivery_time(&inst, FailTime::new(t)?))
    })
}

/// Closed-form delivery time of a strategy for fail time `t`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_delivery_time(
    x: f64,
    y: f64,
    candidate: FdCandidate,
    t: f64,
    out: *mut f64,
) -> FdStatus {
    guard(|| {
        let inst = instance(x, y)?;
        put(out, candidates::delivery_time(&inst, candidate.into(), FailTime::new(t)?)?)
    })
}

/// Closed-form competitive ratio of a strategy and the fail time attaining it.
/// Fails with `Domain` outside the strategy's validity region.
///
/// # Safety
/// `ratio` and `worst_t` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_closed_form_cr(
    x: f64,
    y: f64,
    candidate: FdCandidate,
    ratio: *mut f64,
    worst_t: *mut f64,
) -> FdStatus {
    guard(|| {
        if ratio.is_null() || worst_t.is_null() {
            return Err(Fail::Null);
        }
        let r = candidates::closed_form_cr(&instance(x, y)?, candidate.into())?;
        put(ratio, r.ratio)?;
        put(worst_t, r.worst_t.get())
    })
}

/// Brute-force competitive ratio of a strategy by simulation, with fail
/// times on a grid of spacing `t_step` refined by golden-section search.
///
/// # Safety
/// `ratio` and `worst_t` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_numeric_sup_cr(
    x: f64,
    y: f64,
    candidate: FdCandidate,
    t_step: f64,
    ratio: *mut f64,
    worst_t: *mut f64,
) -> FdStatus {
    guard(|| {
        if ratio.is_null() || worst_t.is_null() {
            return Err(Fail::Null);
        }
        let inst = instance(x, y)?;
        let traj = candidates::trajectory_of(&inst, candidate.into())?;
        let cfg = SupConfig { t_step, ..SupConfig::default() };
        let r = simulator::numeric_sup_cr(&inst, &traj, &cfg)?;
        put(ratio, r.ratio)?;
        put(worst_t, r.worst_t)
    })
}

/// Simulates a strategy for fail time `t`.
///
/// # Safety
/// All out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_simulate(
    x: f64,
    y: f64,
    candidate: FdCandidate,
    t: f64,
    delivery_time: *mut f64,
    pickup_time: *mut f64,
    pickup_x: *mut f64,
) -> FdStatus {
    guard(|| {
        if delivery_time.is_null() || pickup_time.is_null() || pickup_x.is_null() {
            return Err(Fail::Null);
        }
        let inst = instance(x, y)?;
        let traj = candidates::trajectory_of(&inst, candidate.into())?;
        let o = simulator::simulate(&inst, &traj, FailTime::new(t)?)?;
        put(delivery_time, o.delivery_time)?;
        put(pickup_time, o.pickup_time)?;
        put(pickup_x, o.pickup_point.x)
    })
}

/// Competitive ratio of the hybrid strategy.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_hybrid_cr(x: f64, y: f64, out: *mut f64) -> FdStatus {
    guard(|| put(out, hybrid::hybrid_cr(x, y)?))
}

/// Closed-form outer `A0`/`A1` curve at `x > 0`. `exists` is set to 0 where
/// the curve has no real point; `y` is then left untouched.
///
/// # Safety
/// `y` and `exists` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_outer_curve_y(x: f64, y: *mut f64, exists: *mut bool) -> FdStatus {
    guard(|| {
        if y.is_null() || exists.is_null() {
            return Err(Fail::Null);
        }
        match hybrid::outer_bangbang_y(x)? {
            Some(v) => {
                put(y, v)?;
                put(exists, true)
            }
            None => put(exists, false),
        }
    })
}

/// Runs the hybrid selection and hands out a report handle.
///
/// # Safety
/// `out` must be valid for writes. Release the handle with [`fd_analysis_free`].
#[no_mangle]
pub unsafe extern "C" fn fd_analyze(x: f64, y: f64, out: *mut *mut FdAnalysis) -> FdStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null);
        }
        let report = hybrid::select(&instance(x, y)?);
        put(out, Box::into_raw(Box::new(FdAnalysis(report))))
    })
}

/// # Safety
/// `h` must be null or a handle from [`fd_analyze`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_analysis_free(h: *mut FdAnalysis) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

unsafe fn analysis<'a>(h: *const FdAnalysis) -> Result<&'a AnalysisReport, Fail> {
    h.as_ref().map(|a| &a.0).ok_or(Fail::Null)
}

/// Selected region, its ratio and worst fail time.
///
/// # Safety
/// `h` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_analysis_chosen(
    h: *const FdAnalysis,
    label: *mut FdRegion,
    ratio: *mut f64,
    worst_t: *mut f64,
) -> FdStatus {
    guard(|| {
        let a = analysis(h)?;
        if label.is_null() || ratio.is_null() || worst_t.is_null() {
            return Err(Fail::Null);
        }
        put(label, region_of(a.label))?;
        put(ratio, a.chosen_cr)?;
        put(worst_t, a.chosen_worst_t)
    })
}

/// Meet-in-the-middle coordinate; `has_d` is 0 when `x <= 0`.
///
/// # Safety
/// `h` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_analysis_d(h: *const FdAnalysis, d: *mut f64, has_d: *mut bool) -> FdStatus {
    guard(|| {
        let a = analysis(h)?;
        if d.is_null() || has_d.is_null() {
            return Err(Fail::Null);
        }
        put(has_d, a.d.is_some())?;
        if let Some(v) = a.d {
            put(d, v)?;
        }
        Ok(())
    })
}

/// Number of strategies whose closed form applies at this point.
///
/// # Safety
/// `h` must be a live handle; `count` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_analysis_candidate_count(h: *const FdAnalysis, count: *mut usize) -> FdStatus {
    guard(|| put(count, analysis(h)?.per_candidate.len()))
}

/// The `index`-th applicable strategy. Out of range gives `InvalidArgument`.
///
/// # Safety
/// `h` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_analysis_candidate(
    h: *const FdAnalysis,
    index: usize,
    kind: *mut FdCandidate,
    ratio: *mut f64,
    worst_t: *mut f64,
) -> FdStatus {
    guard(|| {
        let a = analysis(h)?;
        if kind.is_null() || ratio.is_null() || worst_t.is_null() {
            return Err(Fail::Null);
        }
        let c = a.per_candidate.get(index).ok_or_else(|| {
            Error::InvalidArgument(format!("candidate index {index} out of range"))
        })?;
        put(kind, candidate_of(c.kind))?;
        put(ratio, c.ratio)?;
        put(worst_t, c.worst_t)
    })
}

/// Region map over `[xmin, xmax] x [ymin, ymax]` at spacing `step`.
///
/// # Safety
/// `out` must be valid for writes. Release with [`fd_region_grid_free`].
#[no_mangle]
pub unsafe extern "C" fn fd_region_map(
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
    step: f64,
    out: *mut *mut FdRegionGrid,
) -> FdStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null);
        }
        let grid = hybrid::region_map(Bounds::new(xmin, xmax, ymin, ymax)?, step)?;
        put(out, Box::into_raw(Box::new(FdRegionGrid(grid))))
    })
}

/// # Safety
/// `h` must be null or a handle from [`fd_region_map`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_region_grid_free(h: *mut FdRegionGrid) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Lattice size; rows number `nx * ny`, `y` outer and `x` inner.
///
/// # Safety
/// `h` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_region_grid_dims(h: *const FdRegionGrid, nx: *mut usize, ny: *mut usize) -> FdStatus {
    guard(|| {
        let g = &h.as_ref().ok_or(Fail::Null)?.0;
        if nx.is_null() || ny.is_null() {
            return Err(Fail::Null);
        }
        put(nx, g.nx)?;
        put(ny, g.ny)
    })
}

/// One lattice row. Out of range gives `InvalidArgument`.
///
/// # Safety
/// `h` must be a live handle; out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_region_grid_row(
    h: *const FdRegionGrid,
    index: usize,
    x: *mut f64,
    y: *mut f64,
    label: *mut FdRegion,
    ratio: *mut f64,
) -> FdStatus {
    guard(|| {
        let g = &h.as_ref().ok_or(Fail::Null)?.0;
        if x.is_null() || y.is_null() || label.is_null() || ratio.is_null() {
            return Err(Fail::Null);
        }
        let r = g
            .rows
            .get(index)
            .ok_or_else(|| Error::InvalidArgument(format!("row index {index} out of range")))?;
        put(x, r.x)?;
        put(y, r.y)?;
        put(label, region_of(r.label))?;
        put(ratio, r.cr)
    })
}


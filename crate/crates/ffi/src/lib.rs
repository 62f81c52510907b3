//! C interface to `planemf`.
//!
//! Instances live behind the opaque [`PmfInstance`] handle. Every fallible
//! call returns a [`PmfStatus`]; on failure a description is available from
//! [`pmf_last_error`] on the same thread. Strings handed out by the library
//! are NUL-terminated, owned by the caller and released with
//! [`pmf_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use planemf::instance::{gen_c4_2k2_overline, gen_gk};
use planemf::multicut::wgmv_multicut;
use planemf::rational::{self, from_u64};
use planemf::report::{document, run_pipeline, solve_stage, Stage};
use planemf::{Error, Instance};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInstance = 4,
    InvalidArgument = 5,
    TooLarge = 6,
    Solver = 7,
    Panic = 8,
}

/// Stage selector for [`pmf_solve`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmfStage {
    Fractional = 0,
    HalfInteger = 1,
    Integer = 2,
    PlusOne = 3,
}

/// Opaque instance handle.
pub struct PmfInstance {
    inner: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PmfStatus {
    match e {
        Error::Syntax { .. } => PmfStatus::Parse,
        Error::EulerViolation { .. }
        | Error::Disconnected
        | Error::MalformedRotation(_)
        | Error::LoopEdge(_)
        | Error::BadEndpoint { .. }
        | Error::BadOuterFace(_) => PmfStatus::InvalidInstance,
        Error::BadParameter(_) | Error::NotACircuit(_) | Error::InvalidShore | Error::UnknownPath(_) => {
            PmfStatus::InvalidArgument
        }
        Error::PathExplosion { .. } | Error::TooLarge(_) => PmfStatus::TooLarge,
        Error::Unbounded | Error::TargetUnreachable { .. } | Error::Internal(_) => PmfStatus::Solver,
    }
}

/// Runs `body`, recording any error or panic for [`pmf_last_error`].
fn guard(body: impl FnOnce() -> Result<(), (PmfStatus, String)>) -> PmfStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PmfStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let text = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {text}"));
            PmfStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (PmfStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (PmfStatus, String) {
    (PmfStatus::NullArgument, format!("{what} is null"))
}

unsafe fn instance_ref<'a>(inst: *const PmfInstance) -> Result<&'a Instance, (PmfStatus, String)> {
    inst.as_ref().map(|h| &h.inner).ok_or_else(|| null("instance"))
}

unsafe fn put_string(out: *mut *mut c_char, text: String) -> Result<(), (PmfStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(text).map_err(|_| (PmfStatus::Solver, "output contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_instance(out: *mut *mut PmfInstance, inner: Instance) -> Result<(), (PmfStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(PmfInstance { inner }));
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn pmf_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn pmf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pmf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance from planemf v1 text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pmf_instance_parse(text: *const c_char, out: *mut *mut PmfInstance) -> PmfStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (PmfStatus::InvalidUtf8, e.to_string()))?;
        put_instance(out, Instance::parse(text).map_err(lib_err)?)
    })
}

/// Generates the ladder instance `G_k`; `k` must be at least 3.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pmf_instance_gen_gk(k: usize, out: *mut *mut PmfInstance) -> PmfStatus {
    guard(|| put_instance(out, gen_gk(k).map_err(lib_err)?))
}

/// Generates the doubled four-cycle instance with two crossing demands.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pmf_instance_gen_c4(out: *mut *mut PmfInstance) -> PmfStatus {
    guard(|| put_instance(out, gen_c4_2k2_overline().map_err(lib_err)?))
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `inst` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pmf_instance_free(inst: *mut PmfInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// `inst` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn pmf_instance_num_vertices(inst: *const PmfInstance) -> usize {
    inst.as_ref().map_or(0, |h| h.inner.num_vertices())
}

/// # Safety
/// `inst` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn pmf_instance_num_edges(inst: *const PmfInstance) -> usize {
    inst.as_ref().map_or(0, |h| h.inner.num_edges())
}

/// # Safety
/// `inst` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn pmf_instance_num_demands(inst: *const PmfInstance) -> usize {
    inst.as_ref().map_or(0, |h| h.inner.num_demands())
}

/// Writes the instance as planemf v1 text.
///
/// # Safety
/// `inst` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pmf_instance_serialize(inst: *const PmfInstance, out: *mut *mut c_char) -> PmfStatus {
    guard(|| put_string(out, instance_ref(inst)?.serialize()))
}

/// Runs one pipeline stage. On success `*out_json` holds the report document
/// and, when the optimum fits, `*out_num / *out_den` its value. Either value
/// pointer may be null.
///
/// # Safety
/// `inst` must be a live handle; non-null pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pmf_solve(
    inst: *const PmfInstance,
    stage: PmfStage,
    out_num: *mut i64,
    out_den: *mut i64,
    out_json: *mut *mut c_char,
) -> PmfStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        let stage = match stage {
            PmfStage::Fractional => Stage::Fractional,
            PmfStage::HalfInteger => Stage::HalfInteger,
            PmfStage::Integer => Stage::Integer,
            PmfStage::PlusOne => Stage::PlusOne,
        };
        let (flow, checks) = solve_stage(inst, stage).map_err(lib_err)?;
        let value = flow.value();
        if !out_num.is_null() || !out_den.is_null() {
            let parts = (i64::try_from(value.numer()), i64::try_from(value.denom()));
            let (Ok(n), Ok(d)) = parts else {
                return Err((
                    PmfStatus::TooLarge,
                    format!("value {} exceeds 64 bits", rational::display(&value)),
                ));
            };
            if !out_num.is_null() {
                *out_num = n;
            }
            if !out_den.is_null() {
                *out_den = d;
            }
        }
        let doc = document("", stage.name(), &value, &flow, &[], checks);
        put_string(out_json, doc.to_string())
    })
}

/// Runs the primal-dual multicut. `*out_cost` receives `c(Q)` and
/// `*out_json` the report document with `Q` and the certifying flow.
///
/// # Safety
/// `inst` must be a live handle; `out_json` must be writable; `out_cost`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn pmf_multicut(
    inst: *const PmfInstance,
    out_cost: *mut u64,
    out_json: *mut *mut c_char,
) -> PmfStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        let run = wgmv_multicut(inst).map_err(lib_err)?;
        let cost = run.cost(inst);
        if !out_cost.is_null() {
            *out_cost = cost;
        }
        let mut checks = serde_json::Map::new();
        checks.insert("flow_value".into(), rational::to_json(&run.flow.value()));
        let doc = document("", "multicut", &from_u64(cost), &run.flow, &run.q, checks);
        put_string(out_json, doc.to_string())
    })
}

/// Full pipeline report as JSON. `*out_ok` (if non-null) is set to 1 when
/// every inequality check holds and 0 otherwise.
///
/// # Safety
/// `inst` must be a live handle; `out_json` must be writable; `out_ok`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn pmf_report(
    inst: *const PmfInstance,
    out_ok: *mut i32,
    out_json: *mut *mut c_char,
) -> PmfStatus {
    guard(|| {
        let inst = instance_ref(inst)?;
        let report = run_pipeline(inst).map_err(lib_err)?;
        if !out_ok.is_null() {
            *out_ok = report.all_hold() as i32;
        }
        put_string(out_json, report.to_json("").to_string())
    })
}

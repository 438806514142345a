//! C interface to the fight-scheduler engine.
//!
//! Instances and schedules are opaque handles created by `fs_*_parse` or the
//! scheduling calls and released with the matching `*_free`. Every fallible
//! call returns an [`FsStatus`]; on failure `fs_last_error` describes the
//! cause. Strings returned through `char **` belong to the caller and are
//! released with [`fs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use fight_scheduler::coloring::{assign_order_fair, simple_schedule};
use fight_scheduler::solver::{build_model, export_lp, solve_with, SolveOptions, SolveStatus};
use fight_scheduler::{
    parse_instance, parse_schedule, render_schedule, validate, Fairness, FairnessCriteria,
    Instance, Schedule, ScheduleFormat,
};

/// Parsed instance.
pub struct FsInstance(Instance);

/// A schedule; only meaningful together with the instance it was made for.
pub struct FsSchedule(Schedule);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    Infeasible = 1,
    Timeout = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    InvalidInput = 5,
    InvalidArgument = 6,
    NoSimpleSchedule = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsFairness {
    None = 0,
    Weak = 1,
    Fair = 2,
    Strong = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsFormat {
    Table = 0,
    Machine = 1,
    Json = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FsCriteria {
    pub fairness: FsFairness,
    pub non_cooperative: bool,
    pub order_fair: bool,
    pub simple: bool,
}

impl From<FsCriteria> for FairnessCriteria {
    fn from(c: FsCriteria) -> Self {
        let mut out = FairnessCriteria::new(match c.fairness {
            FsFairness::None => Fairness::None,
            FsFairness::Weak => Fairness::Weak,
            FsFairness::Fair => Fairness::Fair,
            FsFairness::Strong => Fairness::Strong,
        });
        out.non_cooperative = c.non_cooperative;
        out.order_fair = c.order_fair;
        out.simple = c.simple;
        out
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("no interior nul")));
}

fn fail(status: FsStatus, msg: impl Into<String>) -> FsStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into [`FsStatus::Panic`].
fn guard(f: impl FnOnce() -> FsStatus) -> FsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(FsStatus::Panic, "internal panic"))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, FsStatus> {
    if p.is_null() {
        return Err(fail(FsStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(FsStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn give_string(s: String, out: *mut *mut c_char) -> FsStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            FsStatus::Ok
        }
        Err(_) => fail(FsStatus::Panic, "output contains a nul byte"),
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn fs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fs_instance_parse(text: *const c_char, out: *mut *mut FsInstance) -> FsStatus {
    guard(|| {
        if out.is_null() {
            return fail(FsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let src = match unsafe { self::text(text) } {
            Ok(s) => s,
            Err(e) => return e,
        };
        match parse_instance(src) {
            Ok(inst) => {
                *out = Box::into_raw(Box::new(FsInstance(inst)));
                FsStatus::Ok
            }
            Err(e) => fail(FsStatus::InvalidInput, e.to_string()),
        }
    })
}

/// # Safety
/// `instance` must come from `fs_instance_parse` and not be freed already.
#[no_mangle]
pub unsafe extern "C" fn fs_instance_free(instance: *mut FsInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Number of teams, or 0 for NULL.
///
/// # Safety
/// `instance` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fs_instance_team_count(instance: *const FsInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.0.team_count())
}

/// # Safety
/// `instance` must be a live handle, `text` a nul-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fs_schedule_parse(
    instance: *const FsInstance,
    text: *const c_char,
    out: *mut *mut FsSchedule,
) -> FsStatus {
    guard(|| {
        if out.is_null() {
            return fail(FsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(inst) = (unsafe { instance.as_ref() }) else {
            return fail(FsStatus::NullPointer, "null instance");
        };
        let src = match unsafe { self::text(text) } {
            Ok(s) => s,
            Err(e) => return e,
        };
        match parse_schedule(&inst.0, src) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(FsSchedule(s)));
                FsStatus::Ok
            }
            Err(e) => fail(FsStatus::InvalidInput, e.to_string()),
        }
    })
}

/// # Safety
/// `schedule` must be NULL or a handle not freed already.
#[no_mangle]
pub unsafe extern "C" fn fs_schedule_free(schedule: *mut FsSchedule) {
    if !schedule.is_null() {
        drop(Box::from_raw(schedule));
    }
}

/// Searches for a schedule. Returns `FS_STATUS_OK` with `*out` set, or
/// `FS_STATUS_INFEASIBLE` / `FS_STATUS_TIMEOUT` with `*out` NULL.
///
/// # Safety
/// `instance` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fs_solve(
    instance: *const FsInstance,
    criteria: FsCriteria,
    time_limit_seconds: f64,
    seed: u64,
    out: *mut *mut FsSchedule,
) -> FsStatus {
    guard(|| {
        if out.is_null() {
            return fail(FsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(inst) = (unsafe { instance.as_ref() }) else {
            return fail(FsStatus::NullPointer, "null instance");
        };
        if !(time_limit_seconds > 0.0 && time_limit_seconds.is_finite()) {
            return fail(FsStatus::InvalidArgument, "time limit must be positive");
        }
        let model = build_model(&inst.0, &criteria.into());
        let options = SolveOptions {
            time_limit: Duration::from_secs_f64(time_limit_seconds),
            seed,
            ..SolveOptions::default()
        };
        match solve_with(&model, &options) {
            Ok(outcome) => match (outcome.status, outcome.schedule) {
                (SolveStatus::Satisfiable, Some(s)) => {
                    *out = Box::into_raw(Box::new(FsSchedule(s)));
                    FsStatus::Ok
                }
                (SolveStatus::Timeout, _) => fail(FsStatus::Timeout, "time limit reached"),
                _ => fail(FsStatus::Infeasible, "no schedule meets the criteria"),
            },
            Err(e) => fail(FsStatus::Panic, e.to_string()),
        }
    })
}

/// Checks a schedule. `*passed` receives the overall verdict; when
/// `report_json` is not NULL it receives the full report as JSON.
///
/// # Safety
/// Handles must be live; `passed` valid; `report_json` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn fs_validate(
    instance: *const FsInstance,
    schedule: *const FsSchedule,
    criteria: FsCriteria,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> FsStatus {
    guard(|| {
        let (Some(inst), Some(sched)) = (unsafe { instance.as_ref() }, unsafe { schedule.as_ref() })
        else {
            return fail(FsStatus::NullPointer, "null handle");
        };
        if passed.is_null() {
            return fail(FsStatus::NullPointer, "null output pointer");
        }
        let report = validate(&inst.0, &sched.0, &criteria.into());
        *passed = report.passed();
        if report_json.is_null() {
            return FsStatus::Ok;
        }
        let json = serde_json::to_string(&report).expect("report serializes");
        unsafe { give_string(json, report_json) }
    })
}

/// Renders a schedule as text.
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fs_schedule_render(
    instance: *const FsInstance,
    schedule: *const FsSchedule,
    format: FsFormat,
    out: *mut *mut c_char,
) -> FsStatus {
    guard(|| {
        let (Some(inst), Some(sched)) = (unsafe { instance.as_ref() }, unsafe { schedule.as_ref() })
        else {
            return fail(FsStatus::NullPointer, "null handle");
        };
        if out.is_null() {
            return fail(FsStatus::NullPointer, "null output pointer");
        }
        let format = match format {
            FsFormat::Table => ScheduleFormat::Table,
            FsFormat::Machine => ScheduleFormat::Machine,
            FsFormat::Json => ScheduleFormat::Json,
        };
        unsafe { give_string(render_schedule(&inst.0, &sched.0, format, &[]), out) }
    })
}

/// Copy of `schedule` with stages re-assigned so that it is order-fair.
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fs_order_fair(
    instance: *const FsInstance,
    schedule: *const FsSchedule,
    out: *mut *mut FsSchedule,
) -> FsStatus {
    guard(|| {
        if out.is_null() {
            return fail(FsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let (Some(inst), Some(sched)) = (unsafe { instance.as_ref() }, unsafe { schedule.as_ref() })
        else {
            return fail(FsStatus::NullPointer, "null handle");
        };
        match assign_order_fair(&inst.0, &sched.0) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(FsSchedule(s)));
                FsStatus::Ok
            }
            Err(e) => fail(FsStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Builds a schedule in which every team keeps its room.
///
/// # Safety
/// `instance` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fs_simple_schedule(
    instance: *const FsInstance,
    out: *mut *mut FsSchedule,
) -> FsStatus {
    guard(|| {
        if out.is_null() {
            return fail(FsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(inst) = (unsafe { instance.as_ref() }) else {
            return fail(FsStatus::NullPointer, "null instance");
        };
        match simple_schedule(&inst.0) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(FsSchedule(s)));
                FsStatus::Ok
            }
            Err(reason) => fail(FsStatus::NoSimpleSchedule, reason.to_string()),
        }
    })
}

/// The 0-1 model of `instance` under `criteria` in LP format.
///
/// # Safety
/// `instance` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fs_export_lp(
    instance: *const FsInstance,
    criteria: FsCriteria,
    out: *mut *mut c_char,
) -> FsStatus {
    guard(|| {
        let Some(inst) = (unsafe { instance.as_ref() }) else {
            return fail(FsStatus::NullPointer, "null instance");
        };
        if out.is_null() {
            return fail(FsStatus::NullPointer, "null output pointer");
        }
        let model = build_model(&inst.0, &criteria.into());
        unsafe { give_string(export_lp(&model), out) }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string from this library not freed already.
#[no_mangle]
pub unsafe extern "C" fn fs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

//! C ABI for `ulrich-core`.
//!
//! Surfaces are opaque heap handles created by [`ulrich_surface_new`] and
//! released with [`ulrich_surface_free`]. Every fallible call returns an
//! [`UlrichCode`]; on failure a message is available from
//! [`ulrich_last_error_message`] on the calling thread. Divisor classes are
//! passed as `(const int64_t *coords, size_t len)` with `len` equal to the
//! surface's Picard rank.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ulrich_core::{
    chow_shape, cohomology, dimension_ledger, enumerate_ulrich_lines, invariant_report, is_ulrich_line,
    lemma_cycles_report, lm_numerics, DivClass, Error, SurfaceModel, UlrichStatus, MAX_COORD,
};

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UlrichCode {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Range = 4,
    DimensionMismatch = 5,
    Parity = 6,
    Precondition = 7,
    Unsupported = 8,
    Consistency = 9,
    /// A Rust panic (for example integer overflow) was caught at the boundary.
    Panic = 10,
}

impl From<&Error> for UlrichCode {
    fn from(err: &Error) -> Self {
        match err {
            Error::Parse(_) => UlrichCode::Parse,
            Error::Range(_) => UlrichCode::Range,
            Error::DimensionMismatch { .. } => UlrichCode::DimensionMismatch,
            Error::Parity { .. } => UlrichCode::Parity,
            Error::Precondition(_) => UlrichCode::Precondition,
            Error::Unsupported { .. } => UlrichCode::Unsupported,
            Error::Consistency(_) => UlrichCode::Consistency,
        }
    }
}

/// Opaque surface handle.
pub struct UlrichSurface {
    model: SurfaceModel,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UlrichCohomology {
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UlrichVerdictKind {
    NotUlrich = 0,
    Ulrich = 1,
    /// Blow-ups: the numerical filter passed but cohomology is not computed.
    FilterPassed = 2,
    FilterFailed = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UlrichVerdict {
    pub kind: UlrichVerdictKind,
    /// True when `witnesses` holds h0(L-H), h1(L-H), h1(L-2H), h2(L-2H).
    pub exact: bool,
    pub witnesses: [i64; 4],
    pub c1_condition: bool,
    pub chi_minus_h: i64,
    pub chi_minus_2h: i64,
}

/// Values accepted by the `kind` argument of [`ulrich_report_json`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UlrichReportKind {
    Invariants = 0,
    Ledger = 1,
    Chow = 2,
    Cycles = 3,
    Lm = 4,
    Enumerate = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn fail(code: UlrichCode, message: impl Into<String>) -> UlrichCode {
    set_last_error(message.into());
    code
}

fn guard(body: impl FnOnce() -> Result<(), UlrichCode>) -> UlrichCode {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => UlrichCode::Ok,
        Ok(Err(code)) => code,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(UlrichCode::Panic, message)
        }
    }
}

fn core_err(err: Error) -> UlrichCode {
    fail(UlrichCode::from(&err), err.to_string())
}

unsafe fn surface_ref<'a>(surface: *const UlrichSurface) -> Result<&'a SurfaceModel, UlrichCode> {
    surface
        .as_ref()
        .map(|s| &s.model)
        .ok_or_else(|| fail(UlrichCode::NullPointer, "surface handle is NULL"))
}

unsafe fn class_from_raw(model: &SurfaceModel, coords: *const i64, len: usize) -> Result<DivClass, UlrichCode> {
    if coords.is_null() {
        return Err(fail(UlrichCode::NullPointer, "coordinate pointer is NULL"));
    }
    let raw = std::slice::from_raw_parts(coords, len);
    if let Some(v) = raw.iter().find(|v| v.unsigned_abs() > MAX_COORD as u64) {
        return Err(fail(
            UlrichCode::Range,
            format!("coordinate {v} exceeds {MAX_COORD} in magnitude"),
        ));
    }
    let class = DivClass::new(raw);
    model.check(&class).map_err(core_err)?;
    Ok(class)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), UlrichCode> {
    if out.is_null() {
        return Err(fail(UlrichCode::NullPointer, "output pointer is NULL"));
    }
    out.write(value);
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ulrich_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a descriptor (`P2`, `F<a>` or `dP<r>`) into a new handle.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ulrich_surface_new(descriptor: *const c_char, out: *mut *mut UlrichSurface) -> UlrichCode {
    guard(|| {
        if descriptor.is_null() || out.is_null() {
            return Err(fail(UlrichCode::NullPointer, "descriptor or output pointer is NULL"));
        }
        let text = CStr::from_ptr(descriptor)
            .to_str()
            .map_err(|_| fail(UlrichCode::InvalidUtf8, "descriptor is not UTF-8"))?;
        let model: SurfaceModel = text.parse().map_err(core_err)?;
        *out = Box::into_raw(Box::new(UlrichSurface { model }));
        Ok(())
    })
}

/// # Safety
/// `surface` must come from [`ulrich_surface_new`] and not be freed twice.
/// NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ulrich_surface_free(surface: *mut UlrichSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// Picard rank, or 0 for a NULL handle.
///
/// # Safety
/// `surface` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ulrich_surface_picard_rank(surface: *const UlrichSurface) -> usize {
    surface.as_ref().map_or(0, |s| s.model.picard_rank())
}

/// # Safety
/// `surface` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ulrich_surface_canonical_square(surface: *const UlrichSurface, out: *mut i64) -> UlrichCode {
    guard(|| write_out(out, surface_ref(surface)?.canonical_square()))
}

/// Writes the canonical class into `out[0..len]`.
///
/// # Safety
/// `out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn ulrich_canonical(surface: *const UlrichSurface, out: *mut i64, len: usize) -> UlrichCode {
    guard(|| {
        let model = surface_ref(surface)?;
        let k = model.canonical();
        if len != k.len() {
            return Err(core_err(Error::DimensionMismatch {
                expected: k.len(),
                found: len,
            }));
        }
        if out.is_null() {
            return Err(fail(UlrichCode::NullPointer, "output pointer is NULL"));
        }
        ptr::copy_nonoverlapping(k.coords().as_ptr(), out, len);
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ulrich_intersect(
    surface: *const UlrichSurface,
    a: *const i64,
    b: *const i64,
    len: usize,
    out: *mut i64,
) -> UlrichCode {
    guard(|| {
        let model = surface_ref(surface)?;
        let a = class_from_raw(model, a, len)?;
        let b = class_from_raw(model, b, len)?;
        write_out(out, model.intersect(&a, &b).map_err(core_err)?)
    })
}

/// Arithmetic genus `1 + C·(C+K)/2`.
///
/// # Safety
/// As for [`ulrich_intersect`].
#[no_mangle]
pub unsafe extern "C" fn ulrich_genus(
    surface: *const UlrichSurface,
    curve: *const i64,
    len: usize,
    out: *mut i64,
) -> UlrichCode {
    guard(|| {
        let model = surface_ref(surface)?;
        let c = class_from_raw(model, curve, len)?;
        write_out(out, model.genus_adj(&c).map_err(core_err)?)
    })
}

/// # Safety
/// As for [`ulrich_intersect`].
#[no_mangle]
pub unsafe extern "C" fn ulrich_chi_line(
    surface: *const UlrichSurface,
    line: *const i64,
    len: usize,
    out: *mut i64,
) -> UlrichCode {
    guard(|| {
        let model = surface_ref(surface)?;
        let l = class_from_raw(model, line, len)?;
        write_out(out, model.chi_line(&l).map_err(core_err)?)
    })
}

/// Euler characteristic of rank-2 data `(c1, c2)`.
///
/// # Safety
/// As for [`ulrich_intersect`].
#[no_mangle]
pub unsafe extern "C" fn ulrich_chi_rank2(
    surface: *const UlrichSurface,
    c1: *const i64,
    len: usize,
    c2: i64,
    out: *mut i64,
) -> UlrichCode {
    guard(|| {
        let model = surface_ref(surface)?;
        let c1 = class_from_raw(model, c1, len)?;
        let data = ulrich_core::ChernData::rank2(c1, c2);
        write_out(out, model.chi_rank2(&data).map_err(core_err)?)
    })
}

/// Exact `(h0, h1, h2)` of a line bundle; `Unsupported` on blow-ups.
///
/// # Safety
/// As for [`ulrich_intersect`].
#[no_mangle]
pub unsafe extern "C" fn ulrich_cohomology(
    surface: *const UlrichSurface,
    line: *const i64,
    len: usize,
    out: *mut UlrichCohomology,
) -> UlrichCode {
    guard(|| {
        let model = surface_ref(surface)?;
        let l = class_from_raw(model, line, len)?;
        let t = cohomology(model, &l).map_err(core_err)?;
        write_out(
            out,
            UlrichCohomology {
                h0: t.h0,
                h1: t.h1,
                h2: t.h2,
            },
        )
    })
}

/// Ulrich test for `O(L)` with polarization `H`.
///
/// # Safety
/// `h` and `line` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ulrich_is_ulrich_line(
    surface: *const UlrichSurface,
    h: *const i64,
    line: *const i64,
    len: usize,
    out: *mut UlrichVerdict,
) -> UlrichCode {
    guard(|| {
        let model = surface_ref(surface)?;
        let h = class_from_raw(model, h, len)?;
        let l = class_from_raw(model, line, len)?;
        let v = is_ulrich_line(model, &h, &l).map_err(core_err)?;
        let kind = match v.status() {
            UlrichStatus::Ulrich => UlrichVerdictKind::Ulrich,
            UlrichStatus::NotUlrich => UlrichVerdictKind::NotUlrich,
            UlrichStatus::Undetermined { filter_passed: true } => UlrichVerdictKind::FilterPassed,
            UlrichStatus::Undetermined { filter_passed: false } => UlrichVerdictKind::FilterFailed,
        };
        write_out(
            out,
            UlrichVerdict {
                kind,
                exact: v.witnesses.is_some(),
                witnesses: v.witnesses.map_or([0; 4], |w| w.as_array()),
                c1_condition: v.c1_condition,
                chi_minus_h: v.chi_minus_h,
                chi_minus_2h: v.chi_minus_2h,
            },
        )
    })
}

/// Serializes a report for `(surface, H)` as JSON into a new string that
/// must be released with [`ulrich_string_free`]. `kind` is an
/// [`UlrichReportKind`] value; anything else yields `Precondition`.
///
/// # Safety
/// `h` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ulrich_report_json(
    surface: *const UlrichSurface,
    h: *const i64,
    len: usize,
    kind: i32,
    out: *mut *mut c_char,
) -> UlrichCode {
    guard(|| {
        let model = surface_ref(surface)?;
        let h = class_from_raw(model, h, len)?;
        let kind =
            report_kind(kind).ok_or_else(|| fail(UlrichCode::Precondition, format!("unknown report kind {kind}")))?;
        let value = match kind {
            UlrichReportKind::Invariants => invariant_report(model, &h).map(to_json),
            UlrichReportKind::Ledger => dimension_ledger(model, &h).map(to_json),
            UlrichReportKind::Chow => chow_shape(model, &h).map(to_json),
            UlrichReportKind::Cycles => lemma_cycles_report(model, &h).map(to_json),
            UlrichReportKind::Lm => lm_numerics(model, &h).map(to_json),
            UlrichReportKind::Enumerate => enumerate_ulrich_lines(model, &h, None).map(to_json),
        }
        .map_err(core_err)?;
        let text = CString::new(value).map_err(|_| fail(UlrichCode::Consistency, "report contains NUL"))?;
        write_out(out, text.into_raw())
    })
}

fn report_kind(raw: i32) -> Option<UlrichReportKind> {
    use UlrichReportKind::*;
    [Invariants, Ledger, Chow, Cycles, Lm, Enumerate]
        .into_iter()
        .find(|k| *k as i32 == raw)
}

fn to_json<T: serde::Serialize>(value: T) -> String {
    serde_json::to_string(&value).expect("report types serialize")
}

/// # Safety
/// `s` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ulrich_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

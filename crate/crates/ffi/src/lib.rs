//! C ABI for `qutrit-witness`.
//!
//! Objects are exposed as opaque handles created by `*_new` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`QwStatus`]; outputs are written through caller-provided pointers only on
//! success.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qutrit_witness::linalg::{CMat, CVec, Complex};
use qutrit_witness::optimality::{
    seesaw_minimize, spanning_report, OptimalityError, SearchConfig, SpanMethod, SpanReport,
};
use qutrit_witness::witness::{
    build_witness, classify, ellipse_from_a, ellipse_residual, expectation, Branch, Condition,
    WitnessError, WitnessParams, ELLIPSE_A_MAX,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    OffEllipse = 3,
    Degenerate = 4,
    NumericError = 5,
    IndexOutOfRange = 6,
    Panic = 7,
}

/// Witness `W[a,b,c]` together with its 9×9 matrix.
pub struct QwWitness {
    params: WitnessParams,
    matrix: CMat,
}

/// Result of a spanning check.
pub struct QwSpanReport {
    report: SpanReport,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QwClassification {
    pub is_witness: bool,
    /// 1 indecomposable, 0 decomposable, -1 not a witness.
    pub indecomposable: i32,
    pub on_ellipse: bool,
    pub is_psd: bool,
    /// Bit 0: `0 <= a < 2`, bit 1: `a + b + c >= 2`, bit 2: `bc >= (1-a)^2`.
    pub failed_mask: u32,
}

pub const QW_FAILED_A_RANGE: u32 = 1;
pub const QW_FAILED_SUM: u32 = 2;
pub const QW_FAILED_PRODUCT: u32 = 4;

fn guard(f: impl FnOnce() -> QwStatus) -> QwStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(QwStatus::Panic)
}

fn witness_status(e: &WitnessError) -> QwStatus {
    match e {
        WitnessError::Negative { .. }
        | WitnessError::NonFinite { .. }
        | WitnessError::OutsideEllipseRange { .. } => QwStatus::InvalidParams,
        _ => QwStatus::NumericError,
    }
}

fn optimality_status(e: &OptimalityError) -> QwStatus {
    match e {
        OptimalityError::OffEllipse { .. } => QwStatus::OffEllipse,
        OptimalityError::Degenerate | OptimalityError::FallbackRequired { .. } => {
            QwStatus::Degenerate
        }
        OptimalityError::Witness(w) => witness_status(w),
        OptimalityError::NotAWitness | OptimalityError::BadIndex { .. } => QwStatus::InvalidParams,
        _ => QwStatus::NumericError,
    }
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn qw_status_message(status: QwStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        QwStatus::Ok => c"ok",
        QwStatus::NullPointer => c"null pointer argument",
        QwStatus::InvalidParams => c"invalid parameters",
        QwStatus::OffEllipse => c"(b, c) is not on the ellipse",
        QwStatus::Degenerate => c"closed form unavailable and numeric fallback disabled",
        QwStatus::NumericError => c"numerical failure",
        QwStatus::IndexOutOfRange => c"index out of range",
        QwStatus::Panic => c"internal error",
    };
    msg.as_ptr()
}

/// Creates `W[a,b,c]`. On success `*out` receives a handle owned by the caller.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qw_witness_new(
    a: f64,
    b: f64,
    c: f64,
    out: *mut *mut QwWitness,
) -> QwStatus {
    guard(|| {
        if out.is_null() {
            return QwStatus::NullPointer;
        }
        match WitnessParams::new(a, b, c) {
            Ok(params) => {
                let matrix = build_witness(&params);
                *out = Box::into_raw(Box::new(QwWitness { params, matrix }));
                QwStatus::Ok
            }
            Err(e) => witness_status(&e),
        }
    })
}

/// # Safety
/// `w` must be null or a handle from `qw_witness_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qw_witness_free(w: *mut QwWitness) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Copies the matrix row-major into two arrays of 81 doubles.
///
/// # Safety
/// `w` must be a live handle; `re` and `im` must be valid for 81 writes.
#[no_mangle]
pub unsafe extern "C" fn qw_witness_matrix(
    w: *const QwWitness,
    re: *mut f64,
    im: *mut f64,
) -> QwStatus {
    guard(|| {
        let Some(w) = w.as_ref() else {
            return QwStatus::NullPointer;
        };
        if re.is_null() || im.is_null() {
            return QwStatus::NullPointer;
        }
        for (k, z) in w.matrix.as_slice().iter().enumerate() {
            *re.add(k) = z.re;
            *im.add(k) = z.im;
        }
        QwStatus::Ok
    })
}

/// # Safety
/// `w` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qw_witness_classify(
    w: *const QwWitness,
    tol: f64,
    out: *mut QwClassification,
) -> QwStatus {
    guard(|| {
        let (Some(w), false) = (w.as_ref(), out.is_null()) else {
            return QwStatus::NullPointer;
        };
        match classify(&w.params, tol) {
            Ok(cl) => {
                let failed_mask = cl.failed_conditions.iter().fold(0, |m, c| {
                    m | match c {
                        Condition::ARange => QW_FAILED_A_RANGE,
                        Condition::SumAtLeastTwo => QW_FAILED_SUM,
                        Condition::ProductBound => QW_FAILED_PRODUCT,
                    }
                });
                *out = QwClassification {
                    is_witness: cl.is_witness,
                    indecomposable: cl.indecomposable.map_or(-1, i32::from),
                    on_ellipse: cl.on_ellipse,
                    is_psd: cl.is_psd,
                    failed_mask,
                };
                QwStatus::Ok
            }
            Err(e) => witness_status(&e),
        }
    })
}

unsafe fn read3(re: *const f64, im: *const f64) -> Option<CVec> {
    if re.is_null() || im.is_null() {
        return None;
    }
    Some(CVec::new(
        (0..3)
            .map(|k| Complex::new(*re.add(k), *im.add(k)))
            .collect(),
    ))
}

/// `⟨x⊗y|W|x⊗y⟩` for vectors given as separate real and imaginary parts.
///
/// # Safety
/// `w` must be a live handle, the four vector pointers valid for 3 reads and
/// `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qw_witness_expectation(
    w: *const QwWitness,
    x_re: *const f64,
    x_im: *const f64,
    y_re: *const f64,
    y_im: *const f64,
    out: *mut f64,
) -> QwStatus {
    guard(|| {
        let (Some(w), Some(x), Some(y), false) = (
            w.as_ref(),
            read3(x_re, x_im),
            read3(y_re, y_im),
            out.is_null(),
        ) else {
            return QwStatus::NullPointer;
        };
        if !x.is_finite() || !y.is_finite() {
            return QwStatus::InvalidParams;
        }
        match expectation(&w.matrix, &x, &y) {
            Ok(v) => {
                *out = v;
                QwStatus::Ok
            }
            Err(e) => witness_status(&e),
        }
    })
}

/// Smallest expectation over unit product vectors found by see-saw search.
///
/// # Safety
/// `w` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn qw_witness_min_product(
    w: *const QwWitness,
    n_starts: usize,
    seed: u64,
    out: *mut f64,
) -> QwStatus {
    guard(|| {
        let (Some(w), false) = (w.as_ref(), out.is_null()) else {
            return QwStatus::NullPointer;
        };
        if n_starts == 0 {
            return QwStatus::InvalidParams;
        }
        let cfg = SearchConfig {
            n_starts,
            seed,
            ..SearchConfig::default()
        };
        match seesaw_minimize(&w.matrix, &cfg) {
            Ok(r) => {
                *out = r.min_value;
                QwStatus::Ok
            }
            Err(e) => optimality_status(&e),
        }
    })
}

/// Spanning check for the ellipse point `(b, c)`, snapped onto the ellipse when
/// its residual is at most `ellipse_tol`. `fallback_starts = 0` disables the
/// numeric search used where no closed form exists.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qw_span_new(
    b: f64,
    c: f64,
    phi1: f64,
    phi2: f64,
    ellipse_tol: f64,
    fallback_starts: usize,
    seed: u64,
    out: *mut *mut QwSpanReport,
) -> QwStatus {
    guard(|| {
        if out.is_null() {
            return QwStatus::NullPointer;
        }
        if !(b.is_finite() && c.is_finite() && b >= 0.0 && c >= 0.0) {
            return QwStatus::InvalidParams;
        }
        if ellipse_residual(b, c).abs() > ellipse_tol {
            return QwStatus::OffEllipse;
        }
        let a = (2.0 - b - c).clamp(0.0, ELLIPSE_A_MAX);
        let branch = if b <= c { Branch::Lower } else { Branch::Upper };
        let params = match ellipse_from_a(a, branch) {
            Ok(p) => p,
            Err(e) => return witness_status(&e),
        };
        let cfg = SearchConfig {
            n_starts: fallback_starts,
            seed,
            ..SearchConfig::default()
        };
        let fallback = (fallback_starts > 0).then_some(&cfg);
        match spanning_report(&params, phi1, phi2, fallback) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(QwSpanReport { report }));
                QwStatus::Ok
            }
            Err(e) => optimality_status(&e),
        }
    })
}

/// # Safety
/// `r` must be null or a handle from `qw_span_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qw_span_free(r: *mut QwSpanReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Rank of the zero-vector span, or 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_span_rank(r: *const QwSpanReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.gram_rank)
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_span_is_numeric(r: *const QwSpanReport) -> bool {
    r.as_ref()
        .is_some_and(|r| r.report.method == SpanMethod::NumericSearch)
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_span_vector_count(r: *const QwSpanReport) -> usize {
    r.as_ref().map_or(0, |r| r.report.vectors.len())
}

/// Copies zero vector `k` (9 entries) into `re` and `im`.
///
/// # Safety
/// `r` must be a live handle; `re` and `im` must be valid for 9 writes.
#[no_mangle]
pub unsafe extern "C" fn qw_span_vector(
    r: *const QwSpanReport,
    k: usize,
    re: *mut f64,
    im: *mut f64,
) -> QwStatus {
    guard(|| {
        let Some(r) = r.as_ref() else {
            return QwStatus::NullPointer;
        };
        if re.is_null() || im.is_null() {
            return QwStatus::NullPointer;
        }
        let Some(v) = r.report.vectors.get(k) else {
            return QwStatus::IndexOutOfRange;
        };
        for (i, z) in v.iter().enumerate() {
            *re.add(i) = z.re;
            *im.add(i) = z.im;
        }
        QwStatus::Ok
    })
}

#[no_mangle]
pub extern "C" fn qw_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

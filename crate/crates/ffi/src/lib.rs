//! C ABI over `entcert`.
//!
//! Every fallible function returns an [`EntcertStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be read with [`entcert_last_error`]. Panics never cross the boundary; they
//! are reported as [`EntcertStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use entcert::compat::{lhvm_alpha, pi_alpha, toth_alpha, AlphaResult, AlphaStatus, CorrelationFns, CorrelatorVector};
use entcert::compat::{Extreme, PICorrelators, Scenario};
use entcert::depth::certify_depth_reduction;
use entcert::operator::{partial_transpose, spectrum};
use entcert::symmetric::ds_alpha_range;
use entcert::{Error, HermitianOperator, PartySubset, SystemShape, Verdict, C64};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntcertStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Validation = 4,
    NotInvertible = 5,
    Capacity = 6,
    Numerical = 7,
    Internal = 8,
}

/// Which end of the admissible scaling interval to compute.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntcertExtreme {
    Max = 0,
    Min = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntcertAlphaStatus {
    Optimal = 0,
    Unbounded = 1,
    Infeasible = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntcertAlpha {
    /// `±inf` when unbounded, NaN when infeasible.
    pub alpha_star: f64,
    pub status: EntcertAlphaStatus,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntcertRange {
    pub min: f64,
    pub max: f64,
    pub empty: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntcertDepth {
    pub certified: bool,
    /// Certified depth bound; 0 when not certified.
    pub depth: usize,
    /// Smallest eigenvalue of the best preimage.
    pub min_eigenvalue: f64,
}

/// Opaque Hermitian operator on a multipartite space.
pub struct EntcertOperator(HermitianOperator);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EntcertStatus {
    match e {
        Error::InvalidArgument(_)
        | Error::PartyOutOfRange { .. }
        | Error::UnsupportedDimension { .. }
        | Error::Region { .. }
        | Error::OutOfRange { .. }
        | Error::Parse(_) => EntcertStatus::InvalidArgument,
        Error::DimensionMismatch(_) => EntcertStatus::DimensionMismatch,
        Error::Validation(_) | Error::Precondition(_) => EntcertStatus::Validation,
        Error::NonInvertibleMap { .. } => EntcertStatus::NotInvertible,
        Error::Capacity { .. } => EntcertStatus::Capacity,
        Error::Numerical(_) | Error::Io(_) => EntcertStatus::Numerical,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, writes its value to `out` and maps errors and panics to status
/// codes.
fn guard<T>(out: *mut T, f: impl FnOnce() -> Result<T, Failure>) -> EntcertStatus {
    if out.is_null() {
        set_error("output pointer is null".into());
        return EntcertStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: checked non-null above; the caller guarantees it is writable.
            unsafe { out.write(v) };
            EntcertStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is null"));
            EntcertStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            EntcertStatus::Internal
        }
    }
}

/// Borrows `len` elements, or fails when `p` is null and `len > 0`.
///
/// # Safety
/// `p` must point to `len` readable elements when non-null.
unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Failure::Null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

/// # Safety
/// `op` must be null or a live handle from [`entcert_operator_new`].
unsafe fn operator<'a>(op: *const EntcertOperator) -> Result<&'a HermitianOperator, Failure> {
    op.as_ref().map(|o| &o.0).ok_or(Failure::Null("operator handle"))
}

fn extreme(e: EntcertExtreme) -> Extreme {
    match e {
        EntcertExtreme::Max => Extreme::Max,
        EntcertExtreme::Min => Extreme::Min,
    }
}

fn alpha(r: AlphaResult) -> EntcertAlpha {
    EntcertAlpha {
        alpha_star: r.alpha_star,
        status: match r.status {
            AlphaStatus::Optimal => EntcertAlphaStatus::Optimal,
            AlphaStatus::Unbounded => EntcertAlphaStatus::Unbounded,
            AlphaStatus::Infeasible => EntcertAlphaStatus::Infeasible,
        },
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn entcert_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn entcert_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}

/// Builds an operator from row-major real and imaginary parts of length
/// `D²`, where `D` is the product of `local_dims`. `im` may be null for a
/// real operator. Free the result with [`entcert_operator_free`].
///
/// # Safety
/// Pointers must be valid for the given lengths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcert_operator_new(
    local_dims: *const usize,
    num_parties: usize,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut EntcertOperator,
) -> EntcertStatus {
    guard(out, || {
        let dims = slice(local_dims, num_parties, "local_dims")?;
        let shape = SystemShape::new(dims.to_vec())?;
        let re = slice(re, len, "re")?;
        let zeros;
        let im = if im.is_null() {
            zeros = vec![0.0; len];
            &zeros[..]
        } else {
            slice(im, len, "im")?
        };
        let op = HermitianOperator::from_parts(shape, re, im)?;
        Ok(Box::into_raw(Box::new(EntcertOperator(op))))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `op` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn entcert_operator_free(op: *mut EntcertOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Total Hilbert-space dimension.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcert_operator_dim(op: *const EntcertOperator, out: *mut usize) -> EntcertStatus {
    guard(out, || Ok(operator(op)?.dim()))
}

/// Smallest eigenvalue of the partial transpose on the listed parties.
///
/// # Safety
/// `op` must be a live handle, `parties` valid for `num` reads, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn entcert_pt_min_eigenvalue(
    op: *const EntcertOperator,
    parties: *const usize,
    num: usize,
    out: *mut f64,
) -> EntcertStatus {
    guard(out, || {
        let subset = PartySubset::new(slice(parties, num, "parties")?.iter().copied());
        Ok(spectrum(&partial_transpose(operator(op)?, &subset)?).min())
    })
}

/// Depth certificate `N − n` from the reduction-map inverse.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcert_certify_depth(
    op: *const EntcertOperator,
    n: usize,
    tol: f64,
    out: *mut EntcertDepth,
) -> EntcertStatus {
    guard(out, || {
        let cert = certify_depth_reduction(operator(op)?, n, tol)?;
        let depth = match cert.verdict {
            Verdict::CertifiedDepthAtMost { depth } => depth,
            _ => 0,
        };
        Ok(EntcertDepth { certified: cert.is_certified(), depth, min_eigenvalue: cert.witness.min_eigenvalue })
    })
}

/// Admissible α range for diagonal symmetric states of `n` qudits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcert_ds_alpha_range(n: usize, d: usize, out: *mut EntcertRange) -> EntcertStatus {
    guard(out, || {
        let r = ds_alpha_range(n, d)?;
        Ok(EntcertRange { min: r.min, max: r.max, empty: r.empty })
    })
}

/// Scaling factor for the two-body correlation functions `c[0..3]` of `n`
/// spins.
///
/// # Safety
/// `c` must point to three readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcert_toth_alpha(
    n: usize,
    c: *const f64,
    which: EntcertExtreme,
    out: *mut EntcertAlpha,
) -> EntcertStatus {
    guard(out, || {
        let c = slice(c, 3, "c")?;
        let fns = CorrelationFns::new(n, [c[0], c[1], c[2]])?;
        Ok(alpha(toth_alpha(&fns, extreme(which))))
    })
}

/// Scaling factor of a full correlator vector against the local polytope.
/// Entries follow the library's mixed-radix option order; `im` may be null
/// for real correlators.
///
/// # Safety
/// `re` (and `im` when non-null) must be valid for `len` reads; `out` must
/// be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn entcert_lhvm_alpha(
    parties: usize,
    settings: usize,
    outcomes: usize,
    re: *const f64,
    im: *const f64,
    len: usize,
    which: EntcertExtreme,
    out: *mut EntcertAlpha,
) -> EntcertStatus {
    guard(out, || {
        let scenario = Scenario::new(parties, settings, outcomes)?;
        let re = slice(re, len, "re")?;
        let values: Vec<C64> = if im.is_null() {
            re.iter().map(|&r| C64::new(r, 0.0)).collect()
        } else {
            let im = slice(im, len, "im")?;
            re.iter().zip(im).map(|(&r, &i)| C64::new(r, i)).collect()
        };
        let corr = CorrelatorVector::full(scenario, values)?;
        Ok(alpha(lhvm_alpha(&corr, extreme(which))?))
    })
}

/// Scaling factor in the permutationally invariant projection;
/// `s = [S0, S1, S00, S01, S11]`.
///
/// # Safety
/// `s` must point to five readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn entcert_pi_alpha(
    n: usize,
    s: *const f64,
    which: EntcertExtreme,
    out: *mut EntcertAlpha,
) -> EntcertStatus {
    guard(out, || {
        let s = slice(s, 5, "s")?;
        let pi = PICorrelators::new(n, [s[0], s[1], s[2], s[3], s[4]])?;
        Ok(alpha(pi_alpha(&pi, extreme(which))?))
    })
}

//! C ABI for the exact Veronese / Frobenius computations.
//!
//! Conventions:
//!
//! * every fallible call returns a [`VfsigStatus`]; `VFSIG_STATUS_OK` is 0;
//! * results come back through out-pointers as opaque handles or as
//!   NUL-terminated decimal strings (`"5"`, `"5/9"`), never as floats;
//! * every string returned by this library must be released with
//!   [`vfsig_string_free`], every handle with its matching `*_free`;
//! * on failure, [`vfsig_last_error_message`] returns a human-readable
//!   description of the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};
use veronese_fsig::cli::{execute, Command, Guards, OutputFormat, RunConfig};
use veronese_fsig::determinantal::{
    surjective_in_degree, verify_minor_ideal, DEFAULT_DIMENSION_GUARD, DEFAULT_MINOR_GUARD,
};
use veronese_fsig::frobenius::{
    decompose_roots, decompose_roots_general, splitting_number, DecompositionMultiset,
    FrobeniusParams,
};
use veronese_fsig::signature::{
    closed_form_alt, closed_form_limit, closed_forms_agree, f_signature_estimate, surjection_chain,
    SurjectionChain,
};
use veronese_fsig::veronese::VeroneseContext;
use veronese_fsig::Error;

/// Status of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VfsigStatus {
    Ok = 0,
    /// A verified identity failed or an experimental consistency check
    /// rejected its own output.
    VerificationFailed = 1,
    InvalidInput = 2,
    GuardExceeded = 3,
    NullPointer = 4,
    /// An internal invariant was violated; a bug, not a usage error.
    InternalError = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> VfsigStatus {
    match err {
        Error::GuardExceeded(_) => VfsigStatus::GuardExceeded,
        Error::CertificateFailed { .. } | Error::InconsistentDecomposition(_) => {
            VfsigStatus::VerificationFailed
        }
        _ => VfsigStatus::InvalidInput,
    }
}

fn fail(err: Error) -> VfsigStatus {
    let status = status_of(&err);
    set_last_error(err.to_string());
    status
}

/// Run a closure, translating panics into `InternalError`.
fn guarded(body: impl FnOnce() -> VfsigStatus + UnwindSafe) -> VfsigStatus {
    match catch_unwind(body) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic".into());
            VfsigStatus::InternalError
        }
    }
}

fn export_string(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn vfsig_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the most recent error on this thread, or an empty string.
/// The returned string must be released with [`vfsig_string_free`].
#[no_mangle]
pub extern "C" fn vfsig_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        let msg = slot
            .borrow()
            .as_ref()
            .map(|c| c.to_string_lossy().into_owned())
            .unwrap_or_default();
        export_string(msg)
    })
}

/// Release a string allocated by this library. NULL is ignored.
///
/// # Safety
/// `s` must be a pointer previously returned by a `vfsig_*` function and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn vfsig_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Opaque handle to a root-module decomposition.
pub struct VfsigDecomposition {
    inner: DecompositionMultiset,
    rank: String,
}

/// Decompose the `p^e`-th root module of a graded class into class summands.
/// `source_class < 0` selects the canonical class. When `p` divides `d` the
/// experimental literal-reading path is used and the handle reports it.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn vfsig_decompose(
    n: u32,
    d: u32,
    p: u64,
    e: u32,
    source_class: i64,
    out: *mut *mut VfsigDecomposition,
) -> VfsigStatus {
    if out.is_null() {
        return VfsigStatus::NullPointer;
    }
    guarded(|| {
        let result = (|| -> Result<VfsigDecomposition, Error> {
            let ctx = VeroneseContext::new(n, d)?;
            let params = FrobeniusParams::new(ctx, p, e)?;
            let source = if source_class < 0 {
                ctx.canonical_class()
            } else {
                ctx.class(u32::try_from(source_class).map_err(|_| {
                    Error::InvalidParameter(format!("source class {source_class} out of range"))
                })?)?
            };
            let inner = if (d as u64).is_multiple_of(p) {
                decompose_roots_general(&params, source)?
            } else {
                decompose_roots(&params, source)?
            };
            Ok(VfsigDecomposition {
                inner,
                rank: params.root_rank().to_string(),
            })
        })();
        match result {
            Ok(handle) => {
                unsafe { *out = Box::into_raw(Box::new(handle)) };
                VfsigStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Number of classes (`d`) in a decomposition; 0 for NULL.
///
/// # Safety
/// `handle` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vfsig_decomposition_class_count(handle: *const VfsigDecomposition) -> u32 {
    if handle.is_null() {
        return 0;
    }
    let h = unsafe { &*handle };
    h.inner.class_count() as u32
}

/// Multiplicity of one class as a decimal string, or NULL when the handle is
/// NULL or the index is out of range.
///
/// # Safety
/// `handle` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vfsig_decomposition_multiplicity(
    handle: *const VfsigDecomposition,
    class_index: u32,
) -> *mut c_char {
    if handle.is_null() {
        return std::ptr::null_mut();
    }
    let h = unsafe { &*handle };
    if class_index as usize >= h.inner.class_count() {
        set_last_error(format!("class index {class_index} out of range"));
        return std::ptr::null_mut();
    }
    export_string(h.inner.multiplicity(class_index as usize).to_string())
}

/// Sum of all multiplicities as a decimal string.
///
/// # Safety
/// `handle` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vfsig_decomposition_total(
    handle: *const VfsigDecomposition,
) -> *mut c_char {
    if handle.is_null() {
        return std::ptr::null_mut();
    }
    export_string(unsafe { &*handle }.inner.total().to_string())
}

/// `p^{ne}` as a decimal string.
///
/// # Safety
/// `handle` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vfsig_decomposition_rank(
    handle: *const VfsigDecomposition,
) -> *mut c_char {
    if handle.is_null() {
        return std::ptr::null_mut();
    }
    export_string(unsafe { &*handle }.rank.clone())
}

/// True when the decomposition came from the experimental `p | d` path.
///
/// # Safety
/// `handle` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vfsig_decomposition_is_experimental(
    handle: *const VfsigDecomposition,
) -> bool {
    !handle.is_null() && unsafe { &*handle }.inner.is_experimental()
}

/// Release a decomposition handle. NULL is ignored.
///
/// # Safety
/// `handle` must come from [`vfsig_decompose`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn vfsig_decomposition_free(handle: *mut VfsigDecomposition) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Splitting number `a_e` as a decimal string. Requires gcd(p, d) = 1.
///
/// # Safety
/// `out` must be a valid pointer to a string slot.
#[no_mangle]
pub unsafe extern "C" fn vfsig_splitting_number(
    n: u32,
    d: u32,
    p: u64,
    e: u32,
    out: *mut *mut c_char,
) -> VfsigStatus {
    if out.is_null() {
        return VfsigStatus::NullPointer;
    }
    guarded(|| {
        let result = VeroneseContext::new(n, d)
            .and_then(|ctx| FrobeniusParams::new(ctx, p, e))
            .and_then(|params| splitting_number(&params));
        match result {
            Ok(v) => {
                unsafe { *out = export_string(v.to_string()) };
                VfsigStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// F-signature estimate `a_e / p^{ne}` as an exact `num/den` string.
///
/// # Safety
/// `out` must be a valid pointer to a string slot.
#[no_mangle]
pub unsafe extern "C" fn vfsig_f_signature(
    n: u32,
    d: u32,
    p: u64,
    e: u32,
    out: *mut *mut c_char,
) -> VfsigStatus {
    if out.is_null() {
        return VfsigStatus::NullPointer;
    }
    guarded(|| {
        let result = VeroneseContext::new(n, d)
            .and_then(|ctx| FrobeniusParams::new(ctx, p, e))
            .and_then(|params| f_signature_estimate(&params));
        match result {
            Ok(v) => {
                unsafe { *out = export_string(v.to_string()) };
                VfsigStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The closed form the exact bounds converge to, `ceil(n/d)/n`.
///
/// # Safety
/// `out` must be a valid pointer to a string slot.
#[no_mangle]
pub unsafe extern "C" fn vfsig_closed_form_limit(
    n: u32,
    d: u32,
    out: *mut *mut c_char,
) -> VfsigStatus {
    if out.is_null() {
        return VfsigStatus::NullPointer;
    }
    guarded(|| match VeroneseContext::new(n, d) {
        Ok(ctx) => {
            unsafe { *out = export_string(closed_form_limit(&ctx).to_string()) };
            VfsigStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// The alternative closed form `ceil(d/n)/d`.
///
/// # Safety
/// `out` must be a valid pointer to a string slot.
#[no_mangle]
pub unsafe extern "C" fn vfsig_closed_form_alt(
    n: u32,
    d: u32,
    out: *mut *mut c_char,
) -> VfsigStatus {
    if out.is_null() {
        return VfsigStatus::NullPointer;
    }
    guarded(|| match VeroneseContext::new(n, d) {
        Ok(ctx) => {
            unsafe { *out = export_string(closed_form_alt(&ctx).to_string()) };
            VfsigStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// Whether the two closed forms coincide for `(n, d)`.
///
/// # Safety
/// `out` must be a valid pointer to a bool slot.
#[no_mangle]
pub unsafe extern "C" fn vfsig_closed_forms_agree(n: u32, d: u32, out: *mut bool) -> VfsigStatus {
    if out.is_null() {
        return VfsigStatus::NullPointer;
    }
    guarded(|| match VeroneseContext::new(n, d) {
        Ok(ctx) => {
            unsafe { *out = closed_forms_agree(&ctx) };
            VfsigStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// Opaque handle to a surjection chain.
pub struct VfsigChain {
    inner: SurjectionChain,
}

/// Build the chain of optimal surjections onto the canonical class.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn vfsig_chain_new(n: u32, d: u32, out: *mut *mut VfsigChain) -> VfsigStatus {
    if out.is_null() {
        return VfsigStatus::NullPointer;
    }
    guarded(|| match VeroneseContext::new(n, d) {
        Ok(ctx) => {
            let inner = surjection_chain(&ctx);
            unsafe { *out = Box::into_raw(Box::new(VfsigChain { inner })) };
            VfsigStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// Number of chain records (`k + 1`); 0 for NULL.
///
/// # Safety
/// `handle` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vfsig_chain_length(handle: *const VfsigChain) -> u32 {
    if handle.is_null() {
        return 0;
    }
    unsafe { &*handle }.inner.records().len() as u32
}

/// Index of the canonical class.
///
/// # Safety
/// `handle` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vfsig_chain_canonical_class(handle: *const VfsigChain) -> u32 {
    if handle.is_null() {
        return 0;
    }
    unsafe { &*handle }.inner.canonical_class().index()
}

/// Source copy count `e_i` of record `i` as a decimal string.
///
/// # Safety
/// `handle` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vfsig_chain_source_copies(
    handle: *const VfsigChain,
    i: u32,
) -> *mut c_char {
    chain_field(handle, i, |rec| rec.source_copies.to_string())
}

/// Target copy count `f_i` of record `i` as a decimal string.
///
/// # Safety
/// `handle` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vfsig_chain_target_copies(
    handle: *const VfsigChain,
    i: u32,
) -> *mut c_char {
    chain_field(handle, i, |rec| rec.target_copies.to_string())
}

fn chain_field(
    handle: *const VfsigChain,
    i: u32,
    f: impl Fn(&veronese_fsig::signature::ChainRecord) -> String,
) -> *mut c_char {
    if handle.is_null() {
        return std::ptr::null_mut();
    }
    let h = unsafe { &*handle };
    match h.inner.records().get(i as usize) {
        Some(rec) => export_string(f(rec)),
        None => {
            set_last_error(format!("chain record {i} out of range"));
            std::ptr::null_mut()
        }
    }
}

/// Release a chain handle. NULL is ignored.
///
/// # Safety
/// `handle` must come from [`vfsig_chain_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn vfsig_chain_free(handle: *mut VfsigChain) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Span check on the maximal minors of the band matrix `M(n, r)`.
/// `max_minors = 0` selects the built-in default cap.
///
/// # Safety
/// The three out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vfsig_verify_minors(
    n: u32,
    r: u32,
    max_minors: u64,
    out_holds: *mut bool,
    out_rank: *mut u64,
    out_expected: *mut u64,
) -> VfsigStatus {
    if out_holds.is_null() || out_rank.is_null() || out_expected.is_null() {
        return VfsigStatus::NullPointer;
    }
    guarded(|| {
        let cap = if max_minors == 0 {
            DEFAULT_MINOR_GUARD
        } else {
            max_minors
        };
        match verify_minor_ideal(n, r, cap) {
            Ok(v) => {
                unsafe {
                    *out_holds = v.holds;
                    *out_rank = v.rank_found;
                    *out_expected = v.expected_rank;
                }
                VfsigStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Rank test of the degree-`j` component of the band map with `k` rows on
/// `n` variables. `max_dim = 0` selects the built-in default cap.
///
/// # Safety
/// The three out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vfsig_surjective_in_degree(
    n: u32,
    k: u32,
    j: u32,
    max_dim: u64,
    out_surjective: *mut bool,
    out_rank: *mut u64,
    out_required: *mut u64,
) -> VfsigStatus {
    if out_surjective.is_null() || out_rank.is_null() || out_required.is_null() {
        return VfsigStatus::NullPointer;
    }
    guarded(|| {
        let cap = if max_dim == 0 {
            DEFAULT_DIMENSION_GUARD
        } else {
            max_dim
        };
        match surjective_in_degree(n, k, j, cap) {
            Ok(v) => {
                unsafe {
                    *out_surjective = v.surjective;
                    *out_rank = v.rank_found;
                    *out_required = v.required_rank;
                }
                VfsigStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Full signature convergence table for `e = 1..e_max`, serialized as the
/// same JSON document the CLI emits (schema_version 1). The returned string
/// must be released with [`vfsig_string_free`].
///
/// # Safety
/// `out` must be a valid pointer to a string slot.
#[no_mangle]
pub unsafe extern "C" fn vfsig_signature_table_json(
    n: u32,
    d: u32,
    p: u64,
    e_max: u32,
    out: *mut *mut c_char,
) -> VfsigStatus {
    if out.is_null() {
        return VfsigStatus::NullPointer;
    }
    guarded(|| {
        let config = RunConfig {
            command: Command::Signature { n, d, p, e_max },
            format: OutputFormat::Json,
            out: None,
            guards: Guards::default(),
        };
        match execute(&config) {
            Ok(output) => {
                unsafe { *out = export_string(output.text) };
                VfsigStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

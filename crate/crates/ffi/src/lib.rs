//! C ABI over `cubecycle`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_build`/
//! `*_parse` functions and released by the matching `*_free`. Every fallible
//! call returns a [`CcStatus`]; on failure the message is available from
//! [`cc_last_error`] on the same thread until the next failing call.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with [`cc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cubecycle::bounds::{lower_bound_exponent, upper_bound_exponent, Exponent};
use cubecycle::exact::{ex_cube, ExactOptions};
use cubecycle::partite::{check_representation, RepresentationDoc};
use cubecycle::prob::{make_params, run_trial};
use cubecycle::{
    build_qn, build_representation, census, count_cycles, is_cycle_free, Budget, Error,
    Representation, Subgraph,
};

/// Result codes. Values 1 to 3 match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    VerificationFailure = 1,
    InvalidParameter = 2,
    ResourceLimit = 3,
    NullPointer = 4,
    Internal = 5,
}

/// Opaque subgraph of `Q_n`.
pub struct CcSubgraph(Subgraph);

/// Opaque layer 2/3 cycle representation.
pub struct CcRepresentation(Representation);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CcStatus {
    match e {
        Error::VerificationFailure { .. } => CcStatus::VerificationFailure,
        Error::InvalidParameter(_) | Error::Parse { .. } => CcStatus::InvalidParameter,
        Error::ResourceLimit(_) => CcStatus::ResourceLimit,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CcStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            CcStatus::NullPointer
        }
        Err(_) => {
            set_error("internal panic");
            CcStatus::Internal
        }
    }
}

unsafe fn arg<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::InvalidParameter(format!("{what} is not UTF-8"))))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn budget(b: u64) -> Budget {
    if b == 0 {
        Budget::default()
    } else {
        Budget(b)
    }
}

fn write_exponent(e: Exponent, num: *mut i64, den: *mut i64) -> Result<(), Fail> {
    unsafe {
        *out(num, "num")? = e.numer();
        *out(den, "den")? = e.denom();
    }
    Ok(())
}

/// Message of the last failure on this thread; empty if none. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn cc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The full hypercube `Q_n`.
///
/// # Safety
/// `out_graph` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_subgraph_qn(n: u32, out_graph: *mut *mut CcSubgraph) -> CcStatus {
    guard(|| {
        let slot = out(out_graph, "out_graph")?;
        *slot = Box::into_raw(Box::new(CcSubgraph(build_qn(n)?)));
        Ok(())
    })
}

/// Parses the `dim=<n>` edge-list format.
///
/// # Safety
/// `text_in` must be a nul-terminated string; `out_graph` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_subgraph_parse(
    text_in: *const c_char,
    out_graph: *mut *mut CcSubgraph,
) -> CcStatus {
    guard(|| {
        let slot = out(out_graph, "out_graph")?;
        let g = Subgraph::parse_edge_list(text(text_in, "text")?)?;
        *slot = Box::into_raw(Box::new(CcSubgraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cc_subgraph_free(g: *mut CcSubgraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of edges; 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_subgraph_edge_count(g: *const CcSubgraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.len())
}

/// Renders the edge-list format into a new string.
///
/// # Safety
/// `g` must be a live handle; `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_subgraph_to_text(
    g: *const CcSubgraph,
    out_text: *mut *mut c_char,
) -> CcStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        *out(out_text, "out_text")? = owned_string(g.0.to_edge_list());
        Ok(())
    })
}

/// Number of `two_ell`-cycles in `g`. A zero budget selects the default.
///
/// # Safety
/// `g` must be a live handle; `out_count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_count_cycles(
    g: *const CcSubgraph,
    two_ell: u32,
    budget_units: u64,
    out_count: *mut u64,
) -> CcStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        let slot = out(out_count, "out_count")?;
        *slot = count_cycles(&g.0, two_ell as usize, budget(budget_units))?;
        Ok(())
    })
}

/// Sets `*out_free` to 1 when `g` has no `two_ell`-cycle, else 0.
///
/// # Safety
/// `g` must be a live handle; `out_free` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_is_cycle_free(
    g: *const CcSubgraph,
    two_ell: u32,
    budget_units: u64,
    out_free: *mut c_int,
) -> CcStatus {
    guard(|| {
        let g = arg(g, "graph")?;
        let slot = out(out_free, "out_free")?;
        *slot = c_int::from(is_cycle_free(&g.0, two_ell as usize, budget(budget_units))?.is_free());
        Ok(())
    })
}

/// Census of `Q_n`: total cycle count and the common per-edge count.
/// Fails with `VerificationFailure` if the per-edge counts are not uniform.
///
/// # Safety
/// `out_total` and `out_per_edge` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cc_census(
    n: u32,
    two_ell: u32,
    budget_units: u64,
    out_total: *mut u64,
    out_per_edge: *mut u64,
) -> CcStatus {
    guard(|| {
        let total = out(out_total, "out_total")?;
        let per_edge = out(out_per_edge, "out_per_edge")?;
        let row = census(n, two_ell as usize, budget(budget_units))?.bound_row()?;
        *total = row.total;
        *per_edge = row.x;
        Ok(())
    })
}

/// Builds the representation for odd `ell >= 7` over `[n]` with the default labels.
///
/// # Safety
/// `out_rep` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_representation_build(
    ell: u32,
    n: u32,
    out_rep: *mut *mut CcRepresentation,
) -> CcStatus {
    guard(|| {
        let slot = out(out_rep, "out_rep")?;
        *slot = Box::into_raw(Box::new(CcRepresentation(build_representation(
            ell, n, None,
        )?)));
        Ok(())
    })
}

/// Reads a representation from its JSON document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out_rep` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_representation_from_json(
    json: *const c_char,
    out_rep: *mut *mut CcRepresentation,
) -> CcStatus {
    guard(|| {
        let slot = out(out_rep, "out_rep")?;
        let doc: RepresentationDoc =
            serde_json::from_str(text(json, "json")?).map_err(|e| Error::Parse {
                line: e.line(),
                message: e.to_string(),
            })?;
        *slot = Box::into_raw(Box::new(CcRepresentation(Representation::from_doc(&doc)?)));
        Ok(())
    })
}

/// Serialises a representation to its JSON document.
///
/// # Safety
/// `rep` must be a live handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_representation_to_json(
    rep: *const CcRepresentation,
    out_json: *mut *mut c_char,
) -> CcStatus {
    guard(|| {
        let rep = arg(rep, "rep")?;
        let json = serde_json::to_string(&rep.0.to_doc()).expect("serializable document");
        *out(out_json, "out_json")? = owned_string(json);
        Ok(())
    })
}

/// Checks all six clauses. Returns `VerificationFailure` naming the first failed clause.
///
/// # Safety
/// `rep` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_representation_verify(rep: *const CcRepresentation) -> CcStatus {
    guard(|| {
        let rep = arg(rep, "rep")?;
        let report = check_representation(&rep.0);
        match report.first_failure() {
            None => Ok(()),
            Some(f) => Err(Fail::Lib(Error::VerificationFailure {
                clause: format!("({}) {}", f.clause, f.name),
                detail: f.detail.clone(),
            })),
        }
    })
}

/// The cycle of the representation as a new subgraph handle.
///
/// # Safety
/// `rep` must be a live handle; `out_graph` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_representation_subgraph(
    rep: *const CcRepresentation,
    out_graph: *mut *mut CcSubgraph,
) -> CcStatus {
    guard(|| {
        let rep = arg(rep, "rep")?;
        let slot = out(out_graph, "out_graph")?;
        *slot = Box::into_raw(Box::new(CcSubgraph(rep.0.subgraph()?)));
        Ok(())
    })
}

/// # Safety
/// `rep` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cc_representation_free(rep: *mut CcRepresentation) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Upper-bound exponent `5/6 + 1/(3(ell-3))` as a reduced fraction.
///
/// # Safety
/// `num` and `den` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cc_upper_bound_exponent(
    ell: u32,
    num: *mut i64,
    den: *mut i64,
) -> CcStatus {
    guard(|| write_exponent(upper_bound_exponent(ell)?, num, den))
}

/// Random-colouring lower-bound exponent `1/2 + 1/(4 ell - 2)`.
///
/// # Safety
/// `num` and `den` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cc_lower_bound_exponent(
    ell: u32,
    num: *mut i64,
    den: *mut i64,
) -> CcStatus {
    guard(|| write_exponent(lower_bound_exponent(ell)?, num, den))
}

/// One trial of the colouring construction; returns the certified kept subgraph.
///
/// # Safety
/// `out_graph` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_construct(
    n: u32,
    ell: u32,
    c: f64,
    seed: u64,
    trial: u64,
    budget_units: u64,
    out_graph: *mut *mut CcSubgraph,
) -> CcStatus {
    guard(|| {
        let slot = out(out_graph, "out_graph")?;
        let params = make_params(n, ell, c, seed)?;
        let r = run_trial(&params, trial, budget(budget_units))?;
        if !r.certified {
            return Err(Fail::Lib(Error::VerificationFailure {
                clause: "certification".into(),
                detail: "kept subgraph contains a cycle".into(),
            }));
        }
        *slot = Box::into_raw(Box::new(CcSubgraph(r.kept_edges)));
        Ok(())
    })
}

/// Exact `ex(Q_n, C_two_ell)`.
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cc_ex_cube(
    n: u32,
    two_ell: u32,
    budget_units: u64,
    out_value: *mut u64,
) -> CcStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        let r = ex_cube(
            n,
            two_ell as usize,
            &ExactOptions::with_budget(budget(budget_units)),
        )?;
        *slot = r.value;
        Ok(())
    })
}

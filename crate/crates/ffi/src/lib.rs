//! C interface to the census engine.
//!
//! Every fallible entry point returns an [`McStatus`] and delivers its
//! result through an out pointer, which is written to a null/zero state
//! before any work happens so callers never read garbage on failure.
//! Catalogs are opaque handles released with [`mc_catalog_free`]; strings
//! handed out by this library are released with [`mc_string_free`]. All
//! entry points catch panics at the boundary and report them as
//! `MC_STATUS_INTERNAL_ERROR` instead of unwinding into C.

use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mapcensus::canon::EquivalenceMode;
use mapcensus::census::{self, CensusError, PlaneCatalog, SphereCatalog};
use mapcensus::{format, morse, verify};

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum McStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An argument was out of range: zero edges, an unknown surface or
    /// mode selector, or an entry index past the end of the catalog.
    InvalidArgument = 2,
    /// The requested edge count exceeds the labeled-sweep guard.
    GuardExceeded = 3,
    /// A panic crossed the boundary or an internal cross-check failed.
    InternalError = 4,
}

/// Surface selector for [`mc_catalog_build`]: maps on the sphere.
pub const MC_SURFACE_SPHERE: c_int = 0;
/// Surface selector for [`mc_catalog_build`]: plane graphs (sphere maps
/// with a distinguished outer face).
pub const MC_SURFACE_PLANE: c_int = 1;

/// Mode selector: mirror images are identified.
pub const MC_MODE_FULL: c_int = 0;
/// Mode selector: orientation-preserving equivalence only.
pub const MC_MODE_ORIENTED: c_int = 1;

enum Inner {
    Sphere(SphereCatalog),
    Plane(PlaneCatalog),
}

/// Opaque census handle; build with [`mc_catalog_build`], release with
/// [`mc_catalog_free`].
pub struct McCatalog {
    inner: Inner,
}

impl McCatalog {
    fn len(&self) -> usize {
        match &self.inner {
            Inner::Sphere(c) => c.entries.len(),
            Inner::Plane(c) => c.entries.len(),
        }
    }

    fn code_string(&self, index: usize) -> Option<String> {
        match &self.inner {
            Inner::Sphere(c) => c.entries.get(index).map(|e| e.code.to_string()),
            Inner::Plane(c) => c.entries.get(index).map(|e| e.code.to_string()),
        }
    }
}

/// Source, saddle, and sink counts of the Morse flow read off one plane
/// graph. `euler_check` records `sources - saddles + sinks = 1`.
#[repr(C)]
pub struct McFlowSummary {
    pub sources: usize,
    pub saddles: usize,
    pub sinks: usize,
    pub euler_check: bool,
}

fn status_of(err: &CensusError) -> McStatus {
    match err {
        CensusError::InvalidEdgeCount => McStatus::InvalidArgument,
        CensusError::EdgeGuard { .. } => McStatus::GuardExceeded,
        CensusError::DualPathMismatch { .. } => McStatus::InternalError,
    }
}

fn mode_of(mode: c_int) -> Option<EquivalenceMode> {
    match mode {
        MC_MODE_FULL => Some(EquivalenceMode::Full),
        MC_MODE_ORIENTED => Some(EquivalenceMode::Oriented),
        _ => None,
    }
}

/// Hands a heap string across the boundary. `CString::new` only fails on
/// interior NUL bytes, which none of our renderings contain.
fn export_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

/// Enumerate the census with `edge_count` edges on the chosen surface
/// (`MC_SURFACE_*`) under the chosen equivalence (`MC_MODE_*`), storing a
/// fresh handle in `*out`.
///
/// # Safety
///
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_catalog_build(
    edge_count: usize,
    surface: c_int,
    mode: c_int,
    out: *mut *mut McCatalog,
) -> McStatus {
    if out.is_null() {
        return McStatus::NullArgument;
    }
    unsafe { *out = std::ptr::null_mut() };
    let Some(mode) = mode_of(mode) else {
        return McStatus::InvalidArgument;
    };
    if surface != MC_SURFACE_SPHERE && surface != MC_SURFACE_PLANE {
        return McStatus::InvalidArgument;
    }
    let built = catch_unwind(|| {
        if surface == MC_SURFACE_SPHERE {
            census::enumerate_spherical(edge_count, mode).map(Inner::Sphere)
        } else {
            census::enumerate_plane(edge_count, mode).map(Inner::Plane)
        }
    });
    match built {
        Ok(Ok(inner)) => {
            unsafe { *out = Box::into_raw(Box::new(McCatalog { inner })) };
            McStatus::Ok
        }
        Ok(Err(err)) => status_of(&err),
        Err(_) => McStatus::InternalError,
    }
}

/// Release a catalog handle. Null is a no-op.
///
/// # Safety
///
/// `catalog` must be null or a pointer obtained from [`mc_catalog_build`]
/// that has not already been freed.
#[no_mangle]
pub unsafe extern "C" fn mc_catalog_free(catalog: *mut McCatalog) {
    if catalog.is_null() {
        return;
    }
    let _ = catch_unwind(AssertUnwindSafe(|| drop(unsafe { Box::from_raw(catalog) })));
}

/// Number of equivalence classes in the catalog.
///
/// # Safety
///
/// `catalog` must be a live handle; `out_len` null or writable.
#[no_mangle]
pub unsafe extern "C" fn mc_catalog_len(
    catalog: *const McCatalog,
    out_len: *mut usize,
) -> McStatus {
    if catalog.is_null() || out_len.is_null() {
        return McStatus::NullArgument;
    }
    unsafe { *out_len = (*catalog).len() };
    McStatus::Ok
}

/// Canonical code of entry `index`, as a NUL-terminated string owned by
/// the caller (release with [`mc_string_free`]). Entries are sorted by
/// code, so `index` enumerates the catalog in its canonical order.
///
/// # Safety
///
/// `catalog` must be a live handle; `out_code` null or writable.
#[no_mangle]
pub unsafe extern "C" fn mc_catalog_code(
    catalog: *const McCatalog,
    index: usize,
    out_code: *mut *mut c_char,
) -> McStatus {
    if catalog.is_null() || out_code.is_null() {
        return McStatus::NullArgument;
    }
    unsafe { *out_code = std::ptr::null_mut() };
    let rendered = catch_unwind(AssertUnwindSafe(|| unsafe { (*catalog).code_string(index) }));
    match rendered {
        Ok(Some(code)) => {
            unsafe { *out_code = export_string(code) };
            McStatus::Ok
        }
        Ok(None) => McStatus::InvalidArgument,
        Err(_) => McStatus::InternalError,
    }
}

/// The whole catalog rendered as JSON, byte-identical to the CLI output.
/// The returned string is owned by the caller (release with
/// [`mc_string_free`]).
///
/// # Safety
///
/// `catalog` must be a live handle; `out_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn mc_catalog_json(
    catalog: *const McCatalog,
    out_json: *mut *mut c_char,
) -> McStatus {
    if catalog.is_null() || out_json.is_null() {
        return McStatus::NullArgument;
    }
    unsafe { *out_json = std::ptr::null_mut() };
    let rendered = catch_unwind(AssertUnwindSafe(|| match unsafe { &(*catalog).inner } {
        Inner::Sphere(c) => format::render_json(&format::sphere_catalog_dto(c)),
        Inner::Plane(c) => format::render_json(&format::plane_catalog_dto(c)),
    }));
    match rendered {
        Ok(json) => {
            unsafe { *out_json = export_string(json) };
            McStatus::Ok
        }
        Err(_) => McStatus::InternalError,
    }
}

/// Release a string obtained from this library. Null is a no-op.
///
/// # Safety
///
/// `s` must be null or a pointer obtained from [`mc_catalog_code`] or
/// [`mc_catalog_json`] that has not already been freed.
#[no_mangle]
pub unsafe extern "C" fn mc_string_free(s: *mut c_char) {
    if s.is_null() {
        return;
    }
    let _ = catch_unwind(AssertUnwindSafe(|| drop(unsafe { CString::from_raw(s) })));
}

/// Morse-flow reading of plane entry `index`: sources at vertices,
/// saddles on edges, sinks in the bounded faces. Rejects sphere catalogs
/// with `MC_STATUS_INVALID_ARGUMENT`, since the flow reading needs a
/// distinguished outer face.
///
/// # Safety
///
/// `catalog` must be a live handle; `out_summary` null or writable.
#[no_mangle]
pub unsafe extern "C" fn mc_flow_summary(
    catalog: *const McCatalog,
    index: usize,
    out_summary: *mut McFlowSummary,
) -> McStatus {
    if catalog.is_null() || out_summary.is_null() {
        return McStatus::NullArgument;
    }
    unsafe {
        *out_summary = McFlowSummary {
            sources: 0,
            saddles: 0,
            sinks: 0,
            euler_check: false,
        };
    }
    let plane = match unsafe { &(*catalog).inner } {
        Inner::Plane(c) => c,
        Inner::Sphere(_) => return McStatus::InvalidArgument,
    };
    let Some(entry) = plane.entries.get(index) else {
        return McStatus::InvalidArgument;
    };
    match catch_unwind(AssertUnwindSafe(|| morse::flow_summary(&entry.representative))) {
        Ok(flow) => {
            unsafe {
                *out_summary = McFlowSummary {
                    sources: flow.sources,
                    saddles: flow.saddles,
                    sinks: flow.sinks,
                    euler_check: flow.euler_check,
                };
            }
            McStatus::Ok
        }
        Err(_) => McStatus::InternalError,
    }
}

/// Run the published-count verification over `1..=max_edges` edges in
/// both equivalence modes and store whether the adopted mode matched
/// every published value. A `false` result is a completed verification
/// that found mismatches, not an error.
///
/// # Safety
///
/// `out_pass` must be null or valid for writing one `bool`.
#[no_mangle]
pub unsafe extern "C" fn mc_verify(max_edges: usize, out_pass: *mut bool) -> McStatus {
    if out_pass.is_null() {
        return McStatus::NullArgument;
    }
    unsafe { *out_pass = false };
    // `run_verification(0)` would succeed vacuously; reject it here the way
    // the CLI rejects `--max-edges 0`.
    if max_edges == 0 {
        return McStatus::InvalidArgument;
    }
    match catch_unwind(|| verify::run_verification(max_edges)) {
        Ok(Ok(report)) => {
            unsafe { *out_pass = report.pass() };
            McStatus::Ok
        }
        Ok(Err(err)) => status_of(&err),
        Err(_) => McStatus::InternalError,
    }
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn mc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

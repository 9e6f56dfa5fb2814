//! C ABI over `scentax`.
//!
//! Scenarios cross the boundary as opaque `ScxScenario` handles. Functions
//! that can fail return an `ScxStatus`; the message of the most recent
//! failure on the calling thread is available from `scx_last_error`.
//! Strings returned as `char *` are owned by the caller and must be released
//! with `scx_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use scentax::enumeration::{appendix2_catalog, catalog_by_name, enumerate_space};
use scentax::fca::{self, AttributeSchema};
use scentax::filters::{run_pipeline, PipelineConfig};
use scentax::notation::{format_scenario_with, parse_scenario, topology_id, Glyphs, NotationStyle};
use scentax::trajectory::{classify_tier, shortest_paths};
use scentax::{Attribute, Error, Scenario, TierLabel};

/// Result code of a fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    OutOfRange = 4,
    NotFound = 5,
    NoPath = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScxStyle {
    Bracketed = 0,
    Flat = 1,
    TopologyShort = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScxTier {
    Novice = 0,
    Developing = 1,
    ExpertAdaptive = 2,
}

/// Opaque scenario handle.
pub struct ScxScenario {
    inner: Scenario,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("NULs removed")));
}

fn fail(status: ScxStatus, msg: impl Into<String>) -> ScxStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> ScxStatus {
    match e {
        Error::Parse(_) => ScxStatus::ParseError,
        Error::UnknownLabel(_) | Error::NotInSpace => ScxStatus::NotFound,
        Error::NoPath => ScxStatus::NoPath,
        _ => ScxStatus::Internal,
    }
}

fn guard<F: FnOnce() -> ScxStatus + UnwindSafe>(f: F) -> ScxStatus {
    catch_unwind(f).unwrap_or_else(|_| fail(ScxStatus::Internal, "panic inside scentax"))
}

fn guard_ptr<T, F: FnOnce() -> *mut T + UnwindSafe>(f: F) -> *mut T {
    catch_unwind(f).unwrap_or_else(|_| {
        set_error("panic inside scentax");
        ptr::null_mut()
    })
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, ScxStatus> {
    if p.is_null() {
        return Err(fail(ScxStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(ScxStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

fn emit(out: *mut *mut ScxScenario, s: Scenario) -> ScxStatus {
    if out.is_null() {
        return fail(ScxStatus::NullPointer, "null output pointer");
    }
    // SAFETY: checked non-null above; the caller provides a writable slot.
    unsafe { *out = Box::into_raw(Box::new(ScxScenario { inner: s })) };
    ScxStatus::Ok
}

unsafe fn scenario<'a>(p: *const ScxScenario) -> Option<&'a Scenario> {
    p.as_ref().map(|h| &h.inner)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn scx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn scx_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer obtained from this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn scx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses notation into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must point to writable
/// storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn scx_scenario_parse(text: *const c_char, out: *mut *mut ScxScenario) -> ScxStatus {
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let outcome = parse_scenario(text);
        if !outcome.broken_links.is_empty() {
            return fail(ScxStatus::OutOfRange, "notation uses broken links and is outside the canonical space");
        }
        match outcome.into_result() {
            Ok(s) => emit(out, s),
            Err(diags) => {
                let msg = diags.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ");
                fail(ScxStatus::ParseError, msg)
            }
        }
    })
}

/// Copies the scenario at `index` (0..215, enumeration order) into a new handle.
///
/// # Safety
/// `out` must point to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn scx_space_get(index: usize, out: *mut *mut ScxScenario) -> ScxStatus {
    guard(|| match enumerate_space().get(index) {
        Some(s) => emit(out, *s),
        None => fail(ScxStatus::OutOfRange, format!("index {index} is outside the space")),
    })
}

/// Number of scenarios in the space.
#[no_mangle]
pub extern "C" fn scx_space_len() -> usize {
    enumerate_space().len()
}

/// Looks up a catalog row by label (`"S1"`..`"S24"`, `"T1"`..`"T5"`).
///
/// # Safety
/// `label` must be a NUL-terminated string; `out` must point to writable
/// storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn scx_catalog_get(label: *const c_char, out: *mut *mut ScxScenario) -> ScxStatus {
    guard(|| {
        let label = match read_str(label) {
            Ok(l) => l,
            Err(status) => return status,
        };
        let found = ["appendix2", "table1"].iter().find_map(|c| catalog_by_name(c)?.get(label));
        match found {
            Some(e) => emit(out, e.scenario),
            None => fail(ScxStatus::NotFound, format!("no catalog row `{label}`")),
        }
    })
}

/// Frees a handle.
///
/// # Safety
/// `s` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn scx_scenario_free(s: *mut ScxScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Renders a scenario; NULL on a NULL handle.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn scx_scenario_format(s: *const ScxScenario, style: ScxStyle, unicode: bool) -> *mut c_char {
    guard_ptr(|| {
        let Some(s) = scenario(s) else {
            set_error("null scenario handle");
            return ptr::null_mut();
        };
        let style = match style {
            ScxStyle::Bracketed => NotationStyle::Bracketed,
            ScxStyle::Flat => NotationStyle::Flat,
            ScxStyle::TopologyShort => NotationStyle::TopologyShort,
        };
        let glyphs = if unicode { Glyphs::Unicode } else { Glyphs::Ascii };
        into_c_string(format_scenario_with(s, style, glyphs))
    })
}

/// Topology id 1..8, or 0 for a NULL handle.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn scx_scenario_topology(s: *const ScxScenario) -> u8 {
    scenario(s).map_or(0, |s| topology_id(s.shortcuts))
}

/// Atomic attributes as a bit mask. Bit `i` is set when attribute `i` of
/// entry:P, entry:S, mon, ctl, exit:P, exit:S, sc:OE, sc:OI, sc:FI holds.
///
/// # Safety
/// `s` must be NULL or a live handle; NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn scx_scenario_attributes(s: *const ScxScenario) -> u16 {
    scenario(s).map_or(0, |s| {
        let v = s.attributes();
        Attribute::ALL.iter().enumerate().filter(|(_, a)| v.has(**a)).fold(0, |m, (i, _)| m | (1 << i))
    })
}

/// Whether two handles hold the same configuration.
///
/// # Safety
/// Both arguments must be NULL or live handles.
#[no_mangle]
pub unsafe extern "C" fn scx_scenario_equal(a: *const ScxScenario, b: *const ScxScenario) -> bool {
    matches!((scenario(a), scenario(b)), (Some(x), Some(y)) if x == y)
}

/// Hamming distance over the nine atomic attributes.
///
/// # Safety
/// Both arguments must be live handles; a NULL yields `UINT32_MAX`.
#[no_mangle]
pub unsafe extern "C" fn scx_scenario_distance(a: *const ScxScenario, b: *const ScxScenario) -> u32 {
    match (scenario(a), scenario(b)) {
        (Some(x), Some(y)) => x.attributes().hamming(y.attributes()),
        _ => u32::MAX,
    }
}

/// Tier of the nearest priority-catalog rows. `exact` receives whether the
/// configuration is itself in the catalog; either out pointer may be NULL.
///
/// # Safety
/// `s` must be a live handle; non-NULL out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn scx_classify(s: *const ScxScenario, tier: *mut ScxTier, exact: *mut bool) -> ScxStatus {
    guard(|| {
        let Some(s) = scenario(s) else { return fail(ScxStatus::NullPointer, "null scenario handle") };
        match classify_tier(s, appendix2_catalog()) {
            Ok(c) => {
                if !tier.is_null() {
                    *tier = match c.tier {
                        TierLabel::Novice => ScxTier::Novice,
                        TierLabel::Developing => ScxTier::Developing,
                        TierLabel::ExpertAdaptive => ScxTier::ExpertAdaptive,
                    };
                }
                if !exact.is_null() {
                    *exact = c.exact;
                }
                if let Some(w) = c.warning {
                    set_error(w);
                }
                ScxStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Number of hops of a shortest path between two scenarios through the
/// whole space, each hop changing at most `radius` attributes.
///
/// # Safety
/// `a` and `b` must be live handles; `hops` must be writable.
#[no_mangle]
pub unsafe extern "C" fn scx_shortest_hops(
    a: *const ScxScenario,
    b: *const ScxScenario,
    radius: u32,
    hops: *mut usize,
) -> ScxStatus {
    guard(|| {
        let (Some(x), Some(y)) = (scenario(a), scenario(b)) else {
            return fail(ScxStatus::NullPointer, "null scenario handle");
        };
        if hops.is_null() {
            return fail(ScxStatus::NullPointer, "null output pointer");
        }
        match shortest_paths(x, y, &enumerate_space(), radius) {
            Ok(paths) => {
                *hops = paths[0].len() - 1;
                ScxStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Stage reports of the shipped pipeline over the full space, as JSON.
#[no_mangle]
pub extern "C" fn scx_pipeline_json() -> *mut c_char {
    guard_ptr(|| match run_pipeline(&PipelineConfig::shipped(), &enumerate_space()) {
        Ok(run) => into_c_string(run.to_json()),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    })
}

/// Concept lattice of a built-in catalog (`"appendix2"` or `"table1"`)
/// under the default attribute schema, as Graphviz DOT.
///
/// # Safety
/// `catalog` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn scx_lattice_dot(catalog: *const c_char) -> *mut c_char {
    guard_ptr(|| {
        let Ok(name) = read_str(catalog) else { return ptr::null_mut() };
        let Some(cat) = catalog_by_name(name) else {
            set_error(format!("unknown catalog `{name}`"));
            return ptr::null_mut();
        };
        let built = fca::catalog_context(cat, &AttributeSchema::default())
            .and_then(|ctx| Ok((fca::build_lattice(fca::all_concepts(&ctx))?, ctx)));
        match built {
            Ok((lat, ctx)) => into_c_string(fca::lattice_to_dot(&ctx, &lat)),
            Err(e) => {
                set_error(e.to_string());
                ptr::null_mut()
            }
        }
    })
}

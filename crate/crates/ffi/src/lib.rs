//! C ABI over `idri-core`.
//!
//! Graphs live behind an opaque `IdriGraph` handle created by one of the
//! `idri_graph_*` constructors and released with `idri_graph_free`. Every
//! fallible call returns an `IdriStatus`; on failure a message is available
//! from `idri_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use idri_core::metric::Rational;
use idri_core::{CitationGraph, Error, IncludeRule, MetricStatus, PaperId, RefMode};

pub const IDRI_MODE_DATASET: u32 = 0;
pub const IDRI_MODE_DECLARED: u32 = 1;

pub const IDRI_INCLUDE_S_GE_1: u32 = 0;
pub const IDRI_INCLUDE_S_GE_2: u32 = 1;

pub const IDRI_METRIC_OK: i32 = 0;
pub const IDRI_METRIC_INSUFFICIENT_CITATIONS: i32 = 1;
pub const IDRI_METRIC_EMPTY_DENOMINATOR: i32 = 2;

pub const IDRI_AGGREGATE_OK: i32 = 0;
pub const IDRI_AGGREGATE_INSUFFICIENT_GROUP: i32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdriStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    EmptyGraph = 5,
    UnknownPaper = 6,
    MissingDeclaredCount = 7,
    InvalidArgument = 8,
    CapExceeded = 9,
    NoAggregableMembers = 10,
    Overflow = 11,
    Panic = 99,
}

/// Opaque graph handle.
pub struct IdriGraph {
    inner: CitationGraph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IdriFraction {
    pub num: i64,
    pub den: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IdriFocalStats {
    pub s: u64,
    pub d: u64,
    pub k: u64,
    pub q: u64,
}

/// Per-paper metrics. Fractions whose `has_*` flag is false are zeroed.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IdriMetric {
    pub stats: IdriFocalStats,
    /// One of the `IDRI_METRIC_*` constants.
    pub status: i32,
    pub has_xm: bool,
    pub xm: IdriFraction,
    pub has_index: bool,
    pub xm_norm: IdriFraction,
    pub idri: IdriFraction,
    /// `idri` as a double, NaN when absent.
    pub idri_value: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IdriAggregate {
    pub n: u64,
    pub sum_s: u64,
    pub sum_d: u64,
    pub sum_q: u64,
    pub sum_k: u64,
    /// One of the `IDRI_AGGREGATE_*` constants.
    pub status: i32,
    pub has_xm_joint: bool,
    pub xm_joint: IdriFraction,
    pub has_index: bool,
    pub xm_norm_joint: IdriFraction,
    pub idri_joint: IdriFraction,
    pub idri_value: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

struct Failure(IdriStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Io { .. } => IdriStatus::Io,
            Error::Csv(_)
            | Error::Malformed { .. }
            | Error::InvalidId(_)
            | Error::ConflictingMetadata(_) => IdriStatus::Parse,
            Error::EmptyGraph => IdriStatus::EmptyGraph,
            Error::UnknownPaper(_) => IdriStatus::UnknownPaper,
            Error::MissingDeclaredCount(_) => IdriStatus::MissingDeclaredCount,
            Error::EnumerationCap { .. } => IdriStatus::CapExceeded,
            Error::NoAggregableMembers => IdriStatus::NoAggregableMembers,
            Error::DeclaredBelowOutDegree { .. }
            | Error::ZeroDenominator
            | Error::Degenerate(_)
            | Error::InvalidConfig(_)
            | Error::TooFewQualifying { .. }
            | Error::UndefinedCorrelation(_) => IdriStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: IdriStatus, message: impl Into<String>) -> Failure {
    Failure(status, message.into())
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> IdriStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            IdriStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            IdriStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(IdriStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(IdriStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn graph_ref<'a>(g: *const IdriGraph) -> Result<&'a CitationGraph, Failure> {
    g.as_ref()
        .map(|g| &g.inner)
        .ok_or_else(|| fail(IdriStatus::NullPointer, "graph handle is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| fail(IdriStatus::NullPointer, "output pointer is null"))
}

fn mode(raw: u32) -> Result<RefMode, Failure> {
    match raw {
        IDRI_MODE_DATASET => Ok(RefMode::Dataset),
        IDRI_MODE_DECLARED => Ok(RefMode::Declared),
        other => Err(fail(
            IdriStatus::InvalidArgument,
            format!("unknown mode {other}"),
        )),
    }
}

fn fraction(r: &Rational) -> Result<IdriFraction, Failure> {
    match (i64::try_from(*r.numer()), i64::try_from(*r.denom())) {
        (Ok(num), Ok(den)) => Ok(IdriFraction { num, den }),
        _ => Err(fail(
            IdriStatus::Overflow,
            format!("{r} does not fit in 64 bits"),
        )),
    }
}

fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn store_graph(out: *mut *mut IdriGraph, graph: CitationGraph) -> Result<(), Failure> {
    let slot = unsafe { out_ref(out)? };
    *slot = Box::into_raw(Box::new(IdriGraph { inner: graph }));
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next `idri_*` call on the same thread.
#[no_mangle]
pub extern "C" fn idri_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Loads an edge CSV (`citing_id,cited_id`).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn idri_graph_from_csv_path(
    path: *const c_char,
    out: *mut *mut IdriGraph,
) -> IdriStatus {
    guard(|| {
        let path = text(path, "path")?;
        let file =
            std::fs::File::open(path).map_err(|e| fail(IdriStatus::Io, format!("{path}: {e}")))?;
        let (graph, _) = idri_core::ingest_edges_csv(std::io::BufReader::new(file))?;
        store_graph(out, graph)
    })
}

/// Builds a graph from parallel arrays of `len` citing and cited ids.
///
/// # Safety
/// `citing` and `cited` must each point to `len` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn idri_graph_from_edges(
    citing: *const *const c_char,
    cited: *const *const c_char,
    len: usize,
    out: *mut *mut IdriGraph,
) -> IdriStatus {
    guard(|| {
        if len > 0 && (citing.is_null() || cited.is_null()) {
            return Err(fail(IdriStatus::NullPointer, "edge arrays are null"));
        }
        let mut edges = Vec::with_capacity(len);
        for ix in 0..len {
            let a = PaperId::new(text(*citing.add(ix), "citing id")?)?;
            let b = PaperId::new(text(*cited.add(ix), "cited id")?)?;
            edges.push((a, b));
        }
        let (graph, _) = CitationGraph::from_edges(edges)?;
        store_graph(out, graph)
    })
}

/// Generates a preferential-attachment citation network.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn idri_graph_synth(
    num_papers: usize,
    refs_per_paper: usize,
    uniform_mix: f64,
    seed: u64,
    out: *mut *mut IdriGraph,
) -> IdriStatus {
    guard(|| {
        let graph = idri_core::generate(&idri_core::SynthConfig {
            num_papers,
            refs_per_paper,
            uniform_mix,
            seed,
        })?;
        store_graph(out, graph)
    })
}

/// Applies a metadata CSV (`paper_id,group,ref_count`); declared reference
/// counts become available to `IDRI_MODE_DECLARED`.
///
/// # Safety
/// `graph` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn idri_graph_load_metadata(
    graph: *mut IdriGraph,
    path: *const c_char,
) -> IdriStatus {
    guard(|| {
        let graph = graph
            .as_mut()
            .ok_or_else(|| fail(IdriStatus::NullPointer, "graph handle is null"))?;
        let path = text(path, "path")?;
        idri_core::cli::load_metadata(&mut graph.inner, std::path::Path::new(path))?;
        Ok(())
    })
}

/// # Safety
/// `graph` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idri_graph_free(graph: *mut IdriGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn idri_graph_paper_count(graph: *const IdriGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.len())
}

/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn idri_graph_edge_count(graph: *const IdriGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// # Safety
/// `graph` must be a live handle, `id` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn idri_focal_stats(
    graph: *const IdriGraph,
    id: *const c_char,
    ref_mode: u32,
    out: *mut IdriFocalStats,
) -> IdriStatus {
    guard(|| {
        let st = idri_core::focal_stats(graph_ref(graph)?, text(id, "id")?, mode(ref_mode)?)?;
        *out_ref(out)? = IdriFocalStats {
            s: st.s,
            d: st.d,
            k: st.k,
            q: st.q,
        };
        Ok(())
    })
}

/// # Safety
/// Same as [`idri_focal_stats`].
#[no_mangle]
pub unsafe extern "C" fn idri_metric(
    graph: *const IdriGraph,
    id: *const c_char,
    ref_mode: u32,
    out: *mut IdriMetric,
) -> IdriStatus {
    guard(|| {
        let st = idri_core::focal_stats(graph_ref(graph)?, text(id, "id")?, mode(ref_mode)?)?;
        let m = idri_core::compute_metric(&st);
        let mut res = IdriMetric {
            stats: IdriFocalStats {
                s: st.s,
                d: st.d,
                k: st.k,
                q: st.q,
            },
            status: match m.status {
                MetricStatus::Ok => IDRI_METRIC_OK,
                MetricStatus::InsufficientCitations => IDRI_METRIC_INSUFFICIENT_CITATIONS,
                MetricStatus::EmptyDenominator => IDRI_METRIC_EMPTY_DENOMINATOR,
            },
            idri_value: f64::NAN,
            ..IdriMetric::default()
        };
        if let Some(xm) = &m.xm {
            res.has_xm = true;
            res.xm = fraction(xm)?;
        }
        if let (Some(norm), Some(idri)) = (&m.xm_norm, &m.idri) {
            res.has_index = true;
            res.xm_norm = fraction(norm)?;
            res.idri = fraction(idri)?;
            res.idri_value = to_f64(idri);
        }
        *out_ref(out)? = res;
        Ok(())
    })
}

/// Pools the papers named in `ids` into one group.
///
/// # Safety
/// `ids` must point to `len` NUL-terminated strings; `graph` must be live and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn idri_aggregate(
    graph: *const IdriGraph,
    ids: *const *const c_char,
    len: usize,
    ref_mode: u32,
    include_rule: u32,
    out: *mut IdriAggregate,
) -> IdriStatus {
    guard(|| {
        let g = graph_ref(graph)?;
        let mode = mode(ref_mode)?;
        let rule = match include_rule {
            IDRI_INCLUDE_S_GE_1 => IncludeRule::AtLeastOneCiter,
            IDRI_INCLUDE_S_GE_2 => IncludeRule::AtLeastTwoCiters,
            other => {
                return Err(fail(
                    IdriStatus::InvalidArgument,
                    format!("unknown include rule {other}"),
                ))
            }
        };
        if len > 0 && ids.is_null() {
            return Err(fail(IdriStatus::NullPointer, "id array is null"));
        }
        let mut members = Vec::with_capacity(len);
        for ix in 0..len {
            members.push(idri_core::focal_stats(g, text(*ids.add(ix), "id")?, mode)?);
        }
        let agg = idri_core::aggregate("group", &members, rule)?;
        let mut res = IdriAggregate {
            n: agg.n,
            sum_s: agg.sum_s,
            sum_d: agg.sum_d,
            sum_q: agg.sum_q,
            sum_k: agg.sum_k,
            status: match agg.status {
                idri_core::AggregateStatus::Ok => IDRI_AGGREGATE_OK,
                idri_core::AggregateStatus::InsufficientGroup => IDRI_AGGREGATE_INSUFFICIENT_GROUP,
            },
            idri_value: f64::NAN,
            ..IdriAggregate::default()
        };
        if let Some(xm) = &agg.xm_joint {
            res.has_xm_joint = true;
            res.xm_joint = fraction(xm)?;
        }
        if let (Some(norm), Some(idri)) = (&agg.xm_norm_joint, &agg.idri_joint) {
            res.has_index = true;
            res.xm_norm_joint = fraction(norm)?;
            res.idri_joint = fraction(idri)?;
            res.idri_value = to_f64(idri);
        }
        *out_ref(out)? = res;
        Ok(())
    })
}

/// Brute-force X-motif count for `id`; refuses graphs above `cap` papers.
///
/// # Safety
/// Same as [`idri_focal_stats`].
#[no_mangle]
pub unsafe extern "C" fn idri_oracle_q(
    graph: *const IdriGraph,
    id: *const c_char,
    cap: usize,
    out: *mut u64,
) -> IdriStatus {
    guard(|| {
        let q = idri_core::enumerate_q(graph_ref(graph)?, text(id, "id")?, cap)?;
        *out_ref(out)? = q;
        Ok(())
    })
}

/// Mediant (a + c) / (b + d), reduced.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idri_mediant(
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    out: *mut IdriFraction,
) -> IdriStatus {
    guard(|| {
        let m = idri_core::mediant(a, b, c, d)?;
        *out_ref(out)? = fraction(&m)?;
        Ok(())
    })
}

/// Per-paper report in the CLI's CSV layout, as a newly allocated string to
/// be released with [`idri_string_free`].
///
/// # Safety
/// `graph` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn idri_compute_csv(
    graph: *const IdriGraph,
    ref_mode: u32,
    places: usize,
    include_uncited: bool,
    out: *mut *mut c_char,
) -> IdriStatus {
    guard(|| {
        let rows = idri_core::cli::compute_rows(
            graph_ref(graph)?,
            mode(ref_mode)?,
            include_uncited,
            places,
        )?;
        let bytes = idri_core::cli::render_rows(&rows, idri_core::cli::Format::Csv, &[])?;
        let s = CString::new(bytes)
            .map_err(|_| fail(IdriStatus::InvalidUtf8, "report contains NUL"))?;
        *out_ref(out)? = s.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idri_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn idri_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

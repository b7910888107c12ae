//! C ABI for potgraph.
//!
//! Every fallible function returns a [`PgStatus`] and writes its results
//! through out-pointers. Objects cross the boundary as opaque handles
//! ([`PgSequence`], [`PgGraph`], [`PgSigmaRecord`]) that the caller releases
//! with the matching `*_free` function. Variable-length results are copied
//! into caller-provided buffers: pass a capacity and receive the required
//! length, so a first call with `cap = 0` sizes the buffer.
//!
//! Pointer contract for all functions: handle and out-pointer arguments must
//! be null or point to valid, properly aligned objects of the declared type;
//! buffers must hold at least `cap` elements. Null where a value is required
//! yields [`PgStatus::NullPointer`]. Handles are not thread-safe to mutate
//! concurrently, but distinct handles may be used from different threads.
//! After a failure, [`pg_last_error`] returns a message for the calling
//! thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use potgraph::extension::{extend_cycle, ExtensionContext};
use potgraph::graph::contains_pattern;
use potgraph::sigma::{sigma_oracle, OracleOptions, SigmaRecord, SigmaValue};
use potgraph::switchspace::{apply_two_switch, is_forcibly, is_potentially, Forcible, Potential};
use potgraph::{
    CycleWitness, DegreeSequence, Error, PatternGraph, SearchBudget, SimpleGraph, TwoSwitchMove,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    NotGraphical = 3,
    InvalidMove = 4,
    BudgetExceeded = 5,
    Precondition = 6,
    /// Cycle extension visited every realization without success.
    ExtensionExhausted = 7,
    /// The output buffer is shorter than the reported required length.
    BufferTooSmall = 8,
    /// The requested optional value is absent.
    NotFound = 9,
    /// A Rust panic was caught at the boundary.
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgPatternKind {
    Cycle = 0,
    Clique = 1,
    Matching = 2,
}

/// C_k, K_k or pK_2, with `size` being k or p.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct PgPattern {
    pub kind: PgPatternKind,
    pub size: u32,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgAnswer {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

/// Search caps. Pass a null pointer wherever a budget is accepted to use the
/// library defaults.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct PgBudget {
    pub max_states: u64,
    pub max_moves: u64,
}

/// Opaque degree sequence handle.
pub struct PgSequence(DegreeSequence);

/// Opaque graph handle.
pub struct PgGraph(SimpleGraph);

/// Opaque oracle result handle.
pub struct PgSigmaRecord(SigmaRecord);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

struct Fail(PgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidInput(_) => PgStatus::InvalidInput,
            Error::NotGraphical(_) => PgStatus::NotGraphical,
            Error::InvalidMove(_) => PgStatus::InvalidMove,
            Error::BudgetExceeded { .. } => PgStatus::BudgetExceeded,
            Error::Precondition(_) => PgStatus::Precondition,
            Error::ExtensionExhausted { .. } => PgStatus::ExtensionExhausted,
        };
        Fail(status, e.to_string())
    }
}

type Outcome = Result<(), Fail>;

fn guard(f: impl FnOnce() -> Outcome) -> PgStatus {
    let (status, message) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => (PgStatus::Ok, String::new()),
        Ok(Err(Fail(status, message))) => (status, message),
        Err(_) => (PgStatus::Panic, "panic inside potgraph".to_string()),
    };
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
    status
}

fn null(what: &str) -> Fail {
    Fail(PgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn get_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Outcome {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Copies `src` into `buf`, always reporting the full length in `needed`.
unsafe fn copy_out<T: Copy>(src: &[T], buf: *mut T, cap: usize, needed: *mut usize) -> Outcome {
    put(needed, src.len(), "needed")?;
    if cap < src.len() {
        return Err(Fail(
            PgStatus::BufferTooSmall,
            format!("buffer holds {cap}, need {}", src.len()),
        ));
    }
    if !src.is_empty() {
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    Ok(())
}

/// Copies `text` plus a terminating NUL; `needed` counts the NUL.
unsafe fn copy_str(text: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Outcome {
    let mut bytes: Vec<c_char> = text.bytes().map(|b| b as c_char).collect();
    bytes.push(0);
    copy_out(&bytes, buf, cap, needed)
}

fn pattern(p: PgPattern) -> Result<PatternGraph, Fail> {
    let size = p.size as usize;
    Ok(match p.kind {
        PgPatternKind::Cycle => PatternGraph::cycle(size)?,
        PgPatternKind::Clique => PatternGraph::clique(size)?,
        PgPatternKind::Matching => PatternGraph::matching(size)?,
    })
}

unsafe fn budget(b: *const PgBudget) -> Result<SearchBudget, Fail> {
    match b.as_ref() {
        None => Ok(SearchBudget::default()),
        Some(b) => Ok(SearchBudget::new(b.max_states, b.max_moves)?),
    }
}

/// Static description of a status code. Never null; do not free.
#[no_mangle]
pub extern "C" fn pg_status_message(status: PgStatus) -> *const c_char {
    let text: &'static CStr = match status {
        PgStatus::Ok => c"ok",
        PgStatus::NullPointer => c"null pointer argument",
        PgStatus::InvalidInput => c"invalid input",
        PgStatus::NotGraphical => c"sequence is not graphical",
        PgStatus::InvalidMove => c"invalid 2-switch",
        PgStatus::BudgetExceeded => c"search budget exceeded",
        PgStatus::Precondition => c"precondition violated",
        PgStatus::ExtensionExhausted => c"cycle extension exhausted the realization space",
        PgStatus::BufferTooSmall => c"buffer too small",
        PgStatus::NotFound => c"value not present",
        PgStatus::Panic => c"internal panic",
    };
    text.as_ptr()
}

/// Message for the most recent failure on this thread (empty after a
/// success), NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pg_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> PgStatus {
    let message = LAST_ERROR.with(|slot| slot.borrow().clone());
    match copy_str(&message, buf, cap, needed) {
        Ok(()) => PgStatus::Ok,
        Err(Fail(status, _)) => status,
    }
}

// Sequences

/// Builds a sequence from `len` terms, sorting them nonincreasing.
#[no_mangle]
pub unsafe extern "C" fn pg_sequence_new(
    terms: *const i64,
    len: usize,
    out: *mut *mut PgSequence,
) -> PgStatus {
    guard(|| {
        let raw: &[i64] = if len == 0 {
            &[]
        } else {
            if terms.is_null() {
                return Err(null("terms"));
            }
            std::slice::from_raw_parts(terms, len)
        };
        let s = DegreeSequence::normalize(raw)?;
        put(out, boxed(PgSequence(s)), "out")
    })
}

/// Parses text such as "3,3,2,2,2" or "(3 3 2 2 2)".
#[no_mangle]
pub unsafe extern "C" fn pg_sequence_parse(text: *const c_char, out: *mut *mut PgSequence) -> PgStatus {
    guard(|| {
        let text = get(text, "text")?;
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Fail(PgStatus::InvalidInput, "text is not UTF-8".into()))?;
        let s: DegreeSequence = text.parse()?;
        put(out, boxed(PgSequence(s)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn pg_sequence_free(s: *mut PgSequence) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn pg_sequence_len(s: *const PgSequence, out: *mut usize) -> PgStatus {
    guard(|| put(out, get(s, "sequence")?.0.len(), "out"))
}

/// Copies the terms (nonincreasing) into `buf`.
#[no_mangle]
pub unsafe extern "C" fn pg_sequence_terms(
    s: *const PgSequence,
    buf: *mut u32,
    cap: usize,
    needed: *mut usize,
) -> PgStatus {
    guard(|| copy_out(get(s, "sequence")?.0.terms(), buf, cap, needed))
}

#[no_mangle]
pub unsafe extern "C" fn pg_sequence_sum(s: *const PgSequence, out: *mut u64) -> PgStatus {
    guard(|| put(out, get(s, "sequence")?.0.sigma_sum(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn pg_sequence_is_graphical(s: *const PgSequence, out: *mut bool) -> PgStatus {
    guard(|| put(out, get(s, "sequence")?.0.is_graphical(), "out"))
}

/// One realization; vertex i receives the i-th term.
#[no_mangle]
pub unsafe extern "C" fn pg_sequence_realize(s: *const PgSequence, out: *mut *mut PgGraph) -> PgStatus {
    guard(|| {
        let g = get(s, "sequence")?.0.realize()?;
        put(out, boxed(PgGraph(g)), "out")
    })
}

// Graphs

/// Edgeless graph on `n` vertices (at most 32).
#[no_mangle]
pub unsafe extern "C" fn pg_graph_new(n: usize, out: *mut *mut PgGraph) -> PgStatus {
    guard(|| put(out, boxed(PgGraph(SimpleGraph::new(n)?)), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn pg_graph_clone(g: *const PgGraph, out: *mut *mut PgGraph) -> PgStatus {
    guard(|| put(out, boxed(PgGraph(get(g, "graph")?.0)), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn pg_graph_free(g: *mut PgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn pg_graph_order(g: *const PgGraph, out: *mut usize) -> PgStatus {
    guard(|| put(out, get(g, "graph")?.0.order(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn pg_graph_edge_count(g: *const PgGraph, out: *mut usize) -> PgStatus {
    guard(|| put(out, get(g, "graph")?.0.edge_count(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn pg_graph_add_edge(g: *mut PgGraph, u: usize, v: usize) -> PgStatus {
    guard(|| Ok(get_mut(g, "graph")?.0.add_edge(u, v)?))
}

#[no_mangle]
pub unsafe extern "C" fn pg_graph_remove_edge(g: *mut PgGraph, u: usize, v: usize) -> PgStatus {
    guard(|| Ok(get_mut(g, "graph")?.0.remove_edge(u, v)?))
}

#[no_mangle]
pub unsafe extern "C" fn pg_graph_has_edge(
    g: *const PgGraph,
    u: usize,
    v: usize,
    out: *mut bool,
) -> PgStatus {
    guard(|| put(out, get(g, "graph")?.0.has_edge(u, v), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn pg_graph_degree(g: *const PgGraph, v: usize, out: *mut usize) -> PgStatus {
    guard(|| {
        let g = &get(g, "graph")?.0;
        if v >= g.order() {
            return Err(Fail(PgStatus::InvalidInput, format!("vertex {v} out of range")));
        }
        put(out, g.degree(v), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn pg_graph_degree_sequence(
    g: *const PgGraph,
    out: *mut *mut PgSequence,
) -> PgStatus {
    guard(|| put(out, boxed(PgSequence(get(g, "graph")?.0.degree_sequence())), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn pg_graph_contains(
    g: *const PgGraph,
    h: PgPattern,
    out: *mut bool,
) -> PgStatus {
    guard(|| put(out, contains_pattern(&get(g, "graph")?.0, pattern(h)?), "out"))
}

/// Applies the 2-switch removing `ab`, `cd` and inserting `ac`, `bd` in place.
#[no_mangle]
pub unsafe extern "C" fn pg_graph_two_switch(
    g: *mut PgGraph,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> PgStatus {
    guard(|| {
        let g = get_mut(g, "graph")?;
        g.0 = apply_two_switch(&g.0, TwoSwitchMove::new(a, b, c, d))?;
        Ok(())
    })
}

/// Extends the cycle `cycle[0..len]` of `g` by one vertex. On success
/// `out_graph` receives the new realization and `out_cycle` (capacity at least
/// `len + 1`) the new cycle.
#[no_mangle]
pub unsafe extern "C" fn pg_extend_cycle(
    g: *const PgGraph,
    cycle: *const usize,
    len: usize,
    x: usize,
    w: usize,
    limits: *const PgBudget,
    out_graph: *mut *mut PgGraph,
    out_cycle: *mut usize,
) -> PgStatus {
    guard(|| {
        let g = get(g, "graph")?.0;
        if cycle.is_null() {
            return Err(null("cycle"));
        }
        if out_cycle.is_null() {
            return Err(null("out_cycle"));
        }
        let vertices = std::slice::from_raw_parts(cycle, len).to_vec();
        let ctx = ExtensionContext::new(g, CycleWitness::new(vertices)?, x, w)?;
        let ext = extend_cycle(&ctx, budget(limits)?)?;
        ptr::copy_nonoverlapping(ext.cycle.vertices().as_ptr(), out_cycle, ext.cycle.len());
        put(out_graph, boxed(PgGraph(ext.graph)), "out_graph")
    })
}

// Decisions

/// Does some realization of `s` contain `h`? With a non-null `witness`, a
/// containing realization is returned on `Yes` (null otherwise).
#[no_mangle]
pub unsafe extern "C" fn pg_is_potentially(
    s: *const PgSequence,
    h: PgPattern,
    limits: *const PgBudget,
    answer: *mut PgAnswer,
    witness: *mut *mut PgGraph,
) -> PgStatus {
    guard(|| {
        let result = is_potentially(&get(s, "sequence")?.0, pattern(h)?, budget(limits)?)?;
        let (a, g) = match result {
            Potential::Yes(g) => (PgAnswer::Yes, Some(g)),
            Potential::No => (PgAnswer::No, None),
            Potential::Unknown => (PgAnswer::Unknown, None),
        };
        if !witness.is_null() {
            witness.write(g.map_or(ptr::null_mut(), |g| boxed(PgGraph(g))));
        }
        put(answer, a, "answer")
    })
}

/// Does every realization of `s` contain `h`? With a non-null `witness`, an
/// avoiding realization is returned on `No` (null otherwise).
#[no_mangle]
pub unsafe extern "C" fn pg_is_forcibly(
    s: *const PgSequence,
    h: PgPattern,
    limits: *const PgBudget,
    answer: *mut PgAnswer,
    witness: *mut *mut PgGraph,
) -> PgStatus {
    guard(|| {
        let result = is_forcibly(&get(s, "sequence")?.0, pattern(h)?, budget(limits)?)?;
        let (a, g) = match result {
            Forcible::Yes => (PgAnswer::Yes, None),
            Forcible::No(g) => (PgAnswer::No, Some(g)),
            Forcible::Unknown => (PgAnswer::Unknown, None),
        };
        if !witness.is_null() {
            witness.write(g.map_or(ptr::null_mut(), |g| boxed(PgGraph(g))));
        }
        put(answer, a, "answer")
    })
}

// Oracle records

/// Brute-force σ(h, n). `jobs = 0` uses every available core.
#[no_mangle]
pub unsafe extern "C" fn pg_sigma_oracle(
    h: PgPattern,
    n: usize,
    limits: *const PgBudget,
    jobs: usize,
    out: *mut *mut PgSigmaRecord,
) -> PgStatus {
    guard(|| {
        let mut opts = OracleOptions { budget: budget(limits)?, ..OracleOptions::default() };
        if jobs > 0 {
            opts.jobs = jobs;
        }
        let record = sigma_oracle(pattern(h)?, n, &opts)?;
        put(out, boxed(PgSigmaRecord(record)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn pg_record_free(r: *mut PgSigmaRecord) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Writes σ to `value`; `impossible` is set when H has more vertices than n
/// (and `value` is then 0).
#[no_mangle]
pub unsafe extern "C" fn pg_record_sigma(
    r: *const PgSigmaRecord,
    value: *mut u64,
    impossible: *mut bool,
) -> PgStatus {
    guard(|| {
        let (v, imp) = match get(r, "record")?.0.sigma {
            SigmaValue::Value(v) => (v, false),
            SigmaValue::Impossible => (0, true),
        };
        put(value, v, "value")?;
        put(impossible, imp, "impossible")
    })
}

/// True when no sequence was left undecided by the budget.
#[no_mangle]
pub unsafe extern "C" fn pg_record_is_certified(r: *const PgSigmaRecord, out: *mut bool) -> PgStatus {
    guard(|| put(out, get(r, "record")?.0.is_certified(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn pg_record_counts(
    r: *const PgSigmaRecord,
    sequences_checked: *mut u64,
    unknown: *mut u64,
) -> PgStatus {
    guard(|| {
        let r = &get(r, "record")?.0;
        put(sequences_checked, r.sequences_checked, "sequences_checked")?;
        put(unknown, r.unknown_count, "unknown")
    })
}

/// The extremal sequence, or `NotFound` when there is none.
#[no_mangle]
pub unsafe extern "C" fn pg_record_witness(r: *const PgSigmaRecord, out: *mut *mut PgSequence) -> PgStatus {
    guard(|| match &get(r, "record")?.0.witness {
        Some(w) => put(out, boxed(PgSequence(w.clone())), "out"),
        None => Err(Fail(PgStatus::NotFound, "record has no witness".into())),
    })
}

/// The record as JSON, NUL-terminated; `needed` counts the NUL.
#[no_mangle]
pub unsafe extern "C" fn pg_record_to_json(
    r: *const PgSigmaRecord,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> PgStatus {
    guard(|| copy_str(&get(r, "record")?.0.to_json(), buf, cap, needed))
}

//! Constructive cycle extension: from a realization containing a k-cycle and
//! an outside vertex `x` with `d(x) >= floor(k/2) + 1` (plus a cycle vertex of
//! degree at least 3), build a realization of the same sequence containing a
//! (k+1)-cycle.
//!
//! The guided steps below are the explicit insertions and interchanges of the
//! extension argument. Cycle positions are 1-based and wrap (`w(k + i) == w(i)`).
//! When no guided step applies, a bounded 2-switch search over same-sequence
//! realizations finishes the job.

use crate::error::{Error, Result};
use crate::graph::{find_cycle, CycleWitness, SimpleGraph};
use crate::switchspace::{apply_two_switch, RealizationWalk, SearchBudget, TwoSwitchMove};

/// Which step produced the (k+1)-cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    /// The input graph already had a (k+1)-cycle.
    AlreadyPresent,
    /// An outside vertex adjacent to two consecutive cycle vertices.
    Insert,
    /// One interchange moving a cycle edge onto an outside edge.
    Swap,
    /// Routing through an outside edge `xy`, possibly followed by a swap.
    Route,
    /// The interchange dropping `w_{i+1}` and routing through `x_1 x`.
    PendantPair,
    /// Pulling `x` onto the cycle first, then one of the above.
    Attach,
    /// Exhaustive same-sequence search.
    Fallback,
}

/// Result of an extension step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleExtension {
    pub graph: SimpleGraph,
    pub cycle: CycleWitness,
    pub strategy: Strategy,
    /// Interchanges applied to the input, in order.
    pub moves: Vec<TwoSwitchMove>,
}

/// Inputs satisfying the extension hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionContext {
    graph: SimpleGraph,
    cycle: CycleWitness,
    x: usize,
    w: usize,
}

impl ExtensionContext {
    pub fn new(graph: SimpleGraph, cycle: CycleWitness, x: usize, w: usize) -> Result<Self> {
        let k = cycle.len();
        if k < 4 {
            return Err(Error::Precondition(format!("cycle length {k} < 4")));
        }
        if !cycle.is_valid_in(&graph) {
            return Err(Error::Precondition("cycle witness is not a cycle of the graph".into()));
        }
        if x >= graph.order() || cycle.contains(x) {
            return Err(Error::Precondition(format!("x = {x} must be a vertex off the cycle")));
        }
        if !cycle.contains(w) {
            return Err(Error::Precondition(format!("w = {w} must lie on the cycle")));
        }
        if graph.degree(x) < k / 2 + 1 {
            return Err(Error::Precondition(format!(
                "d(x) = {} < floor({k}/2) + 1 = {}",
                graph.degree(x),
                k / 2 + 1
            )));
        }
        if graph.degree(w) < 3 {
            return Err(Error::Precondition(format!("d(w) = {} < 3", graph.degree(w))));
        }
        Ok(Self { graph, cycle, x, w })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn cycle(&self) -> &CycleWitness {
        &self.cycle
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn w(&self) -> usize {
        self.w
    }
}

/// `[w_r, w_{r+1}, .., w_{r+k-1}]`.
fn rotated(c: &CycleWitness, r: usize) -> Vec<usize> {
    (0..c.len()).map(|i| c.w(r + i)).collect()
}

/// `w_r, extra.., w_{r+1}, .., w_{r+k-1}`.
fn inserted_after(c: &CycleWitness, r: usize, extra: &[usize]) -> CycleWitness {
    let rot = rotated(c, r);
    let mut v = vec![rot[0]];
    v.extend_from_slice(extra);
    v.extend_from_slice(&rot[1..]);
    CycleWitness::new(v).expect("distinct vertices")
}

/// `w_r, extra.., w_{r+2}, .., w_{r+k-1}` (drops `w_{r+1}`).
fn bypassing_next(c: &CycleWitness, r: usize, extra: &[usize]) -> CycleWitness {
    let rot = rotated(c, r);
    let mut v = vec![rot[0]];
    v.extend_from_slice(extra);
    v.extend_from_slice(&rot[2..]);
    CycleWitness::new(v).expect("distinct vertices")
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what.to_string()))
    }
}

fn check_outside_edge(g: &SimpleGraph, c: &CycleWitness, x: usize, y: usize) -> Result<()> {
    require(x < g.order() && y < g.order(), "vertex out of range")?;
    require(!c.contains(x) && !c.contains(y), "x and y must be off the cycle")?;
    require(x != y && g.has_edge(x, y), "xy must be an edge")
}

/// If `x` (off the cycle) is adjacent to consecutive `w_r, w_{r+1}`, the graph
/// already has the cycle `w_1 .. w_r x w_{r+1} .. w_k`. No edges change.
pub fn insert_outside_vertex(g: &SimpleGraph, c: &CycleWitness, x: usize) -> Option<CycleExtension> {
    if x >= g.order() || c.contains(x) {
        return None;
    }
    (1..=c.len())
        .find(|&r| g.has_edge(c.w(r), x) && g.has_edge(c.w(r + 1), x))
        .map(|r| CycleExtension {
            graph: *g,
            cycle: inserted_after(c, r, &[x]),
            strategy: Strategy::Insert,
            moves: Vec::new(),
        })
}

/// With `xy` an edge off the cycle, `w_r x` present and `w_r y` absent: either
/// `w_{r+1} x` is present (insert `x` directly) or the interchange removing
/// `w_r w_{r+1}, xy` and inserting `w_{r+1} x, w_r y` yields
/// `w_1 .. w_r x w_{r+1} .. w_k`.
pub fn swap_onto_outside_edge(
    g: &SimpleGraph,
    c: &CycleWitness,
    x: usize,
    y: usize,
    r: usize,
) -> Result<CycleExtension> {
    check_outside_edge(g, c, x, y)?;
    let (wr, wr1) = (c.w(r), c.w(r + 1));
    require(g.has_edge(wr, x), "w_r x must be an edge")?;
    require(!g.has_edge(wr, y), "w_r y must not be an edge")?;
    if g.has_edge(wr1, x) {
        return Ok(CycleExtension {
            graph: *g,
            cycle: inserted_after(c, r, &[x]),
            strategy: Strategy::Insert,
            moves: Vec::new(),
        });
    }
    let mv = TwoSwitchMove::new(wr1, wr, x, y);
    let graph = apply_two_switch(g, mv)?;
    Ok(CycleExtension {
        graph,
        cycle: inserted_after(c, r, &[x]),
        strategy: Strategy::Swap,
        moves: vec![mv],
    })
}

/// With `xy` an edge off the cycle and both `w_r x`, `w_{r+2} x` present:
/// if `w_{r+2} y` is present the graph has `w_1 .. w_r x y w_{r+2} .. w_k`;
/// otherwise the swap at position `r + 2` applies.
pub fn route_through_outside_edge(
    g: &SimpleGraph,
    c: &CycleWitness,
    x: usize,
    y: usize,
    r: usize,
) -> Result<CycleExtension> {
    check_outside_edge(g, c, x, y)?;
    require(
        g.has_edge(c.w(r), x) && g.has_edge(c.w(r + 2), x),
        "w_r x and w_{r+2} x must be edges",
    )?;
    if g.has_edge(c.w(r + 2), y) {
        return Ok(CycleExtension {
            graph: *g,
            cycle: bypassing_next(c, r, &[x, y]),
            strategy: Strategy::Route,
            moves: Vec::new(),
        });
    }
    let mut out = swap_onto_outside_edge(g, c, x, y, r + 2)?;
    if out.strategy == Strategy::Swap {
        out.strategy = Strategy::Route;
    }
    Ok(out)
}

fn outside(g: &SimpleGraph, c: &CycleWitness) -> impl Iterator<Item = usize> {
    let mask = c.vertex_mask();
    (0..g.order()).filter(move |&v| mask >> v & 1 == 0)
}

fn outside_neighbors(g: &SimpleGraph, c: &CycleWitness, v: usize) -> Vec<usize> {
    let mask = g.neighbors(v) & !c.vertex_mask();
    (0..g.order()).filter(|&u| mask >> u & 1 == 1).collect()
}

fn scan_insert(g: &SimpleGraph, c: &CycleWitness) -> Option<CycleExtension> {
    outside(g, c).find_map(|v| insert_outside_vertex(g, c, v))
}

fn scan_route(g: &SimpleGraph, c: &CycleWitness) -> Option<CycleExtension> {
    for v in outside(g, c) {
        for r in 1..=c.len() {
            if !(g.has_edge(c.w(r), v) && g.has_edge(c.w(r + 2), v)) {
                continue;
            }
            if let Some(&y) = outside_neighbors(g, c, v).first() {
                return route_through_outside_edge(g, c, v, y, r).ok();
            }
        }
    }
    None
}

fn scan_swap(g: &SimpleGraph, c: &CycleWitness) -> Option<CycleExtension> {
    for v in outside(g, c) {
        for r in (1..=c.len()).filter(|&r| g.has_edge(c.w(r), v)) {
            for y in outside_neighbors(g, c, v) {
                if !g.has_edge(c.w(r), y) {
                    return swap_onto_outside_edge(g, c, v, y, r).ok();
                }
            }
        }
    }
    None
}

/// The interchange removing `w_{i+1} w_{i+2}, x x_2` and inserting
/// `w_{i+2} x, w_{i+1} x_2`, giving `w_1 .. w_i x_1 x w_{i+2} .. w_k`.
fn scan_pendant_pair(g: &SimpleGraph, c: &CycleWitness, x: usize) -> Option<CycleExtension> {
    let nx = outside_neighbors(g, c, x);
    for i in (1..=c.len()).filter(|&i| g.has_edge(c.w(i), x)) {
        let (wi, wi1, wi2) = (c.w(i), c.w(i + 1), c.w(i + 2));
        if g.has_edge(wi2, x) {
            continue;
        }
        for &x1 in nx.iter().filter(|&&x1| g.has_edge(wi, x1)) {
            let Some(&x2) = nx.iter().find(|&&x2| x2 != x1 && !g.has_edge(wi1, x2)) else {
                continue;
            };
            let mv = TwoSwitchMove::new(wi2, wi1, x, x2);
            if let Ok(graph) = apply_two_switch(g, mv) {
                return Some(CycleExtension {
                    graph,
                    cycle: bypassing_next(c, i, &[x1, x]),
                    strategy: Strategy::PendantPair,
                    moves: vec![mv],
                });
            }
        }
    }
    None
}

fn guided_on_cycle(g: &SimpleGraph, c: &CycleWitness, x: usize) -> Option<CycleExtension> {
    scan_insert(g, c)
        .or_else(|| scan_route(g, c))
        .or_else(|| scan_swap(g, c))
        .or_else(|| scan_pendant_pair(g, c, x))
}

fn guided(g: &SimpleGraph, c: &CycleWitness, x: usize) -> Option<CycleExtension> {
    let rev = c.reversed();
    guided_on_cycle(g, c, x).or_else(|| guided_on_cycle(g, &rev, x))
}

/// When `x` has no cycle neighbour: remove `w x_4, x x_3`, insert `w x, x_3 x_4`
/// (with `w x_4` not a cycle edge), which leaves the cycle intact and puts `x`
/// next to `w`; then retry the guided steps.
fn attach(g: &SimpleGraph, c: &CycleWitness, x: usize, preferred_w: usize) -> Option<CycleExtension> {
    if g.neighbors(x) & c.vertex_mask() != 0 {
        return None;
    }
    let mut anchors: Vec<usize> = c.vertices().to_vec();
    anchors.sort_by_key(|&v| v != preferred_w);
    for w in anchors.into_iter().filter(|&w| g.degree(w) >= 3) {
        let pos = c.position(w).expect("on cycle");
        let (prev, next) = (c.w(pos + c.len() - 1), c.w(pos + 1));
        for x4 in g.neighbor_list(w).into_iter().filter(|&v| v != prev && v != next) {
            for x3 in g.neighbor_list(x) {
                if x3 == x4 || g.has_edge(x3, x4) {
                    continue;
                }
                let mv = TwoSwitchMove::new(w, x4, x, x3);
                let Ok(h) = apply_two_switch(g, mv) else { continue };
                if let Some(mut out) = guided(&h, c, x) {
                    out.moves.insert(0, mv);
                    out.strategy = Strategy::Attach;
                    return Some(out);
                }
            }
        }
    }
    None
}

/// Produces a realization of the same degree sequence containing a
/// (k+1)-cycle. Tries the guided steps first, then a bounded same-sequence
/// search. Exhausting that search without success is reported as
/// [`Error::ExtensionExhausted`].
pub fn extend_cycle(ctx: &ExtensionContext, budget: SearchBudget) -> Result<CycleExtension> {
    let g = ctx.graph();
    let c = ctx.cycle();
    let target = c.len() + 1;
    if let Some(cycle) = find_cycle(g, target) {
        return Ok(CycleExtension {
            graph: *g,
            cycle,
            strategy: Strategy::AlreadyPresent,
            moves: Vec::new(),
        });
    }
    if let Some(out) = guided(g, c, ctx.x()).or_else(|| attach(g, c, ctx.x(), ctx.w())) {
        debug_assert!(out.cycle.len() == target && out.cycle.is_valid_in(&out.graph));
        debug_assert_eq!(out.graph.degree_sequence(), g.degree_sequence());
        return Ok(out);
    }
    let mut walk = RealizationWalk::from_graph(*g, budget);
    for item in walk.by_ref() {
        let h = item?;
        if let Some(cycle) = find_cycle(&h, target) {
            return Ok(CycleExtension {
                graph: h,
                cycle,
                strategy: Strategy::Fallback,
                moves: Vec::new(),
            });
        }
    }
    Err(Error::ExtensionExhausted {
        target,
        states: walk.states(),
    })
}

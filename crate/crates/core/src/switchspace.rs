//! 2-switch moves and the breadth-first walk over all labeled realizations
//! of a degree sequence, plus the potentially-H / forcibly-H decisions built
//! on it.

use std::collections::VecDeque;

use rustc_hash::FxHashSet;

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};
use crate::graph::{contains_pattern, EdgeKey, PatternGraph, SimpleGraph};

/// Remove `ab` and `cd`, insert `ac` and `bd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoSwitchMove {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl TwoSwitchMove {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        Self { a, b, c, d }
    }

    fn distinct(&self) -> bool {
        let v = [self.a, self.b, self.c, self.d];
        (0..4).all(|i| (i + 1..4).all(|j| v[i] != v[j]))
    }

    pub fn is_valid_in(&self, g: &SimpleGraph) -> bool {
        let n = g.order();
        let Self { a, b, c, d } = *self;
        [a, b, c, d].iter().all(|&v| v < n)
            && self.distinct()
            && g.has_edge(a, b)
            && g.has_edge(c, d)
            && !g.has_edge(a, c)
            && !g.has_edge(b, d)
    }

    /// The move that undoes this one once applied.
    pub fn inverse(&self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }
}

/// Every valid move of `g`: for each pair of disjoint edges `ab < cd` (in
/// sorted edge order), the pairing `ac, bd` and then `ad, bc`, each only if
/// both inserted edges are absent.
pub fn valid_two_switches(g: &SimpleGraph) -> impl Iterator<Item = TwoSwitchMove> + '_ {
    let edges = g.edges();
    let m = edges.len();
    (0..m)
        .flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
        .flat_map(move |(i, j)| {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            [TwoSwitchMove::new(a, b, c, d), TwoSwitchMove::new(a, b, d, c)]
        })
        .filter(move |mv| mv.is_valid_in(g))
}

pub fn apply_two_switch(g: &SimpleGraph, mv: TwoSwitchMove) -> Result<SimpleGraph> {
    if !mv.is_valid_in(g) {
        return Err(Error::InvalidMove(format!(
            "remove {}-{}, {}-{}; insert {}-{}, {}-{}",
            mv.a, mv.b, mv.c, mv.d, mv.a, mv.c, mv.b, mv.d
        )));
    }
    let mut out = *g;
    out.delete_edge(mv.a, mv.b);
    out.delete_edge(mv.c, mv.d);
    out.insert_edge(mv.a, mv.c);
    out.insert_edge(mv.b, mv.d);
    Ok(out)
}

/// Caps on a realization-space walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Distinct labeled realizations discovered.
    pub max_states: u64,
    /// Move applications (valid 2-switches generated).
    pub max_moves: u64,
}

impl SearchBudget {
    pub const DEFAULT_MAX_STATES: u64 = 5_000_000;
    pub const DEFAULT_MAX_MOVES: u64 = 4_000_000_000;

    pub fn new(max_states: u64, max_moves: u64) -> Result<Self> {
        if max_states == 0 || max_moves == 0 {
            return Err(Error::InvalidInput("search budget caps must be positive".into()));
        }
        Ok(Self {
            max_states,
            max_moves,
        })
    }

    pub fn with_max_states(max_states: u64) -> Result<Self> {
        Self::new(max_states, Self::DEFAULT_MAX_MOVES)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_states: Self::DEFAULT_MAX_STATES,
            max_moves: Self::DEFAULT_MAX_MOVES,
        }
    }
}

/// Breadth-first closure under 2-switches, yielding each labeled realization
/// once. A budget overrun is yielded as `Err(BudgetExceeded)` and ends the walk.
pub struct RealizationWalk {
    n: usize,
    budget: SearchBudget,
    visited: FxHashSet<EdgeKey>,
    queue: VecDeque<EdgeKey>,
    pending: Option<(SimpleGraph, EdgeKey)>,
    moves: u64,
    finished: bool,
}

impl RealizationWalk {
    /// Starts the walk from an arbitrary realization `start`.
    pub fn from_graph(start: SimpleGraph, budget: SearchBudget) -> Self {
        let key = start.edge_key();
        let mut visited = FxHashSet::default();
        visited.insert(key.clone());
        let mut queue = VecDeque::new();
        queue.push_back(key);
        Self {
            n: start.order(),
            budget,
            visited,
            queue,
            pending: None,
            moves: 0,
            finished: false,
        }
    }

    /// Distinct realizations discovered so far.
    pub fn states(&self) -> u64 {
        self.visited.len() as u64
    }

    pub fn moves(&self) -> u64 {
        self.moves
    }

    /// True once the walk ended without hitting the budget.
    pub fn is_complete(&self) -> bool {
        self.finished && self.queue.is_empty() && self.pending.is_none()
    }

    fn exceeded(&self) -> Error {
        Error::BudgetExceeded {
            states: self.states(),
            moves: self.moves,
        }
    }

    fn expand(&mut self, g: &SimpleGraph, key: &EdgeKey) -> Result<()> {
        let edges = g.edges();
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                for (x, y) in [(c, d), (d, c)] {
                    // remove ab, xy; insert ax, by
                    if g.has_edge(a, x) || g.has_edge(b, y) {
                        continue;
                    }
                    self.moves += 1;
                    if self.moves > self.budget.max_moves {
                        return Err(self.exceeded());
                    }
                    let mut next = key.clone();
                    next.toggle(a, b);
                    next.toggle(x, y);
                    next.toggle(a, x);
                    next.toggle(b, y);
                    if !self.visited.contains(&next) {
                        if self.visited.len() as u64 >= self.budget.max_states {
                            return Err(self.exceeded());
                        }
                        self.visited.insert(next.clone());
                        self.queue.push_back(next);
                    }
                }
            }
        }
        Ok(())
    }
}

impl Iterator for RealizationWalk {
    type Item = Result<SimpleGraph>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        if let Some((g, key)) = self.pending.take() {
            if let Err(e) = self.expand(&g, &key) {
                self.finished = true;
                self.queue.clear();
                return Some(Err(e));
            }
        }
        match self.queue.pop_front() {
            Some(key) => {
                let g = SimpleGraph::from_edge_key(self.n, &key).expect("n within budget");
                self.pending = Some((g, key));
                Some(Ok(g))
            }
            None => {
                self.finished = true;
                None
            }
        }
    }
}

/// Walks every labeled realization of `s`, starting from the Havel–Hakimi one.
pub fn enumerate_realizations(s: &DegreeSequence, budget: SearchBudget) -> Result<RealizationWalk> {
    let start = s.realize()?;
    Ok(RealizationWalk::from_graph(start, budget))
}

/// Outcome of [`is_potentially`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Potential {
    /// A realization containing H.
    Yes(SimpleGraph),
    No,
    Unknown,
}

/// Outcome of [`is_forcibly`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Forcible {
    Yes,
    /// A realization avoiding H.
    No(SimpleGraph),
    Unknown,
}

/// Necessary conditions for any realization of `s` to contain `h`.
pub(crate) fn may_contain(s: &DegreeSequence, h: PatternGraph) -> bool {
    let hosts = s
        .terms()
        .iter()
        .filter(|&&d| d as usize >= h.min_degree())
        .count();
    h.order() <= s.len() && hosts >= h.order() && h.edge_count() as u64 <= s.sigma_sum() / 2
}

/// Some realization of `s` contains `h`.
pub fn is_potentially(
    s: &DegreeSequence,
    h: PatternGraph,
    budget: SearchBudget,
) -> Result<Potential> {
    if !s.is_graphical() {
        return Err(Error::NotGraphical(s.clone()));
    }
    if !may_contain(s, h) {
        return Ok(Potential::No);
    }
    for g in enumerate_realizations(s, budget)? {
        match g {
            Ok(g) if contains_pattern(&g, h) => return Ok(Potential::Yes(g)),
            Ok(_) => {}
            Err(Error::BudgetExceeded { .. }) => return Ok(Potential::Unknown),
            Err(e) => return Err(e),
        }
    }
    Ok(Potential::No)
}

/// Every realization of `s` contains `h`.
pub fn is_forcibly(s: &DegreeSequence, h: PatternGraph, budget: SearchBudget) -> Result<Forcible> {
    if !s.is_graphical() {
        return Err(Error::NotGraphical(s.clone()));
    }
    if !may_contain(s, h) {
        return Ok(Forcible::No(s.realize()?));
    }
    for g in enumerate_realizations(s, budget)? {
        match g {
            Ok(g) if !contains_pattern(&g, h) => return Ok(Forcible::No(g)),
            Ok(_) => {}
            Err(Error::BudgetExceeded { .. }) => return Ok(Forcible::Unknown),
            Err(e) => return Err(e),
        }
    }
    Ok(Forcible::Yes)
}

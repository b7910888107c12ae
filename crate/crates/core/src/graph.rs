//! Labeled simple graphs on at most [`MAX_VERTICES`] vertices, target
//! patterns (cycles, cliques, matchings) and the extremal join constructions.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};

/// Vertex budget; adjacency rows are `u32` bitsets.
pub const MAX_VERTICES: usize = 32;

type Row = u32;

#[inline]
fn bits(mut mask: Row) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Index of the unordered pair `{u, v}` in colex order, independent of `n`.
#[inline]
pub(crate) fn pair_index(u: usize, v: usize) -> usize {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    hi * (hi - 1) / 2 + lo
}

/// Canonical labeled key: the edge set as a bitmap over vertex pairs.
/// Two graphs on the same vertex count share a key iff their edge sets
/// are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeKey(SmallVec<[u64; 2]>);

impl EdgeKey {
    fn zeroed(n: usize) -> Self {
        let pairs = n * n.saturating_sub(1) / 2;
        Self(SmallVec::from_elem(0, pairs.div_ceil(64).max(1)))
    }

    #[inline]
    pub(crate) fn toggle(&mut self, u: usize, v: usize) {
        let idx = pair_index(u, v);
        self.0[idx / 64] ^= 1u64 << (idx % 64);
    }
}

/// A labeled simple graph; vertices are `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: u8,
    adj: [Row; MAX_VERTICES],
}

impl SimpleGraph {
    /// The empty graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidInput(format!(
                "{n} vertices exceeds the budget of {MAX_VERTICES}"
            )));
        }
        Ok(Self {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Row {
        self.adj[v]
    }

    pub fn neighbor_list(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v]).collect()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.order()]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in bits(self.adj[u].checked_shr(u as u32 + 1).unwrap_or(0)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!(
                "edge {u}-{v} out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at {u}")));
        }
        Ok(())
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.insert_edge(u, v);
        Ok(())
    }

    /// Removes `uv`; removing an absent edge is a no-op.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.delete_edge(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.order() && v < self.order());
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub(crate) fn delete_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    /// Nonincreasing degree multiset.
    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut d: Vec<u32> = (0..self.order()).map(|v| self.degree(v) as u32).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence::from_sorted(d)
    }

    pub fn edge_key(&self) -> EdgeKey {
        let mut key = EdgeKey::zeroed(self.order());
        for (u, v) in self.edges() {
            key.toggle(u, v);
        }
        key
    }

    pub fn from_edge_key(n: usize, key: &EdgeKey) -> Result<Self> {
        let mut g = Self::new(n)?;
        for v in 1..n {
            for u in 0..v {
                let idx = pair_index(u, v);
                if key.0.get(idx / 64).is_some_and(|w| w >> (idx % 64) & 1 == 1) {
                    g.insert_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// K_m joined to the empty graph on `n - m` vertices. Clique vertices are
    /// `0..m`.
    pub fn join_empty(m: usize, n: usize) -> Result<Self> {
        if m < 1 || m >= n {
            return Err(Error::InvalidInput(format!(
                "join_empty needs 1 <= m < n, got m={m}, n={n}"
            )));
        }
        let mut g = Self::new(n)?;
        for u in 0..m {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        Ok(g)
    }

    /// K_m joined to (empty graph on `n - m - 2` vertices ∪ K_2). The extra
    /// edge is `m -- m+1`.
    pub fn join_k2(m: usize, n: usize) -> Result<Self> {
        if m < 1 || m + 2 > n {
            return Err(Error::InvalidInput(format!(
                "join_k2 needs 1 <= m and m + 2 <= n, got m={m}, n={n}"
            )));
        }
        let mut g = Self::join_empty(m, n)?;
        g.insert_edge(m, m + 1);
        Ok(g)
    }

    /// Graph text format: first line `n`, then one `u v` edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the graph text format. `#` comments and blank lines are skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty graph text".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad vertex count {header:?}")))?;
        let mut g = Self::new(n)?;
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad vertex label {t:?}")))
            };
            match parts.as_slice() {
                [u, v] => g.add_edge(parse(u)?, parse(v)?)?,
                _ => return Err(Error::InvalidInput(format!("bad edge line {line:?}"))),
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// The small target subgraph H.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternGraph {
    /// C_k, k >= 3.
    Cycle(usize),
    /// K_k, k >= 1.
    Clique(usize),
    /// pK_2, p >= 1.
    Matching(usize),
}

impl PatternGraph {
    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidInput(format!("cycle length {k} < 3")));
        }
        Ok(Self::Cycle(k))
    }

    pub fn clique(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidInput("clique size must be >= 1".into()));
        }
        Ok(Self::Clique(k))
    }

    pub fn matching(p: usize) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidInput("matching size must be >= 1".into()));
        }
        Ok(Self::Matching(p))
    }

    /// Number of vertices of H.
    pub fn order(&self) -> usize {
        match *self {
            Self::Cycle(k) | Self::Clique(k) => k,
            Self::Matching(p) => 2 * p,
        }
    }

    pub fn edge_count(&self) -> usize {
        match *self {
            Self::Cycle(k) => k,
            Self::Clique(k) => k * (k - 1) / 2,
            Self::Matching(p) => p,
        }
    }

    /// Minimum degree of H; a host vertex hosting an H-vertex needs at least this.
    pub fn min_degree(&self) -> usize {
        match *self {
            Self::Cycle(_) => 2,
            Self::Clique(k) => k - 1,
            Self::Matching(_) => 1,
        }
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Cycle(k) => write!(f, "C{k}"),
            Self::Clique(k) => write!(f, "K{k}"),
            Self::Matching(p) => write!(f, "{p}K2"),
        }
    }
}

impl FromStr for PatternGraph {
    type Err = Error;

    /// Accepts `C7`, `K3` and `2K2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unrecognized pattern {s:?}"));
        let s = s.trim();
        if let Some(p) = s.strip_suffix("K2").filter(|p| !p.is_empty()) {
            return Self::matching(p.parse().map_err(|_| bad())?);
        }
        if let Some(k) = s.strip_prefix('C') {
            return Self::cycle(k.parse().map_err(|_| bad())?);
        }
        if let Some(k) = s.strip_prefix('K') {
            return Self::clique(k.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}

impl Serialize for PatternGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PatternGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An ordered cycle `w_1 w_2 .. w_k w_1`. Positions are 1-based and wrap
/// around, so `w(k + i) == w(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleWitness {
    vertices: Vec<usize>,
}

impl CycleWitness {
    /// Validates distinctness and length; adjacency is checked by [`Self::is_valid_in`].
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidInput("a cycle needs at least 3 vertices".into()));
        }
        let mut seen = 0u64;
        for &v in &vertices {
            if v >= MAX_VERTICES || seen >> v & 1 == 1 {
                return Err(Error::InvalidInput(format!("repeated or invalid cycle vertex {v}")));
            }
            seen |= 1 << v;
        }
        Ok(Self { vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `w_pos` with 1-based, wrapping positions.
    pub fn w(&self, pos: usize) -> usize {
        let k = self.len();
        self.vertices[(pos + k - 1) % k]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// 1-based position of `v`, if on the cycle.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v).map(|i| i + 1)
    }

    pub fn vertex_mask(&self) -> u32 {
        self.vertices.iter().fold(0u32, |m, &v| m | 1 << v)
    }

    /// Same cycle traversed the other way, starting from the same vertex.
    pub fn reversed(&self) -> Self {
        let mut vertices = Vec::with_capacity(self.len());
        vertices.push(self.vertices[0]);
        vertices.extend(self.vertices[1..].iter().rev());
        Self { vertices }
    }

    /// Consecutive vertices adjacent and `w_k w_1` an edge.
    pub fn is_valid_in(&self, g: &SimpleGraph) -> bool {
        let k = self.len();
        k >= 3
            && self.vertices.iter().all(|&v| v < g.order())
            && (1..=k).all(|r| g.has_edge(self.w(r), self.w(r + 1)))
    }
}

/// A witness embedding of a [`PatternGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedding {
    Cycle(CycleWitness),
    Clique(Vec<usize>),
    Matching(Vec<(usize, usize)>),
}

impl Embedding {
    /// Checks the embedding against `g` and `h`.
    pub fn is_valid(&self, g: &SimpleGraph, h: PatternGraph) -> bool {
        match (self, h) {
            (Self::Cycle(c), PatternGraph::Cycle(k)) => c.len() == k && c.is_valid_in(g),
            (Self::Clique(vs), PatternGraph::Clique(k)) => {
                let distinct = vs.iter().fold(0u64, |m, &v| m | 1 << v).count_ones() as usize;
                vs.len() == k
                    && distinct == k
                    && vs.iter().all(|&v| v < g.order())
                    && vs
                        .iter()
                        .enumerate()
                        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
            }
            (Self::Matching(es), PatternGraph::Matching(p)) => {
                let touched = es.iter().fold(0u64, |m, &(u, v)| m | 1 << u | 1 << v);
                es.len() == p
                    && touched.count_ones() as usize == 2 * p
                    && es.iter().all(|&(u, v)| g.has_edge(u, v))
            }
            _ => false,
        }
    }
}

/// Searches `g` for a subgraph (not necessarily induced) isomorphic to `h`.
pub fn find_pattern(g: &SimpleGraph, h: PatternGraph) -> Option<Embedding> {
    match h {
        PatternGraph::Cycle(k) => find_cycle(g, k).map(Embedding::Cycle),
        PatternGraph::Clique(k) => find_clique(g, k).map(Embedding::Clique),
        PatternGraph::Matching(p) => find_matching(g, p).map(Embedding::Matching),
    }
}

pub fn contains_pattern(g: &SimpleGraph, h: PatternGraph) -> bool {
    match h {
        PatternGraph::Cycle(k) => {
            for_each_cycle(g, k, |_| ControlFlow::Break(())).is_break()
        }
        _ => find_pattern(g, h).is_some(),
    }
}

/// First k-cycle found, or `None`.
pub fn find_cycle(g: &SimpleGraph, k: usize) -> Option<CycleWitness> {
    let mut found = None;
    let _ = for_each_cycle(g, k, |path| {
        found = Some(CycleWitness {
            vertices: path.to_vec(),
        });
        ControlFlow::Break(())
    });
    found
}

/// Visits every k-cycle of `g` exactly once as a vertex path starting at its
/// smallest vertex, oriented so the second vertex is smaller than the last.
pub fn for_each_cycle<F>(g: &SimpleGraph, k: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.order();
    if k < 3 || k > n {
        return ControlFlow::Continue(());
    }
    let eligible: Row = (0..n).filter(|&v| g.degree(v) >= 2).fold(0, |m, v| m | 1 << v);
    let mut path = Vec::with_capacity(k);
    for anchor in bits(eligible) {
        let allowed = eligible & !(((1 as Row) << anchor << 1).wrapping_sub(1));
        if (allowed.count_ones() as usize) < k - 1 {
            break;
        }
        path.clear();
        path.push(anchor);
        cycle_dfs(g, k, &mut path, 1 << anchor, allowed, &mut visit)?;
    }
    ControlFlow::Continue(())
}

fn cycle_dfs<F>(
    g: &SimpleGraph,
    k: usize,
    path: &mut Vec<usize>,
    used: Row,
    allowed: Row,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let anchor = path[0];
    let last = *path.last().expect("nonempty path");
    let free = allowed & !used;
    let remaining = k - path.len();
    if (free.count_ones() as usize) < remaining {
        return ControlFlow::Continue(());
    }
    let mut candidates = g.adj[last] & free;
    if remaining == 1 {
        candidates &= g.adj[anchor];
        // Orientation: the closing vertex must exceed the second one.
        candidates &= !(((1 as Row) << path[1] << 1).wrapping_sub(1));
        for c in bits(candidates) {
            path.push(c);
            let r = visit(path);
            path.pop();
            r?;
        }
        return ControlFlow::Continue(());
    }
    if remaining == 2 {
        // The next vertex must still reach a neighbour of the anchor.
        let closers = g.adj[anchor] & free;
        if closers == 0 {
            return ControlFlow::Continue(());
        }
    }
    for c in bits(candidates) {
        path.push(c);
        let r = cycle_dfs(g, k, path, used | 1 << c, allowed, visit);
        path.pop();
        r?;
    }
    ControlFlow::Continue(())
}

/// A k-clique via Bron–Kerbosch with pivoting, stopping once `R` reaches k.
pub fn find_clique(g: &SimpleGraph, k: usize) -> Option<Vec<usize>> {
    let n = g.order();
    if k == 0 || k > n {
        return None;
    }
    let all: Row = if n == 0 { 0 } else { Row::MAX >> (32 - n) };
    let mut r = Vec::with_capacity(k);
    bron_kerbosch(g, k, &mut r, all, 0).then_some(r)
}

fn bron_kerbosch(g: &SimpleGraph, k: usize, r: &mut Vec<usize>, p: Row, x: Row) -> bool {
    if r.len() == k {
        return true;
    }
    if r.len() + (p.count_ones() as usize) < k {
        return false;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (g.adj[u] & p).count_ones())
        .expect("p nonempty");
    let mut p = p;
    let mut x = x;
    for v in bits(p & !g.adj[pivot]) {
        r.push(v);
        if bron_kerbosch(g, k, r, p & g.adj[v], x & g.adj[v]) {
            return true;
        }
        r.pop();
        p &= !(1 << v);
        x |= 1 << v;
    }
    false
}

/// p pairwise disjoint edges: greedy first, exhaustive on failure.
pub fn find_matching(g: &SimpleGraph, p: usize) -> Option<Vec<(usize, usize)>> {
    if 2 * p > g.order() {
        return None;
    }
    let mut greedy = Vec::with_capacity(p);
    let mut used: Row = 0;
    for (u, v) in g.edges() {
        if used >> u & 1 == 0 && used >> v & 1 == 0 {
            used |= 1 << u | 1 << v;
            greedy.push((u, v));
            if greedy.len() == p {
                return Some(greedy);
            }
        }
    }
    let all: Row = Row::MAX >> (32 - g.order());
    let mut chosen = Vec::with_capacity(p);
    matching_dfs(g, p, all, &mut chosen).then_some(chosen)
}

fn matching_dfs(g: &SimpleGraph, p: usize, avail: Row, chosen: &mut Vec<(usize, usize)>) -> bool {
    if chosen.len() == p {
        return true;
    }
    if chosen.len() + (avail.count_ones() as usize) / 2 < p {
        return false;
    }
    let Some(v) = bits(avail).find(|&v| g.adj[v] & avail != 0) else {
        return false;
    };
    for u in bits(g.adj[v] & avail) {
        chosen.push((v, u));
        if matching_dfs(g, p, avail & !(1 << v | 1 << u), chosen) {
            return true;
        }
        chosen.pop();
    }
    matching_dfs(g, p, avail & !(1 << v), chosen)
}

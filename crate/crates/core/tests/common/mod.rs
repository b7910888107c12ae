//! Brute-force oracles shared by the integration suites. Nothing here calls
//! the library's own search code: graphs are enumerated from edge bitmasks and
//! patterns are detected by naive exhaustive search.

#![allow(dead_code)]

use std::collections::HashMap;

use potgraph::{CycleWitness, PatternGraph, SimpleGraph};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

pub fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &p)| p)
        .collect();
    SimpleGraph::from_edges(n, &edges).unwrap()
}

/// Every labeled simple graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = SimpleGraph> {
    let ps = pairs(n);
    (0u64..1 << ps.len()).map(move |mask| graph_from_mask(n, &ps, mask))
}

/// Degrees in vertex-label order.
pub fn degree_vector(g: &SimpleGraph) -> Vec<u32> {
    (0..g.order()).map(|v| g.degree(v) as u32).collect()
}

/// Number of labeled graphs per degree vector.
pub fn labeled_counts(n: usize) -> HashMap<Vec<u32>, u64> {
    let mut counts = HashMap::new();
    for g in all_graphs(n) {
        *counts.entry(degree_vector(&g)).or_insert(0) += 1;
    }
    counts
}

/// Every nonincreasing vector of length `n` with entries in `0..n`.
pub fn nonincreasing(n: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for d in 0..=cap {
            prefix.push(d);
            rec(n, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n as u32 - 1, &mut Vec::new(), &mut out);
    }
    out
}

pub fn has_cycle_naive(g: &SimpleGraph, k: usize) -> bool {
    fn rec(g: &SimpleGraph, k: usize, path: &mut Vec<usize>) -> bool {
        if path.len() == k {
            return g.has_edge(path[k - 1], path[0]);
        }
        let last = *path.last().unwrap();
        for v in 0..g.order() {
            if !path.contains(&v) && g.has_edge(last, v) {
                path.push(v);
                if rec(g, k, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    if k < 3 || k > g.order() {
        return false;
    }
    (0..g.order()).any(|s| rec(g, k, &mut vec![s]))
}

pub fn has_clique_naive(g: &SimpleGraph, k: usize) -> bool {
    let n = g.order();
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).any(|s| {
        let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    })
}

pub fn has_matching_naive(g: &SimpleGraph, p: usize) -> bool {
    fn rec(edges: &[(usize, usize)], used: u32, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if used >> u & 1 == 0 && used >> v & 1 == 0
                && rec(&edges[i + 1..], used | 1 << u | 1 << v, need - 1)
            {
                return true;
            }
        }
        false
    }
    rec(&g.edges(), 0, p)
}

pub fn contains_naive(g: &SimpleGraph, h: PatternGraph) -> bool {
    match h {
        PatternGraph::Cycle(k) => has_cycle_naive(g, k),
        PatternGraph::Clique(k) => has_clique_naive(g, k),
        PatternGraph::Matching(p) => has_matching_naive(g, p),
    }
}

/// Exhaustive σ(H, n) from all labeled graphs: two more than the largest sum
/// of a graphical sequence none of whose realizations contains `h`.
pub fn brute_sigma(h: PatternGraph, n: usize) -> u64 {
    let mut potential: HashMap<Vec<u32>, bool> = HashMap::new();
    for g in all_graphs(n) {
        let mut d = degree_vector(&g);
        d.sort_unstable_by(|a, b| b.cmp(a));
        let hit = contains_naive(&g, h);
        *potential.entry(d).or_insert(false) |= hit;
    }
    potential
        .iter()
        .filter(|(_, &hit)| !hit)
        .map(|(d, _)| d.iter().map(|&x| x as u64).sum::<u64>() + 2)
        .max()
        .unwrap_or(0)
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    SimpleGraph::from_edges(n, &edges).unwrap()
}

fn add_random_neighbor<R: Rng>(rng: &mut R, g: &mut SimpleGraph, v: usize, prefer: &[usize]) {
    let open = |pool: Vec<usize>| -> Vec<usize> {
        pool.into_iter().filter(|&u| u != v && !g.has_edge(u, v)).collect()
    };
    let preferred = open(prefer.to_vec());
    let candidates = if !preferred.is_empty() && rng.gen_bool(0.7) {
        preferred
    } else {
        open((0..g.order()).collect())
    };
    let u = *candidates.choose(rng).expect("vertex has a free slot");
    g.add_edge(u, v).unwrap();
}

/// Like [`random_extension_instance`], but retries until the graph has no
/// (k+1)-cycle yet, so the extension has real work to do. Gives up after a
/// bounded number of draws and returns the last one.
pub fn fresh_extension_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
) -> (SimpleGraph, CycleWitness, usize, usize) {
    let mut inst = random_extension_instance(rng, n, k);
    for _ in 0..200 {
        if !has_cycle_naive(&inst.0, k + 1) {
            break;
        }
        inst = random_extension_instance(rng, n, k);
    }
    inst
}

/// A planted k-cycle in a random graph on `n` vertices, with an off-cycle
/// vertex `x` raised to degree at least floor(k/2)+1 and a cycle vertex `w`
/// raised to degree at least 3.
pub fn random_extension_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
) -> (SimpleGraph, CycleWitness, usize, usize) {
    assert!(4 <= k && k < n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let cycle = order[..k].to_vec();
    let outside = order[k..].to_vec();
    let density = [0.0, 0.05, 0.15, 0.3][rng.gen_range(0..4)];
    let mut g = random_graph(rng, n, density);
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        if !g.has_edge(u, v) {
            g.add_edge(u, v).unwrap();
        }
    }
    let x = outside[0];
    let w = *cycle.choose(rng).unwrap();
    // Half the instances steer x toward other outside vertices, which
    // exercises the paths where x starts with no cycle neighbours.
    let prefer_x = if rng.gen_bool(0.5) { outside.clone() } else { Vec::new() };
    while g.degree(x) < k / 2 + 1 {
        add_random_neighbor(rng, &mut g, x, &prefer_x);
    }
    while g.degree(w) < 3 {
        add_random_neighbor(rng, &mut g, w, &outside);
    }
    (g, CycleWitness::new(cycle).unwrap(), x, w)
}

//! Exhaustive reference answers and seeded instance generators.
//!
//! Nothing here calls into the solver or the kernel: the oracle decides by
//! enumerating every `V1` with plain bitmask reachability, so it can be used
//! to check them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Digraph, OutTree, VertexSet};
use crate::error::SolveError;
use crate::kernel::{GoodPartition, Instance};
use crate::solver::{Answer, SolveResult};

pub const SOLVE_LIMIT: usize = 20;
pub const MAX_D1_LIMIT: usize = 12;
pub const ENUMERATE_LIMIT: usize = 4;

fn masks(d: &Digraph) -> (Vec<u32>, Vec<u32>) {
    let mut out = vec![0u32; d.n()];
    let mut inn = vec![0u32; d.n()];
    for (u, v) in d.arcs() {
        out[u] |= 1 << v;
        inn[v] |= 1 << u;
    }
    (out, inn)
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

/// Every vertex of `set` has an in-neighbour in `set`.
fn all_entered(inn: &[u32], set: u32) -> bool {
    bits(set).all(|v| inn[v] & set != 0)
}

/// Vertices reachable from `root` inside `set`.
fn reach(out: &[u32], root: usize, set: u32) -> u32 {
    let mut seen = 1u32 << root;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= out[v] & set;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

/// Breadth-first tree from `root` inside `set`, scanning lower ids first.
fn bfs_tree(d: &Digraph, root: usize, set: u32) -> OutTree {
    let mut tree = OutTree::singleton(root);
    let mut seen = 1u32 << root;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in d.out_neighbors(u) {
            if set >> v & 1 == 1 && seen >> v & 1 == 0 {
                seen |= 1 << v;
                tree.parent.insert(v, u);
                queue.push_back(v);
            }
        }
    }
    tree
}

fn to_set(mask: u32) -> VertexSet {
    bits(mask).collect()
}

/// Decides the instance by trying every `V1` in increasing bitmask order
/// (bit `i` is vertex `i`). The witness is the first `V1` that works, rooted
/// at its lowest vertex that reaches the rest.
pub fn brute_force_solve(instance: &Instance) -> Result<SolveResult, SolveError> {
    let d = &instance.digraph;
    let n = d.n();
    if n > SOLVE_LIMIT {
        return Err(SolveError::TooLarge { n, limit: SOLVE_LIMIT });
    }
    let (out, inn) = masks(d);
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    for v1 in 0..=full {
        let size1 = v1.count_ones() as usize;
        let v2 = full & !v1;
        if size1 < instance.k1 || n - size1 < instance.k2 || !all_entered(&inn, v2) {
            continue;
        }
        if v1 == 0 {
            let p = GoodPartition { v1: VertexSet::new(), v2: to_set(v2), branching: None };
            return Ok(SolveResult { answer: Answer::Yes(p), trace: Vec::new() });
        }
        if let Some(root) = bits(v1).find(|&r| reach(&out, r, v1) == v1) {
            let p = GoodPartition {
                v1: to_set(v1),
                v2: to_set(v2),
                branching: Some(bfs_tree(d, root, v1)),
            };
            return Ok(SolveResult { answer: Answer::Yes(p), trace: Vec::new() });
        }
    }
    Ok(SolveResult { answer: Answer::No, trace: Vec::new() })
}

/// Largest `U` with every vertex of `D[U]` having an in-neighbour in `U`.
/// Such sets are closed under union, so the maximum is unique.
pub fn brute_force_max_d1(d: &Digraph) -> Result<VertexSet, SolveError> {
    let n = d.n();
    if n > MAX_D1_LIMIT {
        return Err(SolveError::TooLarge { n, limit: MAX_D1_LIMIT });
    }
    let (_, inn) = masks(d);
    let best = (0u32..1 << n)
        .filter(|&u| all_entered(&inn, u))
        .max_by_key(|u| u.count_ones())
        .unwrap_or(0);
    Ok(to_set(best))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Constraints {
    pub min_in_degree_1: bool,
    pub min_out_degree_1: bool,
    pub single_source: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub constraints: Constraints,
}

impl GeneratorConfig {
    pub fn new(n: usize, p: f64, seed: u64) -> Self {
        GeneratorConfig { n, p, seed, constraints: Constraints::default() }
    }

    pub fn with(mut self, constraints: Constraints) -> Self {
        self.constraints = constraints;
        self
    }
}

/// G(n, p) over ordered pairs in row-major order, drawn from ChaCha8 seeded
/// with `seed`, followed by deterministic repairs:
///
/// * `single_source`: a uniformly chosen `s` loses its in-arcs and is never
///   given one back;
/// * `min_in_degree_1` (implied by `single_source` for the other vertices):
///   each vertex without an in-neighbour gets one, chosen uniformly;
/// * `min_out_degree_1`: each vertex without an out-neighbour gets one.
///
/// A repair is skipped when no admissible endpoint exists (tiny `n`).
pub fn generate(config: &GeneratorConfig) -> Digraph {
    let n = config.n;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut adj = vec![vec![false; n]; n];
    for (u, row) in adj.iter_mut().enumerate() {
        for (v, cell) in row.iter_mut().enumerate() {
            if u != v && rng.gen::<f64>() < config.p {
                *cell = true;
            }
        }
    }
    let c = config.constraints;
    let source = if c.single_source && n > 0 { Some(rng.gen_range(0..n)) } else { None };
    if let Some(s) = source {
        for row in adj.iter_mut() {
            row[s] = false;
        }
    }
    if c.min_in_degree_1 || c.single_source {
        for v in 0..n {
            if Some(v) == source || (0..n).any(|u| adj[u][v]) {
                continue;
            }
            let tails: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            if !tails.is_empty() {
                adj[tails[rng.gen_range(0..tails.len())]][v] = true;
            }
        }
    }
    if c.min_out_degree_1 {
        for u in 0..n {
            if adj[u].iter().any(|&a| a) {
                continue;
            }
            let heads: Vec<usize> = (0..n).filter(|&v| v != u && Some(v) != source).collect();
            if !heads.is_empty() {
                adj[u][heads[rng.gen_range(0..heads.len())]] = true;
            }
        }
    }
    let arcs = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u][v]);
    Digraph::from_arcs(n, arcs.collect::<Vec<_>>()).expect("adjacency matrix is simple")
}

/// All `2^(n(n-1))` labelled digraphs on `n` vertices. Bit `i` of the index
/// selects the `i`-th ordered pair in row-major order.
pub fn enumerate_all_digraphs(n: usize) -> Result<impl Iterator<Item = Digraph>, SolveError> {
    if n > ENUMERATE_LIMIT {
        return Err(SolveError::TooLarge { n, limit: ENUMERATE_LIMIT });
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).map(move |code| {
        let arcs = pairs.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, &a)| a);
        Digraph::from_arcs(n, arcs).expect("distinct non-loop pairs")
    }))
}

//! Polynomial-time building blocks shared by the solver: growing out-trees,
//! trimming to the largest min-in-degree-one subdigraph, branchable arcs,
//! extending subsolutions, and checking witnesses.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, OutTree, VertexId, VertexSet};
use crate::error::{GraphError, KernelError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub digraph: Digraph,
    pub k1: usize,
    pub k2: usize,
}

impl Instance {
    pub fn new(digraph: Digraph, k1: usize, k2: usize) -> Self {
        Instance { digraph, k1, k2 }
    }
}

/// A witness `(V1, V2)`. `branching` is an out-branching of `D[V1]`; it is
/// `None` exactly when `V1` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPartition {
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub branching: Option<OutTree>,
}

/// Thresholds steering the case analysis: `f` bounds how many branchable
/// out-neighbours of the root may fall in one strong component, `h` bounds
/// the branchable out-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub k: u64,
    pub f: u64,
    pub h: u64,
    /// True when `f` or `h` differ from the defaults. The big-degree
    /// constructions are then only trusted after verification.
    pub overridden: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParamOverrides {
    pub f: Option<u64>,
    pub h: Option<u64>,
}

/// `k = max(k1, k2)`, `f = 32k^3 + 4k`, `h = 2k * f`, unless overridden.
pub fn params(k1: usize, k2: usize, overrides: Option<ParamOverrides>) -> Result<Params, KernelError> {
    let k = k1.max(k2) as u64;
    let default_f = 32u64
        .saturating_mul(k.saturating_pow(3))
        .saturating_add(4u64.saturating_mul(k));
    let ov = overrides.unwrap_or_default();
    for (name, value) in [("f", ov.f), ("h", ov.h)] {
        if let Some(value) = value {
            if value < 1 {
                return Err(KernelError::InvalidOverride { name, value });
            }
        }
    }
    let f = ov.f.unwrap_or(default_f);
    let h = ov.h.unwrap_or_else(|| (2 * k).saturating_mul(default_f));
    Ok(Params {
        k,
        f,
        h,
        overridden: ov.f.is_some() || ov.h.is_some(),
    })
}

/// Grows `members` by repeatedly adding the lowest-id vertex of `N+(members)`
/// that passes `allowed`, until `k` members or no candidate is left. New
/// vertices get a parent inside the set.
pub(crate) fn grow_into(
    d: &Digraph,
    members: &mut [bool],
    parent: &mut BTreeMap<VertexId, VertexId>,
    k: usize,
    allowed: &dyn Fn(VertexId) -> bool,
) -> usize {
    let mut count = members.iter().filter(|&&m| m).count();
    let mut found_by = vec![usize::MAX; d.n()];
    let mut heap = BinaryHeap::new();
    let offer = |x: VertexId,
                 members: &[bool],
                 found_by: &mut [VertexId],
                 heap: &mut BinaryHeap<Reverse<VertexId>>| {
        for &y in d.out_neighbors(x) {
            if !members[y] && found_by[y] == usize::MAX && allowed(y) {
                found_by[y] = x;
                heap.push(Reverse(y));
            }
        }
    };
    for x in d.vertices().filter(|&x| members[x]) {
        offer(x, members, &mut found_by, &mut heap);
    }
    while count < k {
        let Some(Reverse(y)) = heap.pop() else { break };
        members[y] = true;
        parent.insert(y, found_by[y]);
        count += 1;
        offer(y, members, &mut found_by, &mut heap);
    }
    count
}

/// Iteratively adds a lowest-id out-neighbour of the current set until it
/// has `k` vertices or no out-neighbour remains.
pub fn grow(d: &Digraph, s: &VertexSet, k: usize) -> Result<VertexSet, GraphError> {
    let mut members = vec![false; d.n()];
    for &v in s {
        if v >= d.n() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: d.n() });
        }
        members[v] = true;
    }
    grow_into(d, &mut members, &mut BTreeMap::new(), k, &|_| true);
    Ok(mask_to_set(&members))
}

pub(crate) fn mask_to_set(mask: &[bool]) -> VertexSet {
    mask.iter().enumerate().filter(|(_, &m)| m).map(|(v, _)| v).collect()
}

pub(crate) fn set_to_mask(n: usize, set: &VertexSet) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in set {
        mask[v] = true;
    }
    mask
}

/// Largest vertex set `U` with `δ⁻(D[U]) >= 1`.
pub fn trim(d: &Digraph) -> VertexSet {
    mask_to_set(&trim_mask(d, &vec![true; d.n()]))
}

/// `trim` of `D[alive]`, as a mask.
pub(crate) fn trim_mask(d: &Digraph, alive: &[bool]) -> Vec<bool> {
    Trimmer::new(d, alive).alive
}

/// Repeated `trim(D - X)` queries for small `X`.
///
/// `trim(D - X)` is contained in `trim(D)`, so each query starts from the
/// trimmed base and only propagates the deletion cascade caused by `X`,
/// undoing it afterwards.
pub(crate) struct Trimmer<'a> {
    d: &'a Digraph,
    alive: Vec<bool>,
    indeg: Vec<usize>,
    size: usize,
    killed: Vec<VertexId>,
    decremented: Vec<VertexId>,
}

impl<'a> Trimmer<'a> {
    pub(crate) fn new(d: &'a Digraph, base: &[bool]) -> Self {
        let mut alive = base.to_vec();
        let mut indeg: Vec<usize> = d
            .vertices()
            .map(|v| d.in_neighbors(v).iter().filter(|&&u| alive[u]).count())
            .collect();
        let mut queue: VecDeque<VertexId> =
            d.vertices().filter(|&v| alive[v] && indeg[v] == 0).collect();
        for &v in &queue {
            alive[v] = false;
        }
        while let Some(x) = queue.pop_front() {
            for &w in d.out_neighbors(x) {
                if alive[w] {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        alive[w] = false;
                        queue.push_back(w);
                    }
                }
            }
        }
        let size = alive.iter().filter(|&&a| a).count();
        Trimmer { d, alive, indeg, size, killed: Vec::new(), decremented: Vec::new() }
    }

    #[cfg(test)]
    fn size(&self) -> usize {
        self.size
    }

    /// Deletes `removed` and cascades; stops early once fewer than `need`
    /// vertices remain. Returns the number of survivors (exact unless the
    /// early stop fired). Leaves the deletions in place for `undo`.
    fn cascade(&mut self, removed: &[VertexId], need: usize) -> usize {
        let mut head = self.killed.len();
        for &x in removed {
            if self.alive[x] {
                self.alive[x] = false;
                self.killed.push(x);
            }
        }
        while head < self.killed.len() {
            if self.size - self.killed.len() < need {
                break;
            }
            let x = self.killed[head];
            head += 1;
            for &w in self.d.out_neighbors(x) {
                if self.alive[w] {
                    self.indeg[w] -= 1;
                    self.decremented.push(w);
                    if self.indeg[w] == 0 {
                        self.alive[w] = false;
                        self.killed.push(w);
                    }
                }
            }
        }
        self.size - self.killed.len()
    }

    fn undo(&mut self) {
        for v in self.killed.drain(..) {
            self.alive[v] = true;
        }
        for v in self.decremented.drain(..) {
            self.indeg[v] += 1;
        }
    }

    /// Whether `|trim(D - removed)| >= need`.
    pub(crate) fn survives(&mut self, removed: &[VertexId], need: usize) -> bool {
        let left = self.cascade(removed, need);
        self.undo();
        left >= need
    }

    /// `trim(D - removed)` as a mask.
    pub(crate) fn without(&mut self, removed: &[VertexId]) -> Vec<bool> {
        self.cascade(removed, 0);
        let out = self.alive.clone();
        self.undo();
        out
    }
}

/// Arcs `uv` for which `D - {u, v}` still holds at least `k2` vertices
/// inducing minimum in-degree one; only these can be out-branching arcs of
/// a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchableArcs {
    pub k2: usize,
    pub arcs: Vec<(VertexId, VertexId)>,
    /// `(V, B)`.
    pub db: Digraph,
}

impl BranchableArcs {
    /// `N_B+(u)`, ascending.
    pub fn nbplus(&self, u: VertexId) -> &[VertexId] {
        self.db.out_neighbors(u)
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.db.has_arc(u, v)
    }

    pub fn max_out_degree(&self) -> usize {
        self.db.vertices().map(|v| self.db.out_degree(v)).max().unwrap_or(0)
    }
}

pub fn branchable_arcs(d: &Digraph, k2: usize) -> BranchableArcs {
    let arcs: Vec<_> = if k2 == 0 {
        d.arcs().collect()
    } else {
        let mut trimmer = Trimmer::new(d, &vec![true; d.n()]);
        d.arcs().filter(|&(u, v)| trimmer.survives(&[u, v], k2)).collect()
    };
    let db = Digraph::from_arcs(d.n(), arcs.iter().copied())
        .expect("subset of a simple digraph is simple");
    BranchableArcs { k2, arcs, db }
}

/// Breadth-first out-tree of `D[within]` from `root`.
pub(crate) fn tree_within(d: &Digraph, root: VertexId, within: &[bool]) -> OutTree {
    let mut parent = BTreeMap::new();
    let mut seen = vec![false; d.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in d.out_neighbors(x) {
            if within[y] && !seen[y] {
                seen[y] = true;
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    OutTree { root, parent }
}

/// Out-branching of `D[set]`, trying `root` if given, otherwise the unique
/// in-degree-zero vertex of `D[set]`, otherwise every member in order.
pub(crate) fn branching_of(d: &Digraph, set: &VertexSet, root: Option<VertexId>) -> Option<OutTree> {
    let mask = set_to_mask(d.n(), set);
    let candidates: Vec<VertexId> = match root {
        Some(r) => vec![r],
        None => {
            let heads: Vec<_> = set
                .iter()
                .copied()
                .filter(|&v| !d.in_neighbors(v).iter().any(|&u| mask[u]))
                .collect();
            match heads.len() {
                0 => set.iter().copied().collect(),
                1 => heads,
                _ => return None,
            }
        }
    };
    candidates
        .into_iter()
        .filter(|r| mask.get(*r).copied().unwrap_or(false))
        .map(|r| tree_within(d, r, &mask))
        .find(|t| t.len() == set.len())
}

pub(crate) fn min_in_degree_one(d: &Digraph, set: &VertexSet) -> bool {
    set.iter().all(|&v| d.in_neighbors(v).iter().any(|u| set.contains(u)))
}

/// Extends disjoint `(V1', V2')`, where `D[V1']` has an out-branching and
/// `δ⁻(D[V2']) >= 1`, to a good partition of the whole vertex set: `V1'` is
/// grown as far as possible in `D - V2'` and everything else joins `V2'`.
pub fn extend_subsolution(
    d: &Digraph,
    root: Option<VertexId>,
    v1p: &VertexSet,
    v2p: &VertexSet,
) -> Result<GoodPartition, KernelError> {
    let pre = |msg: String| Err(KernelError::Precondition(msg));
    for &v in v1p.iter().chain(v2p).chain(root.iter()) {
        if v >= d.n() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: d.n() }.into());
        }
    }
    if let Some(v) = v1p.intersection(v2p).next() {
        return pre(format!("vertex {v} lies in both V1' and V2'"));
    }
    let sources = d.sources();
    if sources.len() > 1 {
        return pre(format!("{} vertices have in-degree 0", sources.len()));
    }
    if let Some(&r) = sources.first() {
        if !v1p.contains(&r) {
            return pre(format!("in-degree-0 vertex {r} is not in V1'"));
        }
    }
    if !min_in_degree_one(d, v2p) {
        return pre("D[V2'] has a vertex of in-degree 0".into());
    }
    let mut members = set_to_mask(d.n(), v1p);
    let mut tree = if v1p.is_empty() {
        None
    } else {
        match branching_of(d, v1p, root) {
            Some(t) => Some(t),
            None => return pre("D[V1'] has no out-branching".into()),
        }
    };
    if let Some(t) = tree.as_mut() {
        let blocked = set_to_mask(d.n(), v2p);
        grow_into(d, &mut members, &mut t.parent, d.n(), &|v| !blocked[v]);
    }
    let v1 = mask_to_set(&members);
    let v2 = d.vertices().filter(|&v| !members[v]).collect();
    Ok(GoodPartition { v1, v2, branching: tree })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange(VertexId),
    InBothSides(VertexId),
    Unassigned(VertexId),
    V1TooSmall { size: usize, k1: usize },
    V2TooSmall { size: usize, k2: usize },
    NoInNeighbourInV2(VertexId),
    MissingBranching,
    BranchingOnEmptyV1,
    BranchingVertexSet,
    BranchingArcMissing(VertexId, VertexId),
    BranchingNotRooted(VertexId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Violation::InBothSides(v) => write!(f, "vertex {v} is in both V1 and V2"),
            Violation::Unassigned(v) => write!(f, "vertex {v} is in neither V1 nor V2"),
            Violation::V1TooSmall { size, k1 } => write!(f, "|V1| = {size} < k1 = {k1}"),
            Violation::V2TooSmall { size, k2 } => write!(f, "|V2| = {size} < k2 = {k2}"),
            Violation::NoInNeighbourInV2(v) => {
                write!(f, "vertex {v} has no in-neighbour in V2 (δ⁻(D[V2]) = 0)")
            }
            Violation::MissingBranching => write!(f, "V1 is non-empty but no branching given"),
            Violation::BranchingOnEmptyV1 => write!(f, "branching given for empty V1"),
            Violation::BranchingVertexSet => write!(f, "branching does not span exactly V1"),
            Violation::BranchingArcMissing(p, c) => write!(f, "branching arc {p} -> {c} is not an arc of D"),
            Violation::BranchingNotRooted(v) => write!(f, "vertex {v} does not lead back to the root"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verification {
    pub violations: Vec<Violation>,
}

impl Verification {
    pub fn is_accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a witness exactly as given: the supplied parent mapping is walked,
/// never re-derived.
pub fn verify(instance: &Instance, p: &GoodPartition) -> Verification {
    let d = &instance.digraph;
    let n = d.n();
    let mut violations = Vec::new();
    for &v in p.v1.iter().chain(&p.v2) {
        if v >= n {
            violations.push(Violation::VertexOutOfRange(v));
        }
    }
    if !violations.is_empty() {
        return Verification { violations };
    }
    for v in p.v1.intersection(&p.v2) {
        violations.push(Violation::InBothSides(*v));
    }
    for v in d.vertices() {
        if !p.v1.contains(&v) && !p.v2.contains(&v) {
            violations.push(Violation::Unassigned(v));
        }
    }
    if p.v1.len() < instance.k1 {
        violations.push(Violation::V1TooSmall { size: p.v1.len(), k1: instance.k1 });
    }
    if p.v2.len() < instance.k2 {
        violations.push(Violation::V2TooSmall { size: p.v2.len(), k2: instance.k2 });
    }
    for &v in &p.v2 {
        if !d.in_neighbors(v).iter().any(|u| p.v2.contains(u)) {
            violations.push(Violation::NoInNeighbourInV2(v));
        }
    }
    match (&p.branching, p.v1.is_empty()) {
        (None, false) => violations.push(Violation::MissingBranching),
        (Some(_), true) => violations.push(Violation::BranchingOnEmptyV1),
        (None, true) => {}
        (Some(t), false) => {
            let spans = t.vertices() == p.v1 && t.parent.keys().all(|c| *c != t.root);
            if !spans {
                violations.push(Violation::BranchingVertexSet);
            }
            for (par, child) in t.arcs() {
                if par >= n || child >= n || !d.has_arc(par, child) {
                    violations.push(Violation::BranchingArcMissing(par, child));
                }
            }
            for &start in t.parent.keys() {
                let mut cur = start;
                let mut steps = 0;
                let rooted = loop {
                    if cur == t.root {
                        break true;
                    }
                    match t.parent.get(&cur) {
                        Some(&next) if steps <= t.parent.len() => {
                            cur = next;
                            steps += 1;
                        }
                        _ => break false,
                    }
                };
                if !rooted {
                    violations.push(Violation::BranchingNotRooted(start));
                }
            }
        }
    }
    Verification { violations }
}

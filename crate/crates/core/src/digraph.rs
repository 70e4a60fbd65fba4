//! Immutable simple digraphs over dense vertex ids.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::GraphError;

pub type VertexId = usize;
pub type VertexSet = BTreeSet<VertexId>;

/// A simple digraph: no self-loops, no parallel arcs. Adjacency lists are
/// kept sorted so that every "lowest id first" tie-break is a linear scan.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
    arc_count: usize,
}

/// Bijection between a vertex subset of a parent digraph and the dense ids
/// of a derived digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    to_old: Vec<VertexId>,
    to_new: Vec<Option<VertexId>>,
}

impl VertexMap {
    pub fn old(&self, new: VertexId) -> VertexId {
        self.to_old[new]
    }

    pub fn new_id(&self, old: VertexId) -> Option<VertexId> {
        self.to_new.get(old).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_old.is_empty()
    }

    pub fn old_ids(&self) -> &[VertexId] {
        &self.to_old
    }
}

/// One strong component together with its position in the condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Sorted member ids.
    pub vertices: Vec<VertexId>,
    /// No arc enters the component from outside.
    pub initial: bool,
    /// A single vertex (simple digraphs have no loops, so it lies on no cycle).
    pub trivial: bool,
}

/// Out-tree given as a parent mapping. The root has no entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutTree {
    pub root: VertexId,
    pub parent: BTreeMap<VertexId, VertexId>,
}

impl OutTree {
    pub fn singleton(root: VertexId) -> Self {
        OutTree { root, parent: BTreeMap::new() }
    }

    pub fn vertices(&self) -> VertexSet {
        std::iter::once(self.root).chain(self.parent.keys().copied()).collect()
    }

    pub fn len(&self) -> usize {
        self.parent.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Tree arcs as `(parent, child)` pairs, ordered by child.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.parent.iter().map(|(&c, &p)| (p, c))
    }

    /// Checks the out-tree invariants against `d`: every tree arc is an arc
    /// of `d` and following parents from any vertex ends at the root.
    pub fn is_valid_in(&self, d: &Digraph) -> bool {
        if self.root >= d.n() || self.parent.contains_key(&self.root) {
            return false;
        }
        for (&c, &p) in &self.parent {
            if c >= d.n() || p >= d.n() || !d.has_arc(p, c) {
                return false;
            }
        }
        // Walk to the root; more than |T| steps means a cycle.
        for &start in self.parent.keys() {
            let mut cur = start;
            let mut steps = 0;
            while cur != self.root {
                match self.parent.get(&cur) {
                    Some(&p) => cur = p,
                    None => return false,
                }
                steps += 1;
                if steps > self.parent.len() {
                    return false;
                }
            }
        }
        true
    }
}

/// A directed cycle listed in traversal order; the closing arc is
/// `last -> first`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn is_valid_in(&self, d: &Digraph) -> bool {
        let distinct: VertexSet = self.vertex_set();
        self.vertices.len() >= 2
            && distinct.len() == self.vertices.len()
            && self.vertices.iter().all(|&v| v < d.n())
            && self.arcs().all(|(u, v)| d.has_arc(u, v))
    }
}

/// Bookkeeping for a sequence of contractions into one survivor.
///
/// Contracted digraphs are relabelled densely; `labels[i]` is the original
/// id of current vertex `i`. Provenance maps each arc created by contraction,
/// keyed by original `(survivor, head)`, to the original tail it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionRecord {
    pub survivor: VertexId,
    pub absorbed: Vec<VertexId>,
    pub arc_provenance: BTreeMap<(VertexId, VertexId), VertexId>,
    labels: Vec<VertexId>,
}

impl ContractionRecord {
    pub fn new(d: &Digraph, survivor: VertexId) -> Self {
        ContractionRecord {
            survivor,
            absorbed: Vec::new(),
            arc_provenance: BTreeMap::new(),
            labels: (0..d.n()).collect(),
        }
    }

    /// Original id of a vertex of the current contracted digraph.
    pub fn original(&self, current: VertexId) -> VertexId {
        self.labels[current]
    }

    /// Current id of an original vertex, if it has not been absorbed.
    pub fn current(&self, original: VertexId) -> Option<VertexId> {
        self.labels.binary_search(&original).ok()
    }

    /// Original tail of the arc `survivor -> head` (original ids).
    pub fn tail_of(&self, head: VertexId) -> VertexId {
        self.arc_provenance
            .get(&(self.survivor, head))
            .copied()
            .unwrap_or(self.survivor)
    }
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            arc_count: 0,
        }
    }

    /// Builds a digraph, rejecting out-of-range ids, self-loops and
    /// duplicate arcs.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            out_adj[u].push(v);
        }
        for (u, list) in out_adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateArc(u, w[0]));
            }
        }
        Ok(Self::from_out_adj(out_adj))
    }

    /// Builds a digraph silently dropping loops and repeated arcs.
    pub(crate) fn from_arcs_lossy<I>(n: usize, arcs: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u != v {
                out_adj[u].push(v);
            }
        }
        for list in &mut out_adj {
            list.sort_unstable();
            list.dedup();
        }
        Self::from_out_adj(out_adj)
    }

    fn from_out_adj(out_adj: Vec<Vec<VertexId>>) -> Self {
        let n = out_adj.len();
        let mut in_adj = vec![Vec::new(); n];
        let mut arc_count = 0;
        // Iterating tails in order keeps every in-list sorted.
        for (u, list) in out_adj.iter().enumerate() {
            arc_count += list.len();
            for &v in list {
                in_adj[v].push(u);
            }
        }
        Digraph { out_adj, in_adj, arc_count }
    }

    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v].len()
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    /// Vertices of in-degree zero, ascending.
    pub fn sources(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.in_degree(v) == 0).collect()
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// `D[U]`, relabelled so that the i-th smallest member of `U` becomes `i`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Digraph, VertexMap), GraphError> {
        for &v in set {
            self.check_vertex(v)?;
        }
        let mut keep = vec![false; self.n()];
        for &v in set {
            keep[v] = true;
        }
        Ok(self.induced_by_mask(&keep))
    }

    pub(crate) fn induced_by_mask(&self, keep: &[bool]) -> (Digraph, VertexMap) {
        let mut to_new = vec![None; self.n()];
        let mut to_old = Vec::new();
        for v in self.vertices().filter(|&v| keep[v]) {
            to_new[v] = Some(to_old.len());
            to_old.push(v);
        }
        let out_adj = to_old
            .iter()
            .map(|&u| {
                self.out_adj[u]
                    .iter()
                    .filter_map(|&v| to_new[v])
                    .collect::<Vec<_>>()
            })
            .collect();
        (Self::from_out_adj(out_adj), VertexMap { to_old, to_new })
    }

    /// Strong components in a topological order of the condensation
    /// (every crossing arc goes from an earlier to a later component).
    pub fn strong_components(&self) -> Vec<Component> {
        let comp_of = self.component_index();
        let count = comp_of.iter().copied().max().map_or(0, |c| c + 1);
        let mut members = vec![Vec::new(); count];
        for v in self.vertices() {
            members[comp_of[v]].push(v);
        }
        let mut entered = vec![false; count];
        for (u, v) in self.arcs() {
            if comp_of[u] != comp_of[v] {
                entered[comp_of[v]] = true;
            }
        }
        members
            .into_iter()
            .zip(entered)
            .map(|(vertices, entered)| Component {
                trivial: vertices.len() == 1,
                initial: !entered,
                vertices,
            })
            .collect()
    }

    /// Iterative Tarjan. Returns, per vertex, the index of its component in
    /// topological order.
    pub(crate) fn component_index(&self) -> Vec<usize> {
        let n = self.n();
        const UNSEEN: usize = usize::MAX;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comp = vec![UNSEEN; n];
        let mut finished = 0;
        let mut counter = 0;
        // (vertex, next out-neighbour position)
        let mut call: Vec<(VertexId, usize)> = Vec::new();
        for start in 0..n {
            if index[start] != UNSEEN {
                continue;
            }
            call.push((start, 0));
            index[start] = counter;
            low[start] = counter;
            counter += 1;
            stack.push(start);
            on_stack[start] = true;
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if let Some(&w) = self.out_adj[v].get(*pos) {
                    *pos += 1;
                    if index[w] == UNSEEN {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w] = false;
                            comp[w] = finished;
                            if w == v {
                                break;
                            }
                        }
                        finished += 1;
                    }
                }
            }
        }
        // Tarjan finishes sinks first.
        comp.iter().map(|&c| finished - 1 - c).collect()
    }

    pub fn is_strong(&self) -> bool {
        self.n() <= 1 || self.component_index().iter().all(|&c| c == 0)
    }

    /// Contracts `v` into `u`: `v` disappears, `u` gains an arc to every
    /// out-neighbour of `v` other than itself. Arcs into `v` are dropped.
    /// The result is relabelled densely; `rec` tracks original ids.
    pub fn contract(
        &self,
        u: VertexId,
        v: VertexId,
        rec: &mut ContractionRecord,
    ) -> Result<Digraph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::ContractSelf(u));
        }
        if !self.has_arc(u, v) {
            return Err(GraphError::MissingArc(u, v));
        }
        let (u_orig, v_orig) = (rec.labels[u], rec.labels[v]);
        for &w in &self.out_adj[v] {
            if w != u && !self.has_arc(u, w) {
                let w_orig = rec.labels[w];
                let tail = rec
                    .arc_provenance
                    .get(&(v_orig, w_orig))
                    .copied()
                    .unwrap_or(v_orig);
                rec.arc_provenance.insert((u_orig, w_orig), tail);
            }
        }
        rec.arc_provenance.retain(|&(t, h), _| t != v_orig && h != v_orig);
        rec.absorbed.push(v_orig);
        rec.labels.remove(v);

        let shift = |x: VertexId| if x > v { x - 1 } else { x };
        let arcs = self
            .arcs()
            .filter(|&(a, b)| a != v && b != v)
            .chain(self.out_adj[v].iter().map(|&w| (u, w)))
            .filter(|&(a, b)| a != b && b != v)
            .map(|(a, b)| (shift(a), shift(b)));
        Ok(Self::from_arcs_lossy(self.n() - 1, arcs))
    }

    /// A shortest directed cycle, or `None` when acyclic. Runs one
    /// breadth-first search per vertex; the lowest start vertex wins ties.
    pub fn shortest_cycle(&self) -> Option<Cycle> {
        let n = self.n();
        let mut best: Option<Cycle> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut touched = Vec::new();
        for start in 0..n {
            if self.in_degree(start) == 0 || self.out_degree(start) == 0 {
                continue;
            }
            let limit = best.as_ref().map_or(usize::MAX, |c| c.len());
            if limit == 2 {
                break;
            }
            let mut queue = VecDeque::new();
            dist[start] = 0;
            touched.push(start);
            queue.push_back(start);
            let mut closing = None;
            'bfs: while let Some(x) = queue.pop_front() {
                if dist[x] + 1 >= limit {
                    break;
                }
                for &y in &self.out_adj[x] {
                    if y == start {
                        closing = Some(x);
                        break 'bfs;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        touched.push(y);
                        queue.push_back(y);
                    }
                }
            }
            if let Some(mut x) = closing {
                let mut verts = vec![x];
                while x != start {
                    x = parent[x];
                    verts.push(x);
                }
                verts.reverse();
                best = Some(Cycle { vertices: verts });
            }
            for &t in &touched {
                dist[t] = usize::MAX;
            }
            touched.clear();
        }
        best
    }

    /// Breadth-first out-tree from `s`; parents are first discoverers.
    pub fn bfs_tree(&self, s: VertexId) -> OutTree {
        let mut parent = BTreeMap::new();
        let mut seen = vec![false; self.n()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.out_adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent.insert(y, x);
                    queue.push_back(y);
                }
            }
        }
        OutTree { root: s, parent }
    }

    /// Spanning out-tree rooted at `s`, if every vertex is reachable from it.
    pub fn out_branching_from(&self, s: VertexId) -> Option<OutTree> {
        if s >= self.n() {
            return None;
        }
        let tree = self.bfs_tree(s);
        (tree.len() == self.n()).then_some(tree)
    }

    pub fn reverse(&self) -> Digraph {
        Digraph {
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            arc_count: self.arc_count,
        }
    }

    /// Shortest path from `from` to `to` as a vertex sequence, if any.
    pub fn shortest_path(&self, from: VertexId, to: VertexId) -> Option<Vec<VertexId>> {
        let mut parent = vec![usize::MAX; self.n()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &y in &self.out_adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

//! The digraph `D_S` on the branchable out-neighbours `S` of the root inside
//! one strong component `C`, and the search for a cycle of `C` that misses
//! at least `k1` vertices of `S`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::digraph::{Cycle, Digraph, VertexId, VertexSet};
use crate::error::SolveError;
use crate::kernel::set_to_mask;

/// `D_S`: vertex `i` stands for `members[i]`; arc `i -> j` exists when `C`
/// has a path from `members[i]` to `members[j]` with no interior vertex in
/// `S`. `representatives[(i, j)]` is one such path in original ids,
/// endpoints included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    pub members: Vec<VertexId>,
    pub graph: Digraph,
    pub representatives: BTreeMap<(usize, usize), Vec<VertexId>>,
}

impl QuotientGraph {
    pub fn is_strong(&self) -> bool {
        self.graph.is_strong()
    }

    /// Original ids of a `D_S` vertex sequence.
    pub fn originals(&self, idx: &[usize]) -> Vec<VertexId> {
        idx.iter().map(|&i| self.members[i]).collect()
    }
}

/// Builds `D_S` by a breadth-first search from every `a` in `S` that only
/// expands vertices outside `S`. The first (shortest) path found for each
/// pair is kept as its representative.
pub fn build_quotient(d: &Digraph, c: &VertexSet, s: &VertexSet) -> Result<QuotientGraph, SolveError> {
    if let Some(v) = s.iter().find(|v| !c.contains(v)) {
        return Err(SolveError::Internal(format!("quotient vertex {v} is not in C")));
    }
    if let Some(&v) = c.iter().find(|&&v| v >= d.n()) {
        return Err(crate::error::GraphError::VertexOutOfRange { vertex: v, n: d.n() }.into());
    }
    let members: Vec<VertexId> = s.iter().copied().collect();
    let index: HashMap<VertexId, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let in_c = set_to_mask(d.n(), c);
    let mut representatives = BTreeMap::new();
    let mut parent = vec![usize::MAX; d.n()];
    let mut touched = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        let mut queue = VecDeque::from([a]);
        parent[a] = a;
        touched.push(a);
        while let Some(x) = queue.pop_front() {
            for &y in d.out_neighbors(x) {
                if !in_c[y] {
                    continue;
                }
                if let Some(&j) = index.get(&y) {
                    if j != i && !representatives.contains_key(&(i, j)) {
                        let mut path = vec![y, x];
                        let mut cur = x;
                        while cur != a {
                            cur = parent[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        representatives.insert((i, j), path);
                    }
                } else if parent[y] == usize::MAX {
                    parent[y] = x;
                    touched.push(y);
                    queue.push_back(y);
                }
            }
        }
        for &t in &touched {
            parent[t] = usize::MAX;
        }
        touched.clear();
    }
    let graph = Digraph::from_arcs(members.len(), representatives.keys().copied())
        .expect("one arc per ordered pair, no loops");
    Ok(QuotientGraph { members, graph, representatives })
}

/// Upper bound on the girth of a digraph of order `n` with minimum
/// out-degree one, where `t` vertices have out-degree exactly one.
pub fn shen_bound(n: usize, t: usize) -> usize {
    if t == 0 {
        n.div_ceil(2)
    } else {
        (n + t - 1).div_ceil(2)
    }
}

/// A maximal path of `D_S[T]` with its entry `a` (`a -> first`) and exit
/// `b` (`last -> b`) in `T̄`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPath {
    pub entry: usize,
    pub vertices: Vec<usize>,
    pub exit: usize,
}

/// `T`: vertices of `D_S` with in- and out-degree exactly one; `T̄` the
/// rest. `D_S[T]` splits into vertex-disjoint paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    pub t: Vec<usize>,
    pub tbar: Vec<usize>,
    pub paths: Vec<TPath>,
}

impl PathDecomposition {
    pub fn of(ds: &Digraph) -> Result<Self, SolveError> {
        let is_t: Vec<bool> = ds
            .vertices()
            .map(|v| ds.in_degree(v) == 1 && ds.out_degree(v) == 1)
            .collect();
        let t: Vec<usize> = ds.vertices().filter(|&v| is_t[v]).collect();
        let tbar: Vec<usize> = ds.vertices().filter(|&v| !is_t[v]).collect();
        if tbar.is_empty() {
            return Err(SolveError::ThresholdViolation(
                "every vertex of D_S has in- and out-degree 1".into(),
            ));
        }
        let mut paths = Vec::new();
        let mut covered = 0;
        for &v in &t {
            let entry = ds.in_neighbors(v)[0];
            if is_t[entry] {
                continue;
            }
            let mut vertices = vec![v];
            let mut cur = v;
            while is_t[ds.out_neighbors(cur)[0]] {
                cur = ds.out_neighbors(cur)[0];
                vertices.push(cur);
            }
            covered += vertices.len();
            paths.push(TPath { entry, vertices, exit: ds.out_neighbors(cur)[0] });
        }
        if covered != t.len() {
            return Err(SolveError::Internal("D_S[T] contains a cycle, so D_S is not strong".into()));
        }
        Ok(PathDecomposition { t, tbar, paths })
    }
}

/// `D_T̄`: direct `D_S` arcs inside `T̄` plus one bundled arc per path of
/// `D_S[T]`. `weights[(a, b)]` sums the sizes of the paths bundled from `a`
/// to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundledMultigraph {
    pub tbar: Vec<usize>,
    pub direct: Vec<(usize, usize)>,
    /// `(a, b, index into PathDecomposition::paths)`.
    pub bundled: Vec<(usize, usize, usize)>,
    pub weights: BTreeMap<(usize, usize), usize>,
}

impl BundledMultigraph {
    pub fn of(ds: &Digraph, dec: &PathDecomposition) -> Self {
        let mut in_tbar = vec![false; ds.n()];
        for &v in &dec.tbar {
            in_tbar[v] = true;
        }
        let direct = ds.arcs().filter(|&(a, b)| in_tbar[a] && in_tbar[b]).collect();
        let mut bundled = Vec::new();
        let mut weights = BTreeMap::new();
        for (i, p) in dec.paths.iter().enumerate() {
            bundled.push((p.entry, p.exit, i));
            *weights.entry((p.entry, p.exit)).or_insert(0) += p.vertices.len();
        }
        BundledMultigraph { tbar: dec.tbar.clone(), direct, bundled, weights }
    }

    pub fn total_weight(&self) -> usize {
        self.weights.values().sum()
    }

    /// Shortest `from -> to` path; each step is `(head, Some(path))` for a
    /// bundled arc or `(head, None)` for a direct one.
    fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<(usize, Option<usize>)>> {
        let mut adj: BTreeMap<usize, Vec<(usize, Option<usize>)>> = BTreeMap::new();
        for &(a, b) in &self.direct {
            adj.entry(a).or_default().push((b, None));
        }
        for &(a, b, i) in &self.bundled {
            adj.entry(a).or_default().push((b, Some(i)));
        }
        for list in adj.values_mut() {
            list.sort();
        }
        let mut prev: HashMap<usize, (usize, Option<usize>)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = std::collections::HashSet::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut steps = Vec::new();
                let mut cur = to;
                while cur != from {
                    let (p, label) = prev[&cur];
                    steps.push((cur, label));
                    cur = p;
                }
                steps.reverse();
                return Some(steps);
            }
            for &(y, label) in adj.get(&x).into_iter().flatten() {
                if seen.insert(y) {
                    prev.insert(y, (x, label));
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AvoidBranch {
    /// A shortest cycle of `D_S`, when the girth bound leaves room.
    Girth,
    /// A cycle of `D_S` missing a path of `D_S[T]` with at least `k1` vertices.
    LongPath,
    /// Lightest path of the heaviest bundle plus a return path in `D_T̄`.
    Pigeonhole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidingCycle {
    /// A cycle of `C` in original ids.
    pub cycle: Cycle,
    pub branch: AvoidBranch,
    /// The `D_S` cycle it was expanded from (indices into `members`).
    pub quotient_cycle: Vec<usize>,
}

/// Finds a cycle of `C` avoiding at least `k1` vertices of `S`, assuming
/// `C - S` is acyclic and every cycle of `C` meets `S` at least twice.
pub fn find_avoiding_cycle(
    d: &Digraph,
    q: &QuotientGraph,
    c: &VertexSet,
    k1: usize,
) -> Result<AvoidingCycle, SolveError> {
    let ds = &q.graph;
    let ns = ds.n();
    let in_s = set_to_mask(d.n(), &q.members.iter().copied().collect());
    let off_s: Vec<bool> = d.vertices().map(|v| c.contains(&v) && !in_s[v]).collect();
    if d.induced_by_mask(&off_s).0.shortest_cycle().is_some() {
        return Err(SolveError::Internal("C - S contains a cycle".into()));
    }
    for &u in &q.members {
        let mut keep = off_s.clone();
        keep[u] = true;
        if d.induced_by_mask(&keep).0.shortest_cycle().is_some() {
            return Err(SolveError::Internal(format!("a cycle of C meets S only in {u}")));
        }
    }
    if ns < 2 || !q.is_strong() {
        return Err(SolveError::Internal("D_S is not strong".into()));
    }

    let t_plus = ds.vertices().filter(|&v| ds.out_degree(v) == 1).count();
    let t_minus = ds.vertices().filter(|&v| ds.in_degree(v) == 1).count();
    let t = t_plus.min(t_minus);

    let (quotient_cycle, branch) = if shen_bound(ns, t) + k1 <= ns {
        let cy = ds.shortest_cycle().expect("strong digraph with two vertices has a cycle");
        (cy.vertices, AvoidBranch::Girth)
    } else {
        let dec = PathDecomposition::of(ds)?;
        if let Some(long) = dec.paths.iter().find(|p| p.vertices.len() >= k1) {
            let mut keep = vec![true; ns];
            for &v in &long.vertices {
                keep[v] = false;
            }
            let (sub, map) = ds.induced_by_mask(&keep);
            let cy = sub.shortest_cycle().ok_or_else(|| {
                SolveError::ThresholdViolation("every cycle of D_S runs through one long path".into())
            })?;
            (cy.vertices.iter().map(|&v| map.old(v)).collect(), AvoidBranch::LongPath)
        } else {
            let bundle = BundledMultigraph::of(ds, &dec);
            let (&(a, b), _) = bundle
                .weights
                .iter()
                .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(x.0)))
                .ok_or_else(|| SolveError::ThresholdViolation("D_S[T] has no paths".into()))?;
            let lightest = dec
                .paths
                .iter()
                .filter(|p| p.entry == a && p.exit == b)
                .min_by_key(|p| p.vertices.len())
                .expect("weighted pair has a path");
            let mut cyc = vec![a];
            cyc.extend(&lightest.vertices);
            if a != b {
                let back = bundle
                    .shortest_path(b, a)
                    .ok_or_else(|| SolveError::Internal("D_T̄ has no path back".into()))?;
                cyc.push(b);
                for (head, label) in back {
                    if let Some(i) = label {
                        cyc.extend(&dec.paths[i].vertices);
                    }
                    if head != a {
                        cyc.push(head);
                    }
                }
            }
            (cyc, AvoidBranch::Pigeonhole)
        }
    };

    let cycle = expand_to_cycle(q, &quotient_cycle);
    if !cycle.is_valid_in(d) || cycle.vertices.iter().any(|v| !c.contains(v)) {
        return Err(SolveError::Internal("expanded cycle is not a cycle of C".into()));
    }
    let hit = cycle.vertices.iter().filter(|&&v| in_s[v]).count();
    if ns - hit < k1 {
        return Err(SolveError::ThresholdViolation(format!(
            "cycle avoids only {} of {} quotient vertices, need {k1}",
            ns - hit,
            ns
        )));
    }
    Ok(AvoidingCycle { cycle, branch, quotient_cycle })
}

/// Replaces each `D_S` arc by its representative path and cuts the closed
/// walk at its first repeated vertex.
fn expand_to_cycle(q: &QuotientGraph, quotient_cycle: &[usize]) -> Cycle {
    let len = quotient_cycle.len();
    let mut walk = Vec::new();
    for i in 0..len {
        let (x, y) = (quotient_cycle[i], quotient_cycle[(i + 1) % len]);
        let rep = &q.representatives[&(x, y)];
        walk.extend_from_slice(&rep[..rep.len() - 1]);
    }
    let mut first_seen: HashMap<VertexId, usize> = HashMap::new();
    for (j, &v) in walk.iter().enumerate() {
        if let Some(&i) = first_seen.get(&v) {
            return Cycle { vertices: walk[i..j].to_vec() };
        }
        first_seen.insert(v, j);
    }
    Cycle { vertices: walk }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(n: usize) -> VertexSet {
        (0..n).collect()
    }

    #[test]
    fn quotient_with_shared_middle_path() {
        // s1..s4 = 0..3, a = 4, b = 5
        let d = Digraph::from_arcs(
            6,
            [(0, 1), (0, 2), (3, 2), (1, 4), (2, 4), (4, 5), (5, 0), (5, 3)],
        )
        .unwrap();
        let s: VertexSet = [0, 1, 2, 3].into_iter().collect();
        let q = build_quotient(&d, &all(6), &s).unwrap();
        let arcs: Vec<_> = q.graph.arcs().collect();
        assert_eq!(
            arcs,
            vec![(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 2)]
        );
        assert_eq!(q.representatives[&(2, 0)], vec![2, 4, 5, 0]);
        assert!(q.is_strong());
    }

    #[test]
    fn quotient_small_examples() {
        let c3 = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let q = build_quotient(&c3, &all(3), &all(3)).unwrap();
        assert_eq!(q.graph, c3);

        // u=0 -> x=1 -> v=2 -> y=3 -> u
        let c4 = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s: VertexSet = [0, 2].into_iter().collect();
        let q = build_quotient(&c4, &all(4), &s).unwrap();
        assert_eq!(q.graph.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        assert_eq!(q.representatives[&(1, 0)], vec![2, 3, 0]);
    }

    #[test]
    fn shen_bound_values() {
        assert_eq!(shen_bound(6, 0), 3);
        assert_eq!(shen_bound(7, 0), 4);
        assert_eq!(shen_bound(6, 5), 5);
        assert_eq!(shen_bound(10, 7), 8);
    }

    fn complete(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))))
            .unwrap()
    }

    #[test]
    fn girth_branch_on_complete_digraph() {
        let d = complete(6);
        let q = build_quotient(&d, &all(6), &all(6)).unwrap();
        let found = find_avoiding_cycle(&d, &q, &all(6), 1).unwrap();
        assert_eq!(found.branch, AvoidBranch::Girth);
        assert_eq!(found.cycle.len(), 2);
    }

    #[test]
    fn long_path_branch() {
        // a=0 -> 1 -> 2 -> 3 -> b=4, b -> a, b <-> c=5
        let d = Digraph::from_arcs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 4)]).unwrap();
        let q = build_quotient(&d, &all(6), &all(6)).unwrap();
        let dec = PathDecomposition::of(&q.graph).unwrap();
        assert_eq!(dec.tbar, vec![4]);
        assert_eq!(dec.paths.len(), 2);
        let found = find_avoiding_cycle(&d, &q, &all(6), 3).unwrap();
        assert_eq!(found.branch, AvoidBranch::LongPath);
        assert_eq!(found.cycle.vertex_set(), [4, 5].into_iter().collect());
    }

    #[test]
    fn bundled_weights_sum_to_t() {
        // a=0 -> 1 -> 2 -> b=5, a -> 3 -> 4 -> b, b -> a
        let d = Digraph::from_arcs(6, [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let dec = PathDecomposition::of(&d).unwrap();
        assert_eq!(dec.t, vec![1, 2, 3, 4]);
        assert_eq!(dec.tbar, vec![0, 5]);
        let bundle = BundledMultigraph::of(&d, &dec);
        assert_eq!(bundle.weights[&(0, 5)], 4);
        assert_eq!(bundle.total_weight(), dec.t.len());
        // With k1 = 2 each path already has k1 vertices.
        let q = build_quotient(&d, &all(6), &all(6)).unwrap();
        let found = find_avoiding_cycle(&d, &q, &all(6), 2).unwrap();
        assert_eq!(found.branch, AvoidBranch::LongPath);
        let avoided = 6 - found.cycle.len();
        assert!(avoided >= 2);
    }

    #[test]
    fn pigeonhole_branch() {
        // a=0 -> (1,2), (3,4), (5,6) -> b=7, b -> a; k1 = 3
        let mut arcs = vec![(7, 0)];
        for p in [(1, 2), (3, 4), (5, 6)] {
            arcs.extend([(0, p.0), p, (p.1, 7)]);
        }
        let d = Digraph::from_arcs(8, arcs).unwrap();
        let q = build_quotient(&d, &all(8), &all(8)).unwrap();
        let found = find_avoiding_cycle(&d, &q, &all(8), 3).unwrap();
        assert_eq!(found.branch, AvoidBranch::Pigeonhole);
        assert_eq!(found.cycle.vertices, vec![0, 1, 2, 7]);
    }

    #[test]
    fn rejects_cycle_meeting_s_once() {
        // 0 <-> 1 with S = {0}
        let d = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        let s: VertexSet = [0].into_iter().collect();
        let q = build_quotient(&d, &all(2), &s).unwrap();
        assert!(matches!(find_avoiding_cycle(&d, &q, &all(2), 1), Err(SolveError::Internal(_))));
    }

    #[test]
    fn closed_walk_is_cut_at_first_repeat() {
        // D_S cycle 0 -> 1 -> 0 whose representatives share vertex 2.
        let q = QuotientGraph {
            members: vec![0, 1],
            graph: Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap(),
            representatives: BTreeMap::from([((0, 1), vec![0, 2, 1]), ((1, 0), vec![1, 2, 0])]),
        };
        let cy = expand_to_cycle(&q, &[0, 1]);
        assert_eq!(cy.vertices, vec![2, 1]);
    }
}

//! The fixed-parameter decision procedure.
//!
//! After the easy exits (two sources, `k1 + k2 > n`, a zero size bound) the
//! branchable arcs `B` are computed and the instance falls into one of three
//! cases:
//!
//! 1. every vertex has at most `h` branchable out-neighbours: enumerate
//!    vertex sets of out-trees with exactly `k1` vertices in `D_B`;
//! 2. no source and some `s` with more than `h`: always YES, with an
//!    explicit construction rooted at `s` (see [`big`]);
//! 3. a unique source `r`: search out-trees from `r`, contracting absorbed
//!    vertices into `r` and switching to case 2 as soon as the contracted
//!    root has more than `h` branchable out-neighbours.

pub mod big;
pub mod quotient;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::digraph::{ContractionRecord, Digraph, OutTree, VertexId, VertexSet};
use crate::error::SolveError;
use crate::kernel::{
    self, branchable_arcs, branching_of, extend_subsolution, mask_to_set, params, trim, verify,
    BranchableArcs, GoodPartition, Instance, Params, Trimmer,
};

pub use big::{case_big_no_source, subcase_concentrated, subcase_spread};
pub use quotient::{
    build_quotient, find_avoiding_cycle, shen_bound, AvoidBranch, AvoidingCycle, BundledMultigraph,
    PathDecomposition, QuotientGraph,
};

/// Labels for the branches a solve went through, in visiting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    Reversed,
    MultipleSources,
    TooFewVertices,
    TrivialK2,
    TrivialK1,
    AllSmall,
    BigNoSource,
    Concentrated,
    ConcentratedOutside,
    ConcentratedGrow,
    ConcentratedNotInitial,
    ConcentratedCycle,
    CycleOffS,
    CycleOneS,
    AvoidGirth,
    AvoidLongPath,
    AvoidPigeonhole,
    Spread,
    WithSource,
    Backtrack,
    ReduceToBig,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Reversed => "reversed",
            CaseLabel::MultipleSources => "multiple-sources",
            CaseLabel::TooFewVertices => "too-few-vertices",
            CaseLabel::TrivialK2 => "trivial-k2",
            CaseLabel::TrivialK1 => "trivial-k1",
            CaseLabel::AllSmall => "case1",
            CaseLabel::BigNoSource => "case2",
            CaseLabel::Concentrated => "case2.1",
            CaseLabel::ConcentratedOutside => "case2.1a",
            CaseLabel::ConcentratedGrow => "case2.1b",
            CaseLabel::ConcentratedNotInitial => "case2.1c",
            CaseLabel::ConcentratedCycle => "case2.1d",
            CaseLabel::CycleOffS => "cycle-off-s",
            CaseLabel::CycleOneS => "cycle-one-s",
            CaseLabel::AvoidGirth => "avoid-girth",
            CaseLabel::AvoidLongPath => "avoid-long-path",
            CaseLabel::AvoidPigeonhole => "avoid-pigeonhole",
            CaseLabel::Spread => "case2.2",
            CaseLabel::WithSource => "case3",
            CaseLabel::Backtrack => "case3-backtrack",
            CaseLabel::ReduceToBig => "case3-reduce",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Yes(GoodPartition),
    No,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub answer: Answer,
    pub trace: Vec<CaseLabel>,
}

impl SolveResult {
    pub fn is_yes(&self) -> bool {
        matches!(self.answer, Answer::Yes(_))
    }

    pub fn witness(&self) -> Option<&GoodPartition> {
        match &self.answer {
            Answer::Yes(p) => Some(p),
            Answer::No => None,
        }
    }

    pub fn visited(&self, label: CaseLabel) -> bool {
        self.trace.contains(&label)
    }
}

pub(crate) type Trace = Vec<CaseLabel>;

fn no(trace: Trace) -> SolveResult {
    SolveResult { answer: Answer::No, trace }
}

/// Solves with `f` and `h` at their default values.
pub fn solve_with_defaults(instance: &Instance) -> Result<SolveResult, SolveError> {
    let p = params(instance.k1, instance.k2, None)?;
    solve(instance, &p)
}

/// Decides the instance; a YES carries a witness that has passed
/// [`verify`].
pub fn solve(instance: &Instance, params: &Params) -> Result<SolveResult, SolveError> {
    let mut trace = Trace::new();
    let answer = decide(instance, params, &mut trace)?;
    if let Some(p) = &answer {
        let report = verify(instance, p);
        if !report.is_accepted() {
            let why: Vec<_> = report.violations.iter().map(|v| v.to_string()).collect();
            return Err(SolveError::Internal(format!("witness rejected: {}", why.join("; "))));
        }
    }
    Ok(SolveResult {
        answer: answer.map_or(Answer::No, Answer::Yes),
        trace,
    })
}

fn decide(
    instance: &Instance,
    params: &Params,
    trace: &mut Trace,
) -> Result<Option<GoodPartition>, SolveError> {
    let d = &instance.digraph;
    let (k1, k2) = (instance.k1, instance.k2);
    let sources = d.sources();
    if sources.len() >= 2 {
        trace.push(CaseLabel::MultipleSources);
        return Ok(None);
    }
    if k1.saturating_add(k2) > d.n() {
        trace.push(CaseLabel::TooFewVertices);
        return Ok(None);
    }
    if k1.min(k2) == 0 {
        let res = solve_trivial_k(instance)?;
        let witness = res.witness().cloned();
        trace.extend(res.trace);
        return Ok(witness);
    }
    let ba = branchable_arcs(d, k2);
    let h = params.h;
    if ba.max_out_degree() as u64 <= h {
        let roots: Vec<VertexId> = match sources.first() {
            Some(&r) => vec![r],
            None => d.vertices().collect(),
        };
        return case_all_small(d, &ba, instance, &roots, trace);
    }
    match sources.first() {
        None => {
            let s = d
                .vertices()
                .find(|&v| ba.nbplus(v).len() as u64 > h)
                .expect("max degree exceeds h");
            case_big_no_source(d, &ba, s, k1, k2, params, trace).map(Some)
        }
        Some(&r) => case_with_source(d, r, instance, params, trace),
    }
}

/// Polynomial cases `k2 = 0` (grow from every admissible root) and `k1 = 0`
/// (keep the trimmed digraph as `V2`).
pub fn solve_trivial_k(instance: &Instance) -> Result<SolveResult, SolveError> {
    let d = &instance.digraph;
    let (k1, k2) = (instance.k1, instance.k2);
    if k1.min(k2) != 0 {
        return Err(SolveError::Internal(format!(
            "trivial procedure called with k1 = {k1}, k2 = {k2}"
        )));
    }
    let sources = d.sources();
    if sources.len() >= 2 {
        return Ok(no(vec![CaseLabel::MultipleSources]));
    }
    if k2 == 0 {
        let trace = vec![CaseLabel::TrivialK2];
        if d.n() == 0 && k1 == 0 {
            let p = GoodPartition { v1: VertexSet::new(), v2: VertexSet::new(), branching: None };
            return Ok(SolveResult { answer: Answer::Yes(p), trace });
        }
        let roots: Vec<VertexId> = match sources.first() {
            Some(&r) => vec![r],
            None => d.vertices().collect(),
        };
        for root in roots {
            let mut members = vec![false; d.n()];
            members[root] = true;
            let mut tree = OutTree::singleton(root);
            let size = kernel::grow_into(d, &mut members, &mut tree.parent, d.n(), &|_| true);
            if size >= k1 {
                let p = GoodPartition {
                    v1: mask_to_set(&members),
                    v2: d.vertices().filter(|&v| !members[v]).collect(),
                    branching: Some(tree),
                };
                return Ok(SolveResult { answer: Answer::Yes(p), trace });
            }
        }
        return Ok(no(trace));
    }
    let trace = vec![CaseLabel::TrivialK1];
    let keep = trim(d);
    if keep.len() < k2 {
        return Ok(no(trace));
    }
    let v1: VertexSet = d.vertices().filter(|v| !keep.contains(v)).collect();
    let branching = if v1.is_empty() {
        None
    } else {
        let tree = branching_of(d, &v1, sources.first().copied()).ok_or_else(|| {
            SolveError::Internal("trimmed-away vertices have no out-branching".into())
        })?;
        Some(tree)
    };
    let p = GoodPartition { v1, v2: keep, branching };
    Ok(SolveResult { answer: Answer::Yes(p), trace })
}

/// Depth-first search over vertex sets of out-trees in `D_B`. Trees with
/// the same vertex set are interchangeable for the trim test, so each set
/// is expanded once. A set is pruned as soon as `trim(D - W)` drops below
/// `k2`, which only gets worse for supersets.
struct TreeSearch<'a> {
    d: &'a Digraph,
    ba: &'a BranchableArcs,
    k1: usize,
    k2: usize,
    trimmer: Trimmer<'a>,
    seen: HashSet<Vec<VertexId>>,
}

impl<'a> TreeSearch<'a> {
    fn new(d: &'a Digraph, ba: &'a BranchableArcs, k1: usize, k2: usize) -> Self {
        TreeSearch {
            d,
            ba,
            k1,
            k2,
            trimmer: Trimmer::new(d, &vec![true; d.n()]),
            seen: HashSet::new(),
        }
    }

    fn search(&mut self, members: &mut Vec<VertexId>, in_tree: &mut [bool]) -> bool {
        if !self.trimmer.survives(members, self.k2) {
            return false;
        }
        if members.len() >= self.k1 {
            return true;
        }
        let mut frontier: Vec<VertexId> = members
            .iter()
            .flat_map(|&w| self.ba.nbplus(w).iter().copied())
            .filter(|&x| !in_tree[x])
            .collect();
        frontier.sort_unstable();
        frontier.dedup();
        for x in frontier {
            let mut key = members.clone();
            key.push(x);
            key.sort_unstable();
            if !self.seen.insert(key) {
                continue;
            }
            members.push(x);
            in_tree[x] = true;
            if self.search(members, in_tree) {
                return true;
            }
            members.pop();
            in_tree[x] = false;
        }
        false
    }

    fn witness(&mut self, root: VertexId, members: &[VertexId]) -> Result<GoodPartition, SolveError> {
        let v1p: VertexSet = members.iter().copied().collect();
        let v2p = mask_to_set(&self.trimmer.without(members));
        Ok(extend_subsolution(self.d, Some(root), &v1p, &v2p)?)
    }
}

/// All branchable out-degrees are at most `h`: try every out-tree vertex set
/// of size exactly `k1` in `D_B` rooted in `roots`. `None` means NO.
pub fn case_all_small(
    d: &Digraph,
    ba: &BranchableArcs,
    instance: &Instance,
    roots: &[VertexId],
    trace: &mut Vec<CaseLabel>,
) -> Result<Option<GoodPartition>, SolveError> {
    trace.push(CaseLabel::AllSmall);
    let mut search = TreeSearch::new(d, ba, instance.k1, instance.k2);
    for &root in roots {
        if !search.seen.insert(vec![root]) {
            continue;
        }
        let mut members = vec![root];
        let mut in_tree = vec![false; d.n()];
        in_tree[root] = true;
        if search.search(&mut members, &mut in_tree) {
            return search.witness(root, &members).map(Some);
        }
    }
    Ok(None)
}

/// Unique source `r`: grow out-trees from `r`, contracting absorbed
/// vertices into it. At each state the branchable out-neighbours of the
/// contracted root are recomputed; if there are more than `h`, the
/// contracted digraph is handed to case 2 with `r` as root.
pub fn case_with_source(
    d: &Digraph,
    r: VertexId,
    instance: &Instance,
    params: &Params,
    trace: &mut Vec<CaseLabel>,
) -> Result<Option<GoodPartition>, SolveError> {
    trace.push(CaseLabel::WithSource);
    let mut state = SourceSearch {
        d,
        r,
        k1: instance.k1,
        k2: instance.k2,
        params,
        trimmer: Trimmer::new(d, &vec![true; d.n()]),
        seen: HashSet::from([vec![r]]),
        backtracked: false,
    };
    let mut tree = OutTree::singleton(r);
    let mut order = vec![r];
    let mut in_tree = vec![false; d.n()];
    in_tree[r] = true;
    let found = state.search(&mut order, &mut tree, &mut in_tree, trace)?;
    if state.backtracked {
        trace.push(CaseLabel::Backtrack);
    }
    match found {
        Some(Found::Reduced(p)) => Ok(Some(p)),
        Some(Found::Tree) => {
            let v1p: VertexSet = order.iter().copied().collect();
            let v2p = mask_to_set(&state.trimmer.without(&order));
            Ok(Some(extend_subsolution(d, Some(r), &v1p, &v2p)?))
        }
        None => Ok(None),
    }
}

enum Found {
    Tree,
    Reduced(GoodPartition),
}

struct SourceSearch<'a> {
    d: &'a Digraph,
    r: VertexId,
    k1: usize,
    k2: usize,
    params: &'a Params,
    trimmer: Trimmer<'a>,
    seen: HashSet<Vec<VertexId>>,
    backtracked: bool,
}

impl SourceSearch<'_> {
    /// `order` lists the absorbed set in absorption order, starting with `r`.
    fn search(
        &mut self,
        order: &mut Vec<VertexId>,
        tree: &mut OutTree,
        in_tree: &mut [bool],
        trace: &mut Vec<CaseLabel>,
    ) -> Result<Option<Found>, SolveError> {
        if !self.trimmer.survives(order, self.k2) {
            return Ok(None);
        }
        if order.len() >= self.k1 {
            return Ok(Some(Found::Tree));
        }
        // Branchable out-neighbours of the contracted root: an arc r~ -> x
        // of the contracted digraph is branchable iff trim(D - W - x) keeps
        // k2 vertices.
        let mut candidates: Vec<VertexId> = order
            .iter()
            .flat_map(|&w| self.d.out_neighbors(w).iter().copied())
            .filter(|&x| !in_tree[x])
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        let mut nb = Vec::new();
        for x in candidates {
            order.push(x);
            if self.trimmer.survives(order, self.k2) {
                nb.push(x);
            }
            order.pop();
        }
        if nb.len() as u64 > self.params.h {
            trace.push(CaseLabel::ReduceToBig);
            return self.reduce(order, tree, trace).map(|p| Some(Found::Reduced(p)));
        }
        if nb.is_empty() {
            self.backtracked = true;
        }
        for x in nb {
            let mut key = order.clone();
            key.push(x);
            key.sort_unstable();
            if !self.seen.insert(key) {
                continue;
            }
            let parent = *order
                .iter()
                .filter(|&&w| self.d.has_arc(w, x))
                .min()
                .expect("candidate has an in-neighbour in the tree");
            order.push(x);
            in_tree[x] = true;
            tree.parent.insert(x, parent);
            if let Some(found) = self.search(order, tree, in_tree, trace)? {
                return Ok(Some(found));
            }
            tree.parent.remove(&x);
            in_tree[x] = false;
            order.pop();
        }
        Ok(None)
    }

    /// Contracts the absorbed vertices into `r`, runs case 2 there and maps
    /// the witness back: absorbed vertices join `V1` with their recorded tree
    /// arcs, and arcs leaving the contracted root are traced to the absorbed
    /// vertex they came from.
    fn reduce(
        &self,
        order: &[VertexId],
        tree: &OutTree,
        trace: &mut Vec<CaseLabel>,
    ) -> Result<GoodPartition, SolveError> {
        let mut rec = ContractionRecord::new(self.d, self.r);
        let mut cur = self.d.clone();
        for &x in &order[1..] {
            let root = rec.current(self.r).expect("root is never absorbed");
            let target = rec.current(x).expect("absorbed once");
            cur = cur.contract(root, target, &mut rec)?;
        }
        let s = rec.current(self.r).expect("root survives");
        let ba = branchable_arcs(&cur, self.k2);
        // The absorbed vertices other than r already count toward k1.
        let k1 = self.k1 + 1 - order.len();
        let inner = case_big_no_source(&cur, &ba, s, k1, self.k2, self.params, trace)?;

        let mut parent: BTreeMap<VertexId, VertexId> = tree.parent.clone();
        if let Some(t) = &inner.branching {
            for (&child, &par) in &t.parent {
                let child = rec.original(child);
                let par = if par == s { rec.tail_of(child) } else { rec.original(par) };
                parent.insert(child, par);
            }
        }
        let v1: VertexSet = inner
            .v1
            .iter()
            .map(|&v| rec.original(v))
            .chain(order.iter().copied())
            .collect();
        let v2: VertexSet = inner.v2.iter().map(|&v| rec.original(v)).collect();
        Ok(GoodPartition { v1, v2, branching: Some(OutTree { root: self.r, parent }) })
    }
}

/// Solves the in-branching / min-out-degree variant by reversing all arcs.
/// The returned witness is expressed against the reversed digraph: its
/// `branching` is an out-branching of `reverse(D)[V1]`, i.e. each parent
/// entry `child -> parent` is an arc of `D` and the tree is an in-branching
/// of `D[V1]`.
pub fn solve_reversed(instance: &Instance, params: &Params) -> Result<SolveResult, SolveError> {
    let reversed = Instance::new(instance.digraph.reverse(), instance.k1, instance.k2);
    let mut res = solve(&reversed, params)?;
    res.trace.insert(0, CaseLabel::Reversed);
    Ok(res)
}

/// A vertex whose branchable out-degree reaches `64k^4 + 8k^2`, which on a
/// digraph with minimum in-degree one is enough for a direct construction.
pub fn big_degree_fastpath(ba: &BranchableArcs, k: u64) -> Option<VertexId> {
    let threshold = 64u64
        .saturating_mul(k.saturating_pow(4))
        .saturating_add(8u64.saturating_mul(k.saturating_pow(2)));
    ba.db.vertices().find(|&v| ba.nbplus(v).len() as u64 >= threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ParamOverrides;

    fn g1() -> Digraph {
        Digraph::from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]).unwrap()
    }

    fn path4() -> Digraph {
        Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn cycle(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn run(d: Digraph, k1: usize, k2: usize) -> SolveResult {
        solve_with_defaults(&Instance::new(d, k1, k2)).unwrap()
    }

    fn set(v: &[VertexId]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn solve_examples() {
        let res = run(g1(), 2, 2);
        let p = res.witness().unwrap();
        assert_eq!((p.v1.clone(), p.v2.clone()), (set(&[0, 1]), set(&[2, 3])));
        assert!(res.visited(CaseLabel::AllSmall));

        assert!(!run(cycle(5), 1, 1).is_yes());
        let two_sources = Digraph::from_arcs(3, [(0, 2), (1, 2)]).unwrap();
        let res = run(two_sources, 1, 1);
        assert_eq!(res.trace, vec![CaseLabel::MultipleSources]);
        assert!(!run(path4(), 1, 1).is_yes());
    }

    #[test]
    fn trivial_k_examples() {
        let res = solve_trivial_k(&Instance::new(cycle(3), 3, 0)).unwrap();
        assert_eq!(res.witness().unwrap().v1, set(&[0, 1, 2]));
        assert!(!solve_trivial_k(&Instance::new(path4(), 0, 1)).unwrap().is_yes());
        let res = solve_trivial_k(&Instance::new(g1(), 0, 4)).unwrap();
        assert_eq!(res.witness().unwrap().v2, set(&[0, 1, 2, 3]));
        assert!(res.witness().unwrap().branching.is_none());
        assert!(solve_trivial_k(&Instance::new(g1(), 1, 1)).is_err());
    }

    #[test]
    fn trivial_k1_keeps_source_side_as_branching() {
        // 0 -> 1 -> {2,3 two-cycle}: trim drops 0 and 1.
        let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 2)]).unwrap();
        let res = solve_trivial_k(&Instance::new(d.clone(), 0, 2)).unwrap();
        let p = res.witness().unwrap();
        assert_eq!(p.v1, set(&[0, 1]));
        assert!(verify(&Instance::new(d, 0, 2), p).is_accepted());
    }

    #[test]
    fn empty_digraph_with_zero_bounds() {
        let res = run(Digraph::empty(0), 0, 0);
        assert!(res.is_yes());
        assert!(!run(Digraph::empty(3), 0, 0).is_yes());
    }

    #[test]
    fn case_all_small_examples() {
        let d = g1();
        let inst = Instance::new(d.clone(), 2, 2);
        let ba = branchable_arcs(&d, 2);
        let p = case_all_small(&d, &ba, &inst, &[0, 1, 2, 3], &mut Vec::new()).unwrap().unwrap();
        assert_eq!(p.v1, set(&[0, 1]));

        let d = cycle(3);
        let inst = Instance::new(d.clone(), 1, 2);
        let ba = branchable_arcs(&d, 2);
        assert!(ba.arcs.is_empty());
        assert!(case_all_small(&d, &ba, &inst, &[0, 1, 2], &mut Vec::new()).unwrap().is_none());
    }

    #[test]
    fn source_search_examples() {
        // r -> 1, 1 <-> 2
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 1)]).unwrap();
        let res = run(d, 1, 2);
        let p = res.witness().unwrap();
        assert_eq!((p.v1.clone(), p.v2.clone()), (set(&[0]), set(&[1, 2])));

        let d = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!run(d, 2, 1).is_yes());

        // r -> 1, 1 <-> 2, 3 <-> 4, 1 -> 3: 2 cannot stay in V2 without 1.
        let d = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 1), (3, 4), (4, 3), (1, 3)]).unwrap();
        let inst = Instance::new(d.clone(), 2, 2);
        let truth = crate::oracle::brute_force_solve(&inst).unwrap();
        assert_eq!(truth.witness().unwrap().v2, set(&[3, 4]));
        let res = run(d, 2, 2);
        assert!(res.is_yes());
        assert_eq!(res.witness().unwrap().v2, set(&[3, 4]));
    }

    #[test]
    fn case3_reduces_to_spread() {
        // r = 0 feeds four two-cycles {1,2}, {3,4}, {5,6}, {7,8}.
        let mut arcs = Vec::new();
        for i in 0..4 {
            let (a, b) = (1 + 2 * i, 2 + 2 * i);
            arcs.extend([(0, a), (a, b), (b, a)]);
        }
        let d = Digraph::from_arcs(9, arcs).unwrap();
        let inst = Instance::new(d, 2, 2);
        let p = params(2, 2, Some(ParamOverrides { f: Some(2), h: Some(3) })).unwrap();
        let res = solve(&inst, &p).unwrap();
        assert!(res.visited(CaseLabel::WithSource));
        assert!(res.visited(CaseLabel::ReduceToBig));
        assert!(res.visited(CaseLabel::Spread));
        let w = res.witness().unwrap();
        assert_eq!(w.v2, set(&[1, 2]));
    }

    #[test]
    fn reversed_matches_solve_on_reverse() {
        let d = g1();
        let a = solve_reversed(&Instance::new(d.clone(), 2, 2), &params(2, 2, None).unwrap()).unwrap();
        let b = run(d.reverse(), 2, 2);
        assert_eq!(a.is_yes(), b.is_yes());
        assert_eq!(a.trace[0], CaseLabel::Reversed);
        assert!(!solve_reversed(&Instance::new(path4(), 1, 1), &params(1, 1, None).unwrap())
            .unwrap()
            .is_yes());
    }

    #[test]
    fn fastpath_threshold() {
        // a hub with 72 out-neighbours, each on a two-cycle with a private partner
        let mut arcs = Vec::new();
        for i in 0..72 {
            let (a, b) = (1 + 2 * i, 2 + 2 * i);
            arcs.extend([(0, a), (a, b), (b, a)]);
        }
        arcs.push((1, 0));
        let d = Digraph::from_arcs(145, arcs).unwrap();
        let ba = branchable_arcs(&d, 1);
        assert_eq!(ba.nbplus(0).len(), 72);
        assert_eq!(big_degree_fastpath(&ba, 1), Some(0));
        assert_eq!(big_degree_fastpath(&ba, 2), None);
        assert_eq!(big_degree_fastpath(&branchable_arcs(&Digraph::empty(0), 1), 1), None);
    }

    #[test]
    fn fastpath_absent_below_threshold() {
        let mut arcs = Vec::new();
        for i in 0..71 {
            let (a, b) = (1 + 2 * i, 2 + 2 * i);
            arcs.extend([(0, a), (a, b), (b, a)]);
        }
        arcs.push((1, 0));
        let d = Digraph::from_arcs(143, arcs).unwrap();
        assert_eq!(big_degree_fastpath(&branchable_arcs(&d, 1), 1), None);
    }
}

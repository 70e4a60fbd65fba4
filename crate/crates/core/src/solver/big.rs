//! Case 2: a root `s` with more than `h` branchable out-neighbours, every
//! other vertex having an in-neighbour. Such instances are always YES under
//! the default thresholds; the functions here build the witness.
//!
//! With overridden thresholds the guarantees lapse, so every candidate
//! subsolution is checked before it is extended, and a construction that
//! cannot be completed returns [`SolveError::ThresholdViolation`].

use std::collections::{BTreeMap, VecDeque};

use crate::digraph::{Digraph, VertexId, VertexSet};
use crate::error::SolveError;
use crate::kernel::{
    branching_of, extend_subsolution, grow_into, mask_to_set, min_in_degree_one, set_to_mask,
    trim_mask, BranchableArcs, GoodPartition, Params,
};
use crate::solver::quotient::{build_quotient, find_avoiding_cycle, AvoidBranch};
use crate::solver::CaseLabel;

/// Strong components of `D[keep]`, in original ids, ordered by lowest member.
fn components_within(d: &Digraph, keep: &[bool]) -> Vec<(Vec<VertexId>, bool)> {
    let (sub, map) = d.induced_by_mask(keep);
    let mut comps: Vec<(Vec<VertexId>, bool)> = sub
        .strong_components()
        .into_iter()
        .map(|c| (c.vertices.iter().map(|&v| map.old(v)).collect(), c.trivial))
        .collect();
    comps.sort_by_key(|(vs, _)| vs[0]);
    comps
}

/// Checks `(V1', V2')` against the subsolution conditions (with `s` as the
/// root) and extends it.
fn attempt(
    d: &Digraph,
    s: VertexId,
    v1p: &VertexSet,
    v2p: &VertexSet,
    k1: usize,
    k2: usize,
) -> Option<GoodPartition> {
    let ok = v1p.len() >= k1
        && v2p.len() >= k2
        && v1p.contains(&s)
        && v1p.is_disjoint(v2p)
        && min_in_degree_one(d, v2p)
        && branching_of(d, v1p, Some(s)).is_some();
    if !ok {
        return None;
    }
    extend_subsolution(d, Some(s), v1p, v2p).ok()
}

/// `s` plus the `k1 - 1` lowest of `pool` outside `taken`.
fn out_star(s: VertexId, pool: &[VertexId], taken: &VertexSet, k1: usize) -> VertexSet {
    std::iter::once(s)
        .chain(pool.iter().copied().filter(|v| !taken.contains(v)).take(k1.saturating_sub(1)))
        .collect()
}

/// Grows `seed` in `D - s` up to `k2` vertices.
fn grow_avoiding(d: &Digraph, s: VertexId, seed: &VertexSet, k2: usize) -> VertexSet {
    let mut members = set_to_mask(d.n(), seed);
    grow_into(d, &mut members, &mut BTreeMap::new(), k2, &|v| v != s);
    mask_to_set(&members)
}

fn violation(what: &str) -> SolveError {
    SolveError::ThresholdViolation(what.to_string())
}

/// Dispatches to [`subcase_concentrated`] if some strong component of
/// `D - s` holds at least `f` of `N_B+(s)`, otherwise to [`subcase_spread`].
pub fn case_big_no_source(
    d: &Digraph,
    ba: &BranchableArcs,
    s: VertexId,
    k1: usize,
    k2: usize,
    params: &Params,
    trace: &mut Vec<CaseLabel>,
) -> Result<GoodPartition, SolveError> {
    trace.push(CaseLabel::BigNoSource);
    if let Some(v) = d.vertices().find(|&v| v != s && d.in_degree(v) == 0) {
        return Err(SolveError::Internal(format!("vertex {v} other than the root has in-degree 0")));
    }
    if (ba.nbplus(s).len() as u64) <= params.h {
        return Err(SolveError::Internal(format!("root {s} has at most h branchable out-neighbours")));
    }
    if k1.min(k2) == 0 {
        return Err(SolveError::Internal("big-degree case needs k1, k2 >= 1".into()));
    }
    let keep: Vec<bool> = d.vertices().map(|v| v != s).collect();
    let nb = ba.nbplus(s);
    let concentrated = components_within(d, &keep).into_iter().find(|(vs, _)| {
        nb.iter().filter(|x| vs.binary_search(x).is_ok()).count() as u64 >= params.f
    });
    match concentrated {
        Some((vs, _)) => {
            let c: VertexSet = vs.into_iter().collect();
            subcase_concentrated(d, ba, s, &c, k1, k2, trace)
        }
        None => subcase_spread(d, ba, s, k1, k2, trace),
    }
}

/// One strong component `C` of `D - s` holds many branchable out-neighbours
/// `S` of `s`. Tries, in order: `C` whole on either side, splitting `C` off
/// a non-initial position, and finally a cycle of `C` avoiding `k1`
/// vertices of `S`.
pub fn subcase_concentrated(
    d: &Digraph,
    ba: &BranchableArcs,
    s: VertexId,
    c: &VertexSet,
    k1: usize,
    k2: usize,
    trace: &mut Vec<CaseLabel>,
) -> Result<GoodPartition, SolveError> {
    trace.push(CaseLabel::Concentrated);
    let n = d.n();
    let in_c = set_to_mask(n, c);
    let s_set: Vec<VertexId> = ba.nbplus(s).iter().copied().filter(|&v| in_c[v]).collect();

    // (a) C joins s; V2' is what survives trimming D - C - s.
    let outside: Vec<bool> = d.vertices().map(|v| v != s && !in_c[v]).collect();
    let rest = mask_to_set(&trim_mask(d, &outside));
    let mut v1p = c.clone();
    v1p.insert(s);
    if let Some(p) = attempt(d, s, &v1p, &rest, k1, k2) {
        trace.push(CaseLabel::ConcentratedOutside);
        return Ok(p);
    }

    // (b) C is V2'; grow s in D_B - C.
    let mut members = vec![false; n];
    members[s] = true;
    grow_into(&ba.db, &mut members, &mut BTreeMap::new(), k1, &|v| !in_c[v]);
    if let Some(p) = attempt(d, s, &mask_to_set(&members), c, k1, k2) {
        trace.push(CaseLabel::ConcentratedGrow);
        return Ok(p);
    }

    // (c) Absorb vertices that become sources of D - s into s; what is left
    // is trim(D - s). Absorbed vertices never enter V2'.
    let no_s: Vec<bool> = d.vertices().map(|v| v != s).collect();
    let core = trim_mask(d, &no_s);
    if c.iter().any(|&v| !core[v]) {
        return Err(violation("component C was absorbed into the root"));
    }
    let entered = c
        .iter()
        .any(|&v| d.in_neighbors(v).iter().any(|&u| core[u] && !in_c[u]));
    if entered {
        trace.push(CaseLabel::ConcentratedNotInitial);
        // Ancestors of C inside the remaining digraph.
        let mut ancestor = vec![false; n];
        let mut queue: VecDeque<VertexId> = c.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &u in d.in_neighbors(x) {
                if core[u] && !in_c[u] && !ancestor[u] {
                    ancestor[u] = true;
                    queue.push_back(u);
                }
            }
        }
        // Components of D[core] in topological order; the first one made of
        // ancestors is initial in D[core], hence non-trivial.
        let (sub, map) = d.induced_by_mask(&core);
        let c_prime = sub
            .strong_components()
            .into_iter()
            .map(|comp| comp.vertices.iter().map(|&v| map.old(v)).collect::<VertexSet>())
            .find(|vs| vs.iter().all(|&v| ancestor[v]))
            .ok_or_else(|| SolveError::Internal("C is entered but has no ancestor component".into()))?;
        let v2p = grow_avoiding(d, s, &c_prime, k2);
        let v1p = out_star(s, &s_set, &v2p, k1);
        return attempt(d, s, &v1p, &v2p, k1, k2)
            .ok_or_else(|| violation("splitting a non-initial C left too few out-neighbours of s"));
    }

    // (d) C is initial: find a cycle O in C avoiding at least k1 of S, grow
    // it to k2 vertices and hang a star off s.
    trace.push(CaseLabel::ConcentratedCycle);
    let s_mask = set_to_mask(n, &s_set.iter().copied().collect());
    let off_s: Vec<bool> = d.vertices().map(|v| in_c[v] && !s_mask[v]).collect();
    let (sub, map) = d.induced_by_mask(&off_s);
    let mut cycle = sub
        .shortest_cycle()
        .map(|cy| cy.vertices.iter().map(|&v| map.old(v)).collect::<Vec<_>>());
    if cycle.is_some() {
        trace.push(CaseLabel::CycleOffS);
    } else {
        for &u in &s_set {
            let mut keep = off_s.clone();
            keep[u] = true;
            let (sub, map) = d.induced_by_mask(&keep);
            if let Some(cy) = sub.shortest_cycle() {
                trace.push(CaseLabel::CycleOneS);
                cycle = Some(cy.vertices.iter().map(|&v| map.old(v)).collect());
                break;
            }
        }
    }
    let cycle = match cycle {
        Some(cy) => cy,
        None => {
            let s_vs: VertexSet = s_set.iter().copied().collect();
            let q = build_quotient(d, c, &s_vs)?;
            let found = find_avoiding_cycle(d, &q, c, k1)?;
            trace.push(match found.branch {
                AvoidBranch::Girth => CaseLabel::AvoidGirth,
                AvoidBranch::LongPath => CaseLabel::AvoidLongPath,
                AvoidBranch::Pigeonhole => CaseLabel::AvoidPigeonhole,
            });
            found.cycle.vertices
        }
    };
    let o: VertexSet = cycle.into_iter().collect();
    let v2p = grow_avoiding(d, s, &o, k2);
    let v1p = out_star(s, &s_set, &v2p, k1);
    attempt(d, s, &v1p, &v2p, k1, k2)
        .ok_or_else(|| violation("cycle in C does not leave k1 - 1 out-neighbours of s"))
}

/// Every strong component of `D - s` holds fewer than `f` of `N_B+(s)`:
/// pile up non-trivial components (growing after each) until `V2'` has `k2`
/// vertices, then take a star from `s` into what is left.
pub fn subcase_spread(
    d: &Digraph,
    ba: &BranchableArcs,
    s: VertexId,
    k1: usize,
    k2: usize,
    trace: &mut Vec<CaseLabel>,
) -> Result<GoodPartition, SolveError> {
    trace.push(CaseLabel::Spread);
    let n = d.n();
    let mut v2 = vec![false; n];
    let mut size = 0;
    while size < k2 {
        let keep: Vec<bool> = d.vertices().map(|v| v != s && !v2[v]).collect();
        let (vs, _) = components_within(d, &keep)
            .into_iter()
            .find(|(_, trivial)| !trivial)
            .ok_or_else(|| violation("no non-trivial strong component left for V2'"))?;
        for v in vs {
            v2[v] = true;
        }
        size = grow_into(d, &mut v2, &mut BTreeMap::new(), k2, &|v| v != s);
    }
    let v2p = mask_to_set(&v2);
    let v1p = out_star(s, ba.nbplus(s), &v2p, k1);
    attempt(d, s, &v1p, &v2p, k1, k2)
        .ok_or_else(|| violation("too few branchable out-neighbours of s outside V2'"))
}

//! Hand-built instances that reach specific solver branches once `f` and
//! `h` are lowered. Vertex 0 is the root unless noted otherwise.

use twopart_core::{CaseLabel, Digraph};

pub struct Fixture {
    pub name: &'static str,
    pub digraph: Digraph,
    pub k1: usize,
    pub k2: usize,
    pub f: Option<u64>,
    pub h: Option<u64>,
    pub expect: Vec<CaseLabel>,
}

fn fixture(
    name: &'static str,
    n: usize,
    arcs: &[(usize, usize)],
    (k1, k2): (usize, usize),
    (f, h): (u64, u64),
    expect: &[CaseLabel],
) -> Fixture {
    Fixture {
        name,
        digraph: Digraph::from_arcs(n, arcs.iter().copied()).expect("fixture is simple"),
        k1,
        k2,
        f: Some(f),
        h: Some(h),
        expect: expect.to_vec(),
    }
}

fn from_root(targets: std::ops::RangeInclusive<usize>) -> Vec<(usize, usize)> {
    targets.map(|v| (0, v)).collect()
}

fn k4(offset: usize) -> Vec<(usize, usize)> {
    let vs: Vec<usize> = (offset..offset + 4).collect();
    vs.iter().flat_map(|&u| vs.iter().filter(move |&&v| v != u).map(move |&v| (u, v))).collect()
}

pub fn all() -> Vec<Fixture> {
    use CaseLabel::*;
    let mut out = Vec::new();

    // Two 2-cycles hanging off the root; every branchable out-degree is 1.
    out.push(fixture(
        "all-small",
        5,
        &[(0, 1), (1, 2), (2, 1), (3, 4), (4, 3), (4, 0)],
        (2, 2),
        (36, 72),
        &[AllSmall],
    ));

    // 3-cycle C fed by the root, disjoint 2-cycle left for V2.
    out.push(fixture(
        "concentrated-outside",
        6,
        &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1), (4, 5), (5, 4), (4, 0)],
        (2, 2),
        (2, 2),
        &[Concentrated, ConcentratedOutside],
    ));

    // C = K4; the root's other out-neighbour 5 dies without the root, so
    // C goes to V2 and the tree grows 0 -> 5.
    let mut arcs = from_root(1..=5);
    arcs.extend(k4(1));
    arcs.extend([(5, 6), (1, 0)]);
    out.push(fixture("concentrated-grow", 7, &arcs, (2, 2), (3, 3), &[ConcentratedGrow]));

    // C = K4 is entered from the 2-cycle {5, 6}; the chain 7 -> 8 keeps
    // the root from growing outside C.
    let mut arcs = from_root(1..=4);
    arcs.extend(k4(1));
    arcs.extend([(5, 6), (6, 5), (5, 1), (1, 0), (0, 7), (7, 8), (8, 2)]);
    out.push(fixture("concentrated-not-initial", 9, &arcs, (4, 3), (3, 3), &[ConcentratedNotInitial]));

    // C has the cycle 4 <-> 5 outside S = {1, 2, 3}.
    let mut arcs = from_root(1..=3);
    arcs.extend([(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 4), (5, 1), (1, 0)]);
    out.push(fixture("cycle-off-s", 6, &arcs, (2, 2), (3, 2), &[ConcentratedCycle, CycleOffS]));

    // Every cycle through 4 or 5 meets S = {1, 2, 3} once.
    let mut arcs = from_root(1..=3);
    arcs.extend([(1, 2), (2, 3), (3, 1), (1, 4), (4, 1), (2, 5), (5, 2), (1, 0)]);
    out.push(fixture("cycle-one-s", 6, &arcs, (2, 2), (3, 2), &[ConcentratedCycle, CycleOneS]));

    // C = S = K4: D_S is complete and its girth leaves room.
    let mut arcs = from_root(1..=4);
    arcs.extend(k4(1));
    arcs.push((1, 0));
    out.push(fixture("avoid-girth", 5, &arcs, (2, 2), (4, 3), &[ConcentratedCycle, AvoidGirth]));

    // D_S: the path 2 -> 3 -> 4 from 1 to 5, the arc 5 -> 1, and 5 <-> 6 <-> 7.
    let mut arcs = from_root(1..=7);
    arcs.extend([(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (5, 6), (6, 5), (6, 7), (7, 6), (5, 0)]);
    out.push(fixture("avoid-long-path", 8, &arcs, (3, 2), (7, 6), &[ConcentratedCycle, AvoidLongPath]));

    // Three two-vertex paths from 1 to 8, closed by 8 -> 1, plus the detour
    // 8 -> 9 <-> 10 -> 1.
    let mut arcs = from_root(1..=10);
    arcs.extend([
        (1, 2), (2, 3), (3, 8),
        (1, 4), (4, 5), (5, 8),
        (1, 6), (6, 7), (7, 8),
        (8, 1), (8, 9), (9, 10), (10, 9), (10, 1), (8, 0),
    ]);
    out.push(fixture("avoid-pigeonhole", 11, &arcs, (3, 2), (10, 9), &[ConcentratedCycle, AvoidPigeonhole]));

    // Four 2-cycles {1,2}, {3,4}, {5,6}, {7,8}, each entered from the root.
    let mut arcs = vec![(0, 1), (0, 3), (0, 5), (0, 7), (2, 0)];
    arcs.extend([(1, 2), (2, 1), (3, 4), (4, 3), (5, 6), (6, 5), (7, 8), (8, 7)]);
    out.push(fixture("spread", 9, &arcs, (2, 2), (2, 3), &[Spread]));
    out.push(fixture("spread-k2-3", 9, &arcs, (2, 3), (2, 3), &[Spread]));

    // Same without the arc into the root: the source case contracts nothing
    // and hands over at once.
    let arcs: Vec<_> = arcs.into_iter().filter(|&a| a != (2, 0)).collect();
    out.push(fixture("source-reduces", 9, &arcs, (2, 2), (2, 3), &[WithSource, ReduceToBig, Spread]));

    // Source 6. One branch of the search runs out of branchable
    // out-neighbours before the tree reaches four vertices.
    let arcs = [
        (0, 1), (0, 3), (0, 5), (1, 3), (2, 3), (3, 0), (3, 1), (4, 0),
        (4, 1), (4, 7), (5, 1), (5, 2), (5, 4), (6, 1), (6, 4),
    ];
    out.push(fixture("source-backtrack", 8, &arcs, (4, 2), (2, 2), &[WithSource, Backtrack]));

    // Source 6. A dead end first, then a contracted root with more than
    // two branchable out-neighbours.
    let arcs = [
        (0, 2), (2, 3), (2, 4), (2, 5), (3, 0), (3, 2), (3, 4),
        (4, 0), (4, 1), (4, 3), (4, 5), (6, 2), (6, 4),
    ];
    out.push(fixture(
        "source-backtrack-reduce",
        7,
        &arcs,
        (4, 2),
        (2, 2),
        &[WithSource, Backtrack, ReduceToBig, Spread],
    ));

    out
}

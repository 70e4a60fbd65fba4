use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twopart_core::oracle::{brute_force_solve, generate, Constraints, GeneratorConfig};
use twopart_core::solver::{build_quotient, find_avoiding_cycle, BundledMultigraph, PathDecomposition};
use twopart_core::{
    params, solve, solve_with_defaults, verify, Digraph, Instance, ParamOverrides, SolveError,
    VertexSet,
};

fn variant(i: u64) -> Constraints {
    match i % 3 {
        0 => Constraints::default(),
        1 => Constraints { min_in_degree_1: true, ..Constraints::default() },
        _ => Constraints { single_source: true, ..Constraints::default() },
    }
}

fn arb_instance() -> impl Strategy<Value = Instance> {
    (1usize..=9, 0.05f64..0.6, any::<u64>(), 0u64..3, 0usize..=4, 0usize..=4).prop_map(
        |(n, p, seed, v, k1, k2)| {
            Instance::new(generate(&GeneratorConfig::new(n, p, seed).with(variant(v))), k1, k2)
        },
    )
}

fn permuted(d: &Digraph, perm: &[usize]) -> Digraph {
    Digraph::from_arcs(d.n(), d.arcs().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn answer_is_invariant_under_relabelling(inst in arb_instance(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..inst.digraph.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let other = Instance::new(permuted(&inst.digraph, &perm), inst.k1, inst.k2);
        let a = solve_with_defaults(&inst).unwrap();
        let b = solve_with_defaults(&other).unwrap();
        prop_assert_eq!(a.is_yes(), b.is_yes());
    }

    #[test]
    fn answer_is_monotone_in_both_bounds(inst in arb_instance()) {
        if solve_with_defaults(&inst).unwrap().is_yes() {
            for (k1, k2) in [(inst.k1.saturating_sub(1), inst.k2), (inst.k1, inst.k2.saturating_sub(1))] {
                let smaller = Instance::new(inst.digraph.clone(), k1, k2);
                prop_assert!(solve_with_defaults(&smaller).unwrap().is_yes());
            }
        }
    }

    #[test]
    fn witnesses_pass_verify(inst in arb_instance()) {
        let res = solve_with_defaults(&inst).unwrap();
        if let Some(p) = res.witness() {
            prop_assert!(verify(&inst, p).is_accepted());
        }
    }
}

/// With `f` and `h` lowered the constructions lose their guarantees, so a
/// solve may refuse with a threshold violation, but every answer it does
/// give must match the oracle.
#[test]
fn lowered_thresholds_never_give_wrong_answers() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (mut answered, mut refused, mut big) = (0, 0, 0);
    for i in 0..6000 {
        let n = rng.gen_range(3..=10);
        let p = rng.gen_range(0.15..0.6);
        let d = generate(&GeneratorConfig::new(n, p, rng.gen()).with(variant(i)));
        let (k1, k2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let ov = ParamOverrides { f: Some(rng.gen_range(1..=4)), h: Some(rng.gen_range(1..=4)) };
        let inst = Instance::new(d, k1, k2);
        let truth = brute_force_solve(&inst).unwrap().is_yes();
        match solve(&inst, &params(k1, k2, Some(ov)).unwrap()) {
            Ok(res) => {
                assert_eq!(res.is_yes(), truth, "{inst:?} {ov:?} trace {:?}", res.trace);
                answered += 1;
                if res.trace.iter().any(|l| l.as_str() == "case2") {
                    big += 1;
                }
            }
            Err(SolveError::ThresholdViolation(_)) => refused += 1,
            Err(e) => panic!("{inst:?} {ov:?}: {e}"),
        }
    }
    assert!(big > 100, "only {big} solves reached the big-degree case");
    assert!(answered > 10 * refused, "{answered} answered, {refused} refused");
}

fn strong_instance(rng: &mut ChaCha8Rng) -> Option<(Digraph, VertexSet)> {
    let n = rng.gen_range(2..=9);
    let both = Constraints { min_in_degree_1: true, min_out_degree_1: true, single_source: false };
    let d = generate(&GeneratorConfig::new(n, rng.gen_range(0.1..0.5), rng.gen()).with(both));
    if !d.is_strong() {
        return None;
    }
    let s: VertexSet = d.vertices().filter(|_| rng.gen_bool(0.6)).collect();
    if s.len() < 2 {
        return None;
    }
    Some((d, s))
}

#[test]
fn quotient_of_strong_digraph_is_strong() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    while checked < 500 {
        let Some((d, s)) = strong_instance(&mut rng) else { continue };
        let c: VertexSet = d.vertices().collect();
        let q = build_quotient(&d, &c, &s).unwrap();
        assert!(q.is_strong(), "{d:?} S = {s:?}");
        for ((i, j), path) in &q.representatives {
            assert_eq!(path.first(), Some(&q.members[*i]));
            assert_eq!(path.last(), Some(&q.members[*j]));
            assert!(path.windows(2).all(|w| d.has_arc(w[0], w[1])));
            assert!(path[1..path.len() - 1].iter().all(|v| !s.contains(v)));
        }
        checked += 1;
    }
}

#[test]
fn path_weights_sum_to_t_and_avoiding_cycles_count_right() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let (mut checked, mut found) = (0, 0);
    while checked < 500 {
        let Some((d, s)) = strong_instance(&mut rng) else { continue };
        let c: VertexSet = d.vertices().collect();
        let q = build_quotient(&d, &c, &s).unwrap();
        if let Ok(dec) = PathDecomposition::of(&q.graph) {
            let bundle = BundledMultigraph::of(&q.graph, &dec);
            assert_eq!(bundle.total_weight(), dec.t.len());
        }
        let k1 = rng.gen_range(1..=3);
        // Only meaningful when the preconditions hold; otherwise an error.
        if let Ok(found_cycle) = find_avoiding_cycle(&d, &q, &c, k1) {
            let cy = &found_cycle.cycle;
            assert!(cy.is_valid_in(&d));
            let hit = cy.vertices.iter().filter(|v| s.contains(v)).count();
            assert!(s.len() - hit >= k1);
            found += 1;
        }
        checked += 1;
    }
    assert!(found > 0);
}

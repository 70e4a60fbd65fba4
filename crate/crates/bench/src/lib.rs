//! Instance builders shared by the solver benchmarks.

use twopart_core::oracle::{generate, Constraints, GeneratorConfig};
use twopart_core::{Digraph, Instance};

/// Random digraph with about `avg_out * n` arcs in which every vertex has an
/// in-neighbour.
pub fn sparse_digraph(n: usize, avg_out: f64, seed: u64) -> Digraph {
    let p = if n > 1 { (avg_out / (n - 1) as f64).min(1.0) } else { 0.0 };
    let constraints = Constraints { min_in_degree_1: true, ..Constraints::default() };
    generate(&GeneratorConfig::new(n, p, seed).with(constraints))
}

pub fn sparse_instance(n: usize, k: usize, seed: u64) -> Instance {
    Instance::new(sparse_digraph(n, 4.0, seed), k, k)
}

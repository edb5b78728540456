//! Fixed inputs shared by the benchmarks.

use netstrings::{generators::generate, GeneratorConfig, Graph};

/// Scale-free graph of the reproduction experiments (N = 200, k_min = 2).
pub fn scale_free(gamma: f64) -> Graph {
    generate(&GeneratorConfig::scale_free(200, gamma, 2, 42)).expect("valid scale-free config")
}

/// Newman–Watts graph of the reproduction experiments (N = 200, k_base = 2).
pub fn small_world(alpha: f64) -> Graph {
    generate(&GeneratorConfig::newman_watts(200, 2, alpha, 42)).expect("valid small-world config")
}

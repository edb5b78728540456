use netstrings::generators::{empirical_exponent, generate, generate_with_report, natural_cutoff};
use netstrings::metrics::generalized_clustering;
use netstrings::{GeneratorConfig, Model};

#[test]
fn same_seed_same_edge_list() {
    let configs = [
        GeneratorConfig::scale_free(200, 2.25, 2, 11),
        GeneratorConfig::newman_watts(200, 2, 0.4, 11),
        GeneratorConfig::erdos_renyi(80, 0.1, 11),
    ];
    for cfg in configs {
        let a = generate(&cfg).unwrap().to_edge_list();
        let b = generate(&cfg).unwrap().to_edge_list();
        assert_eq!(a, b, "{}", cfg.kind());
        let other = generate(&cfg.clone().with_seed(12)).unwrap().to_edge_list();
        assert_ne!(a, other, "{}", cfg.kind());
    }
}

#[test]
fn shortcut_count_matches_expectation() {
    let (n, k_base, alpha) = (200, 2, 0.3);
    let lattice = (n * k_base) as f64;
    let counts: Vec<f64> = (0..200)
        .map(|seed| {
            let g = generate(&GeneratorConfig::newman_watts(n, k_base, alpha, seed)).unwrap();
            g.edge_count() as f64 - lattice
        })
        .collect();
    let mean = counts.iter().sum::<f64>() / counts.len() as f64;
    let se = (lattice * alpha * (1.0 - alpha) / counts.len() as f64).sqrt();
    assert!(
        (mean - lattice * alpha).abs() < 3.0 * se,
        "mean shortcuts {mean}"
    );
}

#[test]
fn lattice_clustering() {
    let g = generate(&GeneratorConfig::ring_lattice(30, 2)).unwrap();
    assert_eq!(generalized_clustering(&g, 3).unwrap().value, 0.5);
    let g = generate(&GeneratorConfig::newman_watts(30, 2, 0.0, 4)).unwrap();
    assert_eq!(g.edge_count(), 60);
    assert!(g.degree_sequence().iter().all(|&d| d == 4));
}

#[test]
fn every_lattice_edge_survives_shortcuts() {
    let lattice = generate(&GeneratorConfig::ring_lattice(200, 2)).unwrap();
    let g = generate(&GeneratorConfig::newman_watts(200, 2, 1.0, 8)).unwrap();
    assert!(lattice.edges().iter().all(|&(u, v)| g.has_edge(u, v)));
}

#[test]
fn scale_free_respects_degree_bounds() {
    for (gamma, seed) in [(1.8, 0), (2.5, 1), (3.0, 2), (4.0, 3)] {
        let cfg = GeneratorConfig::scale_free(200, gamma, 2, seed);
        let k_max = cfg.resolved_k_max().unwrap();
        assert_eq!(k_max, natural_cutoff(200, gamma).clamp(2, 199));
        let (g, report) = generate_with_report(&cfg).unwrap();
        g.check_invariants().unwrap();
        let degrees = g.degree_sequence();
        assert!(degrees.iter().all(|&d| d <= k_max));
        let below = degrees.iter().filter(|&&d| d < 2).count();
        assert!(below <= report.discarded_stubs, "γ = {gamma}");
    }
}

#[test]
fn explicit_cutoff_is_honored() {
    let cfg = GeneratorConfig {
        n_nodes: 200,
        seed: 5,
        model: Model::ScaleFree {
            gamma: 2.0,
            k_min: 2,
            k_max: Some(14),
        },
    };
    let g = generate(&cfg).unwrap();
    assert!(g.degree_sequence().iter().all(|&d| d <= 14));
}

#[test]
fn exponent_is_recovered() {
    for gamma in [2.0, 3.0] {
        let estimates: Vec<f64> = (0..10)
            .map(|seed| {
                let g = generate(&GeneratorConfig::scale_free(2000, gamma, 2, seed)).unwrap();
                empirical_exponent(&g, 2).unwrap()
            })
            .collect();
        let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
        assert!((mean - gamma).abs() <= 0.3, "γ = {gamma}: {estimates:?}");
    }
}

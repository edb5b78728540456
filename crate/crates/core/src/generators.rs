//! Seeded random graph generators.
//!
//! All randomness comes from [`ChaCha8Rng`] seeded with
//! `ChaCha8Rng::seed_from_u64(seed)`, so a `(config, seed)` pair yields the
//! same edge list on every platform and thread count. Uniform reals are
//! drawn as `rng.random::<f64>()` and compared with `<`; uniform integers
//! use `random_range`; stub lists are shuffled with `SliceRandom::shuffle`.
//!
//! * Scale-free: i.i.d. degrees from `P(k) ∝ k^-γ` on `[k_min, k_max]`
//!   (inverse CDF), wired by the configuration model. `k_max` defaults to
//!   the natural cutoff `N^(1/(γ−1))`, which is `√N` at `γ = 3`. Self-loops and
//!   multi-edges are repaired by double-edge swaps with random existing
//!   edges; a conflict that survives the retry budget is dropped.
//! * Newman–Watts: ring lattice with `k_base` neighbors per side, then for
//!   every lattice edge one shortcut between a uniform non-adjacent pair is
//!   added with probability `alpha`. The `rewire` variant instead moves the
//!   far endpoint of the lattice edge (Watts–Strogatz).

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

const SWAP_ATTEMPTS: usize = 100;
const PARITY_ATTEMPTS: usize = 1000;
const PAIR_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    ScaleFree {
        gamma: f64,
        k_min: usize,
        /// `None` selects the natural cutoff `⌊N^(1/(γ−1))⌋`, clamped to
        /// `[k_min, N − 1]`.
        k_max: Option<usize>,
    },
    NewmanWatts {
        k_base: usize,
        alpha: f64,
        rewire: bool,
    },
    RingLattice {
        k_base: usize,
    },
    ErdosRenyi {
        edge_prob: f64,
    },
    Complete,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub n_nodes: usize,
    pub seed: u64,
    pub model: Model,
}

/// Side information about one generated graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenerationReport {
    /// Configuration-model stubs dropped after the repair budget ran out.
    pub discarded_stubs: usize,
    /// Shortcuts or rewires skipped because no admissible pair was found.
    pub skipped_moves: usize,
    pub largest_component: usize,
}

impl GeneratorConfig {
    pub fn scale_free(n_nodes: usize, gamma: f64, k_min: usize, seed: u64) -> Self {
        Self {
            n_nodes,
            seed,
            model: Model::ScaleFree {
                gamma,
                k_min,
                k_max: None,
            },
        }
    }

    pub fn newman_watts(n_nodes: usize, k_base: usize, alpha: f64, seed: u64) -> Self {
        Self {
            n_nodes,
            seed,
            model: Model::NewmanWatts {
                k_base,
                alpha,
                rewire: false,
            },
        }
    }

    pub fn ring_lattice(n_nodes: usize, k_base: usize) -> Self {
        Self {
            n_nodes,
            seed: 0,
            model: Model::RingLattice { k_base },
        }
    }

    pub fn erdos_renyi(n_nodes: usize, edge_prob: f64, seed: u64) -> Self {
        Self {
            n_nodes,
            seed,
            model: Model::ErdosRenyi { edge_prob },
        }
    }

    pub fn complete(n_nodes: usize) -> Self {
        Self {
            n_nodes,
            seed: 0,
            model: Model::Complete,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn kind(&self) -> &'static str {
        match self.model {
            Model::ScaleFree { .. } => "scale-free",
            Model::NewmanWatts { rewire: false, .. } => "newman-watts",
            Model::NewmanWatts { rewire: true, .. } => "watts-strogatz",
            Model::RingLattice { .. } => "ring-lattice",
            Model::ErdosRenyi { .. } => "erdos-renyi",
            Model::Complete => "complete",
        }
    }

    /// The swept parameter: `γ`, `α`, edge probability, or `k_base`.
    pub fn parameter(&self) -> f64 {
        match self.model {
            Model::ScaleFree { gamma, .. } => gamma,
            Model::NewmanWatts { alpha, .. } => alpha,
            Model::RingLattice { k_base } => k_base as f64,
            Model::ErdosRenyi { edge_prob } => edge_prob,
            Model::Complete => 0.0,
        }
    }

    /// Upper degree bound actually used by the scale-free sampler.
    pub fn resolved_k_max(&self) -> Option<usize> {
        match self.model {
            Model::ScaleFree {
                gamma,
                k_min,
                k_max,
            } => Some(k_max.unwrap_or_else(|| {
                natural_cutoff(self.n_nodes, gamma)
                    .max(k_min)
                    .min(self.n_nodes.saturating_sub(1))
            })),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_nodes;
        let fail = |msg: String| Err(Error::Config(msg));
        if n == 0 {
            return fail("n_nodes must be positive".into());
        }
        match self.model {
            Model::ScaleFree { gamma, k_min, .. } => {
                if !(gamma.is_finite() && gamma > 1.0) {
                    return fail(format!("gamma must be a finite real > 1, got {gamma}"));
                }
                let k_max = self.resolved_k_max().unwrap_or(0);
                if k_min < 1 {
                    return fail("k_min must be ≥ 1".into());
                }
                if k_max > n - 1 {
                    return fail(format!("k_max = {k_max} exceeds n_nodes - 1 = {}", n - 1));
                }
                if k_max < k_min {
                    return fail(format!("k_max = {k_max} is below k_min = {k_min}"));
                }
            }
            Model::NewmanWatts { k_base, alpha, .. } => {
                check_lattice(n, k_base)?;
                check_probability("alpha", alpha)?;
            }
            Model::RingLattice { k_base } => check_lattice(n, k_base)?,
            Model::ErdosRenyi { edge_prob } => check_probability("edge_prob", edge_prob)?,
            Model::Complete => {}
        }
        Ok(())
    }
}

/// `⌊N^(1/(γ−1))⌋`, the expected largest degree of an uncut power law on
/// `N` nodes.
pub fn natural_cutoff(n_nodes: usize, gamma: f64) -> usize {
    let k = (n_nodes as f64).powf(1.0 / (gamma - 1.0)).floor();
    if k.is_finite() && k < usize::MAX as f64 {
        k as usize
    } else {
        usize::MAX
    }
}

fn check_lattice(n: usize, k_base: usize) -> Result<()> {
    if k_base < 1 {
        return Err(Error::Config("k_base must be ≥ 1".into()));
    }
    if 2 * k_base >= n {
        return Err(Error::Config(format!(
            "ring lattice with k_base = {k_base} needs more than {} nodes",
            2 * k_base
        )));
    }
    Ok(())
}

fn check_probability(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::Config(format!(
            "{name} must lie in [0, 1], got {value}"
        )));
    }
    Ok(())
}

pub fn generate(cfg: &GeneratorConfig) -> Result<Graph> {
    generate_with_report(cfg).map(|(g, _)| g)
}

pub fn generate_with_report(cfg: &GeneratorConfig) -> Result<(Graph, GenerationReport)> {
    cfg.validate()?;
    let n = cfg.n_nodes;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = GenerationReport::default();
    let edges = match cfg.model {
        Model::ScaleFree { gamma, k_min, .. } => {
            let k_max = cfg.resolved_k_max().expect("scale-free has k_max");
            let degrees = sample_degrees(n, gamma, k_min, k_max, &mut rng)?;
            configuration_model(&degrees, &mut rng, &mut report)
        }
        Model::NewmanWatts {
            k_base,
            alpha,
            rewire: false,
        } => newman_watts(n, k_base, alpha, &mut rng, &mut report),
        Model::NewmanWatts {
            k_base,
            alpha,
            rewire: true,
        } => watts_strogatz(n, k_base, alpha, &mut rng, &mut report),
        Model::RingLattice { k_base } => ring_lattice_edges(n, k_base).into_iter().collect(),
        Model::ErdosRenyi { edge_prob } => {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random::<f64>() < edge_prob {
                        edges.push((i, j));
                    }
                }
            }
            edges
        }
        Model::Complete => return Ok(finish(Graph::complete(n), report)),
    };
    let g = Graph::from_edges(n, edges)?;
    g.check_invariants()?;
    Ok(finish(g, report))
}

fn finish(g: Graph, mut report: GenerationReport) -> (Graph, GenerationReport) {
    report.largest_component = g.largest_component_size();
    (g, report)
}

/// Degrees `k_min..=k_max` drawn i.i.d. with weight `k^-γ`, redrawing one
/// random node until the total is even.
fn sample_degrees(
    n: usize,
    gamma: f64,
    k_min: usize,
    k_max: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<usize>> {
    let mut cumulative = Vec::with_capacity(k_max - k_min + 1);
    let mut total = 0.0;
    for k in k_min..=k_max {
        total += (k as f64).powf(-gamma);
        cumulative.push(total);
    }
    let draw = |rng: &mut ChaCha8Rng| {
        let u = rng.random::<f64>() * total;
        let idx = cumulative
            .partition_point(|&c| c <= u)
            .min(cumulative.len() - 1);
        k_min + idx
    };
    let mut degrees: Vec<usize> = (0..n).map(|_| draw(rng)).collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        let fixed = (0..PARITY_ATTEMPTS).any(|_| {
            let node = rng.random_range(0..n);
            let old = degrees[node];
            degrees[node] = draw(rng);
            (old + degrees[node]) % 2 == 1
        });
        if !fixed {
            return Err(Error::Generation(format!(
                "could not make the degree sum even after {PARITY_ATTEMPTS} redraws"
            )));
        }
    }
    Ok(degrees)
}

/// Ordered edge collection with O(1) membership.
struct EdgeSet {
    list: Vec<(usize, usize)>,
    members: HashSet<(usize, usize)>,
}

impl EdgeSet {
    fn new() -> Self {
        Self {
            list: Vec::new(),
            members: HashSet::new(),
        }
    }

    fn key(u: usize, v: usize) -> (usize, usize) {
        (u.min(v), u.max(v))
    }

    fn contains(&self, u: usize, v: usize) -> bool {
        self.members.contains(&Self::key(u, v))
    }

    /// Inserts unless it would be a self-loop or a duplicate.
    fn insert(&mut self, u: usize, v: usize) -> bool {
        if u == v || !self.members.insert(Self::key(u, v)) {
            return false;
        }
        self.list.push(Self::key(u, v));
        true
    }

    fn swap_remove(&mut self, idx: usize) -> (usize, usize) {
        let e = self.list.swap_remove(idx);
        self.members.remove(&e);
        e
    }
}

fn configuration_model(
    degrees: &[usize],
    rng: &mut ChaCha8Rng,
    report: &mut GenerationReport,
) -> Vec<(usize, usize)> {
    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(node, &d)| std::iter::repeat_n(node, d))
        .collect();
    stubs.shuffle(rng);
    let mut edges = EdgeSet::new();
    let mut conflicts = Vec::new();
    for pair in stubs.chunks_exact(2) {
        if !edges.insert(pair[0], pair[1]) {
            conflicts.push((pair[0], pair[1]));
        }
    }
    for (u, v) in conflicts {
        let mut placed = false;
        for _ in 0..SWAP_ATTEMPTS {
            if edges.list.is_empty() {
                break;
            }
            let idx = rng.random_range(0..edges.list.len());
            let (mut x, mut y) = edges.list[idx];
            if rng.random::<f64>() < 0.5 {
                std::mem::swap(&mut x, &mut y);
            }
            // Replace {u,v} + {x,y} with {u,x} + {v,y}.
            let admissible = u != x
                && v != y
                && EdgeSet::key(u, x) != EdgeSet::key(v, y)
                && !edges.contains(u, x)
                && !edges.contains(v, y);
            if admissible {
                edges.swap_remove(idx);
                edges.insert(u, x);
                edges.insert(v, y);
                placed = true;
                break;
            }
        }
        if !placed {
            report.discarded_stubs += 2;
        }
    }
    edges.list
}

fn ring_lattice_edges(n: usize, k_base: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (1..=k_base).map(move |j| (i, (i + j) % n)))
        .collect()
}

fn newman_watts(
    n: usize,
    k_base: usize,
    alpha: f64,
    rng: &mut ChaCha8Rng,
    report: &mut GenerationReport,
) -> Vec<(usize, usize)> {
    let lattice = ring_lattice_edges(n, k_base);
    let mut edges = EdgeSet::new();
    for &(u, v) in &lattice {
        edges.insert(u, v);
    }
    for _ in &lattice {
        if rng.random::<f64>() >= alpha {
            continue;
        }
        let added = (0..PAIR_ATTEMPTS).any(|_| {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            edges.insert(u, v)
        });
        if !added {
            report.skipped_moves += 1;
        }
    }
    edges.list
}

fn watts_strogatz(
    n: usize,
    k_base: usize,
    alpha: f64,
    rng: &mut ChaCha8Rng,
    report: &mut GenerationReport,
) -> Vec<(usize, usize)> {
    let lattice = ring_lattice_edges(n, k_base);
    let mut edges = EdgeSet::new();
    for &(u, v) in &lattice {
        edges.insert(u, v);
    }
    for &(u, v) in &lattice {
        if rng.random::<f64>() >= alpha {
            continue;
        }
        let target = (0..PAIR_ATTEMPTS)
            .map(|_| rng.random_range(0..n))
            .find(|&w| w != u && !edges.contains(u, w));
        match target {
            Some(w) => {
                let idx = edges
                    .list
                    .iter()
                    .position(|&e| e == EdgeSet::key(u, v))
                    .expect("lattice edge still present");
                edges.swap_remove(idx);
                edges.insert(u, w);
            }
            None => report.skipped_moves += 1,
        }
    }
    edges.list
}

/// Maximum-likelihood exponent of a discrete power law fitted to the degrees
/// `k ≥ k_min`, truncated at the largest observed degree.
///
/// Solves `E_γ[ln k] = mean(ln k_i)` by bisection; the truncated model makes
/// the likelihood well defined for every `γ`.
pub fn empirical_exponent(g: &Graph, k_min: usize) -> Result<f64> {
    let k_min = k_min.max(1);
    let degrees: Vec<usize> = g
        .degree_sequence()
        .into_iter()
        .filter(|&k| k >= k_min)
        .collect();
    if degrees.len() < 20 {
        return Err(Error::InsufficientData(format!(
            "{} nodes with degree ≥ {k_min}; at least 20 required",
            degrees.len()
        )));
    }
    let k_hi = *degrees.iter().max().expect("non-empty");
    if k_hi == k_min {
        return Err(Error::InsufficientData(
            "all qualifying degrees are equal; the exponent diverges".into(),
        ));
    }
    let target = degrees.iter().map(|&k| (k as f64).ln()).sum::<f64>() / degrees.len() as f64;
    let mean_log = |gamma: f64| {
        let (mut z, mut s) = (0.0, 0.0);
        for k in k_min..=k_hi {
            let w = (k as f64).powf(-gamma);
            z += w;
            s += w * (k as f64).ln();
        }
        s / z
    };
    let (mut lo, mut hi) = (-10.0_f64, 30.0_f64);
    if target >= mean_log(lo) || target <= mean_log(hi) {
        return Err(Error::InsufficientData(
            "degree distribution too concentrated; the exponent diverges".into(),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        // mean_log is decreasing in gamma.
        if mean_log(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

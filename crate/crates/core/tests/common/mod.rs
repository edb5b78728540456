#![allow(dead_code)]

use netstrings::{DenseIntMatrix, GeneratorConfig, Graph};

/// `R^n` by trying every sequence of `n + 1` nodes: consecutive nodes must
/// be adjacent and all nodes distinct, except that first = last is allowed
/// once the sequence has at least three edges.
pub fn brute_force_strings(g: &Graph, n_edges: usize) -> DenseIntMatrix {
    let n = g.n_nodes();
    let mut out = DenseIntMatrix::zeros(n);
    let total = n.pow(n_edges as u32 + 1);
    let mut seq = vec![0usize; n_edges + 1];
    for code in 0..total {
        let mut c = code;
        for slot in seq.iter_mut() {
            *slot = c % n;
            c /= n;
        }
        if !seq.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            continue;
        }
        let closed = seq[0] == seq[n_edges];
        if closed && n_edges < 3 {
            continue;
        }
        let body = if closed { &seq[..n_edges] } else { &seq[..] };
        let mut sorted = body.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == body.len() {
            let (i, j) = (seq[0], seq[n_edges]);
            out.set(i, j, out.get(i, j) + 1);
        }
    }
    out
}

/// Textbook global clustering: 3 × triangles / connected triples.
pub fn textbook_clustering(g: &Graph) -> Option<f64> {
    let n = g.n_nodes();
    let mut triangles = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(i, k) {
                    triangles += 1;
                }
            }
        }
    }
    let triples: u64 = g
        .degree_sequence()
        .iter()
        .map(|&d| (d * d.saturating_sub(1) / 2) as u64)
        .sum();
    (triples > 0).then(|| 3.0 * triangles as f64 / triples as f64)
}

/// Number of simple cycles of each length, by canonical enumeration: the
/// smallest node starts the cycle and the second node is smaller than the last.
pub fn cycle_census(g: &Graph, max_len: usize) -> Vec<u64> {
    fn walk(g: &Graph, start: usize, path: &mut Vec<usize>, max_len: usize, out: &mut [u64]) {
        let last = *path.last().unwrap();
        for &next in g.neighbors(last) {
            if next == start && path.len() >= 3 && path[1] < last {
                out[path.len()] += 1;
            }
            if next > start && !path.contains(&next) && path.len() < max_len {
                path.push(next);
                walk(g, start, path, max_len, out);
                path.pop();
            }
        }
    }
    let mut out = vec![0; max_len + 1];
    for start in 0..g.n_nodes() {
        walk(g, start, &mut vec![start], max_len, &mut out);
    }
    out
}

pub fn er(n: usize, p: f64, seed: u64) -> Graph {
    netstrings::generators::generate(&GeneratorConfig::erdos_renyi(n, p, seed)).unwrap()
}

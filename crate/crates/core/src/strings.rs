//! Non-degenerate string counting.
//!
//! `R^n[i][j]` (for `i != j`) counts the walks of exactly `n` edges from `i`
//! to `j` whose nodes are pairwise distinct, i.e. directed simple paths.
//! `R^n[i][i]` counts the closed walks of `n ≥ 3` edges through `i` whose
//! other nodes are pairwise distinct and distinct from `i`; every simple
//! `n`-cycle through `i` contributes 2, one per direction. Two-edge returns
//! `i → j → i` retrace their edge and are not counted, so `R^2` has a zero
//! diagonal.
//!
//! [`StringCounter`] is the production engine: a pruned depth-first search
//! from every source node, run in parallel over sources. Each source owns
//! exactly one row of every `R^n`, so the result does not depend on the
//! number of workers. [`count_strings_direct`] evaluates the defining sum
//! over index tuples and exists to cross-check the search engine.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::DenseIntMatrix;

/// Default ceiling on the string length in edges.
pub const DEFAULT_MAX_EDGES: usize = 8;
/// No configuration may raise the ceiling past this.
pub const HARD_MAX_EDGES: usize = 10;

/// Size limits of the direct engine.
pub const DIRECT_MAX_EDGES: usize = 6;
pub const DIRECT_MAX_NODES: usize = 12;

/// The matrix `R^n` for one string length `n` (in edges).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringCountMatrix {
    n_edges: usize,
    counts: DenseIntMatrix,
}

impl StringCountMatrix {
    pub fn new(n_edges: usize, counts: DenseIntMatrix) -> Self {
        Self { n_edges, counts }
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn counts(&self) -> &DenseIntMatrix {
        &self.counts
    }

    pub fn into_counts(self) -> DenseIntMatrix {
        self.counts
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.counts.get(i, j)
    }

    pub fn trace(&self) -> Result<u64> {
        self.counts
            .trace()
            .map_err(|_| Error::Overflow(format!("Tr R^{}", self.n_edges)))
    }

    pub fn entry_sum(&self) -> Result<u64> {
        self.counts
            .entry_sum()
            .map_err(|_| Error::Overflow(format!("entry sum of R^{}", self.n_edges)))
    }

    /// Symmetric with an even diagonal.
    pub fn check_invariants(&self) -> bool {
        let n = self.counts.order();
        self.counts.is_symmetric() && (0..n).all(|i| self.counts.get(i, i).is_multiple_of(2))
    }

    /// Text dump: a header line `R n N`, then `N` rows of `N` integers.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        let header = format!("R {} {}", self.n_edges, self.counts.order());
        self.counts
            .write_rows(&header, &mut out)
            .expect("writing to a String cannot fail");
        out
    }

    pub fn from_dump(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let parse_err = |line: usize, message: String| Error::Parse {
            line: line + 1,
            message,
        };
        let (h_idx, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "empty matrix dump".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        let (n_edges, order) = match head.as_slice() {
            ["R", n, order] => (
                n.parse::<usize>()
                    .map_err(|_| parse_err(h_idx, format!("bad length `{n}`")))?,
                order
                    .parse::<usize>()
                    .map_err(|_| parse_err(h_idx, format!("bad order `{order}`")))?,
            ),
            _ => return Err(parse_err(h_idx, "expected header `R n N`".into())),
        };
        let mut entries = Vec::with_capacity(order * order);
        for _ in 0..order {
            let (idx, line) = lines
                .next()
                .ok_or_else(|| parse_err(h_idx, format!("expected {order} rows")))?;
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|_| parse_err(idx, format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != order {
                return Err(parse_err(
                    idx,
                    format!("expected {order} entries, found {}", row.len()),
                ));
            }
            entries.extend(row);
        }
        Ok(Self::new(
            n_edges,
            DenseIntMatrix::from_row_major(order, entries),
        ))
    }
}

/// Totals for strings of `p` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StringStatistics {
    /// Node count of the string.
    pub p: usize,
    /// Half the full entry sum of `R^(p-1)`.
    pub s_bar: u64,
    /// `Tr R^p`.
    pub trace_r: u64,
    /// Number of `p`-gons, `Tr R^p / 2p`.
    pub delta: u64,
}

/// `R^1 ..= R^n` for one graph, computed in a single traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringSpectrum {
    n_nodes: usize,
    matrices: Vec<StringCountMatrix>,
}

impl StringSpectrum {
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Longest string length (in edges) available.
    pub fn max_edges(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, n_edges: usize) -> Option<&StringCountMatrix> {
        n_edges.checked_sub(1).and_then(|i| self.matrices.get(i))
    }

    pub fn matrices(&self) -> &[StringCountMatrix] {
        &self.matrices
    }

    fn require(&self, n_edges: usize) -> Result<&StringCountMatrix> {
        self.matrix(n_edges).ok_or_else(|| {
            Error::Range(format!(
                "R^{n_edges} not available (spectrum holds R^1..R^{})",
                self.max_edges()
            ))
        })
    }

    /// `S̄_p` and the `p`-gon totals; needs `R^(p-1)` and `R^p`.
    pub fn statistics(&self, p: usize) -> Result<StringStatistics> {
        if p < 2 {
            return Err(Error::Range(format!(
                "string node count p = {p} must be ≥ 2"
            )));
        }
        let sum = self.require(p - 1)?.entry_sum()?;
        let trace_r = self.require(p)?.trace()?;
        debug_assert_eq!(sum % 2, 0, "R^{} entry sum must be even", p - 1);
        debug_assert_eq!(trace_r % (2 * p as u64), 0, "Tr R^{p} must divide by 2p");
        Ok(StringStatistics {
            p,
            s_bar: sum / 2,
            trace_r,
            delta: trace_r / (2 * p as u64),
        })
    }

    /// `S̄_q` alone; needs only `R^(q-1)`.
    pub fn s_bar(&self, q: usize) -> Result<u64> {
        if q < 2 {
            return Err(Error::Range(format!(
                "string node count q = {q} must be ≥ 2"
            )));
        }
        Ok(self.require(q - 1)?.entry_sum()? / 2)
    }
}

/// Configurable depth-first string counter.
#[derive(Clone, Copy, Debug)]
pub struct StringCounter {
    max_edges: usize,
    threads: Option<usize>,
    engine: Engine,
}

/// Search strategy behind [`StringCounter`]. Both produce identical matrices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    /// Every simple walk is enumerated.
    Pruned,
    /// Walks are enumerated up to `n - 3` edges; the last three lengths are
    /// accumulated through rows of `A`, `A²` and `A³` with exact
    /// corrections. Falls back to [`Engine::Pruned`] below four edges.
    #[default]
    BatchedTail,
}

impl Default for StringCounter {
    fn default() -> Self {
        Self {
            max_edges: DEFAULT_MAX_EDGES,
            threads: None,
            engine: Engine::default(),
        }
    }
}

impl StringCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the string-length ceiling; at most [`HARD_MAX_EDGES`].
    pub fn with_max_edges(mut self, max_edges: usize) -> Result<Self> {
        if max_edges == 0 || max_edges > HARD_MAX_EDGES {
            return Err(Error::Range(format!(
                "maximum string length must lie in 1..={HARD_MAX_EDGES}, got {max_edges}"
            )));
        }
        self.max_edges = max_edges;
        Ok(self)
    }

    /// Runs on a dedicated pool of `threads` workers instead of the global pool.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads.max(1));
        self
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn max_edges(&self) -> usize {
        self.max_edges
    }

    /// `R^n`.
    pub fn count(&self, g: &Graph, n_edges: usize) -> Result<StringCountMatrix> {
        let mut spectrum = self.spectrum(g, n_edges)?;
        Ok(spectrum
            .matrices
            .pop()
            .expect("spectrum holds at least R^1"))
    }

    /// `R^1 ..= R^n_max`.
    pub fn spectrum(&self, g: &Graph, n_max: usize) -> Result<StringSpectrum> {
        if n_max == 0 || n_max > self.max_edges {
            return Err(Error::Range(format!(
                "string length {n_max} outside 1..={}",
                self.max_edges
            )));
        }
        let rows = match self.threads {
            None => count_rows(g, n_max, self.engine),
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Range(format!("cannot build worker pool: {e}")))?
                .install(|| count_rows(g, n_max, self.engine)),
        }?;
        let n = g.n_nodes();
        let mut matrices: Vec<DenseIntMatrix> =
            (0..n_max).map(|_| DenseIntMatrix::zeros(n)).collect();
        for (source, source_rows) in rows.iter().enumerate() {
            for (len_idx, m) in matrices.iter_mut().enumerate() {
                m.row_mut(source)
                    .copy_from_slice(&source_rows[len_idx * n..(len_idx + 1) * n]);
            }
        }
        let matrices = matrices
            .into_iter()
            .enumerate()
            .map(|(i, m)| StringCountMatrix::new(i + 1, m))
            .collect();
        Ok(StringSpectrum {
            n_nodes: n,
            matrices,
        })
    }
}

fn count_rows(g: &Graph, n_max: usize, engine: Engine) -> Result<Vec<Vec<u64>>> {
    let tables = match engine {
        Engine::BatchedTail if n_max >= 4 => Some(TailTables::new(g)?),
        _ => None,
    };
    (0..g.n_nodes())
        .into_par_iter()
        .map(|source| {
            let n = g.n_nodes();
            let explicit_max = if tables.is_some() { n_max - 3 } else { n_max };
            let mut search = SourceSearch {
                g,
                source,
                explicit_max,
                visited: vec![false; n],
                path: Vec::with_capacity(n_max + 1),
                rows: vec![0; n_max * n],
                tail: tables.as_ref().map(|t| TailState::new(t, n_max)),
            };
            search.visited[source] = true;
            search.path.push(source);
            search.extend(source, 0)?;
            if let Some(state) = search.tail.take() {
                state.finish(&mut search.rows)?;
            }
            Ok(search.rows)
        })
        .collect()
}

struct SourceSearch<'g> {
    g: &'g Graph,
    source: usize,
    /// Longest string enumerated one walk at a time.
    explicit_max: usize,
    visited: Vec<bool>,
    path: Vec<usize>,
    /// Row `k` (length `k + 1`) lives at `rows[k * n .. (k + 1) * n]`.
    rows: Vec<u64>,
    tail: Option<TailState<'g>>,
}

impl SourceSearch<'_> {
    /// Extends a simple walk ending at `node` that already has `depth` edges.
    fn extend(&mut self, node: usize, depth: usize) -> Result<()> {
        let n = self.g.n_nodes();
        let len = depth + 1;
        let base = depth * n;
        for &next in self.g.neighbors(node) {
            if next == self.source {
                // Closing back onto the source ends the string; it is a
                // cycle only with three or more edges.
                if len >= 3 {
                    bump(&mut self.rows[base + next], len)?;
                }
                continue;
            }
            if self.visited[next] {
                continue;
            }
            bump(&mut self.rows[base + next], len)?;
            if len < self.explicit_max {
                self.visited[next] = true;
                self.path.push(next);
                self.extend(next, len)?;
                self.path.pop();
                self.visited[next] = false;
            } else if let Some(tail) = self.tail.as_mut() {
                self.path.push(next);
                tail.absorb(&self.path)?;
                self.path.pop();
            }
        }
        Ok(())
    }
}

/// Graph-wide tables for the batched tail: `A` (through the graph), `A²`, `A³`.
struct TailTables<'g> {
    g: &'g Graph,
    a2: Vec<u32>,
    a3: Vec<u32>,
}

impl<'g> TailTables<'g> {
    fn new(g: &'g Graph) -> Result<Self> {
        let narrow = |m: &DenseIntMatrix, what: &str| {
            m.entries()
                .iter()
                .map(|&v| u32::try_from(v).map_err(|_| Error::Overflow(what.into())))
                .collect::<Result<Vec<u32>>>()
        };
        let a2 = g.adjacency_power(2)?;
        let a3 = a2.checked_mul(&g.adjacency_matrix())?;
        Ok(Self {
            g,
            a2: narrow(&a2, "A^2")?,
            a3: narrow(&a3, "A^3")?,
        })
    }

    #[inline]
    fn a(&self, u: usize, w: usize) -> i64 {
        i64::from(self.g.has_edge(u, w))
    }

    #[inline]
    fn a2(&self, u: usize, w: usize) -> i64 {
        i64::from(self.a2[u * self.g.n_nodes() + w])
    }

    #[inline]
    fn a3(&self, u: usize, w: usize) -> i64 {
        i64::from(self.a3[u * self.g.n_nodes() + w])
    }

    fn row<'a>(&self, table: &'a [u32], u: usize) -> &'a [u32] {
        let n = self.g.n_nodes();
        &table[u * n..(u + 1) * n]
    }
}

/// Accumulates the last three string lengths for one source from the
/// simple paths of `L − 3` edges, without enumerating the extensions.
///
/// Let `P` be such a path ending at `t` with node set `V`, and
/// `W = V ∩ N(t)`. Its extensions by one, two and three edges ending at a
/// node `w ∉ V` (or closing on the source) number
///
/// * `A[t][w]`
/// * `A²[t][w] − Σ_{x∈W} A[x][w]`
/// * `A³[t][w] − Σ_{x∈W} A²[x][w] − Σ_{x∈V} c_x·A[x][w]
///    − A[t][w]·(deg w − |N(w) ∩ V|)`, with `c_x = A²[t][x] − |W ∩ N(x)|`.
///
/// Every term is linear in a per-node weight (`ends`, `touch`, `spread`) or,
/// for `A[t][w]·|N(w) ∩ V|`, in a per-pair weight (`pairs`), so the rows are
/// assembled once per source in [`TailState::finish`]. The same expressions
/// evaluated at `w ∈ V` are cancelled exactly through `fix`, which also
/// drops the two-edge return onto the source when `L = 4`.
struct TailState<'g> {
    tables: &'g TailTables<'g>,
    n_max: usize,
    ends: Vec<u64>,
    touch: Vec<u64>,
    spread: Vec<u64>,
    /// `pairs[t * N + x]`.
    pairs: Vec<u64>,
    /// Corrections for lengths `L − 2`, `L − 1`, `L`.
    fix: [Vec<i64>; 3],
    touching: Vec<usize>,
    spread_here: Vec<i64>,
}

impl<'g> TailState<'g> {
    fn new(tables: &'g TailTables<'g>, n_max: usize) -> Self {
        let n = tables.g.n_nodes();
        Self {
            tables,
            n_max,
            ends: vec![0; n],
            touch: vec![0; n],
            spread: vec![0; n],
            pairs: vec![0; n * n],
            fix: [vec![0; n], vec![0; n], vec![0; n]],
            touching: Vec::new(),
            spread_here: Vec::new(),
        }
    }

    fn absorb(&mut self, path: &[usize]) -> Result<()> {
        let tb = self.tables;
        let g = tb.g;
        let n = g.n_nodes();
        let len = self.n_max;
        let source = path[0];
        let t = *path.last().expect("non-empty path");

        bump(&mut self.ends[t], len)?;
        self.touching.clear();
        self.touching
            .extend(path.iter().copied().filter(|&x| g.has_edge(t, x)));
        for &x in &self.touching {
            bump(&mut self.touch[x], len)?;
        }
        self.spread_here.clear();
        for &x in path {
            let shared = self.touching.iter().filter(|&&u| g.has_edge(u, x)).count() as i64;
            let c = tb.a2(t, x) - shared;
            self.spread_here.push(c);
            self.spread[x] = self.spread[x]
                .checked_add(c as u64)
                .ok_or_else(|| Error::Overflow(format!("R^{len}")))?;
            bump(&mut self.pairs[t * n + x], len)?;
        }

        for &w in path {
            let one = tb.a(t, w);
            let two = tb.a2(t, w) - self.touching.iter().map(|&x| tb.a(x, w)).sum::<i64>();
            let three_walks = tb.a3(t, w)
                - self.touching.iter().map(|&x| tb.a2(x, w)).sum::<i64>()
                - path
                    .iter()
                    .zip(&self.spread_here)
                    .map(|(&x, &c)| c * tb.a(x, w))
                    .sum::<i64>();
            let backtrack = if one == 0 {
                0
            } else {
                g.degree(w) as i64 - path.iter().filter(|&&x| g.has_edge(x, w)).count() as i64
            };
            if w == source {
                // Closures are kept, except a two-edge return when L = 4.
                if len == 4 {
                    self.fix[0][w] -= one;
                }
                self.fix[2][w] += backtrack;
            } else {
                self.fix[0][w] -= one;
                self.fix[1][w] -= two;
                self.fix[2][w] -= three_walks - backtrack;
            }
        }
        Ok(())
    }

    fn finish(self, rows: &mut [u64]) -> Result<()> {
        let tb = self.tables;
        let g = tb.g;
        let n = g.n_nodes();
        let widen = |v: &[i64]| v.iter().map(|&x| i128::from(x)).collect::<Vec<i128>>();
        let mut one = widen(&self.fix[0]);
        let mut two = widen(&self.fix[1]);
        let mut three = widen(&self.fix[2]);

        for (t, &count) in self.ends.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let c = i128::from(count);
            for &w in g.neighbors(t) {
                one[w] += c;
                three[w] -= c * g.degree(w) as i128;
            }
            for (slot, &m) in two.iter_mut().zip(tb.row(&tb.a2, t)) {
                *slot += c * i128::from(m);
            }
            for (slot, &m) in three.iter_mut().zip(tb.row(&tb.a3, t)) {
                *slot += c * i128::from(m);
            }
        }
        for (x, &count) in self.touch.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let c = i128::from(count);
            for &w in g.neighbors(x) {
                two[w] -= c;
            }
            for (slot, &m) in three.iter_mut().zip(tb.row(&tb.a2, x)) {
                *slot -= c * i128::from(m);
            }
        }
        for (x, &weight) in self.spread.iter().enumerate() {
            if weight == 0 {
                continue;
            }
            for &w in g.neighbors(x) {
                three[w] -= i128::from(weight);
            }
        }
        for (key, &count) in self.pairs.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let (t, x) = (key / n, key % n);
            for w in g.common_neighbors(t, x) {
                three[w] += i128::from(count);
            }
        }

        let len = self.n_max;
        for (offset, values) in [(3, one), (2, two), (1, three)] {
            let l = len + 1 - offset;
            let row = &mut rows[(l - 1) * n..l * n];
            for (slot, v) in row.iter_mut().zip(values) {
                *slot = u64::try_from(v).map_err(|_| Error::Overflow(format!("R^{l}")))?;
            }
        }
        Ok(())
    }
}

#[inline]
fn bump(slot: &mut u64, len: usize) -> Result<()> {
    *slot = slot
        .checked_add(1)
        .ok_or_else(|| Error::Overflow(format!("R^{len}")))?;
    Ok(())
}

/// `R^n` with the default counter.
pub fn count_strings(g: &Graph, n_edges: usize) -> Result<StringCountMatrix> {
    StringCounter::default().count(g, n_edges)
}

/// `S̄_p`, `Tr R^p` and `Δ_p` with the default counter.
pub fn string_statistics(g: &Graph, p: usize) -> Result<StringStatistics> {
    if p < 2 {
        return Err(Error::Range(format!(
            "string node count p = {p} must be ≥ 2"
        )));
    }
    StringCounter::default().spectrum(g, p)?.statistics(p)
}

/// `R^n` by evaluating the defining sum term by term.
///
/// For each endpoint pair `(i_0, i_n)` the sum runs over every intermediate
/// tuple `(i_1, …, i_{n-1})`. A term is the product of the adjacency factors
/// `a[i_k][i_{k+1}]` and of `(1 - δ(i_k, i_j))` over all position pairs with
/// `|k - j| > 1`. The endpoint pair `(0, n)` is exempt when `n ≥ 3`, which
/// keeps closed strings. Terms whose adjacency prefix already vanishes are
/// skipped; the distinctness product is only evaluated on complete tuples.
///
/// Limited to `n ≤ 6` edges and `N ≤ 12` nodes.
pub fn count_strings_direct(g: &Graph, n_edges: usize) -> Result<StringCountMatrix> {
    let n = g.n_nodes();
    if n_edges == 0 || n_edges > DIRECT_MAX_EDGES || n > DIRECT_MAX_NODES {
        return Err(Error::Range(format!(
            "direct evaluation limited to 1 ≤ n ≤ {DIRECT_MAX_EDGES} and N ≤ {DIRECT_MAX_NODES} \
             (got n = {n_edges}, N = {n})"
        )));
    }
    let mut counts = DenseIntMatrix::zeros(n);
    let mut seq = vec![0usize; n_edges + 1];
    for i0 in 0..n {
        seq[0] = i0;
        direct_terms(g, &mut seq, 1, &mut counts)?;
    }
    Ok(StringCountMatrix::new(n_edges, counts))
}

fn direct_terms(
    g: &Graph,
    seq: &mut [usize],
    pos: usize,
    counts: &mut DenseIntMatrix,
) -> Result<()> {
    let n_edges = seq.len() - 1;
    for next in 0..g.n_nodes() {
        if !g.has_edge(seq[pos - 1], next) {
            continue;
        }
        seq[pos] = next;
        if pos < n_edges {
            direct_terms(g, seq, pos + 1, counts)?;
        } else if distinctness_factor(seq) == 1 {
            let (i, j) = (seq[0], seq[n_edges]);
            let v = counts
                .get(i, j)
                .checked_add(1)
                .ok_or_else(|| Error::Overflow(format!("R^{n_edges} (direct)")))?;
            counts.set(i, j, v);
        }
    }
    Ok(())
}

fn distinctness_factor(seq: &[usize]) -> u64 {
    let n_edges = seq.len() - 1;
    let mut factor = 1u64;
    for k in 0..seq.len() {
        for j in k + 2..seq.len() {
            let endpoint_pair = k == 0 && j == n_edges && n_edges >= 3;
            if !endpoint_pair {
                factor *= u64::from(seq[k] != seq[j]);
            }
        }
    }
    factor
}

impl std::fmt::Display for StringStatistics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "p={} s_bar={} trace_r={} delta={}",
            self.p, self.s_bar, self.trace_r, self.delta
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_two_edges() {
        let r = count_strings(&Graph::path(3), 2).unwrap();
        let mut expected = DenseIntMatrix::zeros(3);
        expected.set(0, 2, 1);
        expected.set(2, 0, 1);
        assert_eq!(r.counts(), &expected);
    }

    #[test]
    fn triangle_cycles() {
        let r = count_strings(&Graph::complete(3), 3).unwrap();
        for i in 0..3 {
            assert_eq!(r.get(i, i), 2);
        }
        assert_eq!(r.trace().unwrap(), 6);
        assert_eq!(r, count_strings_direct(&Graph::complete(3), 3).unwrap());
    }

    #[test]
    fn square_cycle_matches_direct() {
        let c4 = Graph::cycle(4);
        let r = count_strings(&c4, 4).unwrap();
        assert_eq!(r, count_strings_direct(&c4, 4).unwrap());
        for i in 0..4 {
            assert_eq!(r.get(i, i), 2);
        }
        // No simple 4-edge path exists on 4 nodes.
        assert_eq!(r.entry_sum().unwrap(), 8);
    }

    #[test]
    fn edgeless_is_zero() {
        let g = Graph::empty(5);
        for n in 1..=4 {
            assert_eq!(count_strings_direct(&g, n).unwrap().entry_sum().unwrap(), 0);
            assert_eq!(count_strings(&g, n).unwrap().entry_sum().unwrap(), 0);
        }
    }

    #[test]
    fn first_and_second_matrices() {
        let g = Graph::from_edge_list("0 1\n1 2\n2 0\n2 3\n3 4\n4 1\n").unwrap();
        assert_eq!(
            count_strings(&g, 1).unwrap().counts(),
            &g.adjacency_matrix()
        );
        let a2 = g.adjacency_power(2).unwrap();
        let r2 = count_strings(&g, 2).unwrap();
        assert_eq!(r2.counts(), &a2.checked_sub(&a2.diagonal()).unwrap());
    }

    #[test]
    fn statistics_small_graphs() {
        let k3 = string_statistics(&Graph::complete(3), 3).unwrap();
        assert_eq!((k3.s_bar, k3.trace_r, k3.delta), (3, 6, 1));
        let k4 = string_statistics(&Graph::complete(4), 3).unwrap();
        assert_eq!((k4.s_bar, k4.trace_r, k4.delta), (12, 24, 4));
        let tree = Graph::from_edge_list("0 1\n0 2\n1 3\n1 4\n2 5\n").unwrap();
        for p in 3..=6 {
            let s = string_statistics(&tree, p).unwrap();
            assert_eq!((s.trace_r, s.delta), (0, 0));
        }
    }

    #[test]
    fn length_limits() {
        let g = Graph::complete(3);
        assert!(matches!(count_strings(&g, 0), Err(Error::Range(_))));
        assert!(matches!(count_strings(&g, 9), Err(Error::Range(_))));
        assert!(StringCounter::new().with_max_edges(11).is_err());
        let wide = StringCounter::new().with_max_edges(10).unwrap();
        assert!(wide.count(&g, 10).is_ok());
        assert!(matches!(count_strings_direct(&g, 7), Err(Error::Range(_))));
        assert!(matches!(
            count_strings_direct(&Graph::empty(13), 2),
            Err(Error::Range(_))
        ));
        assert!(string_statistics(&g, 1).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let r = count_strings(&Graph::cycle(5), 3).unwrap();
        let text = r.to_dump();
        assert!(text.starts_with("R 3 5\n"));
        assert_eq!(StringCountMatrix::from_dump(&text).unwrap(), r);
        assert!(StringCountMatrix::from_dump("R 1 2\n0 1\n").is_err());
    }
}

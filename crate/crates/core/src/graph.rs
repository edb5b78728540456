//! Simple undirected graphs on contiguous 0-based node ids.
//!
//! Storage is dense (an `n × n` adjacency bitset, one row of `u64` words per node) plus sorted neighbor lists
//! for traversal. A [`Graph`] is immutable once built.
//!
//! The edge-list text format is one `u v` pair per line, whitespace
//! separated. Lines starting with `#` are comments; a `# nodes N` comment
//! raises the node count to at least `N` so isolated trailing nodes survive
//! a round trip. Emitters write edges sorted by `(min, max)` endpoint.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::DenseIntMatrix;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n_nodes: usize,
    /// Row `u` occupies `adjacency[u * words .. (u + 1) * words]`.
    adjacency: Vec<u64>,
    words: usize,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n_nodes", &self.n_nodes)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from unordered node pairs. Duplicate pairs (in either
    /// orientation) collapse into one edge.
    pub fn from_edges<I>(n_nodes: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n_nodes == 0 {
            return Err(Error::InvalidGraph(
                "graph must have at least one node".into(),
            ));
        }
        let words = n_nodes.div_ceil(64);
        let mut adjacency = vec![0u64; n_nodes * words];
        let bit = |u: usize, v: usize| (u * words + v / 64, 1u64 << (v % 64));
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n_nodes || v >= n_nodes {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) references a node outside 0..{n_nodes}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on node {u}")));
            }
            let (uv, uv_mask) = bit(u, v);
            if adjacency[uv] & uv_mask == 0 {
                adjacency[uv] |= uv_mask;
                let (vu, vu_mask) = bit(v, u);
                adjacency[vu] |= vu_mask;
                list.push((u.min(v), u.max(v)));
            }
        }
        list.sort_unstable();
        let mut neighbors = vec![Vec::new(); n_nodes];
        for &(u, v) in &list {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for nbrs in &mut neighbors {
            nbrs.sort_unstable();
        }
        let g = Self {
            n_nodes,
            adjacency,
            words,
            neighbors,
            edges: list,
        };
        debug_assert!(g.check_invariants().is_ok());
        Ok(g)
    }

    /// Parses the edge-list text format.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut declared = 0usize;
        let mut max_index: Option<usize> = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let mut tokens = comment.split_whitespace();
                if tokens.next() == Some("nodes") {
                    let value = tokens.next().ok_or_else(|| Error::Parse {
                        line: line_no,
                        message: "`# nodes` header without a count".into(),
                    })?;
                    declared = value.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid node count `{value}`"),
                    })?;
                }
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `u v`, found {} token(s)", tokens.len()),
                });
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{tok}` is not a non-negative integer"),
                })
            };
            let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
            if u == v {
                return Err(Error::SelfLoop {
                    line: line_no,
                    node: u,
                });
            }
            max_index = Some(max_index.map_or(u.max(v), |m| m.max(u).max(v)));
            pairs.push((u, v));
        }
        let n_nodes = declared.max(max_index.map_or(0, |m| m + 1));
        Self::from_edges(n_nodes, pairs)
    }

    /// Serializes to the edge-list format. Each entry of `comments` becomes
    /// a `# ...` line ahead of the `# nodes N` header.
    pub fn to_edge_list_with_comments(&self, comments: &[String]) -> String {
        let mut out = String::with_capacity(8 * self.edges.len() + 32);
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "# nodes {}", self.n_nodes);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn to_edge_list(&self) -> String {
        self.to_edge_list_with_comments(&[])
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u * self.words + v / 64] & (1u64 << (v % 64)) != 0
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    /// Common neighbors of `u` and `v` in increasing order.
    pub fn common_neighbors(&self, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (ru, rv) = (self.adjacency_row(u), self.adjacency_row(v));
        ru.iter().zip(rv).enumerate().flat_map(|(k, (&a, &b))| {
            let mut word = a & b;
            std::iter::from_fn(move || {
                (word != 0).then(|| {
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    k * 64 + bit
                })
            })
        })
    }

    fn adjacency_row(&self, u: usize) -> &[u64] {
        &self.adjacency[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn adjacency_matrix(&self) -> DenseIntMatrix {
        let n = self.n_nodes;
        let entries = (0..n * n)
            .map(|k| u64::from(self.has_edge(k / n, k % n)))
            .collect();
        DenseIntMatrix::from_row_major(self.n_nodes, entries)
    }

    /// `A^power` by repeated multiplication with checked arithmetic.
    pub fn adjacency_power(&self, power: usize) -> Result<DenseIntMatrix> {
        if power == 0 {
            return Err(Error::Range("adjacency power must be at least 1".into()));
        }
        let a = self.adjacency_matrix();
        let mut acc = a.clone();
        for k in 2..=power {
            acc = acc
                .checked_mul(&a)
                .map_err(|_| Error::Overflow(format!("A^{k}")))?;
        }
        Ok(acc)
    }

    /// Size of the largest connected component.
    pub fn largest_component_size(&self) -> usize {
        let mut seen = vec![false; self.n_nodes];
        let mut best = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n_nodes {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut size = 0;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &v in &self.neighbors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            best = best.max(size);
        }
        best
    }

    /// Re-checks symmetry, zero diagonal and edge-list/adjacency agreement.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n_nodes;
        for i in 0..n {
            if self.has_edge(i, i) {
                return Err(Error::InvalidGraph(format!("self-loop on node {i}")));
            }
            for j in i + 1..n {
                if self.has_edge(i, j) != self.has_edge(j, i) {
                    return Err(Error::InvalidGraph(format!("asymmetric entry ({i}, {j})")));
                }
            }
        }
        let adjacency_edges = self
            .adjacency
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2;
        if adjacency_edges != self.edges.len()
            || self
                .edges
                .iter()
                .any(|&(u, v)| u >= v || !self.has_edge(u, v))
        {
            return Err(Error::InvalidGraph(
                "edge list and adjacency disagree".into(),
            ));
        }
        Ok(())
    }

    pub fn empty(n_nodes: usize) -> Self {
        Self::from_edges(n_nodes, []).expect("valid empty graph")
    }

    pub fn complete(n_nodes: usize) -> Self {
        let edges = (0..n_nodes).flat_map(|i| (i + 1..n_nodes).map(move |j| (i, j)));
        Self::from_edges(n_nodes, edges).expect("valid complete graph")
    }

    /// Path `0 – 1 – … – (n-1)`.
    pub fn path(n_nodes: usize) -> Self {
        Self::from_edges(n_nodes, (1..n_nodes).map(|i| (i - 1, i))).expect("valid path graph")
    }

    /// Cycle on `n_nodes ≥ 3` nodes.
    pub fn cycle(n_nodes: usize) -> Self {
        assert!(n_nodes >= 3, "a simple cycle needs at least 3 nodes");
        Self::from_edges(n_nodes, (0..n_nodes).map(|i| (i, (i + 1) % n_nodes)))
            .expect("valid cycle graph")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let g = Graph::from_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.n_nodes(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.adjacency_matrix().get(0, 2), 0);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edge_list("0 1\n1 0").unwrap();
        assert_eq!(g.n_nodes(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(
            Graph::from_edge_list("0 0").unwrap_err(),
            Error::SelfLoop { line: 1, node: 0 }
        );
    }

    #[test]
    fn non_integer_token_cites_line() {
        let err = Graph::from_edge_list("# header\n\n0 1\na b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = Graph::from_edge_list("0 1 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Graph::from_edge_list("-1 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn nodes_header_raises_count() {
        let g = Graph::from_edge_list("# nodes 5\n# other comment\n0 1\n").unwrap();
        assert_eq!(g.n_nodes(), 5);
        assert_eq!(g.degree_sequence(), vec![1, 1, 0, 0, 0]);
        // A header smaller than the largest index does not shrink the graph.
        let g = Graph::from_edge_list("# nodes 1\n0 3\n").unwrap();
        assert_eq!(g.n_nodes(), 4);
    }

    #[test]
    fn empty_input_is_invalid() {
        assert!(matches!(
            Graph::from_edge_list("# nothing\n"),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn emitter_sorts_edges() {
        let g = Graph::from_edge_list("3 2\n1 0\n2 0\n").unwrap();
        assert_eq!(g.to_edge_list(), "# nodes 4\n0 1\n0 2\n2 3\n");
    }

    #[test]
    fn k3_square() {
        let a2 = Graph::complete(3).adjacency_power(2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a2.get(i, j), if i == j { 2 } else { 1 });
            }
        }
    }

    #[test]
    fn first_power_is_adjacency() {
        let g = Graph::star(3);
        assert_eq!(g.adjacency_power(1).unwrap(), g.adjacency_matrix());
        assert!(g.adjacency_power(0).is_err());
    }

    #[test]
    fn path_square_matches_walk_count() {
        let g = Graph::path(3);
        let a2 = g.adjacency_power(2).unwrap();
        // Walks of length 2 enumerated by hand: 0-1-2, 1-0-1, 1-2-1, ...
        let mut walks = DenseIntMatrix::zeros(3);
        for a in 0..3 {
            for b in g.neighbors(a) {
                for c in g.neighbors(*b) {
                    walks.set(a, *c, walks.get(a, *c) + 1);
                }
            }
        }
        assert_eq!(a2, walks);
        assert_eq!(a2.get(0, 2), 1);
        assert_eq!(a2.get(0, 1), 0);
        assert_eq!(a2.get(1, 1), 2);
    }

    #[test]
    fn power_overflow_names_power() {
        // Closed walks in K_100 grow like 99^k / 100, past u64::MAX by k = 11.
        let g = Graph::complete(100);
        match g.adjacency_power(12) {
            Err(Error::Overflow(what)) => assert!(what.starts_with("A^")),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(Graph::complete(3).degree_sequence(), vec![2, 2, 2]);
        assert_eq!(Graph::star(3).degree_sequence(), vec![3, 1, 1, 1]);
        assert_eq!(Graph::empty(5).degree_sequence(), vec![0; 5]);
    }

    #[test]
    fn components() {
        let g = Graph::from_edge_list("# nodes 6\n0 1\n1 2\n3 4\n").unwrap();
        assert_eq!(g.largest_component_size(), 3);
    }
}

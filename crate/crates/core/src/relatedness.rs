//! Normalized direct-citation relatedness network and the pair-relation
//! counting formulas.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::CiteGraph;

/// Undirected weighted network over `0..n` nodes.
///
/// Stored as symmetric CSR without self entries. `node_sizes` and
/// `self_loops` exist so that aggregates of this network (nodes that
/// stand for whole classes of original nodes) can be expressed in the
/// same type; a freshly built relatedness network has unit sizes and
/// zero loops.
#[derive(Clone, Debug)]
pub struct Network {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
    node_sizes: Vec<u64>,
    self_loops: Vec<f64>,
}

impl Network {
    /// Builds from an undirected edge list `(i, j, w)` with `i != j`.
    /// Each unordered pair must appear at most once.
    pub fn from_undirected_edges(n: usize, edges: &[(u32, u32, f64)]) -> Network {
        let mut offsets = vec![0usize; n + 1];
        for &(i, j, _) in edges {
            offsets[i as usize + 1] += 1;
            offsets[j as usize + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; edges.len() * 2];
        let mut weights = vec![0f64; edges.len() * 2];
        let mut sorted: Vec<(u32, u32, f64)> = edges.to_vec();
        sorted.sort_unstable_by_key(|&(i, j, _)| (i, j));
        for &(i, j, w) in &sorted {
            targets[cursor[i as usize]] = j;
            weights[cursor[i as usize]] = w;
            cursor[i as usize] += 1;
        }
        // reverse direction, sorted by (j, i)
        let mut reversed: Vec<(u32, u32, f64)> = edges.iter().map(|&(i, j, w)| (j, i, w)).collect();
        reversed.sort_unstable_by_key(|&(j, i, _)| (j, i));
        for &(j, i, w) in &reversed {
            targets[cursor[j as usize]] = i;
            weights[cursor[j as usize]] = w;
            cursor[j as usize] += 1;
        }
        // per-node neighbor lists: merge of two sorted runs
        let mut net = Network {
            offsets,
            targets,
            weights,
            node_sizes: vec![1; n],
            self_loops: vec![0.0; n],
        };
        net.sort_rows();
        net
    }

    pub(crate) fn with_sizes(
        n: usize,
        edges: &[(u32, u32, f64)],
        node_sizes: Vec<u64>,
        self_loops: Vec<f64>,
    ) -> Network {
        let mut net = Network::from_undirected_edges(n, edges);
        net.node_sizes = node_sizes;
        net.self_loops = self_loops;
        net
    }

    fn sort_rows(&mut self) {
        for v in 0..self.n() {
            let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
            let mut row: Vec<(u32, f64)> = self.targets[lo..hi]
                .iter()
                .copied()
                .zip(self.weights[lo..hi].iter().copied())
                .collect();
            row.sort_unstable_by_key(|&(t, _)| t);
            for (k, (t, w)) in row.into_iter().enumerate() {
                self.targets[lo + k] = t;
                self.weights[lo + k] = w;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.node_sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n() == 0
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        let (lo, hi) = (self.offsets[v as usize], self.offsets[v as usize + 1]);
        self.targets[lo..hi]
            .iter()
            .copied()
            .zip(self.weights[lo..hi].iter().copied())
    }

    pub fn node_size(&self, v: u32) -> u64 {
        self.node_sizes[v as usize]
    }

    pub fn self_loop(&self, v: u32) -> f64 {
        self.self_loops[v as usize]
    }

    /// Undirected edges with `i < j`, ascending, each pair once.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        (0..self.n() as u32).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&(j, _)| i < j)
                .map(move |(j, w)| (i, j, w))
        })
    }
}

/// Builds the relatedness network: each directed citation `i -> j`
/// contributes `1 / |out_refs(i)|`, so every citing publication spreads
/// unit weight over its active references regardless of field reference
/// volume. Mutual citations merge into one undirected edge carrying
/// both contributions.
pub fn build_relatedness(graph: &CiteGraph) -> Network {
    let n = graph.node_count();
    let mut pairs: Vec<(u32, u32, f64)> = Vec::with_capacity(graph.edge_count());
    for i in 0..n as u32 {
        let refs = graph.out_refs(i);
        if refs.is_empty() {
            continue;
        }
        let w = 1.0 / refs.len() as f64;
        for &j in refs {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            pairs.push((a, b, w));
        }
    }
    pairs.sort_unstable_by_key(|&(a, b, _)| (a, b));
    let mut merged: Vec<(u32, u32, f64)> = Vec::with_capacity(pairs.len());
    for (a, b, w) in pairs {
        match merged.last_mut() {
            Some(last) if last.0 == a && last.1 == b => last.2 += w,
            _ => merged.push((a, b, w)),
        }
    }
    Network::from_undirected_edges(n, &merged)
}

/// Number of bibliographic coupling relations: pairs of publications
/// citing the same node, summed as `C_i (C_i - 1) / 2` over in-citation
/// counts `C_i`.
pub fn count_coupling_relations(graph: &CiteGraph) -> u128 {
    (0..graph.node_count() as u32)
        .map(|v| {
            let c = graph.in_cites(v).len() as u128;
            c * c.saturating_sub(1) / 2
        })
        .sum()
}

/// Number of co-citation relations: pairs of references co-occurring in
/// the same list, summed as `R_i (R_i - 1) / 2` over active reference
/// counts `R_i`.
pub fn count_cocitation_relations(graph: &CiteGraph) -> u128 {
    (0..graph.node_count() as u32)
        .map(|v| {
            let r = graph.out_refs(v).len() as u128;
            r * r.saturating_sub(1) / 2
        })
        .sum()
}

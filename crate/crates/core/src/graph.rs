//! Compact citation graph over integer node indices.
//!
//! Nodes are publications numbered `0..n`. The caller (normally the
//! corpus loader) owns the mapping from external publication ids to
//! node indices and is expected to assign indices in ascending id
//! order, so index order doubles as a deterministic tie-break order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Document type of a publication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DocType {
    Article,
    Review,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// Edge endpoint does not name a node of the graph.
    NodeOutOfRange { node: u32 },
    /// A citation edge from a publication to itself.
    SelfEdge { node: u32 },
    /// The same directed edge appeared twice.
    DuplicateEdge { citing: u32, cited: u32 },
    /// A per-node metadata vector has the wrong length.
    MetadataLength { field: &'static str },
    /// Lookup of a node index that is not in the graph.
    UnknownNode { node: u32 },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NodeOutOfRange { node } => {
                write!(f, "edge endpoint {node} is out of range")
            }
            GraphError::SelfEdge { node } => write!(f, "self-citation edge on node {node}"),
            GraphError::DuplicateEdge { citing, cited } => {
                write!(f, "duplicate edge ({citing}, {cited})")
            }
            GraphError::MetadataLength { field } => {
                write!(f, "metadata vector `{field}` does not match node count")
            }
            GraphError::UnknownNode { node } => write!(f, "unknown node {node}"),
        }
    }
}

/// Publications plus their directed citation edges, stored as CSR
/// adjacency in both directions.
///
/// `out_refs(v)` are the *active references* of `v`: cited publications
/// that are themselves part of the graph. `raw_ref_count(v)` is the
/// total reference count of `v` including references that never
/// resolved to a node, which is why it is carried as explicit metadata
/// instead of being derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiteGraph {
    years: Vec<i32>,
    doc_types: Vec<DocType>,
    raw_ref_counts: Vec<u32>,
    kw_offsets: Vec<usize>,
    kw_ids: Vec<u32>,
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    in_offsets: Vec<usize>,
    in_sources: Vec<u32>,
}

impl CiteGraph {
    /// Builds a graph from per-node metadata and a directed edge list.
    ///
    /// Edges must already be policy-filtered: self-edges, duplicates
    /// and unresolved endpoints are invariant violations here, not
    /// input conditions, and produce an error. Keyword lists are
    /// treated as sets (sorted and deduplicated).
    pub fn build(
        years: Vec<i32>,
        doc_types: Vec<DocType>,
        raw_ref_counts: Vec<u32>,
        keywords: Vec<Vec<u32>>,
        mut edges: Vec<(u32, u32)>,
    ) -> Result<Self, GraphError> {
        let n = years.len();
        if doc_types.len() != n {
            return Err(GraphError::MetadataLength { field: "doc_types" });
        }
        if raw_ref_counts.len() != n {
            return Err(GraphError::MetadataLength {
                field: "raw_ref_counts",
            });
        }
        if keywords.len() != n {
            return Err(GraphError::MetadataLength { field: "keywords" });
        }

        edges.sort_unstable();
        for pair in edges.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateEdge {
                    citing: pair[0].0,
                    cited: pair[0].1,
                });
            }
        }
        for &(citing, cited) in &edges {
            if citing as usize >= n {
                return Err(GraphError::NodeOutOfRange { node: citing });
            }
            if cited as usize >= n {
                return Err(GraphError::NodeOutOfRange { node: cited });
            }
            if citing == cited {
                return Err(GraphError::SelfEdge { node: citing });
            }
        }

        let mut out_offsets = vec![0usize; n + 1];
        for &(citing, _) in &edges {
            out_offsets[citing as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
        }
        let out_targets: Vec<u32> = edges.iter().map(|&(_, cited)| cited).collect();

        let mut in_offsets = vec![0usize; n + 1];
        for &(_, cited) in &edges {
            in_offsets[cited as usize + 1] += 1;
        }
        for i in 0..n {
            in_offsets[i + 1] += in_offsets[i];
        }
        let mut cursor = in_offsets.clone();
        let mut in_sources = vec![0u32; edges.len()];
        for &(citing, cited) in &edges {
            in_sources[cursor[cited as usize]] = citing;
            cursor[cited as usize] += 1;
        }

        let mut kw_offsets = vec![0usize; n + 1];
        let mut kw_ids = Vec::new();
        for (v, mut list) in keywords.into_iter().enumerate() {
            list.sort_unstable();
            list.dedup();
            kw_ids.extend_from_slice(&list);
            kw_offsets[v + 1] = kw_ids.len();
        }

        Ok(CiteGraph {
            years,
            doc_types,
            raw_ref_counts,
            kw_offsets,
            kw_ids,
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
        })
    }

    pub fn node_count(&self) -> usize {
        self.years.len()
    }

    pub fn is_empty(&self) -> bool {
        self.years.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    fn check(&self, node: u32) -> Result<usize, GraphError> {
        let v = node as usize;
        if v < self.node_count() {
            Ok(v)
        } else {
            Err(GraphError::UnknownNode { node })
        }
    }

    pub fn year(&self, node: u32) -> i32 {
        self.years[node as usize]
    }

    pub fn doc_type(&self, node: u32) -> DocType {
        self.doc_types[node as usize]
    }

    pub fn raw_ref_count(&self, node: u32) -> u32 {
        self.raw_ref_counts[node as usize]
    }

    /// Active references of `node`, ascending.
    pub fn out_refs(&self, node: u32) -> &[u32] {
        let v = node as usize;
        &self.out_targets[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    /// Publications citing `node`, ascending.
    pub fn in_cites(&self, node: u32) -> &[u32] {
        let v = node as usize;
        &self.in_sources[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    /// Keyword ids attached to `node`, ascending.
    pub fn keywords(&self, node: u32) -> &[u32] {
        let v = node as usize;
        &self.kw_ids[self.kw_offsets[v]..self.kw_offsets[v + 1]]
    }

    pub fn degree(&self, node: u32) -> usize {
        self.out_refs(node).len() + self.in_cites(node).len()
    }

    /// Share of the raw reference list that resolved to graph nodes.
    ///
    /// Zero raw references yields 0 by convention.
    pub fn active_reference_ratio(&self, node: u32) -> Result<f64, GraphError> {
        let v = self.check(node)?;
        let raw = self.raw_ref_counts[v];
        if raw == 0 {
            return Ok(0.0);
        }
        Ok(self.out_refs(node).len() as f64 / raw as f64)
    }

    /// Bibliographic coupling strength: number of active references the
    /// two publications share.
    pub fn coupling_strength(&self, a: u32, b: u32) -> Result<u32, GraphError> {
        self.check(a)?;
        self.check(b)?;
        Ok(intersection_size(self.out_refs(a), self.out_refs(b)))
    }

    /// Drops every node with no citation relation (in or out).
    ///
    /// Returns the subgraph, the kept original node indices (ascending,
    /// position = new index) and the number of nodes removed. Pruning a
    /// pruned graph removes nothing.
    pub fn prune_isolated(&self) -> (CiteGraph, Vec<u32>, usize) {
        let n = self.node_count();
        let kept: Vec<u32> = (0..n as u32).filter(|&v| self.degree(v) > 0).collect();
        let removed = n - kept.len();
        if removed == 0 {
            return (self.clone(), kept, 0);
        }

        let mut remap = vec![u32::MAX; n];
        for (new, &old) in kept.iter().enumerate() {
            remap[old as usize] = new as u32;
        }

        let years = kept.iter().map(|&v| self.years[v as usize]).collect();
        let doc_types = kept.iter().map(|&v| self.doc_types[v as usize]).collect();
        let raw_ref_counts = kept
            .iter()
            .map(|&v| self.raw_ref_counts[v as usize])
            .collect();
        let keywords = kept.iter().map(|&v| self.keywords(v).to_vec()).collect();
        let mut edges = Vec::with_capacity(self.edge_count());
        for &old in &kept {
            for &t in self.out_refs(old) {
                // both ends kept: a cited node has in-degree > 0
                edges.push((remap[old as usize], remap[t as usize]));
            }
        }

        let graph = CiteGraph::build(years, doc_types, raw_ref_counts, keywords, edges)
            .expect("pruning preserves graph invariants");
        (graph, kept, removed)
    }
}

/// Size of the intersection of two ascending slices.
pub(crate) fn intersection_size(a: &[u32], b: &[u32]) -> u32 {
    let mut count = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

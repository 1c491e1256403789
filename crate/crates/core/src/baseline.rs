//! Baseline classification built from synthesis articles and their
//! active references.
//!
//! A synthesis article (an article or review with a long reference
//! list, most of it resolving inside the corpus) is taken to summarize
//! one research topic; its active references form a candidate class.
//! Candidates whose reference lists overlap too much are grouped and
//! thinned to one representative per group, and references cited by
//! several surviving representatives are assigned to exactly one of
//! them by bibliographic coupling, so the final classes are disjoint.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{intersection_size, CiteGraph, DocType};
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaselineParams {
    /// Synthesis articles are restricted to this publication year.
    pub baseline_year: i32,
    /// Minimum raw (total) reference count.
    pub min_refs: u32,
    /// Minimum share of references resolving inside the corpus.
    pub min_active_ratio: f64,
    /// Reference-overlap level at or above which two candidates are
    /// treated as covering the same topic.
    pub overlap_threshold: f64,
    /// Seed for the random representative choice per overlap group.
    pub seed: u64,
}

impl BaselineParams {
    pub fn new(baseline_year: i32, seed: u64) -> BaselineParams {
        BaselineParams {
            baseline_year,
            min_refs: 100,
            min_active_ratio: 0.8,
            overlap_threshold: 0.30,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaselineError {
    /// No publication passes the candidate filters.
    NoCandidates,
    /// Overlap of candidates with an empty active reference set.
    EmptyReferenceSet,
    /// Classes are not pairwise disjoint.
    OverlappingClasses {
        member: u32,
    },
    EmptyClass,
}

impl fmt::Display for BaselineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaselineError::NoCandidates => write!(f, "no publication passes the synthesis filters"),
            BaselineError::EmptyReferenceSet => {
                write!(f, "overlap is undefined for an empty reference set")
            }
            BaselineError::OverlappingClasses { member } => {
                write!(
                    f,
                    "reference article {member} belongs to more than one class"
                )
            }
            BaselineError::EmptyClass => write!(f, "baseline class has no members"),
        }
    }
}

/// A publication passing the synthesis-article filters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisCandidate {
    pub node: u32,
    pub year: i32,
    pub raw_ref_count: u32,
    /// Active references, ascending.
    pub active_refs: Vec<u32>,
}

/// One baseline class: a synthesis article and its surviving reference
/// articles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaselineClass {
    pub synthesis: u32,
    /// Members, ascending. Never contains the synthesis article itself.
    pub members: Vec<u32>,
}

/// Disjoint baseline classes; the union of the member sets is the
/// reference-article universe the calibration compares against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaselineClassification {
    pub classes: Vec<BaselineClass>,
    p_prime: Vec<u32>,
}

impl BaselineClassification {
    fn new(classes: Vec<BaselineClass>) -> BaselineClassification {
        let mut p_prime: Vec<u32> = classes
            .iter()
            .flat_map(|c| c.members.iter().copied())
            .collect();
        p_prime.sort_unstable();
        BaselineClassification { classes, p_prime }
    }

    /// Builds from ready-made classes (e.g. a baseline file read back
    /// from disk), checking disjointness and non-emptiness. Member
    /// lists are sorted.
    pub fn from_classes(
        mut classes: Vec<BaselineClass>,
    ) -> Result<BaselineClassification, BaselineError> {
        for class in &mut classes {
            if class.members.is_empty() {
                return Err(BaselineError::EmptyClass);
            }
            class.members.sort_unstable();
        }
        let built = BaselineClassification::new(classes);
        for pair in built.p_prime.windows(2) {
            if pair[0] == pair[1] {
                return Err(BaselineError::OverlappingClasses { member: pair[0] });
            }
        }
        Ok(built)
    }

    /// Union of all class member sets, ascending.
    pub fn p_prime(&self) -> &[u32] {
        &self.p_prime
    }

    pub fn member_count(&self) -> usize {
        self.p_prime.len()
    }

    /// The classification as a positional partition of `p_prime()`
    /// (object `i` = `p_prime()[i]`), for comparison against restricted
    /// partitions derived over the same node list.
    pub fn as_partition(&self) -> Partition {
        let mut raw = vec![0u32; self.p_prime.len()];
        for (class_id, class) in self.classes.iter().enumerate() {
            for &m in &class.members {
                let pos = self.p_prime.binary_search(&m).expect("member in p_prime");
                raw[pos] = class_id as u32;
            }
        }
        Partition::from_assignment(&raw)
    }
}

/// Counts reported after each stage of the build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BaselineReport {
    pub candidates: u64,
    pub groups: u64,
    pub excluded_by_grouping: u64,
    pub shared_refs_resolved: u64,
    pub ties_dropped: u64,
    pub classes: u64,
    pub members: u64,
}

/// All publications of the baseline year that are articles or reviews
/// with at least `min_refs` raw references, at least `min_active_ratio`
/// of which resolve inside the corpus.
pub fn select_candidates(graph: &CiteGraph, params: &BaselineParams) -> Vec<SynthesisCandidate> {
    let mut out = Vec::new();
    for v in 0..graph.node_count() as u32 {
        if graph.year(v) != params.baseline_year {
            continue;
        }
        if !matches!(graph.doc_type(v), DocType::Article | DocType::Review) {
            continue;
        }
        let raw = graph.raw_ref_count(v);
        if raw < params.min_refs {
            continue;
        }
        let refs = graph.out_refs(v);
        if raw == 0 || (refs.len() as f64 / raw as f64) < params.min_active_ratio {
            continue;
        }
        out.push(SynthesisCandidate {
            node: v,
            year: params.baseline_year,
            raw_ref_count: raw,
            active_refs: refs.to_vec(),
        });
    }
    out
}

/// Reference overlap of two candidates: with `m` shared active
/// references and list sizes `A1`, `A2`,
///
/// ```text
/// y = (m/A1 + m/A2) / 2
/// ```
pub fn overlap(s1: &SynthesisCandidate, s2: &SynthesisCandidate) -> Result<f64, BaselineError> {
    if s1.active_refs.is_empty() || s2.active_refs.is_empty() {
        return Err(BaselineError::EmptyReferenceSet);
    }
    let m = intersection_size(&s1.active_refs, &s2.active_refs) as f64;
    let a1 = s1.active_refs.len() as f64;
    let a2 = s2.active_refs.len() as f64;
    Ok(0.5 * (m / a1 + m / a2))
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, v: u32) -> u32 {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = v;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // root at the smaller index keeps group order deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Connected components of the candidate graph whose edges are pairs
/// with overlap at or above `threshold`. Transitive: candidates joined
/// through intermediaries land in one group even when their direct
/// overlap is below the threshold. Groups are ordered by smallest
/// candidate index; indices are positions into `candidates`.
pub fn group_overlapping(candidates: &[SynthesisCandidate], threshold: f64) -> Vec<Vec<usize>> {
    let k = candidates.len();
    let mut dsu = UnionFind::new(k);

    // only pairs with at least one shared reference can clear the
    // threshold: enumerate co-citing candidate pairs per reference
    let mut citers: Vec<(u32, u32)> = Vec::new(); // (reference, candidate index)
    for (i, cand) in candidates.iter().enumerate() {
        for &r in &cand.active_refs {
            citers.push((r, i as u32));
        }
    }
    citers.sort_unstable();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut start = 0;
    while start < citers.len() {
        let mut end = start;
        while end < citers.len() && citers[end].0 == citers[start].0 {
            end += 1;
        }
        for a in start..end {
            for b in (a + 1)..end {
                pairs.push((citers[a].1, citers[b].1));
            }
        }
        start = end;
    }
    pairs.sort_unstable();
    pairs.dedup();

    for (a, b) in pairs {
        let y = overlap(&candidates[a as usize], &candidates[b as usize])
            .expect("candidates have references");
        if y >= threshold {
            dsu.union(a, b);
        }
    }

    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); k];
    for i in 0..k as u32 {
        let root = dsu.find(i);
        by_root[root as usize].push(i as usize);
    }
    by_root.into_iter().filter(|g| !g.is_empty()).collect()
}

/// One uniformly random member per group, deterministic for a seed.
/// Returns positions into the candidate list, in group order.
pub fn select_representatives(groups: &[Vec<usize>], seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    groups
        .iter()
        .map(|group| group[rng.gen_range(0..group.len())])
        .collect()
}

/// Assigns every reference article cited by two or more representatives
/// to exactly one of them.
///
/// For a shared reference `a` and synthesis article `s`, the similarity
/// is the summed coupling strength between `a` and every other active
/// reference of `s`. All similarities are evaluated on the original
/// reference lists and the removals applied in one batch, so the result
/// does not depend on processing order. A tie for the maximum erases
/// `a` from all its synthesis articles. Classes emptied by removals are
/// dropped.
pub fn resolve_shared_references(
    graph: &CiteGraph,
    representatives: &[SynthesisCandidate],
) -> (BaselineClassification, u64, u64) {
    // reference -> list of representative positions citing it
    let mut citing: Vec<(u32, u32)> = Vec::new();
    for (i, rep) in representatives.iter().enumerate() {
        for &r in &rep.active_refs {
            citing.push((r, i as u32));
        }
    }
    citing.sort_unstable();

    let mut drop: Vec<Vec<u32>> = vec![Vec::new(); representatives.len()];
    let mut resolved = 0u64;
    let mut ties = 0u64;

    let mut start = 0;
    while start < citing.len() {
        let mut end = start;
        while end < citing.len() && citing[end].0 == citing[start].0 {
            end += 1;
        }
        if end - start >= 2 {
            let shared = citing[start].0;
            let mut best_sim = 0u64;
            let mut best_at = usize::MAX;
            let mut tie = false;
            for &(_, rep_idx) in &citing[start..end] {
                let rep = &representatives[rep_idx as usize];
                let mut sim = 0u64;
                for &other in &rep.active_refs {
                    if other == shared {
                        continue;
                    }
                    sim += intersection_size(graph.out_refs(shared), graph.out_refs(other)) as u64;
                }
                if best_at == usize::MAX || sim > best_sim {
                    best_sim = sim;
                    best_at = rep_idx as usize;
                    tie = false;
                } else if sim == best_sim {
                    tie = true;
                }
            }
            if tie {
                ties += 1;
                for &(_, rep_idx) in &citing[start..end] {
                    drop[rep_idx as usize].push(shared);
                }
            } else {
                resolved += 1;
                for &(_, rep_idx) in &citing[start..end] {
                    if rep_idx as usize != best_at {
                        drop[rep_idx as usize].push(shared);
                    }
                }
            }
        }
        start = end;
    }

    let mut classes = Vec::new();
    for (i, rep) in representatives.iter().enumerate() {
        let drops = &drop[i];
        let members: Vec<u32> = rep
            .active_refs
            .iter()
            .copied()
            .filter(|r| drops.binary_search(r).is_err())
            .collect();
        if !members.is_empty() {
            classes.push(BaselineClass {
                synthesis: rep.node,
                members,
            });
        }
    }
    (BaselineClassification::new(classes), resolved, ties)
}

/// Full baseline construction: candidate selection, overlap grouping,
/// representative choice, shared-reference resolution.
pub fn build_baseline(
    graph: &CiteGraph,
    params: &BaselineParams,
) -> Result<(BaselineClassification, BaselineReport), BaselineError> {
    let candidates = select_candidates(graph, params);
    if candidates.is_empty() {
        return Err(BaselineError::NoCandidates);
    }
    let groups = group_overlapping(&candidates, params.overlap_threshold);
    let reps_idx = select_representatives(&groups, params.seed);
    let mut representatives: Vec<SynthesisCandidate> =
        reps_idx.iter().map(|&i| candidates[i].clone()).collect();
    representatives.sort_unstable_by_key(|r| r.node);

    let (classification, resolved, ties) = resolve_shared_references(graph, &representatives);
    let report = BaselineReport {
        candidates: candidates.len() as u64,
        groups: groups.len() as u64,
        excluded_by_grouping: (candidates.len() - groups.len()) as u64,
        shared_refs_resolved: resolved,
        ties_dropped: ties,
        classes: classification.classes.len() as u64,
        members: classification.member_count() as u64,
    };
    Ok((classification, report))
}

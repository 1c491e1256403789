//! Logical classifications of a node set.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionError {
    /// Class list does not cover every node exactly once.
    NotAClassification,
    Empty,
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::NotAClassification => {
                write!(f, "classes do not cover every node exactly once")
            }
            PartitionError::Empty => write!(f, "partition has no nodes"),
        }
    }
}

/// A logical classification: every node in exactly one class.
///
/// Class ids are contiguous `0..n_classes` with no empty classes; any
/// labelling fed in through [`Partition::from_assignment`] is
/// renumbered in first-seen node order. Nodes are positional: index
/// `v` refers to whatever universe the caller tracks (full corpus,
/// baseline subset, aggregate network).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<u32>,
    n_classes: u32,
}

impl Partition {
    /// Each node its own class.
    pub fn singletons(n: usize) -> Partition {
        Partition {
            assignment: (0..n as u32).collect(),
            n_classes: n as u32,
        }
    }

    /// Builds from arbitrary labels, renumbering to contiguous ids in
    /// first-seen node order.
    pub fn from_assignment(raw: &[u32]) -> Partition {
        let mut remap: Vec<u32> = vec![u32::MAX; 0];
        // labels may be sparse; remap via sort of distinct labels would
        // lose first-seen order, so use a growable direct map
        let max_label = raw.iter().copied().max().unwrap_or(0) as usize;
        remap.resize(max_label + 1, u32::MAX);
        let mut next = 0u32;
        let assignment = raw
            .iter()
            .map(|&label| {
                let slot = &mut remap[label as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        Partition {
            assignment,
            n_classes: next,
        }
    }

    /// Builds from explicit member lists that must cover `0..n_nodes`
    /// exactly once.
    pub fn from_classes(n_nodes: usize, classes: &[Vec<u32>]) -> Result<Partition, PartitionError> {
        let mut assignment = vec![u32::MAX; n_nodes];
        let mut named = 0u32;
        let mut covered = 0usize;
        for class in classes {
            if class.is_empty() {
                return Err(PartitionError::NotAClassification);
            }
            for &v in class {
                let slot = assignment
                    .get_mut(v as usize)
                    .ok_or(PartitionError::NotAClassification)?;
                if *slot != u32::MAX {
                    return Err(PartitionError::NotAClassification);
                }
                *slot = named;
                covered += 1;
            }
            named += 1;
        }
        if covered != n_nodes {
            return Err(PartitionError::NotAClassification);
        }
        Ok(Partition {
            assignment,
            n_classes: named,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.assignment.len()
    }

    pub fn n_classes(&self) -> u32 {
        self.n_classes
    }

    pub fn class_of(&self, node: u32) -> u32 {
        self.assignment[node as usize]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    /// Member count per class.
    pub fn class_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.n_classes as usize];
        for &c in &self.assignment {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Member lists per class, nodes ascending within each class.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut members = vec![Vec::new(); self.n_classes as usize];
        for (v, &c) in self.assignment.iter().enumerate() {
            members[c as usize].push(v as u32);
        }
        members
    }

    /// Canonical numbering for file output: class ids reassigned in
    /// descending size order, ties by smallest member node. Idempotent.
    pub fn canonicalize(&self) -> Partition {
        let mut order: Vec<(u64, u32, u32)> = Vec::with_capacity(self.n_classes as usize);
        let sizes = self.class_sizes();
        let mut min_member = vec![u32::MAX; self.n_classes as usize];
        for (v, &c) in self.assignment.iter().enumerate() {
            if min_member[c as usize] == u32::MAX {
                min_member[c as usize] = v as u32;
            }
        }
        for c in 0..self.n_classes {
            order.push((sizes[c as usize], min_member[c as usize], c));
        }
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut remap = vec![0u32; self.n_classes as usize];
        for (rank, &(_, _, c)) in order.iter().enumerate() {
            remap[c as usize] = rank as u32;
        }
        Partition {
            assignment: self.assignment.iter().map(|&c| remap[c as usize]).collect(),
            n_classes: self.n_classes,
        }
    }
}

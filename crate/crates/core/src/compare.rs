//! Baseline-restricted classifications and the Adjusted Rand Index.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompareError {
    /// The two partitions classify different numbers of objects.
    ObjectSetMismatch {
        x: usize,
        y: usize,
    },
    /// A requested node is not covered by the partition.
    NodeOutOfRange {
        node: u32,
    },
    /// Both partitions are all-singletons or both one single class and
    /// they are not identical: the chance-adjusted index is 0/0.
    DegenerateComparison,
    EmptyPartition,
}

impl fmt::Display for CompareError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompareError::ObjectSetMismatch { x, y } => {
                write!(f, "partitions cover {x} vs {y} objects")
            }
            CompareError::NodeOutOfRange { node } => {
                write!(f, "node {node} is not covered by the partition")
            }
            CompareError::DegenerateComparison => {
                write!(
                    f,
                    "adjusted rand index is undefined for this degenerate pair"
                )
            }
            CompareError::EmptyPartition => write!(f, "partition has no objects"),
        }
    }
}

/// Restriction of `partition` to the nodes in `keep` (ascending,
/// distinct): classes that miss `keep` entirely disappear, the others
/// are intersected with it. The result classifies exactly `keep`,
/// positionally (object `i` of the result is `keep[i]`).
pub fn derive_restricted(partition: &Partition, keep: &[u32]) -> Result<Partition, CompareError> {
    let n = partition.n_nodes();
    let mut raw = Vec::with_capacity(keep.len());
    for &v in keep {
        if v as usize >= n {
            return Err(CompareError::NodeOutOfRange { node: v });
        }
        raw.push(partition.class_of(v));
    }
    Ok(Partition::from_assignment(&raw))
}

/// Sparse co-membership counts of two partitions of the same objects.
#[derive(Clone, Debug)]
pub struct ContingencyTable {
    /// `(class_x, class_y, count)` with count > 0, ascending.
    pub cells: Vec<(u32, u32, u64)>,
    pub row_sums: Vec<u64>,
    pub col_sums: Vec<u64>,
    pub n: u64,
}

pub fn contingency(x: &Partition, y: &Partition) -> Result<ContingencyTable, CompareError> {
    if x.n_nodes() != y.n_nodes() {
        return Err(CompareError::ObjectSetMismatch {
            x: x.n_nodes(),
            y: y.n_nodes(),
        });
    }
    let mut pairs: Vec<(u32, u32)> = x
        .assignment()
        .iter()
        .zip(y.assignment().iter())
        .map(|(&a, &b)| (a, b))
        .collect();
    pairs.sort_unstable();
    let mut cells: Vec<(u32, u32, u64)> = Vec::new();
    for (a, b) in pairs {
        match cells.last_mut() {
            Some(last) if last.0 == a && last.1 == b => last.2 += 1,
            _ => cells.push((a, b, 1)),
        }
    }
    let mut row_sums = vec![0u64; x.n_classes() as usize];
    let mut col_sums = vec![0u64; y.n_classes() as usize];
    for &(a, b, c) in &cells {
        row_sums[a as usize] += c;
        col_sums[b as usize] += c;
    }
    Ok(ContingencyTable {
        cells,
        row_sums,
        col_sums,
        n: x.n_nodes() as u64,
    })
}

impl ContingencyTable {
    /// True when the two partitions are the same classification up to
    /// class labels: every row and every column holds a single cell.
    pub fn is_identity(&self) -> bool {
        self.cells.len() == self.row_sums.len() && self.cells.len() == self.col_sums.len()
    }
}

fn binom2(k: u64) -> u128 {
    let k = k as u128;
    k * k.saturating_sub(1) / 2
}

/// Adjusted Rand Index of two partitions of the same objects.
///
/// Evaluated in exact integer arithmetic with a single final division:
/// with `T = C(n,2)`, `A = sum_i C(a_i,2)`, `B = sum_j C(b_j,2)` and
/// `S = sum_ij C(n_ij,2)`,
///
/// ```text
/// ARI = (T*S - A*B) / (T*(A + B)/2 - A*B)
/// ```
///
/// which is the usual form with both sides multiplied by `T`. Identical
/// partitions score 1; the value may be negative for anti-correlated
/// pairs. When the denominator vanishes (both partitions all-singletons
/// or both a single class) the pair is only comparable if identical,
/// which scores 1; otherwise this is an error.
pub fn ari(x: &Partition, y: &Partition) -> Result<f64, CompareError> {
    if x.n_nodes() == 0 {
        return Err(CompareError::EmptyPartition);
    }
    let table = contingency(x, y)?;
    let t = binom2(table.n);
    let s: u128 = table.cells.iter().map(|&(_, _, c)| binom2(c)).sum();
    let a: u128 = table.row_sums.iter().map(|&r| binom2(r)).sum();
    let b: u128 = table.col_sums.iter().map(|&c| binom2(c)).sum();

    // doubled to keep (A + B) / 2 integral
    let numer = 2i128 * (t as i128 * s as i128 - a as i128 * b as i128);
    let denom = t as i128 * (a + b) as i128 - 2i128 * (a as i128 * b as i128);

    if denom == 0 {
        return if table.is_identity() {
            Ok(1.0)
        } else {
            Err(CompareError::DegenerateComparison)
        };
    }
    Ok(numer as f64 / denom as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partition(classes: &[&[u32]]) -> Partition {
        let n: usize = classes.iter().map(|c| c.len()).sum();
        let owned: Vec<Vec<u32>> = classes.iter().map(|c| c.to_vec()).collect();
        Partition::from_classes(n, &owned).unwrap()
    }

    #[test]
    fn derive_restricted_drops_and_intersects() {
        // classes {a,b},{c,d},{e} with a..e = 0..4; keep {a,c,d}
        let p = partition(&[&[0, 1], &[2, 3], &[4]]);
        let restricted = derive_restricted(&p, &[0, 2, 3]).unwrap();
        assert_eq!(restricted.n_nodes(), 3);
        assert_eq!(restricted.n_classes(), 2);
        // object 0 = a alone, objects 1,2 = c,d together
        assert_ne!(restricted.class_of(0), restricted.class_of(1));
        assert_eq!(restricted.class_of(1), restricted.class_of(2));
    }

    #[test]
    fn derive_restricted_identity_on_full_set() {
        let p = partition(&[&[0, 1], &[2]]);
        let r = derive_restricted(&p, &[0, 1, 2]).unwrap();
        assert_eq!(r.assignment(), p.assignment());
    }

    #[test]
    fn derive_restricted_rejects_unknown_node() {
        let p = partition(&[&[0, 1]]);
        assert_eq!(
            derive_restricted(&p, &[0, 7]),
            Err(CompareError::NodeOutOfRange { node: 7 })
        );
    }

    #[test]
    fn contingency_hand_counts() {
        // x = y = {{0,1},{2}}: diagonal [[2,0],[0,1]]
        let x = partition(&[&[0, 1], &[2]]);
        let t = contingency(&x, &x).unwrap();
        assert_eq!(t.cells, vec![(0, 0, 2), (1, 1, 1)]);
        assert!(t.is_identity());

        // x = {{0,1},{2}}, y = {{0},{1,2}}
        let y = partition(&[&[0], &[1, 2]]);
        let t = contingency(&x, &y).unwrap();
        assert_eq!(t.cells, vec![(0, 0, 1), (0, 1, 1), (1, 1, 1)]);
        assert_eq!(t.row_sums, vec![2, 1]);
        assert_eq!(t.col_sums, vec![1, 2]);
        assert!(!t.is_identity());
    }

    #[test]
    fn ari_identity_is_one() {
        let x = partition(&[&[0, 1, 2], &[3, 4], &[5]]);
        assert_eq!(ari(&x, &x).unwrap(), 1.0);
        // and under relabeling
        let relabeled = partition(&[&[5], &[3, 4], &[0, 1, 2]]);
        assert_eq!(ari(&x, &relabeled).unwrap(), 1.0);
    }

    #[test]
    fn ari_spot_values() {
        // {{1,2,3,4}} vs {{1,2},{3,4}} -> 0
        let x = partition(&[&[0, 1, 2, 3]]);
        let y = partition(&[&[0, 1], &[2, 3]]);
        assert_eq!(ari(&x, &y).unwrap(), 0.0);

        // {{1,2},{3}} vs {{1},{2,3}} -> -0.5
        let x = partition(&[&[0, 1], &[2]]);
        let y = partition(&[&[0], &[1, 2]]);
        assert_eq!(ari(&x, &y).unwrap(), -0.5);
    }

    #[test]
    fn ari_symmetric_and_label_invariant() {
        let x = partition(&[&[0, 1, 4], &[2, 3], &[5, 6, 7]]);
        let y = partition(&[&[0, 2, 4, 6], &[1, 3, 5, 7]]);
        let xy = ari(&x, &y).unwrap();
        let yx = ari(&y, &x).unwrap();
        assert_eq!(xy, yx);

        // relabel y's classes in reverse order
        let y2 = partition(&[&[1, 3, 5, 7], &[0, 2, 4, 6]]);
        assert_eq!(ari(&x, &y2).unwrap(), xy);
    }

    #[test]
    fn ari_degenerate_pairs() {
        // both all-singletons: identical by construction -> 1
        let x = Partition::singletons(4);
        let y = Partition::singletons(4);
        assert_eq!(ari(&x, &y).unwrap(), 1.0);

        // both single-class -> 1
        let x = partition(&[&[0, 1, 2]]);
        let y = partition(&[&[0, 1, 2]]);
        assert_eq!(ari(&x, &y).unwrap(), 1.0);

        // mismatched object counts
        let a = Partition::singletons(3);
        let b = Partition::singletons(4);
        assert!(matches!(
            ari(&a, &b),
            Err(CompareError::ObjectSetMismatch { .. })
        ));
    }

    #[test]
    fn ari_large_counts_stay_exact() {
        // two classes of 10^6 objects each vs a shifted split: the
        // intermediate products exceed u64 range
        let n = 2_000_000usize;
        let x_raw: Vec<u32> = (0..n).map(|i| (i / 1_000_000) as u32).collect();
        let y_raw: Vec<u32> = (0..n)
            .map(|i| ((i + 500_000) / 1_000_000 % 2) as u32)
            .collect();
        let x = Partition::from_assignment(&x_raw);
        let y = Partition::from_assignment(&y_raw);
        let v = ari(&x, &y).unwrap();
        assert!(v.is_finite());
        assert!(v < 0.01 && v > -0.01, "near-independent halves: {v}");
        assert_eq!(ari(&x, &x).unwrap(), 1.0);
    }
}

//! Descriptive outputs over partitions: class-size distributions,
//! average-class alluvial data and chi-square keyword labels.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::baseline::BaselineClassification;
use crate::graph::CiteGraph;
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnalyticsError {
    EmptyPartition,
    EmptyPublicationSet,
    InvalidBinWidth,
    /// A member of the queried set is not covered by the partition.
    NodeOutOfRange {
        node: u32,
    },
}

impl fmt::Display for AnalyticsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticsError::EmptyPartition => write!(f, "partition has no nodes"),
            AnalyticsError::EmptyPublicationSet => write!(f, "publication set is empty"),
            AnalyticsError::InvalidBinWidth => write!(f, "bin width must be at least 1"),
            AnalyticsError::NodeOutOfRange { node } => {
                write!(f, "node {node} is not covered by the partition")
            }
        }
    }
}

/// Moments and percentiles of the class-size distribution weighted by
/// class size: the distribution over articles of their own class's
/// size. Percentiles use linear interpolation on the sorted
/// article-level multiset.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedSizeStats {
    pub mean: f64,
    pub median: f64,
    pub p10: f64,
    pub p90: f64,
}

/// Element at virtual index `idx` of the multiset in which each class
/// size `s` appears `s` times, given ascending sizes and their running
/// totals.
fn expanded_at(sizes: &[u64], cums: &[u64], idx: u64) -> f64 {
    // first position whose cumulative count exceeds idx
    let pos = cums.partition_point(|&c| c <= idx);
    sizes[pos] as f64
}

fn weighted_percentile(sizes: &[u64], cums: &[u64], total: u64, p: f64) -> f64 {
    let h = (total - 1) as f64 * p;
    let lo = h as u64; // truncation == floor for non-negative h
    let frac = h - lo as f64;
    let lower = expanded_at(sizes, cums, lo);
    if frac == 0.0 {
        return lower;
    }
    let upper = expanded_at(sizes, cums, lo + 1);
    lower + frac * (upper - lower)
}

pub fn weighted_size_stats(partition: &Partition) -> Result<WeightedSizeStats, AnalyticsError> {
    if partition.n_nodes() == 0 {
        return Err(AnalyticsError::EmptyPartition);
    }
    let mut sizes = partition.class_sizes();
    sizes.sort_unstable();
    let mut cums = Vec::with_capacity(sizes.len());
    let mut total = 0u64;
    let mut sq_sum = 0u128;
    for &s in &sizes {
        total += s;
        cums.push(total);
        sq_sum += (s as u128) * (s as u128);
    }
    Ok(WeightedSizeStats {
        mean: sq_sum as f64 / total as f64,
        median: weighted_percentile(&sizes, &cums, total, 0.5),
        p10: weighted_percentile(&sizes, &cums, total, 0.1),
        p90: weighted_percentile(&sizes, &cums, total, 0.9),
    })
}

/// Counts of classes per size bin plus the exact size list. With bin
/// width `w`, sizes `1..=w` fall in the first bin, labelled by its
/// lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    pub bin_width: u64,
    /// `(bin_lower_bound, class_count)`, ascending, empty bins omitted.
    pub bins: Vec<(u64, u64)>,
    /// Exact class sizes, ascending.
    pub sizes: Vec<u64>,
}

pub fn class_size_histogram(
    partition: &Partition,
    bin_width: u64,
) -> Result<Histogram, AnalyticsError> {
    if partition.n_nodes() == 0 {
        return Err(AnalyticsError::EmptyPartition);
    }
    if bin_width == 0 {
        return Err(AnalyticsError::InvalidBinWidth);
    }
    let mut sizes = partition.class_sizes();
    sizes.sort_unstable();
    let mut bins: Vec<(u64, u64)> = Vec::new();
    for &s in &sizes {
        let lower = ((s - 1) / bin_width) * bin_width + 1;
        match bins.last_mut() {
            Some(last) if last.0 == lower => last.1 += 1,
            _ => bins.push((lower, 1)),
        }
    }
    Ok(Histogram {
        bin_width,
        bins,
        sizes,
    })
}

/// Class sizes of each partition in descending order with 1-based
/// ranks, for log-log rank-size plots.
pub fn rank_size_table(partitions: &[&Partition]) -> Result<Vec<Vec<(u32, u64)>>, AnalyticsError> {
    let mut tables = Vec::with_capacity(partitions.len());
    for p in partitions {
        if p.n_nodes() == 0 {
            return Err(AnalyticsError::EmptyPartition);
        }
        let mut sizes = p.class_sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        tables.push(
            sizes
                .into_iter()
                .enumerate()
                .map(|(i, s)| (i as u32 + 1, s))
                .collect(),
        );
    }
    Ok(tables)
}

/// Alluvial data for the average baseline class.
#[derive(Clone, Debug, PartialEq)]
pub struct AverageClassDistribution {
    /// Mean number of distinct partition classes a baseline class
    /// spreads over.
    pub mean_classes: f64,
    /// The mean rounded half-up: the spread the selected classes have.
    pub spread: u32,
    /// Baseline classes spreading over exactly `spread` classes.
    pub n_selected: u64,
    /// Mean member count of the selected baseline classes.
    pub mean_members: f64,
    /// Average member count per rank, ranks `1..=spread`. Empty when no
    /// baseline class matches the rounded spread exactly.
    pub rank_averages: Vec<f64>,
}

/// For each baseline class, counts the distinct partition classes its
/// members occupy; baseline classes sitting at exactly the rounded mean
/// spread are tabulated per partition class (member counts descending),
/// and the counts averaged by rank across those classes.
pub fn average_class_distribution(
    baseline: &BaselineClassification,
    partition: &Partition,
) -> Result<AverageClassDistribution, AnalyticsError> {
    if baseline.classes.is_empty() {
        return Err(AnalyticsError::EmptyPartition);
    }
    let n = partition.n_nodes() as u32;

    // per baseline class: descending member counts per partition class
    let mut spreads: Vec<Vec<u64>> = Vec::with_capacity(baseline.classes.len());
    for class in &baseline.classes {
        let mut hit: Vec<u32> = Vec::with_capacity(class.members.len());
        for &m in &class.members {
            if m >= n {
                return Err(AnalyticsError::NodeOutOfRange { node: m });
            }
            hit.push(partition.class_of(m));
        }
        hit.sort_unstable();
        let mut counts: Vec<u64> = Vec::new();
        let mut run = 0u64;
        for i in 0..hit.len() {
            run += 1;
            if i + 1 == hit.len() || hit[i + 1] != hit[i] {
                counts.push(run);
                run = 0;
            }
        }
        counts.sort_unstable_by(|a, b| b.cmp(a));
        spreads.push(counts);
    }

    let total_spread: u64 = spreads.iter().map(|c| c.len() as u64).sum();
    let mean_classes = total_spread as f64 / spreads.len() as f64;
    // half-up rounding; the mean is non-negative
    let spread = (mean_classes + 0.5) as u32;

    let selected: Vec<&Vec<u64>> = spreads
        .iter()
        .filter(|c| c.len() == spread as usize)
        .collect();
    if selected.is_empty() {
        return Ok(AverageClassDistribution {
            mean_classes,
            spread,
            n_selected: 0,
            mean_members: 0.0,
            rank_averages: Vec::new(),
        });
    }
    let mut rank_sums = vec![0u64; spread as usize];
    let mut member_total = 0u64;
    for counts in &selected {
        for (rank, &c) in counts.iter().enumerate() {
            rank_sums[rank] += c;
            member_total += c;
        }
    }
    let k = selected.len() as f64;
    Ok(AverageClassDistribution {
        mean_classes,
        spread,
        n_selected: selected.len() as u64,
        mean_members: member_total as f64 / k,
        rank_averages: rank_sums.iter().map(|&s| s as f64 / k).collect(),
    })
}

/// Chi-square of a 2x2 contingency table (no continuity correction):
///
/// ```text
/// N (O11 O22 - O12 O21)^2 / [(O11+O12)(O21+O22)(O11+O21)(O12+O22)]
/// ```
///
/// Degenerate tables (a zero margin) score 0.
pub fn chi_square(o11: u64, o12: u64, o21: u64, o22: u64) -> f64 {
    let n = (o11 + o12 + o21 + o22) as f64;
    let r1 = (o11 + o12) as f64;
    let r2 = (o21 + o22) as f64;
    let c1 = (o11 + o21) as f64;
    let c2 = (o12 + o22) as f64;
    let denom = r1 * r2 * c1 * c2;
    if denom == 0.0 {
        return 0.0;
    }
    let det = o11 as f64 * o22 as f64 - o12 as f64 * o21 as f64;
    n * det * det / denom
}

/// Label material for one class: its most over-represented keywords.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassLabel {
    pub class_id: u32,
    pub n_members: u64,
    /// Up to `top_k` keywords, descending chi-square, ties by keyword
    /// id (the caller interns keywords in lexicographic order).
    pub top_keywords: Vec<(u32, f64)>,
    /// False when no member publication carries any keyword.
    pub has_keywords: bool,
}

/// Ranks author keywords per class by the chi-square of the 2x2 table
/// (in/out of class) x (contains/lacks keyword) over all graph
/// publications. Keywords absent from the class are excluded. Classes
/// smaller than `min_class_size` are skipped.
pub fn chi_square_labels(
    graph: &CiteGraph,
    partition: &Partition,
    top_k: usize,
    min_class_size: u64,
) -> Vec<ClassLabel> {
    let members = partition.members();
    let n_total = graph.node_count() as u64;

    // global publication count per keyword
    let mut global: Vec<u64> = Vec::new();
    for v in 0..graph.node_count() as u32 {
        for &kw in graph.keywords(v) {
            if kw as usize >= global.len() {
                global.resize(kw as usize + 1, 0);
            }
            global[kw as usize] += 1;
        }
    }

    let mut labels = Vec::new();
    for (class_id, class_members) in members.iter().enumerate() {
        let n_class = class_members.len() as u64;
        if n_class < min_class_size {
            continue;
        }
        labels.push(label_for_class(
            graph,
            class_id as u32,
            class_members,
            &global,
            n_total,
            top_k,
        ));
    }
    labels
}

/// Chi-square keyword ranking for a single class; the driver for both
/// the serial path above and parallel per-class labelling in callers.
pub fn label_for_class(
    graph: &CiteGraph,
    class_id: u32,
    class_members: &[u32],
    global_keyword_counts: &[u64],
    n_total: u64,
    top_k: usize,
) -> ClassLabel {
    let n_class = class_members.len() as u64;
    // occurrence counts within the class
    let mut in_class: Vec<(u32, u64)> = Vec::new();
    {
        let mut all: Vec<u32> = Vec::new();
        for &m in class_members {
            all.extend_from_slice(graph.keywords(m));
        }
        all.sort_unstable();
        let mut i = 0;
        while i < all.len() {
            let mut j = i;
            while j < all.len() && all[j] == all[i] {
                j += 1;
            }
            in_class.push((all[i], (j - i) as u64));
            i = j;
        }
    }
    let has_keywords = !in_class.is_empty();

    let mut scored: Vec<(u32, f64)> = in_class
        .into_iter()
        .map(|(kw, o11)| {
            let o12 = n_class - o11;
            let o21 = global_keyword_counts[kw as usize] - o11;
            let o22 = n_total - n_class - o21;
            (kw, chi_square(o11, o12, o21, o22))
        })
        .collect();
    scored.sort_unstable_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    scored.truncate(top_k);

    ClassLabel {
        class_id,
        n_members: n_class,
        top_keywords: scored,
        has_keywords,
    }
}

/// Counts and percentage shares of `pub_set` per partition class,
/// descending (ties by class id), truncated to `top_n` rows.
pub fn distribution_into_classes(
    pub_set: &[u32],
    partition: &Partition,
    top_n: usize,
) -> Result<Vec<(u32, u64, f64)>, AnalyticsError> {
    if pub_set.is_empty() {
        return Err(AnalyticsError::EmptyPublicationSet);
    }
    let n = partition.n_nodes() as u32;
    let mut classes: Vec<u32> = Vec::with_capacity(pub_set.len());
    for &v in pub_set {
        if v >= n {
            return Err(AnalyticsError::NodeOutOfRange { node: v });
        }
        classes.push(partition.class_of(v));
    }
    classes.sort_unstable();
    let mut rows: Vec<(u32, u64)> = Vec::new();
    let mut run = 0u64;
    for i in 0..classes.len() {
        run += 1;
        if i + 1 == classes.len() || classes[i + 1] != classes[i] {
            rows.push((classes[i], run));
            run = 0;
        }
    }
    rows.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    rows.truncate(top_n);
    let total = pub_set.len() as f64;
    Ok(rows
        .into_iter()
        .map(|(c, count)| (c, count, 100.0 * count as f64 / total))
        .collect())
}

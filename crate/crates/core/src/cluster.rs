//! Resolution-parameterized quality function and the smart local moving
//! optimizer.
//!
//! Quality is the constant-Potts form `Q = sum over same-class pairs of
//! (a_ij - gamma)`: every co-classified pair pays the resolution penalty
//! `gamma` whether or not it is connected, which is what frees the
//! measure from the resolution limit of plain modularity. Aggregate
//! networks carry node sizes and self-loops so that quality evaluated on
//! an aggregate equals quality of the expanded partition on the original
//! network.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::partition::Partition;
use crate::relatedness::Network;

pub const DEFAULT_MAX_ITERATIONS: u32 = 20;
pub const DEFAULT_MIN_IMPROVEMENT: f64 = 1e-12;

/// Anti-hang bound on local moving passes. Every pass with a move
/// raises Q by more than `min_improvement`, so this is never reached in
/// practice.
const MAX_PASSES: u32 = 1000;

/// Independent restarts of the full multilevel loop inside
/// [`slm_cluster`]; the best-quality partition wins. Greedy node moving
/// can stick in a local optimum from one visiting order, and restarts
/// from fresh random orders are the standard remedy.
const RANDOM_STARTS: u32 = 25;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QualityParams {
    /// Resolution parameter; higher values give finer partitions.
    pub gamma: f64,
    pub seed: u64,
    pub max_iterations: u32,
    pub min_improvement: f64,
}

impl QualityParams {
    pub fn new(gamma: f64, seed: u64) -> QualityParams {
        QualityParams {
            gamma,
            seed,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            min_improvement: DEFAULT_MIN_IMPROVEMENT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClusterError {
    NodeCountMismatch { partition: usize, network: usize },
    EmptyNetwork,
    InvalidGamma,
}

fn valid_gamma(gamma: f64) -> bool {
    gamma.is_finite() && gamma > 0.0
}

impl fmt::Display for ClusterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterError::NodeCountMismatch { partition, network } => write!(
                f,
                "partition covers {partition} nodes but the network has {network}"
            ),
            ClusterError::EmptyNetwork => write!(f, "network has no nodes"),
            ClusterError::InvalidGamma => write!(f, "resolution parameter must be positive"),
        }
    }
}

/// Constant-Potts quality of `partition` on `net` at resolution `gamma`.
///
/// Per class `c`: within-class edge weight (plus member self-loops)
/// minus `gamma * N_c (N_c - 1) / 2`, with `N_c` the class size in
/// original-node units. On a unit network the singleton partition
/// scores exactly 0.
pub fn quality(net: &Network, partition: &Partition, gamma: f64) -> Result<f64, ClusterError> {
    if partition.n_nodes() != net.n() {
        return Err(ClusterError::NodeCountMismatch {
            partition: partition.n_nodes(),
            network: net.n(),
        });
    }
    let mut within = 0.0;
    for v in 0..net.n() as u32 {
        within += net.self_loop(v);
        let cv = partition.class_of(v);
        for (u, w) in net.neighbors(v) {
            if u > v && partition.class_of(u) == cv {
                within += w;
            }
        }
    }
    let mut class_sizes = vec![0u64; partition.n_classes() as usize];
    for v in 0..net.n() as u32 {
        class_sizes[partition.class_of(v) as usize] += net.node_size(v);
    }
    let mut penalty = 0.0;
    for &s in &class_sizes {
        let s = s as f64;
        penalty += gamma * s * (s - 1.0) / 2.0;
    }
    Ok(within - penalty)
}

/// Gain of moving `v` from its class to `target` (`None` = fresh
/// singleton class), against the current `state`.
///
/// `k_target`/`k_current` are the summed edge weights from `v` into the
/// target class and into the rest of its current class.
fn move_gain(
    gamma: f64,
    node_size: u64,
    k_target: f64,
    k_current: f64,
    target_size: u64,
    current_size_rest: u64,
) -> f64 {
    (k_target - k_current)
        - gamma * node_size as f64 * (target_size as f64 - current_size_rest as f64)
}

struct MoveState {
    assignment: Vec<u32>,
    class_size: Vec<u64>,
    class_members: Vec<u32>,
    free: Vec<u32>,
    acc: Vec<f64>,
    touched: Vec<u32>,
}

impl MoveState {
    fn new(net: &Network, init: &[u32], n_classes: u32) -> MoveState {
        let mut class_size = vec![0u64; n_classes as usize];
        let mut class_members = vec![0u32; n_classes as usize];
        for (v, &c) in init.iter().enumerate() {
            class_size[c as usize] += net.node_size(v as u32);
            class_members[c as usize] += 1;
        }
        MoveState {
            assignment: init.to_vec(),
            class_size,
            class_members,
            free: Vec::new(),
            acc: vec![0.0; n_classes as usize],
            touched: Vec::new(),
        }
    }

    fn fresh_class(&mut self) -> u32 {
        if let Some(c) = self.free.pop() {
            c
        } else {
            self.class_size.push(0);
            self.class_members.push(0);
            self.acc.push(0.0);
            (self.class_size.len() - 1) as u32
        }
    }

    fn apply(&mut self, v: u32, size: u64, from: u32, to: u32) {
        self.class_size[from as usize] -= size;
        self.class_members[from as usize] -= 1;
        if self.class_members[from as usize] == 0 {
            self.free.push(from);
        }
        self.class_size[to as usize] += size;
        self.class_members[to as usize] += 1;
        self.assignment[v as usize] = to;
    }
}

/// Repeated node sweeps in seeded random order until a full pass makes
/// no move with gain above `min_improvement`. Returns the compacted
/// partition and whether any move happened at all.
fn local_move_impl(
    net: &Network,
    init: &[u32],
    init_classes: u32,
    gamma: f64,
    min_improvement: f64,
    rng: &mut ChaCha8Rng,
) -> (Partition, bool) {
    let n = net.n();
    let mut state = MoveState::new(net, init, init_classes);
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut moved_any = false;

    for _pass in 0..MAX_PASSES {
        order.shuffle(rng);
        let mut moved_this_pass = false;
        for &v in &order {
            let current = state.assignment[v as usize];
            for (u, w) in net.neighbors(v) {
                let c = state.assignment[u as usize];
                if state.acc[c as usize] == 0.0 {
                    state.touched.push(c);
                }
                state.acc[c as usize] += w;
            }
            let size_v = net.node_size(v);
            let k_current = state.acc[current as usize];
            let size_rest = state.class_size[current as usize] - size_v;

            // candidate classes ascending: ties resolve to the lowest id
            state.touched.sort_unstable();
            let mut best_gain = min_improvement;
            let mut best: Option<u32> = None;
            let mut to_fresh = false;
            for &b in &state.touched {
                if b == current {
                    continue;
                }
                let gain = move_gain(
                    gamma,
                    size_v,
                    state.acc[b as usize],
                    k_current,
                    state.class_size[b as usize],
                    size_rest,
                );
                if gain > best_gain {
                    best_gain = gain;
                    best = Some(b);
                }
            }
            // a fresh singleton class, unless v already is one
            if state.class_members[current as usize] > 1 {
                let gain = move_gain(gamma, size_v, 0.0, k_current, 0, size_rest);
                if gain > best_gain {
                    best = None;
                    to_fresh = true;
                }
            }

            for &c in &state.touched {
                state.acc[c as usize] = 0.0;
            }
            state.touched.clear();

            if let Some(b) = best {
                state.apply(v, size_v, current, b);
                moved_this_pass = true;
            } else if to_fresh {
                let b = state.fresh_class();
                state.apply(v, size_v, current, b);
                moved_this_pass = true;
            }
        }
        if moved_this_pass {
            moved_any = true;
        } else {
            break;
        }
    }

    (Partition::from_assignment(&state.assignment), moved_any)
}

/// One local moving run from `initial`, with a fresh generator seeded
/// from `params.seed`. The result has no single-node move (to any
/// neighbor class or to a fresh singleton) gaining more than
/// `params.min_improvement`.
pub fn local_moving(
    net: &Network,
    initial: &Partition,
    params: &QualityParams,
) -> Result<Partition, ClusterError> {
    if initial.n_nodes() != net.n() {
        return Err(ClusterError::NodeCountMismatch {
            partition: initial.n_nodes(),
            network: net.n(),
        });
    }
    if !valid_gamma(params.gamma) {
        return Err(ClusterError::InvalidGamma);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (partition, _) = local_move_impl(
        net,
        initial.assignment(),
        initial.n_classes(),
        params.gamma,
        params.min_improvement,
        &mut rng,
    );
    Ok(partition)
}

/// Network induced on `nodes` (ascending): edges among the selected
/// nodes only, sizes and self-loops inherited.
fn induced_subnetwork(net: &Network, nodes: &[u32]) -> Network {
    let mut local = vec![u32::MAX; net.n()];
    for (i, &v) in nodes.iter().enumerate() {
        local[v as usize] = i as u32;
    }
    let mut edges = Vec::new();
    for (i, &v) in nodes.iter().enumerate() {
        for (u, w) in net.neighbors(v) {
            if u > v && local[u as usize] != u32::MAX {
                edges.push((i as u32, local[u as usize], w));
            }
        }
    }
    let sizes = nodes.iter().map(|&v| net.node_size(v)).collect();
    let loops = nodes.iter().map(|&v| net.self_loop(v)).collect();
    Network::with_sizes(nodes.len(), &edges, sizes, loops)
}

/// Collapses each class of `partition` into one node. Edge weights sum
/// across class pairs; intra-class weight (and member self-loops) moves
/// into the aggregate node's self-loop; node sizes sum, so quality of
/// any partition of the aggregate equals quality of its expansion on
/// `net`.
pub fn aggregate(net: &Network, partition: &Partition) -> Network {
    let m = partition.n_classes() as usize;
    let mut sizes = vec![0u64; m];
    let mut loops = vec![0f64; m];
    for v in 0..net.n() as u32 {
        let c = partition.class_of(v) as usize;
        sizes[c] += net.node_size(v);
        loops[c] += net.self_loop(v);
    }
    let mut cross: Vec<(u32, u32, f64)> = Vec::new();
    for v in 0..net.n() as u32 {
        let cv = partition.class_of(v);
        for (u, w) in net.neighbors(v) {
            if u <= v {
                continue;
            }
            let cu = partition.class_of(u);
            if cu == cv {
                loops[cv as usize] += w;
            } else {
                let (a, b) = if cv < cu { (cv, cu) } else { (cu, cv) };
                cross.push((a, b, w));
            }
        }
    }
    cross.sort_unstable_by_key(|&(a, b, _)| (a, b));
    let mut merged: Vec<(u32, u32, f64)> = Vec::with_capacity(cross.len());
    for (a, b, w) in cross {
        match merged.last_mut() {
            Some(last) if last.0 == a && last.1 == b => last.2 += w,
            _ => merged.push((a, b, w)),
        }
    }
    Network::with_sizes(m, &merged, sizes, loops)
}

/// One full multilevel iteration: local moving, per-class refinement
/// from singletons, aggregation over the refined classes, recursion on
/// the aggregate. The returned flag reports whether any move happened
/// at the level of `net` or deeper aggregates (refinement restructuring
/// alone does not count: with no such move the classification is
/// unchanged).
fn slm_iteration(
    net: &Network,
    current: &Partition,
    params: &QualityParams,
    rng: &mut ChaCha8Rng,
) -> (Partition, bool) {
    let (p1, moved_here) = local_move_impl(
        net,
        current.assignment(),
        current.n_classes(),
        params.gamma,
        params.min_improvement,
        rng,
    );
    if p1.n_classes() as usize == net.n() {
        return (p1, moved_here);
    }

    // refine each class from singletons on its induced subnetwork
    let members = p1.members();
    let mut refined = vec![0u32; net.n()];
    let mut next = 0u32;
    for class in &members {
        if class.len() == 1 {
            refined[class[0] as usize] = next;
            next += 1;
            continue;
        }
        let subnet = induced_subnetwork(net, class);
        let singles: Vec<u32> = (0..class.len() as u32).collect();
        let (sub, _) = local_move_impl(
            &subnet,
            &singles,
            class.len() as u32,
            params.gamma,
            params.min_improvement,
            rng,
        );
        for (local, &node) in class.iter().enumerate() {
            refined[node as usize] = next + sub.class_of(local as u32);
        }
        next += sub.n_classes();
    }
    if next as usize == net.n() {
        // fully singleton refinement: the aggregate would be the
        // network itself
        return (p1, moved_here);
    }

    let refined_p = Partition::from_assignment(&refined);
    let agg_net = aggregate(net, &refined_p);
    // aggregate nodes inherit the class their members held in p1
    let agg_members = refined_p.members();
    let agg_init_raw: Vec<u32> = agg_members.iter().map(|m| p1.class_of(m[0])).collect();
    let agg_init = Partition::from_assignment(&agg_init_raw);

    let (agg_result, moved_deep) = slm_iteration(&agg_net, &agg_init, params, rng);

    let assignment: Vec<u32> = (0..net.n())
        .map(|v| agg_result.class_of(refined_p.class_of(v as u32)))
        .collect();
    (
        Partition::from_assignment(&assignment),
        moved_here || moved_deep,
    )
}

/// Smart local moving from a singleton start: multilevel iterations
/// repeat until one makes no move anywhere (the partition is then
/// node-move-optimal on `net`) or `max_iterations` is reached. The loop
/// runs a fixed number of times off one seeded generator and the
/// highest-quality result is returned, so a fixed seed still gives a
/// fixed output.
pub fn slm_cluster(net: &Network, params: &QualityParams) -> Result<Partition, ClusterError> {
    if net.is_empty() {
        return Err(ClusterError::EmptyNetwork);
    }
    if !valid_gamma(params.gamma) {
        return Err(ClusterError::InvalidGamma);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut best: Option<(f64, Partition)> = None;
    for _ in 0..RANDOM_STARTS {
        let mut partition = Partition::singletons(net.n());
        for _ in 0..params.max_iterations.max(1) {
            let (next, moved) = slm_iteration(net, &partition, params, &mut rng);
            partition = next;
            if !moved {
                break;
            }
        }
        let q = quality(net, &partition, params.gamma)?;
        match &best {
            Some((best_q, _)) if q <= *best_q => {}
            _ => best = Some((q, partition)),
        }
    }
    Ok(best.expect("at least one start").1)
}

/// Scans every single-node reassignment (neighbor classes and a fresh
/// singleton); true when none gains more than `threshold`.
pub fn is_node_move_optimal(
    net: &Network,
    partition: &Partition,
    gamma: f64,
    threshold: f64,
) -> bool {
    let sizes = {
        let mut s = vec![0u64; partition.n_classes() as usize];
        for v in 0..net.n() as u32 {
            s[partition.class_of(v) as usize] += net.node_size(v);
        }
        s
    };
    let members = partition.class_sizes();
    let mut acc = vec![0.0f64; partition.n_classes() as usize];
    let mut touched: Vec<u32> = Vec::new();
    for v in 0..net.n() as u32 {
        let current = partition.class_of(v);
        for (u, w) in net.neighbors(v) {
            let c = partition.class_of(u);
            if acc[c as usize] == 0.0 {
                touched.push(c);
            }
            acc[c as usize] += w;
        }
        let size_v = net.node_size(v);
        let k_current = acc[current as usize];
        let size_rest = sizes[current as usize] - size_v;
        let mut improving = false;
        for &b in &touched {
            if b == current {
                continue;
            }
            let gain = move_gain(
                gamma,
                size_v,
                acc[b as usize],
                k_current,
                sizes[b as usize],
                size_rest,
            );
            if gain > threshold {
                improving = true;
            }
        }
        if members[current as usize] > 1 {
            let gain = move_gain(gamma, size_v, 0.0, k_current, 0, size_rest);
            if gain > threshold {
                improving = true;
            }
        }
        for &c in &touched {
            acc[c as usize] = 0.0;
        }
        touched.clear();
        if improving {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two unit-weight triangles {0,1,2} and {3,4,5} joined by one
    /// bridge edge (2,3).
    fn two_triangles() -> Network {
        Network::from_undirected_edges(
            6,
            &[
                (0, 1, 1.0),
                (0, 2, 1.0),
                (1, 2, 1.0),
                (3, 4, 1.0),
                (3, 5, 1.0),
                (4, 5, 1.0),
                (2, 3, 1.0),
            ],
        )
    }

    fn triangle_partition() -> Partition {
        Partition::from_assignment(&[0, 0, 0, 1, 1, 1])
    }

    #[test]
    fn quality_of_singletons_is_zero() {
        let net = two_triangles();
        let p = Partition::singletons(6);
        for gamma in [0.01, 0.5, 3.0] {
            assert_eq!(quality(&net, &p, gamma).unwrap(), 0.0);
        }
    }

    #[test]
    fn quality_hand_evaluated_cases() {
        let net = two_triangles();
        // two triangles at gamma 0.5: 2 * (3 - 0.5 * 3) = 3.0
        assert_eq!(quality(&net, &triangle_partition(), 0.5).unwrap(), 3.0);
        // everything in one class: 7 - 0.5 * 15 = -0.5
        let all = Partition::from_assignment(&[0; 6]);
        assert_eq!(quality(&net, &all, 0.5).unwrap(), -0.5);
    }

    #[test]
    fn quality_pairwise_and_per_class_forms_agree() {
        // oracle: direct sum over same-class pairs of (a_ij - gamma)
        fn pairwise_quality(net: &Network, p: &Partition, gamma: f64) -> f64 {
            let n = net.n() as u32;
            let mut q = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if p.class_of(i) == p.class_of(j) {
                        let a = net
                            .neighbors(i)
                            .find(|&(t, _)| t == j)
                            .map(|(_, w)| w)
                            .unwrap_or(0.0);
                        q += a - gamma;
                    }
                }
            }
            q
        }

        let mut state = 7u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state
        };
        for trial in 0..50 {
            let n = 3 + (next() % 6) as usize;
            let mut edges = Vec::new();
            for i in 0..n as u32 {
                for j in (i + 1)..n as u32 {
                    if next() % 100 < 55 {
                        let w = ((next() % 64) + 1) as f64 / 64.0;
                        edges.push((i, j, w));
                    }
                }
            }
            let net = Network::from_undirected_edges(n, &edges);
            let raw: Vec<u32> = (0..n).map(|_| (next() % 3) as u32).collect();
            let p = Partition::from_assignment(&raw);
            let gamma = ((next() % 64) + 1) as f64 / 64.0;
            let a = quality(&net, &p, gamma).unwrap();
            let b = pairwise_quality(&net, &p, gamma);
            assert!((a - b).abs() < 1e-12, "trial {trial}: {a} vs {b}");
        }
    }

    #[test]
    fn quality_rejects_mismatched_partition() {
        let net = two_triangles();
        let p = Partition::singletons(4);
        assert!(matches!(
            quality(&net, &p, 0.5),
            Err(ClusterError::NodeCountMismatch { .. })
        ));
    }

    #[test]
    fn local_moving_finds_triangles_from_singletons() {
        let net = two_triangles();
        let params = QualityParams::new(0.5, 11);
        let p = local_moving(&net, &Partition::singletons(6), &params).unwrap();
        assert_eq!(p.n_classes(), 2);
        assert_eq!(p.class_of(0), p.class_of(1));
        assert_eq!(p.class_of(0), p.class_of(2));
        assert_eq!(p.class_of(3), p.class_of(4));
        assert_eq!(p.class_of(3), p.class_of(5));
        assert_eq!(quality(&net, &p, 0.5).unwrap(), 3.0);
    }

    #[test]
    fn high_gamma_keeps_singletons_fixed() {
        let net = two_triangles();
        // gamma above every edge weight: no merge can gain
        let params = QualityParams::new(1.5, 3);
        let p = local_moving(&net, &Partition::singletons(6), &params).unwrap();
        assert_eq!(p.n_classes(), 6);
    }

    #[test]
    fn local_moving_deterministic_per_seed() {
        let net = two_triangles();
        let params = QualityParams::new(0.5, 99);
        let a = local_moving(&net, &Partition::singletons(6), &params).unwrap();
        let b = local_moving(&net, &Partition::singletons(6), &params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn slm_two_triangles_is_global_optimum() {
        let net = two_triangles();
        for seed in 0..20 {
            let p = slm_cluster(&net, &QualityParams::new(0.5, seed)).unwrap();
            assert_eq!(quality(&net, &p, 0.5).unwrap(), 3.0, "seed {seed}");
        }
    }

    #[test]
    fn slm_single_edge_merges_below_gamma() {
        let net = Network::from_undirected_edges(2, &[(0, 1, 0.4)]);
        let p = slm_cluster(&net, &QualityParams::new(0.3, 1)).unwrap();
        assert_eq!(p.n_classes(), 1);
        // and splits when gamma exceeds the weight
        let q = slm_cluster(&net, &QualityParams::new(0.5, 1)).unwrap();
        assert_eq!(q.n_classes(), 2);
    }

    #[test]
    fn slm_empty_edge_set_stays_singleton() {
        let net = Network::from_undirected_edges(5, &[]);
        let p = slm_cluster(&net, &QualityParams::new(0.2, 8)).unwrap();
        assert_eq!(p.n_classes(), 5);
    }

    #[test]
    fn slm_recovers_planted_cliques() {
        // 8 cliques of 6 nodes, unit intra weights, weak inter edges
        let k = 8usize;
        let size = 6usize;
        let n = k * size;
        let mut edges = Vec::new();
        for c in 0..k {
            let base = (c * size) as u32;
            for a in 0..size as u32 {
                for b in (a + 1)..size as u32 {
                    edges.push((base + a, base + b, 1.0));
                }
            }
        }
        // one weak edge between consecutive cliques
        for c in 0..k - 1 {
            edges.push(((c * size) as u32, ((c + 1) * size) as u32, 0.05));
        }
        let net = Network::from_undirected_edges(n, &edges);
        let p = slm_cluster(&net, &QualityParams::new(0.3, 5)).unwrap();
        assert_eq!(p.n_classes(), k as u32);
        for c in 0..k {
            let base = (c * size) as u32;
            for off in 1..size as u32 {
                assert_eq!(p.class_of(base), p.class_of(base + off));
            }
        }
        // planted beats merged neighbours and singletons
        let planted = quality(&net, &p, 0.3).unwrap();
        let merged_raw: Vec<u32> = (0..n).map(|v| (v / size / 2) as u32).collect();
        let merged = Partition::from_assignment(&merged_raw);
        assert!(planted > quality(&net, &merged, 0.3).unwrap());
        assert!(planted > 0.0);
    }

    #[test]
    fn slm_output_is_node_move_optimal() {
        let net = two_triangles();
        for seed in 0..10 {
            let params = QualityParams::new(0.5, seed);
            let p = slm_cluster(&net, &params).unwrap();
            assert!(is_node_move_optimal(&net, &p, 0.5, params.min_improvement));
        }
    }

    #[test]
    fn aggregation_preserves_quality() {
        let net = two_triangles();
        let p = triangle_partition();
        let gamma = 0.37;
        let q_before = quality(&net, &p, gamma).unwrap();
        let agg = aggregate(&net, &p);
        // inherited assignment on the aggregate: each class one node
        let inherited = Partition::singletons(agg.n());
        let q_after = quality(&agg, &inherited, gamma).unwrap();
        assert!((q_before - q_after).abs() < 1e-12);

        // and again after merging the two aggregate nodes
        let all = Partition::from_assignment(&[0, 0]);
        let q_all_agg = quality(&agg, &all, gamma).unwrap();
        let q_all = quality(&net, &Partition::from_assignment(&[0; 6]), gamma).unwrap();
        assert!((q_all_agg - q_all).abs() < 1e-12);
    }

    #[test]
    fn quality_never_below_initial_or_singletons() {
        let net = two_triangles();
        for seed in 0..10 {
            let params = QualityParams::new(0.4, seed);
            let p = slm_cluster(&net, &params).unwrap();
            let q = quality(&net, &p, 0.4).unwrap();
            assert!(q >= 0.0);
        }
    }
}

//! Resolution sweep: cluster at successive gamma values, score each
//! partition against the baseline and pick the granularity with the
//! highest agreement.
//!
//! The controller only drives the grid, the stopping rule and the
//! selection; the scoring work (cluster, restrict, ARI) is an injected
//! function, so the control logic is testable against a known score
//! sequence without running the optimizer.

use alloc::vec::Vec;
use core::fmt;

use crate::analytics::WeightedSizeStats;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepParams {
    /// Resolution of the first run.
    pub gamma0: f64,
    /// Constant increment between runs.
    pub step: f64,
    /// Stop after this many consecutive runs scoring below the running
    /// maximum.
    pub stop_after_decreases: u32,
    pub max_runs: u32,
    pub seed: u64,
    /// Classes with at least this many members are counted separately
    /// in each record.
    pub report_min_size: u64,
}

impl SweepParams {
    pub fn new(seed: u64) -> SweepParams {
        SweepParams {
            gamma0: 0.00005,
            step: 0.00005,
            stop_after_decreases: 3,
            max_runs: 20,
            seed,
            report_min_size: 50,
        }
    }
}

/// What one clustering run looks like to the controller.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRun {
    /// 1-based run number.
    pub index: u32,
    pub gamma: f64,
    /// Seed derived for this run from the master seed.
    pub seed: u64,
}

/// Scorer output for one run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepObservation {
    /// Agreement of the baseline-restricted partition with the
    /// baseline classification.
    pub ari: f64,
    pub n_classes: u64,
    pub n_classes_ge_min: u64,
    pub stats: WeightedSizeStats,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub index: u32,
    pub gamma: f64,
    pub ari: f64,
    pub n_classes: u64,
    pub n_classes_ge_min: u64,
    pub stats: WeightedSizeStats,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub records: Vec<SweepRecord>,
    /// 1-based index of the selected record.
    pub selected_index: u32,
    pub selected_gamma: f64,
}

#[derive(Debug, PartialEq)]
pub enum SweepError<E> {
    InvalidParams(&'static str),
    Scorer(E),
}

impl<E: fmt::Display> fmt::Display for SweepError<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepError::InvalidParams(what) => write!(f, "invalid sweep parameters: {what}"),
            SweepError::Scorer(e) => write!(f, "sweep run failed: {e}"),
        }
    }
}

fn positive_finite(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

/// Per-run seed derived from the master seed, splitmix64-style, so runs
/// are independent yet reproducible.
pub fn derive_run_seed(master: u64, run_index: u32) -> u64 {
    let mut z = master.wrapping_add((run_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Index of the record with the highest score; ties go to the smaller
/// gamma (the earlier record). Returns a 0-based position.
pub fn select_best(records: &[SweepRecord]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, rec) in records.iter().enumerate() {
        match best {
            None => best = Some(i),
            Some(b) if rec.ari > records[b].ari => best = Some(i),
            _ => {}
        }
    }
    best
}

/// Runs the sweep: gamma grid `gamma0, gamma0 + step, ...`, scoring
/// each run with `scorer`, stopping once `stop_after_decreases`
/// consecutive runs score below the running maximum (a run matching the
/// maximum resets the count) or `max_runs` is reached.
pub fn run_sweep<E, F>(params: &SweepParams, mut scorer: F) -> Result<SweepResult, SweepError<E>>
where
    F: FnMut(&SweepRun) -> Result<SweepObservation, E>,
{
    if !positive_finite(params.gamma0) {
        return Err(SweepError::InvalidParams("gamma0 must be positive"));
    }
    if !positive_finite(params.step) {
        return Err(SweepError::InvalidParams("step must be positive"));
    }
    if params.max_runs == 0 {
        return Err(SweepError::InvalidParams("max_runs must be at least 1"));
    }

    let mut records: Vec<SweepRecord> = Vec::new();
    let mut best_ari = f64::NEG_INFINITY;
    let mut below_best = 0u32;

    for k in 0..params.max_runs {
        let index = k + 1;
        let run = SweepRun {
            index,
            gamma: params.gamma0 + k as f64 * params.step,
            seed: derive_run_seed(params.seed, index),
        };
        let obs = scorer(&run).map_err(SweepError::Scorer)?;
        records.push(SweepRecord {
            index,
            gamma: run.gamma,
            ari: obs.ari,
            n_classes: obs.n_classes,
            n_classes_ge_min: obs.n_classes_ge_min,
            stats: obs.stats,
        });
        if obs.ari < best_ari {
            below_best += 1;
            if below_best >= params.stop_after_decreases && params.stop_after_decreases > 0 {
                break;
            }
        } else {
            if obs.ari > best_ari {
                best_ari = obs.ari;
            }
            below_best = 0;
        }
    }

    let best = select_best(&records).expect("at least one run");
    Ok(SweepResult {
        selected_index: records[best].index,
        selected_gamma: records[best].gamma,
        records,
    })
}

//! TOML configuration shared by the subcommands. Every field is
//! optional in the file; command-line flags override file values and
//! built-in defaults fill the rest. Seeds have no default: every
//! randomized step requires one explicitly, from the flag or the file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use topicgran_core::baseline::BaselineParams;
use topicgran_core::calibrate::SweepParams;
use topicgran_core::cluster::{DEFAULT_MAX_ITERATIONS, DEFAULT_MIN_IMPROVEMENT};

use crate::corpus::CorpusConfig;
use crate::error::Error;
use crate::synthgen::PlantedCorpusSpec;
use crate::Result;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub corpus: CorpusSection,
    #[serde(default)]
    pub baseline: BaselineSection,
    #[serde(default)]
    pub quality: QualitySection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub analytics: AnalyticsSection,
    #[serde(default)]
    pub synthgen: SynthgenSection,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSection {
    pub publications: Option<PathBuf>,
    pub citations: Option<PathBuf>,
    pub strict: Option<bool>,
    pub year_min: Option<i32>,
    pub year_max: Option<i32>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselineSection {
    pub baseline_year: Option<i32>,
    pub min_refs: Option<u32>,
    pub min_active_ratio: Option<f64>,
    pub overlap_threshold: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QualitySection {
    pub gamma: Option<f64>,
    pub max_iterations: Option<u32>,
    pub min_improvement: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub gamma0: Option<f64>,
    pub step: Option<f64>,
    pub stop_after_decreases: Option<u32>,
    pub max_runs: Option<u32>,
    pub report_min_size: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyticsSection {
    pub bin_width: Option<u64>,
    pub top_k: Option<usize>,
    pub min_class_size: Option<u64>,
    pub top_n: Option<usize>,
    pub report_min_size: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthgenSection {
    pub n_topics: Option<u32>,
    pub pubs_per_topic: Option<u32>,
    pub size_skew: Option<f64>,
    pub p_intra: Option<f64>,
    pub p_inter: Option<f64>,
    pub n_synthesis_per_topic: Option<u32>,
    pub refs_per_synthesis: Option<u32>,
    pub keyword_vocab_per_topic: Option<u32>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn load_optional(path: Option<&Path>) -> Result<FileConfig> {
        match path {
            Some(p) => FileConfig::load(p),
            None => Ok(FileConfig::default()),
        }
    }
}

fn need<T>(flag: Option<T>, file: Option<T>, what: &str) -> Result<T> {
    flag.or(file)
        .ok_or_else(|| Error::Config(format!("{what} is required (flag or config file)")))
}

pub fn resolve_corpus_config(
    config: &FileConfig,
    strict_flag: Option<bool>,
    year_min: Option<i32>,
    year_max: Option<i32>,
) -> CorpusConfig {
    let defaults = CorpusConfig::default();
    CorpusConfig {
        strict: strict_flag
            .or(config.corpus.strict)
            .unwrap_or(defaults.strict),
        year_min: year_min
            .or(config.corpus.year_min)
            .unwrap_or(defaults.year_min),
        year_max: year_max
            .or(config.corpus.year_max)
            .unwrap_or(defaults.year_max),
    }
}

pub fn resolve_corpus_paths(
    config: &FileConfig,
    publications: Option<PathBuf>,
    citations: Option<PathBuf>,
) -> Result<(PathBuf, PathBuf)> {
    Ok((
        need(
            publications,
            config.corpus.publications.clone(),
            "corpus.publications",
        )?,
        need(
            citations,
            config.corpus.citations.clone(),
            "corpus.citations",
        )?,
    ))
}

#[allow(clippy::too_many_arguments)]
pub fn resolve_baseline_params(
    config: &FileConfig,
    baseline_year: Option<i32>,
    min_refs: Option<u32>,
    min_active_ratio: Option<f64>,
    overlap_threshold: Option<f64>,
    seed: Option<u64>,
) -> Result<BaselineParams> {
    let seed = need(seed, config.baseline.seed, "baseline.seed")?;
    let baseline_year = need(
        baseline_year,
        config.baseline.baseline_year,
        "baseline.baseline_year",
    )?;
    let mut params = BaselineParams::new(baseline_year, seed);
    if let Some(v) = min_refs.or(config.baseline.min_refs) {
        params.min_refs = v;
    }
    if let Some(v) = min_active_ratio.or(config.baseline.min_active_ratio) {
        params.min_active_ratio = v;
    }
    if let Some(v) = overlap_threshold.or(config.baseline.overlap_threshold) {
        params.overlap_threshold = v;
    }
    Ok(params)
}

/// Optimizer settings without gamma/seed (those vary per call site).
#[derive(Clone, Copy, Debug)]
pub struct QualityDefaults {
    pub max_iterations: u32,
    pub min_improvement: f64,
}

pub fn resolve_quality_defaults(
    config: &FileConfig,
    max_iterations: Option<u32>,
    min_improvement: Option<f64>,
) -> QualityDefaults {
    QualityDefaults {
        max_iterations: max_iterations
            .or(config.quality.max_iterations)
            .unwrap_or(DEFAULT_MAX_ITERATIONS),
        min_improvement: min_improvement
            .or(config.quality.min_improvement)
            .unwrap_or(DEFAULT_MIN_IMPROVEMENT),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn resolve_sweep_params(
    config: &FileConfig,
    gamma0: Option<f64>,
    step: Option<f64>,
    stop_after_decreases: Option<u32>,
    max_runs: Option<u32>,
    report_min_size: Option<u64>,
    seed: Option<u64>,
) -> Result<SweepParams> {
    let seed = need(seed, config.sweep.seed, "sweep.seed")?;
    let mut params = SweepParams::new(seed);
    if let Some(v) = gamma0.or(config.sweep.gamma0) {
        params.gamma0 = v;
    }
    if let Some(v) = step.or(config.sweep.step) {
        params.step = v;
    }
    if let Some(v) = stop_after_decreases.or(config.sweep.stop_after_decreases) {
        params.stop_after_decreases = v;
    }
    if let Some(v) = max_runs.or(config.sweep.max_runs) {
        params.max_runs = v;
    }
    if let Some(v) = report_min_size.or(config.sweep.report_min_size) {
        params.report_min_size = v;
    }
    Ok(params)
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyticsOptions {
    pub bin_width: u64,
    pub top_k: usize,
    pub min_class_size: u64,
    pub top_n: usize,
    pub report_min_size: u64,
}

pub fn resolve_analytics(
    config: &FileConfig,
    bin_width: Option<u64>,
    top_k: Option<usize>,
    min_class_size: Option<u64>,
    top_n: Option<usize>,
    report_min_size: Option<u64>,
) -> AnalyticsOptions {
    AnalyticsOptions {
        bin_width: bin_width.or(config.analytics.bin_width).unwrap_or(1),
        top_k: top_k.or(config.analytics.top_k).unwrap_or(3),
        min_class_size: min_class_size
            .or(config.analytics.min_class_size)
            .unwrap_or(1),
        top_n: top_n.or(config.analytics.top_n).unwrap_or(10),
        report_min_size: report_min_size
            .or(config.analytics.report_min_size)
            .unwrap_or(50),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn resolve_synthgen_spec(
    config: &FileConfig,
    n_topics: Option<u32>,
    pubs_per_topic: Option<u32>,
    size_skew: Option<f64>,
    p_intra: Option<f64>,
    p_inter: Option<f64>,
    n_synthesis_per_topic: Option<u32>,
    refs_per_synthesis: Option<u32>,
    keyword_vocab_per_topic: Option<u32>,
    seed: Option<u64>,
) -> Result<PlantedCorpusSpec> {
    let defaults = PlantedCorpusSpec::default();
    Ok(PlantedCorpusSpec {
        n_topics: n_topics
            .or(config.synthgen.n_topics)
            .unwrap_or(defaults.n_topics),
        pubs_per_topic: pubs_per_topic
            .or(config.synthgen.pubs_per_topic)
            .unwrap_or(defaults.pubs_per_topic),
        size_skew: size_skew
            .or(config.synthgen.size_skew)
            .unwrap_or(defaults.size_skew),
        p_intra: p_intra
            .or(config.synthgen.p_intra)
            .unwrap_or(defaults.p_intra),
        p_inter: p_inter
            .or(config.synthgen.p_inter)
            .unwrap_or(defaults.p_inter),
        n_synthesis_per_topic: n_synthesis_per_topic
            .or(config.synthgen.n_synthesis_per_topic)
            .unwrap_or(defaults.n_synthesis_per_topic),
        refs_per_synthesis: refs_per_synthesis
            .or(config.synthgen.refs_per_synthesis)
            .unwrap_or(defaults.refs_per_synthesis),
        keyword_vocab_per_topic: keyword_vocab_per_topic
            .or(config.synthgen.keyword_vocab_per_topic)
            .unwrap_or(defaults.keyword_vocab_per_topic),
        seed: need(seed, config.synthgen.seed, "synthgen.seed")?,
    })
}

pub fn resolve_cluster_seed(config: &FileConfig, seed: Option<u64>) -> Result<u64> {
    need(seed, config.quality.seed, "quality.seed")
}

pub fn resolve_cluster_gamma(config: &FileConfig, gamma: Option<f64>) -> Result<f64> {
    need(gamma, config.quality.gamma, "quality.gamma")
}

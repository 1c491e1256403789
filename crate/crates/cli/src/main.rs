use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use topicgran::config::{
    resolve_analytics, resolve_baseline_params, resolve_cluster_gamma, resolve_cluster_seed,
    resolve_corpus_config, resolve_corpus_paths, resolve_quality_defaults, resolve_sweep_params,
    resolve_synthgen_spec, FileConfig,
};
use topicgran::pipeline::{
    cmd_ari, cmd_baseline, cmd_cluster, cmd_derive, cmd_distribute, cmd_ingest, cmd_label,
    cmd_pipeline, cmd_stats, cmd_sweep, cmd_synthgen, PipelineParams, PubSetSelector,
};

/// Citation-network topic classification toolkit: build a synthesis-paper
/// baseline, cluster the direct-citation network at several resolutions,
/// and pick the granularity that best matches the baseline.
#[derive(Parser)]
#[command(name = "topicgran", version, about)]
struct Cli {
    /// TOML config file supplying defaults for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads (TOPICGRAN_THREADS overrides; default 1)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CorpusArgs {
    /// publications.tsv path
    #[arg(long)]
    publications: Option<PathBuf>,
    /// citations.tsv path
    #[arg(long)]
    citations: Option<PathBuf>,
    /// Abort on malformed rows instead of skipping them
    #[arg(long, overrides_with = "lenient")]
    strict: bool,
    /// Skip malformed rows and count them
    #[arg(long, overrides_with = "strict")]
    lenient: bool,
    #[arg(long)]
    year_min: Option<i32>,
    #[arg(long)]
    year_max: Option<i32>,
}

impl CorpusArgs {
    fn strict_flag(&self) -> Option<bool> {
        if self.strict {
            Some(true)
        } else if self.lenient {
            Some(false)
        } else {
            None
        }
    }
}

#[derive(Args, Clone)]
struct OutArgs {
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Load, validate and prune a corpus; write the cleaned files
    Ingest {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build the synthesis-article baseline classification
    Baseline {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        baseline_year: Option<i32>,
        #[arg(long)]
        min_refs: Option<u32>,
        #[arg(long)]
        min_active_ratio: Option<f64>,
        #[arg(long)]
        overlap_threshold: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cluster the relatedness network at one resolution
    Cluster {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_iterations: Option<u32>,
        #[arg(long)]
        min_improvement: Option<f64>,
        /// Also write relatedness.tsv
        #[arg(long)]
        export_relatedness: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Restrict a partition to the baseline's reference articles
    Derive {
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        baseline: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Adjusted Rand Index of two partition files
    Ari {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Resolution sweep: cluster on a gamma grid and select by ARI
    Sweep {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        baseline: PathBuf,
        #[arg(long)]
        gamma0: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        stop_after_decreases: Option<u32>,
        #[arg(long)]
        max_runs: Option<u32>,
        #[arg(long)]
        report_min_size: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_iterations: Option<u32>,
        #[arg(long)]
        min_improvement: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Class-size statistics, histogram, rank-size and alluvial data
    Stats {
        /// Partition file(s); statistics cover each
        #[arg(long, required = true, num_args = 1..)]
        partition: Vec<PathBuf>,
        /// Index of the partition the histogram/alluvial data describe
        #[arg(long, default_value_t = 0)]
        primary: usize,
        /// baseline.tsv for the average-class alluvial table
        #[arg(long)]
        baseline: Option<PathBuf>,
        #[arg(long)]
        bin_width: Option<u64>,
        #[arg(long)]
        report_min_size: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Chi-square author-keyword labels per class
    Label {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        top_k: Option<usize>,
        #[arg(long)]
        min_class_size: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Distribution of a publication set over partition classes
    Distribute {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        partition: PathBuf,
        /// Select publications by journal id
        #[arg(long, conflicts_with = "pub_list")]
        journal: Option<String>,
        /// Select publications listed in a file (one id per line)
        #[arg(long)]
        pub_list: Option<PathBuf>,
        #[arg(long)]
        top_n: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Generate a synthetic corpus with planted topics
    Synthgen {
        #[arg(long)]
        n_topics: Option<u32>,
        #[arg(long)]
        pubs_per_topic: Option<u32>,
        #[arg(long)]
        size_skew: Option<f64>,
        #[arg(long)]
        p_intra: Option<f64>,
        #[arg(long)]
        p_inter: Option<f64>,
        #[arg(long)]
        n_synthesis_per_topic: Option<u32>,
        #[arg(long)]
        refs_per_synthesis: Option<u32>,
        #[arg(long)]
        keyword_vocab_per_topic: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Full run: ingest, baseline, sweep, stats, labels
    Pipeline {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        baseline_year: Option<i32>,
        #[arg(long)]
        baseline_seed: Option<u64>,
        #[arg(long)]
        sweep_seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn configure_threads(flag: Option<usize>) -> anyhow::Result<()> {
    let threads = match std::env::var("TOPICGRAN_THREADS") {
        Ok(v) => v
            .parse::<usize>()
            .with_context(|| format!("TOPICGRAN_THREADS=`{v}` is not a thread count"))?,
        Err(_) => flag.unwrap_or(1),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build_global()
        .context("thread pool already configured")?;
    Ok(())
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    configure_threads(cli.threads)?;
    let config = FileConfig::load_optional(cli.config.as_deref())?;

    match cli.command {
        Command::Ingest { corpus, out } => {
            let (pubs, cites) = resolve_corpus_paths(
                &config,
                corpus.publications.clone(),
                corpus.citations.clone(),
            )?;
            let cfg = resolve_corpus_config(
                &config,
                corpus.strict_flag(),
                corpus.year_min,
                corpus.year_max,
            );
            let report = cmd_ingest(&pubs, &cites, &cfg, &out.out)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Baseline {
            corpus,
            baseline_year,
            min_refs,
            min_active_ratio,
            overlap_threshold,
            seed,
            out,
        } => {
            let (pubs, cites) = resolve_corpus_paths(
                &config,
                corpus.publications.clone(),
                corpus.citations.clone(),
            )?;
            let cfg = resolve_corpus_config(
                &config,
                corpus.strict_flag(),
                corpus.year_min,
                corpus.year_max,
            );
            let params = resolve_baseline_params(
                &config,
                baseline_year,
                min_refs,
                min_active_ratio,
                overlap_threshold,
                seed,
            )?;
            cmd_baseline(&pubs, &cites, &cfg, &params, &out.out)?;
        }
        Command::Cluster {
            corpus,
            gamma,
            seed,
            max_iterations,
            min_improvement,
            export_relatedness,
            out,
        } => {
            let (pubs, cites) = resolve_corpus_paths(
                &config,
                corpus.publications.clone(),
                corpus.citations.clone(),
            )?;
            let cfg = resolve_corpus_config(
                &config,
                corpus.strict_flag(),
                corpus.year_min,
                corpus.year_max,
            );
            let gamma = resolve_cluster_gamma(&config, gamma)?;
            let seed = resolve_cluster_seed(&config, seed)?;
            let quality = resolve_quality_defaults(&config, max_iterations, min_improvement);
            cmd_cluster(
                &pubs,
                &cites,
                &cfg,
                gamma,
                seed,
                quality,
                export_relatedness,
                &out.out,
            )?;
        }
        Command::Derive {
            partition,
            baseline,
            out,
        } => {
            cmd_derive(&partition, &baseline, &out.out)?;
        }
        Command::Ari { x, y, out } => {
            let report = cmd_ari(&x, &y, &out.out)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Sweep {
            corpus,
            baseline,
            gamma0,
            step,
            stop_after_decreases,
            max_runs,
            report_min_size,
            seed,
            max_iterations,
            min_improvement,
            out,
        } => {
            let (pubs, cites) = resolve_corpus_paths(
                &config,
                corpus.publications.clone(),
                corpus.citations.clone(),
            )?;
            let cfg = resolve_corpus_config(
                &config,
                corpus.strict_flag(),
                corpus.year_min,
                corpus.year_max,
            );
            let params = resolve_sweep_params(
                &config,
                gamma0,
                step,
                stop_after_decreases,
                max_runs,
                report_min_size,
                seed,
            )?;
            let quality = resolve_quality_defaults(&config, max_iterations, min_improvement);
            let sweep = cmd_sweep(&pubs, &cites, &cfg, &baseline, &params, quality, &out.out)?;
            println!(
                "selected run {} at gamma {}",
                sweep.selected_index,
                topicgran::formats::fmt_gamma(sweep.selected_gamma)
            );
        }
        Command::Stats {
            partition,
            primary,
            baseline,
            bin_width,
            report_min_size,
            out,
        } => {
            let options = resolve_analytics(&config, bin_width, None, None, None, report_min_size);
            cmd_stats(&partition, primary, baseline.as_deref(), &options, &out.out)?;
        }
        Command::Label {
            corpus,
            partition,
            top_k,
            min_class_size,
            out,
        } => {
            let (pubs, cites) = resolve_corpus_paths(
                &config,
                corpus.publications.clone(),
                corpus.citations.clone(),
            )?;
            let cfg = resolve_corpus_config(
                &config,
                corpus.strict_flag(),
                corpus.year_min,
                corpus.year_max,
            );
            let options = resolve_analytics(&config, None, top_k, min_class_size, None, None);
            cmd_label(&pubs, &cites, &cfg, &partition, &options, &out.out)?;
        }
        Command::Distribute {
            corpus,
            partition,
            journal,
            pub_list,
            top_n,
            out,
        } => {
            let (pubs, cites) = resolve_corpus_paths(
                &config,
                corpus.publications.clone(),
                corpus.citations.clone(),
            )?;
            let cfg = resolve_corpus_config(
                &config,
                corpus.strict_flag(),
                corpus.year_min,
                corpus.year_max,
            );
            let options = resolve_analytics(&config, None, None, None, top_n, None);
            let selector = match (journal, pub_list) {
                (Some(j), None) => PubSetSelector::Journal(j),
                (None, Some(p)) => PubSetSelector::ListFile(p),
                _ => anyhow::bail!("exactly one of --journal or --pub-list is required"),
            };
            cmd_distribute(
                &pubs, &cites, &cfg, &partition, &selector, &options, &out.out,
            )?;
        }
        Command::Synthgen {
            n_topics,
            pubs_per_topic,
            size_skew,
            p_intra,
            p_inter,
            n_synthesis_per_topic,
            refs_per_synthesis,
            keyword_vocab_per_topic,
            seed,
            out,
        } => {
            let spec = resolve_synthgen_spec(
                &config,
                n_topics,
                pubs_per_topic,
                size_skew,
                p_intra,
                p_inter,
                n_synthesis_per_topic,
                refs_per_synthesis,
                keyword_vocab_per_topic,
                seed,
            )?;
            cmd_synthgen(&spec, &out.out)?;
        }
        Command::Pipeline {
            corpus,
            baseline_year,
            baseline_seed,
            sweep_seed,
            out,
        } => {
            let (pubs, cites) = resolve_corpus_paths(
                &config,
                corpus.publications.clone(),
                corpus.citations.clone(),
            )?;
            let params = PipelineParams {
                corpus_config: resolve_corpus_config(
                    &config,
                    corpus.strict_flag(),
                    corpus.year_min,
                    corpus.year_max,
                ),
                baseline: resolve_baseline_params(
                    &config,
                    baseline_year,
                    None,
                    None,
                    None,
                    baseline_seed,
                )?,
                sweep: resolve_sweep_params(&config, None, None, None, None, None, sweep_seed)?,
                quality: resolve_quality_defaults(&config, None, None),
                analytics: resolve_analytics(&config, None, None, None, None, None),
            };
            let summary = cmd_pipeline(&pubs, &cites, &params, &out.out)?;
            println!(
                "pipeline done: {} classes selected at gamma {} (run {})",
                summary
                    .sweep
                    .records
                    .iter()
                    .find(|r| r.index == summary.sweep.selected_index)
                    .map(|r| r.n_classes)
                    .unwrap_or(0),
                topicgran::formats::fmt_gamma(summary.sweep.selected_gamma),
                summary.sweep.selected_index,
            );
        }
    }
    Ok(())
}

//! Subcommand implementations. Each command loads what it needs,
//! computes through `topicgran-core` and writes its declared outputs
//! plus a run manifest; the full pipeline chains them over one shared
//! corpus load and produces the same files as running the steps
//! individually.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use topicgran_core::analytics::{
    average_class_distribution, chi_square_labels, class_size_histogram, distribution_into_classes,
    label_for_class, rank_size_table, weighted_size_stats, ClassLabel,
};
use topicgran_core::baseline::{build_baseline, BaselineClassification, BaselineParams};
use topicgran_core::calibrate::{run_sweep, SweepError, SweepObservation, SweepParams};
use topicgran_core::cluster::{slm_cluster, QualityParams};
use topicgran_core::compare::{ari, derive_restricted};
use topicgran_core::partition::Partition;
use topicgran_core::relatedness::build_relatedness;

use crate::config::{AnalyticsOptions, QualityDefaults};
use crate::corpus::{load_corpus, Corpus, CorpusConfig, LoadReport};
use crate::error::Error;
use crate::formats::{
    fmt_gamma, read_baseline, read_baseline_raw, read_partition, sweep_to_json, write_alluvial,
    write_baseline, write_baseline_report, write_distribution, write_histogram, write_json,
    write_labels, write_partition, write_rank_size, write_relatedness, AriJson, PartitionFile,
    StatsJson, SweepJson,
};
use crate::manifest::{run_command, OutputTracker};
use crate::synthgen::{generate, PlantedCorpusSpec};
use crate::Result;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IngestReport {
    #[serde(flatten)]
    pub load: LoadReport,
    pub isolated_removed: u64,
    pub publications_after_prune: u64,
    pub edges_after_prune: u64,
}

/// Loads, validates and prunes the corpus in one step; every command
/// that consumes corpus files goes through here.
pub fn load_pruned(
    publications: &Path,
    citations: &Path,
    config: &CorpusConfig,
) -> Result<(Corpus, IngestReport)> {
    let (corpus, load) = load_corpus(publications, citations, config)?;
    let (pruned, removed) = corpus.prune_isolated();
    let report = IngestReport {
        load,
        isolated_removed: removed as u64,
        publications_after_prune: pruned.len() as u64,
        edges_after_prune: pruned.graph.edge_count() as u64,
    };
    Ok((pruned, report))
}

pub fn cmd_synthgen(spec: &PlantedCorpusSpec, out_dir: &Path) -> Result<()> {
    run_command(
        "synthgen",
        serde_json::to_value(spec)?,
        &[],
        out_dir,
        |tracker| {
            let corpus = generate(spec)?;
            corpus.write_files(
                &tracker.file("publications.tsv"),
                &tracker.file("citations.tsv"),
                &tracker.file("ground_truth.tsv"),
            )
        },
    )
}

pub fn cmd_ingest(
    publications: &Path,
    citations: &Path,
    config: &CorpusConfig,
    out_dir: &Path,
) -> Result<IngestReport> {
    run_command(
        "ingest",
        json!({
            "publications": publications.display().to_string(),
            "citations": citations.display().to_string(),
            "strict": config.strict,
            "year_min": config.year_min,
            "year_max": config.year_max,
        }),
        &[publications.to_path_buf(), citations.to_path_buf()],
        out_dir,
        |tracker| ingest_body(publications, citations, config, tracker).map(|(_, report)| report),
    )
}

fn ingest_body(
    publications: &Path,
    citations: &Path,
    config: &CorpusConfig,
    tracker: &mut OutputTracker,
) -> Result<(Corpus, IngestReport)> {
    let (corpus, report) = load_pruned(publications, citations, config)?;
    corpus.export(
        &tracker.file("publications.tsv"),
        &tracker.file("citations.tsv"),
    )?;
    write_json(&tracker.file("ingest_report.json"), &report)?;
    Ok((corpus, report))
}

pub fn cmd_baseline(
    publications: &Path,
    citations: &Path,
    config: &CorpusConfig,
    params: &BaselineParams,
    out_dir: &Path,
) -> Result<()> {
    run_command(
        "baseline",
        json!({
            "baseline_year": params.baseline_year,
            "min_refs": params.min_refs,
            "min_active_ratio": params.min_active_ratio,
            "overlap_threshold": params.overlap_threshold,
            "seed": params.seed,
        }),
        &[publications.to_path_buf(), citations.to_path_buf()],
        out_dir,
        |tracker| {
            let (corpus, _) = load_pruned(publications, citations, config)?;
            baseline_body(&corpus, params, tracker).map(|_| ())
        },
    )
}

fn baseline_body(
    corpus: &Corpus,
    params: &BaselineParams,
    tracker: &mut OutputTracker,
) -> Result<BaselineClassification> {
    let (classification, report) = build_baseline(&corpus.graph, params)?;
    write_baseline(&tracker.file("baseline.tsv"), corpus, &classification)?;
    write_baseline_report(&tracker.file("baseline_report.json"), &report)?;
    Ok(classification)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_cluster(
    publications: &Path,
    citations: &Path,
    config: &CorpusConfig,
    gamma: f64,
    seed: u64,
    quality: QualityDefaults,
    export_relatedness: bool,
    out_dir: &Path,
) -> Result<()> {
    run_command(
        "cluster",
        json!({
            "gamma": gamma,
            "seed": seed,
            "max_iterations": quality.max_iterations,
            "min_improvement": quality.min_improvement,
        }),
        &[publications.to_path_buf(), citations.to_path_buf()],
        out_dir,
        |tracker| {
            let (corpus, _) = load_pruned(publications, citations, config)?;
            let network = build_relatedness(&corpus.graph);
            if export_relatedness {
                write_relatedness(&tracker.file("relatedness.tsv"), &corpus, &network)?;
            }
            let params = QualityParams {
                gamma,
                seed,
                max_iterations: quality.max_iterations,
                min_improvement: quality.min_improvement,
            };
            let partition = slm_cluster(&network, &params)?.canonicalize();
            write_partition(&tracker.file("partition.tsv"), &corpus.pub_ids, &partition)
        },
    )
}

pub fn cmd_derive(partition: &Path, baseline: &Path, out_dir: &Path) -> Result<()> {
    run_command(
        "derive",
        json!({
            "partition": partition.display().to_string(),
            "baseline": baseline.display().to_string(),
        }),
        &[partition.to_path_buf(), baseline.to_path_buf()],
        out_dir,
        |tracker| {
            let file = read_partition(partition)?;
            let classes = read_baseline_raw(baseline)?;
            let mut member_ids: Vec<String> = classes
                .iter()
                .flat_map(|(_, members)| members.iter().cloned())
                .collect();
            member_ids.sort_unstable();
            for pair in member_ids.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::Corpus(format!(
                        "baseline classes overlap on `{}`",
                        pair[0]
                    )));
                }
            }
            let keep = positions_of(&member_ids, &file, baseline)?;
            let restricted = derive_restricted(&file.partition, &keep)?.canonicalize();
            write_partition(
                &tracker.file("derived_partition.tsv"),
                &member_ids,
                &restricted,
            )
        },
    )
}

/// Positions of `ids` (ascending, distinct) inside a partition file's
/// object list.
fn positions_of(ids: &[String], file: &PartitionFile, origin: &Path) -> Result<Vec<u32>> {
    ids.iter()
        .map(|id| {
            file.ids.binary_search(id).map(|i| i as u32).map_err(|_| {
                Error::Corpus(format!(
                    "id `{id}` from {} is not covered by the partition",
                    origin.display()
                ))
            })
        })
        .collect()
}

pub fn cmd_ari(x_path: &Path, y_path: &Path, out_dir: &Path) -> Result<AriJson> {
    run_command(
        "ari",
        json!({
            "x": x_path.display().to_string(),
            "y": y_path.display().to_string(),
        }),
        &[x_path.to_path_buf(), y_path.to_path_buf()],
        out_dir,
        |tracker| {
            let x = read_partition(x_path)?;
            let y = read_partition(y_path)?;
            if x.ids != y.ids {
                return Err(Error::Compare(
                    topicgran_core::compare::CompareError::ObjectSetMismatch {
                        x: x.ids.len(),
                        y: y.ids.len(),
                    },
                ));
            }
            let value = ari(&x.partition, &y.partition)?;
            let report = AriJson {
                n: x.ids.len() as u64,
                classes_x: x.partition.n_classes(),
                classes_y: y.partition.n_classes(),
                ari: value,
            };
            write_json(&tracker.file("ari.json"), &report)?;
            Ok(report)
        },
    )
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    publications: &Path,
    citations: &Path,
    config: &CorpusConfig,
    baseline_path: &Path,
    params: &SweepParams,
    quality: QualityDefaults,
    out_dir: &Path,
) -> Result<SweepJson> {
    run_command(
        "sweep",
        sweep_params_json(params, quality),
        &[
            publications.to_path_buf(),
            citations.to_path_buf(),
            baseline_path.to_path_buf(),
        ],
        out_dir,
        |tracker| {
            let (corpus, _) = load_pruned(publications, citations, config)?;
            let baseline = read_baseline(baseline_path, &corpus)?;
            sweep_body(&corpus, &baseline, params, quality, tracker)
        },
    )
}

fn sweep_params_json(params: &SweepParams, quality: QualityDefaults) -> serde_json::Value {
    json!({
        "gamma0": params.gamma0,
        "step": params.step,
        "stop_after_decreases": params.stop_after_decreases,
        "max_runs": params.max_runs,
        "report_min_size": params.report_min_size,
        "seed": params.seed,
        "max_iterations": quality.max_iterations,
        "min_improvement": quality.min_improvement,
    })
}

fn sweep_body(
    corpus: &Corpus,
    baseline: &BaselineClassification,
    params: &SweepParams,
    quality: QualityDefaults,
    tracker: &mut OutputTracker,
) -> Result<SweepJson> {
    if baseline.member_count() == 0 {
        return Err(Error::Sweep(
            "baseline classification has no members".into(),
        ));
    }
    let network = build_relatedness(&corpus.graph);
    let baseline_partition = baseline.as_partition();
    let p_prime = baseline.p_prime();

    let result = run_sweep(params, |run| -> Result<SweepObservation> {
        let qp = QualityParams {
            gamma: run.gamma,
            seed: run.seed,
            max_iterations: quality.max_iterations,
            min_improvement: quality.min_improvement,
        };
        let partition = slm_cluster(&network, &qp)?.canonicalize();
        let path = tracker.file(&format!("partition_gamma_{}.tsv", fmt_gamma(run.gamma)));
        write_partition(&path, &corpus.pub_ids, &partition)?;

        let restricted = derive_restricted(&partition, p_prime)?;
        let ari_value = ari(&baseline_partition, &restricted)?;
        let stats = weighted_size_stats(&partition)?;
        let sizes = partition.class_sizes();
        let n_ge_min = sizes
            .iter()
            .filter(|&&s| s >= params.report_min_size)
            .count() as u64;
        Ok(SweepObservation {
            ari: ari_value,
            n_classes: partition.n_classes() as u64,
            n_classes_ge_min: n_ge_min,
            stats,
        })
    })
    .map_err(|e| match e {
        SweepError::InvalidParams(m) => Error::Sweep(m.into()),
        SweepError::Scorer(err) => err,
    })?;

    let sweep_json = sweep_to_json(&result, |r| {
        format!("partition_gamma_{}.tsv", fmt_gamma(r.gamma))
    });
    write_json(&tracker.file("sweep.json"), &sweep_json)?;
    Ok(sweep_json)
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionStats {
    pub file: String,
    pub n_nodes: u64,
    pub n_classes: u64,
    pub n_classes_ge_min: u64,
    pub min_class_size: u64,
    pub max_class_size: u64,
    pub weighted: StatsJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlluvialStats {
    pub mean_classes_per_baseline_class: f64,
    pub spread: u32,
    pub n_selected_baseline_classes: u64,
    pub mean_members_of_selected: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StatsReport {
    pub report_min_size: u64,
    pub partitions: Vec<PartitionStats>,
    pub alluvial: Option<AlluvialStats>,
}

pub fn cmd_stats(
    partitions: &[PathBuf],
    primary: usize,
    baseline_path: Option<&Path>,
    options: &AnalyticsOptions,
    out_dir: &Path,
) -> Result<StatsReport> {
    if partitions.is_empty() {
        return Err(Error::Config(
            "at least one partition file is required".into(),
        ));
    }
    if primary >= partitions.len() {
        return Err(Error::Config(format!(
            "primary index {primary} out of range for {} partitions",
            partitions.len()
        )));
    }
    let mut inputs: Vec<PathBuf> = partitions.to_vec();
    if let Some(b) = baseline_path {
        inputs.push(b.to_path_buf());
    }
    run_command(
        "stats",
        json!({
            "partitions": partitions.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "primary": primary,
            "baseline": baseline_path.map(|p| p.display().to_string()),
            "bin_width": options.bin_width,
            "report_min_size": options.report_min_size,
        }),
        &inputs,
        out_dir,
        |tracker| stats_body(partitions, primary, baseline_path, options, tracker),
    )
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn stats_body(
    partitions: &[PathBuf],
    primary: usize,
    baseline_path: Option<&Path>,
    options: &AnalyticsOptions,
    tracker: &mut OutputTracker,
) -> Result<StatsReport> {
    let files: Vec<PartitionFile> = partitions
        .iter()
        .map(|p| read_partition(p))
        .collect::<Result<Vec<_>>>()?;

    let mut entries = Vec::with_capacity(files.len());
    for (path, file) in partitions.iter().zip(&files) {
        let sizes = file.partition.class_sizes();
        let stats = weighted_size_stats(&file.partition)?;
        entries.push(PartitionStats {
            file: file_name(path),
            n_nodes: file.partition.n_nodes() as u64,
            n_classes: file.partition.n_classes() as u64,
            n_classes_ge_min: sizes
                .iter()
                .filter(|&&s| s >= options.report_min_size)
                .count() as u64,
            min_class_size: sizes.iter().copied().min().unwrap_or(0),
            max_class_size: sizes.iter().copied().max().unwrap_or(0),
            weighted: stats.into(),
        });
    }

    let histogram = class_size_histogram(&files[primary].partition, options.bin_width)?;
    write_histogram(&tracker.file("histogram.tsv"), &histogram)?;

    let partition_refs: Vec<&Partition> = files.iter().map(|f| &f.partition).collect();
    let tables = rank_size_table(&partition_refs)?;
    let named: Vec<(String, Vec<(u32, u64)>)> = partitions
        .iter()
        .zip(tables)
        .map(|(p, t)| (file_stem(p), t))
        .collect();
    write_rank_size(&tracker.file("rank_size.tsv"), &named)?;

    let alluvial = match baseline_path {
        Some(bpath) => {
            let primary_file = &files[primary];
            let classes = read_baseline_raw(bpath)?;
            let mapped: Vec<topicgran_core::baseline::BaselineClass> = classes
                .iter()
                .map(|(synth, members)| {
                    let synthesis = primary_file.ids.binary_search(synth).map_err(|_| {
                        Error::Corpus(format!("synthesis id `{synth}` not in the partition"))
                    })? as u32;
                    let members = members
                        .iter()
                        .map(|m| {
                            primary_file
                                .ids
                                .binary_search(m)
                                .map(|i| i as u32)
                                .map_err(|_| {
                                    Error::Corpus(format!(
                                        "baseline member `{m}` not in the partition"
                                    ))
                                })
                        })
                        .collect::<Result<Vec<u32>>>()?;
                    Ok(topicgran_core::baseline::BaselineClass { synthesis, members })
                })
                .collect::<Result<Vec<_>>>()?;
            let baseline = BaselineClassification::from_classes(mapped)?;
            let dist = average_class_distribution(&baseline, &files[primary].partition)?;
            write_alluvial(&tracker.file("alluvial.tsv"), &dist.rank_averages)?;
            Some(AlluvialStats {
                mean_classes_per_baseline_class: dist.mean_classes,
                spread: dist.spread,
                n_selected_baseline_classes: dist.n_selected,
                mean_members_of_selected: dist.mean_members,
            })
        }
        None => None,
    };

    let report = StatsReport {
        report_min_size: options.report_min_size,
        partitions: entries,
        alluvial,
    };
    write_json(&tracker.file("stats.json"), &report)?;
    Ok(report)
}

pub fn cmd_label(
    publications: &Path,
    citations: &Path,
    config: &CorpusConfig,
    partition_path: &Path,
    options: &AnalyticsOptions,
    out_dir: &Path,
) -> Result<()> {
    run_command(
        "label",
        json!({
            "partition": partition_path.display().to_string(),
            "top_k": options.top_k,
            "min_class_size": options.min_class_size,
        }),
        &[
            publications.to_path_buf(),
            citations.to_path_buf(),
            partition_path.to_path_buf(),
        ],
        out_dir,
        |tracker| {
            let (corpus, _) = load_pruned(publications, citations, config)?;
            let file = read_aligned_partition(partition_path, &corpus)?;
            label_body(&corpus, &file, options, tracker)
        },
    )
}

/// Reads a partition that must cover exactly the corpus nodes.
fn read_aligned_partition(path: &Path, corpus: &Corpus) -> Result<PartitionFile> {
    let file = read_partition(path)?;
    if file.ids != corpus.pub_ids {
        return Err(Error::Corpus(format!(
            "partition {} does not cover the corpus ({} vs {} publications)",
            path.display(),
            file.ids.len(),
            corpus.pub_ids.len()
        )));
    }
    Ok(file)
}

fn label_body(
    corpus: &Corpus,
    file: &PartitionFile,
    options: &AnalyticsOptions,
    tracker: &mut OutputTracker,
) -> Result<()> {
    let mut labels = compute_labels(corpus, &file.partition, options);
    let unlabeled = labels.iter().filter(|l| !l.has_keywords).count();
    if unlabeled > 0 {
        eprintln!("label: {unlabeled} classes have no keyworded publications");
    }
    // rows in file class-id order (numeric when the labels are numbers,
    // as in canonical partition files)
    labels.sort_by(|a, b| {
        let (la, lb) = (
            &file.class_labels[a.class_id as usize],
            &file.class_labels[b.class_id as usize],
        );
        match (la.parse::<u64>(), lb.parse::<u64>()) {
            (Ok(x), Ok(y)) => x.cmp(&y),
            _ => la.cmp(lb),
        }
    });
    write_labels(
        &tracker.file("labels.tsv"),
        &labels,
        |c| file.class_labels[c as usize].clone(),
        |k| corpus.keyword(k).to_string(),
    )
}

/// Chi-square labels, parallelized over classes; output is sorted by
/// class id and independent of the thread count.
pub fn compute_labels(
    corpus: &Corpus,
    partition: &Partition,
    options: &AnalyticsOptions,
) -> Vec<ClassLabel> {
    if rayon::current_num_threads() <= 1 {
        return chi_square_labels(
            &corpus.graph,
            partition,
            options.top_k,
            options.min_class_size,
        );
    }
    let n_total = corpus.len() as u64;
    let mut global: Vec<u64> = vec![0; corpus.keyword_vocab.len()];
    for v in 0..corpus.len() as u32 {
        for &kw in corpus.graph.keywords(v) {
            global[kw as usize] += 1;
        }
    }
    let members = partition.members();
    let mut labels: Vec<ClassLabel> = members
        .par_iter()
        .enumerate()
        .filter(|(_, m)| m.len() as u64 >= options.min_class_size)
        .map(|(class_id, m)| {
            label_for_class(
                &corpus.graph,
                class_id as u32,
                m,
                &global,
                n_total,
                options.top_k,
            )
        })
        .collect();
    labels.sort_by_key(|l| l.class_id);
    labels
}

pub enum PubSetSelector {
    Journal(String),
    ListFile(PathBuf),
}

pub fn cmd_distribute(
    publications: &Path,
    citations: &Path,
    config: &CorpusConfig,
    partition_path: &Path,
    selector: &PubSetSelector,
    options: &AnalyticsOptions,
    out_dir: &Path,
) -> Result<()> {
    let selector_json = match selector {
        PubSetSelector::Journal(j) => json!({"journal": j}),
        PubSetSelector::ListFile(p) => json!({"pub_list": p.display().to_string()}),
    };
    run_command(
        "distribute",
        json!({
            "partition": partition_path.display().to_string(),
            "selector": selector_json,
            "top_n": options.top_n,
        }),
        &[
            publications.to_path_buf(),
            citations.to_path_buf(),
            partition_path.to_path_buf(),
        ],
        out_dir,
        |tracker| {
            let (corpus, _) = load_pruned(publications, citations, config)?;
            let file = read_aligned_partition(partition_path, &corpus)?;
            let pub_set: Vec<u32> = match selector {
                PubSetSelector::Journal(journal) => corpus.nodes_in_journal(journal),
                PubSetSelector::ListFile(list_path) => {
                    let text =
                        std::fs::read_to_string(list_path).map_err(|e| Error::io(list_path, e))?;
                    let mut nodes = Vec::new();
                    for (lineno, line) in text.lines().enumerate() {
                        let id = line.trim();
                        if id.is_empty() {
                            continue;
                        }
                        nodes.push(corpus.node(id).ok_or_else(|| {
                            Error::parse(list_path, lineno + 1, format!("unknown pub_id `{id}`"))
                        })?);
                    }
                    nodes.sort_unstable();
                    nodes.dedup();
                    nodes
                }
            };
            let rows = distribution_into_classes(&pub_set, &file.partition, options.top_n)?;
            write_distribution(&tracker.file("distribution.tsv"), &rows, |c| {
                file.class_labels[c as usize].clone()
            })
        },
    )
}

#[derive(Clone, Debug)]
pub struct PipelineParams {
    pub corpus_config: CorpusConfig,
    pub baseline: BaselineParams,
    pub sweep: SweepParams,
    pub quality: QualityDefaults,
    pub analytics: AnalyticsOptions,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineSummary {
    pub ingest: IngestReport,
    pub sweep: SweepJson,
}

/// The full run: ingest, baseline, resolution sweep, statistics on the
/// selected classification, keyword labels.
pub fn cmd_pipeline(
    publications: &Path,
    citations: &Path,
    params: &PipelineParams,
    out_dir: &Path,
) -> Result<PipelineSummary> {
    run_command(
        "pipeline",
        json!({
            "baseline": {
                "baseline_year": params.baseline.baseline_year,
                "min_refs": params.baseline.min_refs,
                "min_active_ratio": params.baseline.min_active_ratio,
                "overlap_threshold": params.baseline.overlap_threshold,
                "seed": params.baseline.seed,
            },
            "sweep": sweep_params_json(&params.sweep, params.quality),
            "analytics": {
                "bin_width": params.analytics.bin_width,
                "top_k": params.analytics.top_k,
                "min_class_size": params.analytics.min_class_size,
                "report_min_size": params.analytics.report_min_size,
            },
        }),
        &[publications.to_path_buf(), citations.to_path_buf()],
        out_dir,
        |tracker| {
            let (corpus, ingest) =
                ingest_body(publications, citations, &params.corpus_config, tracker)?;
            let baseline = baseline_body(&corpus, &params.baseline, tracker)?;
            let sweep = sweep_body(&corpus, &baseline, &params.sweep, params.quality, tracker)?;

            // statistics over every produced partition, the selected one
            // first-class: histogram and alluvial data describe it
            let dir = tracker.dir().to_path_buf();
            let partition_paths: Vec<PathBuf> = sweep
                .records
                .iter()
                .map(|r| dir.join(&r.partition_file))
                .collect();
            let primary = sweep
                .records
                .iter()
                .position(|r| r.index == sweep.selected_index)
                .expect("selected record exists");
            let baseline_file = dir.join("baseline.tsv");
            stats_body(
                &partition_paths,
                primary,
                Some(&baseline_file),
                &params.analytics,
                tracker,
            )?;

            let selected = read_aligned_partition(&partition_paths[primary], &corpus)?;
            label_body(&corpus, &selected, &params.analytics, tracker)?;

            Ok(PipelineSummary { ingest, sweep })
        },
    )
}

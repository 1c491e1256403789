//! Readers and writers for the pipeline's file formats.
//!
//! TSV files carry a header row and are written in deterministic order
//! (rows by ascending pub_id, classes by canonical id). Human-readable
//! numeric fields are rounded to 6 significant digits; JSON reports
//! keep full precision.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use topicgran_core::analytics::{ClassLabel, Histogram, WeightedSizeStats};
use topicgran_core::baseline::{BaselineClass, BaselineClassification, BaselineReport};
use topicgran_core::calibrate::{SweepRecord, SweepResult};
use topicgran_core::partition::Partition;

use crate::corpus::Corpus;
use crate::error::Error;
use crate::Result;

pub const PARTITION_HEADER: &str = "pub_id\tclass_id";
pub const BASELINE_HEADER: &str = "synthesis_id\tref_id";

/// Rounds to 6 significant digits and prints the shortest decimal form
/// of the rounded value.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.5e}").parse().expect("scientific round-trip");
    format!("{rounded}")
}

/// Gamma as it appears in file names and human-readable reports.
pub fn fmt_gamma(gamma: f64) -> String {
    fmt_sig6(gamma)
}

fn open_lines(path: &Path) -> Result<impl Iterator<Item = std::io::Result<String>>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(BufReader::new(file).lines())
}

fn expect_header(
    lines: &mut impl Iterator<Item = std::io::Result<String>>,
    path: &Path,
    expected: &str,
) -> Result<()> {
    match lines.next() {
        Some(Ok(h)) if h == expected => Ok(()),
        Some(Ok(other)) => Err(Error::parse(
            path,
            1,
            format!("expected header `{expected}`, found `{other}`"),
        )),
        Some(Err(e)) => Err(Error::io(path, e)),
        None => Err(Error::parse(path, 1, "empty file")),
    }
}

/// A partition file in memory: objects ascending by id, classes
/// renumbered internally with the original labels retained.
#[derive(Clone, Debug)]
pub struct PartitionFile {
    /// Ascending; position = object index.
    pub ids: Vec<String>,
    pub partition: Partition,
    /// Internal class id -> label as it appeared in the file.
    pub class_labels: Vec<String>,
}

pub fn read_partition(path: &Path) -> Result<PartitionFile> {
    let mut lines = open_lines(path)?;
    // ground-truth files use `topic_id` as the class column; accept both
    match lines.next() {
        Some(Ok(h)) if h == PARTITION_HEADER || h == "pub_id\ttopic_id" => {}
        Some(Ok(other)) => {
            return Err(Error::parse(
                path,
                1,
                format!("expected header `{PARTITION_HEADER}`, found `{other}`"),
            ))
        }
        Some(Err(e)) => return Err(Error::io(path, e)),
        None => return Err(Error::parse(path, 1, "empty file")),
    }
    let mut rows: Vec<(String, String)> = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let lineno = lineno + 2;
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        match (fields.next(), fields.next(), fields.next()) {
            (Some(id), Some(label), None) if !id.is_empty() && !label.is_empty() => {
                rows.push((id.to_string(), label.to_string()));
            }
            _ => {
                return Err(Error::parse(
                    path,
                    lineno,
                    "expected two tab-separated fields",
                ))
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::parse(path, 2, "no assignments"));
    }
    rows.sort();
    for pair in rows.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::Corpus(format!(
                "pub_id `{}` assigned twice in {}",
                pair[0].0,
                path.display()
            )));
        }
    }
    let ids: Vec<String> = rows.iter().map(|(id, _)| id.clone()).collect();
    let mut class_labels: Vec<String> = Vec::new();
    let mut label_index: BTreeMap<&str, u32> = BTreeMap::new();
    let mut raw: Vec<u32> = Vec::with_capacity(rows.len());
    for (_, label) in &rows {
        let next = class_labels.len() as u32;
        let idx = *label_index.entry(label.as_str()).or_insert(next);
        if idx == next {
            class_labels.push(label.clone());
        }
        raw.push(idx);
    }
    Ok(PartitionFile {
        ids,
        partition: Partition::from_assignment(&raw),
        class_labels,
    })
}

/// Writes a partition with canonical 1-based class ids, rows ascending
/// by id. `ids[v]` names object `v`.
pub fn write_partition(path: &Path, ids: &[String], partition: &Partition) -> Result<()> {
    debug_assert_eq!(ids.len(), partition.n_nodes());
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?);
    let werr = |e| Error::io(path, e);
    writeln!(w, "{PARTITION_HEADER}").map_err(werr)?;
    for (v, id) in ids.iter().enumerate() {
        writeln!(w, "{}\t{}", id, partition.class_of(v as u32) + 1).map_err(werr)?;
    }
    w.flush().map_err(werr)
}

pub fn write_baseline(
    path: &Path,
    corpus: &Corpus,
    classification: &BaselineClassification,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?);
    let werr = |e| Error::io(path, e);
    writeln!(w, "{BASELINE_HEADER}").map_err(werr)?;
    for class in &classification.classes {
        for &m in &class.members {
            writeln!(w, "{}\t{}", corpus.id(class.synthesis), corpus.id(m)).map_err(werr)?;
        }
    }
    w.flush().map_err(werr)
}

/// Reads a baseline file as grouped identifier lists, ordered by
/// synthesis id.
pub fn read_baseline_raw(path: &Path) -> Result<Vec<(String, Vec<String>)>> {
    let mut lines = open_lines(path)?;
    expect_header(&mut lines, path, BASELINE_HEADER)?;
    let mut classes: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (lineno, line) in lines.enumerate() {
        let lineno = lineno + 2;
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) if !a.is_empty() && !b.is_empty() => {
                classes
                    .entry(a.to_string())
                    .or_default()
                    .push(b.to_string());
            }
            _ => return Err(Error::parse(path, lineno, "expected two tab-separated ids")),
        }
    }
    Ok(classes.into_iter().collect())
}

/// Reads a baseline file against a loaded corpus; every id must resolve.
pub fn read_baseline(path: &Path, corpus: &Corpus) -> Result<BaselineClassification> {
    let raw = read_baseline_raw(path)?;
    let mut classes: Vec<BaselineClass> = Vec::with_capacity(raw.len());
    for (synth, members) in raw {
        let synthesis = corpus
            .node(&synth)
            .ok_or_else(|| Error::Corpus(format!("unknown synthesis id `{synth}`")))?;
        let members = members
            .iter()
            .map(|m| {
                corpus
                    .node(m)
                    .ok_or_else(|| Error::Corpus(format!("unknown ref id `{m}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        classes.push(BaselineClass { synthesis, members });
    }
    classes.sort_by_key(|c| c.synthesis);
    BaselineClassification::from_classes(classes).map_err(Error::from)
}

pub fn write_baseline_report(path: &Path, report: &BaselineReport) -> Result<()> {
    #[derive(Serialize)]
    struct Json {
        candidates: u64,
        groups: u64,
        excluded_by_grouping: u64,
        shared_refs_resolved: u64,
        ties_dropped: u64,
        classes: u64,
        members: u64,
    }
    let json = Json {
        candidates: report.candidates,
        groups: report.groups,
        excluded_by_grouping: report.excluded_by_grouping,
        shared_refs_resolved: report.shared_refs_resolved,
        ties_dropped: report.ties_dropped,
        classes: report.classes,
        members: report.members,
    };
    write_json(path, &json)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct StatsJson {
    pub mean: f64,
    pub median: f64,
    pub p10: f64,
    pub p90: f64,
}

impl From<WeightedSizeStats> for StatsJson {
    fn from(s: WeightedSizeStats) -> StatsJson {
        StatsJson {
            mean: s.mean,
            median: s.median,
            p10: s.p10,
            p90: s.p90,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRecordJson {
    pub index: u32,
    pub gamma: f64,
    pub ari: f64,
    pub n_classes: u64,
    pub n_classes_ge_min: u64,
    pub class_size_stats: StatsJson,
    pub partition_file: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepJson {
    pub records: Vec<SweepRecordJson>,
    pub selected_index: u32,
    pub selected_gamma: f64,
    pub selected_partition_file: String,
}

pub fn sweep_to_json(
    result: &SweepResult,
    partition_file: impl Fn(&SweepRecord) -> String,
) -> SweepJson {
    let records: Vec<SweepRecordJson> = result
        .records
        .iter()
        .map(|r| SweepRecordJson {
            index: r.index,
            gamma: r.gamma,
            ari: r.ari,
            n_classes: r.n_classes,
            n_classes_ge_min: r.n_classes_ge_min,
            class_size_stats: r.stats.into(),
            partition_file: partition_file(r),
        })
        .collect();
    let selected_partition_file = records
        .iter()
        .find(|r| r.index == result.selected_index)
        .map(|r| r.partition_file.clone())
        .unwrap_or_default();
    SweepJson {
        records,
        selected_index: result.selected_index,
        selected_gamma: result.selected_gamma,
        selected_partition_file,
    }
}

pub fn write_histogram(path: &Path, histogram: &Histogram) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?);
    let werr = |e| Error::io(path, e);
    writeln!(w, "bin_lower\tbin_upper\tn_classes").map_err(werr)?;
    for &(lower, count) in &histogram.bins {
        writeln!(
            w,
            "{}\t{}\t{}",
            lower,
            lower + histogram.bin_width - 1,
            count
        )
        .map_err(werr)?;
    }
    w.flush().map_err(werr)
}

/// One file for all partitions: `partition \t rank \t class_size`.
pub fn write_rank_size(path: &Path, tables: &[(String, Vec<(u32, u64)>)]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?);
    let werr = |e| Error::io(path, e);
    writeln!(w, "partition\trank\tclass_size").map_err(werr)?;
    for (name, table) in tables {
        for &(rank, size) in table {
            writeln!(w, "{name}\t{rank}\t{size}").map_err(werr)?;
        }
    }
    w.flush().map_err(werr)
}

/// Alluvial rows for the average baseline class: `rank \t average_count`.
pub fn write_alluvial(path: &Path, rank_averages: &[f64]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?);
    let werr = |e| Error::io(path, e);
    writeln!(w, "rank\taverage_count").map_err(werr)?;
    for (i, avg) in rank_averages.iter().enumerate() {
        writeln!(w, "{}\t{}", i + 1, fmt_sig6(*avg)).map_err(werr)?;
    }
    w.flush().map_err(werr)
}

/// `class_id \t n_members \t label`, label = keywords joined with `//`.
pub fn write_labels(
    path: &Path,
    labels: &[ClassLabel],
    class_name: impl Fn(u32) -> String,
    keyword_name: impl Fn(u32) -> String,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?);
    let werr = |e| Error::io(path, e);
    writeln!(w, "class_id\tn_members\tlabel").map_err(werr)?;
    for label in labels {
        let text: Vec<String> = label
            .top_keywords
            .iter()
            .map(|&(kw, _)| keyword_name(kw))
            .collect();
        writeln!(
            w,
            "{}\t{}\t{}",
            class_name(label.class_id),
            label.n_members,
            text.join("//")
        )
        .map_err(werr)?;
    }
    w.flush().map_err(werr)
}

/// `rank \t class_id \t count \t share_percent`, descending by count.
pub fn write_distribution(
    path: &Path,
    rows: &[(u32, u64, f64)],
    class_name: impl Fn(u32) -> String,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?);
    let werr = |e| Error::io(path, e);
    writeln!(w, "rank\tclass_id\tcount\tshare_percent").map_err(werr)?;
    for (i, &(class, count, share)) in rows.iter().enumerate() {
        writeln!(
            w,
            "{}\t{}\t{}\t{}",
            i + 1,
            class_name(class),
            count,
            fmt_sig6(share)
        )
        .map_err(werr)?;
    }
    w.flush().map_err(werr)
}

/// `pub_id_a \t pub_id_b \t weight` with `pub_id_a < pub_id_b`.
pub fn write_relatedness(
    path: &Path,
    corpus: &Corpus,
    network: &topicgran_core::relatedness::Network,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?);
    let werr = |e| Error::io(path, e);
    writeln!(w, "pub_id_a\tpub_id_b\tweight").map_err(werr)?;
    for (i, j, weight) in network.edges() {
        // node order is id order, so i < j means id(i) < id(j)
        writeln!(
            w,
            "{}\t{}\t{}",
            corpus.id(i),
            corpus.id(j),
            fmt_sig6(weight)
        )
        .map_err(werr)?;
    }
    w.flush().map_err(werr)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AriJson {
    pub n: u64,
    pub classes_x: u32,
    pub classes_y: u32,
    pub ari: f64,
}

//! Corpus loading: publication and citation TSV files, identifier
//! interning, validation and re-export.
//!
//! Node indices are assigned in ascending `pub_id` order and keyword
//! ids in ascending keyword order, so every index-level tie-break in
//! the core maps back to a lexicographic tie-break on identifiers and
//! outputs do not depend on input row order.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use topicgran_core::graph::{CiteGraph, DocType};

use crate::error::Error;
use crate::Result;

pub const PUBLICATIONS_HEADER: &str = "pub_id\tyear\tdoc_type\traw_ref_count\tjournal_id\tkeywords";
pub const CITATIONS_HEADER: &str = "citing_id\tcited_id";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusConfig {
    /// Abort on malformed rows and unresolvable citation endpoints
    /// instead of skipping them.
    pub strict: bool,
    pub year_min: i32,
    pub year_max: i32,
}

impl Default for CorpusConfig {
    fn default() -> CorpusConfig {
        CorpusConfig {
            strict: true,
            year_min: 1980,
            year_max: 2017,
        }
    }
}

/// What the loader dropped or patched, by category.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct LoadReport {
    pub publications: u64,
    pub edges: u64,
    pub malformed_rows_skipped: u64,
    pub duplicate_ids_skipped: u64,
    pub self_citations_dropped: u64,
    pub duplicate_edges_dropped: u64,
    pub unresolved_edges_dropped: u64,
    /// Rows whose raw reference count was below the number of resolved
    /// references and got lifted to it (lenient mode only).
    pub raw_ref_counts_clamped: u64,
}

/// The loaded corpus: interned identifiers plus the index-level graph.
#[derive(Clone, Debug)]
pub struct Corpus {
    /// Ascending; position = node index.
    pub pub_ids: Vec<String>,
    /// Per node; empty string when the source column was empty.
    pub journals: Vec<String>,
    /// Ascending; position = keyword id.
    pub keyword_vocab: Vec<String>,
    pub graph: CiteGraph,
}

impl Corpus {
    pub fn node(&self, pub_id: &str) -> Option<u32> {
        self.pub_ids
            .binary_search_by(|probe| probe.as_str().cmp(pub_id))
            .ok()
            .map(|i| i as u32)
    }

    pub fn id(&self, node: u32) -> &str {
        &self.pub_ids[node as usize]
    }

    pub fn keyword(&self, kw: u32) -> &str {
        &self.keyword_vocab[kw as usize]
    }

    pub fn len(&self) -> usize {
        self.pub_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pub_ids.is_empty()
    }

    /// Drops publications without any citation relation. Identifier
    /// order survives subsetting, so indices stay aligned with sorted
    /// ids.
    pub fn prune_isolated(&self) -> (Corpus, usize) {
        let (graph, kept, removed) = self.graph.prune_isolated();
        if removed == 0 {
            return (self.clone(), 0);
        }
        let pub_ids = kept
            .iter()
            .map(|&v| self.pub_ids[v as usize].clone())
            .collect();
        let journals = kept
            .iter()
            .map(|&v| self.journals[v as usize].clone())
            .collect();
        (
            Corpus {
                pub_ids,
                journals,
                keyword_vocab: self.keyword_vocab.clone(),
                graph,
            },
            removed,
        )
    }

    /// Nodes whose journal column equals `journal_id`.
    pub fn nodes_in_journal(&self, journal_id: &str) -> Vec<u32> {
        (0..self.len() as u32)
            .filter(|&v| self.journals[v as usize] == journal_id)
            .collect()
    }

    /// Writes the corpus back out in the input formats, rows in
    /// identifier order.
    pub fn export(&self, publications: &Path, citations: &Path) -> Result<()> {
        let mut pubs =
            BufWriter::new(File::create(publications).map_err(|e| Error::io(publications, e))?);
        let werr = |e| Error::io(publications, e);
        writeln!(pubs, "{PUBLICATIONS_HEADER}").map_err(werr)?;
        for v in 0..self.len() as u32 {
            let keywords: Vec<&str> = self
                .graph
                .keywords(v)
                .iter()
                .map(|&k| self.keyword(k))
                .collect();
            writeln!(
                pubs,
                "{}\t{}\t{}\t{}\t{}\t{}",
                self.id(v),
                self.graph.year(v),
                doc_type_str(self.graph.doc_type(v)),
                self.graph.raw_ref_count(v),
                self.journals[v as usize],
                keywords.join("|"),
            )
            .map_err(werr)?;
        }
        pubs.flush().map_err(werr)?;

        let mut cites =
            BufWriter::new(File::create(citations).map_err(|e| Error::io(citations, e))?);
        let werr = |e| Error::io(citations, e);
        writeln!(cites, "{CITATIONS_HEADER}").map_err(werr)?;
        for v in 0..self.len() as u32 {
            for &t in self.graph.out_refs(v) {
                writeln!(cites, "{}\t{}", self.id(v), self.id(t)).map_err(werr)?;
            }
        }
        cites.flush().map_err(werr)?;
        Ok(())
    }
}

pub fn doc_type_str(d: DocType) -> &'static str {
    match d {
        DocType::Article => "article",
        DocType::Review => "review",
        DocType::Other => "other",
    }
}

fn parse_doc_type(s: &str) -> Option<DocType> {
    match s.to_ascii_lowercase().as_str() {
        "article" => Some(DocType::Article),
        "review" => Some(DocType::Review),
        "other" => Some(DocType::Other),
        _ => None,
    }
}

/// Uppercase, trim, collapse internal whitespace.
pub fn normalize_keyword(raw: &str) -> String {
    raw.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_uppercase()
}

struct RawPublication {
    pub_id: String,
    year: i32,
    doc_type: DocType,
    raw_ref_count: u32,
    journal: String,
    keywords: Vec<String>,
}

fn read_lines(path: &Path) -> Result<impl Iterator<Item = std::io::Result<String>>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(BufReader::new(file).lines())
}

/// Loads and validates the corpus. Malformed rows abort in strict mode
/// and are skipped (and counted) otherwise; self-citations and
/// duplicate edges are always dropped with a count.
pub fn load_corpus(
    publications: &Path,
    citations: &Path,
    config: &CorpusConfig,
) -> Result<(Corpus, LoadReport)> {
    let mut report = LoadReport::default();
    let mut raw_pubs: Vec<RawPublication> = Vec::new();

    let mut lines = read_lines(publications)?;
    match lines.next() {
        Some(Ok(header)) if header == PUBLICATIONS_HEADER => {}
        Some(Ok(other)) => {
            return Err(Error::parse(
                publications,
                1,
                format!("expected header `{PUBLICATIONS_HEADER}`, found `{other}`"),
            ))
        }
        Some(Err(e)) => return Err(Error::io(publications, e)),
        None => return Err(Error::parse(publications, 1, "empty file")),
    }
    for (lineno, line) in lines.enumerate() {
        let lineno = lineno + 2;
        let line = line.map_err(|e| Error::io(publications, e))?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        match parse_publication_row(line, config) {
            Ok(p) => raw_pubs.push(p),
            Err(message) => {
                if config.strict {
                    return Err(Error::parse(publications, lineno, message));
                }
                report.malformed_rows_skipped += 1;
            }
        }
    }

    // intern in ascending id order; duplicates are adjacent after sort
    raw_pubs.sort_by(|a, b| a.pub_id.cmp(&b.pub_id));
    let mut pubs: Vec<RawPublication> = Vec::with_capacity(raw_pubs.len());
    for p in raw_pubs {
        match pubs.last() {
            Some(last) if last.pub_id == p.pub_id => {
                if config.strict {
                    return Err(Error::Corpus(format!("duplicate pub_id `{}`", p.pub_id)));
                }
                report.duplicate_ids_skipped += 1;
            }
            _ => pubs.push(p),
        }
    }
    if pubs.is_empty() {
        return Err(Error::Corpus("no publications loaded".into()));
    }

    let mut keyword_vocab: Vec<String> = pubs
        .iter()
        .flat_map(|p| p.keywords.iter().cloned())
        .collect();
    keyword_vocab.sort_unstable();
    keyword_vocab.dedup();

    let pub_ids: Vec<String> = pubs.iter().map(|p| p.pub_id.clone()).collect();
    let find = |id: &str| {
        pub_ids
            .binary_search_by(|probe| probe.as_str().cmp(id))
            .ok()
    };

    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut lines = read_lines(citations)?;
    match lines.next() {
        Some(Ok(header)) if header == CITATIONS_HEADER => {}
        Some(Ok(other)) => {
            return Err(Error::parse(
                citations,
                1,
                format!("expected header `{CITATIONS_HEADER}`, found `{other}`"),
            ))
        }
        Some(Err(e)) => return Err(Error::io(citations, e)),
        None => return Err(Error::parse(citations, 1, "empty file")),
    }
    for (lineno, line) in lines.enumerate() {
        let lineno = lineno + 2;
        let line = line.map_err(|e| Error::io(citations, e))?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let (citing, cited) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) if !a.is_empty() && !b.is_empty() => (a, b),
            _ => {
                if config.strict {
                    return Err(Error::parse(
                        citations,
                        lineno,
                        "expected two tab-separated ids",
                    ));
                }
                report.malformed_rows_skipped += 1;
                continue;
            }
        };
        match (find(citing), find(cited)) {
            (Some(a), Some(b)) => {
                if a == b {
                    report.self_citations_dropped += 1;
                } else {
                    edges.push((a as u32, b as u32));
                }
            }
            _ => {
                if config.strict {
                    return Err(Error::parse(
                        citations,
                        lineno,
                        format!("unresolvable endpoint in `{citing}` -> `{cited}`"),
                    ));
                }
                report.unresolved_edges_dropped += 1;
            }
        }
    }
    edges.sort_unstable();
    let before = edges.len();
    edges.dedup();
    report.duplicate_edges_dropped = (before - edges.len()) as u64;

    // resolved references can exceed the claimed raw count only on
    // inconsistent input
    let mut out_degree = vec![0u32; pubs.len()];
    for &(citing, _) in &edges {
        out_degree[citing as usize] += 1;
    }
    let mut raw_counts: Vec<u32> = pubs.iter().map(|p| p.raw_ref_count).collect();
    for (v, &deg) in out_degree.iter().enumerate() {
        if raw_counts[v] < deg {
            if config.strict {
                return Err(Error::Corpus(format!(
                    "pub `{}` claims {} raw references but {} resolved",
                    pubs[v].pub_id, raw_counts[v], deg
                )));
            }
            raw_counts[v] = deg;
            report.raw_ref_counts_clamped += 1;
        }
    }

    let keywords_idx: Vec<Vec<u32>> = pubs
        .iter()
        .map(|p| {
            p.keywords
                .iter()
                .map(|k| keyword_vocab.binary_search(k).expect("interned") as u32)
                .collect()
        })
        .collect();

    let years: Vec<i32> = pubs.iter().map(|p| p.year).collect();
    let doc_types: Vec<DocType> = pubs.iter().map(|p| p.doc_type).collect();
    let journals: Vec<String> = pubs.iter().map(|p| p.journal.clone()).collect();

    report.publications = pubs.len() as u64;
    report.edges = edges.len() as u64;

    let graph = CiteGraph::build(years, doc_types, raw_counts, keywords_idx, edges)?;
    Ok((
        Corpus {
            pub_ids,
            journals,
            keyword_vocab,
            graph,
        },
        report,
    ))
}

fn parse_publication_row(
    line: &str,
    config: &CorpusConfig,
) -> std::result::Result<RawPublication, String> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 6 {
        return Err(format!(
            "expected 6 tab-separated fields, found {}",
            fields.len()
        ));
    }
    let pub_id = fields[0];
    if pub_id.is_empty() {
        return Err("empty pub_id".into());
    }
    let year: i32 = fields[1]
        .parse()
        .map_err(|_| format!("bad year `{}`", fields[1]))?;
    if year < config.year_min || year > config.year_max {
        return Err(format!(
            "year {year} outside configured range {}..={}",
            config.year_min, config.year_max
        ));
    }
    let doc_type =
        parse_doc_type(fields[2]).ok_or_else(|| format!("bad doc_type `{}`", fields[2]))?;
    let raw_ref_count: u32 = fields[3]
        .parse()
        .map_err(|_| format!("bad raw_ref_count `{}`", fields[3]))?;
    let mut keywords: Vec<String> = fields[5]
        .split('|')
        .map(normalize_keyword)
        .filter(|k| !k.is_empty())
        .collect();
    keywords.sort_unstable();
    keywords.dedup();
    Ok(RawPublication {
        pub_id: pub_id.to_string(),
        year,
        doc_type,
        raw_ref_count,
        journal: fields[4].to_string(),
        keywords,
    })
}

//! Synthetic corpora with planted topic structure, for end-to-end
//! validation of the pipeline at desk scale.
//!
//! Each topic is a block of publications citing densely within the
//! block and sparsely across blocks; a few long-reference-list review
//! articles per topic play the synthesis-article role, and per-topic
//! keyword vocabularies make label checks possible. Everything is
//! deterministic for a fixed seed.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{CITATIONS_HEADER, PUBLICATIONS_HEADER};
use crate::error::Error;
use crate::Result;

pub const GROUND_TRUTH_HEADER: &str = "pub_id\ttopic_id";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlantedCorpusSpec {
    pub n_topics: u32,
    pub pubs_per_topic: u32,
    /// 0 = equal topic sizes; positive values skew sizes by a power law
    /// over topic rank.
    pub size_skew: f64,
    /// Citation probability for a pair inside one topic.
    pub p_intra: f64,
    /// Citation probability for a pair across topics.
    pub p_inter: f64,
    pub n_synthesis_per_topic: u32,
    /// Active references drawn per synthesis article.
    pub refs_per_synthesis: u32,
    pub keyword_vocab_per_topic: u32,
    pub seed: u64,
}

impl Default for PlantedCorpusSpec {
    fn default() -> PlantedCorpusSpec {
        PlantedCorpusSpec {
            n_topics: 10,
            pubs_per_topic: 200,
            size_skew: 0.0,
            p_intra: 0.05,
            p_inter: 0.0005,
            n_synthesis_per_topic: 3,
            refs_per_synthesis: 110,
            keyword_vocab_per_topic: 20,
            seed: 0,
        }
    }
}

/// Years regular publications are spread over; synthesis articles sit
/// at the top of the window so citing any topic member respects
/// later-cites-earlier.
const YEAR_MIN: i32 = 2006;
const YEAR_MAX: i32 = 2015;
pub const SYNTHESIS_YEAR: i32 = 2015;

/// Raw reference counts carry 10% padding over the active references,
/// so generated synthesis articles sit at a 10/11 active ratio.
const INACTIVE_PAD_SHARE: f64 = 0.1;

struct GenPublication {
    id: String,
    year: i32,
    doc_type: &'static str,
    raw_ref_count: u32,
    journal: String,
    keywords: Vec<String>,
    topic: u32,
}

pub struct SyntheticCorpus {
    publications: Vec<GenPublication>,
    citations: Vec<(u32, u32)>,
}

impl SyntheticCorpus {
    pub fn n_publications(&self) -> usize {
        self.publications.len()
    }

    pub fn n_citations(&self) -> usize {
        self.citations.len()
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        self.write_files(
            &dir.join("publications.tsv"),
            &dir.join("citations.tsv"),
            &dir.join("ground_truth.tsv"),
        )
    }

    pub fn write_files(
        &self,
        publications: &Path,
        citations: &Path,
        ground_truth: &Path,
    ) -> Result<()> {
        let mut w =
            BufWriter::new(File::create(publications).map_err(|e| Error::io(publications, e))?);
        let werr = |e| Error::io(publications, e);
        writeln!(w, "{PUBLICATIONS_HEADER}").map_err(werr)?;
        for p in &self.publications {
            writeln!(
                w,
                "{}\t{}\t{}\t{}\t{}\t{}",
                p.id,
                p.year,
                p.doc_type,
                p.raw_ref_count,
                p.journal,
                p.keywords.join("|")
            )
            .map_err(werr)?;
        }
        w.flush().map_err(werr)?;

        let mut w = BufWriter::new(File::create(citations).map_err(|e| Error::io(citations, e))?);
        let werr = |e| Error::io(citations, e);
        writeln!(w, "{CITATIONS_HEADER}").map_err(werr)?;
        for &(citing, cited) in &self.citations {
            writeln!(
                w,
                "{}\t{}",
                self.publications[citing as usize].id, self.publications[cited as usize].id
            )
            .map_err(werr)?;
        }
        w.flush().map_err(werr)?;

        let mut w =
            BufWriter::new(File::create(ground_truth).map_err(|e| Error::io(ground_truth, e))?);
        let werr = |e| Error::io(ground_truth, e);
        writeln!(w, "{GROUND_TRUTH_HEADER}").map_err(werr)?;
        for p in &self.publications {
            writeln!(w, "{}\t{}", p.id, topic_id(p.topic)).map_err(werr)?;
        }
        w.flush().map_err(werr)
    }
}

pub fn topic_id(topic: u32) -> String {
    format!("T{:03}", topic + 1)
}

fn keyword(topic: u32, k: u32) -> String {
    format!("T{:03} KW{:02}", topic + 1, k + 1)
}

/// Keyword vocabulary of one topic, as the labeller will see it.
pub fn topic_vocabulary(spec: &PlantedCorpusSpec, topic: u32) -> Vec<String> {
    (0..spec.keyword_vocab_per_topic)
        .map(|k| keyword(topic, k))
        .collect()
}

fn topic_sizes(spec: &PlantedCorpusSpec) -> Vec<u32> {
    (0..spec.n_topics)
        .map(|t| {
            if spec.size_skew <= 0.0 {
                spec.pubs_per_topic
            } else {
                let scale = ((t + 1) as f64).powf(-spec.size_skew);
                ((spec.pubs_per_topic as f64 * scale).round() as u32).max(10)
            }
        })
        .collect()
}

pub fn generate(spec: &PlantedCorpusSpec) -> Result<SyntheticCorpus> {
    if spec.n_topics == 0 || spec.pubs_per_topic == 0 || spec.n_synthesis_per_topic == 0 {
        return Err(Error::Synthgen("all counts must be positive".into()));
    }
    if !(spec.p_intra > spec.p_inter && spec.p_inter >= 0.0 && spec.p_intra <= 1.0) {
        return Err(Error::Synthgen(
            "need p_intra > p_inter >= 0 and p_intra <= 1".into(),
        ));
    }
    if spec.keyword_vocab_per_topic == 0 {
        return Err(Error::Synthgen(
            "keyword vocabulary must be non-empty".into(),
        ));
    }
    let sizes = topic_sizes(spec);
    let own_refs = own_reference_count(spec);
    for (t, &size) in sizes.iter().enumerate() {
        if own_refs > size {
            return Err(Error::Synthgen(format!(
                "refs_per_synthesis {} needs {} same-topic articles but topic {} has {}",
                spec.refs_per_synthesis,
                own_refs,
                t + 1,
                size
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut publications: Vec<GenPublication> = Vec::new();
    let mut members: Vec<Vec<u32>> = Vec::new(); // regular pubs per topic
    let mut synthesis: Vec<(u32, u32)> = Vec::new(); // (node, topic)

    // publications first, ids sequential so lexicographic = generation order
    for (t, &size) in sizes.iter().enumerate() {
        let t = t as u32;
        let mut topic_members = Vec::with_capacity(size as usize);
        for _ in 0..size {
            let node = publications.len() as u32;
            topic_members.push(node);
            publications.push(GenPublication {
                id: format!("P{:06}", node + 1),
                year: rng.gen_range(YEAR_MIN..=YEAR_MAX),
                doc_type: "article",
                raw_ref_count: 0,
                journal: format!("J{:03}", t + 1),
                keywords: draw_keywords(spec, t, &mut rng),
                topic: t,
            });
        }
        members.push(topic_members);
        for _ in 0..spec.n_synthesis_per_topic {
            let node = publications.len() as u32;
            synthesis.push((node, t));
            publications.push(GenPublication {
                id: format!("P{:06}", node + 1),
                year: SYNTHESIS_YEAR,
                doc_type: "review",
                raw_ref_count: 0, // filled after drawing references
                journal: format!("J{:03}", t + 1),
                keywords: draw_keywords(spec, t, &mut rng),
                topic: t,
            });
        }
    }

    // peer citations between regular publications
    let mut citations: Vec<(u32, u32)> = Vec::new();
    let all_regular: Vec<u32> = members.iter().flatten().copied().collect();
    for ai in 0..all_regular.len() {
        for bi in (ai + 1)..all_regular.len() {
            let (a, b) = (all_regular[ai], all_regular[bi]);
            let same = publications[a as usize].topic == publications[b as usize].topic;
            let p = if same { spec.p_intra } else { spec.p_inter };
            if rng.gen_bool(p) {
                citations.push(direct(a, b, &publications));
            }
        }
    }

    // synthesis reference lists: mostly own topic, a sliver elsewhere
    for &(node, topic) in &synthesis {
        let mut own: Vec<u32> = members[topic as usize].clone();
        own.shuffle(&mut rng);
        own.truncate(own_refs as usize);
        let n_other = spec.refs_per_synthesis.saturating_sub(own_refs) as usize;
        let mut other: Vec<u32> = Vec::with_capacity(n_other);
        if n_other > 0 {
            let mut pool: Vec<u32> = members
                .iter()
                .enumerate()
                .filter(|&(t, _)| t as u32 != topic)
                .flat_map(|(_, m)| m.iter().copied())
                .collect();
            if pool.len() < n_other {
                return Err(Error::Synthgen(
                    "not enough cross-topic articles for synthesis references".into(),
                ));
            }
            pool.shuffle(&mut rng);
            other.extend_from_slice(&pool[..n_other]);
        }
        let refs: Vec<u32> = own.into_iter().chain(other).collect();
        let pad = (refs.len() as f64 * INACTIVE_PAD_SHARE).round() as u32;
        publications[node as usize].raw_ref_count = refs.len() as u32 + pad;
        for r in refs {
            citations.push((node, r));
        }
    }

    // no regular publication may end up isolated: patch a same-topic
    // citation for any that did
    let mut degree = vec![0u32; publications.len()];
    for &(a, b) in &citations {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    for topic_members in &members {
        for (i, &node) in topic_members.iter().enumerate() {
            if degree[node as usize] == 0 {
                let peer = topic_members[(i + 1) % topic_members.len()];
                if peer != node {
                    citations.push(direct(node, peer, &publications));
                    degree[node as usize] += 1;
                    degree[peer as usize] += 1;
                }
            }
        }
    }

    citations.sort_unstable();
    citations.dedup();

    // raw counts for regular publications = their drawn citations
    let mut out_degree = vec![0u32; publications.len()];
    for &(a, _) in &citations {
        out_degree[a as usize] += 1;
    }
    for (v, p) in publications.iter_mut().enumerate() {
        if p.doc_type == "article" {
            p.raw_ref_count = out_degree[v];
        } else {
            // dedup may have folded a synthesis reference into a peer
            // citation; keep the claimed count consistent
            p.raw_ref_count = p.raw_ref_count.max(out_degree[v]);
        }
    }

    Ok(SyntheticCorpus {
        publications,
        citations,
    })
}

/// Same-topic share of a synthesis reference list: 95%, rounded up.
fn own_reference_count(spec: &PlantedCorpusSpec) -> u32 {
    let own = (spec.refs_per_synthesis as f64 * 0.95).ceil() as u32;
    own.min(spec.refs_per_synthesis)
}

fn draw_keywords(spec: &PlantedCorpusSpec, topic: u32, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut kws: Vec<String> = (0..3)
        .map(|_| keyword(topic, rng.gen_range(0..spec.keyword_vocab_per_topic)))
        .collect();
    // occasional off-topic keyword so labels are not trivially clean
    if spec.n_topics > 1 && rng.gen_bool(0.1) {
        let mut other = rng.gen_range(0..spec.n_topics);
        if other == topic {
            other = (other + 1) % spec.n_topics;
        }
        kws.push(keyword(
            other,
            rng.gen_range(0..spec.keyword_vocab_per_topic),
        ));
    }
    kws.sort_unstable();
    kws.dedup();
    kws
}

/// Orients a citation pair: the later year cites the earlier, same
/// years resolved by the higher node index citing the lower.
fn direct(a: u32, b: u32, publications: &[GenPublication]) -> (u32, u32) {
    let (ya, yb) = (publications[a as usize].year, publications[b as usize].year);
    if ya > yb || (ya == yb && a > b) {
        (a, b)
    } else {
        (b, a)
    }
}

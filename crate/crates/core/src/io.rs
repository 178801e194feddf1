//! CSV ingestion and emission.
//!
//! All files are UTF-8 CSV with a header row:
//!
//! | file                 | columns                                              |
//! |----------------------|------------------------------------------------------|
//! | edges                | `citing_id,cited_id`                                 |
//! | documents            | `id,venue,year,doc_type,cites,authors`               |
//! | journal matrix       | `<label>,<journal ids...>,pubs`                      |
//! | rank records         | `journal,year,indexed,tc_rank,if_rank`               |
//! | citation profile     | `cites`                                              |
//! | ranked counts        | `id,count`                                           |
//! | paired values        | `x,y`                                                |
//! | subjects             | `subject,year,author`                                |
//! | sample               | `subject,year,position,doc_id`                       |
//!
//! `authors` is `;`-separated in byline order. An empty rank cell means
//! unranked.

use std::collections::HashSet;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::{CitationGraph, DocumentRecord, JournalCitationMatrix};
use crate::report::csv_writer;
use crate::study::{RankRecord, SampleEntry, Subject};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub path: String,
    pub line: u64,
    pub message: String,
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.path, self.line, self.message)
    }
}

/// Rows skipped while loading in non-strict mode.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub warnings: Vec<Warning>,
}

impl LoadReport {
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// Row-level error policy shared by all loaders.
struct Rows<'r> {
    path: String,
    strict: bool,
    report: &'r mut LoadReport,
}

impl Rows<'_> {
    /// In strict mode turns a bad row into an error, otherwise records it.
    fn reject(&mut self, line: u64, message: String) -> Result<()> {
        if self.strict {
            return Err(Error::Parse {
                path: self.path.clone(),
                line,
                message,
            });
        }
        self.report.warnings.push(Warning {
            path: self.path.clone(),
            line,
            message,
        });
        Ok(())
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn csv_reader<R: Read>(inner: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(inner)
}

/// Reads every record, validating the header against `expected`.
/// Returns `(line, record)` pairs; undecodable records go through `rows`.
fn records(
    path: &Path,
    expected: &[&str],
    rows: &mut Rows<'_>,
) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut reader = csv_reader(open(path)?);
    let header = reader.headers().map_err(|e| Error::Parse {
        path: rows.path.clone(),
        line: 1,
        message: e.to_string(),
    })?;
    let got: Vec<&str> = header.iter().collect();
    if got != expected {
        return Err(Error::Parse {
            path: rows.path.clone(),
            line: 1,
            message: format!(
                "expected header `{}`, found `{}`",
                expected.join(","),
                got.join(",")
            ),
        });
    }
    let mut out = Vec::new();
    for rec in reader.records() {
        match rec {
            Ok(r) => {
                let line = r.position().map_or(0, |p| p.line());
                if r.len() != expected.len() {
                    rows.reject(
                        line,
                        format!("expected {} fields, found {}", expected.len(), r.len()),
                    )?;
                    continue;
                }
                out.push((line, r));
            }
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                rows.reject(line, e.to_string())?;
            }
        }
    }
    Ok(out)
}

fn parse_field<T: std::str::FromStr>(raw: &str, what: &str) -> std::result::Result<T, String> {
    raw.parse().map_err(|_| format!("invalid {what} `{raw}`"))
}

fn parse_bool(raw: &str) -> std::result::Result<bool, String> {
    match raw.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "y" => Ok(true),
        "false" | "no" | "0" | "n" => Ok(false),
        _ => Err(format!("invalid flag `{raw}`")),
    }
}

fn parse_rank(raw: &str) -> std::result::Result<Option<u32>, String> {
    if raw.is_empty() {
        return Ok(None);
    }
    let r: u32 = parse_field(raw, "rank")?;
    if r == 0 {
        return Err("rank must be at least 1".into());
    }
    Ok(Some(r))
}

fn parse_doc(rec: &csv::StringRecord) -> std::result::Result<DocumentRecord, String> {
    let authors = if rec[5].is_empty() {
        Vec::new()
    } else {
        rec[5].split(';').map(|a| a.trim().to_string()).collect()
    };
    let doc = DocumentRecord {
        id: rec[0].to_string(),
        venue: rec[1].to_string(),
        year: parse_field(&rec[2], "year")?,
        doc_type: rec[3].parse().map_err(|e: Error| e.to_string())?,
        cites: parse_field(&rec[4], "cites")?,
        authors,
    };
    doc.validate().map_err(|e| e.to_string())?;
    Ok(doc)
}

pub const EDGES_HEADER: [&str; 2] = ["citing_id", "cited_id"];
pub const DOCS_HEADER: [&str; 6] = ["id", "venue", "year", "doc_type", "cites", "authors"];
pub const RANKS_HEADER: [&str; 5] = ["journal", "year", "indexed", "tc_rank", "if_rank"];
pub const PROFILE_HEADER: [&str; 1] = ["cites"];
pub const COUNTS_HEADER: [&str; 2] = ["id", "count"];
pub const PAIRS_HEADER: [&str; 2] = ["x", "y"];
pub const SUBJECTS_HEADER: [&str; 3] = ["subject", "year", "author"];
pub const SAMPLE_HEADER: [&str; 4] = ["subject", "year", "position", "doc_id"];

fn display(path: &Path) -> String {
    path.display().to_string()
}

/// `(line, citing, cited)` triples.
pub fn read_edges(
    path: &Path,
    strict: bool,
    report: &mut LoadReport,
) -> Result<Vec<(u64, String, String)>> {
    let mut rows = Rows {
        path: display(path),
        strict,
        report,
    };
    let mut out = Vec::new();
    for (line, rec) in records(path, &EDGES_HEADER, &mut rows)? {
        if rec[0].is_empty() || rec[1].is_empty() {
            rows.reject(line, "empty id".into())?;
            continue;
        }
        out.push((line, rec[0].to_string(), rec[1].to_string()));
    }
    Ok(out)
}

pub fn read_docs(
    path: &Path,
    strict: bool,
    report: &mut LoadReport,
) -> Result<Vec<DocumentRecord>> {
    let mut rows = Rows {
        path: display(path),
        strict,
        report,
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (line, rec) in records(path, &DOCS_HEADER, &mut rows)? {
        match parse_doc(&rec) {
            Ok(doc) if !seen.insert(doc.id.clone()) => {
                rows.reject(line, format!("duplicate document id `{}`", doc.id))?;
            }
            Ok(doc) => out.push(doc),
            Err(msg) => rows.reject(line, msg)?,
        }
    }
    Ok(out)
}

pub fn read_rank_records(
    path: &Path,
    strict: bool,
    report: &mut LoadReport,
) -> Result<Vec<RankRecord>> {
    let mut rows = Rows {
        path: display(path),
        strict,
        report,
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (line, rec) in records(path, &RANKS_HEADER, &mut rows)? {
        let parsed = (|| -> std::result::Result<RankRecord, String> {
            let r = RankRecord {
                journal: rec[0].to_string(),
                year: parse_field(&rec[1], "year")?,
                indexed: parse_bool(&rec[2])?,
                tc_rank: parse_rank(&rec[3])?,
                if_rank: parse_rank(&rec[4])?,
            };
            if r.journal.is_empty() {
                return Err("empty journal".into());
            }
            r.validate().map_err(|e| e.to_string())?;
            Ok(r)
        })();
        match parsed {
            Ok(r) if !seen.insert((r.journal.clone(), r.year)) => {
                rows.reject(
                    line,
                    format!("duplicate record for `{}` in {}", r.journal, r.year),
                )?;
            }
            Ok(r) => out.push(r),
            Err(msg) => rows.reject(line, msg)?,
        }
    }
    Ok(out)
}

pub fn read_profile(path: &Path, strict: bool, report: &mut LoadReport) -> Result<Vec<u64>> {
    let mut rows = Rows {
        path: display(path),
        strict,
        report,
    };
    let mut out = Vec::new();
    for (line, rec) in records(path, &PROFILE_HEADER, &mut rows)? {
        match parse_field(&rec[0], "count") {
            Ok(c) => out.push(c),
            Err(msg) => rows.reject(line, msg)?,
        }
    }
    Ok(out)
}

pub fn read_counts(
    path: &Path,
    strict: bool,
    report: &mut LoadReport,
) -> Result<Vec<(String, u64)>> {
    let mut rows = Rows {
        path: display(path),
        strict,
        report,
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (line, rec) in records(path, &COUNTS_HEADER, &mut rows)? {
        match parse_field::<u64>(&rec[1], "count") {
            Ok(_) if rec[0].is_empty() => rows.reject(line, "empty id".into())?,
            Ok(_) if !seen.insert(rec[0].to_string()) => {
                rows.reject(line, format!("duplicate id `{}`", &rec[0]))?
            }
            Ok(c) => out.push((rec[0].to_string(), c)),
            Err(msg) => rows.reject(line, msg)?,
        }
    }
    Ok(out)
}

pub fn read_pairs(
    path: &Path,
    strict: bool,
    report: &mut LoadReport,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rows = Rows {
        path: display(path),
        strict,
        report,
    };
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (line, rec) in records(path, &PAIRS_HEADER, &mut rows)? {
        let parsed = parse_field::<f64>(&rec[0], "x").and_then(|x| {
            let y = parse_field::<f64>(&rec[1], "y")?;
            if x.is_finite() && y.is_finite() {
                Ok((x, y))
            } else {
                Err("non-finite value".to_string())
            }
        });
        match parsed {
            Ok((x, y)) => {
                xs.push(x);
                ys.push(y);
            }
            Err(msg) => rows.reject(line, msg)?,
        }
    }
    Ok((xs, ys))
}

pub fn read_subjects(path: &Path, strict: bool, report: &mut LoadReport) -> Result<Vec<Subject>> {
    let mut rows = Rows {
        path: display(path),
        strict,
        report,
    };
    let mut out = Vec::new();
    for (line, rec) in records(path, &SUBJECTS_HEADER, &mut rows)? {
        match parse_field::<i32>(&rec[1], "year") {
            Ok(_) if rec[0].is_empty() || rec[2].is_empty() => {
                rows.reject(line, "empty subject or author".into())?
            }
            Ok(year) => out.push(Subject {
                name: rec[0].to_string(),
                prize_year: year,
                author: rec[2].to_string(),
            }),
            Err(msg) => rows.reject(line, msg)?,
        }
    }
    Ok(out)
}

pub fn read_sample(path: &Path, strict: bool, report: &mut LoadReport) -> Result<Vec<SampleEntry>> {
    let mut rows = Rows {
        path: display(path),
        strict,
        report,
    };
    let mut out = Vec::new();
    for (line, rec) in records(path, &SAMPLE_HEADER, &mut rows)? {
        let parsed = parse_field::<i32>(&rec[1], "year").and_then(|year| {
            let position: usize = parse_field(&rec[2], "position")?;
            if position == 0 || rec[0].is_empty() || rec[3].is_empty() {
                return Err("empty field or zero position".to_string());
            }
            Ok(SampleEntry {
                subject: rec[0].to_string(),
                year,
                position,
                doc_id: rec[3].to_string(),
            })
        });
        match parsed {
            Ok(e) => out.push(e),
            Err(msg) => rows.reject(line, msg)?,
        }
    }
    Ok(out)
}

/// Journal matrix: a label column holding row journal ids, one column per
/// journal in the same order as the rows, and a trailing `pubs` column.
/// Matrix rows are all-or-nothing, so malformed content is always an error.
pub fn read_journal_matrix(path: &Path) -> Result<JournalCitationMatrix> {
    let p = display(path);
    let err = |line: u64, message: String| Error::Parse {
        path: p.clone(),
        line,
        message,
    };
    let mut reader = csv_reader(open(path)?);
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| err(1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.len() < 2 || header.last().map(String::as_str) != Some("pubs") {
        return Err(err(1, "header must be `<label>,<journals...>,pubs`".into()));
    }
    let journals: Vec<String> = header[1..header.len() - 1].to_vec();
    let n = journals.len();
    let mut counts = Vec::with_capacity(n);
    let mut pubs = Vec::with_capacity(n);
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != n + 2 {
            return Err(err(
                line,
                format!("expected {} fields, found {}", n + 2, rec.len()),
            ));
        }
        if i >= n || rec[0] != journals[i] {
            return Err(err(
                line,
                format!("row journal `{}` does not match column order", &rec[0]),
            ));
        }
        let row: std::result::Result<Vec<u64>, String> =
            (1..=n).map(|j| parse_field(&rec[j], "count")).collect();
        counts.push(row.map_err(|m| err(line, m))?);
        pubs.push(parse_field(&rec[n + 1], "pubs").map_err(|m| err(line, m))?);
    }
    if counts.len() != n {
        return Err(err(0, format!("{} rows for {n} journals", counts.len())));
    }
    JournalCitationMatrix::new(journals, counts, pubs, None)
}

/// Input file locations; every file is optional.
#[derive(Debug, Clone, Default)]
pub struct CorpusPaths {
    pub edges: Option<PathBuf>,
    pub docs: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
    pub ranks: Option<PathBuf>,
    pub profile: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Fail on the first malformed row instead of skipping it.
    pub strict: bool,
    pub allow_self_loops: bool,
}

/// Validated in-memory corpus.
#[derive(Debug, Clone, Default)]
pub struct CorpusBundle {
    pub edges: Vec<(String, String)>,
    pub docs: Vec<DocumentRecord>,
    pub matrix: Option<JournalCitationMatrix>,
    pub ranks: Vec<RankRecord>,
    pub profile: Vec<u64>,
    pub report: LoadReport,
    allow_self_loops: bool,
}

impl CorpusBundle {
    pub fn graph(&self) -> Result<CitationGraph> {
        CitationGraph::build(
            self.edges.iter().cloned(),
            self.docs.iter().cloned(),
            self.allow_self_loops,
        )
    }
}

/// Loads and cross-validates the given files. When a documents file is
/// present every edge endpoint must resolve to a document.
pub fn load_corpus(paths: &CorpusPaths, options: LoadOptions) -> Result<CorpusBundle> {
    let mut report = LoadReport::default();
    let strict = options.strict;
    let docs = match &paths.docs {
        Some(p) => read_docs(p, strict, &mut report)?,
        None => Vec::new(),
    };
    let mut edges = Vec::new();
    if let Some(p) = &paths.edges {
        let known: HashSet<&str> = docs.iter().map(|d| d.id.as_str()).collect();
        let raw = read_edges(p, strict, &mut report)?;
        let mut rows = Rows {
            path: display(p),
            strict,
            report: &mut report,
        };
        for (line, a, b) in raw {
            if a == b && !options.allow_self_loops {
                rows.reject(line, format!("self-citation `{a}`"))?;
                continue;
            }
            if paths.docs.is_some() {
                if let Some(missing) = [&a, &b].into_iter().find(|id| !known.contains(id.as_str()))
                {
                    rows.reject(line, format!("id `{missing}` has no document record"))?;
                    continue;
                }
            }
            edges.push((a, b));
        }
    }
    let matrix = paths
        .matrix
        .as_deref()
        .map(read_journal_matrix)
        .transpose()?;
    let ranks = match &paths.ranks {
        Some(p) => read_rank_records(p, strict, &mut report)?,
        None => Vec::new(),
    };
    let profile = match &paths.profile {
        Some(p) => read_profile(p, strict, &mut report)?,
        None => Vec::new(),
    };
    Ok(CorpusBundle {
        edges,
        docs,
        matrix,
        ranks,
        profile,
        report,
        allow_self_loops: options.allow_self_loops,
    })
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: "<output>".into(),
        message: e.to_string(),
    }
}

/// Writes the edge list, one line per unit of multiplicity.
pub fn write_edges<W: Write>(graph: &CitationGraph, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(EDGES_HEADER).map_err(io_err)?;
    for (a, b, m) in graph.edges() {
        for _ in 0..m {
            w.write_record([a, b]).map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)
}

pub fn write_docs<'a, W: Write>(
    docs: impl IntoIterator<Item = &'a DocumentRecord>,
    out: W,
) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(DOCS_HEADER).map_err(io_err)?;
    for d in docs {
        w.write_record([
            d.id.clone(),
            d.venue.clone(),
            d.year.to_string(),
            d.doc_type.to_string(),
            d.cites.to_string(),
            d.authors.join(";"),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn write_sample<W: Write>(entries: &[SampleEntry], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(SAMPLE_HEADER).map_err(io_err)?;
    for e in entries {
        w.write_record([
            e.subject.clone(),
            e.year.to_string(),
            e.position.to_string(),
            e.doc_id.clone(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

//! Citation graph and journal citation matrix.
//!
//! A [`CitationGraph`] is a directed multigraph over document ids with an
//! edge from the citing document to the cited one. Node ids are kept sorted,
//! so two graphs built from the same edges in any order compare equal.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocType {
    Article,
    Review,
    Book,
    Proceedings,
    Other,
}

impl DocType {
    pub const ALL: [DocType; 5] = [
        DocType::Article,
        DocType::Review,
        DocType::Book,
        DocType::Proceedings,
        DocType::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DocType::Article => "article",
            DocType::Review => "review",
            DocType::Book => "book",
            DocType::Proceedings => "proceedings",
            DocType::Other => "other",
        }
    }

    /// Articles and reviews both appear in journals.
    pub fn is_journal_item(self) -> bool {
        matches!(self, DocType::Article | DocType::Review)
    }
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DocType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "article" => Ok(DocType::Article),
            "review" => Ok(DocType::Review),
            "book" => Ok(DocType::Book),
            "proceedings" => Ok(DocType::Proceedings),
            "other" => Ok(DocType::Other),
            other => Err(Error::InvalidParameter(format!(
                "unknown doc_type `{other}`"
            ))),
        }
    }
}

/// Bibliographic metadata for one document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub id: String,
    pub venue: String,
    pub year: i32,
    /// Byline order; position 1 is the primary author.
    pub authors: Vec<String>,
    pub doc_type: DocType,
    /// Externally supplied citation count.
    pub cites: u64,
}

impl DocumentRecord {
    pub fn validate(&self) -> Result<()> {
        if self.id.is_empty() {
            return Err(Error::EmptyId);
        }
        let invalid = |reason: &str| Error::InvalidDocument {
            id: self.id.clone(),
            reason: reason.to_string(),
        };
        if self.year <= 0 {
            return Err(invalid("year must be positive"));
        }
        if self.authors.iter().any(|a| a.trim().is_empty()) {
            return Err(invalid("empty author name"));
        }
        Ok(())
    }
}

/// Citing year plus the inclusive range of publication years of the cited items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeWindow {
    pub cite_year: i32,
    pub source_start: i32,
    pub source_end: i32,
}

impl TimeWindow {
    pub fn new(cite_year: i32, source_start: i32, source_end: i32) -> Result<Self> {
        if source_start > source_end || source_end > cite_year {
            return Err(Error::InvalidWindow {
                cite_year,
                start: source_start,
                end: source_end,
            });
        }
        Ok(TimeWindow {
            cite_year,
            source_start,
            source_end,
        })
    }

    /// The two years preceding `cite_year`.
    pub fn impact_factor(cite_year: i32) -> Self {
        TimeWindow {
            cite_year,
            source_start: cite_year - 2,
            source_end: cite_year - 1,
        }
    }

    pub fn contains_source(&self, year: i32) -> bool {
        (self.source_start..=self.source_end).contains(&year)
    }
}

/// Compressed adjacency for one direction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Adjacency {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    multiplicity: Vec<u32>,
}

impl Adjacency {
    fn from_sorted(n: usize, pairs: &[((usize, usize), u32)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &((from, _), _) in pairs {
            offsets[from + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Adjacency {
            offsets,
            neighbors: pairs.iter().map(|&((_, to), _)| to).collect(),
            multiplicity: pairs.iter().map(|&(_, m)| m).collect(),
        }
    }

    fn row(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        let span = self.offsets[i]..self.offsets[i + 1];
        self.neighbors[span.clone()]
            .iter()
            .copied()
            .zip(self.multiplicity[span].iter().copied())
    }
}

/// Immutable directed citation multigraph.
#[derive(Debug, Clone, PartialEq)]
pub struct CitationGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    out_adj: Adjacency,
    in_adj: Adjacency,
    out_weight: Vec<u64>,
    in_weight: Vec<u64>,
    edge_total: u64,
    docs: Vec<Option<DocumentRecord>>,
    allow_self_loops: bool,
}

impl CitationGraph {
    /// Builds a graph from `(citing, cited)` pairs and optional metadata.
    ///
    /// Repeated pairs accumulate multiplicity. Nodes are the union of edge
    /// endpoints and document ids.
    pub fn build<I, S>(
        edges: I,
        docs: impl IntoIterator<Item = DocumentRecord>,
        allow_self_loops: bool,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut by_id: BTreeMap<String, DocumentRecord> = BTreeMap::new();
        for doc in docs {
            doc.validate()?;
            if by_id.contains_key(&doc.id) {
                return Err(Error::DuplicateDocument(doc.id));
            }
            by_id.insert(doc.id.clone(), doc);
        }

        let mut raw: BTreeMap<(String, String), u32> = BTreeMap::new();
        for (citing, cited) in edges {
            let (citing, cited) = (citing.as_ref(), cited.as_ref());
            if citing.is_empty() || cited.is_empty() {
                return Err(Error::EmptyId);
            }
            if citing == cited && !allow_self_loops {
                return Err(Error::SelfLoop(citing.to_string()));
            }
            *raw.entry((citing.to_string(), cited.to_string()))
                .or_insert(0) += 1;
        }

        let mut node_set: BTreeSet<&str> = by_id.keys().map(String::as_str).collect();
        for (a, b) in raw.keys() {
            node_set.insert(a);
            node_set.insert(b);
        }
        let ids: Vec<String> = node_set.into_iter().map(str::to_string).collect();
        let index: HashMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        let n = ids.len();

        let mut forward: Vec<((usize, usize), u32)> = raw
            .iter()
            .map(|((a, b), &m)| ((index[a], index[b]), m))
            .collect();
        forward.sort_unstable();
        let mut backward: Vec<((usize, usize), u32)> =
            forward.iter().map(|&((a, b), m)| ((b, a), m)).collect();
        backward.sort_unstable();

        let mut out_weight = vec![0u64; n];
        let mut in_weight = vec![0u64; n];
        for &((a, b), m) in &forward {
            out_weight[a] += u64::from(m);
            in_weight[b] += u64::from(m);
        }
        let edge_total = out_weight.iter().sum();
        let docs = ids.iter().map(|id| by_id.remove(id)).collect();

        Ok(CitationGraph {
            out_adj: Adjacency::from_sorted(n, &forward),
            in_adj: Adjacency::from_sorted(n, &backward),
            ids,
            index,
            out_weight,
            in_weight,
            edge_total,
            docs,
            allow_self_loops,
        })
    }

    /// Edge-only construction with self-loops rejected.
    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        Self::build(edges, std::iter::empty(), false)
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    /// Total multiplicity over all edges.
    pub fn edge_count(&self) -> u64 {
        self.edge_total
    }

    pub fn distinct_edge_count(&self) -> usize {
        self.out_adj.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn allows_self_loops(&self) -> bool {
        self.allow_self_loops
    }

    /// Node ids in ascending order; positions are the node indices.
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    /// Number of citations received, counting multiplicity.
    pub fn in_degree(&self, id: &str) -> Result<u64> {
        Ok(self.in_weight[self.require(id)?])
    }

    /// Number of references given, counting multiplicity.
    pub fn out_degree(&self, id: &str) -> Result<u64> {
        Ok(self.out_weight[self.require(id)?])
    }

    pub fn in_degree_at(&self, node: usize) -> u64 {
        self.in_weight[node]
    }

    pub fn out_degree_at(&self, node: usize) -> u64 {
        self.out_weight[node]
    }

    pub fn multiplicity(&self, citing: &str, cited: &str) -> u32 {
        match (self.index_of(citing), self.index_of(cited)) {
            (Some(a), Some(b)) => self
                .out_adj
                .row(a)
                .find(|&(t, _)| t == b)
                .map_or(0, |(_, m)| m),
            _ => 0,
        }
    }

    /// `(cited index, multiplicity)` for every reference of `node`, ascending.
    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.out_adj.row(node)
    }

    /// `(citing index, multiplicity)` for every citation of `node`, ascending.
    pub fn in_edges(&self, node: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.in_adj.row(node)
    }

    /// Distinct edges as `(citing, cited, multiplicity)` in id order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u32)> + '_ {
        (0..self.ids.len()).flat_map(move |a| {
            self.out_adj
                .row(a)
                .map(move |(b, m)| (self.ids[a].as_str(), self.ids[b].as_str(), m))
        })
    }

    pub fn doc(&self, id: &str) -> Option<&DocumentRecord> {
        self.index_of(id).and_then(|i| self.docs[i].as_ref())
    }

    pub fn doc_at(&self, node: usize) -> Option<&DocumentRecord> {
        self.docs[node].as_ref()
    }

    pub fn docs(&self) -> impl Iterator<Item = &DocumentRecord> + '_ {
        self.docs.iter().flatten()
    }

    /// Collapses document-level citations into a journal-to-journal matrix.
    ///
    /// `C[i][j]` counts references from journal-`i` documents published in
    /// `window.cite_year` to journal-`j` documents published in the source
    /// years. Journals without any source-year publication are dropped and
    /// listed in the result.
    pub fn aggregate_to_journal_matrix(
        &self,
        window: TimeWindow,
        exclude_self_citations: bool,
    ) -> Result<Aggregation> {
        for (a, b, _) in self.edges() {
            for id in [a, b] {
                if self.doc(id).is_none() {
                    return Err(Error::MissingMetadata(id.to_string()));
                }
            }
        }

        let mut pubs: BTreeMap<&str, u64> = BTreeMap::new();
        for doc in self.docs() {
            let entry = pubs.entry(doc.venue.as_str()).or_insert(0);
            if window.contains_source(doc.year) {
                *entry += 1;
            }
        }
        let dropped: Vec<String> = pubs
            .iter()
            .filter(|&(_, &p)| p == 0)
            .map(|(j, _)| j.to_string())
            .collect();
        let journals: Vec<String> = pubs
            .iter()
            .filter(|&(_, &p)| p > 0)
            .map(|(j, _)| j.to_string())
            .collect();
        let pos: HashMap<&str, usize> = journals
            .iter()
            .enumerate()
            .map(|(i, j)| (j.as_str(), i))
            .collect();
        let n = journals.len();

        let mut counts = vec![vec![0u64; n]; n];
        let mut dropped_references = 0u64;
        for (node, citing) in self.docs.iter().enumerate() {
            let Some(citing) = citing else { continue };
            if citing.year != window.cite_year {
                continue;
            }
            for (target, m) in self.out_adj.row(node) {
                let cited = self.docs[target].as_ref().expect("checked above");
                if !window.contains_source(cited.year) {
                    continue;
                }
                let j = pos[cited.venue.as_str()];
                match pos.get(citing.venue.as_str()) {
                    Some(&i) if exclude_self_citations && i == j => {}
                    Some(&i) => counts[i][j] += u64::from(m),
                    None => dropped_references += u64::from(m),
                }
            }
        }

        let pub_counts = journals.iter().map(|j| pubs[j.as_str()]).collect();
        Ok(Aggregation {
            matrix: JournalCitationMatrix::new(journals, counts, pub_counts, Some(window))?,
            dropped,
            dropped_references,
        })
    }
}

/// Result of [`CitationGraph::aggregate_to_journal_matrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregation {
    pub matrix: JournalCitationMatrix,
    /// Journals with no publication in the source years.
    pub dropped: Vec<String>,
    /// In-window references whose citing journal was dropped.
    pub dropped_references: u64,
}

/// Square journal-to-journal reference counts with publication counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JournalCitationMatrix {
    journals: Vec<String>,
    counts: Vec<u64>,
    pubs: Vec<u64>,
    window: Option<TimeWindow>,
}

impl JournalCitationMatrix {
    pub fn new(
        journals: Vec<String>,
        counts: Vec<Vec<u64>>,
        pubs: Vec<u64>,
        window: Option<TimeWindow>,
    ) -> Result<Self> {
        let n = journals.len();
        let mut seen = BTreeSet::new();
        for j in &journals {
            if j.is_empty() {
                return Err(Error::EmptyId);
            }
            if !seen.insert(j.as_str()) {
                return Err(Error::InvalidMatrix(format!("duplicate journal `{j}`")));
            }
        }
        if counts.len() != n || counts.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMatrix(format!("counts must be {n}x{n}")));
        }
        if pubs.len() != n {
            return Err(Error::InvalidMatrix(format!(
                "{} publication counts for {n} journals",
                pubs.len()
            )));
        }
        if let Some(i) = pubs.iter().position(|&p| p == 0) {
            return Err(Error::InvalidMatrix(format!(
                "journal `{}` has zero publications",
                journals[i]
            )));
        }
        Ok(JournalCitationMatrix {
            journals,
            counts: counts.into_iter().flatten().collect(),
            pubs,
            window,
        })
    }

    pub fn len(&self) -> usize {
        self.journals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.journals.is_empty()
    }

    pub fn journals(&self) -> &[String] {
        &self.journals
    }

    pub fn pubs(&self) -> &[u64] {
        &self.pubs
    }

    pub fn window(&self) -> Option<TimeWindow> {
        self.window
    }

    pub fn index_of(&self, journal: &str) -> Option<usize> {
        self.journals.iter().position(|j| j == journal)
    }

    /// References from journal `citing` to journal `cited`.
    pub fn get(&self, citing: usize, cited: usize) -> u64 {
        self.counts[citing * self.len() + cited]
    }

    pub fn row(&self, citing: usize) -> &[u64] {
        let n = self.len();
        &self.counts[citing * n..(citing + 1) * n]
    }

    /// References given by journal `i`.
    pub fn references_given(&self, i: usize) -> u64 {
        self.row(i).iter().sum()
    }

    /// Citations received by journal `j`.
    pub fn citations_received(&self, j: usize) -> u64 {
        (0..self.len()).map(|i| self.get(i, j)).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Same matrix with the diagonal (journal self-citations) zeroed.
    pub fn without_self_citations(&self) -> Self {
        let mut out = self.clone();
        let n = self.len();
        for i in 0..n {
            out.counts[i * n + i] = 0;
        }
        out
    }

    /// Row-major copy of the counts.
    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.len()).map(|i| self.row(i).to_vec()).collect()
    }
}

//! Sampling and tabulation for validating citation rankings against a
//! researcher's most-cited works.
//!
//! The workflow: rank a subject's works by citation count, take the h-core,
//! draw every k-th work from the top, resolve each sampled work's journal to
//! its total-cites and impact-factor rank in the year of publication, and
//! tabulate. A separate table records where the subject sits in each byline.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DocType, DocumentRecord};
use crate::journal::h_index;
use crate::report::Report;

/// Lowercased, trimmed, internal whitespace collapsed.
pub fn normalize_name(name: &str) -> String {
    name.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// A one-decimal percentage, stored in tenths of a percent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Percent(pub u64);

impl Percent {
    /// `100 * count / denominator`, rounded half up; `None` for an empty
    /// denominator.
    pub fn of(count: u64, denominator: u64) -> Option<Percent> {
        (denominator > 0).then(|| Percent((2000 * count + denominator) / (2 * denominator)))
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 10.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}%", self.0 / 10, self.0 % 10)
    }
}

/// Median of integer data, stored doubled so that midpoints stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Median(pub u64);

impl Median {
    pub fn of(values: &[u64]) -> Option<Median> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_unstable();
        let n = v.len();
        Some(if n % 2 == 1 {
            Median(2 * v[n / 2])
        } else {
            Median(v[n / 2 - 1] + v[n / 2])
        })
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for Median {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

fn show<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

/// A journal's standing in an annual ranking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRecord {
    pub journal: String,
    pub year: i32,
    pub indexed: bool,
    pub tc_rank: Option<u32>,
    pub if_rank: Option<u32>,
}

impl RankRecord {
    pub fn validate(&self) -> Result<()> {
        if self.tc_rank == Some(0) || self.if_rank == Some(0) {
            return Err(Error::OutOfRange(format!(
                "rank 0 for `{}` in {}",
                self.journal, self.year
            )));
        }
        if !self.indexed && (self.tc_rank.is_some() || self.if_rank.is_some()) {
            return Err(Error::InvalidParameter(format!(
                "`{}` in {} is ranked but not indexed",
                self.journal, self.year
            )));
        }
        Ok(())
    }

    pub fn rank(&self, measure: Measure) -> Option<u32> {
        if !self.indexed {
            return None;
        }
        match measure {
            Measure::TotalCites => self.tc_rank,
            Measure::ImpactFactor => self.if_rank,
        }
    }
}

/// Rank records keyed by `(journal, year)`.
#[derive(Debug, Clone, Default)]
pub struct RankIndex {
    records: HashMap<(String, i32), RankRecord>,
}

impl RankIndex {
    pub fn new(records: impl IntoIterator<Item = RankRecord>) -> Result<Self> {
        let mut map = HashMap::new();
        for r in records {
            r.validate()?;
            let key = (r.journal.clone(), r.year);
            if map.contains_key(&key) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate rank record for `{}` in {}",
                    r.journal, r.year
                )));
            }
            map.insert(key, r);
        }
        Ok(RankIndex { records: map })
    }

    pub fn get(&self, journal: &str, year: i32) -> Option<&RankRecord> {
        self.records.get(&(journal.to_string(), year))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Measure {
    TotalCites,
    ImpactFactor,
}

impl Measure {
    pub fn label(self) -> &'static str {
        match self {
            Measure::TotalCites => "Total Cites",
            Measure::ImpactFactor => "Impact Factor",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RankBucket {
    Top500,
    From501To1000,
    Below1000,
    NotIndexed,
}

impl RankBucket {
    pub const RANKED: [RankBucket; 3] = [
        RankBucket::Top500,
        RankBucket::From501To1000,
        RankBucket::Below1000,
    ];
}

pub fn bucket(rank: Option<u32>) -> Result<RankBucket> {
    match rank {
        None => Ok(RankBucket::NotIndexed),
        Some(0) => Err(Error::OutOfRange("rank must be at least 1".into())),
        Some(1..=500) => Ok(RankBucket::Top500),
        Some(501..=1000) => Ok(RankBucket::From501To1000),
        Some(_) => Ok(RankBucket::Below1000),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AuthorshipClass {
    Primary,
    SecondToFifth,
    SixthToTenth,
    EleventhOrLower,
}

impl AuthorshipClass {
    pub const ALL: [AuthorshipClass; 4] = [
        AuthorshipClass::Primary,
        AuthorshipClass::SecondToFifth,
        AuthorshipClass::SixthToTenth,
        AuthorshipClass::EleventhOrLower,
    ];

    pub fn from_position(position: usize) -> AuthorshipClass {
        match position {
            0 | 1 => AuthorshipClass::Primary,
            2..=5 => AuthorshipClass::SecondToFifth,
            6..=10 => AuthorshipClass::SixthToTenth,
            _ => AuthorshipClass::EleventhOrLower,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// 1-based byline position of `author` on `doc` and its class.
pub fn authorship_position(doc: &DocumentRecord, author: &str) -> Result<(usize, AuthorshipClass)> {
    let key = normalize_name(author);
    doc.authors
        .iter()
        .position(|a| normalize_name(a) == key)
        .map(|i| (i + 1, AuthorshipClass::from_position(i + 1)))
        .ok_or_else(|| Error::AuthorNotFound {
            author: author.to_string(),
            doc: doc.id.clone(),
        })
}

fn check_ranked(docs: &[&DocumentRecord]) -> Result<()> {
    for (i, w) in docs.windows(2).enumerate() {
        let ordered = w[0].cites > w[1].cites || (w[0].cites == w[1].cites && w[0].id < w[1].id);
        if !ordered {
            return Err(Error::Unsorted(i + 2));
        }
    }
    Ok(())
}

/// Sorts by cites descending, ties by id.
pub fn rank_by_cites<'a>(
    docs: impl IntoIterator<Item = &'a DocumentRecord>,
) -> Vec<&'a DocumentRecord> {
    let mut v: Vec<&DocumentRecord> = docs.into_iter().collect();
    v.sort_by(|a, b| b.cites.cmp(&a.cites).then_with(|| a.id.cmp(&b.id)));
    v
}

/// Items at 1-based positions `1, 1 + k, 1 + 2k, ...` of a list already
/// ranked by [`rank_by_cites`]. Returns `(position, item)` pairs.
pub fn stratified_every_kth<'a>(
    ranked: &[&'a DocumentRecord],
    k: usize,
) -> Result<Vec<(usize, &'a DocumentRecord)>> {
    stratified_from(ranked, k, 0)
}

/// Like [`stratified_every_kth`] with the starting offset drawn from
/// `0..k` by a seeded generator.
pub fn stratified_random_offset<'a>(
    ranked: &[&'a DocumentRecord],
    k: usize,
    seed: u64,
) -> Result<Vec<(usize, &'a DocumentRecord)>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let offset = ChaCha8Rng::seed_from_u64(seed).gen_range(0..k);
    stratified_from(ranked, k, offset)
}

fn stratified_from<'a>(
    ranked: &[&'a DocumentRecord],
    k: usize,
    offset: usize,
) -> Result<Vec<(usize, &'a DocumentRecord)>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    check_ranked(ranked)?;
    Ok(ranked
        .iter()
        .enumerate()
        .skip(offset)
        .step_by(k)
        .map(|(i, d)| (i + 1, *d))
        .collect())
}

/// A researcher whose works are studied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub name: String,
    pub prize_year: i32,
    /// Name as it appears in bylines.
    pub author: String,
}

/// Works bylined by `author`, ranked by cites.
pub fn works_of<'a>(docs: &'a [DocumentRecord], author: &str) -> Vec<&'a DocumentRecord> {
    let key = normalize_name(author);
    rank_by_cites(
        docs.iter()
            .filter(|d| d.authors.iter().any(|a| normalize_name(a) == key)),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum SamplePool {
    /// The `h` most-cited works.
    #[default]
    HCore,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingConfig {
    pub k: usize,
    pub pool: SamplePool,
    /// Types kept after sampling; positions are taken before this filter.
    pub keep: Vec<DocType>,
    /// Draw the starting offset at random instead of starting at the top.
    pub seed: Option<u64>,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            k: 3,
            pool: SamplePool::HCore,
            keep: vec![DocType::Article, DocType::Review],
            seed: None,
        }
    }
}

/// One sampled work, as written to a sample file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleEntry {
    pub subject: String,
    pub year: i32,
    /// 1-based position in the subject's cites ranking.
    pub position: usize,
    pub doc_id: String,
}

fn pool_of<'a>(
    docs: &'a [DocumentRecord],
    subject: &Subject,
    pool: SamplePool,
) -> Vec<&'a DocumentRecord> {
    let works = works_of(docs, &subject.author);
    match pool {
        SamplePool::All => works,
        SamplePool::HCore => {
            let counts: Vec<u64> = works.iter().map(|d| d.cites).collect();
            let h = h_index(&counts) as usize;
            works[..h].to_vec()
        }
    }
}

pub fn draw_samples(
    docs: &[DocumentRecord],
    subjects: &[Subject],
    config: &SamplingConfig,
) -> Result<Vec<SampleEntry>> {
    let mut out = Vec::new();
    for subject in subjects {
        let pool = pool_of(docs, subject, config.pool);
        let picked = match config.seed {
            Some(seed) => stratified_random_offset(&pool, config.k, seed)?,
            None => stratified_every_kth(&pool, config.k)?,
        };
        out.extend(
            picked
                .into_iter()
                .filter(|(_, d)| config.keep.contains(&d.doc_type))
                .map(|(position, d)| SampleEntry {
                    subject: subject.name.clone(),
                    year: subject.prize_year,
                    position,
                    doc_id: d.id.clone(),
                }),
        );
    }
    Ok(out)
}

/// Every work of the subject's h-core with its position.
pub fn h_core_entries(docs: &[DocumentRecord], subject: &Subject) -> Vec<SampleEntry> {
    pool_of(docs, subject, SamplePool::HCore)
        .into_iter()
        .enumerate()
        .map(|(i, d)| SampleEntry {
            subject: subject.name.clone(),
            year: subject.prize_year,
            position: i + 1,
            doc_id: d.id.clone(),
        })
        .collect()
}

/// A sampled work with its resolved document and journal rank.
#[derive(Debug, Clone, Copy)]
pub struct SampledWork<'a> {
    pub position: usize,
    pub doc: &'a DocumentRecord,
    pub rank: Option<&'a RankRecord>,
}

#[derive(Debug, Clone)]
pub struct SubjectSample<'a> {
    pub subject: String,
    pub prize_year: i32,
    pub author: Option<String>,
    pub works: Vec<SampledWork<'a>>,
}

/// Groups sample entries by subject (first-appearance order) and resolves
/// documents, rank records and byline names.
pub fn assemble<'a>(
    entries: &[SampleEntry],
    docs: &'a [DocumentRecord],
    ranks: Option<&'a RankIndex>,
    subjects: &[Subject],
) -> Result<Vec<SubjectSample<'a>>> {
    let by_id: HashMap<&str, &DocumentRecord> = docs.iter().map(|d| (d.id.as_str(), d)).collect();
    let mut out: Vec<SubjectSample<'a>> = Vec::new();
    for e in entries {
        let doc = *by_id
            .get(e.doc_id.as_str())
            .ok_or_else(|| Error::MissingMetadata(e.doc_id.clone()))?;
        let rank = ranks.and_then(|r| r.get(&doc.venue, doc.year));
        let work = SampledWork {
            position: e.position,
            doc,
            rank,
        };
        match out
            .iter_mut()
            .find(|s| s.subject == e.subject && s.prize_year == e.year)
        {
            Some(s) => s.works.push(work),
            None => out.push(SubjectSample {
                subject: e.subject.clone(),
                prize_year: e.year,
                author: subjects
                    .iter()
                    .find(|s| s.name == e.subject)
                    .map(|s| s.author.clone()),
                works: vec![work],
            }),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankBucketRow {
    pub subject: String,
    pub year: i32,
    pub sample_size: usize,
    pub indexed: u64,
    /// Top 500, 501-1000, below 1000.
    pub counts: [u64; 3],
    pub percents: [Option<Percent>; 3],
    pub median_rank: Option<Median>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankBucketTable {
    pub measure: Measure,
    pub rows: Vec<RankBucketRow>,
}

/// Distribution of sampled works over rank buckets of `measure`.
///
/// Percentages and the median are over works whose journal holds a rank in
/// the year of publication.
pub fn rank_bucket_table(
    samples: &[SubjectSample<'_>],
    measure: Measure,
) -> Result<RankBucketTable> {
    if samples.iter().all(|s| s.works.is_empty()) {
        return Err(Error::EmptySample);
    }
    let mut rows = Vec::with_capacity(samples.len());
    for s in samples {
        let mut counts = [0u64; 3];
        let mut ranks = Vec::new();
        for w in &s.works {
            let rank = w.rank.and_then(|r| r.rank(measure));
            let b = bucket(rank)?;
            if let Some(i) = RankBucket::RANKED.iter().position(|&x| x == b) {
                counts[i] += 1;
                ranks.push(u64::from(rank.expect("ranked bucket")));
            }
        }
        let indexed: u64 = counts.iter().sum();
        rows.push(RankBucketRow {
            subject: s.subject.clone(),
            year: s.prize_year,
            sample_size: s.works.len(),
            indexed,
            counts,
            percents: counts.map(|c| Percent::of(c, indexed)),
            median_rank: Median::of(&ranks),
        });
    }
    Ok(RankBucketTable { measure, rows })
}

impl RankBucketTable {
    pub fn to_report(&self) -> Report {
        let mut report = Report::new(
            format!(
                "Journal rankings by {}",
                self.measure.label().to_lowercase()
            ),
            [
                "Subject",
                "Year",
                "Sample Size",
                "Top 500",
                "% Top 500",
                "501 to 1000",
                "% 501 to 1000",
                "Below 1000",
                "% Below 1000",
                "Median Rank",
            ],
        );
        for r in &self.rows {
            report.push_row(vec![
                r.subject.clone(),
                r.year.to_string(),
                r.sample_size.to_string(),
                r.counts[0].to_string(),
                show(r.percents[0]),
                r.counts[1].to_string(),
                show(r.percents[1]),
                r.counts[2].to_string(),
                show(r.percents[2]),
                show(r.median_rank),
            ]);
            let missing = r.sample_size as u64 - r.indexed;
            if missing > 0 {
                report.note(format!(
                    "{}: {} of {} sampled works have no {} rank and are excluded from percentages and median",
                    r.subject,
                    missing,
                    r.sample_size,
                    self.measure.label().to_lowercase()
                ));
            }
        }
        report
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TcVsIfRow {
    pub subject: String,
    pub year: i32,
    pub sample_size: usize,
    pub indexed: u64,
    pub not_indexed: u64,
    pub percent_indexed: Option<Percent>,
    /// Works with both ranks present.
    pub both_ranked: u64,
    pub higher_by_tc: u64,
    pub higher_by_if: u64,
    pub ties: u64,
    pub percent_higher_by_tc: Option<Percent>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TcVsIfTable {
    pub rows: Vec<TcVsIfRow>,
}

/// How often the journal stands higher (numerically smaller rank) by total
/// cites than by impact factor. Ties count as not higher.
pub fn tc_vs_if_comparison(samples: &[SubjectSample<'_>]) -> Result<TcVsIfTable> {
    if samples.iter().all(|s| s.works.is_empty()) {
        return Err(Error::EmptySample);
    }
    let rows = samples
        .iter()
        .map(|s| {
            let indexed = s
                .works
                .iter()
                .filter(|w| w.rank.is_some_and(|r| r.indexed))
                .count() as u64;
            let (mut tc, mut iff, mut ties) = (0u64, 0u64, 0u64);
            for w in &s.works {
                let Some(r) = w.rank else { continue };
                if let (Some(t), Some(i)) =
                    (r.rank(Measure::TotalCites), r.rank(Measure::ImpactFactor))
                {
                    match t.cmp(&i) {
                        std::cmp::Ordering::Less => tc += 1,
                        std::cmp::Ordering::Greater => iff += 1,
                        std::cmp::Ordering::Equal => ties += 1,
                    }
                }
            }
            let both = tc + iff + ties;
            let n = s.works.len() as u64;
            TcVsIfRow {
                subject: s.subject.clone(),
                year: s.prize_year,
                sample_size: s.works.len(),
                indexed,
                not_indexed: n - indexed,
                percent_indexed: Percent::of(indexed, n),
                both_ranked: both,
                higher_by_tc: tc,
                higher_by_if: iff,
                ties,
                percent_higher_by_tc: Percent::of(tc, both),
            }
        })
        .collect();
    Ok(TcVsIfTable { rows })
}

impl TcVsIfTable {
    pub fn to_report(&self) -> Report {
        let mut report = Report::new(
            "Journals indexed and total cites rank vs. impact factor rank",
            [
                "Subject",
                "Year",
                "Sample Size",
                "Indexed",
                "Not Indexed",
                "% Indexed",
                "Higher by TC",
                "% Higher by TC",
                "Higher by IF",
                "Ties",
            ],
        );
        for r in &self.rows {
            report.push_row(vec![
                r.subject.clone(),
                r.year.to_string(),
                r.sample_size.to_string(),
                r.indexed.to_string(),
                r.not_indexed.to_string(),
                show(r.percent_indexed),
                r.higher_by_tc.to_string(),
                show(r.percent_higher_by_tc),
                r.higher_by_if.to_string(),
                r.ties.to_string(),
            ]);
            let excluded = r.sample_size as u64 - r.both_ranked;
            if excluded > 0 {
                report.note(format!(
                    "{}: % higher by TC is over the {} works ranked by both measures; {} excluded",
                    r.subject, r.both_ranked, excluded
                ));
            }
        }
        report
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum AuthorshipSubset {
    #[default]
    All,
    ReviewsOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuthorshipRow {
    pub subject: String,
    pub year: i32,
    pub works: usize,
    pub position_median: Option<Median>,
    pub authors_min: Option<usize>,
    pub authors_max: Option<usize>,
    pub authors_median: Option<Median>,
    pub counts: [u64; 4],
    pub percents: [Option<Percent>; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuthorshipTable {
    pub subset: AuthorshipSubset,
    pub rows: Vec<AuthorshipRow>,
    pub primary: u64,
    pub works: u64,
    pub overall_primary: Option<Percent>,
}

/// Byline positions of each subject across their sampled works.
///
/// The subject's byline name comes from [`SubjectSample::author`], falling
/// back to the subject name.
pub fn authorship_table(
    samples: &[SubjectSample<'_>],
    subset: AuthorshipSubset,
) -> Result<AuthorshipTable> {
    let mut rows = Vec::with_capacity(samples.len());
    let (mut primary, mut total) = (0u64, 0u64);
    for s in samples {
        let author = s.author.as_deref().unwrap_or(&s.subject);
        let works: Vec<&SampledWork<'_>> = s
            .works
            .iter()
            .filter(|w| subset == AuthorshipSubset::All || w.doc.doc_type == DocType::Review)
            .collect();
        let mut counts = [0u64; 4];
        for w in &works {
            let (_, class) = authorship_position(w.doc, author)?;
            counts[class.index()] += 1;
        }
        let sizes: Vec<u64> = works.iter().map(|w| w.doc.authors.len() as u64).collect();
        let positions: Vec<u64> = works.iter().map(|w| w.position as u64).collect();
        let n = works.len() as u64;
        primary += counts[0];
        total += n;
        rows.push(AuthorshipRow {
            subject: s.subject.clone(),
            year: s.prize_year,
            works: works.len(),
            position_median: Median::of(&positions),
            authors_min: works.iter().map(|w| w.doc.authors.len()).min(),
            authors_max: works.iter().map(|w| w.doc.authors.len()).max(),
            authors_median: Median::of(&sizes),
            counts,
            percents: counts.map(|c| Percent::of(c, n)),
        });
    }
    if total == 0 {
        return Err(Error::EmptySample);
    }
    Ok(AuthorshipTable {
        subset,
        rows,
        primary,
        works: total,
        overall_primary: Percent::of(primary, total),
    })
}

impl AuthorshipTable {
    pub fn to_report(&self) -> Report {
        let (title, noun) = match self.subset {
            AuthorshipSubset::All => ("Authorship pattern of sampled works", "works"),
            AuthorshipSubset::ReviewsOnly => {
                ("Authorship pattern of review articles", "review articles")
            }
        };
        let mut report = Report::new(
            title,
            [
                "Subject",
                "Year",
                "Works",
                "Rank Position Median",
                "Authors Range",
                "Authors Median",
                "Primary",
                "% Primary",
                "2nd to 5th",
                "% 2nd to 5th",
                "6th to 10th",
                "% 6th to 10th",
                "11th and Lower",
                "% 11th and Lower",
            ],
        );
        for r in &self.rows {
            let range = match (r.authors_min, r.authors_max) {
                (Some(lo), Some(hi)) => format!("{lo} to {hi}"),
                _ => "-".into(),
            };
            let mut row = vec![
                r.subject.clone(),
                r.year.to_string(),
                r.works.to_string(),
                show(r.position_median),
                range,
                show(r.authors_median),
            ];
            for (c, p) in r.counts.iter().zip(r.percents) {
                row.push(c.to_string());
                row.push(show(p));
            }
            report.push_row(row);
        }
        report.note(format!(
            "Primary author of the {noun}: {} of {} = {}",
            self.primary,
            self.works,
            show(self.overall_primary)
        ));
        report
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CorrelationMethod {
    Pearson,
    Spearman,
}

/// Pearson or Spearman coefficient of paired samples. Spearman assigns tied
/// values the average of the ranks they span.
pub fn rank_correlation(xs: &[f64], ys: &[f64], method: CorrelationMethod) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} x values, {} y values",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 3 {
        return Err(Error::UndefinedCorrelation("need at least 3 pairs".into()));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::UndefinedCorrelation("non-finite value".into()));
    }
    match method {
        CorrelationMethod::Pearson => pearson(xs, ys),
        CorrelationMethod::Spearman => pearson(&average_ranks(xs), &average_ranks(ys)),
    }
}

fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("zero variance".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// 1-based ranks, ties averaged.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &o in &order[i..=j] {
            ranks[o] = avg;
        }
        i = j + 1;
    }
    ranks
}

use std::path::Path;

use citegraph::concentration::{
    bradford_partition, count_above_threshold, journals_for_share, partition_by_yields,
    share_curve, stability_overlap, RankedCounts,
};
use citegraph::eigen::{hits, influence, pagerank, HitsParams, InfluenceParams, PageRankParams};
use citegraph::io::{self, load_corpus, CorpusPaths, LoadOptions, LoadReport};
use citegraph::journal::{
    h_core_summary, impact_factor_inputs, total_cites_by_journal, HCoreSummary, ItemFilter,
};
use citegraph::report::{fmt_score, Report};
use citegraph::study::{
    self, assemble, authorship_table, draw_samples, rank_bucket_table, rank_correlation,
    tc_vs_if_comparison, works_of, AuthorshipSubset, CorrelationMethod, Measure, Percent,
    RankIndex, SamplePool, SamplingConfig,
};
use citegraph::{
    CitationGraph, DocType, Error, Execution, JournalCitationMatrix, Result, ScoreVector,
    TimeWindow,
};

use crate::args::*;

/// A finished command: its report and whether every solver converged.
pub struct Outcome {
    pub name: &'static str,
    pub report: Report,
    pub converged: bool,
}

impl Outcome {
    fn done(name: &'static str, report: Report) -> Self {
        Outcome {
            name,
            report,
            converged: true,
        }
    }
}

pub struct Ctx {
    pub strict: bool,
    pub exec: Execution,
    pub warnings: LoadReport,
}

impl Ctx {
    fn graph(
        &mut self,
        edges: &Path,
        docs: Option<&Path>,
        allow_self_loops: bool,
    ) -> Result<CitationGraph> {
        let paths = CorpusPaths {
            edges: Some(edges.to_path_buf()),
            docs: docs.map(Path::to_path_buf),
            ..Default::default()
        };
        let bundle = load_corpus(
            &paths,
            LoadOptions {
                strict: self.strict,
                allow_self_loops,
            },
        )?;
        self.warnings
            .warnings
            .extend(bundle.report.warnings.iter().cloned());
        bundle.graph()
    }

    fn docs(&mut self, path: &Path) -> Result<Vec<citegraph::DocumentRecord>> {
        io::read_docs(path, self.strict, &mut self.warnings)
    }

    fn counts(&mut self, path: &Path) -> Result<RankedCounts> {
        RankedCounts::new(io::read_counts(path, self.strict, &mut self.warnings)?)
    }
}

pub fn run(command: &Command, ctx: &mut Ctx) -> Result<Outcome> {
    match command {
        Command::Pagerank(a) => run_pagerank(a, ctx),
        Command::Hits(a) => run_hits(a, ctx),
        Command::Influence(a) => run_influence(a, ctx),
        Command::TotalCites(a) => run_total_cites(a, ctx),
        Command::ImpactFactor(a) => run_impact_factor(a, ctx),
        Command::HIndex(a) => run_h_index(a, ctx),
        Command::Bradford(a) => run_bradford(a, ctx),
        Command::ShareCurve(a) => run_share_curve(a, ctx),
        Command::Stability(a) => run_stability(a, ctx),
        Command::Study(s) => match s {
            StudyCommand::Sample(a) => run_sample(a, ctx),
            StudyCommand::RankBuckets(a) => run_rank_buckets(a, ctx),
            StudyCommand::TcVsIf(a) => run_tc_vs_if(a, ctx),
            StudyCommand::Authorship(a) => run_authorship(a, ctx),
        },
        Command::Correlate(a) => run_correlate(a, ctx),
    }
}

fn convergence_note(report: &mut Report, iterations: usize, residual: f64, converged: bool) {
    report.note(format!(
        "iterations: {iterations}; residual: {residual:.3e}; converged: {}",
        if converged { "yes" } else { "no" }
    ));
}

fn ranked_rows(report: &mut Report, scores: &ScoreVector, extra: impl Fn(&str) -> Vec<String>) {
    for e in scores.ranked() {
        let mut row = vec![e.rank.to_string(), e.id.to_string(), fmt_score(e.value)];
        row.extend(extra(e.id));
        report.push_row(row);
    }
}

fn run_pagerank(a: &PagerankArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let g = ctx.graph(
        &a.input.edges,
        a.input.docs.as_deref(),
        a.input.allow_self_loops,
    )?;
    let params = PageRankParams {
        damping: a.damping,
        tol: a.tol,
        max_iter: a.max_iter,
        exec: ctx.exec,
    };
    let r = pagerank(&g, &params)?;
    let mut report = Report::new(
        format!("PageRank (damping {})", a.damping),
        ["Rank", "Id", "Score"],
    );
    ranked_rows(&mut report, &r.scores, |_| vec![]);
    convergence_note(&mut report, r.iterations, r.residual, r.converged);
    Ok(Outcome {
        name: "pagerank",
        report,
        converged: r.converged,
    })
}

fn run_hits(a: &HitsArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let g = ctx.graph(
        &a.input.edges,
        a.input.docs.as_deref(),
        a.input.allow_self_loops,
    )?;
    let params = HitsParams {
        tol: a.tol,
        max_iter: a.max_iter,
        exec: ctx.exec,
    };
    let r = hits(&g, &params)?;
    let mut report = Report::new(
        "HITS authorities and hubs",
        ["Rank", "Id", "Authority", "Hub"],
    );
    let hub = &r.hub;
    ranked_rows(&mut report, &r.authority, |id| {
        vec![fmt_score(hub.get(id).expect("same ids"))]
    });
    convergence_note(&mut report, r.iterations, r.residual, r.converged);
    Ok(Outcome {
        name: "hits",
        report,
        converged: r.converged,
    })
}

fn influence_matrix(
    a: &InfluenceArgs,
    ctx: &mut Ctx,
    notes: &mut Vec<String>,
) -> Result<JournalCitationMatrix> {
    let matrix = match (&a.matrix, &a.edges, &a.docs, a.cite_year) {
        (Some(path), ..) => io::read_journal_matrix(path)?,
        (None, Some(edges), Some(docs), Some(year)) => {
            let g = ctx.graph(edges, Some(docs), false)?;
            let window = TimeWindow::new(
                year,
                a.source_start.unwrap_or(year - 2),
                a.source_end.unwrap_or(year - 1),
            )?;
            let agg = g.aggregate_to_journal_matrix(window, a.no_self_citations)?;
            if !agg.dropped.is_empty() {
                notes.push(format!(
                    "dropped (no items in {}-{}): {}; {} references from them ignored",
                    window.source_start,
                    window.source_end,
                    agg.dropped.join(", "),
                    agg.dropped_references
                ));
            }
            return Ok(agg.matrix);
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give --matrix, or --edges with --docs and --cite-year".into(),
            ))
        }
    };
    Ok(if a.no_self_citations {
        matrix.without_self_citations()
    } else {
        matrix
    })
}

fn run_influence(a: &InfluenceArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let mut notes = Vec::new();
    let m = influence_matrix(a, ctx, &mut notes)?;
    let params = InfluenceParams {
        tol: a.tol,
        max_iter: a.max_iter,
        exec: ctx.exec,
    };
    let r = influence(&m, &params)?;
    let mut report = Report::new(
        "Journal influence",
        [
            "Rank",
            "Journal",
            "Weight",
            "Publications",
            "References",
            "Influence per Publication",
            "Total Influence",
        ],
    );
    for e in r.weight.ranked() {
        let j = m.index_of(e.id).expect("same journals");
        report.push_row(vec![
            e.rank.to_string(),
            e.id.to_string(),
            fmt_score(e.value),
            m.pubs()[j].to_string(),
            m.references_given(j).to_string(),
            fmt_score(r.per_publication.values()[j]),
            fmt_score(r.total.values()[j]),
        ]);
    }
    for n in notes {
        report.note(n);
    }
    convergence_note(&mut report, r.iterations, r.residual, r.converged);
    Ok(Outcome {
        name: "influence",
        report,
        converged: r.converged,
    })
}

/// Rows sorted by value descending then id, with a 1-based rank.
fn rank_rows<T: Copy>(items: Vec<(String, T)>, key: impl Fn(T) -> f64) -> Vec<(usize, String, T)> {
    let mut items = items;
    items.sort_by(|a, b| key(b.1).total_cmp(&key(a.1)).then_with(|| a.0.cmp(&b.0)));
    items
        .into_iter()
        .enumerate()
        .map(|(i, (id, v))| (i + 1, id, v))
        .collect()
}

fn select<T>(mut items: Vec<(String, T)>, journal: &Option<String>) -> Result<Vec<(String, T)>> {
    if let Some(j) = journal {
        items.retain(|(id, _)| id == j);
        if items.is_empty() {
            return Err(Error::UnknownJournal(j.clone()));
        }
    }
    Ok(items)
}

fn run_total_cites(a: &TotalCitesArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let g = ctx.graph(&a.input.edges, Some(&a.input.docs), false)?;
    let all: Vec<(String, u64)> = total_cites_by_journal(&g, a.cite_year)
        .into_iter()
        .collect();
    let items = select(all, &a.journal)?;
    let mut report = Report::new(
        format!("Total cites in {}", a.cite_year),
        ["Rank", "Journal", "Total Cites"],
    );
    for (rank, id, v) in rank_rows(items, |v| v as f64) {
        report.push_row(vec![rank.to_string(), id, v.to_string()]);
    }
    Ok(Outcome::done("total-cites", report))
}

fn parse_types(raw: &[String]) -> Result<Vec<DocType>> {
    raw.iter().map(|s| s.trim().parse()).collect()
}

fn run_impact_factor(a: &ImpactFactorArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let g = ctx.graph(&a.input.edges, Some(&a.input.docs), false)?;
    let filter = if a.items.is_empty() {
        ItemFilter::All
    } else {
        ItemFilter::Only(parse_types(&a.items)?)
    };
    let inputs: Vec<_> = impact_factor_inputs(&g, a.cite_year, &filter)
        .into_iter()
        .collect();
    let inputs = select(inputs, &a.journal)?;
    let (defined, empty): (Vec<_>, Vec<_>) =
        inputs.into_iter().partition(|(_, i)| i.value().is_some());
    let mut report = Report::new(
        format!(
            "Impact factor {} (items of {}-{})",
            a.cite_year,
            a.cite_year - 2,
            a.cite_year - 1
        ),
        [
            "Rank",
            "Journal",
            "Cites to Window",
            "Items in Window",
            "Impact Factor",
        ],
    );
    for (rank, id, input) in rank_rows(defined, |i| i.value().expect("partitioned")) {
        report.push_row(vec![
            rank.to_string(),
            id,
            input.cites_to_window.to_string(),
            input.items_in_window.to_string(),
            format!("{:.6}", input.value().expect("partitioned")),
        ]);
    }
    if !empty.is_empty() {
        let names: Vec<&str> = empty.iter().map(|(id, _)| id.as_str()).collect();
        report.note(format!(
            "no items in window, excluded: {}",
            names.join(", ")
        ));
    }
    if a.journal.is_some() && report.rows.is_empty() {
        return Err(Error::EmptyImpactWindow(
            a.journal.clone().unwrap_or_default(),
        ));
    }
    Ok(Outcome::done("impact-factor", report))
}

fn summary_report(label: &str, s: &HCoreSummary) -> Report {
    let mut report = Report::new(
        "h-index",
        [
            "Subject",
            "h-index",
            "Maximum Cites",
            "Cites Range",
            "h-core Total Cites",
            "Publications",
        ],
    );
    report.push_row(vec![
        label.to_string(),
        s.h_index.to_string(),
        s.max_cites.to_string(),
        s.cites_range.to_string(),
        s.total_cites.to_string(),
        s.publications.to_string(),
    ]);
    report.note("cites range = maximum minus minimum over the h-core");
    report
}

fn run_h_index(a: &HIndexArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let (label, counts) = match (&a.profile, &a.docs, &a.author) {
        (Some(p), _, _) => {
            let counts = io::read_profile(p, ctx.strict, &mut ctx.warnings)?;
            (
                p.file_stem()
                    .map_or("profile".into(), |s| s.to_string_lossy().into_owned()),
                counts,
            )
        }
        (None, Some(docs), Some(author)) => {
            let counts = match &a.edges {
                Some(edges) => {
                    let g = ctx.graph(edges, Some(docs), false)?;
                    let key = study::normalize_name(author);
                    (0..g.node_count())
                        .filter(|&i| {
                            g.doc_at(i).is_some_and(|d| {
                                d.authors.iter().any(|x| study::normalize_name(x) == key)
                            })
                        })
                        .map(|i| g.in_degree_at(i))
                        .collect()
                }
                None => {
                    let docs = ctx.docs(docs)?;
                    works_of(&docs, author).iter().map(|d| d.cites).collect()
                }
            };
            (author.clone(), counts)
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give --profile, or --docs with --author".into(),
            ))
        }
    };
    Ok(Outcome::done(
        "h-index",
        summary_report(&label, &h_core_summary(&counts)),
    ))
}

fn run_bradford(a: &BradfordArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let ranked = ctx.counts(&a.counts)?;
    let p = if a.yields.is_empty() {
        bradford_partition(&ranked, a.zones)?
    } else {
        partition_by_yields(&ranked, &a.yields)?
    };
    let mut report = Report::new(
        "Bradford zones",
        [
            "Zone",
            "Journals",
            "% Journals",
            "Items",
            "% Items",
            "First",
            "Last",
        ],
    );
    let n = ranked.len() as u64;
    for (i, z) in p.zones.iter().enumerate() {
        report.push_row(vec![
            (i + 1).to_string(),
            z.journal_count().to_string(),
            show(Percent::of(z.journal_count() as u64, n)),
            z.items.to_string(),
            show(Percent::of(z.items, ranked.total())),
            z.journals.first().cloned().unwrap_or_default(),
            z.journals.last().cloned().unwrap_or_default(),
        ]);
    }
    let ratios: Vec<String> = p
        .zones
        .windows(2)
        .map(|w| {
            format!(
                "{:.3}",
                w[1].journal_count() as f64 / w[0].journal_count() as f64
            )
        })
        .collect();
    report.note(format!("zone size ratios: {}", ratios.join(", ")));
    report.note(format!("estimated multiplier: {:.6}", p.multiplier));
    Ok(Outcome::done("bradford", report))
}

fn show(p: Option<Percent>) -> String {
    p.map_or_else(|| "-".into(), |p| p.to_string())
}

fn run_share_curve(a: &ShareCurveArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let ranked = ctx.counts(&a.counts)?;
    let curve = share_curve(&ranked)?;
    let mut report = Report::new(
        "Cumulative share",
        ["Rank", "Id", "Count", "Cumulative", "Share"],
    );
    for ((m, p), ((id, c), cum)) in curve
        .points()
        .into_iter()
        .zip(ranked.items().iter().zip(curve.cumulative_counts()))
    {
        report.push_row(vec![
            m.to_string(),
            id.clone(),
            c.to_string(),
            cum.to_string(),
            fmt_score(p),
        ]);
    }
    for &p in &a.share {
        report.note(format!(
            "entries for share {p}: {}",
            journals_for_share(&curve, p)?
        ));
    }
    if let Some(t) = a.threshold {
        report.note(format!(
            "entries with count >= {t}: {}",
            count_above_threshold(&ranked, t)
        ));
    }
    Ok(Outcome::done("share-curve", report))
}

fn run_stability(a: &StabilityArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let ra = ctx.counts(&a.a)?;
    let rb = ctx.counts(&a.b)?;
    let overlap = stability_overlap(&ra, &rb, a.top)?;
    let rank_in = |r: &RankedCounts, id: &str| {
        r.items()
            .iter()
            .position(|(x, _)| x == id)
            .map_or_else(|| "-".to_string(), |p| (p + 1).to_string())
    };
    let mut report = Report::new(
        format!("Top {} overlap: {overlap} common", a.top),
        ["Rank A", "Id", "Rank B"],
    );
    for (id, _) in &ra.items()[..a.top] {
        report.push_row(vec![rank_in(&ra, id), id.clone(), rank_in(&rb, id)]);
    }
    report.note(format!(
        "{overlap} of {} on both lists ({})",
        a.top,
        show(Percent::of(overlap as u64, a.top as u64))
    ));
    Ok(Outcome::done("stability", report))
}

fn run_sample(a: &SampleArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let docs = ctx.docs(&a.docs)?;
    let subjects = io::read_subjects(&a.subjects, ctx.strict, &mut ctx.warnings)?;
    let config = SamplingConfig {
        k: a.k,
        pool: match a.pool {
            PoolArg::HCore => SamplePool::HCore,
            PoolArg::All => SamplePool::All,
        },
        keep: parse_types(&a.keep)?,
        seed: a.seed,
    };
    let entries = draw_samples(&docs, &subjects, &config)?;
    let mut report = Report::new("Sampled works", ["subject", "year", "position", "doc_id"]);
    for e in &entries {
        report.push_row(vec![
            e.subject.clone(),
            e.year.to_string(),
            e.position.to_string(),
            e.doc_id.clone(),
        ]);
    }
    for s in &subjects {
        let n = entries.iter().filter(|e| e.subject == s.name).count();
        report.note(format!("{}: {n} works", s.name));
    }
    Ok(Outcome::done("sample", report))
}

struct Loaded {
    docs: Vec<citegraph::DocumentRecord>,
    entries: Vec<citegraph::study::SampleEntry>,
}

fn load_sample(input: &SampleInput, ctx: &mut Ctx) -> Result<Loaded> {
    Ok(Loaded {
        docs: ctx.docs(&input.docs)?,
        entries: io::read_sample(&input.sample, ctx.strict, &mut ctx.warnings)?,
    })
}

fn rank_index(path: &Path, ctx: &mut Ctx) -> Result<RankIndex> {
    RankIndex::new(io::read_rank_records(path, ctx.strict, &mut ctx.warnings)?)
}

fn run_rank_buckets(a: &RankBucketsArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let loaded = load_sample(&a.input, ctx)?;
    let ranks = rank_index(&a.ranks, ctx)?;
    let samples = assemble(&loaded.entries, &loaded.docs, Some(&ranks), &[])?;
    let measure = match a.measure {
        MeasureArg::Tc => Measure::TotalCites,
        MeasureArg::If => Measure::ImpactFactor,
    };
    let table = rank_bucket_table(&samples, measure)?;
    Ok(Outcome::done("rank-buckets", table.to_report()))
}

fn run_tc_vs_if(a: &TcVsIfArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let loaded = load_sample(&a.input, ctx)?;
    let ranks = rank_index(&a.ranks, ctx)?;
    let samples = assemble(&loaded.entries, &loaded.docs, Some(&ranks), &[])?;
    Ok(Outcome::done(
        "tc-vs-if",
        tc_vs_if_comparison(&samples)?.to_report(),
    ))
}

fn run_authorship(a: &AuthorshipArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let loaded = load_sample(&a.input, ctx)?;
    let subjects = io::read_subjects(&a.subjects, ctx.strict, &mut ctx.warnings)?;
    let samples = assemble(&loaded.entries, &loaded.docs, None, &subjects)?;
    let subset = if a.reviews_only {
        AuthorshipSubset::ReviewsOnly
    } else {
        AuthorshipSubset::All
    };
    Ok(Outcome::done(
        "authorship",
        authorship_table(&samples, subset)?.to_report(),
    ))
}

fn run_correlate(a: &CorrelateArgs, ctx: &mut Ctx) -> Result<Outcome> {
    let (xs, ys) = io::read_pairs(&a.pairs, ctx.strict, &mut ctx.warnings)?;
    let (method, label) = match a.method {
        MethodArg::Pearson => (CorrelationMethod::Pearson, "pearson"),
        MethodArg::Spearman => (CorrelationMethod::Spearman, "spearman"),
    };
    let r = rank_correlation(&xs, &ys, method)?;
    let mut report = Report::new("Correlation", ["Method", "Pairs", "Coefficient"]);
    report.push_row(vec![label.into(), xs.len().to_string(), fmt_score(r)]);
    Ok(Outcome::done("correlate", report))
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "citegraph",
    version,
    about = "Citation-network rankings and bibliometric measures"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Emit JSON instead of the selected format (also written with --out-dir).
    #[arg(long, global = true)]
    pub json: bool,
    /// Write `<command>.txt` and `<command>.csv` here instead of printing.
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    /// Reject the first malformed input row instead of skipping it.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Scheduling of solver inner loops.
    #[arg(long, value_enum, default_value_t = ExecArg::Auto, global = true)]
    pub exec: ExecArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExecArg {
    Auto,
    Sequential,
    Parallel,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Damped random-surfer scores for every node.
    Pagerank(PagerankArgs),
    /// Hub and authority scores.
    Hits(HitsArgs),
    /// Journal influence weights, influence per publication and total influence.
    Influence(InfluenceArgs),
    /// Citations received by each journal in a citing year.
    TotalCites(TotalCitesArgs),
    /// Two-year impact factor of each journal.
    ImpactFactor(ImpactFactorArgs),
    /// h-index and h-core summary.
    HIndex(HIndexArgs),
    /// Bradford zones over ranked counts.
    Bradford(BradfordArgs),
    /// Cumulative share of the top-m entries.
    ShareCurve(ShareCurveArgs),
    /// Overlap of two top-N lists.
    Stability(StabilityArgs),
    /// Sampling and tabulation of researchers' most-cited works.
    #[command(subcommand)]
    Study(StudyCommand),
    /// Pearson or Spearman correlation of paired values.
    Correlate(CorrelateArgs),
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Edge list (`citing_id,cited_id`).
    #[arg(long)]
    pub edges: PathBuf,
    /// Document metadata; when given, every edge id must resolve.
    #[arg(long)]
    pub docs: Option<PathBuf>,
    /// Accept documents that cite themselves.
    #[arg(long)]
    pub allow_self_loops: bool,
}

#[derive(Debug, Args)]
pub struct PagerankArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, default_value_t = 0.85)]
    pub damping: f64,
    /// L1 change at which iteration stops.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct HitsArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct InfluenceArgs {
    /// Journal matrix file; otherwise the matrix is aggregated from
    /// --edges and --docs.
    #[arg(long, conflicts_with_all = ["edges", "docs"])]
    pub matrix: Option<PathBuf>,
    #[arg(long, requires_all = ["docs", "cite_year"])]
    pub edges: Option<PathBuf>,
    #[arg(long, requires = "edges")]
    pub docs: Option<PathBuf>,
    #[arg(long)]
    pub cite_year: Option<i32>,
    /// First source year (defaults to cite year minus 2).
    #[arg(long, requires = "cite_year")]
    pub source_start: Option<i32>,
    /// Last source year (defaults to cite year minus 1).
    #[arg(long, requires = "cite_year")]
    pub source_end: Option<i32>,
    /// Zero the matrix diagonal.
    #[arg(long)]
    pub no_self_citations: bool,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct CorpusInput {
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long)]
    pub docs: PathBuf,
}

#[derive(Debug, Args)]
pub struct TotalCitesArgs {
    #[command(flatten)]
    pub input: CorpusInput,
    #[arg(long)]
    pub cite_year: i32,
    /// Report a single journal.
    #[arg(long)]
    pub journal: Option<String>,
}

#[derive(Debug, Args)]
pub struct ImpactFactorArgs {
    #[command(flatten)]
    pub input: CorpusInput,
    #[arg(long)]
    pub cite_year: i32,
    #[arg(long)]
    pub journal: Option<String>,
    /// Count only these document types as citable items, e.g. `article,review`.
    #[arg(long, value_delimiter = ',')]
    pub items: Vec<String>,
}

#[derive(Debug, Args)]
pub struct HIndexArgs {
    /// Citation profile (`cites` column).
    #[arg(long, conflicts_with_all = ["docs", "author"])]
    pub profile: Option<PathBuf>,
    /// Document file whose `cites` column is used for --author.
    #[arg(long, requires = "author")]
    pub docs: Option<PathBuf>,
    #[arg(long, requires = "docs")]
    pub author: Option<String>,
    /// Use in-degrees from this edge list instead of the `cites` column.
    #[arg(long, requires = "docs")]
    pub edges: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BradfordArgs {
    /// Ranked counts (`id,count`).
    #[arg(long)]
    pub counts: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub zones: usize,
    /// Relative zone yields, e.g. `249,499,404`; overrides --zones.
    #[arg(long, value_delimiter = ',')]
    pub yields: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct ShareCurveArgs {
    #[arg(long)]
    pub counts: PathBuf,
    /// Also report the journals needed to reach each share.
    #[arg(long, value_delimiter = ',')]
    pub share: Vec<f64>,
    /// Also report how many entries reach this count.
    #[arg(long)]
    pub threshold: Option<u64>,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = 50)]
    pub top: usize,
}

#[derive(Debug, Subcommand)]
pub enum StudyCommand {
    /// Draws every k-th work of each subject's ranked works.
    Sample(SampleArgs),
    /// Journal rank buckets of the sampled works.
    RankBuckets(RankBucketsArgs),
    /// Total-cites rank against impact-factor rank.
    TcVsIf(TcVsIfArgs),
    /// Byline positions of the subjects.
    Authorship(AuthorshipArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PoolArg {
    HCore,
    All,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub docs: PathBuf,
    /// Subjects (`subject,year,author`).
    #[arg(long)]
    pub subjects: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = PoolArg::HCore)]
    pub pool: PoolArg,
    /// Document types kept after sampling.
    #[arg(long, value_delimiter = ',', default_value = "article,review")]
    pub keep: Vec<String>,
    /// Start at a seeded random offset in `0..k` instead of the top.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SampleInput {
    #[arg(long)]
    pub docs: PathBuf,
    /// Sample file (`subject,year,position,doc_id`).
    #[arg(long)]
    pub sample: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Tc,
    If,
}

#[derive(Debug, Args)]
pub struct RankBucketsArgs {
    #[command(flatten)]
    pub input: SampleInput,
    #[arg(long)]
    pub ranks: PathBuf,
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
}

#[derive(Debug, Args)]
pub struct TcVsIfArgs {
    #[command(flatten)]
    pub input: SampleInput,
    #[arg(long)]
    pub ranks: PathBuf,
}

#[derive(Debug, Args)]
pub struct AuthorshipArgs {
    #[command(flatten)]
    pub input: SampleInput,
    #[arg(long)]
    pub subjects: PathBuf,
    /// Only review articles.
    #[arg(long)]
    pub reviews_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Pearson,
    Spearman,
}

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    /// Paired values (`x,y`).
    #[arg(long)]
    pub pairs: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Spearman)]
    pub method: MethodArg,
}

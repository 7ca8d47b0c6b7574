//! Command-line surface: subcommands and flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "layersum",
    version,
    about = "Multi-layer sentence-graph extractive summarization, evaluation, and comparison",
    after_help = "Exit codes: 0 success, 1 usage, 2 I/O, 3 validation (bad file content or config)."
)]
pub struct Cli {
    /// Assert that the run uses no randomness. Always satisfied: the whole
    /// pipeline is deterministic by construction, so this flag is an
    /// explicit no-op contract.
    #[arg(long, global = true)]
    pub seedless: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Annotate a document with a lexicon and write interchange JSONL.
    Annotate(AnnotateArgs),
    /// Summarize a single document.
    Summarize(SummarizeArgs),
    /// Score a summary against a reference with ROUGE-1/2/L/SU4.
    Evaluate(EvaluateArgs),
    /// Run the full pipeline over a manifest of documents.
    CorpusRun(CorpusRunArgs),
    /// Wilcoxon signed-rank comparison of two report files.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct AnnotateArgs {
    /// Plain-text input document (UTF-8).
    #[arg(long)]
    pub input: PathBuf,
    /// Lexicon TSV: term, concept_id, name, sem_type.
    #[arg(long)]
    pub lexicon: PathBuf,
    /// Output annotation file (JSON Lines).
    #[arg(long)]
    pub output: PathBuf,
    /// Abbreviation guard list replacing the built-in one.
    #[arg(long)]
    pub abbreviations: Option<PathBuf>,
    /// Document id; defaults to the input file stem.
    #[arg(long)]
    pub doc_id: Option<String>,
}

#[derive(Debug, Args)]
pub struct SummarizeArgs {
    /// Plain-text input document (UTF-8).
    #[arg(long)]
    pub input: PathBuf,
    /// Annotation interchange file produced by external annotators or
    /// `annotate`. Mutually exclusive with --lexicon.
    #[arg(long, conflicts_with = "lexicon")]
    pub annotations: Option<PathBuf>,
    /// Lexicon TSV for the built-in dictionary annotator.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Abbreviation guard list replacing the built-in one.
    #[arg(long)]
    pub abbreviations: Option<PathBuf>,
    /// Document id; defaults to the input file stem.
    #[arg(long)]
    pub doc_id: Option<String>,
    /// Directory receiving {doc_id}.summary.json and {doc_id}.summary.txt.
    #[arg(long, default_value = ".")]
    pub output_dir: PathBuf,
    /// Write the solver convergence trace as CSV (iteration, residual_X,
    /// residual_Z).
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Dump the multi-layer graph as JSON for inspection.
    #[arg(long)]
    pub dump_graph: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigFlags,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// System summary: a .json summary file or plain text.
    #[arg(long)]
    pub summary: PathBuf,
    /// Reference text (the model summary, e.g. the article abstract).
    #[arg(long)]
    pub reference: PathBuf,
    /// Document id; defaults to the summary's doc_id or file stem.
    #[arg(long)]
    pub doc_id: Option<String>,
    /// Directory receiving report.json and report.csv.
    #[arg(long, default_value = ".")]
    pub output_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct CorpusRunArgs {
    /// Run manifest (JSON). Paths inside resolve relative to the manifest's
    /// directory unless absolute.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output directory; overrides the manifest's output_dir.
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Worker threads for per-document processing (0 = one per CPU).
    /// Output bytes are identical at every level.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[command(flatten)]
    pub config: ConfigFlags,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Report file (JSON rows) of system A.
    #[arg(long)]
    pub reports_a: PathBuf,
    /// Report file (JSON rows) of system B.
    #[arg(long)]
    pub reports_b: PathBuf,
    /// Directory receiving comparison.json and comparison.csv.
    #[arg(long, default_value = ".")]
    pub output_dir: PathBuf,
}

/// Flag overrides applied on top of defaults and, for corpus runs, on top of
/// the manifest.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigFlags {
    /// Compression rate: fraction of source sentences kept, in (0, 1].
    #[arg(long)]
    pub rate: Option<f64>,
    /// basic: rank by centrality; enhanced: blend with concept density.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Centrality weight of the enhanced score.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Concept-density weight of the enhanced score.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Comma-separated layer subset of: semantic, word, coref.
    #[arg(long, value_delimiter = ',')]
    pub layers: Option<Vec<String>>,
    /// weighted: raw similarity weights; unweighted: 0/1 at --threshold.
    #[arg(long, value_enum)]
    pub graph: Option<GraphArg>,
    /// Similarity threshold for --graph unweighted, in (0, 1).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// n-gram order of the word layer.
    #[arg(long)]
    pub ngram_word: Option<usize>,
    /// n-gram order of the semantic (concept) layer.
    #[arg(long)]
    pub ngram_concept: Option<usize>,
    /// Random-walk damping factor.
    #[arg(long)]
    pub damping: Option<f64>,
    /// L1 convergence tolerance of the solver.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Iteration cap of the solver.
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Ranking system: the multi-layer solver or a baseline.
    #[arg(long, value_enum)]
    pub summarizer: Option<SummarizerArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Basic,
    Enhanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    Weighted,
    Unweighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SummarizerArg {
    /// Coupled node/layer centrality on the multi-layer graph.
    Multirank,
    /// TF-IDF cosine graph with PageRank.
    Lexrank,
    /// Per-layer PageRank combined by a weighted average.
    SimpleAverage,
}

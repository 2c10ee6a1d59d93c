//! Command-line surface for the n-gram spell checker.
//!
//! Data goes to stdout (or `--output`), diagnostics go to stderr, and the
//! exit code is zero exactly when no error occurred. Every option can also
//! come from an optional TOML config file (`--config`); explicit flags
//! override file values, which override the built-in defaults.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use gramspell::{
    audit_csv, build_bigram_postings, correct_text, detect_nonword_errors, emit_report, evaluate,
    induce_errors, tokenize, CorrectorConfig, InduceOptions, NGramIndex, ReportFormat,
};

const DEFAULT_K: usize = 10;
const DEFAULT_WINDOW: usize = 4;
const DEFAULT_GAMMA: f64 = 10.0;
const DEFAULT_RATE: f64 = 0.01;
const DEFAULT_REALWORD_SHARE: f64 = 0.20;
const DEFAULT_MIN_COUNT: u64 = 1;
const DEFAULT_MAX_ORDER: usize = 5;

#[derive(Parser)]
#[command(
    name = "gramspell",
    version,
    about = "n-gram based spell checking and correction"
)]
struct Cli {
    /// Optional TOML config file; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildMode {
    /// Inputs are count files: space-separated tokens, TAB, decimal count.
    Web1t,
    /// Inputs are plain text; counts come from sliding windows.
    Corpus,
}

#[derive(Debug, Clone, Copy, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Table,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> ReportFormat {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
            Format::Table => ReportFormat::Table,
        }
    }
}

/// Values an optional config file may provide. Unknown keys are rejected
/// so typos fail loudly before any work starts.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    index: Option<PathBuf>,
    k: Option<usize>,
    window: Option<usize>,
    real_word: Option<bool>,
    gamma: Option<f64>,
    rate: Option<f64>,
    realword_share: Option<f64>,
    seed: Option<u64>,
    min_count: Option<u64>,
    max_order: Option<usize>,
    format: Option<Format>,
}

impl FileConfig {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }
}

#[derive(clap::Args)]
struct CorrectionFlags {
    /// Candidate list size [default: 10].
    #[arg(long)]
    k: Option<usize>,
    /// Maximum preceding context words, 0..=4 [default: 4].
    #[arg(long)]
    window: Option<usize>,
    /// Also flag and fix suspected real-word errors [default: off].
    #[arg(
        long = "real-word",
        num_args = 0..=1,
        default_missing_value = "true",
        value_name = "BOOL"
    )]
    real_word: Option<bool>,
    /// Real-word margin: replacement count must reach gamma * (original + 1)
    /// [default: 10].
    #[arg(long)]
    gamma: Option<f64>,
}

impl CorrectionFlags {
    fn resolve(&self, file: &FileConfig) -> Result<CorrectorConfig> {
        let config = CorrectorConfig {
            k: self.k.or(file.k).unwrap_or(DEFAULT_K),
            window: self.window.or(file.window).unwrap_or(DEFAULT_WINDOW),
            real_word_pass: self.real_word.or(file.real_word).unwrap_or(false),
            real_word_margin: self.gamma.or(file.gamma).unwrap_or(DEFAULT_GAMMA),
            case_restore: true,
        };
        config.validate()?;
        Ok(config)
    }
}

fn resolve_index(flag: Option<PathBuf>, file: &FileConfig) -> Result<PathBuf> {
    match flag.or_else(|| file.index.clone()) {
        Some(path) => Ok(path),
        None => bail!("no index given: pass --index or set `index` in the config file"),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build an index artifact from count files or a text corpus.
    Build {
        /// Input files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum)]
        mode: BuildMode,
        /// Where to write the index artifact.
        #[arg(long)]
        out: PathBuf,
        /// Drop corpus entries seen fewer times than this [default: 1].
        #[arg(long)]
        min_count: Option<u64>,
        /// Highest n-gram order to count in corpus mode [default: 5].
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// List non-word errors without correcting them.
    Check {
        file: PathBuf,
        #[arg(long)]
        index: Option<PathBuf>,
    },
    /// Correct a file, writing the fixed text to stdout or --output.
    Correct {
        file: PathBuf,
        #[arg(long)]
        index: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        correction: CorrectionFlags,
    },
    /// Induce seeded errors into a clean corpus, correct them, and score.
    Eval {
        corpus: PathBuf,
        #[arg(long)]
        index: Option<PathBuf>,
        /// Fraction of words to corrupt [default: 0.01].
        #[arg(long)]
        rate: Option<f64>,
        /// Fraction of corruptions that should be real words [default: 0.2].
        #[arg(long = "realword-share")]
        realword_share: Option<f64>,
        /// Generator seed [default: 0].
        #[arg(long)]
        seed: Option<u64>,
        /// Report encoding: table, csv or json [default: table].
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Also write a per-error audit CSV here.
        #[arg(long)]
        audit: Option<PathBuf>,
        #[command(flatten)]
        correction: CorrectionFlags,
    },
    /// Print the stored count of one n-gram (1 to 5 tokens).
    Lookup {
        #[arg(required = true)]
        tokens: Vec<String>,
        #[arg(long)]
        index: Option<PathBuf>,
    },
}

fn main() {
    if let Err(err) = run(Cli::parse()) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    let file = FileConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Build {
            inputs,
            mode,
            out,
            min_count,
            max_order,
        } => build(
            inputs,
            mode,
            out,
            min_count.or(file.min_count).unwrap_or(DEFAULT_MIN_COUNT),
            max_order.or(file.max_order).unwrap_or(DEFAULT_MAX_ORDER),
        ),
        Command::Check { file: input, index } => check(input, resolve_index(index, &file)?),
        Command::Correct {
            file: input,
            index,
            output,
            correction,
        } => {
            let config = correction.resolve(&file)?;
            correct(input, resolve_index(index, &file)?, output, &config)
        }
        Command::Eval {
            corpus,
            index,
            rate,
            realword_share,
            seed,
            format,
            audit,
            correction,
        } => {
            let config = correction.resolve(&file)?;
            let opts = InduceOptions {
                rate: rate.or(file.rate).unwrap_or(DEFAULT_RATE),
                realword_share: realword_share
                    .or(file.realword_share)
                    .unwrap_or(DEFAULT_REALWORD_SHARE),
                seed: seed.or(file.seed).unwrap_or(0),
            };
            let format = format.or(file.format).unwrap_or(Format::Table);
            eval(
                corpus,
                resolve_index(index, &file)?,
                opts,
                format,
                audit,
                &config,
            )
        }
        Command::Lookup { tokens, index } => lookup(tokens, resolve_index(index, &file)?),
    }
}

fn load_index(path: &Path) -> Result<NGramIndex> {
    NGramIndex::load(path).with_context(|| {
        format!(
            "cannot load index {}; build one first with `gramspell build --mode corpus --out {}`",
            path.display(),
            path.display()
        )
    })
}

fn build(
    inputs: Vec<PathBuf>,
    mode: BuildMode,
    out: PathBuf,
    min_count: u64,
    max_order: usize,
) -> Result<()> {
    let index = match mode {
        BuildMode::Web1t => NGramIndex::from_count_files(&inputs)?,
        BuildMode::Corpus => {
            let mut corpus = String::new();
            for path in &inputs {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("cannot read {}", path.display()))?;
                corpus.push_str(&text);
                corpus.push('\n');
            }
            NGramIndex::from_corpus(&corpus, max_order, min_count)?
        }
    };
    index.save(&out)?;

    println!("Number of tokens\t{}", index.total_unigram_tokens());
    // Corpus builds store one sentence-start marker per sentence; count
    // files carry no sentence information, so the line is omitted there.
    let sentences = index.unigram_count(gramspell::SENTENCE_START);
    if sentences > 0 {
        println!("Number of sentences\t{sentences}");
    }
    for (order, name) in [
        (1, "unigrams"),
        (2, "bigrams"),
        (3, "trigrams"),
        (4, "4-grams"),
        (5, "5-grams"),
    ] {
        println!("Number of {name}\t{}", index.entry_count(order));
    }
    eprintln!("index written to {}", out.display());
    Ok(())
}

fn check(file: PathBuf, index: PathBuf) -> Result<()> {
    let index = load_index(&index)?;
    let text =
        fs::read_to_string(&file).with_context(|| format!("cannot read {}", file.display()))?;
    let stream = tokenize(&text);
    let errors = detect_nonword_errors(&stream, &index);
    let mut stdout = std::io::stdout().lock();
    for error in &errors {
        writeln!(stdout, "{}\t{}", error.token_index, error.surface)?;
    }
    eprintln!(
        "{} non-word error(s) in {} word token(s)",
        errors.len(),
        stream.word_count()
    );
    Ok(())
}

fn correct(
    file: PathBuf,
    index: PathBuf,
    output: Option<PathBuf>,
    config: &CorrectorConfig,
) -> Result<()> {
    let index = load_index(&index)?;
    let postings = build_bigram_postings(&index);
    let text =
        fs::read_to_string(&file).with_context(|| format!("cannot read {}", file.display()))?;

    let (corrected, corrections) = correct_text(&text, &index, &postings, config);
    for correction in &corrections {
        let kind = correction.error.kind.label();
        match (&correction.chosen, correction.applied) {
            (Some(chosen), true) => {
                eprintln!("[{kind}; {chosen}; {}]", correction.error.surface)
            }
            _ => eprintln!("[{kind}; ?; {}] not corrected", correction.error.surface),
        }
    }
    match output {
        Some(path) => fs::write(&path, corrected)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{corrected}"),
    }
    Ok(())
}

fn eval(
    corpus: PathBuf,
    index: PathBuf,
    opts: InduceOptions,
    format: Format,
    audit: Option<PathBuf>,
    config: &CorrectorConfig,
) -> Result<()> {
    let index = load_index(&index)?;
    let postings = build_bigram_postings(&index);
    let text =
        fs::read_to_string(&corpus).with_context(|| format!("cannot read {}", corpus.display()))?;

    let (perturbed, gold) = induce_errors(&text, &index, &opts)?;
    let (_, corrections) = correct_text(&perturbed, &index, &postings, config);
    let stream = tokenize(&perturbed);
    let report = evaluate(&gold, &corrections, &stream)?;

    eprintln!(
        "seed = {}, rate = {}, realword-share = {}, induced = {}",
        opts.seed,
        opts.rate,
        opts.realword_share,
        gold.len()
    );
    match format {
        Format::Json => {
            // Wrap so the seed travels with the report; the inner object
            // keeps the stable schema.
            let wrapped = serde_json::json!({
                "seed": opts.seed,
                "report": serde_json::from_str::<serde_json::Value>(
                    &emit_report(&report, ReportFormat::Json),
                )?,
            });
            println!("{}", serde_json::to_string_pretty(&wrapped)?);
        }
        other => print!("{}", emit_report(&report, other.into())),
    }
    if let Some(path) = audit {
        fs::write(&path, audit_csv(&gold, &corrections))
            .with_context(|| format!("cannot write {}", path.display()))?;
        eprintln!("audit log written to {}", path.display());
    }
    Ok(())
}

fn lookup(tokens: Vec<String>, index: PathBuf) -> Result<()> {
    let index = load_index(&index)?;
    println!("{}", index.lookup(&tokens)?);
    Ok(())
}

//! Command-line interface. Exit codes: 0 success, 1 hard error, 2 usage.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use nikud_core::metrics::{evaluate_corpus, EvalReport};
use nikud_core::pseudo_gt::{annotate_line, correct_line, CorrectionFile, ShvaRules, TokenHint};
use nikud_core::{
    normalize, Convention, Lexicon, Narrowness, ProviderKind, RuleTable, StressPosition,
};
use serde::{Deserialize, Serialize};

use crate::io::{load_lexicon, load_metadata, open_input, open_output, read_all, read_chunk};
use crate::pipeline::{Pipeline, PipelineConfig};
use crate::remote::{RemoteConfig, URL_ENV};

/// Lines held in memory at once by streaming commands.
const CHUNK_LINES: usize = 4096;

#[derive(Parser, Debug)]
#[command(
    name = "nikud",
    version,
    about = "Hebrew grapheme-to-phoneme conversion"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    Broad,
    Narrow,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StressArg {
    Syllable,
    Vowel,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProviderArg {
    Passthrough,
    Defaults,
    Remote,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Args, Debug)]
struct EngineArgs {
    #[arg(long, value_enum, default_value_t = ConventionArg::Broad)]
    convention: ConventionArg,
    #[arg(long, value_enum, default_value_t = StressArg::Syllable)]
    stress: StressArg,
    #[arg(long, value_enum, default_value_t = ProviderArg::Passthrough)]
    provider: ProviderArg,
    /// Lexicon TSV to use instead of the built-in one.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long, env = URL_ENV)]
    diacritizer_url: Option<String>,
    #[arg(long, default_value_t = 5000)]
    diacritizer_timeout_ms: u64,
    /// Lines per diacritizer request.
    #[arg(long, default_value_t = 64)]
    diacritizer_batch: usize,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct Io {
    /// Input file; standard input when absent or `-`.
    input: Option<PathBuf>,
    /// Output file; standard output when absent or `-`.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert Hebrew text to IPA, one output line per input line.
    Phonemize {
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Add enhanced marks from JSONL token hints.
    Annotate {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Disable the second-of-two-shvas rule.
        #[arg(long)]
        no_shva_pair: bool,
        /// Disable the geminate rule.
        #[arg(long)]
        no_shva_geminate: bool,
        /// Disable the clitic-before-shva rule.
        #[arg(long)]
        no_shva_clitic: bool,
    },
    /// Score IPA hypotheses against references.
    #[command(group(ArgGroup::new("source").required(true).args(["reference", "corpus"])))]
    Evaluate {
        /// Reference IPA, one item per line.
        #[arg(long = "ref", requires = "hyp")]
        reference: Option<PathBuf>,
        /// Hypothesis IPA, aligned with --ref.
        #[arg(long, requires = "reference")]
        hyp: Option<PathBuf>,
        /// `id|hebrew|ipa` metadata; hypotheses come from the pipeline.
        #[arg(long, conflicts_with = "hyp")]
        corpus: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Check an `id|hebrew|ipa` metadata file.
    Validate { metadata: PathBuf },
    /// Normalize mark order and composition.
    Normalize {
        #[command(flatten)]
        io: Io,
    },
    /// Lexicon utilities.
    Lexicon {
        #[command(subcommand)]
        command: LexiconCommand,
    },
    /// Print the transition table as TSV.
    DumpRules,
    /// List distinct words with counts, most frequent first.
    Review {
        #[command(flatten)]
        io: Io,
    },
    /// Replace words listed in a corrections TSV.
    Correct {
        #[arg(long)]
        corrections: PathBuf,
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Subcommand, Debug)]
enum LexiconCommand {
    /// Validate a lexicon TSV.
    Check { path: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Hard(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Hard(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

fn hard(e: impl std::fmt::Display) -> Failure {
    Failure::Hard(e.to_string())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Hard(m) => eprintln!("nikud: {m}"),
            }
            f.code()
        }
    }
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Phonemize { engine, io, format } => phonemize(engine, io, format),
        Command::Annotate {
            io,
            format,
            no_shva_pair,
            no_shva_geminate,
            no_shva_clitic,
        } => {
            let rules = ShvaRules {
                second_of_pair: !no_shva_pair,
                geminate: !no_shva_geminate,
                clitic_before_shva: !no_shva_clitic,
            };
            annotate(io, format, &rules)
        }
        Command::Evaluate {
            reference,
            hyp,
            corpus,
            json,
            engine,
        } => evaluate(reference, hyp, corpus, json, engine),
        Command::Validate { metadata } => {
            let items = load_metadata(&metadata).map_err(hard)?;
            println!("{}: {} items ok", metadata.display(), items.len());
            Ok(())
        }
        Command::Normalize { io } => map_lines(&io, |line| Ok(normalize(line))),
        Command::Lexicon {
            command: LexiconCommand::Check { path },
        } => {
            let lexicon = load_lexicon(&path).map_err(hard)?;
            println!("{}: {} entries ok", path.display(), lexicon.len());
            Ok(())
        }
        Command::DumpRules => {
            print!("{}", RuleTable::builtin().dump_tsv());
            Ok(())
        }
        Command::Review { io } => review(io),
        Command::Correct { corrections, io } => {
            let text = read_all(Some(&corrections)).map_err(hard)?;
            let file = CorrectionFile::parse_tsv(&text).map_err(|e| {
                hard(format!(
                    "{}: line {}: {}",
                    corrections.display(),
                    e.line,
                    e.reason
                ))
            })?;
            let mut total = 0;
            map_lines(&io, |line| {
                let (fixed, n) = correct_line(line, &file);
                total += n;
                Ok(fixed)
            })?;
            eprintln!("{total} corrections applied");
            Ok(())
        }
    }
}

fn pipeline_config(engine: &EngineArgs) -> Result<PipelineConfig, Failure> {
    let convention = Convention::new(
        match engine.stress {
            StressArg::Syllable => StressPosition::BeforeSyllable,
            StressArg::Vowel => StressPosition::BeforeVowel,
        },
        match engine.convention {
            ConventionArg::Broad => Narrowness::Broad,
            ConventionArg::Narrow => Narrowness::Narrow,
        },
    );
    let provider = match engine.provider {
        ProviderArg::Passthrough => ProviderKind::Passthrough,
        ProviderArg::Defaults => ProviderKind::Defaults,
        ProviderArg::Remote => ProviderKind::Remote,
    };
    let remote = match (provider, &engine.diacritizer_url) {
        (ProviderKind::Remote, Some(url)) => {
            let mut config = RemoteConfig::new(url.clone());
            config.timeout = Duration::from_millis(engine.diacritizer_timeout_ms);
            config.batch_lines = engine.diacritizer_batch;
            config.validate().map_err(Failure::Usage)?;
            Some(config)
        }
        (ProviderKind::Remote, None) => {
            return Err(Failure::Usage(format!(
                "--provider remote needs --diacritizer-url or {URL_ENV}"
            )))
        }
        _ => None,
    };
    let lexicon = match &engine.lexicon {
        Some(path) => load_lexicon(path).map_err(hard)?,
        None => Lexicon::builtin(),
    };
    Ok(PipelineConfig {
        convention,
        provider,
        remote,
        lexicon,
        jobs: engine.jobs,
    })
}

fn build_pipeline(engine: &EngineArgs) -> Result<Pipeline, Failure> {
    Pipeline::new(pipeline_config(engine)?).map_err(|e| Failure::Usage(e.to_string()))
}

fn path_or_stdin(p: &Option<PathBuf>) -> Option<&Path> {
    p.as_deref()
}

/// Streams `io` in chunks through `f`, writing one line per input line.
fn for_chunks(
    io: &Io,
    mut f: impl FnMut(usize, Vec<String>, &mut dyn Write) -> Result<(), Failure>,
) -> Result<(), Failure> {
    let mut input = open_input(path_or_stdin(&io.input)).map_err(hard)?;
    let mut output = open_output(path_or_stdin(&io.output)).map_err(hard)?;
    let mut first = 0;
    loop {
        let lines = read_chunk(&mut *input as &mut dyn BufRead, CHUNK_LINES).map_err(hard)?;
        if lines.is_empty() {
            break;
        }
        let n = lines.len();
        f(first, lines, &mut output)?;
        first += n;
    }
    output.flush().map_err(hard)
}

fn map_lines(io: &Io, mut f: impl FnMut(&str) -> Result<String, Failure>) -> Result<(), Failure> {
    for_chunks(io, |_, lines, out| {
        for line in lines {
            writeln!(out, "{}", f(&line)?).map_err(hard)?;
        }
        Ok(())
    })
}

#[derive(Serialize)]
struct PhonemizeRecord<'a> {
    line: usize,
    text: &'a str,
    enhanced: &'a str,
    ipa: &'a str,
    diagnostics: &'a [String],
}

fn phonemize(engine: EngineArgs, io: Io, format: Format) -> Result<(), Failure> {
    let pipeline = build_pipeline(&engine)?;
    for_chunks(&io, |first, lines, out| {
        for (i, (text, result)) in lines.iter().zip(pipeline.process(&lines)).enumerate() {
            let line = first + i + 1;
            match format {
                Format::Text => {
                    for d in &result.diagnostics {
                        eprintln!("line {line}: {d}");
                    }
                    writeln!(out, "{}", result.ipa)
                }
                Format::Jsonl => {
                    let record = PhonemizeRecord {
                        line,
                        text,
                        enhanced: &result.enhanced,
                        ipa: &result.ipa,
                        diagnostics: &result.diagnostics,
                    };
                    writeln!(out, "{}", serde_json::to_string(&record).map_err(hard)?)
                }
            }
            .map_err(hard)?;
        }
        Ok(())
    })
}

#[derive(Deserialize)]
struct AnnotateInput {
    text: String,
    #[serde(default)]
    tokens: Vec<TokenInput>,
}

#[derive(Deserialize)]
struct TokenInput {
    voc: String,
    #[serde(default)]
    prefix_len: usize,
    #[serde(default)]
    stress_syllable: Option<usize>,
}

#[derive(Serialize)]
struct AnnotateRecord<'a> {
    line: usize,
    text: &'a str,
    diagnostics: &'a [String],
}

fn annotate(io: Io, format: Format, rules: &ShvaRules) -> Result<(), Failure> {
    let mut bad_lines = 0usize;
    for_chunks(&io, |first, lines, out| {
        for (i, raw) in lines.iter().enumerate() {
            let line = first + i + 1;
            let (text, diagnostics) = if raw.trim().is_empty() {
                (String::new(), Vec::new())
            } else {
                match serde_json::from_str::<AnnotateInput>(raw) {
                    Ok(input) => {
                        let hints: Vec<TokenHint> = input
                            .tokens
                            .into_iter()
                            .map(|t| TokenHint {
                                voc: t.voc,
                                prefix_len: t.prefix_len,
                                stress_syllable: t.stress_syllable,
                            })
                            .collect();
                        let a = annotate_line(&input.text, &hints, rules);
                        (a.text, a.diagnostics)
                    }
                    Err(e) => {
                        bad_lines += 1;
                        (String::new(), vec![format!("invalid JSON: {e}")])
                    }
                }
            };
            match format {
                Format::Text => {
                    for d in &diagnostics {
                        eprintln!("line {line}: {d}");
                    }
                    writeln!(out, "{text}")
                }
                Format::Jsonl => {
                    let record = AnnotateRecord {
                        line,
                        text: &text,
                        diagnostics: &diagnostics,
                    };
                    writeln!(out, "{}", serde_json::to_string(&record).map_err(hard)?)
                }
            }
            .map_err(hard)?;
        }
        Ok(())
    })?;
    if bad_lines > 0 {
        return Err(Failure::Hard(format!(
            "{bad_lines} input lines were not valid JSON"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ReportJson<'a> {
    items: usize,
    wer: f64,
    wer_sigma: f64,
    cer: f64,
    per_item: Vec<ItemJson<'a>>,
}

#[derive(Serialize)]
struct ItemJson<'a> {
    id: &'a str,
    wer: f64,
    wer_sigma: f64,
    cer: f64,
    reference: &'a str,
    hypothesis: &'a str,
}

fn report_json(report: &EvalReport) -> Result<String, Failure> {
    let json = ReportJson {
        items: report.per_item.len(),
        wer: report.wer,
        wer_sigma: report.wer_sigma,
        cer: report.cer,
        per_item: report
            .per_item
            .iter()
            .map(|i| ItemJson {
                id: &i.id,
                wer: i.wer,
                wer_sigma: i.wer_sigma,
                cer: i.cer,
                reference: &i.reference,
                hypothesis: &i.hypothesis,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&json).map_err(hard)
}

fn evaluate(
    reference: Option<PathBuf>,
    hyp: Option<PathBuf>,
    corpus: Option<PathBuf>,
    json: bool,
    engine: EngineArgs,
) -> Result<(), Failure> {
    // (id, reference, hypothesis)
    let triples: Vec<(String, String, String)> = match (reference, hyp, corpus) {
        (Some(r), Some(h), None) => {
            let refs = read_all(Some(&r)).map_err(hard)?;
            let hyps = read_all(Some(&h)).map_err(hard)?;
            let (refs, hyps): (Vec<&str>, Vec<&str>) =
                (refs.lines().collect(), hyps.lines().collect());
            if refs.len() != hyps.len() {
                return Err(hard(format!(
                    "{} has {} lines but {} has {}",
                    r.display(),
                    refs.len(),
                    h.display(),
                    hyps.len()
                )));
            }
            refs.iter()
                .zip(&hyps)
                .enumerate()
                .filter(|(_, (r, h))| !(r.trim().is_empty() && h.trim().is_empty()))
                .map(|(i, (r, h))| ((i + 1).to_string(), r.to_string(), h.to_string()))
                .collect()
        }
        (None, None, Some(path)) => {
            let items = load_metadata(&path).map_err(hard)?;
            let pipeline = build_pipeline(&engine)?;
            let hebrew: Vec<String> = items.iter().map(|i| i.hebrew.clone()).collect();
            let outputs = pipeline.process(&hebrew);
            items
                .into_iter()
                .zip(outputs)
                .map(|(item, out)| (item.id, item.ipa, out.ipa))
                .collect()
        }
        _ => {
            return Err(Failure::Usage(
                "use either --ref with --hyp, or --corpus".into(),
            ))
        }
    };
    let report = evaluate_corpus(
        triples
            .iter()
            .map(|(i, r, h)| (i.as_str(), r.as_str(), h.as_str())),
    )
    .map_err(hard)?;
    if json {
        println!("{}", report_json(&report)?);
    } else {
        print!("{}", report.table());
    }
    Ok(())
}

fn review(io: Io) -> Result<(), Failure> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut input = open_input(path_or_stdin(&io.input)).map_err(hard)?;
    loop {
        let lines = read_chunk(&mut *input as &mut dyn BufRead, CHUNK_LINES).map_err(hard)?;
        if lines.is_empty() {
            break;
        }
        for (surface, n) in
            nikud_core::pseudo_gt::build_review_list(lines.iter().map(String::as_str))
        {
            *counts.entry(surface).or_default() += n;
        }
    }
    let mut list: Vec<(String, usize)> = counts.into_iter().collect();
    list.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let mut output = open_output(path_or_stdin(&io.output)).map_err(hard)?;
    output
        .write_all(nikud_core::pseudo_gt::review_list_tsv(&list).as_bytes())
        .and_then(|_| output.flush())
        .map_err(hard)
}

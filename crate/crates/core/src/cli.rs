//! Command-line interface.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::context::{CorpusRole, IndexBuilder};
use crate::error::{Error, Result};
use crate::evalgen::{run, SuiteConfig};
use crate::lexicon::{AbbreviationDict, SpellingDict, WordDict};
use crate::pipeline::{CleanConfig, Cleaner};
use crate::scoring::Mode;
use crate::textprep::{strip_markup, RawDocument, SourceFormat};

#[derive(Debug, Parser)]
#[command(
    name = "cleantext",
    version,
    about = "Spelling correction, abbreviation expansion and case restoration for noisy text"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Clean files (or standard input) and print the result.
    Clean(Box<CleanArgs>),
    /// Build a corpus index from text files, one document per file.
    Index(IndexArgs),
    /// Inspect or edit dictionaries.
    Dict {
        #[command(subcommand)]
        action: DictAction,
    },
    /// Run the synthetic three-mode evaluation.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Plain,
    Html,
    Xml,
}

impl From<FormatArg> for SourceFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Plain => SourceFormat::Plain,
            FormatArg::Html => SourceFormat::Html,
            FormatArg::Xml => SourceFormat::Xml,
        }
    }
}

#[derive(Debug, Args)]
struct CleanArgs {
    /// TOML file with defaults for every option below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Word dictionary (word<TAB>freq[<TAB>P for proper nouns]).
    #[arg(long)]
    words: Option<PathBuf>,
    #[arg(long)]
    abbreviations: Option<PathBuf>,
    /// Spelling dictionary of error<TAB>suggestion entries.
    #[arg(long)]
    spelling: Option<PathBuf>,
    #[arg(long)]
    history: Option<PathBuf>,
    #[arg(long)]
    domain_index: Option<PathBuf>,
    #[arg(long)]
    general_index: Option<PathBuf>,
    /// Emoticon list, one per line.
    #[arg(long)]
    emoticons: Option<PathBuf>,
    /// Maximum number of dictionary suggestions per error.
    #[arg(long)]
    limit: Option<usize>,
    /// Input format; guessed from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write a JSON report of every correction here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the updated spelling dictionary here afterwards.
    #[arg(long)]
    save_spelling: Option<PathBuf>,
    /// Input files; standard input when none are given.
    files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct IndexArgs {
    #[arg(long, value_enum)]
    role: RoleArg,
    #[arg(long, short)]
    output: PathBuf,
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RoleArg {
    Domain,
    General,
}

#[derive(Debug, Subcommand)]
enum DictAction {
    /// Show how the word dictionary treats each word.
    Lookup {
        #[arg(long)]
        words: PathBuf,
        #[arg(required = true)]
        terms: Vec<String>,
    },
    /// Show the expansions of abbreviations.
    Expand {
        #[arg(long)]
        abbreviations: PathBuf,
        #[arg(required = true)]
        terms: Vec<String>,
    },
    /// Add a user entry to a spelling dictionary (created if missing).
    Add {
        #[arg(long)]
        spelling: PathBuf,
        error: String,
        suggestion: String,
    },
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of test sessions.
    #[arg(long)]
    sessions: Option<usize>,
    /// Print JSON instead of tables.
    #[arg(long)]
    json: bool,
    /// Also write the JSON result here.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Runs the CLI and returns the process exit code.
pub fn run_cli<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match command {
        Command::Clean(args) => clean(*args, stdin, stdout, stderr),
        Command::Index(args) => index(args, stdout),
        Command::Dict { action } => dict(action, stdout),
        Command::Eval(args) => eval(args, stdout),
    }
}

fn write_out(stdout: &mut dyn Write, text: &str) -> Result<()> {
    stdout.write_all(text.as_bytes()).map_err(|e| Error::io(Path::new("<stdout>"), e))
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

fn clean_config(args: &CleanArgs) -> Result<CleanConfig> {
    let mut cfg = match &args.config {
        Some(path) => CleanConfig::load(path)?,
        None => CleanConfig::default(),
    };
    let set = |slot: &mut Option<PathBuf>, value: &Option<PathBuf>| {
        if value.is_some() {
            slot.clone_from(value);
        }
    };
    set(&mut cfg.words, &args.words);
    set(&mut cfg.abbreviations, &args.abbreviations);
    set(&mut cfg.spelling, &args.spelling);
    set(&mut cfg.history, &args.history);
    set(&mut cfg.domain_index, &args.domain_index);
    set(&mut cfg.general_index, &args.general_index);
    set(&mut cfg.emoticons, &args.emoticons);
    if let Some(mode) = args.mode {
        cfg.mode = mode;
    }
    if let Some(limit) = args.limit {
        cfg.limit = limit;
    }
    if let Some(format) = args.format {
        cfg.format = Some(format.into());
    }
    Ok(cfg)
}

fn clean(args: CleanArgs, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let cfg = clean_config(&args)?;
    let cleaner = Cleaner::from_config(&cfg)?;
    for w in cleaner.warnings() {
        let _ = writeln!(stderr, "warning: {w}");
    }

    let mut inputs: Vec<(String, Vec<u8>, SourceFormat)> = Vec::new();
    if args.files.is_empty() {
        let mut bytes = Vec::new();
        stdin.read_to_end(&mut bytes).map_err(|e| Error::io(Path::new("<stdin>"), e))?;
        inputs.push(("<stdin>".into(), bytes, SourceFormat::Plain));
    } else {
        for path in &args.files {
            let format =
                path.extension().and_then(|e| e.to_str()).map_or(SourceFormat::Plain, SourceFormat::from_extension);
            inputs.push((path.display().to_string(), read_file(path)?, format));
        }
    }

    let mut report = cleaner.new_report();
    for (id, bytes, format) in inputs {
        let (doc, warning) = RawDocument::from_bytes(id, &bytes, format);
        if let Some(w) = warning {
            let _ = writeln!(stderr, "warning: {w}");
            report.warnings.push(w);
        }
        let (text, doc_report) = cleaner.clean_document(&doc);
        write_out(stdout, &text)?;
        report.push(doc_report);
    }
    if let Some(path) = &args.report {
        std::fs::write(path, report.to_json()).map_err(|e| Error::io(path, e))?;
    }
    if let Some(path) = &args.save_spelling {
        cleaner.spelling_dict().save(path)?;
    }
    Ok(())
}

fn index(args: IndexArgs, stdout: &mut dyn Write) -> Result<()> {
    let role = match args.role {
        RoleArg::Domain => CorpusRole::Domain,
        RoleArg::General => CorpusRole::General,
    };
    let mut builder = IndexBuilder::new(role);
    for path in &args.files {
        let format =
            path.extension().and_then(|e| e.to_str()).map_or(SourceFormat::Plain, SourceFormat::from_extension);
        let (doc, _) = RawDocument::from_bytes(path.display().to_string(), &read_file(path)?, format);
        builder.add_document(&strip_markup(&doc));
    }
    let index = builder.finish();
    index.save(&args.output)?;
    write_out(
        stdout,
        &format!("{} documents, {} words -> {}\n", args.files.len(), index.vocabulary_size(), args.output.display()),
    )
}

fn dict(action: DictAction, stdout: &mut dyn Write) -> Result<()> {
    match action {
        DictAction::Lookup { words, terms } => {
            let dict = WordDict::load(&words)?;
            for t in terms {
                let line = match dict.get(&t) {
                    Some(e) => format!(
                        "{t}\t{}\tfreq={}\t{}{}\n",
                        e.surface,
                        e.freq,
                        if e.proper { "proper" } else { "common" },
                        if dict.accepts(&t) { "" } else { "\trejected-as-written" }
                    ),
                    None => format!("{t}\tunknown\n"),
                };
                write_out(stdout, &line)?;
            }
            Ok(())
        }
        DictAction::Expand { abbreviations, terms } => {
            let dict = AbbreviationDict::load(&abbreviations)?;
            for t in terms {
                let found = dict.lookup(&t);
                let line =
                    if found.is_empty() { format!("{t}\tunknown\n") } else { format!("{t}\t{}\n", found.join("\t")) };
                write_out(stdout, &line)?;
            }
            Ok(())
        }
        DictAction::Add { spelling, error, suggestion } => {
            let mut dict = if spelling.exists() { SpellingDict::load(&spelling)? } else { SpellingDict::new() };
            dict.set_user(&error, &suggestion);
            dict.save(&spelling)?;
            write_out(stdout, &format!("{error} -> {suggestion}\n"))
        }
    }
}

fn eval(args: EvalArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut config = SuiteConfig::standard(args.seed);
    if let Some(n) = args.sessions {
        config.test_sessions = n;
    }
    let result = run(config)?;
    let json = result.to_json();
    if let Some(path) = &args.output {
        std::fs::write(path, &json).map_err(|e| Error::io(path, e))?;
    }
    if args.json {
        write_out(stdout, &json)?;
        write_out(stdout, "\n")
    } else {
        write_out(stdout, &result.to_table())
    }
}

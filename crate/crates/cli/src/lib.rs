//! `freedense` command-line front end.
//!
//! Exit codes: 0 on success, 2 for malformed input or arguments, 3 when the
//! entropy power iteration fails to converge, 1 for I/O failures.

pub mod reports;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use freedense::automata::Automaton;
use freedense::benois::reduced_language;
use freedense::density::{
    classify_rational, cycred_closure_counts, monte_carlo_density, relative_to_reduced, subgroup_density, to_f64, DEFAULT_COVER_BOUND,
};
use freedense::orbits::{check_blocking, is_primitive, orbit_bfs, orbit_density_profile};
use freedense::rational_expr::{compile_to_nfa, parse_expr};
use freedense::report::{counts, DensityReport, Ratio};
use freedense::sft::{build_follower_graph, entropy, nested_decay, SftSpec, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use freedense::stallings::StallingsGraph;
use freedense::words::{FreeAlphabet, ReducedWord};

use reports::*;

#[derive(Debug, Parser)]
#[command(name = "freedense", version, about = "Exact densities of rational subsets of free groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Process one input per line of this file and emit a JSON array.
    #[arg(long, global = true, value_name = "PATH")]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Densities of a finitely generated subgroup.
    Subgroup(SubgroupArgs),
    /// Zero/positive classification of a rational subset.
    Rational(RationalArgs),
    /// Exact counts of reduced words per length.
    Count(CountArgs),
    /// Subshifts of finite type.
    #[command(subcommand)]
    Sft(SftCommand),
    /// Automorphic orbit of a word (rank at most 3).
    Orbit(OrbitArgs),
    /// Monte Carlo estimate against the exact sphere ratio.
    Monkey(MonkeyArgs),
}

#[derive(Debug, Args)]
pub struct SubgroupArgs {
    #[arg(short = 'k', default_value_t = 2)]
    pub rank: usize,
    /// Comma-separated generators.
    #[arg(short = 'g', value_name = "WORDLIST", required_unless_present = "corpus")]
    pub generators: Option<String>,
    #[arg(long, default_value_t = 30)]
    pub nmax: usize,
    /// Length up to which cover certificates are verified.
    #[arg(long, default_value_t = DEFAULT_COVER_BOUND)]
    pub cover_bound: usize,
}

#[derive(Debug, Args)]
pub struct RationalArgs {
    #[arg(short = 'k', default_value_t = 2)]
    pub rank: usize,
    #[arg(short = 'e', value_name = "EXPR", required_unless_present = "corpus")]
    pub expr: Option<String>,
    #[arg(long, default_value_t = 30)]
    pub nmax: usize,
    #[arg(long, default_value_t = DEFAULT_COVER_BOUND)]
    pub cover_bound: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Payload {
    Expr,
    Gens,
}

#[derive(Debug, Args)]
pub struct LanguageInput {
    #[arg(short = 'k', default_value_t = 2)]
    pub rank: usize,
    #[arg(short = 'e', value_name = "EXPR", conflicts_with = "generators")]
    pub expr: Option<String>,
    #[arg(short = 'g', value_name = "WORDLIST")]
    pub generators: Option<String>,
    /// How corpus lines are read.
    #[arg(long = "from", value_enum, default_value_t = Payload::Expr)]
    pub from: Payload,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub input: LanguageInput,
    #[arg(long, default_value_t = 30)]
    pub nmax: usize,
    /// Include the minimal automaton of the reduced language.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Subcommand)]
pub enum SftCommand {
    /// Topological entropy (natural log).
    Entropy(EntropyArgs),
    /// Ratios of a nested shift's language counts.
    Decay(DecayArgs),
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[arg(long, required_unless_present = "corpus")]
    pub alphabet: Option<String>,
    /// Comma-separated forbidden words.
    #[arg(long, default_value = "")]
    pub forbidden: String,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct DecayArgs {
    #[arg(long)]
    pub alphabet: String,
    /// Forbidden words of the inner shift.
    #[arg(long, default_value = "")]
    pub forbidden1: String,
    /// Forbidden words of the outer shift.
    #[arg(long, default_value = "")]
    pub forbidden2: String,
    #[arg(long, default_value_t = 30)]
    pub nmax: usize,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(short = 'k', long = "rank", default_value_t = 2)]
    pub rank: usize,
    #[arg(long, required_unless_present = "corpus")]
    pub word: Option<String>,
    #[arg(long, default_value_t = 12)]
    pub bound: usize,
    /// Candidate blocking words, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub block: Vec<String>,
}

#[derive(Debug, Args)]
pub struct MonkeyArgs {
    #[command(flatten)]
    pub input: LanguageInput,
    /// Length of the sampled reduced words.
    #[arg(long, default_value_t = 20)]
    pub length: usize,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] freedense::Error),
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {source}")]
    Corpus { line: usize, source: Box<CliError> },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(freedense::Error::NoConvergence { .. }) => 3,
            CliError::Library(_) | CliError::Usage(_) => 2,
            CliError::Corpus { source, .. } => source.exit_code(),
            CliError::Io(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses a comma-separated word list; error positions refer to the whole
/// list.
pub fn parse_word_list(text: &str, alphabet: FreeAlphabet) -> freedense::Result<Vec<ReducedWord>> {
    let mut offset = 0;
    let mut words = Vec::new();
    for piece in text.split(',') {
        let word = ReducedWord::parse(piece.trim(), alphabet).map_err(|e| match e {
            freedense::Error::Parse { position, message } => {
                freedense::Error::Parse { position: position + offset + (piece.len() - piece.trim_start().len()), message }
            }
            other => other,
        })?;
        words.push(word);
        offset += piece.len() + 1;
    }
    Ok(words)
}

fn expression_language(expr: &str, alphabet: FreeAlphabet) -> freedense::Result<Automaton> {
    reduced_language(&compile_to_nfa(&parse_expr(expr, alphabet)?, alphabet))
}

fn subgroup_graph(gens: &str, alphabet: FreeAlphabet) -> freedense::Result<StallingsGraph> {
    StallingsGraph::fold_from_generators(&parse_word_list(gens, alphabet)?, alphabet)
}

fn language(payload: Payload, text: &str, alphabet: FreeAlphabet) -> freedense::Result<Automaton> {
    match payload {
        Payload::Expr => expression_language(text, alphabet),
        Payload::Gens => Ok(subgroup_graph(text, alphabet)?.to_automaton()),
    }
}

impl LanguageInput {
    /// The single payload given on the command line.
    fn payload(&self) -> CliResult<(Payload, String)> {
        match (&self.expr, &self.generators) {
            (Some(e), None) => Ok((Payload::Expr, e.clone())),
            (None, Some(g)) => Ok((Payload::Gens, g.clone())),
            _ => Err(CliError::Usage("exactly one of -e or -g is required".into())),
        }
    }
}

fn subgroup_report(args: &SubgroupArgs, gens: &str) -> CliResult<DensityReport> {
    let alphabet = FreeAlphabet::new(args.rank)?;
    let graph = subgroup_graph(gens, alphabet)?;
    Ok(DensityReport::from(&subgroup_density(&graph, args.nmax, args.cover_bound)?))
}

fn rational_report(args: &RationalArgs, expr: &str) -> CliResult<DensityReport> {
    let alphabet = FreeAlphabet::new(args.rank)?;
    let lang = expression_language(expr, alphabet)?;
    Ok(DensityReport::from(&classify_rational(&lang, args.nmax, args.cover_bound)?))
}

fn count_report(args: &CountArgs, payload: Payload, text: &str) -> CliResult<CountReport> {
    let alphabet = FreeAlphabet::new(args.input.rank)?;
    let lang = language(payload, text, alphabet)?;
    let seq = relative_to_reduced(&lang, args.nmax)?;
    let automaton = if args.dump {
        let red = freedense::automata::reduced_word_automaton(alphabet);
        Some(lang.intersect(&red)?.minimize()?.to_text())
    } else {
        None
    };
    Ok(CountReport {
        rank: args.input.rank,
        input: text.to_string(),
        counts: counts(seq.numerator.as_slice()),
        ball: counts(seq.numerator.cumulative().as_slice()),
        automaton,
    })
}

fn entropy_report(args: &EntropyArgs, alphabet: &str, forbidden: &str) -> CliResult<EntropyReport> {
    let spec = SftSpec::parse(alphabet, forbidden)?;
    let graph = build_follower_graph(&spec)?;
    let h = entropy(&graph, args.tol, args.max_iter)?;
    Ok(EntropyReport {
        alphabet: alphabet.to_string(),
        forbidden: spec.forbidden(),
        states: graph.state_count(),
        edges: graph.edge_count(),
        irreducible: true,
        entropy: sig9(h),
        growth_rate: sig9(h.exp()),
    })
}

fn decay_report(args: &DecayArgs) -> CliResult<DecayReport> {
    let inner = SftSpec::parse(&args.alphabet, &args.forbidden1)?;
    let outer = SftSpec::parse(&args.alphabet, &args.forbidden2)?;
    let ratios = nested_decay(&inner, &outer, args.nmax)?;
    Ok(DecayReport {
        alphabet: args.alphabet.clone(),
        forbidden1: inner.forbidden(),
        forbidden2: outer.forbidden(),
        n_max: args.nmax,
        final_ratio: sig9(to_f64(ratios.last().expect("n_max + 1 ratios"))),
        ratios: ratios.into_iter().map(Ratio).collect(),
    })
}

fn orbit_report(args: &OrbitArgs, word: &str) -> CliResult<OrbitReport> {
    let alphabet = FreeAlphabet::new(args.rank)?;
    let g = ReducedWord::parse(word, alphabet)?;
    let orbit = orbit_bfs(&g, args.bound, alphabet)?;
    let closure = cycred_closure_counts(&orbit.counts_by_length(), alphabet, args.bound);
    let blocking = args
        .block
        .iter()
        .map(|s| {
            let s = ReducedWord::parse(s, alphabet)?;
            Ok(BlockingVerdict { word: s.to_string(), blocks: check_blocking(&s, &g, args.bound, alphabet)? })
        })
        .collect::<freedense::Result<Vec<_>>>()?;
    Ok(OrbitReport {
        rank: args.rank,
        word: g.to_string(),
        bound: args.bound,
        primitive: is_primitive(&g, alphabet)?,
        orbit_size: orbit.len(),
        min_length: orbit.min_length(),
        counts_by_length: counts(orbit.counts_by_length().as_slice()),
        closure_counts: counts(closure.exact.as_slice()),
        closure_upper_bound: counts(closure.coarse_upper_bound.as_slice()),
        profile: orbit_density_profile(&g, args.bound, alphabet)?.into_iter().map(Ratio).collect(),
        blocking,
    })
}

fn monkey_report(args: &MonkeyArgs, payload: Payload, text: &str) -> CliResult<MonkeyReport> {
    let alphabet = FreeAlphabet::new(args.input.rank)?;
    let lang = language(payload, text, alphabet)?;
    let est = monte_carlo_density(&lang, args.length, args.trials, args.seed)?;
    let exact = relative_to_reduced(&lang, args.length)?.sphere_ratio[args.length].clone().expect("Red(X) has words of every length");
    let exact_value = to_f64(&exact);
    Ok(MonkeyReport {
        rank: args.input.rank,
        input: text.to_string(),
        length: args.length,
        trials: est.trials,
        seed: args.seed,
        hits: est.hits,
        estimate: sig9(est.estimate),
        standard_error: sig9(est.standard_error),
        exact: Ratio(exact),
        exact_value: sig9(exact_value),
        deviation: (est.standard_error > 0.0).then(|| sig9((est.estimate - exact_value).abs() / est.standard_error)),
    })
}

fn corpus_lines(path: &PathBuf) -> CliResult<Vec<(usize, String)>> {
    Ok(fs::read_to_string(path)?
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

/// Runs `f` on every corpus line in parallel, keeping input order.
fn over_corpus<T: Send>(path: &PathBuf, f: impl Fn(&str) -> CliResult<T> + Sync) -> CliResult<Vec<T>> {
    corpus_lines(path)?.par_iter().map(|(line, text)| f(text).map_err(|e| CliError::Corpus { line: *line, source: Box::new(e) })).collect()
}

fn required(value: &Option<String>, flag: &str) -> CliResult<String> {
    value.clone().ok_or_else(|| CliError::Usage(format!("{flag} is required")))
}

enum Output {
    Text(String),
    Json(String),
}

fn single<T: Serialize + Render>(report: T, json: bool) -> CliResult<Output> {
    Ok(if json { Output::Json(serde_json::to_string_pretty(&report).expect("reports serialize")) } else { Output::Text(report.render()) })
}

fn many<T: Serialize>(reports: Vec<T>) -> CliResult<Output> {
    Ok(Output::Json(serde_json::to_string_pretty(&reports).expect("reports serialize")))
}

fn execute(cli: &Cli) -> CliResult<Output> {
    let json = cli.json;
    match (&cli.command, &cli.corpus) {
        (Command::Subgroup(a), None) => single(subgroup_report(a, &required(&a.generators, "-g")?)?, json),
        (Command::Subgroup(a), Some(p)) => many(over_corpus(p, |l| subgroup_report(a, l))?),
        (Command::Rational(a), None) => single(rational_report(a, &required(&a.expr, "-e")?)?, json),
        (Command::Rational(a), Some(p)) => many(over_corpus(p, |l| rational_report(a, l))?),
        (Command::Count(a), None) => {
            let (payload, text) = a.input.payload()?;
            single(count_report(a, payload, &text)?, json)
        }
        (Command::Count(a), Some(p)) => many(over_corpus(p, |l| count_report(a, a.input.from, l))?),
        (Command::Sft(SftCommand::Entropy(a)), None) => {
            single(entropy_report(a, &required(&a.alphabet, "--alphabet")?, &a.forbidden)?, json)
        }
        (Command::Sft(SftCommand::Entropy(a)), Some(p)) => many(over_corpus(p, |l| {
            let mut parts = l.split_whitespace();
            let alphabet = parts.next().unwrap_or_default();
            entropy_report(a, alphabet, parts.next().unwrap_or_default())
        })?),
        (Command::Sft(SftCommand::Decay(a)), None) => single(decay_report(a)?, json),
        (Command::Sft(SftCommand::Decay(_)), Some(_)) => Err(CliError::Usage("sft decay has no corpus mode".into())),
        (Command::Orbit(a), None) => single(orbit_report(a, &required(&a.word, "--word")?)?, json),
        (Command::Orbit(a), Some(p)) => many(over_corpus(p, |l| orbit_report(a, l))?),
        (Command::Monkey(a), None) => {
            let (payload, text) = a.input.payload()?;
            single(monkey_report(a, payload, &text)?, json)
        }
        (Command::Monkey(a), Some(p)) => many(over_corpus(p, |l| monkey_report(a, a.input.from, l))?),
    }
}

/// Parses `argv`, runs one subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let mut text = match output {
                Output::Text(t) | Output::Json(t) => t,
            };
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.out {
                Some(path) => fs::write(path, text),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("freedense: {}", CliError::Io(e));
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("freedense: {e}");
            e.exit_code()
        }
    }
}

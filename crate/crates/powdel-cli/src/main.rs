//! Command-line front end: deletability checks, grammar tooling, and the
//! finite verification sweeps, with scriptable text or JSON output.
//!
//! Exit codes: 0 success or membership true, 1 membership false or a failed
//! verification, 2 usage error, 3 truncated or incomplete search. Words are
//! ASCII over a..z; ε is written "-" on the command line and in text output,
//! and "" in JSON.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use powdel::analysis::{default_params, THEOREMS};
use powdel::{
    build_epsilon_indexed, build_epsilon_lig, build_power_grammar, build_square_lig,
    deletion_certificate, enumerate_language, fibonacci_word, insert_once, insert_star_bounded,
    insertion_closure_indexed, insertion_closure_lig, member, mn_witnesses, oracle_verdict,
    residues, squarefree_word, verify_theorem, Alphabet, AnalysisError, EnumerationBounds,
    GrammarCore, TheoremParams, Word,
};

/// Residue searches explore a finite space; this cap only guards against
/// adversarially long inputs.
const RESIDUE_CAP: usize = 10_000_000;

#[derive(Parser)]
#[command(
    name = "powdel",
    version,
    about = "Power-deletion toolkit: u x^p v -> u v rewriting"
)]
struct Cli {
    /// Output format; defaults to text, except for oracle, mn-witness and
    /// verify which default to json
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct WordArgs {
    /// alphabet size; words use the first k lowercase letters
    #[arg(long)]
    k: usize,
    /// power exponent p
    #[arg(long)]
    p: usize,
    /// the word; "-" stands for the empty word
    word: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide p-deletability and list the reachable power-free residues
    Check(WordArgs),
    /// Print an explicit deletion sequence ending at the empty word
    Certificate(WordArgs),
    /// Closed-form verdict without search, where one applies
    Oracle(WordArgs),
    /// Deterministic word generators
    #[command(subcommand)]
    Gen(GenCommand),
    /// Build, enumerate and query the grammar engines
    #[command(subcommand)]
    Grammar(GrammarCommand),
    /// Insert words of one language into another, once or iterated
    Insert {
        /// host language file, one word per line ("-" for the empty word)
        #[arg(long)]
        l1: PathBuf,
        /// inserted language file, same layout
        #[arg(long)]
        l2: PathBuf,
        /// keep only words up to this length
        #[arg(long)]
        cap: usize,
        /// iterate insertion to its bounded fixed point
        #[arg(long)]
        star: bool,
    },
    /// Prefixes of the square-free word pairwise distinguished by verified
    /// separating suffixes
    MnWitness {
        /// alphabet size (at least 3)
        #[arg(long)]
        k: usize,
        /// how many prefixes to emit
        #[arg(long)]
        count: usize,
        /// cap on words visited by the verifying searches
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: usize,
    },
    /// Exhaustively check one documented result on a finite range
    Verify {
        /// which sweep to run; see --help for the list
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(THEOREMS))]
        theorem: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        maxlen: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Prefix of the square-free fixed point of a -> abc, b -> ac, c -> b
    Squarefree {
        #[arg(long)]
        length: usize,
    },
    /// Fibonacci word S_n (S_0 = a, S_1 = ab, S_n = S_{n-2} S_{n-1})
    Fibonacci {
        #[arg(long)]
        index: usize,
    },
}

#[derive(Subcommand)]
enum GrammarCommand {
    /// Write one of the built-in grammars as JSON
    #[command(subcommand)]
    Build(BuildCommand),
    /// Every derivable word up to a length bound
    Enum {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        maxlen: usize,
    },
    /// Bounded membership of one word
    Member {
        #[arg(long)]
        grammar: PathBuf,
        /// search length bound; defaults to the word's length
        #[arg(long)]
        maxlen: Option<usize>,
        /// the word; "-" stands for the empty word
        word: String,
    },
}

#[derive(Subcommand)]
enum BuildCommand {
    /// p-th powers u^p over k letters (indexed grammar)
    Power {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        /// output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Squares uu over k letters (linear indexed grammar)
    Square {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The one-word language containing only the empty word
    Epsilon {
        /// linear indexed instead of indexed
        #[arg(long)]
        lig: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The p-deletable words: powers inserted into the empty word, iterated
    Closure {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// build over the linear indexed square grammar (p must be 2)
        #[arg(long)]
        lig: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn failure(message: impl Into<String>) -> CliError {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    fn truncated(message: impl Into<String>) -> CliError {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse_word(k: usize, s: &str) -> Result<Word, CliError> {
    if s == "-" {
        return Ok(Word::empty());
    }
    let alphabet = Alphabet::new(k).map_err(|e| CliError::usage(e.to_string()))?;
    alphabet
        .parse_word(s)
        .map_err(|e| CliError::usage(e.to_string()))
}

fn display(w: &Word) -> String {
    if w.is_empty() {
        "-".to_string()
    } else {
        w.to_string()
    }
}

fn check_exponent(p: usize) -> Result<(), CliError> {
    if p == 0 {
        return Err(CliError::usage("the exponent p must be at least 1"));
    }
    Ok(())
}

fn json_line(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn map_analysis_error(err: AnalysisError) -> CliError {
    match err {
        AnalysisError::UnknownTheorem(_) | AnalysisError::BadParams(_) => {
            CliError::usage(err.to_string())
        }
        AnalysisError::BudgetExceeded { .. } => CliError::truncated(err.to_string()),
        AnalysisError::SeparatorUnverified { .. } => CliError::failure(err.to_string()),
    }
}

fn read_word_set(path: &Path) -> Result<BTreeSet<Word>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let mut set = BTreeSet::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        set.insert(parse_word(26, line)?);
    }
    Ok(set)
}

fn load_grammar(path: &Path) -> Result<GrammarCore, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    GrammarCore::from_json(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, contents)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let fmt = |default| cli.format.unwrap_or(default);
    match cli.command {
        Command::Check(args) => check(fmt(Format::Text), args),
        Command::Certificate(args) => certificate(fmt(Format::Text), args),
        Command::Oracle(args) => oracle(fmt(Format::Json), args),
        Command::Gen(gen) => generate(fmt(Format::Text), gen),
        Command::Grammar(cmd) => grammar(fmt(Format::Text), cmd),
        Command::Insert { l1, l2, cap, star } => insert(fmt(Format::Text), &l1, &l2, cap, star),
        Command::MnWitness { k, count, budget } => witnesses(fmt(Format::Json), k, count, budget),
        Command::Verify {
            theorem,
            k,
            p,
            maxlen,
        } => verify(fmt(Format::Json), &theorem, k, p, maxlen),
    }
}

fn check(format: Format, args: WordArgs) -> Result<ExitCode, CliError> {
    check_exponent(args.p)?;
    let word = parse_word(args.k, &args.word)?;
    let report = residues(&word, args.p, RESIDUE_CAP);
    if report.truncated {
        return Err(CliError::truncated(format!(
            "residue search truncated after visiting {} words",
            report.visited_count
        )));
    }
    match format {
        Format::Text => {
            if report.deletable {
                let list: Vec<String> = report.residues.iter().map(display).collect();
                println!(
                    "deletable=true strong={} residues=[{}]",
                    report.strongly_deletable,
                    list.join(",")
                );
            } else {
                println!("deletable=false");
            }
        }
        Format::Json => println!("{}", json_line(&report)),
    }
    Ok(exit(report.deletable))
}

fn certificate(format: Format, args: WordArgs) -> Result<ExitCode, CliError> {
    check_exponent(args.p)?;
    let word = parse_word(args.k, &args.word)?;
    let Some(steps) = deletion_certificate(&word, args.p) else {
        return Err(CliError::failure("not deletable: no certificate exists"));
    };
    match format {
        Format::Text => {
            for step in &steps {
                let occ = step.occurrence;
                let block = Word::from_letters(
                    step.before.letters()[occ.start..occ.start + occ.period].to_vec(),
                );
                println!(
                    "{} -> {} (delete {}^{} at {})",
                    display(&step.before),
                    display(&step.after),
                    block,
                    occ.exponent,
                    occ.start
                );
            }
        }
        Format::Json => {
            let rendered: Vec<serde_json::Value> = steps
                .iter()
                .map(|step| {
                    serde_json::json!({
                        "before": step.before.to_string(),
                        "after": step.after.to_string(),
                        "start": step.occurrence.start,
                        "period": step.occurrence.period,
                        "exponent": step.occurrence.exponent,
                    })
                })
                .collect();
            println!("{}", json_line(&rendered));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(format: Format, args: WordArgs) -> Result<ExitCode, CliError> {
    check_exponent(args.p)?;
    let word = parse_word(args.k, &args.word)?;
    let Some(verdict) = oracle_verdict(&word, args.k, args.p) else {
        return Err(CliError::truncated(format!(
            "no closed form applies for k={} p={}",
            args.k, args.p
        )));
    };
    match format {
        Format::Text => {
            let rule = serde_json::to_value(verdict.rule).expect("rule name");
            println!(
                "verdict={} rule={}",
                verdict.verdict,
                rule.as_str().expect("rule serializes as a string")
            );
        }
        Format::Json => println!("{}", json_line(&verdict)),
    }
    Ok(exit(verdict.verdict))
}

fn generate(format: Format, gen: GenCommand) -> Result<ExitCode, CliError> {
    let word = match gen {
        GenCommand::Squarefree { length } => squarefree_word(length),
        GenCommand::Fibonacci { index } => fibonacci_word(index),
    };
    match format {
        Format::Text => println!("{}", display(&word)),
        Format::Json => println!(
            "{}",
            json_line(&serde_json::json!({ "word": word.to_string() }))
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn grammar(format: Format, cmd: GrammarCommand) -> Result<ExitCode, CliError> {
    match cmd {
        GrammarCommand::Build(which) => build(which),
        GrammarCommand::Enum { grammar, maxlen } => {
            let core = load_grammar(&grammar)?;
            let result = enumerate_language(&core, &EnumerationBounds::for_length(maxlen));
            match format {
                Format::Text => {
                    for w in &result.words {
                        println!("{}", display(w));
                    }
                }
                Format::Json => {
                    let words: Vec<String> = result.words.iter().map(Word::to_string).collect();
                    let doc = serde_json::json!({
                        "complete": result.complete,
                        "states_explored": result.states_explored,
                        "words": words,
                    });
                    println!("{}", json_line(&doc));
                }
            }
            if result.complete {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("warning: enumeration incomplete, a safety fuse tripped");
                Ok(ExitCode::from(3))
            }
        }
        GrammarCommand::Member {
            grammar,
            maxlen,
            word,
        } => {
            let core = load_grammar(&grammar)?;
            let word = parse_word(26, &word)?;
            let bounds = EnumerationBounds::for_length(maxlen.unwrap_or(word.len()));
            match member(&core, &word, &bounds) {
                Ok(found) => {
                    match format {
                        Format::Text => println!("{found}"),
                        Format::Json => {
                            println!("{}", json_line(&serde_json::json!({ "member": found })))
                        }
                    }
                    Ok(exit(found))
                }
                Err(_) => Err(CliError::truncated(
                    "membership search incomplete: a safety fuse tripped",
                )),
            }
        }
    }
}

fn build(which: BuildCommand) -> Result<ExitCode, CliError> {
    let check_k = |k| Alphabet::new(k).map_err(|e| CliError::usage(e.to_string()));
    let (doc, out) = match which {
        BuildCommand::Power { k, p, out } => {
            check_k(k)?;
            check_exponent(p)?;
            (build_power_grammar(k, p).core().to_json(), out)
        }
        BuildCommand::Square { k, out } => {
            check_k(k)?;
            (build_square_lig(k).core().to_json(), out)
        }
        BuildCommand::Epsilon { lig, out } => {
            let doc = if lig {
                build_epsilon_lig().core().to_json()
            } else {
                build_epsilon_indexed().core().to_json()
            };
            (doc, out)
        }
        BuildCommand::Closure { k, p, lig, out } => {
            check_k(k)?;
            check_exponent(p)?;
            let doc = if lig {
                if p != 2 {
                    return Err(CliError::usage(
                        "the linear indexed closure is built over squares; use p = 2",
                    ));
                }
                insertion_closure_lig(&build_epsilon_lig(), &build_square_lig(k))
                    .core()
                    .to_json()
            } else {
                insertion_closure_indexed(&build_epsilon_indexed(), &build_power_grammar(k, p))
                    .core()
                    .to_json()
            };
            (doc, out)
        }
    };
    write_out(out.as_deref(), &doc)?;
    Ok(ExitCode::SUCCESS)
}

fn insert(
    format: Format,
    l1: &Path,
    l2: &Path,
    cap: usize,
    star: bool,
) -> Result<ExitCode, CliError> {
    let host = read_word_set(l1)?;
    let inserted = read_word_set(l2)?;
    let result = if star {
        insert_star_bounded(&host, &inserted, cap)
    } else {
        insert_once(&host, &inserted, cap)
    };
    match format {
        Format::Text => {
            for w in &result {
                println!("{}", display(w));
            }
        }
        Format::Json => {
            let words: Vec<String> = result.iter().map(Word::to_string).collect();
            println!("{}", json_line(&words));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn witnesses(format: Format, k: usize, count: usize, budget: usize) -> Result<ExitCode, CliError> {
    let set = mn_witnesses(k, count, budget).map_err(map_analysis_error)?;
    match format {
        Format::Text => {
            println!("language: {}", set.language);
            for (i, w) in set.prefixes.iter().enumerate() {
                println!("prefix {i}: {}", display(w));
            }
            for m in 0..set.prefixes.len() {
                for n in m + 1..set.prefixes.len() {
                    if let Some(z) = &set.separators[m][n] {
                        println!("separator {m} {n}: {}", display(z));
                    }
                }
            }
        }
        Format::Json => println!("{}", json_line(&set)),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(
    format: Format,
    theorem: &str,
    k: Option<usize>,
    p: Option<usize>,
    maxlen: Option<usize>,
) -> Result<ExitCode, CliError> {
    let defaults = default_params(theorem).ok_or_else(|| {
        CliError::usage(format!(
            "unknown theorem {theorem:?}; known: {}",
            THEOREMS.join(", ")
        ))
    })?;
    let params = TheoremParams {
        k: k.unwrap_or(defaults.k),
        p: p.unwrap_or(defaults.p),
        maxlen: maxlen.unwrap_or(defaults.maxlen),
    };
    let report = verify_theorem(theorem, params).map_err(map_analysis_error)?;
    match format {
        Format::Text => {
            println!(
                "theorem={} k={} p={} maxlen={} checked={} passed={}",
                report.theorem,
                report.k,
                report.p,
                report.maxlen,
                report.checked_count,
                report.passed
            );
            for w in &report.counterexamples {
                println!("counterexample: {}", display(w));
            }
        }
        Format::Json => println!("{}", json_line(&report)),
    }
    Ok(exit(report.passed))
}

//! Command-line front end for braidkit.
//!
//! Exit codes: 0 for a definite answer, 2 when a search budget ran out,
//! 1 for errors and failed verification.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use braidkit::curves::preserves;
use braidkit::garside::CertificateJson;
use braidkit::harness::{InstanceParams, TrialConfig};
use braidkit::regular::{regular_conjugacy_test, to_regular_form};
use braidkit::{
    brute_force_root, classify_periodic, conjugacy_via_powers, equals, normal_form, run_trials,
    standardize_periodic, BraidError, BraidWord, ConjugacyCertificate, ConjugacyOutcome,
    CurveSystem, Family, RegularFormResult, RootOutcome, TubularDecomposition,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "braidkit", version, about = "Braid group computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Summit-set element budget for conjugacy searches.
    #[arg(long, global = true, default_value_t = 10_000)]
    budget: usize,
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Strands {
    /// Number of strands.
    #[arg(short = 'n', long = "strands")]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Left normal form of a word.
    Normalize {
        #[command(flatten)]
        s: Strands,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Whether two words are the same braid.
    Eq {
        #[command(flatten)]
        s: Strands,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Product of two words.
    Mul {
        #[command(flatten)]
        s: Strands,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Inverse of a word.
    Inv {
        #[command(flatten)]
        s: Strands,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// k-th power of a word.
    Pow {
        #[command(flatten)]
        s: Strands,
        #[arg(short = 'k', long, allow_hyphen_values = true)]
        k: i64,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Exponent sum.
    Expsum {
        #[command(flatten)]
        s: Strands,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Underlying permutation.
    Perm {
        #[command(flatten)]
        s: Strands,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Periodic class: base and exponent.
    Periodic {
        #[command(flatten)]
        s: Strands,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Certificate conjugating a periodic braid onto its standard power.
    Standardize {
        #[command(flatten)]
        s: Strands,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Whether a braid maps a curve system to itself.
    CurvesPreserves {
        /// Curve system, e.g. "n=4; [1-2],[3-4]".
        #[arg(long)]
        curves: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Tubular decomposition of a braid preserving a curve system.
    Decompose {
        #[arg(long)]
        curves: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Braid of a decomposition read from a file ("-" for standard input).
    Embed { file: PathBuf },
    /// Regular form of a decomposition read from a file.
    RegularForm { file: PathBuf },
    /// Conjugacy of two decompositions inside the stabilizer of their curves.
    RegConj { a: PathBuf, b: PathBuf },
    /// Certify conjugacy of two braids with equal k-th powers.
    RootsConj {
        #[command(flatten)]
        s: Strands,
        #[arg(short = 'k', long, allow_hyphen_values = true)]
        k: i64,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// All k-th roots up to a letter bound, one word per element.
    BruteRoot {
        #[command(flatten)]
        s: Strands,
        #[arg(short = 'k', long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 4)]
        max_letters: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Run seeded harness trials and write a JSON-lines report.
    Verify {
        #[arg(long, default_value_t = 30)]
        trials: usize,
        /// Master seed as a hex string.
        #[arg(long, default_value = "2a")]
        seed: String,
        /// Comma-separated family tags (F1..F4).
        #[arg(long, value_delimiter = ',', default_value = "F1,F2,F3")]
        families: Vec<String>,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
}

/// Rendered result and its exit code.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Self {
            text: text.into(),
            json,
            code: 0,
        }
    }
}

fn word(n: usize, text: &str) -> anyhow::Result<BraidWord> {
    BraidWord::parse(text, n).with_context(|| format!("cannot parse braid word {text:?}"))
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn decomposition_json(d: &TubularDecomposition) -> Value {
    json!({
        "curves": d.curves().to_string(),
        "tubular": d.tubular().format(),
        "interiors": d.interiors().iter().map(BraidWord::format).collect::<Vec<_>>(),
    })
}

fn certificate_output(cert: &ConjugacyCertificate) -> Output {
    // certificates print as JSON in either format
    let j: CertificateJson = cert.to_json();
    let json = serde_json::to_value(&j).expect("serializable");
    Output {
        text: json.to_string(),
        json,
        code: if cert.verified { 0 } else { 1 },
    }
}

fn conjugacy_output(out: &ConjugacyOutcome) -> Output {
    match out {
        ConjugacyOutcome::Conjugate(c) => certificate_output(c),
        ConjugacyOutcome::NotConjugate => {
            Output::ok("not conjugate", json!({"outcome": "NotConjugate"}))
        }
        ConjugacyOutcome::Unknown => Output {
            text: "unknown".into(),
            json: json!({"outcome": "Unknown"}),
            code: 2,
        },
    }
}

fn bool_output(b: bool) -> Output {
    Output::ok(b.to_string(), json!(b))
}

fn word_output(w: &BraidWord) -> Output {
    Output::ok(w.format(), json!(w.format()))
}

fn run(cmd: Command, g: &Global) -> anyhow::Result<Output> {
    let budget = g.budget;
    Ok(match cmd {
        Command::Normalize { s, word: w } => {
            let nf = normal_form(&word(s.n, &w)?)?.format();
            Output::ok(nf.clone(), json!(nf))
        }
        Command::Eq { s, a, b } => bool_output(equals(&word(s.n, &a)?, &word(s.n, &b)?)?),
        Command::Mul { s, a, b } => word_output(&word(s.n, &a)?.multiply(&word(s.n, &b)?)?),
        Command::Inv { s, word: w } => word_output(&word(s.n, &w)?.inverse()),
        Command::Pow { s, k, word: w } => word_output(&word(s.n, &w)?.power(k)),
        Command::Expsum { s, word: w } => {
            let e = word(s.n, &w)?.exponent_sum();
            Output::ok(e.to_string(), json!(e))
        }
        Command::Perm { s, word: w } => {
            let p = word(s.n, &w)?.underlying_permutation();
            Output::ok(p.to_string(), json!(p.images()))
        }
        Command::Periodic { s, word: w } => {
            let c = classify_periodic(&word(s.n, &w)?)?;
            let j = json!({"base": c.base, "t": c.t});
            Output::ok(j.to_string(), j)
        }
        Command::Standardize { s, word: w } => {
            certificate_output(&standardize_periodic(&word(s.n, &w)?, budget)?)
        }
        Command::CurvesPreserves { curves, word: w } => {
            let c: CurveSystem = curves.parse()?;
            bool_output(preserves(&word(c.punctures(), &w)?, &c)?)
        }
        Command::Decompose { curves, word: w } => {
            let c: CurveSystem = curves.parse()?;
            let d = TubularDecomposition::extract(&word(c.punctures(), &w)?, &c)?;
            Output::ok(d.to_string(), decomposition_json(&d))
        }
        Command::Embed { file } => {
            let d: TubularDecomposition = read_input(&file)?.parse()?;
            word_output(&d.embed())
        }
        Command::RegularForm { file } => {
            let d: TubularDecomposition = read_input(&file)?.parse()?;
            let r = to_regular_form(&d, budget)?;
            let j = json!({
                "regular": decomposition_json(&r.regular),
                "kappa": r.kappa.iter().map(BraidWord::format).collect::<Vec<_>>(),
                "conjugator": r.conjugator.format(),
            });
            Output::ok(r.to_string(), j)
        }
        Command::RegConj { a, b } => {
            let da: TubularDecomposition = read_input(&a)?.parse()?;
            let db: TubularDecomposition = read_input(&b)?.parse()?;
            let (ra, rb): (RegularFormResult, RegularFormResult) =
                (to_regular_form(&da, budget)?, to_regular_form(&db, budget)?);
            match regular_conjugacy_test(&ra, &rb, budget)? {
                ConjugacyOutcome::Conjugate(c) => {
                    // relate the inputs rather than their regular forms
                    let w = ra
                        .conjugator
                        .multiply(&c.witness)?
                        .multiply(&rb.conjugator.inverse())?;
                    certificate_output(&ConjugacyCertificate::new(da.embed(), db.embed(), w)?)
                }
                other => conjugacy_output(&other),
            }
        }
        Command::RootsConj { s, k, a, b } => {
            let (a, b) = (word(s.n, &a)?, word(s.n, &b)?);
            match conjugacy_via_powers(&a, &b, k, None, budget)? {
                RootOutcome::CertifiedConjugate(c) => certificate_output(&c),
                RootOutcome::Equal => Output::ok("equal", json!({"outcome": "Equal"})),
                RootOutcome::Unknown => Output {
                    text: "unknown".into(),
                    json: json!({"outcome": "Unknown"}),
                    code: 2,
                },
                RootOutcome::PreconditionFailed { alpha_k, beta_k } => Output {
                    text: format!(
                        "precondition failed: powers differ\nalpha^k: {alpha_k}\nbeta^k: {beta_k}"
                    ),
                    json: json!({"outcome": "PreconditionFailed", "alpha_k": alpha_k, "beta_k": beta_k}),
                    code: 1,
                },
            }
        }
        Command::BruteRoot {
            s,
            k,
            max_letters,
            word: w,
        } => {
            let roots = brute_force_root(&word(s.n, &w)?, k, max_letters)?;
            let words: Vec<String> = roots.iter().map(BraidWord::format).collect();
            let text = words
                .iter()
                .map(|w| if w.is_empty() { "e" } else { w })
                .collect::<Vec<_>>()
                .join("\n");
            Output::ok(text, json!(words))
        }
        Command::Verify {
            trials,
            seed,
            families,
            max_n,
        } => {
            let seed = u64::from_str_radix(seed.trim_start_matches("0x"), 16)
                .with_context(|| format!("seed {seed:?} is not a hex string"))?;
            let families = families
                .iter()
                .map(|f| f.parse::<Family>())
                .collect::<Result<Vec<_>, _>>()?;
            let config = TrialConfig {
                families,
                trials,
                seed,
                budget,
                params: InstanceParams {
                    max_n,
                    ..Default::default()
                },
            };
            let run = run_trials(&config)?;
            let lines = run.to_json_lines();
            let s = &run.summary;
            let code = if s.unexpected > s.unknown || s.errors > 0 {
                1
            } else if s.unknown > 0 {
                2
            } else {
                0
            };
            // the report is JSON lines in either format
            Output {
                text: lines.trim_end().to_string(),
                json: Value::String(lines.trim_end().to_string()),
                code,
            }
        }
    })
}

fn emit(out: &Output, g: &Global, raw: bool) -> anyhow::Result<()> {
    let body = match (g.format, raw) {
        (Format::Text, _) | (_, true) => out.text.clone(),
        (Format::Json, false) => out.json.to_string(),
    };
    match &g.out {
        Some(p) => std::fs::write(p, format!("{body}\n"))
            .with_context(|| format!("cannot write {}", p.display()))?,
        None => writeln!(std::io::stdout(), "{body}")?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let raw = matches!(cli.command, Command::Verify { .. });
    match run(cli.command, &cli.global) {
        Ok(out) => match emit(&out, &cli.global, raw) {
            Ok(()) => ExitCode::from(out.code),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e
                .downcast_ref::<BraidError>()
                .is_some_and(|b| matches!(b, BraidError::BudgetExceeded(_)));
            if budget {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

//! Command-line front end. [`run`] parses arguments, dispatches, writes
//! output and returns the process exit code.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coalgebra::{family, family_names, Coalgebra, CoalgebraMorphism};
use crate::coradical::coradical;
use crate::document::{self, format_subspace, parse_basis_spec, DocumentError};
use crate::error::Error;
use crate::field::Field;
use crate::report::VerificationReport;
use crate::verify::{
    builtin_corpus, lemma_suite, stress, verify_corollary, verify_theorem, CorpusEntry, HrInstance, HrReport,
    LemmaConfig, Provenance, StressConfig, Verdict, DEFAULT_DIM_CAP,
};
use crate::wedge::{build_filtration_with, strategy, strategy_names, wedge, SizeCap};

/// Version of the JSON output layout.
pub const SCHEMA_VERSION: u32 = 1;

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 2;
    pub const UNSUPPORTED_FIELD: i32 = 3;
    pub const COUNTEREXAMPLE: i32 = 4;
    pub const INTERNAL: i32 = 70;
    pub const USAGE: i32 = 64;
    pub const IO: i32 = 74;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "wedgekit", version, about = "Wedge filtrations and injectivity checks for finite-dimensional coalgebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    output: OutputFormat,

    /// Largest explicit tensor power, in coordinates (overrides WEDGEKIT_SIZE_CAP).
    #[arg(long, global = true)]
    size_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check coassociativity and the counit laws.
    Validate { file: String },
    /// Basis of X ∧ Y.
    Wedge {
        file: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Stages of the wedge filtration of a subcoalgebra D.
    Filtration {
        file: String,
        #[arg(long)]
        d: String,
        /// Wedge power strategy.
        #[arg(long, default_value = "recursive")]
        strategy: String,
    },
    /// Coradical and nilpotency of the dual radical (over Q).
    Coradical { file: String },
    /// Test injectivity of f along the filtration of D.
    VerifyHr {
        file: String,
        #[arg(long)]
        d: String,
        #[arg(long)]
        map: String,
    },
    /// As verify-hr with D the coradical.
    VerifyHrCorollary {
        file: String,
        #[arg(long)]
        map: String,
    },
    /// Axioms and filtration lemmas on a corpus.
    LemmaSuite(LemmaArgs),
    /// Seeded random instances of the injectivity theorem.
    Stress {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: Field,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the document of a built-in family member.
    Gen {
        family: String,
        size: usize,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: Field,
    },
}

#[derive(Debug, Args)]
struct LemmaArgs {
    /// `built-in` or a directory of coalgebra documents.
    #[arg(long, default_value = "built-in")]
    corpus: String,
    /// Field of the built-in corpus.
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    field: Field,
    #[arg(long, default_value_t = 100)]
    configs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    s.parse()
}

/// A failed command: exit code plus message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedField(_) => exit::UNSUPPORTED_FIELD,
            Error::Internal(_) => exit::INTERNAL,
            _ => exit::USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        let code = match e {
            DocumentError::Axiom { .. } => exit::FAILED,
            _ => exit::USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

/// Command output: a JSON value plus its text rendering, and an exit code.
struct Outcome {
    json: Value,
    text: String,
    code: i32,
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    size_cap: SizeCap,
}

impl Context<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::new(exit::IO, format!("stdin: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| Failure::new(exit::IO, format!("{path}: {e}")))
        }
    }

    fn coalgebra(&mut self, path: &str) -> Result<Coalgebra, Failure> {
        let text = self.read(path)?;
        Ok(document::parse(&text)?)
    }

    fn morphism(&mut self, source: &Coalgebra, path: &str) -> Result<CoalgebraMorphism, Failure> {
        let text = self.read(path)?;
        Ok(document::parse_morphism(source, &text)?)
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let size_cap = cli.size_cap.map(SizeCap).unwrap_or_else(SizeCap::from_env);
    let mut ctx = Context { stdin, size_cap };
    let output = cli.output;
    let result = match cli.command {
        Command::Gen { family, size, field } => gen(&family, size, field).map(|doc| {
            let _ = stdout.write_all(doc.as_bytes());
            None
        }),
        other => dispatch(&mut ctx, other).map(Some),
    };
    match result {
        Ok(None) => exit::OK,
        Ok(Some(out)) => {
            let body = match output {
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&out.json).expect("json values serialize");
                    s.push('\n');
                    s
                }
                OutputFormat::Text => out.text,
            };
            if let Err(e) = stdout.write_all(body.as_bytes()) {
                let _ = writeln!(stderr, "wedgekit: {e}");
                return exit::IO;
            }
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "wedgekit: {}", f.message);
            f.code
        }
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v
}

fn gen(name: &str, size: usize, field: Field) -> Result<String, Failure> {
    let fam = family(name).ok_or_else(|| {
        Failure::new(
            exit::USAGE,
            format!("unknown family `{name}` (known: {})", family_names().join(", ")),
        )
    })?;
    Ok(document::serialize(&fam.build(field, size)?))
}

fn report_json(r: &VerificationReport) -> Value {
    json!({
        "passed": r.passed(),
        "checks": r.len(),
        "failed": r.failures().count(),
        "report": r,
    })
}

fn subspace_json(c: &Coalgebra, x: &crate::linalg::Subspace) -> Value {
    json!({ "dim": x.dim(), "basis": format_subspace(c, x) })
}

fn subspace_text(c: &Coalgebra, x: &crate::linalg::Subspace) -> String {
    let basis = format_subspace(c, x);
    if basis.is_empty() {
        "0".to_string()
    } else {
        format!("span{{{}}}", basis.join(", "))
    }
}

fn hr_outcome(command: &str, r: &HrReport) -> Outcome {
    let verdict = serde_json::to_value(r.verdict).expect("verdicts serialize");
    let text = format!(
        "premise (f∘δ₂ injective): {}\nconclusion (f∘δ̃ injective): {}\ninduction trace: {:?}\nstage dims: {:?}\nstabilization index: {}\nverdict: {}\n",
        r.premise_holds,
        r.conclusion_holds,
        r.induction_trace,
        r.stage_dims,
        r.stabilization_index,
        verdict.as_str().unwrap_or_default()
    );
    Outcome {
        json: envelope(command, serde_json::to_value(r).expect("reports serialize")),
        text,
        code: verdict_exit_code(r.verdict),
    }
}

/// Exit status of `verify-hr` and `verify-hr-corollary` for a verdict.
pub fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Counterexample => exit::COUNTEREXAMPLE,
        Verdict::Consistent | Verdict::PremiseViolated => exit::OK,
    }
}

fn dispatch(ctx: &mut Context<'_>, command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Validate { file } => {
            let text = ctx.read(&file)?;
            let c = document::parse_unchecked(&text)?;
            let r = c.check_axioms();
            let body = json!({ "field": c.field().to_string(), "dim": c.dim() });
            let mut json = envelope("validate", body);
            if let (Value::Object(dst), Value::Object(src)) = (&mut json, report_json(&r)) {
                dst.extend(src);
            }
            Ok(Outcome {
                json,
                text: format!("{r}\n"),
                code: if r.passed() { exit::OK } else { exit::FAILED },
            })
        }
        Command::Wedge { file, x, y } => {
            let c = ctx.coalgebra(&file)?;
            let xs = parse_basis_spec(&c, &x)?;
            let ys = parse_basis_spec(&c, &y)?;
            let w = wedge(&c, &xs, &ys)?;
            Ok(Outcome {
                json: envelope("wedge", json!({ "x": subspace_json(&c, &xs), "y": subspace_json(&c, &ys), "wedge": subspace_json(&c, &w) })),
                text: format!("X ∧ Y = {} (dim {})\n", subspace_text(&c, &w), w.dim()),
                code: exit::OK,
            })
        }
        Command::Filtration { file, d, strategy: name } => {
            let c = ctx.coalgebra(&file)?;
            let ds = parse_basis_spec(&c, &d)?;
            let strat = strategy(&name).ok_or_else(|| {
                Failure::new(
                    exit::USAGE,
                    format!("unknown strategy `{name}` (known: {})", strategy_names().join(", ")),
                )
            })?;
            let f = build_filtration_with(&c, &ds, strat, ctx.size_cap)?;
            let stages: Vec<Value> = f.stages().iter().map(|s| subspace_json(&c, s)).collect();
            let dims: Vec<usize> = f.stages().iter().map(|s| s.dim()).collect();
            let mut text = String::new();
            for (n, s) in f.stages().iter().enumerate() {
                text.push_str(&format!("D^{n} = {} (dim {})\n", subspace_text(&c, s), s.dim()));
            }
            text.push_str(&format!(
                "stabilization index: {}\ncolimit: dim {} of {}{}\n",
                f.stabilization_index(),
                f.colimit().dim(),
                c.dim(),
                if f.exhausts() { " (exhausts E)" } else { "" }
            ));
            Ok(Outcome {
                json: envelope(
                    "filtration",
                    json!({
                        "strategy": strat.name(),
                        "stage_dims": dims,
                        "stages": stages,
                        "stabilization_index": f.stabilization_index(),
                        "colimit": subspace_json(&c, f.colimit()),
                        "exhausts": f.exhausts(),
                    }),
                ),
                text,
                code: exit::OK,
            })
        }
        Command::Coradical { file } => {
            let c = ctx.coalgebra(&file)?;
            let r = coradical(&c)?;
            Ok(Outcome {
                json: envelope(
                    "coradical",
                    json!({
                        "coradical": subspace_json(&c, &r.coradical),
                        "radical_dim": r.radical.dim(),
                        "nilpotency_index": r.nilpotency_witness,
                    }),
                ),
                text: format!(
                    "coradical: {} (dim {})\ndual radical: dim {}, nilpotency index {}\n",
                    subspace_text(&c, &r.coradical),
                    r.coradical.dim(),
                    r.radical.dim(),
                    r.nilpotency_witness
                ),
                code: exit::OK,
            })
        }
        Command::VerifyHr { file, d, map } => {
            let e = ctx.coalgebra(&file)?;
            let ds = parse_basis_spec(&e, &d)?;
            let f = ctx.morphism(&e, &map)?;
            let inst = HrInstance::new(&e, ds, f, Provenance::named("cli"))?;
            Ok(hr_outcome("verify-hr", &verify_theorem(&inst)?))
        }
        Command::VerifyHrCorollary { file, map } => {
            let e = ctx.coalgebra(&file)?;
            let f = ctx.morphism(&e, &map)?;
            Ok(hr_outcome("verify-hr-corollary", &verify_corollary(&e, &f)?))
        }
        Command::LemmaSuite(args) => {
            let corpus = if args.corpus == "built-in" {
                builtin_corpus(args.field)
            } else {
                load_corpus(ctx, Path::new(&args.corpus))?
            };
            let cfg = LemmaConfig {
                seed: args.seed,
                random_configs: args.configs,
                ..Default::default()
            };
            let r = lemma_suite(&corpus, &cfg);
            let mut json = envelope("lemma-suite", json!({ "corpus_size": corpus.len(), "seed": args.seed }));
            if let (Value::Object(dst), Value::Object(src)) = (&mut json, report_json(&r)) {
                dst.extend(src);
            }
            let mut text = String::new();
            for c in r.failures() {
                text.push_str(&format!("FAIL {}{}\n", c.name, c.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default()));
            }
            text.push_str(&format!(
                "{} coalgebras, {} checks, {} failed\n",
                corpus.len(),
                r.len(),
                r.failures().count()
            ));
            Ok(Outcome {
                json,
                text,
                code: if r.passed() { exit::OK } else { exit::FAILED },
            })
        }
        Command::Stress {
            trials,
            dim_cap,
            field,
            seed,
        } => {
            let cfg = StressConfig {
                trials,
                dim_cap,
                field,
                seed,
            };
            let s = stress(&cfg)?;
            let bad = s.counterexamples > 0 || s.monotonicity_violations > 0;
            let mut text = format!(
                "{} trials over {} (dim <= {}, seed {})\nconsistent: {}\npremise violated: {}\ncounterexamples: {}\nmonotonicity violations: {}\n",
                s.trials, s.field, s.dim_cap, s.seed, s.consistent, s.premise_violated, s.counterexamples, s.monotonicity_violations
            );
            if let Some(c) = &s.first_counterexample {
                text.push_str(&format!("first counterexample: trial {} seed {}\n", c.trial, c.seed));
            }
            Ok(Outcome {
                json: envelope("stress", serde_json::to_value(&s).expect("summaries serialize")),
                text,
                code: if bad { exit::COUNTEREXAMPLE } else { exit::OK },
            })
        }
        Command::Gen { .. } => unreachable!("handled before dispatch"),
    }
}

/// Every `*.json` file in `dir`, by file name. Axioms are left to the suite.
fn load_corpus(ctx: &mut Context<'_>, dir: &Path) -> Result<Vec<CorpusEntry>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::new(exit::IO, format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = ctx.read(&p.to_string_lossy())?;
            let c = document::parse_unchecked(&text).map_err(|e| {
                let f = Failure::from(e);
                Failure::new(f.code, format!("{}: {}", p.display(), f.message))
            })?;
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(CorpusEntry::new(name, c))
        })
        .collect()
}

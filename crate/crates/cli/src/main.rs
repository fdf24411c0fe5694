mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use regulus::grd::rdu_profiled;
use regulus::io::{DecompositionDoc, SystemFile};
use regulus::poly::squarefree_primitive;
use regulus::triset::{char_set, wu_decompose};
use regulus::verify::{check_stability, OracleConfig, VerifyReport};
use regulus::{AscendingChain, Error, Polynomial};

use table::{Format, Table};

#[derive(Parser)]
#[command(
    name = "regulus",
    version,
    about = "Generic regular decompositions of parametric polynomial systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Oracle {
    /// Number of sampled parameter points.
    #[arg(long)]
    trials: Option<usize>,
    /// Prime for the finite-field check; 101 or 211 also selects the other
    /// as the fallback.
    #[arg(long, default_value_t = 101)]
    prime: u64,
    #[arg(long, env = "REGULUS_SEED", default_value_t = 0)]
    seed: u64,
}

impl Oracle {
    fn config(&self, default_trials: usize) -> OracleConfig {
        let alternate = if self.prime == 211 { 101 } else { 211 };
        OracleConfig {
            prime: self.prime,
            alternate,
            trials: self.trials.unwrap_or(default_trials),
            seed: self.seed,
            ..OracleConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a system into regular systems and the polynomial B.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        /// Variables in ascending order, e.g. `r,t,Z`.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a decomposition document against its system by sampling
    /// parameter points off V(B).
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
        #[command(flatten)]
        oracle: Oracle,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decompose and verify under every ordering of the variables.
    Orderings {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        oracle: Oracle,
        /// Refuse systems with more variables than this.
        #[arg(long, default_value_t = 5)]
        max_vars: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Time and verify every system file in a directory.
    Bench {
        /// Directory of `.sys` or `.json` system files.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        oracle: Oracle,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the characteristic set, or with --wu the Wu decomposition.
    CharSet {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        #[arg(long)]
        wu: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    /// Usage, input or engine error: exit code 2.
    Usage(String),
    /// Verification ran and failed: exit code 1, after printing the report.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ms(d: Duration) -> String {
    d.as_millis().to_string()
}

fn decompose(
    input: &Path,
    order: Option<&[String]>,
    out: Option<&Path>,
    format: Format,
) -> Outcome {
    let file = SystemFile::load(input)?;
    let (_, polys) = file.build(order)?;
    let (result, _) = rdu_profiled(&polys)?;
    let doc = DecompositionDoc::from_result(file.name.as_deref(), &result);
    let text = match format {
        Format::Text => doc.to_text(),
        Format::Json => doc.to_json() + "\n",
        _ => {
            return Err(Failure::Usage(
                "decompose supports --format text or json".into(),
            ))
        }
    };
    emit(out, &text)
}

fn report_text(rep: &VerifyReport, format: Format) -> Result<String, Failure> {
    match format {
        Format::Text => Ok(rep.to_text()),
        Format::Json => Ok(rep.to_json() + "\n"),
        _ => Err(Failure::Usage(
            "verify supports --format text or json".into(),
        )),
    }
}

fn verify(
    input: &Path,
    decomposition: &Path,
    oracle: &Oracle,
    out: Option<&Path>,
    format: Format,
) -> Outcome {
    let file = SystemFile::load(input)?;
    let doc = DecompositionDoc::load(decomposition)?;
    if doc.params != file.params {
        return Err(Error::ContextMismatch.into());
    }
    let (ctx, polys) = file.build(Some(&doc.vars)).map_err(|e| match e {
        Error::InvalidContext(_) => Error::ContextMismatch,
        e => e,
    })?;
    let th = doc.to_result(&ctx)?;
    let rep = check_stability(&polys, &th, &oracle.config(50))?;
    let text = report_text(&rep, format)?;
    emit(out, &text)?;
    match rep.first_failure() {
        None => Ok(()),
        Some(t) => Err(Failure::Verification(match &t.witness {
            Some(w) => format!("verification failed at a=({}): witness {w}", t.point),
            None => format!("verification failed at a=({})", t.point),
        })),
    }
}

struct Run {
    systems: usize,
    wu: Duration,
    tstors: Duration,
    total: Duration,
    verdict: String,
    passed: bool,
    rdu: Option<Polynomial>,
}

fn run_one(file: &SystemFile, order: Option<&[String]>, cfg: &OracleConfig) -> Result<Run, Error> {
    let (_, polys) = file.build(order)?;
    let start = Instant::now();
    let (result, profile) = rdu_profiled(&polys)?;
    let total = start.elapsed();
    let (verdict, passed) = match check_stability(&polys, &result, cfg) {
        Ok(rep) if rep.passed() => (format!("pass {}/{}", rep.trials.len(), cfg.trials), true),
        Ok(rep) => {
            let t = rep
                .first_failure()
                .expect("failed report has a failed trial");
            (format!("fail at a=({})", t.point), false)
        }
        Err(e) => (format!("unverified: {e}"), false),
    };
    Ok(Run {
        systems: result.systems.len(),
        wu: profile.wu,
        tstors: profile.tstors,
        total,
        verdict,
        passed,
        rdu: Some(squarefree_primitive(&result.rdu)?),
    })
}

fn orderings(
    input: &Path,
    oracle: &Oracle,
    max_vars: usize,
    out: Option<&Path>,
    format: Format,
) -> Outcome {
    let file = SystemFile::load(input)?;
    let n = file.vars.len();
    if n > max_vars {
        return Err(Failure::Usage(format!(
            "{n} variables give {n}! orderings, above the cap of {max_vars} variables; \
             run `decompose --order ...` for a specific ordering or raise --max-vars"
        )));
    }
    let cfg = oracle.config(50);
    let mut table = Table::new(vec![
        "ordering",
        "systems",
        "wu_ms",
        "tstors_ms",
        "total_ms",
        "verdict",
        "B",
    ]);
    let mut all_pass = true;
    let mut rows = Vec::new();
    for perm in file.vars.iter().cloned().permutations(n) {
        let label = format!("[{}]", perm.join(","));
        let row = match run_one(&file, Some(&perm), &cfg) {
            Ok(r) => {
                all_pass &= r.passed;
                vec![
                    label,
                    r.systems.to_string(),
                    ms(r.wu),
                    ms(r.tstors),
                    ms(r.total),
                    r.verdict,
                    r.rdu.map(|b| b.to_string()).unwrap_or_default(),
                ]
            }
            Err(e) => {
                all_pass = false;
                vec![
                    label,
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    format!("error: {e}"),
                    String::new(),
                ]
            }
        };
        rows.push(row);
    }
    rows.sort();
    for r in rows {
        table.push(r);
    }
    emit(out, &table.render(format).map_err(Failure::Usage)?)?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Verification(
            "some orderings failed verification".into(),
        ))
    }
}

fn bench(dir: &Path, oracle: &Oracle, out: Option<&Path>, format: Format) -> Outcome {
    let entries =
        std::fs::read_dir(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|x| x.to_str()), Some("sys" | "json")))
        .collect();
    paths.sort();
    let cfg = oracle.config(5);
    let mut table = Table::new(vec![
        "system",
        "ordering",
        "wu_ms",
        "tstors_ms",
        "total_ms",
        "verdict",
    ]);
    for path in paths {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let file = match SystemFile::load(&path) {
            Ok(f) => f,
            Err(e) => {
                table.push(vec![
                    stem,
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    format!("parse-error: {e}"),
                ]);
                continue;
            }
        };
        let name = file.name.clone().unwrap_or(stem);
        let ordering = format!("[{}]", file.vars.join(","));
        let row = match run_one(&file, None, &cfg) {
            Ok(r) => vec![
                name,
                ordering,
                ms(r.wu),
                ms(r.tstors),
                ms(r.total),
                r.verdict,
            ],
            Err(e @ Error::Parse { .. }) => {
                vec![
                    name,
                    ordering,
                    String::new(),
                    String::new(),
                    String::new(),
                    format!("parse-error: {e}"),
                ]
            }
            Err(e) => vec![
                name,
                ordering,
                String::new(),
                String::new(),
                String::new(),
                format!("error: {e}"),
            ],
        };
        table.push(row);
    }
    emit(out, &table.render(format).map_err(Failure::Usage)?)
}

fn show_chain(c: &AscendingChain) -> String {
    match c {
        AscendingChain::Chain(t) => {
            let ps: Vec<String> = t.polys().iter().map(|p| p.to_string()).collect();
            format!("[{}]", ps.join(", "))
        }
        AscendingChain::Contradictory(p) => format!("contradictory {p}"),
    }
}

fn char_set_cmd(input: &Path, order: Option<&[String]>, wu: bool, out: Option<&Path>) -> Outcome {
    let file = SystemFile::load(input)?;
    let (_, polys) = file.build(order)?;
    let mut text = String::new();
    if wu {
        let w = wu_decompose(&polys)?;
        for c in &w.chains {
            text += &show_chain(c);
            text.push('\n');
        }
        text += &format!("guard: {}\n", w.guard);
    } else {
        text += &show_chain(&char_set(&polys)?);
        text.push('\n');
    }
    emit(out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Decompose {
            input,
            order,
            out,
            format,
        } => decompose(input, order.as_deref(), out.as_deref(), *format),
        Command::Verify {
            input,
            decomposition,
            oracle,
            out,
            format,
        } => verify(input, decomposition, oracle, out.as_deref(), *format),
        Command::Orderings {
            input,
            oracle,
            max_vars,
            out,
            format,
        } => orderings(input, oracle, *max_vars, out.as_deref(), *format),
        Command::Bench {
            input,
            oracle,
            out,
            format,
        } => bench(input, oracle, out.as_deref(), *format),
        Command::CharSet {
            input,
            order,
            wu,
            out,
        } => char_set_cmd(input, order.as_deref(), *wu, out.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

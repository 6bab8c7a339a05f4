mod manifest;
mod run;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pisotlab::Ctx;
use serde_json::{json, Value};

use manifest::RunManifest;
use run::{execute, Failure, Output};

#[derive(Parser)]
#[command(name = "pisotlab", version, about = "Certified experiments with Pisot numbers, heights and powers of algebraic numbers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write the JSON result here instead of stdout (a `.csv` path receives the CSV table).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// CSV side file for grid and series outputs.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Write a run manifest here.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Starting working precision in bits.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Precision ceiling in bits.
    #[arg(long, global = true, env = "PISOTLAB_PRECISION_CEILING", default_value_t = 65536)]
    precision_ceiling: u32,
    /// Exit 0 even when some answer is undecided.
    #[arg(long, global = true)]
    allow_undecided: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Pisot, Salem and pseudo-Pisot status of one number.
    Classify {
        #[arg(long)]
        number: String,
    },
    /// Pseudo-Pisot and Pisot tuple predicates.
    TupleCheck {
        #[arg(long = "number", required = true)]
        numbers: Vec<String>,
    },
    /// Weil height and Mahler measure.
    Height {
        #[arg(long)]
        number: String,
        /// Precision of the reported enclosures.
        #[arg(long)]
        bits: Option<u32>,
    },
    /// Root-of-unity quotient classes, torsion exponent and property check.
    Partition {
        #[arg(long = "number", required = true)]
        numbers: Vec<String>,
        /// Exponent for the torsion-freeness check (defaults to the computed r).
        #[arg(long)]
        lemma_r: Option<u64>,
    },
    /// Smallest m with a^m Pisot.
    PisotPower {
        #[arg(long)]
        number: String,
        #[arg(long, default_value_t = 8)]
        m_max: u64,
    },
    /// Grid scan of ‖q Σ λ_i α_i^n‖ against θ^n / q^(d+ε).
    Search {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Certified decay rate of ‖a^n‖.
    Decay {
        #[arg(long)]
        number: String,
        #[arg(long, default_value_t = 60)]
        n_max: u64,
    },
    /// Enclosure of ∏ [b_n α^a_n] / (b_n α^a_n) and its hypotheses.
    Product {
        #[arg(long)]
        spec: PathBuf,
        /// Choose the prefix so the tail is below 10^-digits.
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Re-run a manifest and compare the result digest.
    Replay {
        #[arg(long = "from")]
        from: PathBuf,
    },
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_input(cmd: &Command) -> Result<(&'static str, Value), Failure> {
    Ok(match cmd {
        Command::Classify { number } => ("classify", json!({ "number": number })),
        Command::TupleCheck { numbers } => ("tuple-check", json!({ "numbers": numbers })),
        Command::Height { number, bits } => ("height", json!({ "number": number, "bits": bits })),
        Command::Partition { numbers, lemma_r } => ("partition", json!({ "numbers": numbers, "lemma_r": lemma_r })),
        Command::PisotPower { number, m_max } => ("pisot-power", json!({ "number": number, "m_max": m_max })),
        Command::Search { spec } => ("search", read_json(spec)?),
        Command::Decay { number, n_max } => ("decay", json!({ "number": number, "n_max": n_max })),
        Command::Product { spec, digits } => {
            let mut v = read_json(spec)?;
            if let (Some(d), Some(obj)) = (digits, v.as_object_mut()) {
                obj.insert("digits".into(), json!(d));
            }
            ("product", v)
        }
        Command::Replay { .. } => unreachable!("replay has no direct input"),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(g: &Global, primary: &str, csv: Option<&str>) -> Result<(), Failure> {
    let out_is_csv = g.out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "csv"));
    match (&g.out, csv) {
        (Some(p), Some(c)) if out_is_csv => {
            write_file(p, c)?;
            print!("{primary}");
        }
        (Some(p), _) => write_file(p, primary)?,
        (None, _) => print!("{primary}"),
    }
    if let (Some(p), Some(c)) = (&g.csv, csv) {
        write_file(p, c)?;
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn run_direct(g: &Global, cmd: &Command) -> Result<i32, Failure> {
    let (name, input) = to_input(cmd)?;
    let ctx = Ctx::new(g.precision, g.precision_ceiling);
    let start = Instant::now();
    let out = match execute(name, &input, &ctx) {
        Ok(o) => o,
        Err(Failure::Core(e)) if e.is_precision() => {
            let partial = json!({ "status": "precision_exhausted", "subcommand": name, "input": input, "message": e.to_string() });
            emit(g, &pretty(&partial), None)?;
            return Err(Failure::Core(e));
        }
        Err(e) => return Err(e),
    };
    let Output { json, csv, undecided } = out;
    let primary = pretty(&json);
    emit(g, &primary, csv.as_deref())?;
    if let Some(path) = &g.manifest {
        let m = RunManifest::new(name, input, &ctx, g.threads, start.elapsed(), &primary);
        write_file(path, &pretty(&serde_json::to_value(&m).expect("manifest")))?;
    }
    if undecided && !g.allow_undecided {
        eprintln!("pisotlab: some answers are undecided at the precision ceiling (use --allow-undecided to accept)");
        return Ok(3);
    }
    Ok(0)
}

fn run_replay(g: &Global, from: &Path) -> Result<i32, Failure> {
    let m: RunManifest =
        serde_json::from_value(read_json(from)?).map_err(|e| Failure::Usage(format!("manifest: {e}")))?;
    let ctx = Ctx::new(m.precision, m.precision_ceiling);
    let out = execute(&m.subcommand, &m.input, &ctx)?;
    let primary = pretty(&out.json);
    let digest = manifest::digest(&primary);
    if let Some(p) = &g.out {
        write_file(p, &primary)?;
    }
    let same = digest == m.result_digest;
    let report = json!({ "subcommand": m.subcommand, "expected": m.result_digest, "actual": digest, "identical": same });
    print!("{}", pretty(&report));
    Ok(if same { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.global.threads {
        if n == 0 {
            eprintln!("pisotlab: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("global thread pool");
    }
    let res = match &cli.command {
        Command::Replay { from } => run_replay(&cli.global, from),
        cmd => run_direct(&cli.global, cmd),
    };
    match res {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("pisotlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

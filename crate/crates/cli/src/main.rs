//! `mk-rank`: encode, corrupt, decode and simulate interleaved rank-metric codes.
//!
//! Exit codes: 0 success, 1 worked-example mismatch, 2 decoding failure,
//! 3 malformed input, 4 invalid parameters.

mod params;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mk_rank::codes::LinearCode;
use mk_rank::decoder::{self, DecodeOutcome};
use mk_rank::simulate::{
    run_trials, sample_error, success_lower_bound, ErrorMode, SimConfig, SplitMix64,
};
use mk_rank::worked_example::{self, Check, WorkedExample};
use mk_rank::{Error, ExtField, FieldEl, Matrix};

#[derive(Parser)]
#[command(
    name = "mk-rank",
    version,
    about = "Interleaved rank-metric code toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Uniform,
    Fullrank,
}

impl From<Mode> for ErrorMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Uniform => ErrorMode::Uniform,
            Mode::Fullrank => ErrorMode::FullRank,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Rank,
    Hamming,
}

#[derive(clap::Args)]
struct CodeArgs {
    /// Field as `q,m[,f0,...,fm]` or `q=.. m=.. f=..`.
    #[arg(long)]
    field: Option<String>,
    /// `gabidulin:g=<codes>,k=<int>`, `gabidulin:n=<int>,k=<int>` or a code file.
    #[arg(long)]
    code: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decode the built-in F_32 example stage by stage.
    DemoPaper {
        /// Print only PASS or FAIL.
        #[arg(long)]
        quiet: bool,
        /// Add 1 to the received word at `row,col` before decoding.
        #[arg(long, value_name = "ROW,COL")]
        perturb: Option<String>,
    },
    /// Multiply a message matrix by the generator matrix.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        message: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add a random error of rank weight `t` to a codeword matrix.
    Corrupt {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        codeword: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Uniform)]
        mode: Mode,
        /// Received word; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Planted error.
        #[arg(long)]
        error_out: Option<PathBuf>,
    },
    /// Decode a received word.
    Decode {
        #[arg(long)]
        field: Option<String>,
        /// Code flag or file; alternatively give `--parity-check`.
        #[arg(
            long,
            conflicts_with = "parity_check",
            required_unless_present = "parity_check"
        )]
        code: Option<String>,
        /// Parity-check matrix file.
        #[arg(long)]
        parity_check: Option<PathBuf>,
        #[arg(long)]
        received: PathBuf,
        /// Decoded codeword.
        #[arg(long)]
        out: PathBuf,
        /// Error coefficient matrix A.
        #[arg(long)]
        coeffs_out: Option<PathBuf>,
        /// Error support basis B.
        #[arg(long)]
        support_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Metric::Rank)]
        metric: Metric,
    },
    /// Monte-Carlo success rate of the decoder.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Uniform)]
        mode: Mode,
        #[arg(long)]
        threads: Option<usize>,
        /// CSV report; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bounds on the probability that a uniform rank-t error is decodable.
    Bound {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
}

enum Failure {
    Mismatch(String),
    Decode(String),
    Format(String),
    Parameter(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Decode(_) => 2,
            Failure::Format(_) => 3,
            Failure::Parameter(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m)
            | Failure::Decode(m)
            | Failure::Format(m)
            | Failure::Parameter(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Format(_) | Error::DigitOutOfRange { .. } | Error::CodeOutOfRange { .. } => {
                Failure::Format(e.to_string())
            }
            _ => Failure::Parameter(e.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Parameter(format!("cannot read {}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Parameter(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_matrix(path: &Path, field: Option<&ExtField>) -> Result<Matrix, Failure> {
    Matrix::parse_text(&read(path)?, field).map_err(|e| match e {
        Error::Format(m) => Failure::Format(format!("{}: {m}", path.display())),
        other => other.into(),
    })
}

fn field_flag(s: Option<&str>) -> Result<Option<ExtField>, Failure> {
    Ok(s.map(params::parse_field).transpose()?)
}

fn load_code(args: &CodeArgs) -> Result<LinearCode, Failure> {
    let field = field_flag(args.field.as_deref())?;
    Ok(params::parse_code(&args.code, field.as_ref())?)
}

fn demo_paper(quiet: bool, perturb: Option<&str>) -> CliResult {
    let ex = WorkedExample::new();
    let mut received = ex.received.clone();
    if let Some(p) = perturb {
        let (r, c) = p
            .split_once(',')
            .and_then(|(r, c)| {
                Some((
                    r.trim().parse::<usize>().ok()?,
                    c.trim().parse::<usize>().ok()?,
                ))
            })
            .ok_or_else(|| Failure::Parameter(format!("--perturb expects ROW,COL, got `{p}`")))?;
        if r >= received.rows() || c >= received.cols() {
            return Err(Failure::Parameter(format!(
                "--perturb position {r},{c} out of range"
            )));
        }
        received.set(r, c, ex.field.add(received.get(r, c), FieldEl::ONE));
    }
    let report = worked_example::run(&ex, &received)?;
    if !quiet {
        println!("field {}", ex.field);
        println!("R =\n{}", received.pretty());
        for s in &report.stages {
            let verdict = match (s.check, s.passed) {
                (Check::Skipped, _) => "not compared",
                (Check::RowSpace, true) => "ok (row space)",
                (_, true) => "ok",
                (_, false) => "MISMATCH",
            };
            println!("{}: {verdict}", s.name);
            if let Some(m) = &s.computed {
                println!("{}", m.pretty());
            }
            if let Some(note) = &s.note {
                println!("  {note}");
            }
        }
    }
    match report.first_failure() {
        None => {
            println!("PASS");
            Ok(())
        }
        Some(s) => {
            println!("FAIL");
            Err(Failure::Mismatch(format!(
                "first mismatching stage: {}",
                s.name
            )))
        }
    }
}

fn encode(code: &CodeArgs, message: &Path, out: Option<&Path>) -> CliResult {
    let code = load_code(code)?;
    let msg = read_matrix(message, Some(code.field()))?;
    let c = mk_rank::codes::encode_interleaved(&code.generator(), &msg)?;
    write(out, &c.to_text())
}

struct CorruptArgs<'a> {
    field: Option<&'a str>,
    codeword: &'a Path,
    t: usize,
    seed: u64,
    mode: ErrorMode,
    out: Option<&'a Path>,
    error_out: Option<&'a Path>,
}

fn corrupt(a: CorruptArgs) -> CliResult {
    let field = field_flag(a.field)?;
    let c = read_matrix(a.codeword, field.as_ref())?;
    let mut rng = SplitMix64::new(a.seed);
    let planted = sample_error(&mut rng, c.field(), c.rows(), c.cols(), a.t, a.mode)?;
    let r = c.add(&planted.error)?;
    write(a.out, &r.to_text())?;
    if let Some(p) = a.error_out {
        write(Some(p), &planted.error.to_text())?;
    }
    Ok(())
}

struct DecodeArgs<'a> {
    field: Option<&'a str>,
    code: Option<&'a str>,
    parity_check: Option<&'a Path>,
    received: &'a Path,
    out: &'a Path,
    coeffs_out: Option<&'a Path>,
    support_out: Option<&'a Path>,
    metric: Metric,
}

fn decode(a: DecodeArgs) -> CliResult {
    let field = field_flag(a.field)?;
    let code = match (a.code, a.parity_check) {
        (Some(c), _) => params::parse_code(c, field.as_ref())?,
        (None, Some(p)) => LinearCode::from_parity_check(read_matrix(p, field.as_ref())?, None)?,
        (None, None) => return Err(Failure::Parameter("give --code or --parity-check".into())),
    };
    let r = read_matrix(a.received, Some(code.field()))?;
    let h = code.parity_check();
    let outcome = match a.metric {
        Metric::Rank => decoder::decode(h, &r, code.min_distance())?,
        Metric::Hamming => decoder::mk_hamming_decode(h, &r)?,
    };
    match outcome {
        DecodeOutcome::Success(d) => {
            write(Some(a.out), &d.codeword.to_text())?;
            if let Some(p) = a.coeffs_out {
                write(Some(p), &d.error_coeffs.to_text())?;
            }
            if let Some(p) = a.support_out {
                write(Some(p), &d.support.to_text())?;
            }
            let note = if d.beyond_guarantee {
                " beyond_guarantee"
            } else {
                ""
            };
            println!("status,success t_hat,{}{note}", d.t_hat);
            Ok(())
        }
        DecodeOutcome::Failure { reason, t_hat } => {
            let t = t_hat.map_or_else(|| "NA".to_string(), |t| t.to_string());
            println!("status,failure t_hat,{t}");
            Err(Failure::Decode(format!("decoding failed: {reason}")))
        }
    }
}

struct SimulateArgs<'a> {
    code: &'a CodeArgs,
    ell: usize,
    t: usize,
    trials: u64,
    seed: u64,
    mode: ErrorMode,
    threads: Option<usize>,
    out: Option<&'a Path>,
}

fn simulate(a: SimulateArgs) -> CliResult {
    let cfg = SimConfig {
        code: load_code(a.code)?,
        ell: a.ell,
        t: a.t,
        trials: a.trials,
        seed: a.seed,
        mode: a.mode,
        threads: a.threads,
    };
    let report = run_trials(&cfg)?;
    write(a.out, &report.to_csv())?;
    if a.out.is_some() {
        println!("{}", report.summary_line());
    } else {
        eprintln!("{}", report.summary_line());
    }
    Ok(())
}

fn bound(t: usize, ell: usize, m: u32, q: u32) -> CliResult {
    let b = success_lower_bound(t, ell, m, q)?;
    println!("product,{} exact,{}", b.product_f64(), b.product);
    println!("simple,{} exact,{}", b.simple_f64(), b.simple);
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::DemoPaper { quiet, perturb } => demo_paper(quiet, perturb.as_deref()),
        Command::Encode { code, message, out } => encode(&code, &message, out.as_deref()),
        Command::Corrupt {
            field,
            codeword,
            t,
            seed,
            mode,
            out,
            error_out,
        } => corrupt(CorruptArgs {
            field: field.as_deref(),
            codeword: &codeword,
            t,
            seed,
            mode: mode.into(),
            out: out.as_deref(),
            error_out: error_out.as_deref(),
        }),
        Command::Decode {
            field,
            code,
            parity_check,
            received,
            out,
            coeffs_out,
            support_out,
            metric,
        } => decode(DecodeArgs {
            field: field.as_deref(),
            code: code.as_deref(),
            parity_check: parity_check.as_deref(),
            received: &received,
            out: &out,
            coeffs_out: coeffs_out.as_deref(),
            support_out: support_out.as_deref(),
            metric,
        }),
        Command::Simulate {
            code,
            ell,
            t,
            trials,
            seed,
            mode,
            threads,
            out,
        } => simulate(SimulateArgs {
            code: &code,
            ell,
            t,
            trials,
            seed,
            mode: mode.into(),
            threads,
            out: out.as_deref(),
        }),
        Command::Bound { t, ell, m, q } => bound(t, ell, m, q),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("mk-rank: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kcbs_core::classification::{classify_state, Regime};
use kcbs_core::extremal::{
    closed_form_witnesses, numeric_extremal_search, s_max_for_concurrence, s_min_for_concurrence,
    Objective, DEFAULT_GRID, DEFAULT_REFINE_ITERS,
};
use kcbs_core::msr::MsrPair;
use kcbs_core::sampling::DEFAULT_SEED;
use kcbs_core::scan::{run_scan, OutputFormat, ScanConfig, ScanError};
use kcbs_core::verify::{run_verification, ORACLE_TOLERANCE};
use kcbs_core::Error;

const EXIT_VALIDATION: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_IO: u8 = 3;

/// KCBS contextuality and concurrence of symmetric two-qubit states.
#[derive(Parser, Debug)]
#[command(name = "kcbs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate S, concurrence, regime and qutrit amplitudes of one state.
    Eval(AngleArgs),
    /// Print the regime report of one state as JSON.
    Classify(AngleArgs),
    /// Extremal S at fixed concurrence, closed form and/or brute force.
    Extremal(ExtremalArgs),
    /// Scan (θ₁, θ₂, Δφ) and write one record per grid cell.
    Scan(ScanArgs),
    /// Run the cross-check suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct AngleArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi2: f64,
}

impl AngleArgs {
    fn pair(&self) -> Result<MsrPair, Failure> {
        Ok(MsrPair::from_angles(self.theta1, self.phi1, self.theta2, self.phi2)?)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Min,
    Max,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Numeric,
    Both,
}

#[derive(Args, Debug)]
struct ExtremalArgs {
    #[arg(long, allow_negative_numbers = true)]
    concurrence: f64,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Min)]
    objective: ObjectiveArg,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, default_value_t = 32)]
    resolution: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    Validation(String),
    Verification(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<ScanError> for Failure {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::Invalid(e) => e.into(),
            other => Failure::Io(other.to_string()),
        }
    }
}

fn eval(args: &AngleArgs) -> Result<(), Failure> {
    let pair = args.pair()?;
    let report = classify_state(&pair);
    println!("theta1    {:.12}", report.theta1);
    println!("theta2    {:.12}", report.theta2);
    println!("delta_phi {:.12}", report.delta_phi);
    println!("S         {:.12}", report.s.value());
    println!("C         {:.12}", report.c.value());
    println!("regime    {}", report.regime);
    let labels = ["+1", " 0", "-1"];
    for (label, amp) in labels.iter().zip(pair.to_qutrit().amplitudes) {
        println!("|{label}>      {:+.12} {:+.12}i", amp.re, amp.im);
    }
    Ok(())
}

fn classify(args: &AngleArgs) -> Result<(), Failure> {
    let report = classify_state(&args.pair()?);
    println!(
        "{}",
        serde_json::to_string(&report).expect("report serializes")
    );
    Ok(())
}

fn extremal(args: &ExtremalArgs) -> Result<(), Failure> {
    let c = args.concurrence;
    let objective = match args.objective {
        ObjectiveArg::Min => Objective::Minimize,
        ObjectiveArg::Max => Objective::Maximize,
    };
    let closed = match objective {
        Objective::Minimize => s_min_for_concurrence(c)?,
        Objective::Maximize => s_max_for_concurrence(c)?,
    }
    .value();
    println!("concurrence  {c}");
    println!("objective    {}", if objective == Objective::Minimize { "min" } else { "max" });

    if args.method != Method::Numeric {
        println!("closed form  {closed:.12}");
        for w in closed_form_witnesses(c, objective)? {
            println!(
                "  witness    theta1 {:.12}  theta2 {:.12}  delta_phi {:.12}",
                w.pair.star1.theta(),
                w.pair.star2.theta(),
                w.pair.delta_phi()
            );
        }
    }
    if args.method == Method::Closed {
        return Ok(());
    }

    let numeric = numeric_extremal_search(c, objective, DEFAULT_GRID, DEFAULT_REFINE_ITERS)?;
    println!("numeric      {:.12}", numeric.s_star.value());
    println!(
        "  witness    theta1 {:.12}  theta2 {:.12}  delta_phi {:.12}",
        numeric.theta1, numeric.theta2, numeric.delta_phi
    );
    if args.method == Method::Both {
        let discrepancy = (numeric.s_star.value() - closed).abs();
        println!("discrepancy  {discrepancy:.3e}");
        if discrepancy <= ORACLE_TOLERANCE {
            println!("PASS (tolerance {ORACLE_TOLERANCE:e})");
        } else {
            println!("FAIL (tolerance {ORACLE_TOLERANCE:e})");
            return Err(Failure::Verification(format!(
                "numeric and closed form differ by {discrepancy:e}"
            )));
        }
    }
    Ok(())
}

fn scan(args: &ScanArgs) -> Result<(), Failure> {
    let config = ScanConfig {
        resolution: args.resolution,
        format: match args.format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        },
        output: args.output.clone(),
    };
    let summary = run_scan(&config)?;
    println!(
        "wrote {} records to {}",
        summary.total,
        config.output.display()
    );
    for regime in Regime::ALL {
        println!("{:<24}{}", regime.label(), summary.count(regime));
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    if args.samples == 0 {
        return Err(Failure::Validation(
            "--samples must be at least 1".to_string(),
        ));
    }
    let report = run_verification(args.samples, args.seed)?;
    for check in &report.checks {
        println!("{check}");
    }
    if report.all_passed() {
        println!("all {} checks passed", report.checks.len());
        Ok(())
    } else {
        let names: Vec<_> = report.failures().map(|c| c.name).collect();
        Err(Failure::Verification(format!(
            "failed checks: {}",
            names.join(", ")
        )))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Eval(args) => eval(args),
        Command::Classify(args) => classify(args),
        Command::Extremal(args) => extremal(args),
        Command::Scan(args) => scan(args),
        Command::Verify(args) => verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Validation(m) => (EXIT_VALIDATION, m),
                Failure::Verification(m) => (EXIT_VERIFICATION, m),
                Failure::Io(m) => (EXIT_IO, m),
            };
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

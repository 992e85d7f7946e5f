use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use modphi_core::combinatorics::Kind;
use modphi::commands;
use modphi::config::{parse_complex, RunConfig};
use modphi::harness::{self, Suite};
use modphi::output::{write_table, Format, Table, VERSION};

#[derive(Parser)]
#[command(name = "modphi", version, about = "Stirling laws: exact tables, mod-phi limits, zeros and acceptance checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Stirling triangle rows `n, k, value` for n up to n_max.
    Table {
        #[arg(value_parser = ["first", "second"])]
        kind: String,
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Exact pmf against the local-limit Gaussian.
    Llt {
        #[arg(long)]
        family: u8,
        #[arg(long)]
        n: usize,
        /// Tilt vartheta as `p/q`; repeatable.
        #[arg(long, required = true)]
        theta: Vec<String>,
        #[arg(long)]
        relaxed: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Scaled zeros and the limiting density.
    Zeros {
        #[arg(long)]
        family: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        theta: String,
        /// Number of density samples.
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long)]
        relaxed: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Rate function on a grid of t.
    Rate {
        #[arg(long)]
        family: u8,
        #[arg(long)]
        theta: f64,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        t: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// mu, sigma^2 and sigma on a grid of vartheta.
    Musigma {
        #[arg(long)]
        family: u8,
        #[arg(long, value_delimiter = ',', required = true)]
        theta: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Mod-phi errors over n and z.
    Modphi {
        #[arg(long)]
        family: u8,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long)]
        theta: String,
        /// Complex points such as `0.3`, `-0.2` or `0.1+0.1i`; repeatable.
        #[arg(long, required = true, allow_hyphen_values = true)]
        z: Vec<String>,
        /// Working precision in bits.
        #[arg(long, default_value_t = 256)]
        precision: usize,
        #[arg(long)]
        relaxed: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance criteria and write a JSON report.
    Verify {
        #[arg(long, value_enum, default_value = "full")]
        suite: Suite,
        /// Only these criteria (1 to 12).
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=12))]
        only: Vec<u8>,
        /// Report path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn sink(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(cfg: &RunConfig, common: &Common, table: &Table) -> anyhow::Result<()> {
    let mut out = sink(&common.out)?;
    write_table(&mut out, common.format, &cfg.to_value(), table)?;
    out.flush()?;
    Ok(())
}

fn verify(suite: Suite, only: &[u8], out: &Option<PathBuf>) -> anyhow::Result<bool> {
    let results = harness::run(suite, only);
    for r in &results {
        eprintln!("{}", r.line());
    }
    let passed = results.iter().all(|r| r.passed);
    let doc = serde_json::json!({
        "tool": "modphi",
        "version": VERSION,
        "suite": suite,
        "passed": passed,
        "criteria": results,
    });
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, &doc)?;
    writeln!(w)?;
    w.flush()?;
    Ok(passed)
}

fn run(cmd: Command) -> anyhow::Result<bool> {
    match cmd {
        Command::Table { kind, n_max, common } => {
            let mut cfg = RunConfig::new("table", common.format);
            cfg.n = Some(n_max);
            let kind = if kind == "first" { Kind::First } else { Kind::Second };
            emit(&cfg, &common, &commands::table(kind, n_max)?)?;
        }
        Command::Llt { family, n, theta, relaxed, common } => {
            let mut cfg = RunConfig::new("llt", common.format);
            cfg.family = Some(family);
            cfg.n = Some(n);
            cfg.theta = theta;
            cfg.relaxed = relaxed;
            cfg.validate()?;
            emit(&cfg, &common, &commands::llt(cfg.family()?, n, &cfg.thetas()?, relaxed)?)?;
        }
        Command::Zeros { family, n, theta, grid, relaxed, common } => {
            let mut cfg = RunConfig::new("zeros", common.format);
            cfg.family = Some(family);
            cfg.n = Some(n);
            cfg.theta = vec![theta];
            cfg.grid = Some(grid);
            cfg.relaxed = relaxed;
            cfg.validate()?;
            let th = cfg.thetas()?.remove(0);
            emit(&cfg, &common, &commands::zeros(cfg.family()?, n, &th, grid, relaxed)?)?;
        }
        Command::Rate { family, theta, t, common } => {
            let mut cfg = RunConfig::new("rate", common.format);
            cfg.family = Some(family);
            cfg.theta = vec![theta.to_string()];
            cfg.t = t;
            cfg.validate()?;
            emit(&cfg, &common, &commands::rate_curve(cfg.family()?, theta, &cfg.t)?)?;
        }
        Command::Musigma { family, theta, common } => {
            let mut cfg = RunConfig::new("musigma", common.format);
            cfg.family = Some(family);
            cfg.theta = theta.iter().map(f64::to_string).collect();
            cfg.validate()?;
            emit(&cfg, &common, &commands::musigma(cfg.family()?, &theta)?)?;
        }
        Command::Modphi { family, n, theta, z, precision, relaxed, common } => {
            let mut cfg = RunConfig::new("modphi", common.format);
            cfg.family = Some(family);
            cfg.theta = vec![theta];
            cfg.z = z.iter().map(|s| parse_complex(s)).collect::<Result<_, _>>()?;
            cfg.precision = precision;
            cfg.relaxed = relaxed;
            cfg.validate()?;
            let th = cfg.thetas()?.remove(0);
            let t = commands::modphi_errors(cfg.family()?, &n, &th, &cfg.zs(), precision, relaxed)?;
            emit(&cfg, &common, &t)?;
        }
        Command::Verify { suite, only, out } => return verify(suite, &only, &out),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

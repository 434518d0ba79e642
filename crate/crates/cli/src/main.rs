use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hecke_core::finhecke::VerifyPolicy;
use hecke_core::pipeline::{
    affine_params, certify_with, emit_certificate, emit_sweep, emit_table, ktype_table_with, lines_cross_check, sweep,
    Format, SpechtCatalog, SweepConfig, Verdict,
};
use hecke_core::scalar::Rational;
use hecke_core::segments::Multisegment;
use hecke_core::selftest::run_selftest;
use hecke_core::{HeckeError, Result};

/// K-type multiplicities of Langlands quotients of the affine Hecke algebra of GL_n.
#[derive(Parser)]
#[command(name = "hecke", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicity of every Specht module in one Langlands quotient.
    Table(TableArgs),
    /// Check the sign-type multiplicity of one quotient against genericity.
    Certify(SingleArgs),
    /// Certify every multisegment of size n with starts in a window.
    Sweep(SweepArgs),
    /// Run the built-in relation and property checks.
    Selftest,
}

#[derive(Args)]
struct Common {
    /// Hecke parameter, a rational number.
    #[arg(long, default_value = "3", value_parser = parse_q)]
    q: Rational,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Include timings in the output.
    #[arg(long)]
    timing: bool,
    /// When to re-check module relations (auto: dimension at most 24).
    #[arg(long, value_enum)]
    verify_relations: Option<VerifyArg>,
}

#[derive(Args)]
struct SingleArgs {
    /// Multisegment such as "[0,0];[2,2];[4,4]" (suffix "@k" selects a line).
    #[arg(long)]
    segments: String,
    /// Expected total length; checked against the segments.
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    single: SingleArgs,
    /// Also compare against the per-line tables (sign, trivial, dimension).
    #[arg(long)]
    lines: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    /// Range of segment starts, "lo:hi" (default 0:n).
    #[arg(long, value_parser = parse_window)]
    window: Option<RangeInclusive<i64>>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Allow n = 5.
    #[arg(long)]
    allow_n5: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyArg {
    Auto,
    Always,
    Never,
}

fn parse_q(s: &str) -> std::result::Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn parse_window(s: &str) -> std::result::Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s.split_once(':').ok_or("window must look like lo:hi")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window start {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window end {hi:?}"))?;
    if hi < lo {
        return Err("window end is below its start".into());
    }
    Ok(lo..=hi)
}

impl Common {
    fn verify(&self) -> VerifyPolicy {
        match self.verify_relations {
            Some(VerifyArg::Auto) => VerifyPolicy::Auto,
            Some(VerifyArg::Always) => VerifyPolicy::Always,
            Some(VerifyArg::Never) => VerifyPolicy::Never,
            None => VerifyPolicy::from_env(),
        }
    }

    fn write(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => fs::write(path, text).map_err(HeckeError::from),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

impl SingleArgs {
    fn prepare(&self) -> Result<(Multisegment, SpechtCatalog)> {
        let m: Multisegment = self.segments.parse()?;
        if let Some(n) = self.n {
            if n != m.n() {
                return Err(HeckeError::Usage(format!("--n {n} does not match the total length {} of {m}", m.n())));
            }
        }
        let params = affine_params(m.n(), &self.common.q)?.with_verify(self.common.verify());
        Ok((m, SpechtCatalog::new(&params)?))
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Table(args) => {
            let (m, catalog) = args.single.prepare()?;
            let common = &args.single.common;
            let start = std::time::Instant::now();
            let table = ktype_table_with(&catalog, &m)?;
            let timing = common.timing.then(|| start.elapsed());
            let mut out = emit_table(&table, common.format.into(), timing)?;
            let mut code = 0;
            if args.lines {
                let check = lines_cross_check(&m, &common.q)?;
                if !check.consistent() {
                    code = 3;
                }
                if matches!(common.format, OutputFormat::Text) {
                    out.push_str(&format!(
                        "lines: sign {} (expected {}), trivial {} (expected {}), dimension {} (expected {}): {}\n",
                        check.full.sign_multiplicity(),
                        check.expected_sign,
                        check.full.trivial_multiplicity(),
                        check.expected_trivial,
                        check.full.quotient_dim,
                        check.expected_dim,
                        if check.consistent() { "consistent" } else { "INCONSISTENT" }
                    ));
                } else if !check.consistent() {
                    eprintln!("line cross-check failed for {m}");
                }
            }
            common.write(&out)?;
            Ok(code)
        }
        Command::Certify(args) => {
            let (m, catalog) = args.prepare()?;
            let cert = certify_with(&catalog, &m)?;
            args.common.write(&emit_certificate(&cert, args.common.format.into(), args.common.timing)?)?;
            Ok(if cert.verdict == Verdict::Pass { 0 } else { 1 })
        }
        Command::Sweep(args) => {
            let config = SweepConfig {
                n: args.n,
                starts: args.window.clone().unwrap_or(0..=args.n as i64),
                q: args.common.q.clone(),
                jobs: args.jobs,
                allow_n5: args.allow_n5,
                verify: args.common.verify(),
            };
            let report = sweep(&config)?;
            args.common.write(&emit_sweep(&report, args.common.format.into(), args.common.timing)?)?;
            Ok(report.exit_code() as u8)
        }
        Command::Selftest => {
            let results = run_selftest();
            let mut ok = true;
            for r in &results {
                println!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.name);
                if let Some(detail) = &r.detail {
                    println!("     {detail}");
                }
                ok &= r.passed;
            }
            Ok(if ok { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hecke: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

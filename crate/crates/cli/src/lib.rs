//! The `qcl` command line: batch verification of the catalog targets and
//! of user tasks, proof-step checks and the classical p-adic displays.

pub mod jobs;
pub mod report;
pub mod sample;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use qcl_core::congruence::Status;
use qcl_core::dsl::{self, DslError};
use qcl_core::exact::rat::{rat, ratio};
use qcl_core::padic::{classical_check, PadicId};
use qcl_core::qseries::catalog::render_modulus;
use qcl_core::qseries::{MMode, TargetId};
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

use jobs::{expand, run_all, Check};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SPEC: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qcl", version, about = "Exact checks of truncated q-series congruences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Half,
    Nm1,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(clap::Args, Debug)]
struct Output {
    /// Seed for parameter sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Parameter samples per target.
    #[arg(long, default_value_t = 3)]
    samples: usize,
    #[arg(long, env = "QCL_THREADS")]
    threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall-clock times; reports are then no longer reproducible.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check catalog targets and task files.
    Verify {
        /// Comma-separated target names, or `all`.
        #[arg(long, value_delimiter = ',')]
        target: Vec<String>,
        /// Task files in the text format.
        #[arg(long)]
        spec: Vec<PathBuf>,
        /// Comma-separated odd n > 1.
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        n: Vec<i64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        m_mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Print the catalog.
    ListTargets,
    /// Run the intermediate congruences and lemmas used in the proofs.
    CheckProofSteps {
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        n: Vec<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// Check a classical display modulo p^(r+3).
    Padic {
        #[arg(long)]
        target: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// `SOURCE_DATE_EPOCH` if set, otherwise the epoch itself, so that reports
/// never depend on the clock.
fn timestamp() -> String {
    let secs = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse::<i64>().ok()).unwrap_or(0);
    OffsetDateTime::from_unix_timestamp(secs)
        .unwrap_or(OffsetDateTime::UNIX_EPOCH)
        .format(&Rfc3339)
        .expect("formattable timestamp")
}

fn check_ns(ns: &[i64], io: &mut Io) -> bool {
    if let Some(bad) = ns.iter().find(|&&n| n <= 1 || n % 2 == 0) {
        let _ = writeln!(io.err, "error: n = {bad} must be odd and greater than 1");
        return false;
    }
    true
}

fn emit(report: &Report, output: &Output, io: &mut Io) -> i32 {
    let text = match output.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let _ = writeln!(io.err, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
            let s = &report.summary;
            let _ = writeln!(io.err, "{} pass, {} fail, {} skipped", s.pass, s.fail, s.skipped);
        }
        None => {
            let _ = io.out.write_all(text.as_bytes());
        }
    }
    if report.any_fail() {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

fn execute(checks: Vec<Check>, ns: &[i64], modes: &[MMode], output: &Output, io: &mut Io) -> i32 {
    if output.samples == 0 {
        let _ = writeln!(io.err, "error: --samples must be at least 1");
        return EXIT_USAGE;
    }
    let jobs = expand(checks, ns, modes, output.samples, output.seed);
    let threads = output.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let entries = run_all(&jobs, threads, output.timings);
    emit(&Report::new(output.seed, timestamp(), entries), output, io)
}

fn load_spec(path: &Path, io: &mut Io) -> Result<Check, i32> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(io.err, "error: cannot read {}: {e}", path.display());
        EXIT_SPEC
    })?;
    let task = dsl::load_task(&text).map_err(|e| {
        let _ = match &e {
            DslError::Parse(p) => writeln!(io.err, "{}: {p}", path.display()),
            DslError::Semantic(_) => writeln!(io.err, "{}: {e}", path.display()),
        };
        EXIT_SPEC
    })?;
    let label = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    Ok(Check::Task { label, task: Arc::new(task) })
}

fn verify(targets: &[String], specs: &[PathBuf], ns: &[i64], mode: ModeArg, output: &Output, io: &mut Io) -> i32 {
    if targets.is_empty() && specs.is_empty() {
        let _ = writeln!(io.err, "error: give --target, --spec or both");
        return EXIT_USAGE;
    }
    if !check_ns(ns, io) {
        return EXIT_USAGE;
    }
    let mut ids: Vec<TargetId> = Vec::new();
    for t in targets {
        if t.eq_ignore_ascii_case("all") {
            ids.extend(TargetId::ALL);
            continue;
        }
        match TargetId::parse(t) {
            Some(id) => ids.push(id),
            None => {
                let _ = writeln!(io.err, "error: unknown target '{t}' (see list-targets)");
                return EXIT_USAGE;
            }
        }
    }
    ids.sort();
    ids.dedup();
    let mut checks: Vec<Check> = ids.into_iter().map(Check::Target).collect();
    for path in specs {
        match load_spec(path, io) {
            Ok(c) => checks.push(c),
            Err(code) => return code,
        }
    }
    let modes: Vec<MMode> = match mode {
        ModeArg::Half => vec![MMode::Half],
        ModeArg::Nm1 => vec![MMode::NMinus1],
        ModeArg::Both => MMode::BOTH.to_vec(),
    };
    execute(checks, ns, &modes, output, io)
}

fn list_targets(io: &mut Io) -> i32 {
    for id in TargetId::ALL {
        let t = id.target();
        let params: Vec<String> = t.params.iter().map(|p| p.symbol().to_string()).collect();
        let _ = writeln!(
            io.out,
            "{:<14} {:<12} mod {:<32} params [{}]{}",
            id.cli_name(),
            id.name(),
            render_modulus(&t.modulus),
            params.join(","),
            if TargetId::PROOF_STEPS.contains(&id) { "  (proof step)" } else { "" }
        );
    }
    for id in PadicId::ALL {
        let _ = writeln!(
            io.out,
            "{:<14} {:<12} mod p^(r+3){}",
            id.cli_name(),
            id.name(),
            if id.needs_p_gt_3() { ", p > 3" } else { "" }
        );
    }
    EXIT_OK
}

fn proof_steps(ns: &[i64], output: &Output, io: &mut Io) -> i32 {
    if !check_ns(ns, io) {
        return EXIT_USAGE;
    }
    let mut checks: Vec<Check> = TargetId::PROOF_STEPS.into_iter().map(Check::ProofStep).collect();
    checks.extend([Check::LemmaA, Check::CentralTerm, Check::RsConsistency]);
    checks.extend([rat(2), rat(3), ratio(5, 2)].into_iter().map(Check::Lhopital));
    execute(checks, ns, &[MMode::Half], output, io)
}

fn padic(target: &str, p: u64, r: u32, io: &mut Io) -> i32 {
    let Some(id) = PadicId::parse(target) else {
        let _ = writeln!(io.err, "error: unknown classical target '{target}' (pad13..pad17)");
        return EXIT_USAGE;
    };
    let v = match classical_check(id, p, r) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if v.status == Status::Skipped {
        let _ = writeln!(io.out, "{id} p={p} r={r}: SKIPPED");
    } else {
        let valuation = v.valuation.map_or("infinite".to_string(), |x| x.to_string());
        let _ = writeln!(io.out, "{id} p={p} r={r}: {} (v_p = {valuation}, need {})", v.status, v.required);
    }
    for note in &v.notes {
        let _ = writeln!(io.out, "  note: {note}");
    }
    let q = id.q_analogue();
    if r == 1 && p > 3 {
        let params = sample::samples(&q.target().params, q.name(), 0, 1).remove(0);
        let _ = writeln!(io.out, "  {q} at n={p}: {}", qcl_core::padic::q_side_status(id, p, &params));
    }
    if v.status == Status::Fail {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(if e.use_stderr() { &mut *io.err } else { &mut *io.out }, "{e}");
            return code;
        }
    };
    match cli.command {
        Command::Verify { target, spec, n, m_mode, output } => verify(&target, &spec, &n, m_mode, &output, &mut io),
        Command::ListTargets => list_targets(&mut io),
        Command::CheckProofSteps { n, output } => proof_steps(&n, &output, &mut io),
        Command::Padic { target, p, r } => padic(&target, p, r, &mut io),
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

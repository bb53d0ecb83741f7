//! `gpthide`: norms, hiding ratios, verification and sweeps from the command line.

mod input;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gpthide::composites::{
    lift_matrix, max_base_norm, min_base_norm, restricted_ratio, sep_norm, CentrallySymmetricModel,
    CompositeModel, CompositionRule,
};
use gpthide::gpt::ModelId;
use gpthide::linalg::Mat;
use gpthide::norms::{base_local_norm, injective_norm};
use gpthide::quantum::{random_subspace_experiment, werner_class_norms, werner_class_ratios};
use gpthide::sampling::derive_seed;
use gpthide::symmetric::{catalog_constants, werner_hiding_ratio};
use gpthide::verify::{run_suite, VerifyOptions, VerifyReport, DEFAULT_SEED};
use gpthide::Error;

use input::{parse_models, parse_pair, parse_range, read_tensor, InputError};
use table::{Cell, Format, Table};

#[derive(Debug, Parser)]
#[command(
    name = "gpthide",
    version,
    about = "Data hiding in general probabilistic theories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, env = "GPTHIDE_SEED")]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Every applicable norm of a composite tensor or a quantum Werner operator.
    Norm {
        /// One model id for both sides, or two separated by a comma.
        #[arg(long)]
        model: String,
        /// Dense row-major CSV matrix.
        #[arg(long, conflicts_with = "werner", required_unless_present = "werner")]
        tensor: Option<PathBuf>,
        /// Coefficients `α,β` of `α ρS + β ρA`.
        #[arg(long, allow_hyphen_values = true)]
        werner: Option<String>,
    },
    /// Werner-line hiding ratio and restricted-ratio bounds of a catalog model.
    Ratio {
        #[arg(long)]
        model: String,
    },
    /// Run the verification suite; exit 1 if any check fails.
    Verify {
        /// Only criteria or checks whose name contains this string.
        #[arg(long)]
        only: Option<String>,
        /// Replace the tolerance of every floating-point check.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// One row per dimension for a model family or the random-subspace experiment.
    Sweep {
        #[arg(long, value_enum)]
        kind: SweepKind,
        /// `a..b`, `a..b:step` or a single value; inclusive.
        #[arg(long)]
        range: String,
        /// Subspace exponent for `appendix-c`.
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepKind {
    Classical,
    Quantum,
    Wtheory,
    Spherical,
    Cubic,
    AppendixC,
}

/// The resolved configuration of one invocation.
#[derive(Debug)]
struct RunConfig {
    command: Command,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Checks(String),
    Library(Error),
    Io(io::Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownModel(_)
            | Error::InvalidDimension { .. }
            | Error::DimensionMismatch { .. } => Failure::Usage(e.to_string()),
            other => Failure::Library(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_format = match cli.command {
        Command::Verify { .. } => Format::Json,
        _ => Format::Csv,
    };
    let config = RunConfig {
        seed: cli.common.seed.unwrap_or(DEFAULT_SEED),
        format: cli.common.format.unwrap_or(default_format),
        out: cli.common.out,
        command: cli.command,
    };
    match run(config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(config: RunConfig) -> Result<(), Failure> {
    let mut sink: Box<dyn Write> = match &config.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    let outcome = match &config.command {
        Command::Norm {
            model,
            tensor,
            werner,
        } => {
            let table = match (tensor, werner) {
                (_, Some(w)) => werner_norms(model, w)?,
                (Some(path), None) => tensor_norms(model, &read_tensor(path)?)?,
                (None, None) => unreachable!("clap requires one of --tensor, --werner"),
            };
            table.write(config.format, &mut *sink)?;
            Ok(())
        }
        Command::Ratio { model } => {
            ratio_table(model)?.write(config.format, &mut *sink)?;
            Ok(())
        }
        Command::Verify { only, tolerance } => {
            let opts = VerifyOptions {
                seed: config.seed,
                only: only.clone(),
                tolerance: *tolerance,
            };
            let report = run_suite(&opts)?;
            if report.criteria.is_empty() {
                return Err(Failure::Usage(format!(
                    "no criterion or check matches '{}'",
                    only.as_deref().unwrap_or_default()
                )));
            }
            write_report(&report, config.format, &mut *sink)?;
            match report.first_failure() {
                None => Ok(()),
                Some(c) => Err(Failure::Checks(format!(
                    "criterion {} ({})",
                    c.number, c.slug
                ))),
            }
        }
        Command::Sweep { kind, range, delta } => {
            let dims = parse_range(range)?;
            sweep(*kind, &dims, *delta, config.seed)?.write(config.format, &mut *sink)?;
            Ok(())
        }
    };
    sink.flush()?;
    outcome
}

fn werner_norms(models: &str, pair: &str) -> Result<Table, Failure> {
    let (a, b) = parse_models(models)?;
    let n = match (a, b) {
        (ModelId::Quantum(n) | ModelId::WTheory(n), ModelId::Quantum(m) | ModelId::WTheory(m))
            if n == m =>
        {
            n
        }
        _ => {
            return Err(Failure::Usage(
                "--werner needs two quantum systems of equal dimension".into(),
            ))
        }
    };
    let (alpha, beta) = parse_pair(pair)?;
    let w = werner_class_norms(n, alpha, beta);
    let mut t = Table::new(&["norm_name", "value"]);
    for (name, v) in [("trace", w.trace), ("sep", w.sep), ("w", w.w)] {
        t.push(vec![name.into(), v.into()]);
    }
    Ok(t)
}

fn composite(a: ModelId, b: ModelId, rule: CompositionRule) -> Result<CompositeModel, Failure> {
    Ok(CompositeModel::new(a.model()?, b.model()?, rule)?)
}

fn tensor_norms(models: &str, x: &Mat) -> Result<Table, Failure> {
    let (ia, ib) = parse_models(models)?;
    let min = composite(ia, ib, CompositionRule::MinTensor)?;
    let (da, db) = min.dims();
    let central = CentrallySymmetricModel::from_model(min.a()).is_some()
        && CentrallySymmetricModel::from_model(min.b()).is_some();
    // A matrix over the inner coordinates of two centrally symmetric models is lifted.
    let x = if central && (x.nrows(), x.ncols()) == (da - 1, db - 1) {
        lift_matrix(x)
    } else if (x.nrows(), x.ncols()) == (da, db) {
        x.clone()
    } else {
        return Err(Failure::Usage(format!(
            "tensor is {}×{}, composite of {ia} and {ib} needs {da}×{db}",
            x.nrows(),
            x.ncols()
        )));
    };
    let native = matches!((ia, ib), (ModelId::Quantum(_), ModelId::Quantum(_)));
    let mut rows: Vec<(&str, gpthide::Result<f64>)> = Vec::new();
    if native {
        let q = composite(ia, ib, CompositionRule::NativeQuantum)?;
        rows.push(("trace", q.base_norm(&x)));
        rows.push(("sep", sep_norm(&min, &x)));
        rows.push(("w", min_base_norm(&min, &x)));
    } else {
        rows.push(("base", min_base_norm(&min, &x)));
        rows.push(("sep", sep_norm(&min, &x)));
        if min.a().dual_extreme_rays().is_some() && min.b().dual_extreme_rays().is_some() {
            let max = composite(ia, ib, CompositionRule::MaxTensor)?;
            rows.push(("max_base", max_base_norm(&max, &x)));
        }
        if let (Some(la), Some(lb)) = (base_local_norm(min.a()), base_local_norm(min.b())) {
            rows.push(("injective", injective_norm(&la, &lb, &x)));
        }
    }
    let mut t = Table::new(&["norm_name", "value"]);
    let mut computed = 0;
    for (name, value) in rows {
        match value {
            Ok(v) => {
                t.push(vec![name.into(), v.into()]);
                computed += 1;
            }
            // Norms outside the tractable classes are reported, not guessed.
            Err(e @ (Error::IntractableClass(_) | Error::UnsupportedLocals(_))) => {
                eprintln!("{name}: {e}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    if computed == 0 {
        return Err(Failure::Library(Error::IntractableClass(
            "no norm of this tensor is computable".into(),
        )));
    }
    Ok(t)
}

fn ratio_rows(id: ModelId) -> Result<Vec<(&'static str, f64)>, Failure> {
    let mut rows = vec![("werner", werner_hiding_ratio(&catalog_constants(id)).ratio)];
    match id {
        ModelId::Quantum(n) | ModelId::WTheory(n) => {
            let r = werner_class_ratios(n);
            rows.push(("qm_sep", r.qm_sep));
            rows.push(("w_sep", r.w_sep));
        }
        ModelId::Spherical(_) | ModelId::Cubic(_) => {
            let m = CentrallySymmetricModel::from_model(&id.model()?)
                .expect("spherical and cubic models are centrally symmetric");
            let r = restricted_ratio(&m, &m)?;
            if let Some(e) = r.exact {
                rows.push(("exact", e));
            }
            rows.push(("witness", r.witness));
            rows.push(("lower", r.guaranteed_lower));
            rows.push(("upper", r.upper));
            rows.push(("sandwich_lower", r.sep_lower));
            rows.push(("sandwich_upper", r.lo_upper));
        }
        ModelId::Classical(_) => {}
    }
    Ok(rows)
}

fn ratio_table(model: &str) -> Result<Table, Failure> {
    let id: ModelId = model.parse()?;
    let mut t = Table::new(&["quantity", "value"]);
    for (name, v) in ratio_rows(id)? {
        t.push(vec![name.into(), v.into()]);
    }
    Ok(t)
}

fn write_report(report: &VerifyReport, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut t = Table::new(&["id", "paper_ref", "expected", "measured", "tol", "pass"]);
            for c in report.checks() {
                t.push(vec![
                    c.id.clone().into(),
                    c.paper_ref.into(),
                    c.expected.into(),
                    c.measured.into(),
                    c.tol.into(),
                    c.pass.to_string().into(),
                ]);
            }
            t.write(Format::Csv, out)
        }
    }
}

fn sweep(kind: SweepKind, dims: &[usize], delta: f64, seed: u64) -> Result<Table, Failure> {
    if kind == SweepKind::AppendixC {
        let mut t = Table::new(&[
            "n",
            "k",
            "delta",
            "seed",
            "witness_bound",
            "overlap_estimate",
            "overlap_threshold",
            "calibrated_bound",
        ]);
        let rows = parallel_rows(dims, |n| {
            let s = derive_seed(seed, n as u64);
            random_subspace_experiment(n, delta, s).map_err(Failure::from)
        })?;
        for r in rows {
            t.push(vec![
                r.n.into(),
                r.k.into(),
                r.delta.into(),
                r.seed.into(),
                r.witness_bound.into(),
                r.overlap_estimate.into(),
                r.overlap_threshold.into(),
                r.calibrated_bound.into(),
            ]);
        }
        return Ok(t);
    }
    let make = |d: usize| match kind {
        SweepKind::Classical => ModelId::Classical(d),
        SweepKind::Quantum => ModelId::Quantum(d),
        SweepKind::Wtheory => ModelId::WTheory(d),
        SweepKind::Spherical => ModelId::Spherical(d),
        SweepKind::Cubic => ModelId::Cubic(d),
        SweepKind::AppendixC => unreachable!("handled above"),
    };
    for &d in dims {
        // Validates the dimension the same way the command line does.
        make(d).to_string().parse::<ModelId>()?;
    }
    let rows = parallel_rows(dims, |d| ratio_rows(make(d)))?;
    let header: &[&'static str] = match kind {
        SweepKind::Quantum | SweepKind::Wtheory => &["model", "dim", "werner", "qm_sep", "w_sep"],
        SweepKind::Spherical => &[
            "model",
            "dim",
            "werner",
            "exact",
            "witness",
            "lower",
            "upper",
            "sandwich_lower",
            "sandwich_upper",
        ],
        SweepKind::Cubic => &[
            "model",
            "dim",
            "werner",
            "witness",
            "lower",
            "upper",
            "sandwich_lower",
            "sandwich_upper",
        ],
        _ => &["model", "dim", "werner"],
    };
    let mut t = Table::new(header);
    for (&d, values) in dims.iter().zip(rows) {
        let mut row: Vec<Cell> = vec![make(d).to_string().into(), d.into()];
        for name in &header[2..] {
            let v = values
                .iter()
                .find(|(k, _)| k == name)
                .map_or(f64::NAN, |(_, v)| *v);
            row.push(v.into());
        }
        t.push(row);
    }
    Ok(t)
}

/// Evaluates rows on scoped threads; results come back in input order.
fn parallel_rows<T: Send>(
    dims: &[usize],
    f: impl Fn(usize) -> Result<T, Failure> + Sync,
) -> Result<Vec<T>, Failure> {
    let threads = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(dims.len().max(1));
    let f = &f;
    let mut out: Vec<(usize, Result<T, Failure>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                s.spawn(move || {
                    (t..dims.len())
                        .step_by(threads)
                        .map(|i| (i, f(dims[i])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().map(|(_, r)| r).collect()
}

//! `mvlab`: mixed volumes, Orlicz functionals and inequality checks from the command line.

mod spec;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mvlab::geometry::Body;
use mvlab::lab::{self, CheckParams, DilateProbe, FuzzConfig, InequalityId, Status, Tolerance};
use mvlab::mixed::{self, quermassintegral, quermassintegral_generic};
use mvlab::orlicz::{self, Orientation, OrliczFunction};
use serde_json::json;

use spec::{load_bodies, parse_phi, BodySpec};

const EXIT_VIOLATION: u8 = 2;

#[derive(Parser)]
#[command(name = "mvlab", version, about = "Mixed volumes, Orlicz functionals and the log-Aleksandrov–Fenchel inequality lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a functional and print it as JSON.
    Compute(ComputeArgs),
    /// Evaluate one inequality; exit 0 if it holds, 2 on violation.
    Check(CheckArgs),
    /// Seeded random campaign over inequality ids, written as CSV.
    Fuzz(FuzzArgs),
    /// Proof trace of the log-AF inequality along a list of q values.
    Trace(TraceArgs),
}

#[derive(Args)]
struct ComputeArgs {
    #[command(subcommand)]
    what: Compute,
    /// Write the bodies, resolved to explicit vertices, to this file.
    #[arg(long, global = true)]
    dump: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MvMethod {
    Polarization,
    Polyfit,
    Measure,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Theorem,
    AsWritten31,
}

#[derive(Subcommand)]
enum Compute {
    /// Volume of one body.
    Volume { body: PathBuf },
    /// V(K₁,…,K_n) of n bodies.
    MixedVolume {
        bodies: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "polarization")]
        method: MvMethod,
    },
    /// W_i(K); closed form unless --m selects the ball-approximant path.
    Quermassintegral {
        body: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// V_φ(L₁,…,L_{n−1}, K_n, L_n); bodies in that order.
    OrliczMmv {
        bodies: Vec<PathBuf>,
        #[arg(long)]
        phi: String,
        #[arg(long, value_enum, default_value = "theorem")]
        orientation: OrientationArg,
    },
    /// L_p multiple mixed volume; bodies L₁,…,L_{n−1}, K_n, L_n.
    LpMmv {
        bodies: Vec<PathBuf>,
        #[arg(long)]
        p: f64,
    },
    /// Mixed volume measure of L₁,…,L_n, or with --phi the Orlicz measure of L₁,…,L_{n−1}, K_n, L_n.
    Measure {
        bodies: Vec<PathBuf>,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    id: InequalityId,
    /// Body files in the order the id expects (a file may hold an array).
    #[arg(long, num_args = 1.., required = true)]
    bodies: Vec<PathBuf>,
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    i: Option<usize>,
    /// Directions for ball and Firey approximants.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DilateArg {
    Off,
    Pure,
    Translated,
}

#[derive(Args)]
struct FuzzArgs {
    /// Comma-separated ids, or `all`.
    #[arg(long, value_delimiter = ',', required = true)]
    ids: Vec<String>,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Use origin-symmetric random bodies throughout.
    #[arg(long)]
    symmetric: bool,
    /// Write per-id slack histograms as SVG.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Write reports with full vertex data as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// φ pool (repeatable); defaults to power:1, power:2, exp:1.
    #[arg(long)]
    phi: Vec<String>,
    #[arg(long, default_value_t = 8)]
    points: usize,
    #[arg(long, default_value_t = 1.0)]
    p_min: f64,
    #[arg(long, default_value_t = 4.0)]
    p_max: f64,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = lab::DEFAULT_M)]
    m: usize,
    #[arg(long, value_enum, default_value = "off")]
    dilate: DilateArg,
}

#[derive(Args)]
struct TraceArgs {
    /// L₁,…,L_{n−1}, K_n, L_n.
    #[arg(long, num_args = 1.., required = true)]
    bodies: Vec<PathBuf>,
    #[arg(long)]
    phi: String,
    #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
    q: Vec<f64>,
}

fn tolerance() -> Result<Tolerance> {
    match std::env::var("MVLAB_TOL") {
        Ok(v) => {
            let t: f64 = v.trim().parse().with_context(|| format!("MVLAB_TOL={v:?} is not a number"))?;
            if !(t.is_finite() && t > 0.0) {
                bail!("MVLAB_TOL must be positive");
            }
            Ok(Tolerance::exact(t))
        }
        Err(_) => Ok(Tolerance::default()),
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn refs(bodies: &[Body]) -> Vec<&Body> {
    bodies.iter().collect()
}

/// Splits `L₁,…,L_{n−1}, K_n, L_n`.
fn split_orlicz(bodies: &[Body]) -> Result<(Vec<&Body>, &Body, &Body)> {
    let n = bodies.first().context("no bodies given")?.dim();
    if bodies.len() != n + 1 {
        bail!("expected {} bodies (L1..L{}, K{n}, L{n}), got {}", n + 1, n - 1, bodies.len());
    }
    Ok((bodies[..n - 1].iter().collect(), &bodies[n - 1], &bodies[n]))
}

fn compute(args: ComputeArgs) -> Result<u8> {
    let paths: Vec<PathBuf> = match &args.what {
        Compute::Volume { body } | Compute::Quermassintegral { body, .. } => vec![body.clone()],
        Compute::MixedVolume { bodies, .. }
        | Compute::OrliczMmv { bodies, .. }
        | Compute::LpMmv { bodies, .. }
        | Compute::Measure { bodies, .. } => bodies.clone(),
    };
    let (specs, bodies) = load_bodies(&paths)?;
    if let Some(path) = &args.dump {
        let resolved: Vec<BodySpec> =
            specs.iter().zip(&bodies).map(|(s, b)| BodySpec::resolved(b, s.name().map(str::to_string))).collect();
        fs::write(path, serde_json::to_string_pretty(&resolved)? + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    match args.what {
        Compute::Volume { .. } => print_json(&json!({ "value": bodies[0].volume(), "dim": bodies[0].dim() }))?,
        Compute::MixedVolume { method, .. } => {
            let r = refs(&bodies);
            let result = match method {
                MvMethod::Polarization => mixed::mixed_volume(&r)?,
                MvMethod::Polyfit => mixed::mixed_volume_polyfit(&r)?,
                MvMethod::Measure => mixed::mixed_volume_by_measure(&r)?,
            };
            print_json(&result)?
        }
        Compute::Quermassintegral { i, m, .. } => match m {
            None => print_json(&json!({ "value": quermassintegral(&bodies[0], i)?, "i": i, "method": "closed_form" }))?,
            Some(m) => {
                let r = quermassintegral_generic(&bodies[0], i, m)?;
                print_json(&json!({ "value": r.value, "i": i, "method": r.method, "condition": r.condition, "m": m, "approximate": i > 0 }))?
            }
        },
        Compute::OrliczMmv { phi, orientation, .. } => {
            let phi = parse_phi(&phi)?;
            let (ls, kn, ln) = split_orlicz(&bodies)?;
            let orientation = match orientation {
                OrientationArg::Theorem => Orientation::Theorem,
                OrientationArg::AsWritten31 => Orientation::AsWritten31,
            };
            let value = orlicz::orlicz_multiple_mixed_volume_oriented(&ls, kn, ln, &phi, orientation)?;
            print_json(&json!({ "value": value, "phi": phi.label(), "orientation": orientation }))?
        }
        Compute::LpMmv { p, .. } => {
            let (ls, kn, ln) = split_orlicz(&bodies)?;
            print_json(&json!({ "value": orlicz::lp_multiple_mixed_volume(&ls, kn, ln, p)?, "p": p }))?
        }
        Compute::Measure { phi, normalize, .. } => {
            let mu = match phi {
                None => orlicz::mixed_volume_measure(&refs(&bodies))?,
                Some(phi) => {
                    let phi = parse_phi(&phi)?;
                    let (ls, kn, ln) = split_orlicz(&bodies)?;
                    orlicz::orlicz_mixed_volume_measure(&ls, kn, ln, &phi)?
                }
            };
            let mu = if normalize { orlicz::normalize(&mu)? } else { mu };
            print_json(&mu)?
        }
    }
    Ok(0)
}

fn check(args: CheckArgs) -> Result<u8> {
    let (_, bodies) = load_bodies(&args.bodies)?;
    let params = CheckParams {
        r: args.r,
        p: args.p,
        i: args.i,
        phi: args.phi.as_deref().map(parse_phi).transpose()?,
        m: args.m,
    };
    let report = lab::check(args.id, &refs(&bodies), &params, &tolerance()?)?;
    print_json(&report)?;
    Ok(if report.status == Status::Violation { EXIT_VIOLATION } else { 0 })
}

fn fuzz(args: FuzzArgs) -> Result<u8> {
    let ids: Vec<InequalityId> = if args.ids.iter().any(|s| s.eq_ignore_ascii_case("all")) {
        InequalityId::ALL.to_vec()
    } else {
        args.ids.iter().map(|s| s.parse()).collect::<mvlab::Result<_>>()?
    };
    let mut cfg = FuzzConfig::new(args.dim, args.trials);
    cfg.symmetric = args.symmetric;
    cfg.points = args.points;
    cfg.p_range = (args.p_min, args.p_max);
    cfg.r = args.r;
    cfg.m = args.m;
    cfg.tolerance = tolerance()?;
    cfg.dilate = match args.dilate {
        DilateArg::Off => DilateProbe::Off,
        DilateArg::Pure => DilateProbe::Pure,
        DilateArg::Translated => DilateProbe::Translated,
    };
    if !args.phi.is_empty() {
        cfg.phi_pool = args.phi.iter().map(|s| parse_phi(s)).collect::<Result<Vec<OrliczFunction>>>()?;
    }
    let outcome = lab::fuzz(&ids, &cfg, args.seed)?;
    let file = fs::File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    lab::write_csv(std::io::BufWriter::new(file), outcome.reports())?;
    if let Some(path) = &args.json {
        fs::write(path, lab::outcome_json(&outcome)? + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.plot {
        fs::write(path, lab::slack_histogram_svg(&outcome, 20)).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut out = std::io::stdout().lock();
    for s in &outcome.summary {
        let min = s.min_slack.map_or("-".to_string(), |v| format!("{v:.6e}"));
        let argmin = s.smallest.first().map_or("-".to_string(), |e| format!("{} (seed {})", e.inputs_digest, e.seed));
        let tag = if s.findings_only { "  [conjecture: findings only]" } else { "" };
        writeln!(
            out,
            "{:26} trials {:5}  violations {:4}  errors {:4}  min slack {min}  argmin {argmin}{tag}",
            s.id.as_str(),
            s.trials,
            s.violations,
            s.errors
        )?;
    }
    for e in &outcome.errors {
        eprintln!("trial error: {} trial {} (seed {}): {}", e.id, e.trial, e.seed, e.message);
    }
    Ok(if outcome.hard_violations() > 0 { EXIT_VIOLATION } else { 0 })
}

fn trace(args: TraceArgs) -> Result<u8> {
    let (_, bodies) = load_bodies(&args.bodies)?;
    let phi = parse_phi(&args.phi)?;
    let (ls, kn, ln) = split_orlicz(&bodies)?;
    print_json(&lab::proof_trace(&ls, kn, ln, &phi, &args.q)?)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Check(a) => check(a),
        Command::Fuzz(a) => fuzz(a),
        Command::Trace(a) => trace(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! Command-line driver: solve closed curves, sweep the modulus branch,
//! find and verify equivalent pairs, and print the branch constants.
//!
//! Exit codes: 0 success, 2 invalid input or out-of-range target,
//! 3 closure failure, 4 equivalence gate failure. Human diagnostics go
//! to stderr; stdout carries data files (or machine summaries under
//! `--json`).

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use elastica::curvature::CurvatureSolution;
use elastica::elliptic::{ellint_k_real, EllipticContext};
use elastica::error::Error;
use elastica::functionals::{self, arc_averaged_torsion};
use elastica::geometry::{
    delta_theta, mu_squared, normalized_radius, omega_param, open_radial, open_vertical,
    vertical_drift,
};
use elastica::knot::{
    self, azimuth_roots_tol, closed_profile, equivalent_pair_solved, functional_roots, knot_at,
    verify_equivalence, Branch, EquivalentPair, KnotSolution,
};
use elastica::param::{
    closed_params, closure_scale, critical_moduli, ls_roots, n_of, nu_peak, p_of_m,
    LangerSingerParams,
};
use elastica::tol::Tolerances;

use output::{
    curve_header, jnum, sig17, write_curve_csv, write_curve_json, write_curve_obj,
    write_table_csv, write_table_json,
};

/// Moduli below this are too close to the circular limit for the
/// descriptor gaps to clear the equivalence gate in floating point; the
/// pair command reports them with a warning instead of failing.
const NEAR_DEGENERATE_M: f64 = 5e-3;

#[derive(Parser)]
#[command(name = "elastica", version, about = "Closed elastica knots from elliptic closed forms")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct one curve and export its samples.
    Solve(SolveArgs),
    /// Tabulate chart parameters and descriptors over a modulus grid.
    Sweep(SweepArgs),
    /// Find the pair of moduli sharing a curvature-functional value.
    Pair(PairArgs),
    /// Check descriptor equality between a modulus and its involution image.
    Verify(VerifyArgs),
    /// Print the branch constants and fixed descriptor values.
    Constants(ConstantsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Obj,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    /// m in (0, m0-].
    Classical,
    /// m in [m0+, 0).
    Extended,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Classical => Branch::Classical,
            BranchArg::Extended => Branch::Extended,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Data file format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the data file here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print a machine-readable summary on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    /// Modulus of the curvature profile.
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    /// Chart scale q0. Defaults to the closure value Q0(m), or to the
    /// midpoint of the admissible interval under --no-closure.
    #[arg(long)]
    q0: Option<f64>,
    /// Azimuthal winding numerator p (with --q).
    #[arg(long)]
    p: Option<u32>,
    /// Azimuthal winding denominator q (with --p).
    #[arg(long)]
    q: Option<u32>,
    /// Modulus branch for the winding solve.
    #[arg(long, value_enum, default_value_t = BranchArg::Classical)]
    branch: BranchArg,
    /// Maximum curvature; sets the length unit.
    #[arg(long, default_value_t = 1.0)]
    k0: f64,
    /// Samples per curvature period.
    #[arg(long, default_value_t = knot::DEFAULT_SAMPLES_PER_PERIOD)]
    samples: usize,
    /// Brent tolerance in m for the winding root solve.
    #[arg(long, default_value_t = 1e-13)]
    tol_root: f64,
    /// Export the open profile without demanding vertical closure.
    #[arg(long)]
    no_closure: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Single-point sweep at this modulus.
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    /// Grid start; defaults to m0+.
    #[arg(long, allow_negative_numbers = true)]
    m_min: Option<f64>,
    /// Grid end; defaults to m0-.
    #[arg(long, allow_negative_numbers = true)]
    m_max: Option<f64>,
    /// Number of grid points.
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PairArgs {
    /// Target value of the scale-free curvature functional.
    #[arg(long, allow_negative_numbers = true)]
    target_f: f64,
    /// Maximum curvature; sets the length unit.
    #[arg(long, default_value_t = 1.0)]
    k0: f64,
    /// Samples per curvature period.
    #[arg(long, default_value_t = knot::DEFAULT_SAMPLES_PER_PERIOD)]
    samples: usize,
    /// Brent tolerance in m for the functional root solves.
    #[arg(long, default_value_t = 1e-13)]
    tol_root: f64,
    /// Gate on the five descriptor gaps.
    #[arg(long, default_value_t = 1e-8)]
    tol_equiv: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Modulus of one member; the partner is n(m) = -m/(1-m).
    #[arg(long, allow_negative_numbers = true)]
    m: f64,
    /// Maximum curvature; sets the length unit.
    #[arg(long, default_value_t = 1.0)]
    k0: f64,
    /// Samples per curvature period.
    #[arg(long, default_value_t = knot::DEFAULT_SAMPLES_PER_PERIOD)]
    samples: usize,
    /// Gate on the five descriptor gaps.
    #[arg(long, default_value_t = 1e-8)]
    tol_equiv: f64,
    /// Print the report as JSON on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Print as JSON on stdout.
    #[arg(long)]
    json: bool,
}

/// A run failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn gate(message: impl Into<String>) -> Self {
        Failure { code: 4, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::ClosureViolated { .. } | Error::NonPeriodic { .. } | Error::OpenCurve { .. } => {
                3
            }
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = init_threads().and_then(|()| match cli.command {
        Cmd::Solve(a) => run_solve(a),
        Cmd::Sweep(a) => run_sweep(a),
        Cmd::Pair(a) => run_pair(a),
        Cmd::Verify(a) => run_verify(a),
        Cmd::Constants(a) => run_constants(a),
    });
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn init_threads() -> Result<(), Failure> {
    match std::env::var("ELASTICA_THREADS") {
        Ok(s) => {
            let n: usize = s
                .trim()
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| {
                    Failure::usage(format!(
                        "ELASTICA_THREADS must be a positive integer, got {s:?}"
                    ))
                })?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Failure::usage(format!("thread pool: {e}")))
        }
        Err(_) => Ok(()),
    }
}

fn check_positive(value: f64, name: &str) -> Result<(), Failure> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(Failure::usage(format!("{name} must be positive and finite, got {value}")));
    }
    Ok(())
}

fn check_samples(samples: usize) -> Result<(), Failure> {
    if samples < 16 {
        return Err(Failure::usage(format!("--samples must be at least 16, got {samples}")));
    }
    Ok(())
}

/// Write the curve through the selected format, to --out when given,
/// otherwise to stdout (unless --json claims stdout for the summary).
fn emit_curve(k: &KnotSolution, solved_from: &str, out: &OutputArgs) -> Result<(), Failure> {
    let header = curve_header(k, solved_from);
    let write_to = |w: &mut dyn Write| -> io::Result<()> {
        match out.format {
            Format::Csv => write_curve_csv(w, k, &header),
            Format::Json => write_curve_json(w, k, &header),
            Format::Obj => write_curve_obj(w, k, &header),
        }
    };
    match &out.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            write_to(&mut f)?;
            f.flush()?;
            eprintln!("wrote {}", path.display());
        }
        None if !out.json => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_to(&mut lock)?;
        }
        None => {}
    }
    Ok(())
}

fn summary_json(k: &KnotSolution) -> Value {
    json!({
        "m": jnum(k.m),
        "q0": jnum(k.q0),
        "k0": jnum(k.k0),
        "p": k.p_int,
        "q": k.q_int,
        "ell": k.ell,
        "lambda": jnum(k.functionals.lambda),
        "nu": jnum(k.functionals.nu),
        "f_hat": jnum(k.functionals.f_hat),
        "avg_torsion": jnum(k.functionals.avg_torsion),
        "total_torsion": jnum(k.functionals.total_torsion),
        "r_hat": jnum(k.r_hat),
        "delta_theta": jnum(k.delta_theta),
        "rows": k.samples.len(),
    })
}

fn print_summary(k: &KnotSolution) {
    eprintln!("m           = {}", sig17(k.m));
    eprintln!("q0          = {}", sig17(k.q0));
    eprintln!("F_hat       = {}", sig17(k.functionals.f_hat));
    eprintln!("avg_torsion = {}", sig17(k.functionals.avg_torsion));
    eprintln!("total_tors. = {}", sig17(k.functionals.total_torsion));
    eprintln!("R_hat       = {}", sig17(k.r_hat));
    eprintln!("delta_theta = {}", sig17(k.delta_theta));
    eprintln!("ell         = {}", k.ell);
}

fn run_solve(a: SolveArgs) -> Result<(), Failure> {
    check_positive(a.k0, "--k0")?;
    check_positive(a.tol_root, "--tol-root")?;
    check_samples(a.samples)?;
    let winding = match (a.p, a.q) {
        (Some(p), Some(q)) => Some((p, q)),
        (None, None) => None,
        _ => return Err(Failure::usage("--p and --q must be given together")),
    };
    match (a.m, winding) {
        (Some(_), Some(_)) => {
            Err(Failure::usage("give either --m or --p/--q, not both"))
        }
        (None, None) => Err(Failure::usage("need --m, or --p and --q")),
        (None, Some((p, q))) => {
            if a.no_closure || a.q0.is_some() {
                return Err(Failure::usage(
                    "--no-closure/--q0 apply to --m profiles, not winding solves",
                ));
            }
            if p == 0 || q < p {
                return Err(Failure::usage(format!(
                    "winding data needs 0 < p <= q, got ({p}, {q})"
                )));
            }
            if (2 * q) % p != 0 {
                return Err(Failure::from(Error::NonPeriodic {
                    ell: 2.0 * q as f64 / p as f64,
                }));
            }
            let target = -(p as f64) * std::f64::consts::PI / q as f64;
            let roots = azimuth_roots_tol(target, a.branch.into(), a.tol_root)?;
            if roots.len() > 1 {
                let all: Vec<String> = roots.iter().map(|&m| sig17(m)).collect();
                eprintln!(
                    "note: {} moduli close with p/q = {p}/{q}; exporting the first of [{}]",
                    roots.len(),
                    all.join(", ")
                );
            }
            let knot = knot_at(roots[0], p, q, a.k0, a.samples)?;
            print_summary(&knot);
            emit_curve(
                &knot,
                &format!("azimuth root of delta_theta = -{p} pi / {q}"),
                &a.output,
            )?;
            if a.output.json {
                let mut doc = summary_json(&knot);
                doc["command"] = json!("solve");
                println!("{}", serde_json::to_string_pretty(&doc)?);
            }
            Ok(())
        }
        (Some(m), None) => {
            if a.no_closure {
                solve_open(m, &a)
            } else {
                if let Some(q0) = a.q0 {
                    let q0_closed = closure_scale(m)?;
                    let gap = (q0 - q0_closed).abs();
                    if gap > 1e-9 * q0_closed.abs().max(1.0) {
                        return Err(Failure::from(Error::ClosureViolated {
                            q0,
                            q0_closed,
                            gap,
                        }));
                    }
                }
                let knot = closed_profile(m, a.k0, a.samples)?;
                print_summary(&knot);
                emit_curve(&knot, "input", &a.output)?;
                if a.output.json {
                    let mut doc = summary_json(&knot);
                    doc["command"] = json!("solve");
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
                Ok(())
            }
        }
    }
}

const OPEN_COLUMNS: [&str; 5] = ["s", "kappa", "tau", "rho", "z"];

/// One period of an open profile at an arbitrary chart point: the
/// vertical coordinate accumulates the per-period drift instead of
/// closing. Frames and azimuth are omitted; they belong to closed
/// exports.
fn solve_open(m: f64, a: &SolveArgs) -> Result<(), Failure> {
    let q0 = match a.q0 {
        Some(q0) => q0,
        None => {
            let mid = (m.max(0.0) + 1.0) / 2.0;
            eprintln!("note: --q0 not given; using the chart midpoint q0 = {}", sig17(mid));
            mid
        }
    };
    let ls = LangerSingerParams::new(m, q0)?;
    let sol = CurvatureSolution::new(ls, a.k0, Tolerances::default())?;
    let drift = vertical_drift(&sol)?;
    let mut rows = Vec::with_capacity(a.samples + 1);
    for i in 0..=a.samples {
        let s = sol.period * i as f64 / a.samples as f64;
        rows.push(vec![
            s,
            sol.kappa(s)?,
            sol.torsion(s)?,
            open_radial(&sol, s)?,
            open_vertical(&sol, s)?,
        ]);
    }
    let header = vec![
        format!("m = {} (input)", sig17(m)),
        format!(
            "q0 = {} (off-closure chart point; closure would need Q0(m) = {})",
            sig17(q0),
            sig17(closure_scale(m)?)
        ),
        format!("k0 = {} (input; maximum curvature, sets the length unit)", sig17(a.k0)),
        format!(
            "lambda = {}, nu = {} (chart of the conserved quantities at (m, q0))",
            sig17(ls.lambda()),
            sig17(ls.nu())
        ),
        format!(
            "delta_z_per_period = {} (vertical drift; nonzero means the profile does not close)",
            sig17(drift)
        ),
        format!("rows = {} (samples_per_period + 1)", rows.len()),
    ];
    eprintln!("open profile: m = {}, q0 = {}", sig17(m), sig17(q0));
    eprintln!("delta_z per period = {}", sig17(drift));
    let write_to = |w: &mut dyn Write| -> io::Result<()> {
        match a.output.format {
            Format::Csv => write_table_csv(w, &header, &OPEN_COLUMNS, &rows),
            Format::Json => write_table_json(w, &header, &OPEN_COLUMNS, &rows),
            Format::Obj => unreachable!(),
        }
    };
    if a.output.format == Format::Obj {
        return Err(Failure::usage(
            "obj export needs the closed 3D curve; open profiles offer csv or json",
        ));
    }
    match &a.output.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            write_to(&mut f)?;
            f.flush()?;
            eprintln!("wrote {}", path.display());
        }
        None if !a.output.json => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_to(&mut lock)?;
        }
        None => {}
    }
    if a.output.json {
        let doc = json!({
            "command": "solve",
            "mode": "open",
            "m": jnum(m),
            "q0": jnum(q0),
            "k0": jnum(a.k0),
            "lambda": jnum(ls.lambda()),
            "nu": jnum(ls.nu()),
            "delta_z_per_period": jnum(drift),
            "rows": rows.len(),
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    }
    Ok(())
}

const SWEEP_COLUMNS: [&str; 14] = [
    "m",
    "Q0",
    "nu",
    "lambda",
    "p",
    "omega1",
    "abs_omega3",
    "F_hat",
    "avg_torsion",
    "total_torsion",
    "R_hat",
    "mu2",
    "Omega",
    "delta_theta",
];

fn sweep_row(m: f64) -> elastica::Result<Vec<f64>> {
    let q0 = closure_scale(m)?;
    let ls = closed_params(m)?;
    let (e1, e2, e3) = ls_roots(m);
    let ctx = EllipticContext::from_roots(e1, e2, e3, Tolerances::default())?;
    let fs = functionals::evaluate(m, Tolerances::default())?;
    let r_hat = match normalized_radius(m) {
        Ok(v) => v,
        Err(Error::Unbounded { .. }) => f64::INFINITY,
        Err(e) => return Err(e),
    };
    Ok(vec![
        m,
        q0,
        ls.nu(),
        ls.lambda(),
        p_of_m(m),
        ctx.omega1,
        ctx.omega3_abs,
        fs.f_hat,
        fs.avg_torsion,
        fs.total_torsion,
        r_hat,
        mu_squared(ls.lambda(), ls.nu()),
        omega_param(m)?.omega,
        delta_theta(m)?,
    ])
}

fn run_sweep(a: SweepArgs) -> Result<(), Failure> {
    use rayon::prelude::*;

    let (m_minus, m_plus) = critical_moduli();
    let grid: Vec<f64> = match (a.m, a.m_min, a.m_max) {
        (Some(m), None, None) => vec![m],
        (Some(_), _, _) => {
            return Err(Failure::usage("give either --m or --m-min/--m-max, not both"))
        }
        (None, lo, hi) => {
            let lo = lo.unwrap_or(m_plus);
            let hi = hi.unwrap_or(m_minus);
            if a.points == 0 {
                return Err(Failure::usage("--points must be at least 1"));
            }
            if !(lo <= hi) {
                return Err(Failure::usage(format!(
                    "grid needs m_min <= m_max, got [{lo}, {hi}]"
                )));
            }
            if a.points == 1 {
                vec![lo]
            } else {
                (0..a.points)
                    .map(|i| lo + (hi - lo) * i as f64 / (a.points - 1) as f64)
                    .collect()
            }
        }
    };
    let slack = 1e-12;
    for &m in &grid {
        if !(m >= m_plus - slack && m <= m_minus + slack) {
            return Err(Failure::usage(format!(
                "grid point m = {m} lies outside the closed branch [{}, {}]",
                sig17(m_plus),
                sig17(m_minus)
            )));
        }
    }
    if a.output.format == Format::Obj {
        return Err(Failure::usage("sweep tables offer csv or json, not obj"));
    }

    let rows: Vec<elastica::Result<Vec<f64>>> = grid.par_iter().map(|&m| sweep_row(m)).collect();
    let mut table = Vec::with_capacity(rows.len());
    for (m, row) in grid.iter().zip(rows) {
        table.push(row.map_err(|e| {
            Failure::from(e).message_prefixed(format!("at grid point m = {m}: "))
        })?);
    }

    let header = vec![
        "closed-branch sweep".to_string(),
        format!(
            "grid: {} point(s) in [{}, {}]",
            grid.len(),
            sig17(grid[0]),
            sig17(*grid.last().unwrap())
        ),
        format!(
            "branch boundaries: m0+ = {}, m0- = {}",
            sig17(m_plus),
            sig17(m_minus)
        ),
    ];
    let write_to = |w: &mut dyn Write| -> io::Result<()> {
        match a.output.format {
            Format::Csv => write_table_csv(w, &header, &SWEEP_COLUMNS, &table),
            Format::Json => write_table_json(w, &header, &SWEEP_COLUMNS, &table),
            Format::Obj => unreachable!(),
        }
    };
    match &a.output.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            write_to(&mut f)?;
            f.flush()?;
            eprintln!("wrote {} rows to {}", table.len(), path.display());
        }
        None if !a.output.json => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_to(&mut lock)?;
        }
        None => {}
    }
    if a.output.json {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        write_table_json(&mut lock, &header, &SWEEP_COLUMNS, &table)?;
    }
    Ok(())
}

impl Failure {
    fn message_prefixed(mut self, prefix: String) -> Self {
        self.message = format!("{prefix}{}", self.message);
        self
    }
}

/// File path for one member of a pair: `out.csv` -> `out.minus.csv`.
fn member_path(base: &PathBuf, member: &str) -> PathBuf {
    let mut path = base.clone();
    match base.extension().and_then(|e| e.to_str()) {
        Some(ext) => {
            let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("pair");
            path.set_file_name(format!("{stem}.{member}.{ext}"));
        }
        None => {
            let name = base.file_name().and_then(|s| s.to_str()).unwrap_or("pair");
            path.set_file_name(format!("{name}.{member}"));
        }
    }
    path
}

fn member_line(label: &str, k: &KnotSolution) -> String {
    format!(
        "  {label:<10} m = {:<24} q0 = {:<24} R_hat = {}",
        sig17(k.m),
        sig17(k.q0),
        sig17(k.r_hat)
    )
}

fn run_pair(a: PairArgs) -> Result<(), Failure> {
    check_positive(a.k0, "--k0")?;
    check_positive(a.tol_root, "--tol-root")?;
    check_positive(a.tol_equiv, "--tol-equiv")?;
    check_samples(a.samples)?;

    let (m_minus, m_plus) = functional_roots(a.target_f, a.tol_root)?;
    if m_minus < NEAR_DEGENERATE_M {
        eprintln!(
            "warning: near-degenerate pair (m- = {}, m+ = {}); the descriptors \
             approach their circular-limit values and the scale-free radius \
             diverges, so the gap gate and curve export are skipped",
            sig17(m_minus),
            sig17(m_plus)
        );
        if a.output.out.is_some() {
            eprintln!("warning: --out ignored for a near-degenerate pair");
        }
        let residual = (n_of(m_plus) - m_minus).abs();
        if a.output.json {
            let doc = json!({
                "command": "pair",
                "target_f": jnum(a.target_f),
                "near_degenerate": true,
                "m_minus": jnum(m_minus),
                "m_plus": jnum(m_plus),
                "modulus_residual": jnum(residual),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        } else {
            println!("near-degenerate pair at F_hat = {}:", sig17(a.target_f));
            println!("  m- = {}", sig17(m_minus));
            println!("  m+ = {}", sig17(m_plus));
            println!("  |n(m+) - m-| = {}", sig17(residual));
        }
        return Ok(());
    }

    let pair = equivalent_pair_solved(a.target_f, a.k0, a.samples, a.tol_root)?;
    let report = verify_equivalence(&pair, a.tol_equiv);
    let arc_minus = arc_averaged_torsion(pair.knot_minus.m, pair.knot_minus.q0, a.k0)?;
    let arc_plus = arc_averaged_torsion(pair.knot_plus.m, pair.knot_plus.q0, a.k0)?;

    if let Some(base) = &a.output.out {
        let minus_path = member_path(base, "minus");
        let plus_path = member_path(base, "plus");
        let solved = format!("functional root of F_hat = {}", sig17(a.target_f));
        let out_minus = OutputArgs {
            format: a.output.format,
            out: Some(minus_path),
            json: false,
        };
        let out_plus = OutputArgs {
            format: a.output.format,
            out: Some(plus_path),
            json: false,
        };
        emit_curve(&pair.knot_minus, &solved, &out_minus)?;
        emit_curve(&pair.knot_plus, &solved, &out_plus)?;
    }

    if a.output.json {
        let doc = json!({
            "command": "pair",
            "target_f": jnum(a.target_f),
            "near_degenerate": false,
            "minus": summary_json(&pair.knot_minus),
            "plus": summary_json(&pair.knot_plus),
            "arc_averaged_torsion": {
                "minus": jnum(arc_minus),
                "plus": jnum(arc_plus),
            },
            "gaps": {
                "f_hat": jnum(report.f_hat_gap),
                "avg_torsion": jnum(report.avg_torsion_gap),
                "total_torsion": jnum(report.total_torsion_gap),
                "r_hat": jnum(report.r_hat_gap),
                "delta_theta": jnum(report.delta_theta_gap),
            },
            "modulus_residual": jnum(report.modulus_residual),
            "max_gap": jnum(report.max_gap()),
            "tol": jnum(report.tol),
            "pass": report.pass,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("equivalent pair at F_hat = {}:", sig17(a.target_f));
        println!("{}", member_line("classical", &pair.knot_minus));
        println!("{}", member_line("extended", &pair.knot_plus));
        println!(
            "  shared descriptors: F_hat = {}, avg_torsion = {}, total_torsion = {}",
            sig17(pair.knot_minus.functionals.f_hat),
            sig17(pair.knot_minus.functionals.avg_torsion),
            sig17(pair.knot_minus.functionals.total_torsion)
        );
        println!(
            "  arc-averaged torsion per unit length / k0: classical = {}, extended = {}",
            sig17(arc_minus),
            sig17(arc_plus)
        );
        print!("{report}");
    }

    if report.pass {
        Ok(())
    } else {
        Err(Failure::gate(format!(
            "equivalence gate failed: max descriptor gap {} exceeds {}",
            sig17(report.max_gap()),
            sig17(a.tol_equiv)
        )))
    }
}

fn run_verify(a: VerifyArgs) -> Result<(), Failure> {
    check_positive(a.k0, "--k0")?;
    check_positive(a.tol_equiv, "--tol-equiv")?;
    check_samples(a.samples)?;
    if a.m == 0.0 {
        return Err(Failure::usage("m = 0 is the involution fixed point; pick m != 0"));
    }
    let m_cl = if a.m > 0.0 { a.m } else { n_of(a.m) };
    let m_ext = n_of(m_cl);
    let knot_minus = closed_profile(m_cl, a.k0, a.samples)?;
    let knot_plus = closed_profile(m_ext, a.k0, a.samples)?;
    let pair = EquivalentPair {
        knot_minus,
        knot_plus,
        max_functional_gap: 0.0,
    };
    let report = verify_equivalence(&pair, a.tol_equiv);
    if a.json {
        let doc = json!({
            "command": "verify",
            "m_minus": jnum(pair.knot_minus.m),
            "m_plus": jnum(pair.knot_plus.m),
            "gaps": {
                "f_hat": jnum(report.f_hat_gap),
                "avg_torsion": jnum(report.avg_torsion_gap),
                "total_torsion": jnum(report.total_torsion_gap),
                "r_hat": jnum(report.r_hat_gap),
                "delta_theta": jnum(report.delta_theta_gap),
            },
            "modulus_residual": jnum(report.modulus_residual),
            "max_gap": jnum(report.max_gap()),
            "tol": jnum(report.tol),
            "pass": report.pass,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "involution partners m = {} and n(m) = {}:",
            sig17(pair.knot_minus.m),
            sig17(pair.knot_plus.m)
        );
        print!("{report}");
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::gate(format!(
            "equivalence gate failed: max descriptor gap {} exceeds {}",
            sig17(report.max_gap()),
            sig17(a.tol_equiv)
        )))
    }
}

fn run_constants(a: ConstantsArgs) -> Result<(), Failure> {
    let (m_minus, m_plus) = critical_moduli();
    let (m_star, nu_star) = nu_peak()?;
    let k_at = ellint_k_real(m_minus)?;
    let rows: Vec<(&str, f64, String)> = vec![
        ("m0_minus", m_minus, "root of 2E(m) = K(m); classical branch boundary".into()),
        ("m0_plus", m_plus, "n(m0-) under the involution n(m) = -m/(1-m)".into()),
        ("m_star", m_star, "argmax of nu(m) on (0, m0-)".into()),
        ("nu_star", nu_star, "nu(m_star), the largest axis tilt on the branch".into()),
        (
            "f_hat_circular",
            std::f64::consts::PI,
            "F_hat(0) = pi; circular limit".into(),
        ),
        (
            "f_hat_boundary",
            (2.0 * m_minus - 1.0) * k_at / m_minus.sqrt(),
            "F_hat(m0+-) = (2 m0- - 1) K(m0-) / sqrt(m0-)".into(),
        ),
        (
            "total_torsion_boundary",
            0.5,
            "T(m0+-) = 1/2; branch boundary".into(),
        ),
        (
            "avg_torsion_boundary",
            std::f64::consts::PI / (4.0 * m_minus.sqrt() * k_at),
            "avg_torsion(m0+-) = pi / (4 sqrt(m0-) K(m0-))".into(),
        ),
        (
            "delta_theta_boundary",
            -std::f64::consts::PI,
            "delta_theta(m0+-) = -pi; the profile closes in two periods".into(),
        ),
        (
            "r_hat_boundary",
            2.0 * m_minus.sqrt(),
            "R_hat(m0+-) = 2 sqrt(m0-)".into(),
        ),
        (
            "mu_squared_circular",
            1.0 / 3.0,
            "mu^2 -> 1/3 at the circular limit (m, q0) = (0, 1)".into(),
        ),
    ];
    if a.json {
        let mut obj = serde_json::Map::new();
        for (name, value, provenance) in &rows {
            obj.insert(
                name.to_string(),
                json!({ "value": jnum(*value), "provenance": provenance }),
            );
        }
        println!("{}", serde_json::to_string_pretty(&Value::Object(obj))?);
    } else {
        for (name, value, provenance) in &rows {
            println!("{name:<24} = {:<24} {provenance}", sig17(*value));
        }
    }
    Ok(())
}

//! `bargmann`: command-line front end over the core library.
//!
//! Subcommands map one-to-one onto library entry points and emit CSV or
//! JSON tables. Output is deterministic for identical flags and seeds,
//! file writes go through a temp file plus rename, and exit codes are
//! 0 (success), 2 (bad usage or parameters), 3 (numerical contract
//! violated at runtime).

use std::path::PathBuf;
use std::process::ExitCode;

use bargmann_core::bargmann::BargmannFunction;
use bargmann_core::conjugate::{
    forward_line_integral, inverse_mellin, inverse_phase_space, laurent_tail_estimate,
    to_conjugate, MellinContour,
};
use bargmann_core::numerics::gauss_laguerre_rule;
use bargmann_core::overlap::{
    inner_conjugate_double, inner_conjugate_line, inner_mixed, overlap_report,
};
use bargmann_core::propagators::{exact_ho_bargmann, exact_ho_conjugate};
use bargmann_core::semiclassical::{
    ksc_bargmann, ksc_conjugate, shoot_bargmann, shoot_conjugate, ComplexTrajectory,
    WeylHamiltonian,
};
use bargmann_core::states::{inner_series, OscillatorFrame, StateDescriptor};
use bargmann_core::verify::{fock_kernel, quadratic_fock_unitary, run_suite};
use bargmann_core::{Complex64, CoreError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

// ---------------------------------------------------------------------------
// Flag surface.

#[derive(Parser)]
#[command(
    name = "bargmann",
    version,
    about = "Transforms, scalar products, and propagators for Bargmann-space states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write here instead of stdout (temp file + rename, so readers never
    /// observe a partial table).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Table format. Defaults to csv for tables and json for reports.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the conjugate image f(w) of a state at one or more w.
    Transform(TransformArgs),
    /// Reconstruct psi(z*) from the conjugate image at one or more z*.
    Invert(InvertArgs),
    /// Scalar product of two states by one route or all four.
    Inner(InnerArgs),
    /// Exact oscillator propagators in either representation.
    Propagate(PropagateArgs),
    /// Trajectory-sum propagators with built-in oracles where one exists.
    Semiclassical(SemiclassicalArgs),
    /// Seeded self-check suites; exits 3 if any invariant fails.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct TransformArgs {
    /// State descriptor, e.g. '{"type":"fock","params":{"n":1},"truncation":8}'.
    #[arg(long)]
    state: String,
    /// Evaluation point "a+bi"; repeatable.
    #[arg(long = "at", required = true)]
    at: Vec<String>,
    /// Gauss-Laguerre nodes for the line transform.
    #[arg(long, default_value_t = 64)]
    rule_nodes: usize,
}

#[derive(Args)]
struct InvertArgs {
    #[arg(long)]
    state: String,
    /// Evaluation point "a+bi"; repeatable.
    #[arg(long = "at", required = true)]
    at: Vec<String>,
    #[arg(long, value_enum, default_value_t = InvertRoute::Termwise)]
    route: InvertRoute,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum InvertRoute {
    /// Coefficient-by-coefficient resummation (exact to roundoff).
    Termwise,
    /// Numerical contour inversion with an automatic contour.
    Contour,
}

#[derive(Args)]
struct InnerArgs {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    #[arg(long, value_enum, default_value_t = InnerRoute::All)]
    route: InnerRoute,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum InnerRoute {
    Series,
    Double,
    Line,
    Mixed,
    /// Every route side by side as a JSON report.
    All,
}

#[derive(Args)]
struct PropagateArgs {
    #[arg(long, value_enum)]
    kind: PropagateKind,
    /// Initial coherent label z0 as "a+bi".
    #[arg(long)]
    z0: String,
    /// Final-side argument: z* for the holomorphic kernel.
    #[arg(long)]
    zstar: Option<String>,
    /// Final-side argument: w for the conjugate kernel.
    #[arg(long)]
    w: Option<String>,
    /// Evolution time; repeatable for a sweep.
    #[arg(long = "t", required = true)]
    t: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PropagateKind {
    HoBargmann,
    HoConjugate,
}

#[derive(Args)]
struct SemiclassicalArgs {
    #[arg(long, value_enum)]
    hamiltonian: HamiltonianKind,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.3)]
    beta: f64,
    #[arg(long, default_value_t = 0.3)]
    gamma: f64,
    #[arg(long, default_value_t = 0.1)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Initial label z_i as "a+bi".
    #[arg(long)]
    zi: String,
    /// Final boundary value z_f* (holomorphic side).
    #[arg(long)]
    zfstar: Option<String>,
    /// Final boundary value w (conjugate side).
    #[arg(long)]
    w: Option<String>,
    #[arg(long = "t")]
    t: f64,
    /// Shooting guess for v(0); repeatable to sum several trajectories.
    #[arg(long = "guess")]
    guesses: Vec<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum HamiltonianKind {
    Ho,
    Quadratic,
    Quartic,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

// ---------------------------------------------------------------------------
// Failure mapping onto exit codes.

#[derive(Debug)]
enum Failure {
    /// Flag or descriptor problems: exit 2.
    Usage(String),
    /// The library refused or a numerical contract broke: exit 3.
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) => m,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parameter(_) => Failure::Usage(e.to_string()),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

// ---------------------------------------------------------------------------
// Complex literals: "a+bi" in, separate re/im columns out.

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::Usage(format!("bad complex literal '{s}' (expected \"a+bi\")"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    if !t.ends_with('i') {
        return t.parse::<f64>().map(Complex64::from).map_err(|_| bad());
    }
    let body = &t[..t.len() - 1];
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k] as char;
        if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
            split = Some(k);
            break;
        }
    }
    let unit_im = |part: &str| -> Result<f64, Failure> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            other => other.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let re: f64 = body[..k].parse().map_err(|_| bad())?;
            Ok(Complex64::new(re, unit_im(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, unit_im(body)?)),
    }
}

fn cx_json(c: Complex64) -> Value {
    json!({ "re": c.re + 0.0, "im": c.im + 0.0 })
}

// ---------------------------------------------------------------------------
// Output assembly.

/// One table with fixed column names; renders as CSV or a JSON array.
struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    // Canonical zero keeps -0.0 cells out of the table.
                    let cells: Vec<String> = row.iter().map(|x| format!("{}", x + 0.0)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let arr: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = serde_json::Map::new();
                        for (name, x) in self.columns.iter().zip(row) {
                            obj.insert((*name).to_string(), json!(x + 0.0));
                        }
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&arr).expect("plain numbers");
                s.push('\n');
                s
            }
        }
    }
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let file_name = path
                .file_name()
                .ok_or_else(|| Failure::Usage(format!("output path {path:?} has no file name")))?
                .to_string_lossy()
                .into_owned();
            let tmp = path.with_file_name(format!("{file_name}.tmp"));
            std::fs::write(&tmp, content)
                .map_err(|e| Failure::Usage(format!("cannot write {tmp:?}: {e}")))?;
            std::fs::rename(&tmp, path)
                .map_err(|e| Failure::Usage(format!("cannot move table into {path:?}: {e}")))
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

fn run_transform(a: &TransformArgs) -> Result<(Table, Format), Failure> {
    let state = StateDescriptor::parse(&a.state)?.build()?;
    let psi = BargmannFunction::new(state.clone());
    let f = to_conjugate(&state);
    let rule = gauss_laguerre_rule(a.rule_nodes)?;
    let mut rows = Vec::new();
    for at in &a.at {
        let w = parse_complex(at)?;
        let value = forward_line_integral(&psi, w, &rule)?;
        rows.push(vec![
            w.re,
            w.im,
            value.re,
            value.im,
            laurent_tail_estimate(&f, w),
        ]);
    }
    Ok((
        Table {
            columns: &["re_w", "im_w", "re_value", "im_value", "error_estimate"],
            rows,
        },
        Format::Csv,
    ))
}

fn run_invert(a: &InvertArgs) -> Result<(Table, Format), Failure> {
    let state = StateDescriptor::parse(&a.state)?.build()?;
    let psi = BargmannFunction::new(state.clone());
    let f = to_conjugate(&state);
    let mut rows = Vec::new();
    for at in &a.at {
        let zs = parse_complex(at)?;
        let value = match a.route {
            InvertRoute::Termwise => inverse_phase_space(&f, zs),
            InvertRoute::Contour => {
                let contour = MellinContour::automatic(&f, zs)?;
                inverse_mellin(&f, zs, &contour)?
            }
        };
        // Round-trip residual against the direct series evaluation.
        let residual = (value - psi.eval(zs)).norm();
        rows.push(vec![zs.re, zs.im, value.re, value.im, residual]);
    }
    Ok((
        Table {
            columns: &[
                "re_zstar",
                "im_zstar",
                "re_value",
                "im_value",
                "error_estimate",
            ],
            rows,
        },
        Format::Csv,
    ))
}

fn run_inner(a: &InnerArgs, format: Option<Format>) -> Result<(String, Format), Failure> {
    let left = StateDescriptor::parse(&a.left)?.build()?;
    let right = StateDescriptor::parse(&a.right)?.build()?;
    if a.route == InnerRoute::All {
        if format == Some(Format::Csv) {
            return Err(Failure::Usage(
                "route 'all' emits a JSON report; drop --format csv or pick one route".into(),
            ));
        }
        let report = overlap_report(&left, &right)?;
        let mut s = serde_json::to_string_pretty(&report).expect("report is plain data");
        s.push('\n');
        return Ok((s, Format::Json));
    }
    let series = inner_series(&left, &right);
    let fl = to_conjugate(&left);
    let fr = to_conjugate(&right);
    let value = match a.route {
        InnerRoute::Series => series,
        InnerRoute::Double => inner_conjugate_double(&fl, &fr),
        InnerRoute::Line => {
            let top = fl.truncation().max(fr.truncation());
            inner_conjugate_line(&fl, &fr, 24, (2 * top + 2).max(32))?
        }
        InnerRoute::Mixed => inner_mixed(
            &fl,
            &BargmannFunction::new(right.clone()),
            &bargmann_core::numerics::PhaseSpaceGrid::standard(),
        )?,
        InnerRoute::All => unreachable!("handled above"),
    };
    let table = Table {
        columns: &["re_value", "im_value", "error_estimate"],
        rows: vec![vec![value.re, value.im, (value - series).norm()]],
    };
    Ok((
        table.render(format.unwrap_or(Format::Csv)),
        format.unwrap_or(Format::Csv),
    ))
}

fn run_propagate(a: &PropagateArgs) -> Result<(Table, Format), Failure> {
    let frame = OscillatorFrame::new(a.mass, a.omega, a.hbar)?;
    let z0 = parse_complex(&a.z0)?;
    let arg = match a.kind {
        PropagateKind::HoBargmann => {
            let Some(zstar) = &a.zstar else {
                return Err(Failure::Usage("ho-bargmann needs --zstar".into()));
            };
            if a.w.is_some() {
                return Err(Failure::Usage("--w belongs to ho-conjugate".into()));
            }
            parse_complex(zstar)?
        }
        PropagateKind::HoConjugate => {
            let Some(w) = &a.w else {
                return Err(Failure::Usage("ho-conjugate needs --w".into()));
            };
            if a.zstar.is_some() {
                return Err(Failure::Usage("--zstar belongs to ho-bargmann".into()));
            }
            parse_complex(w)?
        }
    };
    let mut rows = Vec::new();
    for &t in &a.t {
        let value = match a.kind {
            PropagateKind::HoBargmann => exact_ho_bargmann(arg, z0, t, &frame),
            PropagateKind::HoConjugate => exact_ho_conjugate(arg, z0, t, &frame)?,
        };
        rows.push(vec![t, arg.re, arg.im, value.re, value.im]);
    }
    Ok((
        Table {
            columns: &["t", "re_arg", "im_arg", "re_value", "im_value"],
            rows,
        },
        Format::Csv,
    ))
}

fn trajectory_json(traj: &ComplexTrajectory, action: Complex64) -> Value {
    json!({
        "v0": cx_json(traj.v_start()),
        "newton_steps": traj.newton_steps(),
        "m": {
            "uu": cx_json(traj.m_uu()),
            "uv": cx_json(traj.m_uv()),
            "vu": cx_json(traj.m_vu()),
            "vv": cx_json(traj.m_vv()),
        },
        "action": cx_json(action),
        "integration_error": traj.error_estimate(),
    })
}

fn run_semiclassical(
    a: &SemiclassicalArgs,
    format: Option<Format>,
) -> Result<(String, Format), Failure> {
    if format == Some(Format::Csv) {
        return Err(Failure::Usage(
            "semiclassical emits a JSON report; drop --format csv".into(),
        ));
    }
    let z_i = parse_complex(&a.zi)?;
    let build = || -> Result<WeylHamiltonian, CoreError> {
        Ok(match a.hamiltonian {
            HamiltonianKind::Ho => WeylHamiltonian::ho(a.omega, a.hbar),
            HamiltonianKind::Quadratic => {
                WeylHamiltonian::quadratic(a.alpha, a.beta, a.gamma, a.hbar)
            }
            HamiltonianKind::Quartic => WeylHamiltonian::quartic(a.omega, a.lambda, a.hbar),
        })
    };
    let h = build()?;
    let mut guesses = Vec::new();
    for g in &a.guesses {
        guesses.push(parse_complex(g)?);
    }
    if guesses.is_empty() {
        guesses.push(Complex64::new(0.0, 0.0));
    }
    let name = match a.hamiltonian {
        HamiltonianKind::Ho => "ho",
        HamiltonianKind::Quadratic => "quadratic",
        HamiltonianKind::Quartic => "quartic",
    };

    let (boundary, report) = match (&a.zfstar, &a.w) {
        (Some(zf), None) => {
            let zfs = parse_complex(zf)?;
            let value = ksc_bargmann(&h, z_i, zfs, a.t, &guesses)?;
            let mut trajectories = Vec::new();
            let mut worst_residual = 0.0f64;
            for &g in &guesses {
                let traj = shoot_bargmann(&h, z_i, zfs, a.t, g)?;
                worst_residual = worst_residual.max((traj.v_end() - zfs).norm());
                let s = bargmann_core::semiclassical::action(&traj, &h, zfs)?;
                trajectories.push(trajectory_json(&traj, s));
            }
            let oracle = match a.hamiltonian {
                HamiltonianKind::Ho => Some(exact_ho_bargmann(
                    zfs,
                    z_i,
                    a.t,
                    &OscillatorFrame::new(1.0, a.omega, a.hbar)?,
                )),
                HamiltonianKind::Quadratic => {
                    let u = quadratic_fock_unitary(a.alpha, a.beta, a.gamma, a.t, 64);
                    Some(fock_kernel(&u, zfs, z_i))
                }
                HamiltonianKind::Quartic => None,
            };
            (
                json!({ "kind": "bargmann", "zi": cx_json(z_i), "zfstar": cx_json(zfs), "t": a.t }),
                build_semiclassical_report(name, value, oracle, worst_residual, trajectories, None),
            )
        }
        (None, Some(wflag)) => {
            let w = parse_complex(wflag)?;
            let mut note = None;
            let value = match ksc_conjugate(&h, z_i, w, a.t, &guesses) {
                Ok(v) => v,
                Err(CoreError::DegenerateSaddle {
                    exact_fallback: Some(v),
                }) => {
                    note = Some(
                        "degenerate saddle: exponent linear in the final variable, exact pole used",
                    );
                    v
                }
                Err(e) => return Err(e.into()),
            };
            let mut trajectories = Vec::new();
            let mut worst_residual = 0.0f64;
            if note.is_none() {
                for &g in &guesses {
                    let traj = shoot_conjugate(&h, z_i, w, a.t, g)?;
                    worst_residual = worst_residual.max((traj.u_end() - w).norm());
                    let s = bargmann_core::semiclassical::action(&traj, &h, traj.v_end())?;
                    let stilde = s + Complex64::new(0.0, a.hbar) * w * traj.v_end();
                    trajectories.push(trajectory_json(&traj, stilde));
                }
            }
            let oracle = match a.hamiltonian {
                HamiltonianKind::Ho => Some(exact_ho_conjugate(
                    w,
                    z_i,
                    a.t,
                    &OscillatorFrame::new(1.0, a.omega, a.hbar)?,
                )?),
                HamiltonianKind::Quadratic => descent_branch_oracle(a, z_i, w),
                HamiltonianKind::Quartic => None,
            };
            (
                json!({ "kind": "conjugate", "zi": cx_json(z_i), "w": cx_json(w), "t": a.t }),
                build_semiclassical_report(name, value, oracle, worst_residual, trajectories, note),
            )
        }
        _ => {
            return Err(Failure::Usage(
                "pass exactly one of --zfstar (holomorphic side) or --w (conjugate side)".into(),
            ))
        }
    };

    let mut doc = report;
    doc.as_object_mut()
        .expect("report is an object")
        .insert("boundary".into(), boundary);
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data");
    s.push('\n');
    Ok((s, Format::Json))
}

/// Closed-form descent-contour value of the transformed quadratic kernel,
/// from the tangent matrix of the linear flow. This is the object the
/// trajectory sum constructs; it only exists in closed form while the
/// flow stays elliptic (alpha^2 > beta gamma).
fn descent_branch_oracle(a: &SemiclassicalArgs, z_i: Complex64, w: Complex64) -> Option<Complex64> {
    let disc = a.alpha * a.alpha - a.beta * a.gamma;
    if disc <= 0.0 {
        return None;
    }
    let big = disc.sqrt();
    let (cos, sinc) = ((big * a.t).cos(), (big * a.t).sin() / big);
    let i = Complex64::new(0.0, 1.0);
    let m_vv = Complex64::from(cos) + i * a.alpha * sinc;
    let m_uv = -i * a.gamma * sinc;
    let m_vu = i * a.beta * sinc;
    if m_uv.norm() < 1e-12 {
        return None;
    }
    let pref = (1.0 / m_vv).sqrt() * (-m_vu * z_i * z_i / (2.0 * m_vv)).exp();
    let aa = m_uv / (2.0 * m_vv * w * w);
    let q = Complex64::from(1.0) - z_i / (m_vv * w);
    Some(pref / w * (std::f64::consts::PI / -aa).sqrt() * (q * q / (-4.0 * aa)).exp())
}

fn build_semiclassical_report(
    hamiltonian: &str,
    value: Complex64,
    oracle: Option<Complex64>,
    worst_residual: f64,
    trajectories: Vec<Value>,
    note: Option<&str>,
) -> Value {
    let mut doc = json!({
        "hamiltonian": hamiltonian,
        "trajectory_residual": worst_residual,
        "trajectories": trajectories,
        "value": cx_json(value),
        "oracle_value": oracle.map(cx_json).unwrap_or(Value::Null),
        // Scale-aware residual: the conjugate-side values grow like the
        // descent Gaussian, so an absolute difference would say nothing.
        "error": oracle
            .map(|o| json!((value - o).norm() / o.norm().max(1.0)))
            .unwrap_or(Value::Null),
    });
    if let Some(n) = note {
        doc.as_object_mut()
            .expect("object")
            .insert("note".into(), json!(n));
    }
    doc
}

fn run_verify(a: &VerifyArgs, format: Option<Format>) -> Result<(String, Format, bool), Failure> {
    if format == Some(Format::Csv) {
        return Err(Failure::Usage(
            "verify emits a JSON report; drop --format csv".into(),
        ));
    }
    let reports = run_suite(&a.suite, a.seed)?;
    let all_pass = reports.iter().all(|r| r.pass);
    let doc = json!({
        "suite": a.suite,
        "seed": a.seed,
        "all_pass": all_pass,
        "checks": reports,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data");
    s.push('\n');
    Ok((s, Format::Json, all_pass))
}

// ---------------------------------------------------------------------------
// Dispatch.

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Transform(a) => {
            let (table, default) = run_transform(a)?;
            emit(&cli.output, &table.render(cli.format.unwrap_or(default)))
        }
        Command::Invert(a) => {
            let (table, default) = run_invert(a)?;
            emit(&cli.output, &table.render(cli.format.unwrap_or(default)))
        }
        Command::Inner(a) => {
            let (content, _) = run_inner(a, cli.format)?;
            emit(&cli.output, &content)
        }
        Command::Propagate(a) => {
            let (table, default) = run_propagate(a)?;
            emit(&cli.output, &table.render(cli.format.unwrap_or(default)))
        }
        Command::Semiclassical(a) => {
            let (content, _) = run_semiclassical(a, cli.format)?;
            emit(&cli.output, &content)
        }
        Command::Verify(a) => {
            let (content, _, all_pass) = run_verify(a, cli.format)?;
            emit(&cli.output, &content)?;
            if all_pass {
                Ok(())
            } else {
                Err(Failure::Numeric(
                    "at least one invariant suite failed".into(),
                ))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals_cover_every_shape() {
        let cases = [
            ("2+0i", 2.0, 0.0),
            ("1+0i", 1.0, 0.0),
            ("-1.5-0.25i", -1.5, -0.25),
            ("3", 3.0, 0.0),
            ("-2.5", -2.5, 0.0),
            ("i", 0.0, 1.0),
            ("-i", 0.0, -1.0),
            ("0.5i", 0.0, 0.5),
            ("1e-3+2i", 1e-3, 2.0),
            ("2-1e-3i", 2.0, -1e-3),
            (" 1 + 2i ", 1.0, 2.0),
            ("1+i", 1.0, 1.0),
        ];
        for (s, re, im) in cases {
            let z = parse_complex(s).unwrap();
            assert_eq!((z.re, z.im), (re, im), "literal {s}");
        }
        for bad in ["", "x", "1+2", "1++2i", "e1i"] {
            assert!(parse_complex(bad).is_err(), "literal {bad}");
        }
    }

    #[test]
    fn csv_rendering_is_stable() {
        let t = Table {
            columns: &["a", "b"],
            rows: vec![vec![1.0, 0.25], vec![-0.5, 3e-7]],
        };
        assert_eq!(t.render(Format::Csv), "a,b\n1,0.25\n-0.5,0.0000003\n");
    }
}

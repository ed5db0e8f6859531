//! Command-line front end: exponentials, 2x2 matrix functions, IVP solving,
//! canonical forms and closed-form-vs-series verification.
//!
//! Matrices come either from an inline literal "a,b;c,d" or from a JSON
//! document; flags override document fields. Exit codes: 0 success, 1
//! numerical failure (degenerate spectrum, overflow, verification failure),
//! 2 malformed input (message on stderr, nothing on stdout).

use clap::{Args, Parser, Subcommand};
use matexp_core::canonical::{canonical2, canonical3, eigen2, eigen3, EigenReport, EigenValue};
use matexp_core::matfun2::{coshm2, cosm2, decompose2, expim2, expm2, sinhm2, sinm2, Decomp2};
use matexp_core::matfun3::{decompose3, expm3, Decomp3};
use matexp_core::solver::{closed_form2, closed_form3, ClosedFormSolution, ModeKind};
use matexp_core::{Error, DEFAULT_TOL};
use matexp_linalg::{Mat2, Mat3, Sign, Vec2, Vec3};
use matexp_oracle::{expm_series2, expm_series3, SeriesConfig};
use serde::Deserialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "matexp", about = "Closed-form matrix exponentials of 2x2 and 3x3 systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute e^{tA}
    Exp(ExpArgs),
    /// Matrix functions of a 2x2 matrix: cos, sin, cosh, sinh, expi+, expi-
    Fn(FnArgs),
    /// Solve x'(t) = A x(t), x(0) = x0
    Solve(SolveArgs),
    /// Transition matrix T, canonical form C and eigen report
    Canonical(CanonicalArgs),
    /// Compare the closed form against the power-series reference
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ExpArgs {
    /// Matrix source: inline "a,b;c,d" or a path to a JSON document
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    /// Evaluation time
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Also print the case formula structure
    #[arg(long)]
    closed_form: bool,
    #[arg(long)]
    json: bool,
    /// Classification tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct FnArgs {
    /// One of cos, sin, cosh, sinh, expi+, expi-
    #[arg(long)]
    which: String,
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    /// Initial condition, comma-separated
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Sampling grid start:stop:step
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Print the mode expansion
    #[arg(long)]
    closed_form: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct CanonicalArgs {
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
}

/// Failures sorted by exit code: input problems exit 2, numerical ones exit 1.
enum Failure {
    Input(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Numerical(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numerical(e.to_string())
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    matrix: Option<Vec<Vec<f64>>>,
    x0: Option<Vec<f64>>,
    t: Option<f64>,
    t_grid: Option<GridDoc>,
    tol: Option<f64>,
}

#[derive(Deserialize, Clone, Copy)]
struct GridDoc {
    start: f64,
    stop: f64,
    step: f64,
}

enum Matrix {
    Two(Mat2),
    Three(Mat3),
}

fn parse_entry(s: &str) -> Result<f64, Failure> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| input(format!("cannot parse number {s:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(input(format!("matrix entries must be finite, got {s:?}")))
    }
}

fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<Matrix, Failure> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(input("matrix must be square"));
    }
    for v in rows.iter().flatten() {
        if !v.is_finite() {
            return Err(input("matrix entries must be finite"));
        }
    }
    match n {
        2 => Ok(Matrix::Two(Mat2::from_rows([
            [rows[0][0], rows[0][1]],
            [rows[1][0], rows[1][1]],
        ]))),
        3 => Ok(Matrix::Three(Mat3::from_rows([
            [rows[0][0], rows[0][1], rows[0][2]],
            [rows[1][0], rows[1][1], rows[1][2]],
            [rows[2][0], rows[2][1], rows[2][2]],
        ]))),
        _ => Err(input(format!("matrix must be 2x2 or 3x3, got {n}x{n}"))),
    }
}

fn parse_inline_matrix(src: &str) -> Result<Matrix, Failure> {
    let rows: Vec<Vec<f64>> = src
        .split(';')
        .map(|row| row.split(',').map(parse_entry).collect())
        .collect::<Result<_, _>>()?;
    matrix_from_rows(&rows)
}

/// Load the matrix plus any document-level defaults. A SRC naming an existing
/// file is parsed as JSON; anything else is treated as an inline literal.
fn load_source(src: &str) -> Result<(Matrix, InputDoc), Failure> {
    if std::path::Path::new(src).is_file() {
        let text = std::fs::read_to_string(src)
            .map_err(|e| input(format!("cannot read {src}: {e}")))?;
        let doc: InputDoc = serde_json::from_str(&text)
            .map_err(|e| input(format!("invalid JSON document {src}: {e}")))?;
        let rows = doc
            .matrix
            .as_ref()
            .ok_or_else(|| input(format!("{src} has no \"matrix\" field")))?;
        if let Some(g) = doc.t_grid {
            validate_grid(&g)?;
        }
        let m = matrix_from_rows(rows)?;
        Ok((m, doc))
    } else {
        Ok((parse_inline_matrix(src)?, InputDoc::default()))
    }
}

fn validate_grid(g: &GridDoc) -> Result<(), Failure> {
    if !(g.step > 0.0 && g.start <= g.stop && g.start.is_finite() && g.stop.is_finite()) {
        return Err(input("grid requires step > 0 and start <= stop"));
    }
    Ok(())
}

fn grid_points(g: &GridDoc) -> Vec<f64> {
    let n = ((g.stop - g.start) / g.step).floor() as usize;
    (0..=n).map(|i| g.start + i as f64 * g.step).collect()
}

fn parse_grid(spec: &str) -> Result<GridDoc, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(input(format!("grid must be start:stop:step, got {spec:?}")));
    };
    let g = GridDoc {
        start: parse_entry(start)?,
        stop: parse_entry(stop)?,
        step: parse_entry(step)?,
    };
    validate_grid(&g)?;
    Ok(g)
}

fn parse_vector(spec: &str, dim: usize) -> Result<Vec<f64>, Failure> {
    let v: Vec<f64> = spec
        .split(',')
        .map(parse_entry)
        .collect::<Result<_, _>>()?;
    if v.len() == dim {
        Ok(v)
    } else {
        Err(input(format!("x0 must have {dim} components, got {}", v.len())))
    }
}

fn tol_of(flag: Option<f64>, doc: &InputDoc) -> Result<f64, Failure> {
    let tol = flag.or(doc.tol).unwrap_or(DEFAULT_TOL);
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(input("tol must be positive and finite"))
    }
}

/// Round to 12 significant digits for human-readable output.
fn sig12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let exp = v.abs().log10().floor() as i32;
    let f = 10f64.powi(11 - exp);
    (v * f).round() / f
}

fn fmt_num(v: f64) -> String {
    format!("{}", sig12(v))
}

fn fmt_rows(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    let width = rows
        .iter()
        .flatten()
        .map(|v| fmt_num(*v).len())
        .max()
        .unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>width$}", fmt_num(*v))).collect();
        let _ = writeln!(out, "[ {} ]", cells.join("  "));
    }
    out
}

fn rows2(m: &Mat2) -> Vec<Vec<f64>> {
    m.rows().iter().map(|r| r.to_vec()).collect()
}

fn rows3(m: &Mat3) -> Vec<Vec<f64>> {
    m.rows().iter().map(|r| r.to_vec()).collect()
}

fn decomp_residuals2(d: &Decomp2) -> Value {
    json!({ "identity-defect": d.residual })
}

fn decomp_residuals3(d: &Decomp3) -> Value {
    Value::Object(
        d.residuals
            .iter()
            .map(|(name, r)| (name.to_string(), json!(r)))
            .collect(),
    )
}

fn modes_json(sol: &ClosedFormSolution) -> Value {
    Value::Array(
        sol.modes
            .iter()
            .map(|m| {
                json!({
                    "rho": m.rho,
                    "k": m.k,
                    "omega": m.omega,
                    "kind": match m.kind {
                        ModeKind::Plain => "plain",
                        ModeKind::Cos => "cos",
                        ModeKind::Sin => "sin",
                    },
                    "coeff": m.coeff,
                })
            })
            .collect(),
    )
}

fn eigen_json(report: &EigenReport) -> Value {
    Value::Array(
        report
            .pairs
            .iter()
            .map(|p| {
                let value = match p.value {
                    EigenValue::Real(l) => json!({ "real": l }),
                    EigenValue::ComplexPair { re, im } => json!({ "re": re, "im": im }),
                };
                json!({ "value": value, "basis": p.basis, "source": p.source })
            })
            .collect(),
    )
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run_exp(args: &ExpArgs) -> Result<(), Failure> {
    let (matrix, doc) = load_source(&args.matrix)?;
    let tol = tol_of(args.tol, &doc)?;
    let t = args
        .t
        .or(doc.t)
        .ok_or_else(|| input("exp requires --t (or a \"t\" field in the document)"))?;
    if !t.is_finite() {
        return Err(input("t must be finite"));
    }
    let (case, result, residuals, formula) = match &matrix {
        Matrix::Two(a) => {
            let d = decompose2(a, tol)?;
            let e = expm2(&d, t)?;
            (d.case_name(), rows2(&e), decomp_residuals2(&d), formula2(&d))
        }
        Matrix::Three(a) => {
            let d = decompose3(a, tol)?;
            let e = expm3(&d, t)?;
            (d.case_name(), rows3(&e), decomp_residuals3(&d), formula3(&d))
        }
    };
    if args.json {
        let mut obj = json!({ "case": case, "t": t, "result": result, "residuals": residuals });
        if args.closed_form {
            obj["closed_form"] = json!(formula);
        }
        print_json(&obj);
    } else {
        println!("case: {case}");
        if args.closed_form {
            println!("closed form: {formula}");
        }
        println!("e^(tA) at t = {}:", fmt_num(t));
        print!("{}", fmt_rows(&result));
    }
    Ok(())
}

/// "t", "-t" or "<c>t", so formulas read "exp(t)" rather than "exp(1t)".
fn tmul(c: f64) -> String {
    if c == 1.0 {
        "t".to_string()
    } else if c == -1.0 {
        "-t".to_string()
    } else {
        format!("{}t", fmt_num(c))
    }
}

fn formula2(d: &Decomp2) -> String {
    use matexp_core::spectrum::Spectrum2::*;
    match d.spectrum {
        Repeated { l0 } => format!("exp({}) (I + tN)", tmul(l0)),
        ComplexPair { alpha, omega } => format!(
            "exp({}) [cos({}) I + sin({}) J]",
            tmul(alpha),
            tmul(omega),
            tmul(omega)
        ),
        DistinctReal { alpha, beta, .. } => format!(
            "exp({}) [cosh({}) I + sinh({}) J]",
            tmul(alpha),
            tmul(beta),
            tmul(beta)
        ),
    }
}

fn formula3(d: &Decomp3) -> String {
    use matexp_core::spectrum::Spectrum3::*;
    match d.spectrum {
        Triple { l0 } => format!("exp({}) (I + tN + t^2/2 N^2)", tmul(l0)),
        DoubleSimple { l0, l3 } => format!(
            "exp({}) (I - P + tN) + exp({}) P",
            tmul(l0),
            tmul(l3)
        ),
        ComplexReal { alpha, omega, l3 } => format!(
            "exp({}) [cos({}) (I - P) + sin({}) J] + exp({}) P",
            tmul(alpha),
            tmul(omega),
            tmul(omega),
            tmul(l3)
        ),
        ThreeDistinct { alpha, beta, l3, .. } => format!(
            "exp({}) [cosh({}) (I - P) + sinh({}) J] + exp({}) P",
            tmul(alpha),
            tmul(beta),
            tmul(beta),
            tmul(l3)
        ),
    }
}

fn run_fn(args: &FnArgs) -> Result<(), Failure> {
    let (matrix, doc) = load_source(&args.matrix)?;
    let tol = tol_of(args.tol, &doc)?;
    let Matrix::Two(a) = matrix else {
        return Err(input("fn supports only 2x2 matrices"));
    };
    let d = decompose2(&a, tol)?;
    let (result, im): (Mat2, Option<Mat2>) = match args.which.as_str() {
        "cos" => (cosm2(&d), None),
        "sin" => (sinm2(&d), None),
        "cosh" => (coshm2(&d)?, None),
        "sinh" => (sinhm2(&d)?, None),
        "expi+" => {
            let e = expim2(&d, Sign::Plus);
            (e.re, Some(e.im))
        }
        "expi-" => {
            let e = expim2(&d, Sign::Minus);
            (e.re, Some(e.im))
        }
        other => {
            return Err(input(format!(
                "unknown function {other:?}: expected cos, sin, cosh, sinh, expi+ or expi-"
            )))
        }
    };
    if args.json {
        let result_json = match &im {
            Some(im) => json!({ "re": rows2(&result), "im": rows2(im) }),
            None => json!(rows2(&result)),
        };
        print_json(&json!({
            "case": d.case_name(),
            "result": result_json,
            "residuals": decomp_residuals2(&d),
        }));
    } else {
        println!("case: {}", d.case_name());
        match &im {
            Some(im) => {
                println!("real part:");
                print!("{}", fmt_rows(&rows2(&result)));
                println!("imaginary part:");
                print!("{}", fmt_rows(&rows2(im)));
            }
            None => print!("{}", fmt_rows(&rows2(&result))),
        }
    }
    Ok(())
}

fn run_solve(args: &SolveArgs) -> Result<(), Failure> {
    let (matrix, doc) = load_source(&args.matrix)?;
    let tol = tol_of(args.tol, &doc)?;
    let dim = match matrix {
        Matrix::Two(_) => 2,
        Matrix::Three(_) => 3,
    };
    let x0 = match (&args.x0, &doc.x0) {
        (Some(spec), _) => parse_vector(spec, dim)?,
        (None, Some(v)) if v.len() == dim => v.clone(),
        (None, Some(v)) => {
            return Err(input(format!("x0 must have {dim} components, got {}", v.len())))
        }
        (None, None) => return Err(input("solve requires --x0 (or an \"x0\" document field)")),
    };
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(input("x0 must be finite"));
    }
    let grid = match (&args.grid, doc.t_grid) {
        (Some(spec), _) => Some(parse_grid(spec)?),
        (None, g) => g,
    };
    let t = args.t.or(doc.t);
    let (case, sol) = match &matrix {
        Matrix::Two(a) => {
            let d = decompose2(a, tol)?;
            let sol = closed_form2(a, &Vec2::new(x0[0], x0[1]), tol)?;
            (d.case_name(), sol)
        }
        Matrix::Three(a) => {
            let d = decompose3(a, tol)?;
            let sol = closed_form3(a, &Vec3::new(x0[0], x0[1], x0[2]), tol)?;
            (d.case_name(), sol)
        }
    };

    let points: Vec<f64> = match (t, grid) {
        (Some(t), None) if t.is_finite() => vec![t],
        (Some(_), None) => return Err(input("t must be finite")),
        (None, Some(g)) => grid_points(&g),
        (None, None) => return Err(input("solve requires --t or --grid")),
        (Some(_), Some(_)) => return Err(input("--t and --grid are mutually exclusive")),
    };
    let mut table = Vec::with_capacity(points.len());
    for t in &points {
        table.push((*t, sol.eval(*t)?));
    }

    if args.json {
        let result = if table.len() == 1 {
            json!(table[0].1)
        } else {
            Value::Array(
                table
                    .iter()
                    .map(|(t, x)| json!({ "t": t, "x": x }))
                    .collect(),
            )
        };
        let mut obj = json!({ "case": case, "result": result });
        if args.closed_form {
            obj["modes"] = modes_json(&sol);
        }
        print_json(&obj);
    } else {
        println!("case: {case}");
        if args.closed_form {
            print!("{sol}");
        }
        for (t, x) in &table {
            let cells: Vec<String> = x.iter().map(|v| fmt_num(*v)).collect();
            println!("t = {:<22} x = ({})", fmt_num(*t), cells.join(", "));
        }
    }
    Ok(())
}

fn run_canonical(args: &CanonicalArgs) -> Result<(), Failure> {
    let (matrix, doc) = load_source(&args.matrix)?;
    let tol = tol_of(args.tol, &doc)?;
    let (case, t, c, tinv, residual, eigen) = match &matrix {
        Matrix::Two(a) => {
            let d = decompose2(a, tol)?;
            let pair = canonical2(&d, a)?;
            (
                d.case_name(),
                rows2(&pair.t),
                rows2(&pair.c),
                rows2(&pair.tinv),
                pair.residual,
                eigen2(&d),
            )
        }
        Matrix::Three(a) => {
            let d = decompose3(a, tol)?;
            let pair = canonical3(&d, a)?;
            (
                d.case_name(),
                rows3(&pair.t),
                rows3(&pair.c),
                rows3(&pair.tinv),
                pair.residual,
                eigen3(&d),
            )
        }
    };
    if args.json {
        print_json(&json!({
            "case": case,
            "result": { "t": t, "c": c, "tinv": tinv },
            "residuals": { "reconstruction": residual },
            "eigen": eigen_json(&eigen),
        }));
    } else {
        println!("case: {case}");
        println!("T:");
        print!("{}", fmt_rows(&t));
        println!("C:");
        print!("{}", fmt_rows(&c));
        println!("T^-1:");
        print!("{}", fmt_rows(&tinv));
        println!("reconstruction residual: {:e}", residual);
        for pair in &eigen.pairs {
            let value = match pair.value {
                EigenValue::Real(l) => fmt_num(l),
                EigenValue::ComplexPair { re, im } => {
                    format!("{} +/- {}i", fmt_num(re), fmt_num(im))
                }
            };
            let basis: Vec<String> = pair
                .basis
                .iter()
                .map(|v| {
                    let cells: Vec<String> = v.iter().map(|x| fmt_num(*x)).collect();
                    format!("({})", cells.join(", "))
                })
                .collect();
            println!("lambda = {value} [{}]: {}", pair.source, basis.join(", "));
        }
    }
    Ok(())
}

const VERIFY_THRESHOLD: f64 = 1e-9;

fn run_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let (matrix, doc) = load_source(&args.matrix)?;
    let tol = tol_of(args.tol, &doc)?;
    let t = args
        .t
        .or(doc.t)
        .ok_or_else(|| input("verify requires --t (or a \"t\" field in the document)"))?;
    if !t.is_finite() {
        return Err(input("t must be finite"));
    }
    let cfg = SeriesConfig::default();
    let (case, err) = match &matrix {
        Matrix::Two(a) => {
            let d = decompose2(a, tol)?;
            let closed = expm2(&d, t)?;
            let series = expm_series2(a, t, &cfg)
                .map_err(|e| Failure::Numerical(format!("series reference failed: {e}")))?;
            (
                d.case_name(),
                closed.sub(&series).max_abs() / series.max_abs().max(1.0),
            )
        }
        Matrix::Three(a) => {
            let d = decompose3(a, tol)?;
            let closed = expm3(&d, t)?;
            let series = expm_series3(a, t, &cfg)
                .map_err(|e| Failure::Numerical(format!("series reference failed: {e}")))?;
            (
                d.case_name(),
                closed.sub(&series).max_abs() / series.max_abs().max(1.0),
            )
        }
    };
    let pass = err <= VERIFY_THRESHOLD;
    println!(
        "case: {case}\nmax relative error: {err:e}\n{}",
        if pass { "PASS" } else { "FAIL" }
    );
    if pass {
        Ok(())
    } else {
        Err(Failure::Numerical(format!(
            "closed form deviates from series reference by {err:e}"
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Exp(args) => run_exp(args),
        Command::Fn(args) => run_fn(args),
        Command::Solve(args) => run_solve(args),
        Command::Canonical(args) => run_canonical(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

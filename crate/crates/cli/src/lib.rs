//! `symb`: classify tangents of the symmetrized bidisc, compute the
//! Carathéodory metric and extremal sets, build and verify explicit
//! extremals, and exercise the realization calculus.
//!
//! Every command writes one JSON document (to stdout or `--out`). Exit status
//! is 0 on success, 2 when a verification fails and 1 on input errors, which
//! are reported on stderr as `{"error": {"code", "message"}}`.

pub mod error;
pub mod wire;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use symbidisc_core::caratheodory::{
    classify_with, distance_with, extremal_set_with, grid_angles, metric_with, profile, push_general,
    verify_extremal_on, TangentClass, Tolerances,
};
use symbidisc_core::extremals::{flat_extremal_data, pb_extremal, pb_frame_with, royal_extremal};
use symbidisc_core::function::{Constant, GFunction, Magic};
use symbidisc_core::gdomain::sample_g;
use symbidisc_core::linalg::{op_norm, random_with_norm, CMatrix};
use symbidisc_core::mobius::aligning_map;
use symbidisc_core::realization::{
    lft_eval, lft_identity_residual, pick_check, random_colligation, schur_from_colligation, BlockOperator,
};
use symbidisc_core::{CirclePoint, DiskPoint, SharedFn, SymPoint, Tangent};

pub use error::CliError;
use wire::*;

/// Residual bound for the `lft-check` composition identity.
pub const LFT_TOL: f64 = 1e-11;

#[derive(Debug, Parser)]
#[command(name = "symb", version, about = "Carathéodory extremal problems on the symmetrized bidisc")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, env = "SYMB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Write the result document here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// Solver tolerances: flags override `SYMB_TOL_*` variables, which override defaults.
#[derive(Debug, Clone, Args)]
pub struct TolArgs {
    #[arg(long = "tol-constancy", global = true, env = "SYMB_TOL_CONSTANCY")]
    pub constancy: Option<f64>,
    #[arg(long = "tol-cluster", global = true, env = "SYMB_TOL_CLUSTER")]
    pub cluster: Option<f64>,
    #[arg(long = "tol-angle", global = true, env = "SYMB_TOL_ANGLE")]
    pub angle: Option<f64>,
    #[arg(long = "tol-extremality", global = true, env = "SYMB_TOL_EXTREMALITY")]
    pub extremality: Option<f64>,
    #[arg(long = "tol-separation", global = true, env = "SYMB_TOL_SEPARATION")]
    pub separation: Option<f64>,
    /// Number of ω grid angles.
    #[arg(long = "tol-grid", global = true, env = "SYMB_TOL_GRID")]
    pub grid: Option<usize>,
}

impl TolArgs {
    pub fn resolve(&self) -> Result<Tolerances, CliError> {
        let mut tol = Tolerances::default();
        let slots = [
            ("tol-constancy", self.constancy, &mut tol.constancy),
            ("tol-cluster", self.cluster, &mut tol.cluster),
            ("tol-angle", self.angle, &mut tol.angle),
            ("tol-extremality", self.extremality, &mut tol.extremality),
            ("tol-separation", self.separation, &mut tol.separation),
        ];
        for (name, value, slot) in slots {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::new("invalid_tolerance", format!("--{name} must be positive, got {v}")));
                }
                *slot = v;
            }
        }
        if let Some(g) = self.grid {
            if g < 16 {
                return Err(CliError::new("invalid_tolerance", format!("--tol-grid must be at least 16, got {g}")));
            }
            tol.grid = g;
        }
        Ok(tol)
    }
}

/// Where a command's JSON payload comes from.
#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Payload file; `-` or absent reads stdin.
    #[arg(value_name = "INPUT")]
    pub input: Option<PathBuf>,
    /// Inline payload.
    #[arg(long, value_name = "DOC", conflicts_with = "input")]
    pub json: Option<String>,
}

impl Input {
    fn text(&self) -> Result<String, CliError> {
        if let Some(doc) = &self.json {
            return Ok(doc.clone());
        }
        match &self.input {
            Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
                .map_err(|e| CliError::new("io", format!("cannot read {}: {e}", path.display()))),
            _ => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    pub fn parse<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        Ok(serde_json::from_str(&self.text()?)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Royal, flat, purely balanced or unique-extremal type of a tangent.
    Classify(Input),
    /// Carathéodory metric of a tangent.
    Metric(Input),
    /// Carathéodory distance between two points.
    Distance(Input),
    /// Angles of the extremal magic functions.
    ExtremalSet {
        #[command(flatten)]
        input: Input,
        /// Also write the ω-profile as CSV.
        #[arg(long, value_name = "PATH")]
        profile: Option<PathBuf>,
    },
    /// Build the well-aligned extremal for a royal or purely balanced tangent.
    Construct {
        #[command(flatten)]
        input: Input,
        /// Points to evaluate at: a JSON array of {"s", "p"}, inline or a file.
        #[arg(long, value_name = "POINTS")]
        eval_at: Option<String>,
    },
    /// Check that a function solves the extremal problem for a tangent.
    Verify(Input),
    /// Sample a Schur function from a random colligation.
    SampleSchur {
        /// State dimension.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Norm of the colligation, in (0, 1].
        #[arg(long, default_value_t = 0.9)]
        strictness: f64,
        /// Number of points in the Pick check.
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, value_name = "POINTS")]
        eval_at: Option<String>,
    },
    /// Random sweep of the linear fractional composition identity and
    /// contractivity.
    LftCheck {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

/// The result document and whether every check in it passed.
#[derive(Debug, Clone)]
pub struct Report {
    pub document: serde_json::Value,
    pub pass: bool,
}

impl Report {
    fn ok<T: Serialize>(doc: &T) -> Result<Self, CliError> {
        Self::with(doc, true)
    }

    fn with<T: Serialize>(doc: &T, pass: bool) -> Result<Self, CliError> {
        Ok(Report { document: serde_json::to_value(doc)?, pass })
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            2
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let tol = cli.tol.resolve()?;
    match &cli.command {
        Command::Classify(input) => {
            let t = parse_tangent(&input.parse()?)?;
            Report::ok(&ClassDoc::from(classify_with(&t, &tol)?))
        }
        Command::Metric(input) => {
            let t = parse_tangent(&input.parse()?)?;
            Report::ok(&MetricOut { c: metric_with(&t, &tol)? })
        }
        Command::Distance(input) => {
            let doc: DistanceDoc = input.parse()?;
            Report::ok(&DistanceOut { distance: distance_with(&doc.lambda.parse()?, &doc.mu.parse()?, &tol) })
        }
        Command::ExtremalSet { input, profile: csv } => {
            let t = parse_tangent(&input.parse()?)?;
            let set = extremal_set_with(&t, &tol)?;
            if let Some(path) = csv {
                write_profile(path, &t, tol.grid)?;
            }
            Report::ok(&ExtremalSetOut { kind: set.kind.as_str().to_string(), c: set.cara_value, angles: set.angles })
        }
        Command::Construct { input, eval_at } => construct(&input.parse()?, eval_at.as_deref(), cli.seed, &tol),
        Command::Verify(input) => verify(&input.parse()?, cli.seed, &tol),
        Command::SampleSchur { n, strictness, points, eval_at } => {
            sample_schur(cli.seed, *n, *strictness, *points, eval_at.as_deref())
        }
        Command::LftCheck { trials } => Report::from_lft(lft_check(*trials, cli.seed)?),
    }
}

impl Report {
    fn from_lft(out: LftCheckOut) -> Result<Self, CliError> {
        let pass = out.pass;
        Self::with(&out, pass)
    }
}

/// Serializes the document (pretty, newline-terminated) to `--out` or stdout.
pub fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&report.document)?;
    text.push('\n');
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Header `theta,pushforward_metric`, one row per grid angle, 17 significant digits.
pub fn profile_csv(t: &Tangent, grid: usize) -> Result<String, CliError> {
    let values = profile(t, grid)?;
    let mut out = String::from("theta,pushforward_metric\n");
    for (theta, f) in grid_angles(grid).zip(values) {
        out.push_str(&format!("{theta:.16e},{f:.16e}\n"));
    }
    Ok(out)
}

fn write_profile(path: &PathBuf, t: &Tangent, grid: usize) -> Result<(), CliError> {
    fs::write(path, profile_csv(t, grid)?)
        .map_err(|e| CliError::new("io", format!("cannot write {}: {e}", path.display())))
}

fn eval_points(arg: Option<&str>) -> Result<Vec<SymPoint>, CliError> {
    let Some(arg) = arg else { return Ok(Vec::new()) };
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::new("io", format!("cannot read {arg}: {e}")))?
    };
    let docs: Vec<PointDoc> = serde_json::from_str(&text)?;
    docs.iter().map(PointDoc::parse).collect()
}

fn evaluate(f: &dyn GFunction, points: &[SymPoint]) -> Result<Vec<Evaluation>, CliError> {
    points.iter().map(|l| Ok(Evaluation { lambda: PointDoc::from_point(l), value: pair(f.value(l)?) })).collect()
}

pub fn build_psi(doc: &PsiDoc) -> Result<SharedFn, CliError> {
    match *doc {
        PsiDoc::Colligation(ColligationDoc { seed, n, strictness }) => {
            Ok(schur_from_colligation(random_colligation(seed, n, strictness)?))
        }
        PsiDoc::Constant(v) => {
            let v = complex(v);
            if v.norm() > 1.0 {
                return Err(CliError::new("not_schur", format!("constant psi = {v} has modulus > 1")));
            }
            Ok(Arc::new(Constant(v)))
        }
    }
}

/// Builds the function a [`FunctionDoc`] describes, relative to tangent `t`.
pub fn build_function(doc: &FunctionDoc, t: &Tangent, tol: &Tolerances) -> Result<SharedFn, CliError> {
    Ok(match doc {
        FunctionDoc::Magic { angle } => Arc::new(Magic(CirclePoint::new(*angle))),
        FunctionDoc::Royal { m, psi } => Arc::new(royal_extremal(m.parse()?, build_psi(psi)?)),
        FunctionDoc::PurelyBalanced { r, psi } => Arc::new(pb_extremal(pb_frame_with(t, tol)?, *r, build_psi(psi)?)?),
        FunctionDoc::Colligation { seed, n, strictness } => {
            schur_from_colligation(random_colligation(*seed, *n, *strictness)?)
        }
    })
}

fn construct(doc: &ConstructDoc, eval_at: Option<&str>, seed: u64, tol: &Tolerances) -> Result<Report, CliError> {
    let t = parse_tangent(&doc.tangent)?;
    let class = classify_with(&t, tol)?;
    let cara = metric_with(&t, tol)?;
    let points = eval_points(eval_at)?;
    if doc.r.is_some() && !matches!(class, TangentClass::PurelyBalanced { .. }) {
        return Err(CliError::new("schema_violation", "r applies only to purely balanced tangents"));
    }
    let psi = doc.psi.unwrap_or(PsiDoc::Colligation(ColligationDoc { seed, n: 2, strictness: 0.9 }));
    let function = match class {
        TangentClass::Royal { z, c } => {
            let m = aligning_map(DiskPoint::new(z)?, c)?;
            FunctionDoc::Royal { m: MapDoc::from_map(&m), psi }
        }
        TangentClass::PurelyBalanced { .. } => FunctionDoc::PurelyBalanced { r: doc.r.unwrap_or(0.5), psi },
        TangentClass::Flat { beta, z, c } => {
            let d = flat_extremal_data(DiskPoint::new(beta)?, DiskPoint::new(z)?, c)?;
            let flat = FlatDataDoc {
                beta: pair(d.beta.value()),
                zeta: pair(d.zeta.value()),
                eta: pair(d.eta.value()),
                m: MapDoc::from_map(&d.m),
                target: pair(d.target),
            };
            return Report::ok(&ConstructOut {
                class: class.into(),
                c: cara,
                function: None,
                value_at_base: None,
                derivative_at_base: None,
                flat_data: Some(flat),
                evaluations: Vec::new(),
            });
        }
        TangentClass::UniqueExtremal { .. } => {
            return Err(CliError::new(
                "not_constructible",
                "explicit extremals are built only for royal and purely balanced tangents",
            ))
        }
    };
    let f = build_function(&function, &t, tol)?;
    let pushed = push_general(&f, &t)?;
    Report::ok(&ConstructOut {
        class: class.into(),
        c: cara,
        function: Some(function),
        value_at_base: Some(pair(pushed.base.value())),
        derivative_at_base: Some(pair(pushed.v)),
        flat_data: None,
        evaluations: evaluate(f.as_ref(), &points)?,
    })
}

fn verify(doc: &VerifyDoc, seed: u64, tol: &Tolerances) -> Result<Report, CliError> {
    let t = parse_tangent(&doc.tangent)?;
    let f = build_function(&doc.function, &t, tol)?;
    let cara = metric_with(&t, tol)?;
    let n = doc.samples.unwrap_or(10_000);
    let report = verify_extremal_on(f.as_ref(), &t, cara, &sample_g(seed, n), tol);
    let finite = |x: f64| x.is_finite().then_some(x);
    let out = VerifyOut {
        function: f.label(),
        c: cara,
        pushed_metric: finite(report.pushed),
        relative_gap: finite(report.relative_gap),
        max_modulus: report.max_modulus,
        samples: n,
        pass: report.pass,
    };
    Report::with(&out, report.pass)
}

fn matrix_doc(m: &CMatrix) -> Vec<Vec<Pair>> {
    m.row_iter().map(|r| r.iter().map(|z| pair(*z)).collect()).collect()
}

fn sample_schur(
    seed: u64,
    n: usize,
    strictness: f64,
    points: usize,
    eval_at: Option<&str>,
) -> Result<Report, CliError> {
    let col = random_colligation(seed, n, strictness)?;
    let (abcd, t, unitary) = (matrix_doc(col.abcd()), matrix_doc(col.t()), col.is_unitary());
    let f = schur_from_colligation(col);
    let pick = pick_check(&f, &sample_g(seed, points))?;
    let out = SampleSchurOut {
        seed,
        n,
        strictness,
        abcd,
        t,
        unitary,
        pick_min_eigenvalue: pick.min_eigenvalue,
        pick_pass: pick.pass,
        evaluations: evaluate(f.as_ref(), &eval_points(eval_at)?)?,
    };
    Report::with(&out, pick.pass)
}

/// `trials` random composition instances and as many contraction trials, all
/// blocks of size 1 to 4.
pub fn lft_check(trials: usize, seed: u64) -> Result<LftCheckOut, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sized = |rows: usize, cols: usize, lo: f64, hi: f64, rng: &mut ChaCha8Rng| {
        let norm = rng.gen_range(lo..hi);
        random_with_norm(rng, rows, cols, norm)
    };
    let dims = |rng: &mut ChaCha8Rng| [0; 4].map(|_| rng.gen_range(1..=4usize));
    let mut max_residual: f64 = 0.0;
    for _ in 0..trials {
        let [h, u, g, v] = dims(&mut rng);
        let p = BlockOperator::new(sized(g + v, h + u, 0.1, 0.95, &mut rng), g, h)?;
        let q = BlockOperator::new(sized(g + v, h + u, 0.1, 0.95, &mut rng), g, h)?;
        let x = sized(u, v, 0.1, 1.0, &mut rng);
        let y = sized(u, v, 0.1, 1.0, &mut rng);
        max_residual = max_residual.max(lft_identity_residual(&p, &q, &x, &y)?);
    }
    let (mut max_norm, mut counterexamples): (f64, usize) = (0.0, 0);
    for _ in 0..trials {
        let [h, u, g, v] = dims(&mut rng);
        let p = BlockOperator::new(sized(g + v, h + u, 0.1, 0.999, &mut rng), g, h)?;
        let x = sized(u, v, 0.1, 1.0, &mut rng);
        let n = op_norm(&lft_eval(&p, &x)?);
        max_norm = max_norm.max(n);
        counterexamples += (n >= 1.0) as usize;
    }
    Ok(LftCheckOut {
        trials,
        seed,
        max_residual,
        max_contraction_norm: max_norm,
        counterexamples,
        pass: max_residual < LFT_TOL && counterexamples == 0,
    })
}

//! The `uplab` command line: JSON in, JSON out.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::curves::{gcd_of_system, linear_system, minimal_degree, IrreducibilityTester};
use crate::error::{Error, Result};
use crate::geometry::{coordinatize_on_plane, plane_section};
use crate::harness::{rathmann_pipeline, verify_decreasing_type, verify_theorem3, TrialOptions};
use crate::hilbert::{classify_prop2, is_decreasing_type, profile, Prop2Case};
use crate::io;
use crate::upp::{upp_check, UppMode, DEFAULT_UPP_BUDGET};

#[derive(Debug, Parser)]
#[command(
    name = "uplab",
    version,
    about = "Hilbert functions, uniform position and minimal curves through plane point sets"
)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Progress notes on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert function, h-vector and landmarks of a point set.
    Hilbert {
        #[arg(long)]
        points: PathBuf,
    },
    /// Uniform position check.
    Upp {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Check this many random subsets per size instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest number of subsets an exhaustive check may visit.
        #[arg(long, default_value_t = DEFAULT_UPP_BUDGET)]
        budget: u128,
    },
    /// Minimal degree and a basis of the curves of that degree (or --degree) through the points.
    Minsys {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Absolute irreducibility of a ternary form.
    Irreducible {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        max_conj: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Common factor of the curves of a given degree through the points.
    Gcd {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Intersection of a parametrized curve with a plane.
    Section {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        plane: PathBuf,
        #[arg(long)]
        max_ext: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Section of (t, t^q, t^{q^2}) by a plane through three of its points, q = p^f.
    Rathmann {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        seed: u64,
        /// The three points are taken over F_q extended by this degree.
        #[arg(long, default_value_t = 3)]
        ext_m: usize,
        #[arg(long, default_value_t = 50)]
        members: usize,
    },
    /// Random sections and irreducibility of their minimal curves.
    #[command(name = "verify-theorem3")]
    VerifyTheorem3 {
        #[command(flatten)]
        trial: TrialArgs,
        #[arg(long)]
        members: usize,
    },
    /// Random sections and the shape of their h-vectors.
    VerifyDecreasingType {
        #[command(flatten)]
        trial: TrialArgs,
    },
    /// Case of the degree/count classifier for n points on a curve of minimal degree g.
    Prop2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: usize,
    },
}

#[derive(Debug, Args)]
pub struct TrialArgs {
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub max_ext: usize,
    /// Planes over the curve's field extended by this degree (default: at least 64 elements).
    #[arg(long)]
    pub plane_ext: Option<usize>,
    #[arg(long)]
    pub member_ext: Option<usize>,
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub upp_budget: Option<u128>,
}

/// What a run produced: the report and the exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn to_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

fn error_report(e: &Error) -> String {
    to_string(&json!({"error": e.code(), "detail": e.to_string()}))
}

#[derive(Serialize)]
struct ProfileReport<'a> {
    #[serde(rename = "H")]
    h: &'a [usize],
    delta: &'a [usize],
    a1: usize,
    a2: usize,
    t: usize,
    decreasing_type: bool,
    /// only present when the h-vector breaks the expected shape
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    shape_warnings: &'a [String],
}

#[derive(Serialize)]
struct Prop2Report {
    d: usize,
    h: usize,
    case: Prop2Case,
    requires_upp: bool,
}

fn trial_options(args: &TrialArgs, curve: &crate::geometry::ParamCurve) -> TrialOptions {
    let mut opts = TrialOptions::for_curve(curve);
    if let Some(e) = args.plane_ext {
        opts.plane_ext = e;
    }
    if let Some(e) = args.member_ext {
        opts.member_ext = e;
    }
    if let Some(t) = args.threshold {
        opts.threshold = t;
    }
    if let Some(b) = args.upp_budget {
        opts.upp_budget = b;
    }
    opts
}

fn note(verbose: u8, msg: impl FnOnce() -> String) {
    if verbose > 0 {
        eprintln!("{}", msg());
    }
}

fn execute(cli: &Cli) -> Result<(bool, String)> {
    let v = cli.verbose;
    match &cli.command {
        Command::Hilbert { points } => {
            let x = io::points_from_json(&read_json(points)?)?;
            let p = profile(&x)?;
            let report = ProfileReport {
                h: &p.values,
                delta: &p.deltas,
                a1: p.a1,
                a2: p.a2,
                t: p.t,
                decreasing_type: is_decreasing_type(&p),
                shape_warnings: &p.shape_warnings,
            };
            Ok((true, to_string(&report)))
        }
        Command::Upp {
            points,
            exhaustive: _,
            samples,
            seed,
            budget,
        } => {
            let x = io::points_from_json(&read_json(points)?)?;
            let report = match samples {
                Some(n) => {
                    let seed = seed.ok_or_else(|| Error::Usage("--samples requires --seed".into()))?;
                    upp_check(&x, UppMode::Sampled, *n, seed, *budget)?
                }
                None => upp_check(&x, UppMode::Exhaustive, 0, seed.unwrap_or(0), *budget)?,
            };
            Ok((true, to_string(&report)))
        }
        Command::Minsys { points, degree } => {
            let x = io::points_from_json(&read_json(points)?)?;
            let s = minimal_degree(&x);
            let d = degree.unwrap_or(s);
            let sys = linear_system(&x, d);
            let report = json!({
                "minimal_degree": s,
                "degree": d,
                "dimension": sys.dimension(),
                "basis": sys.basis.iter().map(io::form_to_json).collect::<Vec<_>>(),
            });
            Ok((true, to_string(&report)))
        }
        Command::Irreducible { form, max_conj, seed } => {
            let f = io::form_from_json(&read_json(form)?)?;
            let verdict = IrreducibilityTester::new(f.field(), *max_conj, *seed).test(&f)?;
            Ok((
                true,
                to_string(&json!({"degree": f.degree(), "max_conj": max_conj, "verdict": verdict})),
            ))
        }
        Command::Gcd { points, degree } => {
            let x = io::points_from_json(&read_json(points)?)?;
            let sys = linear_system(&x, *degree);
            let g = gcd_of_system(&sys)?;
            let report = json!({
                "degree": degree,
                "dimension": sys.dimension(),
                "gcd_degree": g.degree(),
                "gcd": io::form_to_json(&g),
            });
            Ok((true, to_string(&report)))
        }
        Command::Section {
            curve,
            plane,
            max_ext,
            seed,
        } => {
            let c = io::curve_from_json(&read_json(curve)?)?;
            let h = io::plane_from_json(&read_json(plane)?)?;
            let sec = plane_section(&c, &h, *max_ext, *seed)?;
            let on_plane = if sec.distinct {
                Some(io::points_to_json(&coordinatize_on_plane(
                    &sec.points,
                    &sec.plane,
                    c.label(),
                )?))
            } else {
                None
            };
            let report = json!({
                "field": io::field_to_json(sec.field()),
                "plane": sec.plane.duals().iter().map(io::element_to_json).collect::<Vec<_>>(),
                "points": sec.points.iter().map(io::point_to_json).collect::<Vec<_>>(),
                "multiplicities": sec.multiplicities,
                "ext_degree": sec.ext_degree,
                "curve_degree": sec.curve_degree,
                "missing_degrees": sec.missing_degrees,
                "complete": sec.complete,
                "reduced": sec.reduced,
                "distinct": sec.distinct,
                "plane_points": on_plane,
            });
            Ok((true, to_string(&report)))
        }
        Command::Rathmann {
            p,
            f,
            verify,
            seed,
            ext_m,
            members,
        } => {
            let r = rathmann_pipeline(*p, *f, *ext_m, *members, *seed, *verify)?;
            note(v, || {
                format!(
                    "q = {}: {} of {} members irreducible",
                    r.q, r.members_irreducible, r.members_tested
                )
            });
            Ok((r.all_pass, to_string(&r)))
        }
        Command::VerifyTheorem3 { trial, members } => {
            let c = io::curve_from_json(&read_json(&trial.curve)?)?;
            let opts = trial_options(trial, &c);
            let r = verify_theorem3(&c, trial.trials, *members, trial.seed, trial.max_ext, &opts)?;
            note(v, || {
                format!("{} of {} trials completed", r.trials_completed, r.trials_requested)
            });
            Ok((r.all_pass, to_string(&r)))
        }
        Command::VerifyDecreasingType { trial } => {
            let c = io::curve_from_json(&read_json(&trial.curve)?)?;
            let opts = trial_options(trial, &c);
            let r = verify_decreasing_type(&c, trial.trials, trial.seed, trial.max_ext, &opts)?;
            note(v, || {
                format!("{} of {} trials completed", r.trials_completed, r.trials_requested)
            });
            Ok((r.all_pass, to_string(&r)))
        }
        Command::Prop2 { n, g } => {
            let r = classify_prop2(*n, *g)?;
            let report = Prop2Report {
                d: r.d,
                h: r.h,
                case: r.case,
                requires_upp: r.requires_upp,
            };
            Ok((true, to_string(&report)))
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("UPLAB_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
    {
        // Fails only if a pool already exists, in which case it stays as is.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `argv` and runs the subcommand. Exit code 0 when every check
/// passed, 1 when a mathematical check failed, 2 on bad input or usage.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    report: e.to_string(),
                };
            }
            let err = Error::Usage(e.to_string().trim().to_string());
            return Outcome {
                code: 2,
                report: error_report(&err),
            };
        }
    };
    configure_threads();
    let (code, report) = match execute(&cli) {
        Ok((pass, report)) => (if pass { 0 } else { 1 }, report),
        Err(e) => (2, error_report(&e)),
    };
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, format!("{report}\n")) {
            let err = Error::Io(format!("{}: {e}", path.display()));
            return Outcome {
                code: 2,
                report: error_report(&err),
            };
        }
        return Outcome {
            code,
            report: String::new(),
        };
    }
    Outcome { code, report }
}

use clap::{Args, Parser, Subcommand, ValueEnum};
use grcyc::cyclic::{enumerate_fixed_points, flow, roots_and_s0};
use grcyc::error::{Error, Result};
use grcyc::io;
use grcyc::moment::v0_matrix;
use grcyc::plucker::{plucker_from_matrix, projective_distance};
use grcyc::positivity::{gk_sample_check, is_tnn, is_tp};
use grcyc::rowmotion::{birational_rowmotion, rowmotion_fixed_check};
use grcyc::schur::{schur_eval, schur_sine_formula, schur_via_plucker, Partition};
use grcyc::subset::SubsetTable;
use grcyc::superpotential::{
    build_l_q, chart_coords, find_critical_points, gradient_residual, var_name,
};
use grcyc::tableau::{promotion, promotion_order};
use grcyc::tol::TolerancePolicy;
use grcyc::twist::{left_twist, right_twist, twist_fixed_candidates};
use grcyc::verify::{minmax_plucker, run_verify_all, RunConfig};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "grcyc",
    about = "Cyclic symmetry on the Grassmannian: fixed points, moment curves, Schur values, superpotential, twist, promotion, rowmotion",
    version
)]
struct Cli {
    /// Absolute and relative comparison tolerance (zero threshold keeps its default)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for all randomized checks
    #[arg(long, global = true, env = "GRCYC_SEED", default_value_t = 0)]
    seed: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    /// Force JSON output (same as --output json)
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct KnArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the cyclic fixed point: sine-product coordinates or a moment-curve matrix
    V0 {
        #[command(flatten)]
        kn: KnArgs,
        /// Sample offset along the curve
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Emit a representative matrix instead of coordinates
        #[arg(long, conflicts_with = "pluckers")]
        matrix: bool,
        /// Emit Plucker coordinates (the default)
        #[arg(long)]
        pluckers: bool,
    },
    /// Enumerate all fixed points of the deformed shift
    FixedPoints {
        #[command(flatten)]
        kn: KnArgs,
        /// Deformation parameter RE[,IM]
        #[arg(long)]
        t: String,
    },
    /// Total-positivity report for a point file
    Tnn {
        #[arg(long)]
        input: PathBuf,
        /// Sampled sign-variation combinations
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Schur evaluations at root sets of the deformed shift
    Schur {
        #[command(flatten)]
        kn: KnArgs,
        #[arg(long)]
        t: String,
        /// Partition like 2,1 (default: every partition in the box)
        #[arg(long)]
        lambda: Option<String>,
        /// Evaluate at every root subset, not only the distinguished one
        #[arg(long)]
        all_root_subsets: bool,
    },
    /// Critical points of the chart superpotential by Newton iteration
    Critical {
        #[command(flatten)]
        kn: KnArgs,
        /// Parameter RE[,IM]
        #[arg(long)]
        q: String,
        /// Extra random Newton starts
        #[arg(long, default_value_t = 32)]
        starts: usize,
    },
    /// Twist a matrix representative (right twist unless --left)
    Twist {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        left: bool,
    },
    /// Fixed points of the shift with inversion-closed root sets (twist-fixed)
    TwistFixed {
        #[command(flatten)]
        kn: KnArgs,
        #[arg(long)]
        t: String,
    },
    /// Promotion of a rectangular semistandard tableau
    Promote {
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long)]
        n: u32,
        /// Emit the whole orbit
        #[arg(long)]
        orbit: bool,
    },
    /// One sweep of birational rowmotion over a labeling file
    Rowmotion {
        #[command(flatten)]
        kn: KnArgs,
        #[arg(long)]
        q: String,
        /// Labels file; omit with --fixed-check to run the cross-check only
        #[arg(long)]
        input: Option<PathBuf>,
        /// Verify critical points are fixed and nothing else is
        #[arg(long)]
        fixed_check: bool,
    },
    /// Contract a point along exp(s sigma)
    Flow {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        time: f64,
    },
    /// Extremes of the fixed point's sine-product coordinates
    Minmax {
        #[command(flatten)]
        kn: KnArgs,
    },
    /// Run every cross-check and report pass/fail per check
    VerifyAll {
        #[command(flatten)]
        kn: KnArgs,
        #[arg(long, default_value = "1")]
        t: String,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    });
}

fn tolerance(cli_tol: Option<f64>) -> TolerancePolicy {
    match cli_tol {
        Some(eps) => TolerancePolicy::new(eps, eps, TolerancePolicy::default().zero_eps),
        None => TolerancePolicy::default(),
    }
}

fn check_cap(k: usize, n: usize) -> Result<()> {
    if k < 1 || k > n || n > 12 {
        return Err(Error::InvalidConfig {
            reason: format!("require 1 <= k <= n <= 12, got k={}, n={}", k, n),
        });
    }
    Ok(())
}

fn read_json(path: &PathBuf) -> Result<Value> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn print_csv(rows: &[Vec<String>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(|f| csv_escape(f)).collect();
        println!("{}", cells.join(","));
    }
}

fn emit(format: OutputFormat, value: &Value, csv_rows: impl FnOnce(&Value) -> Vec<Vec<String>>) {
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(value).expect("serializable"))
        }
        OutputFormat::Csv => print_csv(&csv_rows(value)),
    }
}

/// Generic CSV fallback: flatten one level of structure.
fn generic_csv(value: &Value) -> Vec<Vec<String>> {
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    match value {
        Value::Array(items) => items
            .iter()
            .map(|item| match item {
                Value::Object(map) => map.values().map(scalar).collect(),
                other => vec![scalar(other)],
            })
            .collect(),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| vec![k.clone(), scalar(v)])
            .collect(),
        other => vec![vec![scalar(other)]],
    }
}

fn run(cli: Cli) -> Result<i32> {
    let format = if cli.json { OutputFormat::Json } else { cli.output };
    let tol = tolerance(cli.tol);
    let seed = cli.seed;
    match cli.command {
        Command::V0 { kn, theta, matrix, .. } => {
            check_cap(kn.k, kn.n)?;
            let a = v0_matrix(kn.k, kn.n, theta);
            let value = if matrix {
                io::matrix_to_json(&a)
            } else {
                io::point_to_json(&plucker_from_matrix(&a)?)
            };
            emit(format, &value, generic_csv);
            Ok(0)
        }
        Command::FixedPoints { kn, t } => {
            check_cap(kn.k, kn.n)?;
            let t = io::parse_complex_arg(&t)?;
            let pts = enumerate_fixed_points(kn.k, kn.n, t)?;
            let items: Vec<Value> = pts
                .iter()
                .map(|(s, p)| {
                    let roots: Vec<Value> =
                        s.roots().iter().map(|&z| io::complex_to_value(z)).collect();
                    json!({
                        "roots": roots,
                        "pluckers": io::point_to_json(p)["coords"],
                        "tnn": is_tnn(p, &tol),
                    })
                })
                .collect();
            emit(format, &Value::Array(items), |v| {
                let mut rows = vec![vec!["index".into(), "tnn".into(), "roots".into()]];
                for (i, item) in v.as_array().unwrap().iter().enumerate() {
                    rows.push(vec![
                        i.to_string(),
                        item["tnn"].to_string(),
                        item["roots"].to_string(),
                    ]);
                }
                rows
            });
            Ok(0)
        }
        Command::Tnn { input, samples } => {
            let p = io::point_from_json(&read_json(&input)?)?;
            check_cap(p.k(), p.n())?;
            let gk = match gk_sample_check(&p, samples, seed, &tol) {
                Ok(rep) => serde_json::to_value(&rep)?,
                Err(Error::NotRealizable { residual }) => {
                    json!({"skipped": "not realizable over the reals", "residual": residual})
                }
                Err(e) => return Err(e),
            };
            let value = json!({
                "tnn": is_tnn(&p, &tol),
                "tp": is_tp(&p, &tol),
                "gk": gk,
            });
            emit(format, &value, generic_csv);
            Ok(0)
        }
        Command::Schur {
            kn,
            t,
            lambda,
            all_root_subsets,
        } => {
            check_cap(kn.k, kn.n)?;
            if kn.k >= kn.n {
                return Err(Error::InvalidConfig {
                    reason: "schur requires k < n".into(),
                });
            }
            let t = io::parse_complex_arg(&t)?;
            let lambdas: Vec<Partition> = match lambda {
                Some(spec) => {
                    let parts: std::result::Result<Vec<usize>, _> =
                        spec.split(',').map(|p| p.trim().parse::<usize>()).collect();
                    let parts = parts.map_err(|e| Error::InvalidConfig {
                        reason: format!("bad lambda {:?}: {}", spec, e),
                    })?;
                    vec![Partition::new(&parts, kn.k, kn.n)?]
                }
                None => Partition::all_in_box(kn.k, kn.n),
            };
            let t_positive = t.im.abs() <= 1e-12 * t.norm() && t.re > 0.0;
            let subsets: Vec<grcyc::cyclic::RootSet> = if all_root_subsets || !t_positive {
                enumerate_fixed_points(kn.k, kn.n, t)?
                    .into_iter()
                    .map(|(s, _)| s)
                    .collect()
            } else {
                let (_, s0) = roots_and_s0(kn.k, kn.n, t)?;
                vec![s0.expect("positive real t")]
            };
            let mut rows = Vec::new();
            for s in &subsets {
                for lam in &lambdas {
                    let bialternant = schur_eval(lam, s.roots())?;
                    let plucker_route = schur_via_plucker(lam, s)?;
                    let sine = if t_positive {
                        Some(schur_sine_formula(lam, kn.k, kn.n, t.re))
                    } else {
                        None
                    };
                    let nonneg = bialternant.im.abs() <= 1e-9 && bialternant.re >= -1e-9;
                    rows.push(json!({
                        "lambda": lam.parts(),
                        "roots": s.roots().iter().map(|&z| io::complex_to_value(z)).collect::<Vec<_>>(),
                        "value": io::complex_to_value(bialternant),
                        "plucker_route": io::complex_to_value(plucker_route),
                        "sine_formula": sine,
                        "nonnegative": nonneg,
                    }));
                }
            }
            emit(format, &Value::Array(rows), |v| {
                let mut out = vec![vec![
                    "lambda".into(),
                    "value_re".into(),
                    "value_im".into(),
                    "nonnegative".into(),
                ]];
                for item in v.as_array().unwrap() {
                    out.push(vec![
                        item["lambda"].to_string(),
                        item["value"][0].to_string(),
                        item["value"][1].to_string(),
                        item["nonnegative"].to_string(),
                    ]);
                }
                out
            });
            Ok(0)
        }
        Command::Critical { kn, q, starts } => {
            check_cap(kn.k, kn.n)?;
            if kn.k >= kn.n {
                return Err(Error::InvalidConfig {
                    reason: "critical requires k < n".into(),
                });
            }
            let q = io::parse_complex_arg(&q)?;
            let search = find_critical_points(kn.k, kn.n, q, starts, seed)?;
            let grad = build_l_q(kn.k, kn.n).gradient();
            // match each found point to a fixed point's chart image
            let fixed = enumerate_fixed_points(kn.k, kn.n, q)?;
            let table = SubsetTable::new(kn.k, kn.n);
            let charts: Vec<(String, Option<grcyc::superpotential::TorusPoint>)> = fixed
                .iter()
                .enumerate()
                .map(|(i, (_, p))| (table.get(i).to_string(), chart_coords(p).ok()))
                .collect();
            let width = kn.n - kn.k;
            let points: Vec<Value> = search
                .points
                .iter()
                .map(|x| {
                    let coords: Vec<Value> = x
                        .values()
                        .iter()
                        .enumerate()
                        .map(|(i, &z)| json!({"var": var_name(i, width), "value": io::complex_to_value(z)}))
                        .collect();
                    let matched = charts
                        .iter()
                        .find(|(_, c)| {
                            c.as_ref()
                                .map(|c| c.max_distance(x) < 1e-6)
                                .unwrap_or(false)
                        })
                        .map(|(roots, _)| roots.clone());
                    json!({
                        "coords": coords,
                        "gradient_residual": gradient_residual(&grad, x, q),
                        "matched_root_subset": matched,
                    })
                })
                .collect();
            let value = json!({
                "points": points,
                "chart_starts": search.chart_starts,
                "random_starts": search.random_starts,
                "diverged_starts": search.diverged_starts,
            });
            emit(format, &value, generic_csv);
            Ok(0)
        }
        Command::Twist { input, left } => {
            let a = io::matrix_from_json(&read_json(&input)?)?;
            check_cap(a.k(), a.n())?;
            let out = if left { left_twist(&a)? } else { right_twist(&a)? };
            emit(format, &io::matrix_to_json(&out), generic_csv);
            Ok(0)
        }
        Command::TwistFixed { kn, t } => {
            check_cap(kn.k, kn.n)?;
            let t = io::parse_complex_arg(&t)?;
            let cands = twist_fixed_candidates(kn.k, kn.n, t)?;
            let items: Vec<Value> = cands
                .iter()
                .map(|(s, p)| {
                    json!({
                        "roots": s.roots().iter().map(|&z| io::complex_to_value(z)).collect::<Vec<_>>(),
                        "pluckers": io::point_to_json(p)["coords"],
                        "tnn": is_tnn(p, &tol),
                    })
                })
                .collect();
            emit(format, &Value::Array(items), generic_csv);
            Ok(0)
        }
        Command::Promote { tableau, n, orbit } => {
            let (t, file_n) = io::tableau_from_json(&read_json(&tableau)?)?;
            if file_n != n {
                return Err(Error::InvalidConfig {
                    reason: format!("file declares n={}, flag says n={}", file_n, n),
                });
            }
            if orbit {
                let order = promotion_order(&t, n)?;
                let mut orbit_items = vec![io::tableau_to_json(&t, n)];
                let mut cur = t;
                for _ in 0..order {
                    cur = promotion(&cur, n)?;
                    orbit_items.push(io::tableau_to_json(&cur, n));
                }
                let value = json!({"order": order, "orbit": orbit_items});
                emit(format, &value, generic_csv);
            } else {
                let value = io::tableau_to_json(&promotion(&t, n)?, n);
                emit(format, &value, generic_csv);
            }
            Ok(0)
        }
        Command::Rowmotion {
            kn,
            q,
            input,
            fixed_check,
        } => {
            check_cap(kn.k, kn.n)?;
            if kn.k >= kn.n {
                return Err(Error::InvalidConfig {
                    reason: "rowmotion requires k < n".into(),
                });
            }
            let q = io::parse_complex_arg(&q)?;
            let mut value = json!({});
            if let Some(path) = input {
                let labels = io::labels_from_json(&read_json(&path)?, kn.k, kn.n, q)?;
                let moved = birational_rowmotion(&labels)?;
                value["labels"] = io::labels_to_json(&moved);
            }
            if fixed_check {
                let rep = rowmotion_fixed_check(kn.k, kn.n, q, 50, seed)?;
                value["fixed_check"] = serde_json::to_value(&rep)?;
            }
            if value.as_object().map_or(true, |m| m.is_empty()) {
                return Err(Error::InvalidConfig {
                    reason: "provide --input labels.json and/or --fixed-check".into(),
                });
            }
            emit(format, &value, generic_csv);
            Ok(0)
        }
        Command::Flow { input, time } => {
            if time < 0.0 {
                return Err(Error::InvalidConfig {
                    reason: "flow time must be nonnegative".into(),
                });
            }
            let p = io::point_from_json(&read_json(&input)?)?;
            check_cap(p.k(), p.n())?;
            let moved = flow(&p, time)?;
            let mut value = io::point_to_json(&moved);
            if p.k() < p.n() {
                let v0 = grcyc::cyclic::tnn_fixed_point(p.k(), p.n(), 1.0)?;
                value["distance_to_fixed_point"] = json!(projective_distance(&moved, &v0));
            }
            emit(format, &value, generic_csv);
            Ok(0)
        }
        Command::Minmax { kn } => {
            check_cap(kn.k, kn.n)?;
            let rep = minmax_plucker(kn.k, kn.n)?;
            let value = serde_json::to_value(&rep)?;
            emit(format, &value, |v| {
                let mut rows = vec![vec!["value".into(), "orbit".into()]];
                for item in v["orbits"].as_array().unwrap() {
                    rows.push(vec![
                        item[0].to_string(),
                        item[1]
                            .as_array()
                            .unwrap()
                            .iter()
                            .map(|s| s.as_str().unwrap())
                            .collect::<Vec<_>>()
                            .join(" "),
                    ]);
                }
                rows
            });
            Ok(0)
        }
        Command::VerifyAll { kn, t } => {
            let t = io::parse_complex_arg(&t)?;
            let cfg = RunConfig {
                k: kn.k,
                n: kn.n,
                t,
                seed,
                tol,
            };
            let report = run_verify_all(&cfg)?;
            let value = serde_json::to_value(&report)?;
            emit(format, &value, |v| {
                let mut rows = vec![vec!["check".into(), "pass".into(), "residual".into()]];
                for c in v["checks"].as_array().unwrap() {
                    rows.push(vec![
                        c["name"].as_str().unwrap().to_string(),
                        c["pass"].to_string(),
                        c["residual"].to_string(),
                    ]);
                }
                rows
            });
            Ok(if report.all_pass { 0 } else { 1 })
        }
    }
}

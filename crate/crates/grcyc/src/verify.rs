//! The cross-validation driver: every construction in the library is checked
//! against an independent route, and the outcomes are gathered into one
//! deterministic report.

use crate::cmatrix::{cr, C64, CMat};
use crate::cyclic::{enumerate_fixed_points, flow, sigma_t_on_plucker, tnn_fixed_point,
    tnn_formula_vector, roots_and_s0};
use crate::error::{Error, Result};
use crate::moment::{f_k, trig_vandermonde_det, v0_matrix, v0_plucker_formula, v0_plucker_vector};
use crate::peterson::{gamma_embed, toeplitz_u, q_value, ToeplitzPoint};
use crate::plucker::{plucker_from_matrix, projective_distance, MatrixKxN, PluckerVector};
use crate::positivity::is_tnn;
use crate::rowmotion::rowmotion_fixed_check;
use crate::schur::{modulus_inequality_check, schur_eval, schur_sine_formula, schur_via_plucker,
    Partition};
use crate::subset::{binomial, SubsetTable};
use crate::superpotential::{build_l_q, chart_coords, f_q_eval, l_q_eval, verify_correspondence};
use crate::tableau::{promotion, Tableau};
use crate::tol::TolerancePolicy;
use crate::twist::{periodicity_check, right_twist, twist_fixed_candidates};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

/// Configuration for the driver and the CLI: desk scale is capped at n <= 12.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub k: usize,
    pub n: usize,
    pub t: C64,
    pub seed: u64,
    pub tol: TolerancePolicy,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 || self.k > self.n || self.n > 12 {
            return Err(Error::InvalidConfig {
                reason: format!(
                    "require 1 <= k <= n <= 12, got k={}, n={}",
                    self.k, self.n
                ),
            });
        }
        if self.t.norm() == 0.0 {
            return Err(Error::InvalidConfig {
                reason: "t must be nonzero".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub details: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub k: usize,
    pub n: usize,
    pub t: [f64; 2],
    pub seed: u64,
    pub all_pass: bool,
    pub checks: Vec<CheckResult>,
}

fn random_generic_point(
    k: usize,
    n: usize,
    rng: &mut ChaCha8Rng,
    floor: f64,
) -> PluckerVector {
    loop {
        let rows: Vec<Vec<C64>> = (0..k)
            .map(|_| {
                (0..n)
                    .map(|_| C64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
                    .collect()
            })
            .collect();
        let m = MatrixKxN::from_rows(rows).expect("random matrix shape");
        if let Ok(p) = plucker_from_matrix(&m) {
            if p.coords().iter().all(|z| z.norm() > floor) {
                return p;
            }
        }
    }
}

/// Random totally positive point from sorted moment-curve samples.
pub fn random_tp_point(k: usize, n: usize, rng: &mut ChaCha8Rng) -> PluckerVector {
    loop {
        let mut thetas: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 6.2).collect();
        thetas.sort_by(f64::total_cmp);
        if thetas.windows(2).any(|w| w[1] - w[0] < 1e-3) {
            continue;
        }
        let cols: Vec<Vec<f64>> = thetas.iter().map(|&t| f_k(k, t)).collect();
        let a = MatrixKxN::new(k, n, CMat::from_fn(k, n, |i, j| cr(cols[j][i])))
            .expect("moment matrix shape");
        if let Ok(p) = plucker_from_matrix(&a) {
            return p;
        }
    }
}

/// Runs the full cross-check list for one configuration. The report layout
/// and order are fixed; identical configurations (including the seed)
/// produce byte-identical JSON.
pub fn run_verify_all(cfg: &RunConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let (k, n, t) = (cfg.k, cfg.n, cfg.t);
    let t_is_positive_real = t.im.abs() <= 1e-12 * t.norm() && t.re > 0.0;
    let mut checks: Vec<CheckResult> = Vec::new();

    // fixed points: count, fixedness, TNN uniqueness, sine formula
    {
        let pts = enumerate_fixed_points(k, n, t)?;
        let expected = binomial(n, k);
        let mut max_resid = 0.0f64;
        for (_, p) in &pts {
            max_resid = max_resid.max(projective_distance(&sigma_t_on_plucker(p, t), p));
        }
        let tnn_count = pts.iter().filter(|(_, p)| is_tnn(p, &cfg.tol)).count();
        let expected_tnn = if t_is_positive_real { 1 } else { 0 };
        let mut formula_resid = 0.0f64;
        if t_is_positive_real {
            let direct = tnn_fixed_point(k, n, t.re)?;
            let formula = PluckerVector::from_raw(k, n, tnn_formula_vector(k, n, t.re))?;
            formula_resid = projective_distance(&direct, &formula);
        }
        let pass = pts.len() == expected
            && max_resid < 1e-9
            && tnn_count == expected_tnn
            && formula_resid < 1e-9;
        checks.push(CheckResult {
            name: "fixed_points".into(),
            pass,
            residual: max_resid.max(formula_resid),
            details: json!({
                "count": pts.len(),
                "expected": expected,
                "tnn_count": tnn_count,
                "expected_tnn": expected_tnn,
            }),
        });
    }

    // moment-curve minors against the sine-product formula
    {
        let mut worst = 0.0f64;
        if k < n {
            for theta in [0.0, 0.9, -2.3] {
                let p = plucker_from_matrix(&v0_matrix(k, n, theta))?;
                let q = PluckerVector::from_raw(k, n, v0_plucker_vector(k, n))?;
                worst = worst.max(projective_distance(&p, &q));
            }
        }
        checks.push(CheckResult {
            name: "moment_formula".into(),
            pass: worst < 1e-9,
            residual: worst,
            details: json!({"thetas_checked": 3}),
        });
    }

    // trigonometric Vandermonde determinant, formula vs direct
    {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x11);
        let mut checked = 0usize;
        for kk in 1..=6usize {
            for _ in 0..20 {
                let thetas: Vec<f64> = (0..kk).map(|_| rng.gen::<f64>() * 12.0 - 6.0).collect();
                trig_vandermonde_det(&thetas); // panics on disagreement
                checked += 1;
            }
        }
        checks.push(CheckResult {
            name: "trig_vandermonde".into(),
            pass: true,
            residual: 0.0,
            details: json!({"samples": checked}),
        });
    }

    // Toeplitz embedding: gamma(u(S)) = V_S over the full fixed-point list
    {
        let mut worst = 0.0f64;
        let mut q_resid = 0.0f64;
        for (s, p) in enumerate_fixed_points(k, n, t)? {
            let u = toeplitz_u(k, n, s.roots())?;
            worst = worst.max(projective_distance(&gamma_embed(&u)?, &p));
            q_resid = q_resid.max((q_value(&u) - t).norm());
        }
        // gamma(I_n) is supported on {1..k} only
        let gid = gamma_embed(&ToeplitzPoint::identity(k, n))?;
        let single_support = gid.pivot() == 0
            && gid
                .coords()
                .iter()
                .skip(1)
                .all(|z| z.norm() < 1e-12);
        checks.push(CheckResult {
            name: "peterson_embedding".into(),
            pass: worst < 1e-8 && q_resid < 1e-10 && single_support,
            residual: worst,
            details: json!({"q_residual": q_resid, "identity_single_support": single_support}),
        });
    }

    // Schur values: three routes, positivity classification, modulus bound
    if k < n {
        let lambdas = Partition::all_in_box(k, n);
        let mut worst = 0.0f64;
        let mut classified_ok = true;
        if t_is_positive_real {
            let (_, s0) = roots_and_s0(k, n, t)?;
            let s0 = s0.expect("positive real t");
            for lam in &lambdas {
                let a = schur_eval(lam, s0.roots())?;
                let b = schur_via_plucker(lam, &s0)?;
                let c = schur_sine_formula(lam, k, n, t.re);
                let scale = a.norm().max(1.0);
                worst = worst.max((a - b).norm() / scale);
                worst = worst.max((a - cr(c)).norm() / scale);
            }
            let (_, s0) = roots_and_s0(k, n, t)?;
            let s0_roots = s0.expect("positive real t").roots().to_vec();
            for (s, _) in enumerate_fixed_points(k, n, t)? {
                let is_s0 = s
                    .roots()
                    .iter()
                    .zip(&s0_roots)
                    .all(|(a, b)| (a - b).norm() < 1e-9);
                let all_nonneg = lambdas.iter().all(|lam| {
                    schur_eval(lam, s.roots())
                        .map(|v| v.im.abs() <= 1e-9 && v.re >= -1e-9)
                        .unwrap_or(false)
                });
                if all_nonneg != is_s0 {
                    classified_ok = false;
                }
            }
        } else {
            // dual-route agreement still holds for complex t
            for (s, _) in enumerate_fixed_points(k, n, t)? {
                for lam in &lambdas {
                    let a = schur_eval(lam, s.roots())?;
                    let b = schur_via_plucker(lam, &s)?;
                    worst = worst.max((a - b).norm() / a.norm().max(1.0));
                }
            }
        }
        // modulus inequality on the unit-modulus root sets (t normalized)
        let t_unit = t / cr(t.norm());
        let mut modulus_ok = true;
        for (s, _) in enumerate_fixed_points(k, n, t_unit)? {
            for lam in &lambdas {
                let rep = modulus_inequality_check(lam, s.roots(), n)?;
                if !rep.holds {
                    modulus_ok = false;
                }
            }
        }
        checks.push(CheckResult {
            name: "schur_evaluations".into(),
            pass: worst < 1e-8 && classified_ok && modulus_ok,
            residual: worst,
            details: json!({
                "partitions": lambdas.len(),
                "positivity_classification": classified_ok,
                "modulus_inequality": modulus_ok,
            }),
        });
    }

    // superpotential: pullback identity and critical-point correspondence
    if k < n {
        let l = build_l_q(k, n);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x22);
        let mut worst = 0.0f64;
        let mut tested = 0usize;
        while tested < 20 {
            let p = random_generic_point(k, n, &mut rng, 1e-3);
            let x = match chart_coords(&p) {
                Ok(x) => x,
                Err(_) => continue,
            };
            let lhs = l_q_eval(&l, &x, t);
            let rhs = match f_q_eval(&p, t) {
                Ok(v) => v,
                Err(_) => continue,
            };
            worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0));
            tested += 1;
        }
        let corr = verify_correspondence(k, n, t)?;
        checks.push(CheckResult {
            name: "superpotential".into(),
            pass: worst < 1e-8 && corr.pass,
            residual: worst.max(corr.max_gradient_residual_at_fixed),
            details: serde_json::to_value(&corr)?,
        });
    }

    // twist: worked example, periodicity modulo torus, fixed candidates
    {
        let a = MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(1.0), cr(0.0), cr(-4.0)],
            vec![cr(0.0), cr(2.0), cr(1.0), cr(3.0)],
        ])?;
        let tw = right_twist(&a)?;
        let expected = [[1.0, 1.0, 0.75, 0.0], [-0.5, 0.0, 1.0, 1.0 / 3.0]];
        let mut example_resid = 0.0f64;
        for i in 0..2 {
            for j in 0..4 {
                example_resid = example_resid.max((tw.mat()[(i, j)] - cr(expected[i][j])).norm());
            }
        }
        let mut periodic_ok = true;
        if k < n {
            let loose = TolerancePolicy::new(1e-6, 1e-6, cfg.tol.zero_eps);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x33);
            for _ in 0..5 {
                let p = random_generic_point(k, n, &mut rng, 1e-2);
                if !periodicity_check(&p, &loose)? {
                    periodic_ok = false;
                }
            }
        }
        let candidates = twist_fixed_candidates(k, n, t)?;
        checks.push(CheckResult {
            name: "twist".into(),
            pass: example_resid < 1e-12 && periodic_ok,
            residual: example_resid,
            details: json!({
                "periodicity": periodic_ok,
                "inversion_closed_candidates": candidates.len(),
            }),
        });
    }

    // promotion: the worked two-row example and its full orbit
    {
        let start = Tableau::new(vec![vec![1, 1, 2, 3], vec![2, 3, 4, 5]], 5)?;
        let once = promotion(&start, 5)?;
        let expected = Tableau::new(vec![vec![1, 1, 2, 4], vec![2, 3, 5, 5]], 5)?;
        let mut orbit_ok = true;
        let mut cur = start.clone();
        for _ in 0..5 {
            cur = promotion(&cur, 5)?;
            if cur.validate(5).is_err() {
                orbit_ok = false;
            }
        }
        let pass = once == expected && cur == start && orbit_ok;
        checks.push(CheckResult {
            name: "promotion".into(),
            pass,
            residual: if pass { 0.0 } else { 1.0 },
            details: json!({"orbit_length_divides": 5}),
        });
    }

    // rowmotion: critical points are fixed, nothing else is found
    if k < n {
        let rep = rowmotion_fixed_check(k, n, t, 20, cfg.seed ^ 0x44)?;
        checks.push(CheckResult {
            name: "rowmotion".into(),
            pass: rep.pass,
            residual: rep.max_fix_residual,
            details: serde_json::to_value(&rep)?,
        });
    }

    // flow: contraction of a random TP point onto the cyclic fixed point
    if k < n {
        let v0 = tnn_fixed_point(k, n, 1.0)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x55);
        let p = random_tp_point(k, n, &mut rng);
        let mut dists = Vec::new();
        for step in 0..=8 {
            let s = 5.0 * step as f64;
            dists.push(projective_distance(&flow(&p, s)?, &v0));
        }
        let monotone = dists.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        let final_dist = *dists.last().expect("nonempty");
        checks.push(CheckResult {
            name: "flow_contraction".into(),
            pass: monotone && final_dist < 1e-6,
            residual: final_dist,
            details: json!({"distances": dists, "monotone": monotone}),
        });
    }

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        k,
        n,
        t: [t.re, t.im],
        seed: cfg.seed,
        all_pass,
        checks,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MinMaxReport {
    pub k: usize,
    pub n: usize,
    pub min_value: f64,
    pub min_subsets: Vec<String>,
    pub max_value: f64,
    pub max_subsets: Vec<String>,
    /// All values grouped into dihedral orbits: (value, orbit members).
    pub orbits: Vec<(f64, Vec<String>)>,
}

/// Exploratory extremes of the sine-product coordinates of the cyclic fixed
/// point; no asserted answer, just the table.
pub fn minmax_plucker(k: usize, n: usize) -> Result<MinMaxReport> {
    if k >= n {
        return Err(Error::InvalidConfig {
            reason: "minmax requires k < n".into(),
        });
    }
    let table = SubsetTable::new(k, n);
    let values: Vec<f64> = table.iter().map(|s| v0_plucker_formula(k, n, s)).collect();
    let min_value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max_value = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + b.abs());
    let min_subsets: Vec<String> = table
        .iter()
        .zip(&values)
        .filter(|(_, &v)| close(v, min_value))
        .map(|(s, _)| s.to_string())
        .collect();
    let max_subsets: Vec<String> = table
        .iter()
        .zip(&values)
        .filter(|(_, &v)| close(v, max_value))
        .map(|(s, _)| s.to_string())
        .collect();
    // group the subsets into dihedral orbits, reported by ascending value
    let mut seen = vec![false; table.len()];
    let mut orbits: Vec<(f64, Vec<String>)> = Vec::new();
    for i in 0..table.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut frontier = vec![table.get(i).clone()];
        while let Some(s) = frontier.pop() {
            let idx = table.position(&s);
            if seen[idx] {
                continue;
            }
            seen[idx] = true;
            orbit.push(idx);
            frontier.push(s.cyclic_shift(1));
            frontier.push(s.reflect());
        }
        orbit.sort_unstable();
        orbits.push((
            values[orbit[0]],
            orbit.iter().map(|&j| table.get(j).to_string()).collect(),
        ));
    }
    orbits.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(MinMaxReport {
        k,
        n,
        min_value,
        min_subsets,
        max_value,
        max_subsets,
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_all_2_4_passes() {
        let cfg = RunConfig {
            k: 2,
            n: 4,
            t: cr(1.0),
            seed: 7,
            tol: TolerancePolicy::default(),
        };
        let rep = run_verify_all(&cfg).unwrap();
        assert!(rep.all_pass, "{}", serde_json::to_string_pretty(&rep).unwrap());
        let fixed = rep.checks.iter().find(|c| c.name == "fixed_points").unwrap();
        assert_eq!(fixed.details["count"], 6);
        let sup = rep.checks.iter().find(|c| c.name == "superpotential").unwrap();
        assert_eq!(sup.details["newton_critical_points"], 4);
    }

    #[test]
    fn verify_all_1_2_passes() {
        let cfg = RunConfig {
            k: 1,
            n: 2,
            t: cr(1.0),
            seed: 1,
            tol: TolerancePolicy::default(),
        };
        let rep = run_verify_all(&cfg).unwrap();
        assert!(rep.all_pass);
        let fixed = rep.checks.iter().find(|c| c.name == "fixed_points").unwrap();
        assert_eq!(fixed.details["count"], 2);
    }

    #[test]
    fn verify_all_rejects_oversized_config() {
        let cfg = RunConfig {
            k: 2,
            n: 13,
            t: cr(1.0),
            seed: 1,
            tol: TolerancePolicy::default(),
        };
        assert!(matches!(
            run_verify_all(&cfg),
            Err(Error::InvalidConfig { .. })
        ));
    }

    #[test]
    fn verify_all_is_deterministic() {
        let cfg = RunConfig {
            k: 2,
            n: 5,
            t: cr(2.0),
            seed: 42,
            tol: TolerancePolicy::default(),
        };
        let a = serde_json::to_string(&run_verify_all(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_verify_all(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn minmax_2_4() {
        let rep = minmax_plucker(2, 4).unwrap();
        assert!((rep.min_value - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((rep.max_value - 1.0).abs() < 1e-12);
        assert_eq!(rep.min_subsets, ["1,2", "1,4", "2,3", "3,4"]);
        assert_eq!(rep.max_subsets, ["1,3", "2,4"]);
    }

    #[test]
    fn minmax_1_n_is_flat() {
        let rep = minmax_plucker(1, 5).unwrap();
        assert_eq!(rep.min_value, rep.max_value);
        assert_eq!(rep.min_subsets.len(), 5);
    }

    #[test]
    fn minmax_3_6_orbit_table() {
        let rep = minmax_plucker(3, 6).unwrap();
        let total: usize = rep.orbits.iter().map(|(_, o)| o.len()).sum();
        assert_eq!(total, 20);
        // minimum sits on the cyclic-interval orbit of {1,2,3}
        assert!(rep.min_subsets.contains(&"1,2,3".to_string()));
    }
}

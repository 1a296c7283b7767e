use crate::cmatrix::{cr, C64, CMat};
use crate::cyclic::enumerate_fixed_points;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPolynomial, Term};
use crate::plucker::PluckerVector;
use crate::subset::{Subset, SubsetTable};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A point of the chart torus: one nonzero value per poset cell (r,s) in
/// [k] x [n-k], r-major order.
#[derive(Debug, Clone)]
pub struct TorusPoint {
    k: usize,
    width: usize,
    values: Vec<C64>,
}

impl TorusPoint {
    pub fn new(k: usize, width: usize, values: Vec<C64>) -> Result<Self> {
        if values.len() != k * width {
            return Err(Error::InvalidConfig {
                reason: format!(
                    "expected {} chart values, got {}",
                    k * width,
                    values.len()
                ),
            });
        }
        if values.iter().any(|z| z.norm() <= 1e-10) {
            return Err(Error::InvalidConfig {
                reason: "chart values must be bounded away from zero".into(),
            });
        }
        Ok(Self { k, width, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// 1-based cell access.
    pub fn get(&self, r: usize, s: usize) -> C64 {
        self.values[(r - 1) * self.width + (s - 1)]
    }

    pub fn max_distance(&self, other: &TorusPoint) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Variable index of cell (r,s), 1-based, r-major.
pub fn var_index(r: usize, s: usize, width: usize) -> usize {
    (r - 1) * width + (s - 1)
}

pub fn var_name(idx: usize, width: usize) -> String {
    format!("x[{},{}]", idx / width + 1, idx % width + 1)
}

/// Superpotential evaluated on Plucker coordinates:
/// sum_{i != n-k} D_{i+1,...,i+k-1,i+k+1} / D_{i+1,...,i+k}
///   + q D_{n-k+1,...,n-1,1} / D_{n-k+1,...,n}, indices mod n.
pub fn f_q_eval(p: &PluckerVector, q: C64) -> Result<C64> {
    let (k, n) = (p.k(), p.n());
    let table = SubsetTable::new(k, n);
    let coord = |members: Vec<usize>| -> C64 {
        let s = Subset::from_unsorted(n, members).expect("valid index set");
        p.coords()[table.position(&s)]
    };
    let md = |x: usize| -> usize { (x - 1) % n + 1 };
    let mut acc = cr(0.0);
    for i in 1..=n {
        let denom_members: Vec<usize> = (1..=k).map(|d| md(i + d)).collect();
        let denom = coord(denom_members.clone());
        if denom.norm() <= 1e-10 {
            return Err(Error::OutsidePiCircle {
                subset: Subset::from_unsorted(n, denom_members)
                    .expect("valid")
                    .to_string(),
            });
        }
        let mut numer_members: Vec<usize> = (1..=k - 1).map(|d| md(i + d)).collect();
        numer_members.push(md(i + k + 1));
        let numer = coord(numer_members);
        let term = numer / denom;
        if i == n - k {
            acc += q * term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

/// The Laurent superpotential on the chart torus: the poset [k] x [n-k] with
/// an added minimum labeled 1 and maximum labeled q contributes one term
/// label(v)/label(u) per covering u < v.
pub fn build_l_q(k: usize, n: usize) -> LaurentPolynomial {
    assert!(k >= 1 && k < n, "need 1 <= k < n");
    let width = n - k;
    let num_x = k * width;
    let mono = |up: Option<(usize, usize)>, down: Option<(usize, usize)>| -> Term {
        let mut exps = vec![0i32; num_x + 1];
        if let Some((r, s)) = up {
            exps[var_index(r, s, width)] += 1;
        } else {
            exps[num_x] += 1; // the maximum carries label q
        }
        if let Some((r, s)) = down {
            exps[var_index(r, s, width)] -= 1;
        }
        Term {
            coeff: cr(1.0),
            exps,
        }
    };
    let mut terms = Vec::new();
    terms.push(mono(Some((1, 1)), None)); // minimum (label 1) -> (1,1)
    for r in 1..=k {
        for s in 1..=width {
            if r < k {
                terms.push(mono(Some((r + 1, s)), Some((r, s))));
            }
            if s < width {
                terms.push(mono(Some((r, s + 1)), Some((r, s))));
            }
        }
    }
    terms.push(mono(None, Some((k, width)))); // (k, n-k) -> maximum (label q)
    LaurentPolynomial::from_terms(num_x, terms)
}

pub fn l_q_eval(l: &LaurentPolynomial, x: &TorusPoint, q: C64) -> C64 {
    l.eval(x.values(), q)
}

/// Chart coordinates of a point:
/// x_{r,s} = D_{[1,k-r] u [k-r+s+1,k+s]} / D_{[1,k-r+1] u [k-r+s+1,k+s-1]}.
/// An interval [a,b] with a > b is empty.
pub fn chart_coords(p: &PluckerVector) -> Result<TorusPoint> {
    let (k, n) = (p.k(), p.n());
    assert!(k < n, "chart requires k < n");
    let width = n - k;
    let table = SubsetTable::new(k, n);
    let interval_union = |a1: usize, b1: i64, a2: usize, b2: usize| -> Subset {
        let mut members: Vec<usize> = Vec::new();
        for v in a1..=(b1.max(0) as usize) {
            members.push(v);
        }
        for v in a2..=b2 {
            members.push(v);
        }
        Subset::new(n, members).expect("chart subsets are valid")
    };
    let mut values = Vec::with_capacity(k * width);
    for r in 1..=k {
        for s in 1..=width {
            let numer_s = interval_union(1, (k - r) as i64, k - r + s + 1, k + s);
            let denom_s = interval_union(1, (k - r + 1) as i64, k - r + s + 1, k + s - 1);
            let numer = p.coords()[table.position(&numer_s)];
            let denom = p.coords()[table.position(&denom_s)];
            if denom.norm() <= 1e-10 {
                return Err(Error::ChartUndefined {
                    subset: denom_s.to_string(),
                });
            }
            if numer.norm() <= 1e-10 {
                return Err(Error::ChartUndefined {
                    subset: numer_s.to_string(),
                });
            }
            values.push(numer / denom);
        }
    }
    TorusPoint::new(k, width, values)
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalSearch {
    #[serde(skip)]
    pub points: Vec<TorusPoint>,
    pub chart_starts: usize,
    pub random_starts: usize,
    pub diverged_starts: usize,
    pub max_gradient_residual: f64,
}

/// Newton iteration on the exact gradient system of L_q from chart images of
/// every sigma_q fixed point plus `extra_starts` random torus points.
/// Converged solutions are deduplicated and sorted coordinatewise.
pub fn find_critical_points(
    k: usize,
    n: usize,
    q: C64,
    extra_starts: usize,
    seed: u64,
) -> Result<CriticalSearch> {
    if q.norm() == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let l = build_l_q(k, n);
    let grad = l.gradient();
    let hess: Vec<Vec<LaurentPolynomial>> = grad.iter().map(|g| g.gradient()).collect();
    let mut starts: Vec<TorusPoint> = Vec::new();
    let mut chart_starts = 0usize;
    for (_, p) in enumerate_fixed_points(k, n, q)? {
        if let Ok(x) = chart_coords(&p) {
            starts.push(x);
            chart_starts += 1;
        }
    }
    let width = n - k;
    let num_x = k * width;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra_starts {
        let values: Vec<C64> = (0..num_x)
            .map(|_| {
                let logm = rng.gen::<f64>() * 2.0 - 1.0;
                let phase = rng.gen::<f64>() * std::f64::consts::TAU;
                C64::from_polar(logm.exp(), phase)
            })
            .collect();
        starts.push(TorusPoint::new(k, width, values).expect("random torus point"));
    }
    let random_starts = starts.len() - chart_starts;
    let mut found: Vec<TorusPoint> = Vec::new();
    let mut diverged = 0usize;
    let mut max_resid = 0.0f64;
    'starts: for start in starts {
        match newton_on_gradient(&grad, &hess, start, q) {
            Some(x) => {
                let resid = gradient_residual(&grad, &x, q);
                max_resid = max_resid.max(resid);
                for existing in &found {
                    if existing.max_distance(&x) < 1e-6 {
                        continue 'starts;
                    }
                }
                found.push(x);
            }
            None => diverged += 1,
        }
    }
    found.sort_by(|a, b| {
        for (x, y) in a.values().iter().zip(b.values()) {
            let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    });
    Ok(CriticalSearch {
        points: found,
        chart_starts,
        random_starts,
        diverged_starts: diverged,
        max_gradient_residual: max_resid,
    })
}

pub fn gradient_residual(grad: &[LaurentPolynomial], x: &TorusPoint, q: C64) -> f64 {
    grad.iter()
        .map(|g| g.eval(x.values(), q).norm())
        .fold(0.0, f64::max)
}

fn newton_on_gradient(
    grad: &[LaurentPolynomial],
    hess: &[Vec<LaurentPolynomial>],
    start: TorusPoint,
    q: C64,
) -> Option<TorusPoint> {
    let m = grad.len();
    let mut x = start.values().to_vec();
    let eval_grad = |x: &[C64]| -> Vec<C64> { grad.iter().map(|g| g.eval(x, q)).collect() };
    let norm = |v: &[C64]| -> f64 { v.iter().map(|z| z.norm()).fold(0.0, f64::max) };
    let mut g = eval_grad(&x);
    for _ in 0..100 {
        if norm(&g) < 1e-10 {
            return TorusPoint::new(start.k(), start.width(), x).ok();
        }
        let jac = CMat::from_fn(m, m, |i, j| hess[i][j].eval(&x, q));
        let rhs: Vec<C64> = g.iter().map(|z| -z).collect();
        let delta = jac.solve(&rhs).ok()?;
        // step halving until the residual decreases
        let mut alpha = 1.0f64;
        let mut improved = false;
        for _ in 0..20 {
            let trial: Vec<C64> = x
                .iter()
                .zip(&delta)
                .map(|(xi, di)| xi + di * cr(alpha))
                .collect();
            if trial.iter().all(|z| z.norm() > 1e-12 && z.is_finite()) {
                let tg = eval_grad(&trial);
                if norm(&tg) < norm(&g) {
                    x = trial;
                    g = tg;
                    improved = true;
                    break;
                }
            }
            alpha /= 2.0;
        }
        if !improved {
            return None;
        }
    }
    if norm(&g) < 1e-10 {
        return TorusPoint::new(start.k(), start.width(), x).ok();
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceReport {
    pub total_fixed_points: usize,
    pub chart_visible: usize,
    pub chart_invisible: usize,
    pub max_gradient_residual_at_fixed: f64,
    pub newton_critical_points: usize,
    pub unmatched_critical_points: usize,
    pub pass: bool,
}

/// Cross-checks the fixed-point / critical-point correspondence at q = t:
/// the gradient of L_t vanishes at the chart image of every chart-visible
/// fixed point, and every Newton-found critical point matches one of those
/// images.
pub fn verify_correspondence(k: usize, n: usize, t: C64) -> Result<CorrespondenceReport> {
    if t.norm() == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let l = build_l_q(k, n);
    let grad = l.gradient();
    let mut visible_charts: Vec<TorusPoint> = Vec::new();
    let mut invisible = 0usize;
    let mut max_resid = 0.0f64;
    let fixed = enumerate_fixed_points(k, n, t)?;
    let total = fixed.len();
    for (_, p) in fixed {
        match chart_coords(&p) {
            Ok(x) => {
                max_resid = max_resid.max(gradient_residual(&grad, &x, t));
                visible_charts.push(x);
            }
            Err(_) => invisible += 1,
        }
    }
    let search = find_critical_points(k, n, t, 24, 2024)?;
    let mut unmatched = 0usize;
    for found in &search.points {
        let matched = visible_charts
            .iter()
            .any(|x| x.max_distance(found) < 1e-6);
        if !matched {
            unmatched += 1;
        }
    }
    Ok(CorrespondenceReport {
        total_fixed_points: total,
        chart_visible: visible_charts.len(),
        chart_invisible: invisible,
        max_gradient_residual_at_fixed: max_resid,
        newton_critical_points: search.points.len(),
        unmatched_critical_points: unmatched,
        pass: max_resid < 1e-8 && unmatched == 0,
    })
}

use crate::cmatrix::{cr, C64, CMat};
use crate::error::{Error, Result};
use crate::superpotential::{find_critical_points, TorusPoint};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Labeling of the poset [k] x [n-k] by nonzero complex values, with the
/// added minimum pinned to 1 and the added maximum pinned to q. Both
/// boundary labels stay constant under the dynamics.
#[derive(Debug, Clone)]
pub struct PosetLabeling {
    k: usize,
    width: usize,
    q: C64,
    values: Vec<C64>,
}

impl PosetLabeling {
    pub fn new(k: usize, n: usize, q: C64, values: Vec<C64>) -> Result<Self> {
        assert!(k >= 1 && k < n);
        let width = n - k;
        if values.len() != k * width {
            return Err(Error::InvalidConfig {
                reason: format!("expected {} labels, got {}", k * width, values.len()),
            });
        }
        if values.iter().any(|z| z.norm() == 0.0) || q.norm() == 0.0 {
            return Err(Error::InvalidConfig {
                reason: "labels and q must be nonzero".into(),
            });
        }
        Ok(Self {
            k,
            width,
            q,
            values,
        })
    }

    pub fn from_torus_point(x: &TorusPoint, q: C64) -> Result<Self> {
        Self::new(x.k(), x.k() + x.width(), q, x.values().to_vec())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.k + self.width
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn q(&self) -> C64 {
        self.q
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// 1-based cell access.
    pub fn get(&self, r: usize, s: usize) -> C64 {
        self.values[(r - 1) * self.width + (s - 1)]
    }

    fn set(&mut self, r: usize, s: usize, v: C64) {
        self.values[(r - 1) * self.width + (s - 1)] = v;
    }

    pub fn max_distance(&self, other: &PosetLabeling) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// One full sweep of birational rowmotion: toggles applied at every cell
/// once, scanning the fixed linear extension from top to bottom (reverse of
/// (row, column) lexicographic order).
///
/// The toggle replaces f(v) by (sum of labels just above v) divided by
/// f(v) times (sum of reciprocal labels just below v); the added minimum
/// contributes label 1 below (1,1) and the added maximum contributes label q
/// above (k, n-k). With this orientation the fixed labelings are exactly the
/// critical points of the chart superpotential.
pub fn birational_rowmotion(x: &PosetLabeling) -> Result<PosetLabeling> {
    let mut out = x.clone();
    let (k, w) = (x.k(), x.width());
    for r in (1..=k).rev() {
        for s in (1..=w).rev() {
            toggle(&mut out, r, s)?;
        }
    }
    Ok(out)
}

fn toggle(x: &mut PosetLabeling, r: usize, s: usize) -> Result<()> {
    let (k, w) = (x.k(), x.width());
    // labels covering (r,s): up-neighbours in the grid, or q at the top
    let mut above = cr(0.0);
    let mut has_above = false;
    if r + 1 <= k {
        above += x.get(r + 1, s);
        has_above = true;
    }
    if s + 1 <= w {
        above += x.get(r, s + 1);
        has_above = true;
    }
    if !has_above {
        above = x.q();
    }
    // reciprocals of labels covered by (r,s), or the minimum's label 1
    let mut below_recip = cr(0.0);
    let mut has_below = false;
    if r >= 2 {
        below_recip += cr(1.0) / x.get(r - 1, s);
        has_below = true;
    }
    if s >= 2 {
        below_recip += cr(1.0) / x.get(r, s - 1);
        has_below = true;
    }
    if !has_below {
        below_recip = cr(1.0);
    }
    let eps = 1e-12;
    if above.norm() <= eps || below_recip.norm() <= eps {
        return Err(Error::DegenerateToggle { r, s });
    }
    let old = x.get(r, s);
    if old.norm() <= eps {
        return Err(Error::DegenerateToggle { r, s });
    }
    x.set(r, s, above / (old * below_recip));
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct RowmotionFixedReport {
    pub critical_points: usize,
    pub max_fix_residual: f64,
    pub newton_fixed_points: usize,
    pub unmatched_fixed_points: usize,
    pub pass: bool,
}

/// Cross-check at parameter q: rowmotion fixes the chart critical points,
/// and Newton on R(x) - x from random starts finds nothing new.
pub fn rowmotion_fixed_check(
    k: usize,
    n: usize,
    q: C64,
    random_starts: usize,
    seed: u64,
) -> Result<RowmotionFixedReport> {
    if q.norm() == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let search = find_critical_points(k, n, q, 24, seed ^ 0x5eed)?;
    let mut max_resid = 0.0f64;
    for x in &search.points {
        let labeling = PosetLabeling::from_torus_point(x, q)?;
        let moved = birational_rowmotion(&labeling)?;
        max_resid = max_resid.max(moved.max_distance(&labeling));
    }
    // converse direction: random Newton fixed points of R(x) - x
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = n - k;
    let num = k * width;
    let mut newton_found: Vec<PosetLabeling> = Vec::new();
    for _ in 0..random_starts {
        let values: Vec<C64> = (0..num)
            .map(|_| {
                let logm = rng.gen::<f64>() * 2.0 - 1.0;
                let phase = rng.gen::<f64>() * std::f64::consts::TAU;
                C64::from_polar(logm.exp(), phase)
            })
            .collect();
        let start = PosetLabeling::new(k, n, q, values)?;
        if let Some(fixed) = newton_on_rowmotion(&start) {
            if !newton_found.iter().any(|y| y.max_distance(&fixed) < 1e-6) {
                newton_found.push(fixed);
            }
        }
    }
    let mut unmatched = 0usize;
    for fixed in &newton_found {
        let matched = search.points.iter().any(|x| {
            x.values()
                .iter()
                .zip(fixed.values())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max)
                < 1e-6
        });
        if !matched {
            unmatched += 1;
        }
    }
    Ok(RowmotionFixedReport {
        critical_points: search.points.len(),
        max_fix_residual: max_resid,
        newton_fixed_points: newton_found.len(),
        unmatched_fixed_points: unmatched,
        pass: max_resid < 1e-8 && unmatched == 0,
    })
}

/// Newton iteration on R(x) - x with a forward-difference Jacobian (the map
/// is holomorphic, so a real step recovers the complex derivative).
fn newton_on_rowmotion(start: &PosetLabeling) -> Option<PosetLabeling> {
    let m = start.values().len();
    let mut x = start.clone();
    let residual = |x: &PosetLabeling| -> Option<Vec<C64>> {
        let moved = birational_rowmotion(x).ok()?;
        Some(
            moved
                .values()
                .iter()
                .zip(x.values())
                .map(|(a, b)| a - b)
                .collect(),
        )
    };
    let norm = |v: &[C64]| -> f64 { v.iter().map(|z| z.norm()).fold(0.0, f64::max) };
    let mut g = residual(&x)?;
    for _ in 0..100 {
        if norm(&g) < 1e-10 {
            return Some(x);
        }
        let h = 1e-7;
        let mut jac = CMat::zeros(m, m);
        for j in 0..m {
            let mut xp = x.clone();
            xp.values[j] += cr(h);
            let gp = residual(&xp)?;
            for i in 0..m {
                jac[(i, j)] = (gp[i] - g[i]) / cr(h);
            }
        }
        let rhs: Vec<C64> = g.iter().map(|z| -z).collect();
        let delta = jac.solve(&rhs).ok()?;
        let mut alpha = 1.0f64;
        let mut improved = false;
        for _ in 0..20 {
            let mut trial = x.clone();
            for (v, d) in trial.values.iter_mut().zip(&delta) {
                *v += d * cr(alpha);
            }
            if trial.values.iter().all(|z| z.norm() > 1e-12 && z.is_finite()) {
                if let Some(tg) = residual(&trial) {
                    if norm(&tg) < norm(&g) {
                        x = trial;
                        g = tg;
                        improved = true;
                        break;
                    }
                }
            }
            alpha /= 2.0;
        }
        if !improved {
            return None;
        }
    }
    if norm(&g) < 1e-10 {
        Some(x)
    } else {
        None
    }
}

/// Iterates rowmotion until the labeling returns to its start (within
/// `eps`), up to `cap` steps. Returns the observed period if any.
pub fn observed_period(x: &PosetLabeling, cap: usize, eps: f64) -> Result<Option<usize>> {
    let mut current = x.clone();
    for p in 1..=cap {
        current = birational_rowmotion(&current)?;
        if current.max_distance(x) < eps {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

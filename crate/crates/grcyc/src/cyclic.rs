use crate::cmatrix::{cr, C64, CMat};
use crate::error::{Error, Result};
use crate::moment::f_k;
use crate::plucker::{
    matrix_from_plucker, plucker_from_matrix, MatrixKxN, PluckerVector,
};
use crate::subset::{Subset, SubsetTable};
use crate::tol::TolerancePolicy;
use std::f64::consts::PI;

/// Ordered set of k distinct n-th roots of (-1)^{k-1} t: the parameter data
/// of a shift fixed point.
#[derive(Debug, Clone)]
pub struct RootSet {
    k: usize,
    n: usize,
    t: C64,
    roots: Vec<C64>,
}

impl RootSet {
    pub fn new(k: usize, n: usize, t: C64, mut roots: Vec<C64>) -> Result<Self> {
        if roots.len() != k {
            return Err(Error::InvalidRoots {
                reason: format!("expected {} roots, got {}", k, roots.len()),
            });
        }
        let target = shift_scalar(k, t);
        let scale = t.norm().max(1.0);
        for z in &roots {
            if (z.powi(n as i32) - target).norm() > 1e-9 * scale {
                return Err(Error::InvalidRoots {
                    reason: format!("{} is not an n-th root of (-1)^(k-1) t", z),
                });
            }
        }
        roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        for w in roots.windows(2) {
            if (w[0] - w[1]).norm() <= TolerancePolicy::default().zero_eps {
                return Err(Error::InvalidRoots {
                    reason: "roots must be pairwise distinct".into(),
                });
            }
        }
        Ok(Self { k, n, t, roots })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> C64 {
        self.t
    }

    /// Roots in ascending principal-argument order.
    pub fn roots(&self) -> &[C64] {
        &self.roots
    }

    /// True iff {1/z : z in S} = S under nearest-pairing at tolerance `eps`.
    pub fn closed_under_inversion(&self, eps: f64) -> bool {
        let mut used = vec![false; self.k];
        for z in &self.roots {
            let inv = z.inv();
            let mut found = false;
            for (j, w) in self.roots.iter().enumerate() {
                if !used[j] && (inv - w).norm() <= eps {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return false;
            }
        }
        true
    }

    /// True iff the set is closed under complex conjugation at tolerance `eps`.
    pub fn closed_under_conjugation(&self, eps: f64) -> bool {
        self.roots.iter().all(|z| {
            self.roots
                .iter()
                .any(|w| (z.conj() - w).norm() <= eps)
        })
    }
}

/// (-1)^{k-1} t, the scalar picked up when a vector wraps once around.
pub fn shift_scalar(k: usize, t: C64) -> C64 {
    if k % 2 == 1 {
        t
    } else {
        -t
    }
}

/// Matrix of the t-deformed cyclic shift v -> (v_2, ..., v_n, (-1)^{k-1} t v_1),
/// acting on column vectors.
pub fn sigma_t_matrix(k: usize, n: usize, t: C64) -> Result<CMat> {
    if t.norm() == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let mut m = CMat::zeros(n, n);
    for i in 0..n - 1 {
        m[(i, i + 1)] = cr(1.0);
    }
    m[(n - 1, 0)] = shift_scalar(k, t);
    Ok(m)
}

/// Shift action directly on Plucker coordinates:
/// D_I(result) = t^{[n in I]} D_{I+1 mod n}(P).
pub fn sigma_t_on_plucker(p: &PluckerVector, t: C64) -> PluckerVector {
    let table = SubsetTable::new(p.k(), p.n());
    let n = p.n();
    let coords: Vec<C64> = table
        .iter()
        .map(|s| {
            let shifted = s.cyclic_shift(1);
            let factor = if s.contains(n) { t } else { cr(1.0) };
            factor * p.coords()[table.position(&shifted)]
        })
        .collect();
    PluckerVector::from_raw(p.k(), p.n(), coords).expect("shift preserves nonvanishing")
}

/// All n solutions of z^n = (-1)^{k-1} t, ascending by principal argument,
/// together with the distinguished root set t^{1/n} S_0 when t is a positive
/// real (the k roots closest to the positive axis).
pub fn roots_and_s0(k: usize, n: usize, t: C64) -> Result<(Vec<C64>, Option<RootSet>)> {
    if t.norm() == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let target = shift_scalar(k, t);
    let radius = target.norm().powf(1.0 / n as f64);
    let base_arg = target.arg() / n as f64;
    let mut roots: Vec<C64> = (0..n)
        .map(|m| C64::from_polar(radius, base_arg + 2.0 * PI * m as f64 / n as f64))
        .collect();
    roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    let s0 = if t.im.abs() <= 1e-12 * t.norm() && t.re > 0.0 {
        let r = t.re.powf(1.0 / n as f64);
        let selected: Vec<C64> = (0..k)
            .map(|j| {
                let m = -(k as f64 - 1.0) + 2.0 * j as f64;
                C64::from_polar(r, m * PI / n as f64)
            })
            .collect();
        Some(RootSet::new(k, n, t, selected)?)
    } else {
        None
    };
    Ok((roots, s0))
}

/// The subspace spanned by the power vectors (1, z, ..., z^{n-1}) over the
/// root set.
pub fn v_s(s: &RootSet) -> Result<PluckerVector> {
    plucker_from_matrix(&v_s_matrix(s))
}

pub fn v_s_matrix(s: &RootSet) -> MatrixKxN {
    let rows: Vec<Vec<C64>> = s
        .roots()
        .iter()
        .map(|&z| (0..s.n()).map(|j| z.powi(j as i32)).collect())
        .collect();
    MatrixKxN::from_rows(rows).expect("power matrix shape is valid")
}

/// Every fixed point of the t-deformed shift: one per k-subset of the n
/// roots, in lexicographic order on root indices (roots sorted by argument).
pub fn enumerate_fixed_points(k: usize, n: usize, t: C64) -> Result<Vec<(RootSet, PluckerVector)>> {
    if k == 0 || k > n {
        return Err(Error::InvalidConfig {
            reason: format!("need 1 <= k <= n, got ({},{})", k, n),
        });
    }
    let (all_roots, _) = roots_and_s0(k, n, t)?;
    let table = SubsetTable::new(k, n);
    let mut out = Vec::with_capacity(table.len());
    for subset in table.iter() {
        let roots: Vec<C64> = subset.members().iter().map(|&i| all_roots[i - 1]).collect();
        let s = RootSet::new(k, n, t, roots)?;
        let p = v_s(&s)?;
        out.push((s, p));
    }
    Ok(out)
}

/// The unique totally nonnegative fixed point for positive real t.
pub fn tnn_fixed_point(k: usize, n: usize, t: f64) -> Result<PluckerVector> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::NonPositiveParameter);
    }
    let (_, s0) = roots_and_s0(k, n, cr(t))?;
    v_s(&s0.expect("positive real t yields a distinguished root set"))
}

/// Deformed sine-product coordinates t^{(sum I)/n} prod sin((i_s - i_r) pi / n),
/// lex subset order, unnormalized.
pub fn tnn_formula_vector(k: usize, n: usize, t: f64) -> Vec<C64> {
    let table = SubsetTable::new(k, n);
    table
        .iter()
        .map(|s| {
            let sum: usize = s.members().iter().sum();
            let tpow = t.powf(sum as f64 / n as f64);
            cr(tpow * sine_product(n, s))
        })
        .collect()
}

fn sine_product(n: usize, s: &Subset) -> f64 {
    let m = s.members();
    let mut prod = 1.0;
    for r in 0..m.len() {
        for q in (r + 1)..m.len() {
            prod *= ((m[q] - m[r]) as f64 * PI / n as f64).sin();
        }
    }
    prod
}

/// Totally nonnegative subspace through the power vector of z, for
/// |arg z| <= (k-1)/(n-1) pi: moment-curve columns at step 2|arg z|/(k-1)
/// (the power matrix (s^{r-1}) when arg z = 0), with coordinate j rescaled
/// by |z|^{j-1}.
pub fn remark_subspace(z: C64, k: usize, n: usize) -> Result<PluckerVector> {
    if z.norm() == 0.0 {
        return Err(Error::ZeroInput);
    }
    let bound = (k as f64 - 1.0) / (n as f64 - 1.0) * PI;
    let arg = z.arg().abs();
    if arg > bound + 1e-12 {
        return Err(Error::ArgumentOutOfRange { arg, bound });
    }
    let base = if arg == 0.0 || k == 1 {
        // row r is (1, s, s^2, ...) pointwise: entry (r,s) = s^{r-1}
        CMat::from_fn(k, n, |r, s| cr(((s + 1) as f64).powi(r as i32)))
    } else {
        let rho = 2.0 * arg / (k as f64 - 1.0);
        let cols: Vec<Vec<f64>> = (0..n).map(|j| f_k(k, j as f64 * rho)).collect();
        CMat::from_fn(k, n, |i, j| cr(cols[j][i]))
    };
    let modulus = z.norm();
    let rescaled = CMat::from_fn(k, n, |i, j| base[(i, j)] * cr(modulus.powi(j as i32)));
    plucker_from_matrix(&MatrixKxN::new(k, n, rescaled)?)
}

/// Row-span image under exp(s sigma), via the closed-form eigendecomposition:
/// eigenvectors are the power vectors of the n-th roots of (-1)^{k-1}, with
/// eigenvalue the root itself.
pub fn flow(p: &PluckerVector, s: f64) -> Result<PluckerVector> {
    assert!(s >= 0.0, "flow time must be nonnegative");
    let (k, n) = (p.k(), p.n());
    let (roots, _) = roots_and_s0(k, n, cr(1.0))?;
    // F columns are unit-modulus power vectors, so F^{-1} = F^H / n
    let f = CMat::from_fn(n, n, |i, j| roots[j].powi(i as i32));
    let fh = CMat::from_fn(n, n, |i, j| roots[i].powi(j as i32).conj());
    let e = CMat::from_fn(n, n, |i, j| {
        if i == j {
            (roots[i] * cr(s)).exp()
        } else {
            cr(0.0)
        }
    });
    let expm = f.matmul(&e).matmul(&fh).scale(cr(1.0 / n as f64));
    let a = matrix_from_plucker(p)?;
    plucker_from_matrix(&a.apply_linear_map(&expm)?.equilibrate_rows())
}

/// Membership test: does the row span of `a` contain `v`? Checks that
/// stacking v on top of a does not raise the rank.
pub fn row_span_contains(a: &MatrixKxN, v: &[C64], rel_eps: f64) -> bool {
    assert_eq!(v.len(), a.n());
    let mut rows = vec![v.to_vec()];
    for i in 0..a.k() {
        rows.push(a.mat().row(i).to_vec());
    }
    let stacked = CMat::from_rows(rows);
    let k1 = a.k() + 1;
    if k1 > a.n() {
        return true;
    }
    let table = SubsetTable::new(k1, a.n());
    let rows_idx: Vec<usize> = (0..k1).collect();
    let mut scale = 1.0f64;
    for i in 0..k1 {
        let norm: f64 = stacked.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        scale *= norm.max(1e-300);
    }
    let contained = table.iter().all(|sub| {
        let idx: Vec<usize> = sub.members().iter().map(|&j| j - 1).collect();
        stacked.submatrix(&rows_idx, &idx).det().norm() <= rel_eps * scale
    });
    contained
}

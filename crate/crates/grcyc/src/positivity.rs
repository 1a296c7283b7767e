use crate::cmatrix::C64;
use crate::error::{Error, Result};
use crate::plucker::{matrix_from_plucker, PluckerVector};
use crate::tol::TolerancePolicy;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

/// Number of sign alternations among entries with |entry| > zero_eps.
pub fn sign_variation(v: &[f64], zero_eps: f64) -> usize {
    let mut count = 0usize;
    let mut last = 0i8;
    for &x in v {
        if x.abs() <= zero_eps {
            continue;
        }
        let s = if x > 0.0 { 1i8 } else { -1i8 };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sign variation with the default relative threshold 1e-10 * max |entry|.
pub fn sign_variation_rel(v: &[f64]) -> usize {
    let m = v.iter().map(|x| x.abs()).fold(0.0f64, f64::max);
    sign_variation(v, 1e-10 * m)
}

/// Real coordinates of a point whose Plucker vector is real up to a global
/// scalar. The canonical form already removes the phase at the pivot, so
/// this succeeds iff every residual imaginary part is below abs_eps.
pub fn realize_real(p: &PluckerVector, tol: &TolerancePolicy) -> Result<Vec<f64>> {
    let worst = p
        .coords()
        .iter()
        .map(|z| z.im.abs())
        .fold(0.0f64, f64::max);
    if worst > tol.abs_eps {
        return Err(Error::NotRealizable { residual: worst });
    }
    Ok(p.coords().iter().map(|z| z.re).collect())
}

/// Total nonnegativity: all real coordinates >= -abs_eps after the canonical
/// rescale (which fixes the overall sign). Non-realizable points are not TNN.
pub fn is_tnn(p: &PluckerVector, tol: &TolerancePolicy) -> bool {
    match realize_real(p, tol) {
        Ok(v) => v.iter().all(|&x| x >= -tol.abs_eps),
        Err(_) => false,
    }
}

/// Total positivity: all real coordinates strictly exceed abs_eps.
pub fn is_tp(p: &PluckerVector, tol: &TolerancePolicy) -> bool {
    match realize_real(p, tol) {
        Ok(v) => v.iter().all(|&x| x > tol.abs_eps),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GkReport {
    pub samples: usize,
    pub bound: usize,
    pub max_variation: usize,
    pub pass: bool,
    /// Coefficients of the first combination exceeding the bound, if any.
    pub witness: Option<Vec<f64>>,
}

/// Sampled sign-variation check: random real combinations of the rows of a
/// real representative must change sign at most k-1 times. A pass is only a
/// necessary-condition check; a failure carries a witness certifying the
/// point is not totally nonnegative.
pub fn gk_sample_check(
    p: &PluckerVector,
    samples: usize,
    seed: u64,
    tol: &TolerancePolicy,
) -> Result<GkReport> {
    let real = realize_real(p, tol)?;
    let rp = PluckerVector::from_raw(
        p.k(),
        p.n(),
        real.iter().map(|&x| C64::new(x, 0.0)).collect(),
    )?;
    let a = matrix_from_plucker(&rp)?;
    let k = p.k();
    let bound = k - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_variation = 0usize;
    let mut witness = None;
    for _ in 0..samples {
        let coeffs: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let v: Vec<f64> = (0..p.n())
            .map(|j| {
                (0..k)
                    .map(|r| coeffs[r] * a.mat()[(r, j)].re)
                    .sum::<f64>()
            })
            .collect();
        let var = sign_variation_rel(&v);
        if var > max_variation {
            max_variation = var;
        }
        if var > bound && witness.is_none() {
            witness = Some(coeffs);
        }
    }
    Ok(GkReport {
        samples,
        bound,
        max_variation,
        pass: max_variation <= bound,
        witness,
    })
}

/// |arg z| <= (k-1)/(n-1) pi, the admissible argument range for power
/// vectors inside totally nonnegative subspaces.
pub fn argument_bound_holds(z: C64, k: usize, n: usize) -> Result<bool> {
    if z.norm() == 0.0 {
        return Err(Error::ZeroInput);
    }
    let bound = (k as f64 - 1.0) / (n as f64 - 1.0) * PI;
    Ok(z.arg().abs() <= bound + 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::{c, cr};
    use crate::cyclic::{enumerate_fixed_points, tnn_fixed_point, RootSet};
    use crate::plucker::{plucker_from_matrix, MatrixKxN};

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn variation_counting() {
        assert_eq!(sign_variation(&[1.0, 0.0, -1.0], 1e-12), 1);
        assert_eq!(sign_variation(&[1.0, -1.0, 1.0], 1e-12), 2);
        assert_eq!(sign_variation(&[1.0, 0.0, 0.0, -1.0], 1e-12), 1);
        assert_eq!(sign_variation(&[-1.0, 2.0, 1.0, 3.0], 1e-12), 1);
        assert_eq!(sign_variation(&[], 1e-12), 0);
        assert_eq!(sign_variation(&[0.0, 0.0], 1e-12), 0);
    }

    #[test]
    fn realize_real_cases() {
        // i * (real vector) realizes
        let coords = vec![c(0.0, 2.0), c(0.0, 1.0), c(0.0, -1.0)];
        let p = PluckerVector::from_raw(1, 3, coords).unwrap();
        let v = realize_real(&p, &tol()).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-12);
        assert!((v[1] - 0.5).abs() < 1e-12);
        assert!((v[2] + 0.5).abs() < 1e-12);

        // conjugation-closed root pair realizes to the octagon minors
        let s = RootSet::new(
            2,
            4,
            cr(1.0),
            vec![C64::from_polar(1.0, PI / 4.0), C64::from_polar(1.0, -PI / 4.0)],
        )
        .unwrap();
        let p = crate::cyclic::v_s(&s).unwrap();
        let v = realize_real(&p, &tol()).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let want = [r, 1.0, r, r, 1.0, r];
        for (a, b) in v.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }

        // non conjugation-closed pair does not realize
        let s = RootSet::new(
            2,
            4,
            cr(1.0),
            vec![C64::from_polar(1.0, PI / 4.0), C64::from_polar(1.0, 3.0 * PI / 4.0)],
        )
        .unwrap();
        let p = crate::cyclic::v_s(&s).unwrap();
        assert!(matches!(
            realize_real(&p, &tol()),
            Err(Error::NotRealizable { .. })
        ));
    }

    #[test]
    fn tnn_and_tp_classification() {
        // the running TNN-but-not-TP example
        let a = MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(0.0), cr(0.0), cr(-1.0)],
            vec![cr(-1.0), cr(2.0), cr(1.0), cr(3.0)],
        ])
        .unwrap();
        let p = plucker_from_matrix(&a).unwrap();
        assert!(is_tnn(&p, &tol()));
        assert!(!is_tp(&p, &tol()));

        let v0 = tnn_fixed_point(2, 4, 1.0).unwrap();
        assert!(is_tp(&v0, &tol()));

        // far root pair: a negative coordinate
        let s = RootSet::new(
            2,
            4,
            cr(1.0),
            vec![
                C64::from_polar(1.0, 3.0 * PI / 4.0),
                C64::from_polar(1.0, -3.0 * PI / 4.0),
            ],
        )
        .unwrap();
        let p = crate::cyclic::v_s(&s).unwrap();
        assert!(!is_tnn(&p, &tol()));
    }

    #[test]
    fn gk_check_passes_on_v0_and_fails_on_far_pair() {
        let v0 = tnn_fixed_point(3, 6, 1.0).unwrap();
        let rep = gk_sample_check(&v0, 1000, 42, &tol()).unwrap();
        assert!(rep.pass);
        assert!(rep.max_variation <= 2);

        let s = RootSet::new(
            2,
            4,
            cr(1.0),
            vec![
                C64::from_polar(1.0, 3.0 * PI / 4.0),
                C64::from_polar(1.0, -3.0 * PI / 4.0),
            ],
        )
        .unwrap();
        let p = crate::cyclic::v_s(&s).unwrap();
        let rep = gk_sample_check(&p, 1000, 42, &tol()).unwrap();
        assert!(!rep.pass);
        assert!(rep.max_variation >= 2);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn gk_trivial_when_k_equals_n() {
        let p = PluckerVector::from_raw(2, 2, vec![cr(3.0)]).unwrap();
        let rep = gk_sample_check(&p, 100, 1, &tol()).unwrap();
        assert!(rep.pass);
        assert!(rep.max_variation <= 1);
    }

    #[test]
    fn argument_bound_cases() {
        assert!(argument_bound_holds(C64::from_polar(1.0, PI / 4.0), 2, 4).unwrap());
        assert!(argument_bound_holds(cr(5.0), 7, 9).unwrap());
        assert!(!argument_bound_holds(C64::from_polar(1.0, PI / 2.0), 2, 4).unwrap());
        assert!(matches!(
            argument_bound_holds(cr(0.0), 2, 4),
            Err(Error::ZeroInput)
        ));
    }

    #[test]
    fn tnn_fixed_points_respect_argument_bound() {
        // at t=1, k<n: the TNN fixed point's roots all satisfy the bound;
        // every non-TNN fixed point has a bound violation or is not
        // conjugation-closed
        for &(k, n) in &[(2usize, 4usize), (2, 5), (3, 6)] {
            for (s, p) in enumerate_fixed_points(k, n, cr(1.0)).unwrap() {
                if is_tnn(&p, &tol()) {
                    for &z in s.roots() {
                        assert!(argument_bound_holds(z, k, n).unwrap());
                    }
                } else {
                    let violates = s
                        .roots()
                        .iter()
                        .any(|&z| !argument_bound_holds(z, k, n).unwrap());
                    assert!(violates || !s.closed_under_conjugation(1e-9));
                }
            }
        }
    }

    #[test]
    fn sampled_variation_bound_on_tnn_points() {
        for &(k, n) in &[(2usize, 4usize), (3, 6)] {
            let v0 = tnn_fixed_point(k, n, 1.0).unwrap();
            let rep = gk_sample_check(&v0, 1000, 7, &tol()).unwrap();
            assert!(rep.pass, "({},{})", k, n);
        }
    }
}

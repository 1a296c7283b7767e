use crate::cmatrix::{cr, C64, CMat};
use crate::plucker::MatrixKxN;
use crate::subset::Subset;
use std::f64::consts::PI;

/// Sample of the trigonometric (odd k) or symmetric (even k) moment curve.
///
/// Odd k:  (1, cos t, sin t, ..., cos((k-1)/2 t), sin((k-1)/2 t))
/// Even k: (cos(t/2), sin(t/2), ..., cos((k-1)/2 t), sin((k-1)/2 t))
pub fn f_k(k: usize, theta: f64) -> Vec<f64> {
    assert!(k >= 1);
    let mut v = Vec::with_capacity(k);
    if k % 2 == 1 {
        v.push(1.0);
        for j in 1..=(k - 1) / 2 {
            let a = j as f64 * theta;
            v.push(a.cos());
            v.push(a.sin());
        }
    } else {
        for j in 1..=k / 2 {
            let a = (2 * j - 1) as f64 / 2.0 * theta;
            v.push(a.cos());
            v.push(a.sin());
        }
    }
    v
}

/// det(f_k(t_1), ..., f_k(t_k)) by the closed sine-product form. The literal
/// determinant is evaluated alongside and the two must agree; a disagreement
/// means the formula or the curve is wrong, so it panics rather than returns.
pub fn trig_vandermonde_det(thetas: &[f64]) -> f64 {
    let k = thetas.len();
    let mut prod = 1.0f64;
    for r in 0..k {
        for s in (r + 1)..k {
            prod *= ((thetas[s] - thetas[r]) / 2.0).sin();
        }
    }
    let formula = 2f64.powi(((k as i32 - 1).pow(2) / 2) as i32) * prod;
    let direct = if k == 0 {
        1.0
    } else {
        let cols: Vec<Vec<f64>> = thetas.iter().map(|&t| f_k(k, t)).collect();
        CMat::from_fn(k, k, |i, j| cr(cols[j][i])).det().re
    };
    let scale = formula.abs().max(direct.abs()).max(1.0);
    assert!(
        (formula - direct).abs() <= 1e-9 * scale,
        "sine-product {} and direct determinant {} disagree for k={}",
        formula,
        direct,
        k
    );
    formula
}

/// Representative matrix of the cyclic fixed point: columns f_k(theta + 2 pi j / n).
pub fn v0_matrix(k: usize, n: usize, theta: f64) -> MatrixKxN {
    assert!(k >= 1 && k <= n);
    let cols: Vec<Vec<f64>> = (1..=n)
        .map(|j| f_k(k, theta + 2.0 * PI * j as f64 / n as f64))
        .collect();
    let mat = CMat::from_fn(k, n, |i, j| cr(cols[j][i]));
    MatrixKxN::new(k, n, mat).expect("moment matrix has valid shape")
}

/// Plucker coordinate of the cyclic fixed point at subset I:
/// prod_{r<s} sin((i_s - i_r) pi / n). Strictly positive for k < n.
pub fn v0_plucker_formula(k: usize, n: usize, subset: &Subset) -> f64 {
    assert!(k < n, "v0_plucker_formula requires k < n");
    assert_eq!(subset.k(), k);
    assert_eq!(subset.n(), n);
    let m = subset.members();
    let mut prod = 1.0f64;
    for r in 0..k {
        for s in (r + 1)..k {
            prod *= ((m[s] - m[r]) as f64 * PI / n as f64).sin();
        }
    }
    prod
}

/// All coordinates of the fixed point by the sine formula, lex subset order.
pub fn v0_plucker_vector(k: usize, n: usize) -> Vec<C64> {
    let table = crate::subset::SubsetTable::new(k, n);
    table
        .iter()
        .map(|s| cr(v0_plucker_formula(k, n, s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plucker::{plucker_from_matrix, projective_equal};
    use crate::subset::SubsetTable;
    use crate::tol::TolerancePolicy;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn curve_values_at_zero() {
        assert_eq!(f_k(3, 0.0), vec![1.0, 1.0, 0.0]);
        assert_eq!(f_k(4, 0.0), vec![1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn antiperiodicity() {
        // f_k(t + 2 pi) = (-1)^{k-1} f_k(t)
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 2..=6 {
            for _ in 0..20 {
                let t: f64 = rng.gen::<f64>() * 10.0 - 5.0;
                let lhs = f_k(k, t + 2.0 * PI);
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                let rhs: Vec<f64> = f_k(k, t).iter().map(|x| sign * x).collect();
                for (a, b) in lhs.iter().zip(&rhs) {
                    assert!((a - b).abs() < 1e-9, "k={}", k);
                }
            }
        }
    }

    #[test]
    fn vandermonde_small_cases() {
        assert!((trig_vandermonde_det(&[0.7]) - 1.0).abs() < 1e-12);
        assert!((trig_vandermonde_det(&[0.0, PI]) - 1.0).abs() < 1e-12);
        // k=3 equally spaced: 4 sin^3(pi/3) = 3 sqrt(3) / 2
        let v = trig_vandermonde_det(&[0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]);
        assert!((v - 1.5 * 3f64.sqrt()).abs() < 1e-12, "{}", v);
    }

    #[test]
    fn vandermonde_formula_vs_determinant_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for k in 1..=6 {
            for _ in 0..50 {
                let thetas: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() * 12.0 - 6.0).collect();
                // the internal assert is the check
                trig_vandermonde_det(&thetas);
            }
        }
    }

    #[test]
    fn v0_matches_octagon() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let a = crate::plucker::MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(r), cr(0.0), cr(-r)],
            vec![cr(0.0), cr(r), cr(1.0), cr(r)],
        ])
        .unwrap();
        let octagon = plucker_from_matrix(&a).unwrap();
        let p = plucker_from_matrix(&v0_matrix(2, 4, -PI / 2.0)).unwrap();
        assert!(projective_equal(&octagon, &p, &TolerancePolicy::default()).unwrap());
    }

    #[test]
    fn v0_independent_of_theta() {
        let tol = TolerancePolicy::default();
        for &(k, n) in &[(2usize, 4usize), (3, 7), (4, 8)] {
            let p = plucker_from_matrix(&v0_matrix(k, n, 0.0)).unwrap();
            let q = plucker_from_matrix(&v0_matrix(k, n, 1.7)).unwrap();
            assert!(projective_equal(&p, &q, &tol).unwrap());
        }
    }

    #[test]
    fn v0_k1_is_all_ones() {
        let p = plucker_from_matrix(&v0_matrix(1, 3, 0.0)).unwrap();
        for z in p.coords() {
            assert!((z - cr(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn formula_values_2_4() {
        let t = SubsetTable::new(2, 4);
        let want = [
            std::f64::consts::FRAC_1_SQRT_2,
            1.0,
            std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_1_SQRT_2,
            1.0,
            std::f64::consts::FRAC_1_SQRT_2,
        ];
        for (s, w) in t.iter().zip(want) {
            assert!((v0_plucker_formula(2, 4, s) - w).abs() < 1e-12);
        }
    }

    #[test]
    fn formula_agrees_with_matrix_minors() {
        let tol = TolerancePolicy::default();
        for k in 1..=5usize {
            for n in (k + 1)..=10usize {
                let p = plucker_from_matrix(&v0_matrix(k, n, 0.23)).unwrap();
                let q = crate::plucker::PluckerVector::from_raw(k, n, v0_plucker_vector(k, n))
                    .unwrap();
                assert!(
                    projective_equal(&p, &q, &tol).unwrap(),
                    "({},{}) dist {}",
                    k,
                    n,
                    crate::plucker::projective_distance(&p, &q)
                );
            }
        }
    }

    #[test]
    fn formula_strictly_positive() {
        for k in 1..=5usize {
            for n in (k + 1)..=10usize {
                let t = SubsetTable::new(k, n);
                for s in t.iter() {
                    assert!(v0_plucker_formula(k, n, s) > 0.0);
                }
            }
        }
    }

    #[test]
    fn dihedral_symmetry_of_formula() {
        for &(k, n) in &[(2usize, 6usize), (3, 7)] {
            let t = SubsetTable::new(k, n);
            for s in t.iter() {
                let v = v0_plucker_formula(k, n, s);
                let shifted = v0_plucker_formula(k, n, &s.cyclic_shift(1));
                let reflected = v0_plucker_formula(k, n, &s.reflect());
                assert!((v - shifted).abs() < 1e-12);
                assert!((v - reflected).abs() < 1e-12);
            }
        }
    }
}

use crate::cmatrix::{cr, C64, CMat};
use crate::cyclic::{enumerate_fixed_points, sigma_t_on_plucker, RootSet};
use crate::error::{Error, Result};
use crate::plucker::{matrix_from_plucker, plucker_from_matrix, MatrixKxN, PluckerVector};
use crate::subset::{Subset, SubsetTable};
use crate::tol::TolerancePolicy;
use crate::torus::torus_equivalent;

/// True iff all n cyclic-interval Plucker coordinates are nonzero in
/// canonical form (membership in the open positroid cell).
pub fn in_pi_circle(p: &PluckerVector, tol: &TolerancePolicy) -> bool {
    let (k, n) = (p.k(), p.n());
    let table = SubsetTable::new(k, n);
    (0..n).all(|start| {
        let members: Vec<usize> = (0..k).map(|d| (start + d) % n + 1).collect();
        let s = Subset::from_unsorted(n, members).expect("cyclic interval");
        p.coords()[table.position(&s)].norm() > tol.zero_eps
    })
}

/// Right twist on a matrix representative: column j of the result pairs to 1
/// with column j of the input and annihilates columns j+1, ..., j+k-1
/// (mod n) under the standard bilinear form on C^k.
pub fn right_twist(a: &MatrixKxN) -> Result<MatrixKxN> {
    twist_impl(a, true)
}

/// Left twist: column j pairs to 1 with column j and annihilates columns
/// j-1, ..., j-k+1 (mod n). Inverse of the right twist on represented points.
pub fn left_twist(a: &MatrixKxN) -> Result<MatrixKxN> {
    twist_impl(a, false)
}

fn twist_impl(a: &MatrixKxN, rightward: bool) -> Result<MatrixKxN> {
    let (k, n) = (a.k(), a.n());
    let mut out = CMat::zeros(k, n);
    for j in 0..n {
        // rows of the local system: the k consecutive columns starting at j,
        // walking right or left
        let sys = CMat::from_fn(k, k, |r, cidx| {
            let col = if rightward {
                (j + r) % n
            } else {
                (j + n * k - r) % n // j - r mod n
            };
            a.mat()[(cidx, col)]
        });
        let mut rhs = vec![cr(0.0); k];
        rhs[0] = cr(1.0);
        let x = sys.solve(&rhs).map_err(|_| {
            let members: Vec<usize> = (0..k)
                .map(|r| {
                    if rightward {
                        (j + r) % n + 1
                    } else {
                        (j + n * k - r) % n + 1
                    }
                })
                .collect();
            Error::OutsidePiCircle {
                subset: Subset::from_unsorted(n, members)
                    .map(|s| s.to_string())
                    .unwrap_or_default(),
            }
        })?;
        for r in 0..k {
            out[(r, j)] = x[r];
        }
    }
    MatrixKxN::new(k, n, out)
}

/// Right twist acting on points.
pub fn twist_point(p: &PluckerVector) -> Result<PluckerVector> {
    plucker_from_matrix(&right_twist(&matrix_from_plucker(p)?)?)
}

/// Checks the Marsh-Scott periodicity: tau^2 agrees with sigma^k modulo the
/// column-rescaling torus. Requires a point with nowhere-zero coordinates.
pub fn periodicity_check(p: &PluckerVector, tol: &TolerancePolicy) -> Result<bool> {
    let twice = twist_point(&twist_point(p)?)?;
    let mut shifted = p.clone();
    for _ in 0..p.k() {
        shifted = sigma_t_on_plucker(&shifted, cr(1.0));
    }
    torus_equivalent(&twice, &shifted, tol)
}

/// The sigma_t fixed points whose root set is closed under inversion; each
/// one is verified fixed under the right twist before being returned.
pub fn twist_fixed_candidates(
    k: usize,
    n: usize,
    t: C64,
) -> Result<Vec<(RootSet, PluckerVector)>> {
    let mut out = Vec::new();
    for (s, p) in enumerate_fixed_points(k, n, t)? {
        if !s.closed_under_inversion(1e-8) {
            continue;
        }
        let twisted = twist_point(&p)?;
        let dist = crate::plucker::projective_distance(&twisted, &p);
        if dist > 1e-8 {
            return Err(Error::InvalidRoots {
                reason: format!(
                    "inversion-closed root set {:?} not twist-fixed (residual {})",
                    s.roots(),
                    dist
                ),
            });
        }
        out.push((s, p));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::c;
    use crate::cyclic::tnn_fixed_point;
    use crate::plucker::{projective_distance, projective_equal};
    use crate::positivity::is_tnn;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn random_generic_point(k: usize, n: usize, seed: u64, floor: f64) -> PluckerVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let rows: Vec<Vec<C64>> = (0..k)
                .map(|_| {
                    (0..n)
                        .map(|_| c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
                        .collect()
                })
                .collect();
            let m = MatrixKxN::from_rows(rows).unwrap();
            if let Ok(p) = plucker_from_matrix(&m) {
                if p.coords().iter().all(|z| z.norm() > floor) {
                    return p;
                }
            }
        }
    }

    #[test]
    fn cell_membership() {
        let v0 = tnn_fixed_point(2, 4, 1.0).unwrap();
        assert!(in_pi_circle(&v0, &tol()));

        let mut coords = vec![cr(0.0); 6];
        coords[0] = cr(1.0);
        let p = PluckerVector::from_raw(2, 4, coords).unwrap();
        assert!(!in_pi_circle(&p, &tol()));

        // the TNN-but-not-TP example: D_{23} = 0
        let a = MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(0.0), cr(0.0), cr(-1.0)],
            vec![cr(-1.0), cr(2.0), cr(1.0), cr(3.0)],
        ])
        .unwrap();
        let p = plucker_from_matrix(&a).unwrap();
        assert!(!in_pi_circle(&p, &tol()));
    }

    #[test]
    fn right_twist_worked_example() {
        let a = MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(1.0), cr(0.0), cr(-4.0)],
            vec![cr(0.0), cr(2.0), cr(1.0), cr(3.0)],
        ])
        .unwrap();
        let t = right_twist(&a).unwrap();
        let expected = [
            [1.0, 1.0, 0.75, 0.0],
            [-0.5, 0.0, 1.0, 1.0 / 3.0],
        ];
        for i in 0..2 {
            for j in 0..4 {
                assert!(
                    (t.mat()[(i, j)] - cr(expected[i][j])).norm() < 1e-12,
                    "({},{}): {} vs {}",
                    i,
                    j,
                    t.mat()[(i, j)],
                    expected[i][j]
                );
            }
        }
    }

    #[test]
    fn left_twist_inverts_the_example() {
        let twisted = MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(1.0), cr(0.75), cr(0.0)],
            vec![cr(-0.5), cr(0.0), cr(1.0), cr(1.0 / 3.0)],
        ])
        .unwrap();
        let back = left_twist(&twisted).unwrap();
        let original = MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(1.0), cr(0.0), cr(-4.0)],
            vec![cr(0.0), cr(2.0), cr(1.0), cr(3.0)],
        ])
        .unwrap();
        let p = plucker_from_matrix(&back).unwrap();
        let q = plucker_from_matrix(&original).unwrap();
        assert!(projective_equal(&p, &q, &tol()).unwrap());
    }

    #[test]
    fn twists_invert_on_random_points() {
        for seed in 0..50u64 {
            let p = random_generic_point(2, 5, 700 + seed, 1e-3);
            let a = matrix_from_plucker(&p).unwrap();
            let round = plucker_from_matrix(&left_twist(&right_twist(&a).unwrap()).unwrap())
                .unwrap();
            assert!(projective_distance(&round, &p) < 1e-8, "seed {}", seed);
        }
        for seed in 0..50u64 {
            let p = random_generic_point(3, 6, 800 + seed, 1e-3);
            let a = matrix_from_plucker(&p).unwrap();
            let round = plucker_from_matrix(&right_twist(&left_twist(&a).unwrap()).unwrap())
                .unwrap();
            assert!(projective_distance(&round, &p) < 1e-8, "seed {}", seed);
        }
    }

    #[test]
    fn k1_twist_is_entrywise_inverse() {
        let a = MatrixKxN::from_rows(vec![vec![cr(2.0), c(0.0, 4.0), cr(-0.5)]]).unwrap();
        for twisted in [right_twist(&a).unwrap(), left_twist(&a).unwrap()] {
            for j in 0..3 {
                let want = cr(1.0) / a.mat()[(0, j)];
                assert!((twisted.mat()[(0, j)] - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn twist_outside_cell_fails() {
        // D_{23} = 0 breaks the local system at j = 2
        let a = MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(0.0), cr(0.0), cr(-1.0)],
            vec![cr(-1.0), cr(2.0), cr(1.0), cr(3.0)],
        ])
        .unwrap();
        assert!(matches!(
            right_twist(&a),
            Err(Error::OutsidePiCircle { .. })
        ));
    }

    #[test]
    fn periodicity_on_random_points() {
        let loose = TolerancePolicy::new(1e-6, 1e-6, 1e-10);
        for &(k, n) in &[(2usize, 4usize), (2, 5), (3, 5), (3, 6)] {
            for seed in 0..10u64 {
                let p = random_generic_point(k, n, 900 + seed, 1e-2);
                assert!(
                    periodicity_check(&p, &loose).unwrap(),
                    "({},{}) seed {}",
                    k,
                    n,
                    seed
                );
            }
        }
    }

    #[test]
    fn twist_fixes_v0_exactly() {
        // tau(V_0) = V_0, stronger than the torus statement
        let v0 = tnn_fixed_point(2, 4, 1.0).unwrap();
        let t2 = twist_point(&twist_point(&v0).unwrap()).unwrap();
        let mut s2 = v0.clone();
        for _ in 0..2 {
            s2 = sigma_t_on_plucker(&s2, cr(1.0));
        }
        assert!(projective_equal(&twist_point(&v0).unwrap(), &v0, &tol()).unwrap());
        assert!(projective_equal(&t2, &v0, &tol()).unwrap());
        assert!(projective_equal(&s2, &v0, &tol()).unwrap());
    }

    #[test]
    fn twist_order_divides_2n_modulo_torus() {
        let loose = TolerancePolicy::new(1e-5, 1e-5, 1e-10);
        for &(k, n) in &[(2usize, 4usize), (2, 5)] {
            for seed in 0..5u64 {
                let p = random_generic_point(k, n, 1200 + seed, 1e-2);
                let mut q = p.clone();
                for _ in 0..2 * n {
                    q = twist_point(&q).unwrap();
                }
                assert!(
                    torus_equivalent(&p, &q, &loose).unwrap(),
                    "({},{}) seed {} residual {}",
                    k,
                    n,
                    seed,
                    crate::torus::torus_residual(&p, &q)
                );
            }
        }
    }

    #[test]
    fn inversion_closed_candidates_2_4() {
        let cands = twist_fixed_candidates(2, 4, cr(1.0)).unwrap();
        assert_eq!(cands.len(), 2);
        // exactly one is TNN, and it is the moment-curve point
        let v0 = tnn_fixed_point(2, 4, 1.0).unwrap();
        let tnn: Vec<_> = cands
            .iter()
            .filter(|(_, p)| is_tnn(p, &tol()))
            .collect();
        assert_eq!(tnn.len(), 1);
        assert!(projective_equal(&tnn[0].1, &v0, &tol()).unwrap());
    }

    #[test]
    fn excluded_root_sets_are_not_inversion_closed() {
        // S = {zeta, zeta^3} at (2,4): inverse set is the conjugates
        use std::f64::consts::PI;
        let s = RootSet::new(
            2,
            4,
            cr(1.0),
            vec![
                C64::from_polar(1.0, PI / 4.0),
                C64::from_polar(1.0, 3.0 * PI / 4.0),
            ],
        )
        .unwrap();
        assert!(!s.closed_under_inversion(1e-8));
        let cands = twist_fixed_candidates(2, 4, cr(1.0)).unwrap();
        for (cs, _) in &cands {
            let same = cs
                .roots()
                .iter()
                .zip(s.roots())
                .all(|(a, b)| (a - b).norm() < 1e-9);
            assert!(!same);
        }
    }
}

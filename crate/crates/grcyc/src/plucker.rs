use crate::cmatrix::{cr, C64, CMat};
use crate::error::{Error, Result};
use crate::subset::{sort_sign, Subset, SubsetTable};
use crate::tol::TolerancePolicy;

/// A k-by-n matrix whose row span represents a point of the Grassmannian.
#[derive(Debug, Clone)]
pub struct MatrixKxN {
    k: usize,
    n: usize,
    mat: CMat,
}

impl MatrixKxN {
    pub fn new(k: usize, n: usize, mat: CMat) -> Result<Self> {
        if mat.nrows() != k || mat.ncols() != n || k == 0 || k > n {
            return Err(Error::InvalidConfig {
                reason: format!(
                    "expected {}x{} matrix with 1 <= k <= n, got {}x{}",
                    k,
                    n,
                    mat.nrows(),
                    mat.ncols()
                ),
            });
        }
        if !mat.is_finite() {
            return Err(Error::InvalidConfig {
                reason: "matrix entries must be finite".into(),
            });
        }
        Ok(Self { k, n, mat })
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        Self::new(k, n, CMat::from_rows(rows))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    /// The k x k minor in the given columns (1-based subset).
    pub fn minor(&self, cols: &Subset) -> C64 {
        let idx: Vec<usize> = cols.members().iter().map(|&j| j - 1).collect();
        let rows: Vec<usize> = (0..self.k).collect();
        self.mat.submatrix(&rows, &idx).det()
    }

    /// All maximal minors in lex subset order, unnormalized.
    pub fn raw_minors(&self) -> Vec<C64> {
        let table = SubsetTable::new(self.k, self.n);
        table.iter().map(|s| self.minor(s)).collect()
    }

    /// Row span image under the linear map with matrix `m` (acting on column
    /// vectors), i.e. the matrix A * m^T.
    pub fn apply_linear_map(&self, m: &CMat) -> Result<MatrixKxN> {
        if m.nrows() != self.n || m.ncols() != self.n {
            return Err(Error::InvalidConfig {
                reason: format!("map must be {0}x{0}", self.n),
            });
        }
        MatrixKxN::new(self.k, self.n, self.mat.matmul(&m.transpose()))
    }

    /// Rescales each row to unit max modulus. Leaves the row span unchanged;
    /// used before minor extraction when entries may overflow (flow at large
    /// times).
    pub fn equilibrate_rows(&self) -> MatrixKxN {
        let mut rows = Vec::with_capacity(self.k);
        for i in 0..self.k {
            let r = self.mat.row(i);
            let m = r.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
            let s = if m > 0.0 { 1.0 / m } else { 1.0 };
            rows.push(r.iter().map(|z| z * s).collect());
        }
        MatrixKxN::new(self.k, self.n, CMat::from_rows(rows)).expect("shape preserved")
    }
}

/// A point of Gr_{k,n} stored by its Plucker coordinates in canonical
/// projective form: the maximum-modulus coordinate (lexicographically first
/// among ties) is exactly 1.
#[derive(Debug, Clone)]
pub struct PluckerVector {
    k: usize,
    n: usize,
    coords: Vec<C64>,
}

impl PluckerVector {
    /// Canonicalizes an arbitrary nonzero coordinate vector given in lex
    /// subset order.
    pub fn from_raw(k: usize, n: usize, mut coords: Vec<C64>) -> Result<Self> {
        let expected = crate::subset::binomial(n, k);
        if coords.len() != expected || k == 0 || k > n {
            return Err(Error::InvalidConfig {
                reason: format!(
                    "expected {} coordinates for ({},{}), got {}",
                    expected,
                    k,
                    n,
                    coords.len()
                ),
            });
        }
        if coords
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidConfig {
                reason: "coordinates must be finite".into(),
            });
        }
        let pivot = pivot_index(&coords);
        let pv = coords[pivot];
        if pv.norm() == 0.0 {
            return Err(Error::InvalidConfig {
                reason: "coordinate vector is identically zero".into(),
            });
        }
        for z in coords.iter_mut() {
            *z /= pv;
        }
        coords[pivot] = cr(1.0);
        Ok(Self { k, n, coords })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> SubsetTable {
        SubsetTable::new(self.k, self.n)
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn get(&self, s: &Subset) -> C64 {
        let table = SubsetTable::new(self.k, self.n);
        self.coords[table.position(s)]
    }

    /// Coordinate at an arbitrarily ordered index list: the sign of the
    /// sorting permutation times the set-indexed coordinate; zero on repeats.
    pub fn get_ordered(&self, indices: &[usize]) -> C64 {
        let sign = sort_sign(indices);
        if sign == 0 {
            return cr(0.0);
        }
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        let table = SubsetTable::new(self.k, self.n);
        self.coords[table.position_of_members(&sorted)] * cr(sign as f64)
    }

    /// Index of the canonical pivot (the coordinate equal to 1).
    pub fn pivot(&self) -> usize {
        pivot_index(&self.coords)
    }

    pub fn same_shape(&self, other: &PluckerVector) -> bool {
        self.k == other.k && self.n == other.n
    }
}

fn pivot_index(coords: &[C64]) -> usize {
    let mut best = 0usize;
    let mut best_norm = coords[0].norm();
    for (i, z) in coords.iter().enumerate().skip(1) {
        let v = z.norm();
        if v > best_norm {
            best_norm = v;
            best = i;
        }
    }
    best
}

/// Point of Gr_{k,n} represented by the row span of `a`.
///
/// Every maximal minor is computed independently; the result is the
/// canonicalized coordinate vector.
pub fn plucker_from_matrix(a: &MatrixKxN) -> Result<PluckerVector> {
    let minors = a.raw_minors();
    let max_minor = minors.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    // Hadamard-style scale: product of row norms bounds every minor.
    let mut scale = 1.0f64;
    for i in 0..a.k() {
        let norm: f64 = a.mat().row(i).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        scale *= norm;
    }
    if max_minor < TolerancePolicy::default().zero_eps * scale.max(1e-300) {
        return Err(Error::RankDeficient { k: a.k() });
    }
    PluckerVector::from_raw(a.k(), a.n(), minors)
}

/// Symmetric projective distance between two points: each side is rescaled
/// so that it equals 1 at the other's pivot coordinate, and the max
/// coordinatewise deviation is taken. Returns +inf when either pivot
/// coordinate vanishes on the other side.
pub fn projective_distance(p: &PluckerVector, q: &PluckerVector) -> f64 {
    assert!(p.same_shape(q), "projective_distance: shape mismatch");
    let one_sided = |x: &PluckerVector, y: &PluckerVector| -> f64 {
        let piv = x.pivot();
        let yp = y.coords[piv];
        if yp.norm() == 0.0 {
            return f64::INFINITY;
        }
        // scalar aligning y with x at x's largest coordinate
        let s = x.coords[piv] / yp;
        x.coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| (a - b * s).norm())
            .fold(0.0, f64::max)
    };
    one_sided(p, q).max(one_sided(q, p))
}

/// Equality up to a global nonzero scalar, within `abs_eps + rel_eps` (the
/// canonical form has unit max modulus).
pub fn projective_equal(p: &PluckerVector, q: &PluckerVector, tol: &TolerancePolicy) -> Result<bool> {
    if !p.same_shape(q) {
        return Err(Error::ShapeMismatch {
            k1: p.k,
            n1: p.n,
            k2: q.k,
            n2: q.n,
        });
    }
    Ok(projective_distance(p, q) <= tol.abs_eps + tol.rel_eps)
}

/// The point of Gr_{n-k,n} orthogonal to `p` under the alternating-sign
/// bilinear form <v,w> = sum_j (-1)^{j-1} v_j w_j. Its coordinate at I^c
/// equals the coordinate of `p` at I, up to one global scalar.
pub fn orthogonal_complement(p: &PluckerVector) -> Result<PluckerVector> {
    let a = matrix_from_plucker(p)?;
    let n = p.n();
    // W = null space of A * D, D = diag(+1,-1,+1,...)
    let ad = CMat::from_fn(p.k(), n, |i, j| {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        a.mat()[(i, j)] * cr(sign)
    });
    let basis = ad.nullspace(1e-12);
    if basis.nrows() != n - p.k() {
        return Err(Error::RankDeficient { k: p.k() });
    }
    let w = MatrixKxN::new(n - p.k(), n, basis)?;
    plucker_from_matrix(&w)
}

/// Recovers a representative matrix from Plucker coordinates: in the chart
/// where the pivot subset's columns form the identity, the remaining entries
/// are ratios of (ordered) Plucker coordinates.
pub fn matrix_from_plucker(p: &PluckerVector) -> Result<MatrixKxN> {
    let table = SubsetTable::new(p.k(), p.n());
    let pivot_subset = table.get(p.pivot()).clone();
    let pv = p.coords[p.pivot()];
    let members = pivot_subset.members();
    let mut rows = vec![vec![cr(0.0); p.n()]; p.k()];
    for r in 0..p.k() {
        for col in 1..=p.n() {
            let mut idx: Vec<usize> = members.to_vec();
            idx[r] = col;
            rows[r][col - 1] = p.get_ordered(&idx) / pv;
        }
    }
    MatrixKxN::from_rows(rows)
}

/// Row-span image of a point under an invertible n x n linear map.
pub fn apply_row_span_map(m: &CMat, p: &PluckerVector) -> Result<PluckerVector> {
    let scale = m.max_norm();
    let detm = m.det();
    if scale == 0.0
        || detm.norm() <= TolerancePolicy::default().zero_eps * scale.powi(m.nrows() as i32)
    {
        return Err(Error::SingularMap);
    }
    let a = matrix_from_plucker(p)?;
    plucker_from_matrix(&a.apply_linear_map(m)?.equilibrate_rows())
}

/// Largest relative violation of the three-term Plucker relations
/// D_{Sac} D_{Sbd} = D_{Sab} D_{Scd} + D_{Sad} D_{Sbc}.
pub fn plucker_relation_residual(p: &PluckerVector) -> f64 {
    let (k, n) = (p.k(), p.n());
    if k < 2 || n < k + 2 {
        return 0.0;
    }
    let table = SubsetTable::new(k, n);
    let small = SubsetTable::new(k - 2, n);
    let mut worst = 0.0f64;
    for s in small.iter() {
        let free: Vec<usize> = (1..=n).filter(|i| !s.contains(*i)).collect();
        for ia in 0..free.len() {
            for ib in (ia + 1)..free.len() {
                for ic in (ib + 1)..free.len() {
                    for id in (ic + 1)..free.len() {
                        let (a, b, c, d) = (free[ia], free[ib], free[ic], free[id]);
                        let coord = |x: usize, y: usize| -> C64 {
                            let mut m = s.members().to_vec();
                            m.push(x);
                            m.push(y);
                            m.sort_unstable();
                            p.coords()[table.position_of_members(&m)]
                        };
                        let t1 = coord(a, c) * coord(b, d);
                        let t2 = coord(a, b) * coord(c, d);
                        let t3 = coord(a, d) * coord(b, c);
                        let scale = t1.norm() + t2.norm() + t3.norm();
                        let resid = (t1 - t2 - t3).norm() / scale.max(1e-30);
                        worst = worst.max(resid);
                    }
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::c;
    use proptest::{prop_assert, proptest};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_point(k: usize, n: usize, seed: u64) -> PluckerVector {
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
                return p;
            }
        }
    }

    #[test]
    fn minors_of_tnn_example() {
        // span{(1,0,0,-1),(-1,2,1,3)}: brute-force 2x2 determinants
        let a = MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(0.0), cr(0.0), cr(-1.0)],
            vec![cr(-1.0), cr(2.0), cr(1.0), cr(3.0)],
        ])
        .unwrap();
        let raw = a.raw_minors();
        let expected = [2.0, 1.0, 2.0, 0.0, 2.0, 1.0];
        for (got, want) in raw.iter().zip(expected) {
            assert!((got - cr(want)).norm() < 1e-12, "{:?} vs {}", got, want);
        }
    }

    #[test]
    fn identity_case() {
        let a = MatrixKxN::from_rows(vec![vec![cr(1.0), cr(0.0)], vec![cr(0.0), cr(1.0)]]).unwrap();
        let p = plucker_from_matrix(&a).unwrap();
        assert!((p.coords()[0] - cr(1.0)).norm() < 1e-15);
    }

    #[test]
    fn octagon_matrix_minors() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let a = MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(r), cr(0.0), cr(-r)],
            vec![cr(0.0), cr(r), cr(1.0), cr(r)],
        ])
        .unwrap();
        let raw = a.raw_minors();
        let expected = [r, 1.0, r, r, 1.0, r];
        for (got, want) in raw.iter().zip(expected) {
            assert!((got - cr(want)).norm() < 1e-12);
        }
    }

    #[test]
    fn rank_deficient_detected() {
        let a = MatrixKxN::from_rows(vec![
            vec![cr(1.0), cr(2.0), cr(3.0)],
            vec![cr(2.0), cr(4.0), cr(6.0)],
        ])
        .unwrap();
        assert!(matches!(
            plucker_from_matrix(&a),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn global_scalar_is_projectively_trivial() {
        let p = random_point(2, 5, 7);
        let scaled: Vec<C64> = p.coords().iter().map(|z| z * c(0.0, 5.0)).collect();
        let q = PluckerVector::from_raw(2, 5, scaled).unwrap();
        assert!(projective_equal(&p, &q, &TolerancePolicy::default()).unwrap());
    }

    #[test]
    fn shape_mismatch_rejected() {
        let p = random_point(2, 4, 1);
        let q = random_point(2, 5, 2);
        assert!(matches!(
            projective_equal(&p, &q, &TolerancePolicy::default()),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn complement_line_in_plane() {
        // span(1,2) in Gr_{1,2} -> span(2,1)
        let p = PluckerVector::from_raw(1, 2, vec![cr(1.0), cr(2.0)]).unwrap();
        let w = orthogonal_complement(&p).unwrap();
        // Delta_1(V)=1=Delta_2(W), Delta_2(V)=2=Delta_1(W) up to scale
        let ratio = w.coords()[0] / w.coords()[1];
        assert!((ratio - cr(2.0)).norm() < 1e-12);

        // symmetric case span(1,1) -> span(1,1)
        let p = PluckerVector::from_raw(1, 2, vec![cr(1.0), cr(1.0)]).unwrap();
        let w = orthogonal_complement(&p).unwrap();
        assert!(projective_equal(&p, &w, &TolerancePolicy::default()).unwrap());
    }

    #[test]
    fn complement_matches_index_complement() {
        // Delta_I(V) = Delta_{I^c}(W) up to one global scalar, random points
        for seed in 0..5u64 {
            for &(k, n) in &[(2usize, 5usize), (3, 6), (2, 4)] {
                let p = random_point(k, n, 100 + seed);
                let w = orthogonal_complement(&p).unwrap();
                let tp = SubsetTable::new(k, n);
                let tw = SubsetTable::new(n - k, n);
                let mut ratio: Option<C64> = None;
                for (i, s) in tp.iter().enumerate() {
                    let vw = w.coords()[tw.position(&s.complement())];
                    let vp = p.coords()[i];
                    if vp.norm() > 1e-8 {
                        let r = vw / vp;
                        if let Some(r0) = ratio {
                            assert!((r - r0).norm() < 1e-8 * r0.norm().max(1.0));
                        } else {
                            ratio = Some(r);
                        }
                    } else {
                        assert!(vw.norm() < 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn complement_is_involution() {
        for seed in 0..100u64 {
            let p = random_point(2, 5, 1000 + seed);
            let w = orthogonal_complement(&orthogonal_complement(&p).unwrap()).unwrap();
            assert!(projective_equal(&p, &w, &TolerancePolicy::default()).unwrap());
        }
    }

    #[test]
    fn reconstruction_roundtrip() {
        for seed in 0..20u64 {
            for &(k, n) in &[(1usize, 4usize), (2, 4), (2, 5), (3, 6), (3, 7)] {
                let p = random_point(k, n, 300 + seed);
                let a = matrix_from_plucker(&p).unwrap();
                let q = plucker_from_matrix(&a).unwrap();
                assert!(
                    projective_distance(&p, &q) < 1e-10,
                    "({},{}) seed {}: dist {}",
                    k,
                    n,
                    seed,
                    projective_distance(&p, &q)
                );
            }
        }
    }

    #[test]
    fn row_span_map_identity_and_left_multiplication() {
        let p = random_point(2, 4, 5);
        let q = apply_row_span_map(&CMat::identity(4), &p).unwrap();
        assert!(projective_equal(&p, &q, &TolerancePolicy::default()).unwrap());

        // invariance under left multiplication by invertible k x k
        let a = matrix_from_plucker(&p).unwrap();
        let g = CMat::from_rows(vec![vec![c(1.0, 1.0), cr(2.0)], vec![cr(0.0), c(0.0, -3.0)]]);
        let ga = MatrixKxN::new(2, 4, g.matmul(a.mat())).unwrap();
        let q = plucker_from_matrix(&ga).unwrap();
        assert!(projective_equal(&p, &q, &TolerancePolicy::default()).unwrap());
    }

    #[test]
    fn singular_map_rejected() {
        let p = random_point(2, 4, 6);
        let z = CMat::zeros(4, 4);
        assert!(matches!(
            apply_row_span_map(&z, &p),
            Err(Error::SingularMap)
        ));
    }

    proptest! {
        #[test]
        fn three_term_relations_hold(seed in 0u64..500) {
            let p = random_point(2, 5, seed);
            prop_assert!(plucker_relation_residual(&p) < 1e-8);
        }

        #[test]
        fn three_term_relations_hold_gr36(seed in 0u64..100) {
            let p = random_point(3, 6, seed);
            prop_assert!(plucker_relation_residual(&p) < 1e-8);
        }
    }
}

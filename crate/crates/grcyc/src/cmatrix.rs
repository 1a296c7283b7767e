use crate::error::{Error, Result};
use num_complex::Complex64;

pub type C64 = Complex64;

/// Dense row-major complex matrix. Everything here is desk scale (n <= 12),
/// so plain Gaussian elimination with partial pivoting is used throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Submatrix with the given (0-based) row and column selections.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> CMat {
        CMat::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self[(row_idx[i], col_idx[j])]
        })
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> C64 {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return C64::new(1.0, 0.0);
        }
        let mut a = self.clone();
        let mut det = C64::new(1.0, 0.0);
        for col in 0..n {
            let mut piv = col;
            let mut best = a[(col, col)].norm();
            for r in (col + 1)..n {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if piv != col {
                a.swap_rows(piv, col);
                det = -det;
            }
            let d = a[(col, col)];
            det *= d;
            for r in (col + 1)..n {
                let factor = a[(r, col)] / d;
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for c in col..n {
                    let v = a[(col, c)];
                    a[(r, c)] -= factor * v;
                }
            }
        }
        det
    }

    /// Solves A x = b for square A. Fails when the pivot collapses numerically.
    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.to_vec();
        let scale = self
            .data
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        for col in 0..n {
            let mut piv = col;
            let mut best = a[(col, col)].norm();
            for r in (col + 1)..n {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best <= 1e-14 * scale {
                return Err(Error::SingularMap);
            }
            if piv != col {
                a.swap_rows(piv, col);
                x.swap(piv, col);
            }
            let d = a[(col, col)];
            for r in (col + 1)..n {
                let factor = a[(r, col)] / d;
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for c in col..n {
                    let v = a[(col, c)];
                    a[(r, c)] -= factor * v;
                }
                let xv = x[col];
                x[r] -= factor * xv;
            }
        }
        for col in (0..n).rev() {
            let mut acc = x[col];
            for c in (col + 1)..n {
                acc -= a[(col, c)] * x[c];
            }
            x[col] = acc / a[(col, col)];
        }
        Ok(x)
    }

    /// Basis of the right null space {x : A x = 0}, as rows of the result.
    /// `rel_eps` is the pivot threshold relative to the largest entry.
    pub fn nullspace(&self, rel_eps: f64) -> CMat {
        let mut a = self.clone();
        let (m, n) = (self.rows, self.cols);
        let scale = a
            .data
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row >= m {
                break;
            }
            let mut piv = row;
            let mut best = a[(row, col)].norm();
            for r in (row + 1)..m {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best <= rel_eps * scale {
                continue;
            }
            if piv != row {
                a.swap_rows(piv, row);
            }
            let d = a[(row, col)];
            for r in 0..m {
                if r == row {
                    continue;
                }
                let factor = a[(r, col)] / d;
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    let v = a[(row, c)];
                    a[(r, c)] -= factor * v;
                }
            }
            let inv = C64::new(1.0, 0.0) / d;
            for c in 0..n {
                a[(row, c)] *= inv;
            }
            pivot_cols.push(col);
            row += 1;
        }
        let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = CMat::zeros(free_cols.len(), n);
        for (bi, &fc) in free_cols.iter().enumerate() {
            basis[(bi, fc)] = C64::new(1.0, 0.0);
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                basis[(bi, pc)] = -a[(ri, fc)];
            }
        }
        basis
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small_cases() {
        let m = CMat::from_rows(vec![vec![cr(1.0), cr(2.0)], vec![cr(3.0), cr(4.0)]]);
        assert!((m.det() - cr(-2.0)).norm() < 1e-14);
        let id = CMat::identity(5);
        assert!((id.det() - cr(1.0)).norm() < 1e-14);
    }

    #[test]
    fn det_complex_vandermonde() {
        // det [[1, 1], [z1, z2]] = z2 - z1
        let z1 = c(0.3, 0.7);
        let z2 = c(-1.1, 0.2);
        let m = CMat::from_rows(vec![vec![cr(1.0), cr(1.0)], vec![z1, z2]]);
        assert!((m.det() - (z2 - z1)).norm() < 1e-14);
    }

    #[test]
    fn solve_roundtrip() {
        let m = CMat::from_rows(vec![
            vec![c(2.0, 1.0), cr(1.0), cr(0.0)],
            vec![cr(0.0), c(1.0, -1.0), cr(3.0)],
            vec![cr(5.0), cr(0.0), c(0.0, 1.0)],
        ]);
        let x_true = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)];
        let b: Vec<C64> = (0..3)
            .map(|i| (0..3).map(|j| m[(i, j)] * x_true[j]).sum())
            .collect();
        let x = m.solve(&b).unwrap();
        for (a, b) in x.iter().zip(&x_true) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn solve_singular_fails() {
        let m = CMat::from_rows(vec![vec![cr(1.0), cr(2.0)], vec![cr(2.0), cr(4.0)]]);
        assert!(m.solve(&[cr(1.0), cr(1.0)]).is_err());
    }

    #[test]
    fn nullspace_dimension_and_orthogonality() {
        // rank-2 matrix in C^4 -> nullspace of dimension 2
        let m = CMat::from_rows(vec![
            vec![cr(1.0), cr(0.0), cr(1.0), cr(2.0)],
            vec![cr(0.0), cr(1.0), cr(-1.0), cr(1.0)],
        ]);
        let ns = m.nullspace(1e-12);
        assert_eq!(ns.nrows(), 2);
        for b in 0..ns.nrows() {
            for r in 0..m.nrows() {
                let dot: C64 = (0..4).map(|j| m[(r, j)] * ns[(b, j)]).sum();
                assert!(dot.norm() < 1e-12);
            }
        }
    }
}

use crate::cmatrix::{cr, C64, CMat};
use crate::error::{Error, Result};
use crate::plucker::PluckerVector;
use crate::subset::SubsetTable;

/// The j-th elementary symmetric polynomial of the inputs; zero outside
/// 0 <= j <= len.
pub fn elementary_symmetric(j: i64, zs: &[C64]) -> C64 {
    if j < 0 || j as usize > zs.len() {
        return cr(0.0);
    }
    // expand prod (1 + z x) one factor at a time
    let mut coeffs = vec![cr(0.0); zs.len() + 1];
    coeffs[0] = cr(1.0);
    for (i, &z) in zs.iter().enumerate() {
        for d in (1..=i + 1).rev() {
            let lower = coeffs[d - 1];
            coeffs[d] += z * lower;
        }
    }
    coeffs[j as usize]
}

/// A point of the Peterson variety: the identity, or the banded
/// unitriangular Toeplitz matrix built from a root set with equal n-th
/// powers.
#[derive(Debug, Clone)]
pub struct ToeplitzPoint {
    k: usize,
    n: usize,
    zs: Option<Vec<C64>>,
    matrix: CMat,
}

impl ToeplitzPoint {
    pub fn identity(k: usize, n: usize) -> Self {
        Self {
            k,
            n,
            zs: None,
            matrix: CMat::identity(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.zs.is_none()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zs(&self) -> Option<&[C64]> {
        self.zs.as_deref()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }
}

/// The Toeplitz matrix with (r,s) entry e_{s-r}(zs). Roots must be distinct,
/// nonzero, and share their n-th power.
pub fn toeplitz_u(k: usize, n: usize, zs: &[C64]) -> Result<ToeplitzPoint> {
    if zs.len() != k {
        return Err(Error::InvalidRoots {
            reason: format!("expected {} roots, got {}", k, zs.len()),
        });
    }
    if zs.iter().any(|z| z.norm() == 0.0) {
        return Err(Error::InvalidRoots {
            reason: "roots must be nonzero".into(),
        });
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if (zs[i] - zs[j]).norm() <= 1e-10 {
                return Err(Error::InvalidRoots {
                    reason: "roots must be distinct".into(),
                });
            }
        }
    }
    let p0 = zs[0].powi(n as i32);
    for z in zs {
        if (z.powi(n as i32) - p0).norm() > 1e-9 * p0.norm().max(1.0) {
            return Err(Error::InvalidRoots {
                reason: "roots must have equal n-th powers".into(),
            });
        }
    }
    let es: Vec<C64> = (0..n as i64).map(|j| elementary_symmetric(j, zs)).collect();
    let matrix = CMat::from_fn(n, n, |r, s| {
        if s >= r {
            es[s - r]
        } else {
            cr(0.0)
        }
    });
    Ok(ToeplitzPoint {
        k,
        n,
        zs: Some(zs.to_vec()),
        matrix,
    })
}

/// Embedding of the Peterson variety into Gr_{k,n}: the coordinate at I is
/// the minor of g on rows I^c and columns {k+1, ..., n}.
pub fn gamma_embed(g: &ToeplitzPoint) -> Result<PluckerVector> {
    let (k, n) = (g.k(), g.n());
    let table = SubsetTable::new(k, n);
    let cols: Vec<usize> = (k..n).collect();
    let coords: Vec<C64> = table
        .iter()
        .map(|s| {
            let rows: Vec<usize> = s.complement().members().iter().map(|&i| i - 1).collect();
            g.matrix().submatrix(&rows, &cols).det()
        })
        .collect();
    PluckerVector::from_raw(k, n, coords)
}

/// The quantum-parameter function: 0 at the identity, (-1)^{k-1} z_1^n on
/// the Toeplitz stratum.
pub fn q_value(g: &ToeplitzPoint) -> C64 {
    match g.zs() {
        None => cr(0.0),
        Some(zs) => {
            let sign = if g.k() % 2 == 1 { 1.0 } else { -1.0 };
            cr(sign) * zs[0].powi(g.n() as i32)
        }
    }
}

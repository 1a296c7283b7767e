use crate::cmatrix::C64;
use crate::error::{Error, Result};
use crate::plucker::PluckerVector;
use crate::subset::SubsetTable;
use crate::tol::TolerancePolicy;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// A sparse integer exponent vector over the lex-ordered k-subsets.
#[derive(Debug, Clone)]
pub struct ExponentVector {
    pub entries: Vec<(usize, i64)>,
}

/// Basis of the lattice of Laurent monomials in the Plucker coordinates
/// invariant under both independent column rescaling and the global scalar.
#[derive(Debug, Clone)]
pub struct InvariantBasis {
    pub k: usize,
    pub n: usize,
    pub vectors: Vec<ExponentVector>,
}

fn basis_cache() -> &'static Mutex<HashMap<(usize, usize), &'static InvariantBasis>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), &'static InvariantBasis>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns the cached invariant-monomial basis for (k,n), computing it once.
pub fn invariant_basis(k: usize, n: usize) -> &'static InvariantBasis {
    let mut cache = basis_cache().lock().expect("basis cache poisoned");
    if let Some(b) = cache.get(&(k, n)) {
        return b;
    }
    let basis = Box::leak(Box::new(compute_invariant_basis(k, n)));
    cache.insert((k, n), basis);
    basis
}

/// Integer kernel of the transposed weight matrix by unimodular column
/// reduction: M is (n+1) x N with column I = (indicator of I, 1); columns of
/// the running transform U that reduce to zero in M span the kernel lattice.
fn compute_invariant_basis(k: usize, n: usize) -> InvariantBasis {
    let table = SubsetTable::new(k, n);
    let ncols = table.len();
    let nrows = n + 1;
    let mut m: Vec<Vec<i64>> = vec![vec![0; ncols]; nrows];
    for (j, s) in table.iter().enumerate() {
        for &i in s.members() {
            m[i - 1][j] = 1;
        }
        m[n][j] = 1;
    }
    // u starts as the identity on columns
    let mut u: Vec<Vec<i64>> = (0..ncols)
        .map(|j| {
            let mut col = vec![0i64; ncols];
            col[j] = 1;
            col
        })
        .collect();
    let col_swap = |m: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, a: usize, b: usize| {
        if a != b {
            for row in m.iter_mut() {
                row.swap(a, b);
            }
            u.swap(a, b);
        }
    };
    let col_axpy = |m: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, dst: usize, src: usize, f: i64| {
        for row in m.iter_mut() {
            row[dst] -= f * row[src];
        }
        let (lo, hi) = if dst < src { (dst, src) } else { (src, dst) };
        let (left, right) = u.split_at_mut(hi);
        let (d, s) = if dst < src {
            (&mut left[lo], &right[0])
        } else {
            (&mut right[0], &left[lo])
        };
        for (dv, sv) in d.iter_mut().zip(s.iter()) {
            *dv -= f * sv;
        }
    };
    let mut pivot_col = 0usize;
    for row in 0..nrows {
        if pivot_col >= ncols {
            break;
        }
        loop {
            // smallest nonzero |entry| in this row at columns >= pivot_col
            let mut best: Option<(usize, i64)> = None;
            for j in pivot_col..ncols {
                let v = m[row][j];
                if v != 0 && best.map_or(true, |(_, bv)| v.abs() < bv.abs()) {
                    best = Some((j, v));
                }
            }
            let Some((bj, bv)) = best else {
                break;
            };
            col_swap(&mut m, &mut u, pivot_col, bj);
            let mut reduced_all = true;
            for j in (pivot_col + 1)..ncols {
                let q = m[row][j].div_euclid(bv);
                if q != 0 {
                    col_axpy(&mut m, &mut u, j, pivot_col, q);
                }
                if m[row][j] != 0 {
                    reduced_all = false;
                }
            }
            if reduced_all {
                pivot_col += 1;
                break;
            }
        }
    }
    let mut vectors = Vec::new();
    for j in pivot_col..ncols {
        debug_assert!((0..nrows).all(|r| m[r][j] == 0));
        let entries: Vec<(usize, i64)> = u[j]
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i, v))
            .collect();
        vectors.push(ExponentVector { entries });
    }
    InvariantBasis { k, n, vectors }
}

/// Evaluates the invariant monomial ratio prod_I (p_I / q_I)^{m_I}.
fn monomial_ratio(p: &PluckerVector, q: &PluckerVector, v: &ExponentVector) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for &(i, e) in &v.entries {
        let r = p.coords()[i] / q.coords()[i];
        acc *= r.powi(e as i32);
    }
    acc
}

/// True iff `p` and `q` differ by column rescalings and a global scalar.
/// Both points must be nowhere zero; a vanishing coordinate is an error,
/// never a `false`.
pub fn torus_equivalent(p: &PluckerVector, q: &PluckerVector, tol: &TolerancePolicy) -> Result<bool> {
    if !p.same_shape(q) {
        return Err(Error::ShapeMismatch {
            k1: p.k(),
            n1: p.n(),
            k2: q.k(),
            n2: q.n(),
        });
    }
    let table = SubsetTable::new(p.k(), p.n());
    for (i, (a, b)) in p.coords().iter().zip(q.coords()).enumerate() {
        if a.norm() <= tol.zero_eps || b.norm() <= tol.zero_eps {
            return Err(Error::ZeroCoordinate {
                subset: table.get(i).to_string(),
            });
        }
    }
    Ok(torus_residual(p, q) <= tol.abs_eps + tol.rel_eps)
}

/// Max deviation |ratio - 1| over the invariant-monomial basis.
pub fn torus_residual(p: &PluckerVector, q: &PluckerVector) -> f64 {
    let basis = invariant_basis(p.k(), p.n());
    basis
        .vectors
        .iter()
        .map(|v| (monomial_ratio(p, q, v) - C64::new(1.0, 0.0)).norm())
        .fold(0.0, f64::max)
}

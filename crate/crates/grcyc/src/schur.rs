use crate::cmatrix::{C64, CMat};
use crate::cyclic::{v_s, RootSet};
use crate::error::{Error, Result};
use crate::subset::{Subset, SubsetTable};
use serde::Serialize;
use std::f64::consts::PI;

/// A partition inside the k x (n-k) box, padded with zeros to k parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
    k: usize,
    width: usize,
}

impl Partition {
    pub fn new(parts: &[usize], k: usize, n: usize) -> Result<Self> {
        assert!(k >= 1 && k < n, "box requires 1 <= k < n");
        let width = n - k;
        if parts.len() > k {
            return Err(Error::InvalidConfig {
                reason: format!("more than {} parts: {:?}", k, parts),
            });
        }
        let mut padded = parts.to_vec();
        padded.resize(k, 0);
        for w in padded.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidConfig {
                    reason: format!("parts not weakly decreasing: {:?}", parts),
                });
            }
        }
        if padded.first().copied().unwrap_or(0) > width {
            return Err(Error::InvalidConfig {
                reason: format!("part exceeds box width {}: {:?}", width, parts),
            });
        }
        Ok(Self {
            parts: padded,
            k,
            width,
        })
    }

    pub fn empty(k: usize, n: usize) -> Self {
        Self::new(&[], k, n).expect("empty partition always fits")
    }

    /// All partitions in the k x (n-k) box, by ascending size then lex.
    pub fn all_in_box(k: usize, n: usize) -> Vec<Partition> {
        let width = n - k;
        let mut out = Vec::new();
        let mut current = vec![0usize; k];
        loop {
            out.push(Partition {
                parts: current.clone(),
                k,
                width,
            });
            // next partition in colex-style counting: increment the last
            // part that can grow while staying weakly decreasing
            let mut i = k;
            loop {
                if i == 0 {
                    out.sort_by_key(|p| (p.size(), p.parts.clone()));
                    return out;
                }
                i -= 1;
                let cap = if i == 0 { width } else { current[i - 1] };
                if current[i] < cap {
                    current[i] += 1;
                    for j in (i + 1)..k {
                        current[j] = 0;
                    }
                    break;
                }
            }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn box_width(&self) -> usize {
        self.width
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The subset {lambda_k + 1, lambda_{k-1} + 2, ..., lambda_1 + k}.
    pub fn jump_subset(&self, n: usize) -> Subset {
        let members: Vec<usize> = (1..=self.k)
            .map(|i| self.parts[self.k - i] + i)
            .collect();
        Subset::new(n, members).expect("partition in box yields a valid subset")
    }

    /// 180-degree complement inside the box: (w - lambda_k, ..., w - lambda_1).
    pub fn complement(&self) -> Partition {
        let parts: Vec<usize> = self.parts.iter().rev().map(|&p| self.width - p).collect();
        Partition {
            parts,
            k: self.k,
            width: self.width,
        }
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Bialternant evaluation det(z_r^{lambda_{k+1-s}+s-1}) / det(z_r^{s-1}).
/// Nearly coincident points are refused rather than handled by a different
/// algorithm.
pub fn schur_eval(lambda: &Partition, zs: &[C64]) -> Result<C64> {
    let k = zs.len();
    assert_eq!(lambda.k(), k, "partition and point size differ");
    for i in 0..k {
        for j in (i + 1)..k {
            let d = (zs[i] - zs[j]).norm();
            if d < 1e-6 {
                return Err(Error::CoincidentPoints { dist: d });
            }
        }
    }
    let numer = CMat::from_fn(k, k, |r, s| {
        let e = lambda.parts()[k - 1 - s] + s;
        zs[r].powi(e as i32)
    })
    .det();
    let denom = CMat::from_fn(k, k, |r, s| zs[r].powi(s as i32)).det();
    Ok(numer / denom)
}

/// Schur value as a ratio of Plucker coordinates of the root subspace:
/// D_{jump(lambda)}(V_S) / D_{1..k}(V_S).
pub fn schur_via_plucker(lambda: &Partition, s: &RootSet) -> Result<C64> {
    let p = v_s(s)?;
    let table = SubsetTable::new(s.k(), s.n());
    let denom_subset = Subset::new(s.n(), (1..=s.k()).collect()).expect("base subset");
    let denom = p.coords()[table.position(&denom_subset)];
    if denom.norm() <= 1e-10 {
        return Err(Error::ZeroDenominator {
            subset: denom_subset.to_string(),
        });
    }
    let numer = p.coords()[table.position(&lambda.jump_subset(s.n()))];
    Ok(numer / denom)
}

/// Closed form at the distinguished root set:
/// t^{|lambda|/n} prod_{r<s} sin((lambda_r - lambda_s + s - r) pi / n) / sin((s - r) pi / n).
pub fn schur_sine_formula(lambda: &Partition, k: usize, n: usize, t: f64) -> f64 {
    assert!(t > 0.0);
    assert_eq!(lambda.k(), k);
    let mut val = t.powf(lambda.size() as f64 / n as f64);
    let parts = lambda.parts();
    for r in 0..k {
        for s in (r + 1)..k {
            let a = (parts[r] as f64 - parts[s] as f64 + (s - r) as f64) * PI / n as f64;
            let b = (s - r) as f64 * PI / n as f64;
            val *= a.sin() / b.sin();
        }
    }
    val
}

#[derive(Debug, Clone, Serialize)]
pub struct ModulusReport {
    pub lambda: Vec<usize>,
    pub modulus: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Checks |s_lambda(zs)| <= s_lambda(S_0) for unit-modulus roots with equal
/// n-th powers; reports both sides.
pub fn modulus_inequality_check(
    lambda: &Partition,
    zs: &[C64],
    n: usize,
) -> Result<ModulusReport> {
    for z in zs {
        if (z.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidRoots {
                reason: format!("|{}| != 1", z),
            });
        }
    }
    let p0 = zs[0].powi(n as i32);
    for z in zs {
        if (z.powi(n as i32) - p0).norm() > 1e-9 {
            return Err(Error::InvalidRoots {
                reason: "roots must have equal n-th powers".into(),
            });
        }
    }
    let value = schur_eval(lambda, zs)?;
    let bound = schur_sine_formula(lambda, zs.len(), n, 1.0);
    Ok(ModulusReport {
        lambda: lambda.parts().to_vec(),
        modulus: value.norm(),
        bound,
        holds: value.norm() <= bound + 1e-9,
    })
}

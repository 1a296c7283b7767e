use crate::cmatrix::{cr, C64};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial over the chart variables x_{r,s} (r-major lex order)
/// plus the parameter q as the final variable. Exponents may be negative.
#[derive(Debug, Clone)]
pub struct LaurentPolynomial {
    /// number of x variables (k * (n-k)); the q exponent sits at index num_x
    num_x: usize,
    terms: Vec<Term>,
}

#[derive(Debug, Clone)]
pub struct Term {
    pub coeff: C64,
    pub exps: Vec<i32>,
}

impl LaurentPolynomial {
    pub fn zero(num_x: usize) -> Self {
        Self {
            num_x,
            terms: Vec::new(),
        }
    }

    /// Builds from raw terms, merging duplicate exponent vectors and
    /// dropping zero coefficients.
    pub fn from_terms(num_x: usize, raw: Vec<Term>) -> Self {
        let mut merged: BTreeMap<Vec<i32>, C64> = BTreeMap::new();
        for t in raw {
            assert_eq!(t.exps.len(), num_x + 1, "exponent vector length");
            *merged.entry(t.exps).or_insert_with(|| cr(0.0)) += t.coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(exps, coeff)| Term { coeff, exps })
            .collect();
        Self { num_x, terms }
    }

    pub fn num_x(&self) -> usize {
        self.num_x
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Single monomial c * prod x_i^{e_i} * q^{e_q}.
    pub fn monomial(num_x: usize, coeff: C64, exps: Vec<i32>) -> Self {
        Self::from_terms(num_x, vec![Term { coeff, exps }])
    }

    pub fn eval(&self, xs: &[C64], q: C64) -> C64 {
        assert_eq!(xs.len(), self.num_x);
        let mut acc = cr(0.0);
        for t in &self.terms {
            let mut m = t.coeff;
            for (i, &e) in t.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = if i < self.num_x { xs[i] } else { q };
                m *= base.powi(e);
            }
            acc += m;
        }
        acc
    }

    /// Exact partial derivative in the x variable with index `var`
    /// (exponent-weighted monomials; q is a parameter, never differentiated).
    pub fn partial(&self, var: usize) -> LaurentPolynomial {
        assert!(var < self.num_x);
        let raw = self
            .terms
            .iter()
            .filter(|t| t.exps[var] != 0)
            .map(|t| {
                let mut exps = t.exps.clone();
                let e = exps[var];
                exps[var] -= 1;
                Term {
                    coeff: t.coeff * cr(e as f64),
                    exps,
                }
            })
            .collect();
        LaurentPolynomial::from_terms(self.num_x, raw)
    }

    /// All first partials in variable order.
    pub fn gradient(&self) -> Vec<LaurentPolynomial> {
        (0..self.num_x).map(|v| self.partial(v)).collect()
    }
}

/// Formats with x variables named by a caller-supplied function.
pub struct LaurentDisplay<'a, F: Fn(usize) -> String> {
    pub poly: &'a LaurentPolynomial,
    pub var_name: F,
}

impl<'a, F: Fn(usize) -> String> fmt::Display for LaurentDisplay<'a, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for t in &self.poly.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            if (t.coeff - cr(1.0)).norm() > 1e-15 {
                factors.push(format!("({}{:+}i)", t.coeff.re, t.coeff.im));
            }
            for (i, &e) in t.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if i < self.poly.num_x {
                    (self.var_name)(i)
                } else {
                    "q".to_string()
                };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{}^{}", name, e));
                }
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

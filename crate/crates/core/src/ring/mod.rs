//! Multivariate polynomials with exact rational coefficients.

mod monomial;
mod parse;
mod polynomial;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use parse::{parse_polynomial, ParseError};
pub use polynomial::Polynomial;

pub use num_rational::BigRational as Coeff;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("a ring needs at least one variable")]
    NoVariables,
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateName(String),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("negative degree {0}")]
    NegativeDegree(i64),
}

/// `Q[x_0, ..., x_r]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(
        vars: &[S],
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>, RingError> {
        if vars.is_empty() {
            return Err(RingError::NoVariables);
        }
        let mut seen = HashSet::new();
        let mut names = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !valid_name(v) {
                return Err(RingError::InvalidName(v.to_string()));
            }
            if !seen.insert(v.to_string()) {
                return Err(RingError::DuplicateName(v.to_string()));
            }
            names.push(v.to_string());
        }
        if let MonomialOrder::Eliminate(k) = order {
            assert!(k <= names.len(), "elimination block larger than the ring");
        }
        Ok(Arc::new(PolyRing { vars: names, order }))
    }

    /// Grevlex ring on the given variable names.
    pub fn grevlex<S: AsRef<str>>(vars: &[S]) -> Result<Arc<PolyRing>, RingError> {
        PolyRing::new(vars, MonomialOrder::Grevlex)
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    /// Same variables under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            order,
        })
    }

    /// Basis of the degree-`d` piece, sorted descending in the ring order.
    pub fn graded_piece_basis(&self, d: i64) -> Result<Vec<Monomial>, RingError> {
        if d < 0 {
            return Err(RingError::NegativeDegree(d));
        }
        let mut all = monomials_of_degree(self.nvars(), d as u32);
        all.sort_by(|a, b| self.compare(b, a));
        Ok(all)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rings() {
        assert_eq!(
            PolyRing::grevlex::<&str>(&[]).unwrap_err(),
            RingError::NoVariables
        );
        assert!(matches!(
            PolyRing::grevlex(&["x", "x"]),
            Err(RingError::DuplicateName(_))
        ));
        assert!(matches!(
            PolyRing::grevlex(&["1x"]),
            Err(RingError::InvalidName(_))
        ));
    }

    #[test]
    fn graded_piece_basis_sizes() {
        let r = PolyRing::grevlex(&["x", "y", "z"]).unwrap();
        assert_eq!(r.graded_piece_basis(2).unwrap().len(), 6);
        let one = r.graded_piece_basis(0).unwrap();
        assert_eq!(one, vec![Monomial::one(3)]);
        assert!(r.graded_piece_basis(-1).is_err());

        let r5 = PolyRing::grevlex(&["x0", "x1", "x2", "x3", "x4"]).unwrap();
        let lin = r5.graded_piece_basis(1).unwrap();
        let expected: Vec<Monomial> = (0..5).map(|i| Monomial::variable(5, i)).collect();
        assert_eq!(lin, expected);
        for d in 0..5 {
            assert_eq!(
                r5.graded_piece_basis(d).unwrap().len() as i64,
                binomial(5 + d - 1, d)
            );
        }
    }
}

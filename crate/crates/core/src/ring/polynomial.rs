use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{same_ring, Coeff, Monomial, PolyRing, RingError};
#[cfg(test)]
use super::MonomialOrder;

/// A polynomial in canonical form: terms sorted descending in the ring order,
/// no repeated monomials and no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Polynomial::constant(ring, Coeff::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        Polynomial::term(ring, Monomial::variable(ring.nvars(), index), Coeff::one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms already in canonical order.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        let order = self.ring.order();
        match self
            .terms
            .binary_search_by(|(tm, _)| order.compare(m, tm))
        {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Coeff::zero(),
        }
    }

    /// The common degree of all terms, if there is one. `None` for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Coeff::zero(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Multiplies by `c * m`. Order is preserved since monomial orders are
    /// compatible with multiplication.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, a)| (tm.mul(m), a * c))
                .collect(),
        }
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// `self + c * m * other`, merging in one pass.
    pub fn add_scaled(&self, c: &Coeff, m: &Monomial, other: &Polynomial) -> Polynomial {
        merge_scaled(&self.ring, &self.terms, c, m, &other.terms)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_ring(other)?;
        Ok(merge_scaled(
            &self.ring,
            &self.terms,
            &Coeff::one(),
            &Monomial::one(self.ring.nvars()),
            &other.terms,
        ))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_ring(other)?;
        Ok(merge_scaled(
            &self.ring,
            &self.terms,
            &-Coeff::one(),
            &Monomial::one(self.ring.nvars()),
            &other.terms,
        ))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        // Accumulate the shorter operand's shifted copies of the longer one.
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if short.len() == 1 {
            let (m, c) = &short.terms[0];
            return Ok(long.mul_term(m, c));
        }
        let mut all = Vec::with_capacity(short.len() * long.len());
        for (m, c) in &short.terms {
            for (n, d) in &long.terms {
                all.push((m.mul(n), c * d));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, all))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), RingError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        let (glm, glc) = g.leading_term()?;
        let mut rest = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rest.leading_term() {
            let q = glm.quotient_of(m)?;
            let qc = c / glc;
            rest = rest.add_scaled(&-qc.clone(), &q, g);
            quot.push((q, qc));
        }
        Some(Polynomial::from_sorted_terms(&self.ring, quot))
    }

    /// Moves the polynomial into `ring`, which must extend this ring by
    /// `count` new leading variables.
    pub fn prepend_vars(&self, ring: &Arc<PolyRing>, count: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.prepend_vars(count), c.clone()))
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Inverse of [`Polynomial::prepend_vars`]; `None` if a dropped
    /// variable occurs.
    pub fn drop_leading_vars(&self, ring: &Arc<PolyRing>, count: usize) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.drop_leading_vars(count)?, c.clone()));
        }
        Some(Polynomial::from_terms(ring, terms))
    }

    /// Re-sorts the terms for a ring with the same variables but possibly a
    /// different order.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(ring.variables(), self.ring.variables());
        Polynomial::from_terms(ring, self.terms.clone())
    }

    /// Coefficients of a linear form, indexed by variable.
    pub fn linear_coefficients(&self) -> Option<Vec<Coeff>> {
        let mut out = vec![Coeff::zero(); self.ring.nvars()];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return None;
            }
            let i = m.exponents().iter().position(|&e| e == 1).unwrap();
            out[i] = c.clone();
        }
        Some(out)
    }

    pub fn from_linear_coefficients(ring: &Arc<PolyRing>, coeffs: &[Coeff]) -> Polynomial {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::variable(ring.nvars(), i), c.clone()))
            .collect();
        Polynomial::from_terms(ring, terms)
    }
}

fn merge_scaled(
    ring: &Arc<PolyRing>,
    a: &[(Monomial, Coeff)],
    c: &Coeff,
    m: &Monomial,
    b: &[(Monomial, Coeff)],
) -> Polynomial {
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut bj: Option<(Monomial, Coeff)> = b.first().map(|(bm, bc)| (bm.mul(m), bc * c));
    while i < a.len() || bj.is_some() {
        match (a.get(i), bj.as_ref()) {
            (Some(x), Some(y)) => match order.compare(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bj.take().unwrap());
                    j += 1;
                    bj = b.get(j).map(|(bm, bc)| (bm.mul(m), bc * c));
                }
                Ordering::Equal => {
                    let s = &x.1 + &y.1;
                    if !s.is_zero() {
                        out.push((x.0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|(bm, bc)| (bm.mul(m), bc * c));
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(bj.take().unwrap());
                j += 1;
                bj = b.get(j).map(|(bm, bc)| (bm.mul(m), bc * c));
            }
            (None, None) => unreachable!(),
        }
    }
    Polynomial {
        ring: ring.clone(),
        terms: out,
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

fn format_coeff_abs(c: &Coeff) -> String {
    let a = c.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = format_coeff_abs(c);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{abs}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial;

    fn ring() -> Arc<PolyRing> {
        PolyRing::grevlex(&["x0", "x1", "x2", "x3", "x4"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &ring()).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let q = p("x1^2 - x0*x2");
        assert_eq!(&q * &p("1"), q);
        let m = &p("x0") * &p("x1");
        assert_eq!(m, p("x0*x1"));
        assert_eq!(m.homogeneous_degree(), Some(2));
        assert_eq!(&p("x0 + x1") * &p("x0 - x1"), p("x0^2 - x1^2"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let other = PolyRing::grevlex(&["a", "b"]).unwrap();
        let a = Polynomial::var(&other, 0);
        assert_eq!(p("x0").checked_mul(&a), Err(RingError::RingMismatch));
    }

    #[test]
    fn homogeneity_queries() {
        assert_eq!(p("x0*x1 + x2").homogeneous_degree(), None);
        assert_eq!(p("0").homogeneous_degree(), None);
        assert!(p("0").is_homogeneous());
        assert_eq!(p("5").homogeneous_degree(), Some(0));
    }

    #[test]
    fn exact_division() {
        let f = &p("x0 + x1") * &p("x2^2 - x3*x4");
        assert_eq!(f.exact_div(&p("x0 + x1")), Some(p("x2^2 - x3*x4")));
        assert_eq!(p("x0^2 + x1").exact_div(&p("x0")), None);
    }

    #[test]
    fn coefficient_lookup() {
        let f = p("3*x0*x1 - x2^2 + 4");
        let x0x1 = Monomial::from_exponents(&[1, 1, 0, 0, 0]);
        assert_eq!(f.coefficient(&x0x1), Coeff::from_integer(3.into()));
        assert_eq!(f.coefficient(&Monomial::variable(5, 0)), Coeff::zero());
        assert_eq!(f.constant_term(), Coeff::from_integer(4.into()));
    }

    #[test]
    fn aux_variable_roundtrip() {
        let big = PolyRing::new(&["t", "x0", "x1", "x2", "x3", "x4"], MonomialOrder::Eliminate(1)).unwrap();
        let f = p("x1^2 - x0*x2");
        let g = f.prepend_vars(&big, 1);
        assert_eq!(g.drop_leading_vars(&ring(), 1), Some(f));
        let t = Polynomial::var(&big, 0);
        assert_eq!((&t * &g).drop_leading_vars(&ring(), 1), None);
    }
}

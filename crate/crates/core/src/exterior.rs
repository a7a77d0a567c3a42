//! The exterior algebra on `S_1` and wedge composition of linear matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::koszul::{ChainContext, KoszulChain};
use crate::linalg::QMatrix;
use crate::matrix::PolyMatrix;
use crate::ring::{Coeff, PolyRing, Polynomial};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("entry ({row}, {col}) of map {map} is not a linear form")]
    NonLinear { map: usize, row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("maps {0} and {1} do not compose to zero")]
    NotAComplex(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("exterior degrees differ")]
    DegreeMismatch,
    #[error("column {0} is out of range")]
    ColumnOutOfRange(usize),
    #[error("syntax error in exterior element {0:?}")]
    Syntax(String),
}

/// An element of `∧^k S_1`: coefficients on strictly increasing index tuples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    ring: Arc<PolyRing>,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Coeff>,
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    Some(negative)
}

impl ExteriorElement {
    pub fn zero(ring: &Arc<PolyRing>, degree: usize) -> Self {
        ExteriorElement {
            ring: ring.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        let mut e = ExteriorElement::zero(ring, 0);
        if !c.is_zero() {
            e.terms.insert(Vec::new(), c);
        }
        e
    }

    /// `x_{i_1} ∧ ... ∧ x_{i_k}` in any index order.
    pub fn basis(ring: &Arc<PolyRing>, indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        let mut e = ExteriorElement::zero(ring, idx.len());
        if let Some(neg) = sort_sign(&mut idx) {
            let c = if neg { -Coeff::one() } else { Coeff::one() };
            e.terms.insert(idx, c);
        }
        e
    }

    /// A linear form as a degree-one element.
    pub fn from_linear(f: &Polynomial) -> Option<Self> {
        let coeffs = f.linear_coefficients()?;
        let mut e = ExteriorElement::zero(f.ring(), 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                e.terms.insert(vec![i], c);
            }
        }
        Some(e)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Coeff {
        self.terms.get(idx).cloned().unwrap_or_else(Coeff::zero)
    }

    fn add_term(&mut self, idx: Vec<usize>, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &ExteriorElement) -> ExteriorElement {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExteriorElement) -> ExteriorElement {
        self.add(&other.scale(&-Coeff::one()))
    }

    pub fn scale(&self, c: &Coeff) -> ExteriorElement {
        if c.is_zero() {
            return ExteriorElement::zero(&self.ring, self.degree);
        }
        ExteriorElement {
            ring: self.ring.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &ExteriorElement) -> ExteriorElement {
        let mut out = ExteriorElement::zero(&self.ring, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some(neg) = sort_sign(&mut idx) {
                    let c = ca * cb;
                    out.add_term(idx, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Gcd of the numerators over the lcm of the denominators; zero for zero.
    pub fn content(&self) -> Coeff {
        content_of(self.terms.values())
    }

    /// Parses `coeff*xi^xj + ...`; `0` is the zero element of degree `degree`.
    pub fn parse(text: &str, ring: &Arc<PolyRing>, degree: usize) -> Result<Self, ExteriorError> {
        let err = || ExteriorError::Syntax(text.to_string());
        let mut out = ExteriorElement::zero(ring, degree);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(out);
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(i > 0 && current.is_empty()) {
                if !current.is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                } else if i > 0 {
                    return Err(err());
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(err());
        }
        pieces.push((negative, current));
        for (neg, piece) in pieces {
            let (coeff, wedge) = match piece.split_once('*') {
                Some((c, w)) => (parse_coeff(c).ok_or_else(err)?, w.to_string()),
                None => match parse_coeff(&piece) {
                    Some(c) if degree == 0 => (c, String::new()),
                    _ => (Coeff::one(), piece.clone()),
                },
            };
            let mut idx = Vec::new();
            if !wedge.is_empty() {
                for name in wedge.split('^') {
                    idx.push(ring.var_index(name).ok_or_else(err)?);
                }
            }
            if idx.len() != degree {
                return Err(err());
            }
            let b = ExteriorElement::basis(ring, &idx);
            let c = if neg { -coeff } else { coeff };
            out = out.add(&b.scale(&c));
        }
        Ok(out)
    }
}

fn parse_coeff(s: &str) -> Option<Coeff> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| Coeff::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Coeff::from_integer),
    }
}

pub(crate) fn content_of<'a>(values: impl Iterator<Item = &'a Coeff>) -> Coeff {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    if num.is_zero() {
        Coeff::zero()
    } else {
        Coeff::new(num, den)
    }
}

fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let names: Vec<&str> = idx.iter().map(|&i| self.ring.variables()[i].as_str()).collect();
            match (idx.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", format_coeff(&abs))?,
                (false, true) => write!(f, "{}", names.join("^"))?,
                (false, false) => write!(f, "{}*{}", format_coeff(&abs), names.join("^"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Result of comparing a square matrix with its transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    SkewSymmetric,
    Both,
    Neither,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::SkewSymmetric => "skew-symmetric",
            Symmetry::Both => "both",
            Symmetry::Neither => "neither",
        }
    }
}

/// A matrix with entries in `∧^k S_1` for a common `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExteriorMatrix {
    ring: Arc<PolyRing>,
    degree: usize,
    rows: usize,
    cols: usize,
    data: Vec<ExteriorElement>,
}

impl ExteriorMatrix {
    pub fn from_fn(
        ring: &Arc<PolyRing>,
        degree: usize,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ExteriorElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert!(e.is_zero() || e.degree == degree, "entry of the wrong degree");
                data.push(if e.is_zero() { ExteriorElement::zero(ring, degree) } else { e });
            }
        }
        ExteriorMatrix {
            ring: ring.clone(),
            degree,
            rows,
            cols,
            data,
        }
    }

    /// Reads a matrix of linear forms as a degree-one exterior matrix.
    pub fn from_linear(m: &PolyMatrix) -> Result<Self, ExteriorError> {
        Self::from_linear_map(m, 1)
    }

    fn from_linear_map(m: &PolyMatrix, map: usize) -> Result<Self, ExteriorError> {
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let e = ExteriorElement::from_linear(m.get(r, c)).ok_or(ExteriorError::NonLinear {
                    map,
                    row: r,
                    col: c,
                })?;
                data.push(e);
            }
        }
        Ok(ExteriorMatrix {
            ring: m.ring().clone(),
            degree: 1,
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExteriorElement {
        &self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<ExteriorElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExteriorElement::is_zero)
    }

    pub fn transpose(&self) -> ExteriorMatrix {
        ExteriorMatrix::from_fn(&self.ring, self.degree, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, c: &Coeff) -> ExteriorMatrix {
        ExteriorMatrix::from_fn(&self.ring, self.degree, self.rows, self.cols, |r, k| self.get(r, k).scale(c))
    }

    pub fn neg(&self) -> ExteriorMatrix {
        self.scale(&-Coeff::one())
    }

    /// Matrix product with wedge as entry multiplication, left factor first.
    pub fn wedge_mul(&self, other: &ExteriorMatrix) -> Result<ExteriorMatrix, ExteriorError> {
        if self.cols != other.rows {
            return Err(ExteriorError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let degree = self.degree + other.degree;
        Ok(ExteriorMatrix::from_fn(&self.ring, degree, self.rows, other.cols, |r, c| {
            let mut acc = ExteriorElement::zero(&self.ring, degree);
            for k in 0..self.cols {
                let (a, b) = (self.get(r, k), other.get(k, c));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.wedge(b));
                }
            }
            acc
        }))
    }

    /// `P · self` for a constant matrix `P`.
    pub fn mul_constant_left(&self, p: &QMatrix) -> ExteriorMatrix {
        assert_eq!(p.ncols(), self.rows);
        ExteriorMatrix::from_fn(&self.ring, self.degree, p.nrows(), self.cols, |r, c| {
            let mut acc = ExteriorElement::zero(&self.ring, self.degree);
            for k in 0..self.rows {
                if !p.get(r, k).is_zero() {
                    acc = acc.add(&self.get(k, c).scale(p.get(r, k)));
                }
            }
            acc
        })
    }

    /// `self · P` for a constant matrix `P`.
    pub fn mul_constant_right(&self, p: &QMatrix) -> ExteriorMatrix {
        self.transpose().mul_constant_left(&p.transpose()).transpose()
    }

    pub fn content(&self) -> Coeff {
        content_of(self.data.iter().flat_map(|e| e.terms.values()))
    }

    /// The matrix divided by its content, and the content.
    pub fn primitive_part(&self) -> (ExteriorMatrix, Coeff) {
        let c = self.content();
        if c.is_zero() {
            return (self.clone(), c);
        }
        (self.scale(&c.recip()), c)
    }

    /// One line per row, entries separated by `, `.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            s.push_str(&row.join(", "));
            s.push('\n');
        }
        s
    }

    /// `name.row.col = entry` lines (1-based), nonzero entries only.
    pub fn to_kv(&self, name: &str) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                if !e.is_zero() {
                    s.push_str(&format!("{name}.{}.{} = {e}\n", r + 1, c + 1));
                }
            }
        }
        s
    }
}

impl fmt::Debug for ExteriorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExteriorMatrix {}x{} (degree {})\n{}", self.rows, self.cols, self.degree, self.to_text())
    }
}

/// `d_2 ∧ d_3 ∧ ... ∧ d_p` for consecutive linear maps of a strand.
pub fn wedge_compose(maps: &[PolyMatrix]) -> Result<ExteriorMatrix, ExteriorError> {
    let first = maps
        .first()
        .ok_or_else(|| ExteriorError::Dimension("no maps to compose".into()))?;
    for (k, w) in maps.windows(2).enumerate() {
        if w[0].ncols() != w[1].nrows() {
            return Err(ExteriorError::Dimension(format!(
                "map {} has {} columns but map {} has {} rows",
                k,
                w[0].ncols(),
                k + 1,
                w[1].nrows()
            )));
        }
        if !w[0].mul(&w[1]).is_zero() {
            return Err(ExteriorError::NotAComplex(k, k + 1));
        }
    }
    let mut acc = ExteriorMatrix::from_linear_map(first, 0)?;
    for (k, m) in maps.iter().enumerate().skip(1) {
        acc = acc.wedge_mul(&ExteriorMatrix::from_linear_map(m, k)?)?;
    }
    Ok(acc)
}

/// Compares `D` entrywise with its transpose.
pub fn symmetry_classify(d: &ExteriorMatrix) -> Result<Symmetry, ExteriorError> {
    if d.rows != d.cols {
        return Err(ExteriorError::NotSquare);
    }
    let t = d.transpose();
    let sym = t == *d;
    let skew = t == d.neg();
    Ok(match (sym, skew) {
        (true, true) => Symmetry::Both,
        (true, false) => Symmetry::Symmetric,
        (false, true) => Symmetry::SkewSymmetric,
        (false, false) => Symmetry::Neither,
    })
}

/// The chain `Σ_i D[i, col] ⊗ gens[i]` with coefficients in the ideal.
pub fn column_to_cycle(d: &ExteriorMatrix, col: usize, gens: &[Polynomial]) -> Result<KoszulChain, ExteriorError> {
    if col >= d.cols {
        return Err(ExteriorError::ColumnOutOfRange(col));
    }
    if gens.len() != d.rows {
        return Err(ExteriorError::Dimension(format!(
            "{} generators for {} rows",
            gens.len(),
            d.rows
        )));
    }
    let ring = &d.ring;
    let mut terms: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
    for (r, g) in gens.iter().enumerate() {
        for (idx, c) in d.get(r, col).terms() {
            let entry = terms.entry(idx.clone()).or_insert_with(|| Polynomial::zero(ring));
            *entry = &*entry + &g.scale(c);
        }
    }
    let q = gens.iter().find_map(Polynomial::homogeneous_degree).unwrap_or(0);
    Ok(KoszulChain::new(ring, d.degree, q as i64, ChainContext::Ideal, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial;

    fn ring() -> Arc<PolyRing> {
        PolyRing::grevlex(&["x0", "x1", "x2", "x3", "x4"]).unwrap()
    }

    fn lin(r: &Arc<PolyRing>, s: &str) -> ExteriorElement {
        ExteriorElement::from_linear(&parse_polynomial(s, r).unwrap()).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let r = ring();
        let x2x3 = lin(&r, "x2").wedge(&lin(&r, "x3"));
        assert_eq!(x2x3, ExteriorElement::basis(&r, &[2, 3]));
        assert_eq!(x2x3.coefficient(&[2, 3]), Coeff::one());
        assert_eq!(lin(&r, "x3").wedge(&lin(&r, "x2")), x2x3.scale(&-Coeff::one()));
        let prod = lin(&r, "x0 + x1").wedge(&lin(&r, "x0 - x1"));
        assert_eq!(prod, ExteriorElement::basis(&r, &[0, 1]).scale(&Coeff::from_integer((-2).into())));
        assert!(lin(&r, "x0 + 3*x4").wedge(&lin(&r, "x0 + 3*x4")).is_zero());
    }

    #[test]
    fn parse_and_print_roundtrip() {
        let r = ring();
        let e = ExteriorElement::parse("-2*x2^x3 + x1^x4 - 1/2*x4^x0", &r, 2).unwrap();
        assert_eq!(e.to_string(), "1/2*x0^x4 + x1^x4 - 2*x2^x3");
        assert_eq!(ExteriorElement::parse(&e.to_string(), &r, 2).unwrap(), e);
        assert!(ExteriorElement::parse("0", &r, 3).unwrap().is_zero());
        assert!(ExteriorElement::parse("x1^x2", &r, 3).is_err());
        assert!(ExteriorElement::parse("x1^y", &r, 2).is_err());
    }

    #[test]
    fn single_map_and_classification() {
        let r = ring();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let m = PolyMatrix::from_rows(&r, vec![vec![p("0"), p("x0")], vec![p("-x0"), p("0")]], 2);
        let d = wedge_compose(std::slice::from_ref(&m)).unwrap();
        assert_eq!(d.degree(), 1);
        assert_eq!(symmetry_classify(&d), Ok(Symmetry::SkewSymmetric));
        let zero = ExteriorMatrix::from_fn(&r, 2, 3, 3, |_, _| ExteriorElement::zero(&r, 2));
        assert_eq!(symmetry_classify(&zero), Ok(Symmetry::Both));
        let rect = ExteriorMatrix::from_fn(&r, 2, 3, 2, |_, _| ExteriorElement::zero(&r, 2));
        assert_eq!(symmetry_classify(&rect), Err(ExteriorError::NotSquare));
        let quad = PolyMatrix::from_rows(&r, vec![vec![p("x0^2")]], 1);
        assert!(matches!(wedge_compose(&[quad]), Err(ExteriorError::NonLinear { .. })));
    }
}

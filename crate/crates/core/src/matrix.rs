//! Matrices of polynomials.

use std::fmt;

use num_traits::Zero;
use std::sync::Arc;


use crate::linalg::QMatrix;
use crate::ring::{Coeff, Monomial, PolyRing, Polynomial};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn from_fn(
        ring: &Arc<PolyRing>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        PolyMatrix {
            ring: ring.clone(),
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(ring: &Arc<PolyRing>, rows: usize, columns: &[Vec<Polynomial>]) -> Self {
        PolyMatrix::from_fn(ring, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    /// A single row.
    pub fn row_vector(ring: &Arc<PolyRing>, entries: Vec<Polynomial>) -> Self {
        let n = entries.len();
        PolyMatrix::from_rows(ring, vec![entries], n)
    }

    pub fn from_constant(ring: &Arc<PolyRing>, m: &QMatrix) -> Self {
        PolyMatrix::from_fn(ring, m.nrows(), m.ncols(), |r, c| {
            Polynomial::constant(ring, m.get(r, c).clone())
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Polynomial) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let i = r * other.cols + c;
                        out.data[i] = &out.data[i] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_constant_right(&self, m: &QMatrix) -> PolyMatrix {
        self.mul(&PolyMatrix::from_constant(&self.ring, m))
    }

    pub fn mul_constant_left(&self, m: &QMatrix) -> PolyMatrix {
        PolyMatrix::from_constant(&self.ring, m).mul(self)
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> PolyMatrix {
        self.scale(&-Coeff::from_integer(1.into()))
    }

    pub fn scale(&self, c: &Coeff) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ring, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    /// Degree-zero parts of the entries.
    pub fn constant_part(&self) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).constant_term())
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(Polynomial::is_constant)
    }

    /// Entries as constants, if every entry is constant.
    pub fn to_constant(&self) -> Option<QMatrix> {
        self.is_constant().then(|| self.constant_part())
    }

    pub fn has_unit_entry(&self) -> bool {
        self.data.iter().any(|p| !p.constant_term().is_zero())
    }

    /// True iff every nonzero entry is a linear form.
    pub fn is_linear(&self) -> bool {
        self.data
            .iter()
            .all(|p| p.is_zero() || p.homogeneous_degree() == Some(1))
    }

    /// Coefficient of `x_var` in each entry of a linear matrix.
    pub fn linear_coefficient_matrix(&self, var: usize) -> QMatrix {
        let m = Monomial::variable(self.ring.nvars(), var);
        QMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).coefficient(&m))
    }

    /// Checks that every nonzero entry `(r, c)` is homogeneous of degree
    /// `source[c] - target[r]`.
    pub fn is_graded(&self, target: &[i64], source: &[i64]) -> bool {
        assert_eq!((target.len(), source.len()), (self.rows, self.cols));
        (0..self.rows).all(|r| {
            (0..self.cols).all(|c| {
                let p = self.get(r, c);
                p.is_zero() || p.homogeneous_degree().map(i64::from) == Some(source[c] - target[r])
            })
        })
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| *self.get(r, c) == -self.get(c, r)))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|p| p.to_string()).collect();
            writeln!(f, "{}", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix {}x{}\n{self}", self.rows, self.cols)
    }
}

/// Zero test used where a whole composite must vanish.
pub fn composes_to_zero(a: &PolyMatrix, b: &PolyMatrix) -> bool {
    a.mul(b).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial;

    #[test]
    fn koszul_relation_composes_to_zero() {
        let r = PolyRing::grevlex(&["x", "y"]).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let row = PolyMatrix::row_vector(&r, vec![p("x"), p("y")]);
        let col = PolyMatrix::from_rows(&r, vec![vec![p("-y")], vec![p("x")]], 1);
        assert!(composes_to_zero(&row, &col));
        assert!(row.is_linear());
        assert!(row.is_graded(&[0], &[1, 1]));
        assert!(!row.is_graded(&[0], &[1, 2]));
        assert_eq!(row.transpose().transpose(), row);
    }
}

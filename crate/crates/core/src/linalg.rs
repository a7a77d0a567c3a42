//! Exact linear algebra over the rationals: a small dense matrix type and a
//! sparse fraction-free rank routine for the large Koszul matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ring::Coeff;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Coeff::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Coeff::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Coeff) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    /// Builds a matrix from equal-length rows; `cols` is needed when there are
    /// no rows.
    pub fn from_rows(rows: Vec<Vec<Coeff>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        QMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Coeff::from_integer(v.into())).collect())
                .collect(),
            cols,
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Coeff] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Coeff> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        self.add(&other.scale(&-Coeff::one()))
    }

    pub fn scale(&self, c: &Coeff) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> QMatrix {
        QMatrix::from_fn(idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> QMatrix {
        QMatrix::from_fn(self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &f * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Coeff {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Coeff::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Coeff::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col) / &pivot;
                for c in col..n {
                    let v = m.get(r, c) - &f * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        self.solve(&QMatrix::identity(self.rows))
            .filter(|_| self.rank() == self.rows)
    }

    /// Some `X` with `self * X = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &QMatrix) -> Option<QMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = QMatrix::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = QMatrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, red.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    /// Basis of the right kernel, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Coeff>> {
        let (red, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Coeff::zero(); self.cols];
            v[free] = Coeff::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -red.get(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A sparse integer row: strictly increasing column indices, nonzero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Clears denominators and divides out the content, so equal rows up to
/// scaling become identical.
pub fn primitive_integer_row(row: &[(usize, Coeff)]) -> SparseRow {
    let mut lcm = BigInt::one();
    for (_, c) in row {
        lcm = lcm.lcm(c.denom());
    }
    let mut out: SparseRow = row
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v /= &g;
    }
}

/// Incremental fraction-free echelon form over the integers. Each stored row
/// has a distinct leading column; inserting a row reduces it against the
/// stored pivots and keeps it if anything survives.
#[derive(Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        SparseEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Returns true if the row was independent of those already inserted.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        make_primitive(&mut row);
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    // Keep sign-normalized rows so the stored form is canonical.
                    if row[0].1.is_negative() {
                        for (_, v) in row.iter_mut() {
                            *v = -&*v;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    row = eliminate(&row, p);
                }
            }
        }
    }
}

/// `p[0] * row - row[0] * p`, made primitive. Both rows share a leading column.
fn eliminate(row: &SparseRow, p: &SparseRow) -> SparseRow {
    let a = &p[0].1;
    let b = &row[0].1;
    let g = a.gcd(b);
    let fa = a / &g;
    let fb = b / &g;
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < p.len() {
        let ci = row.get(i).map(|t| t.0);
        let cj = p.get(j).map(|t| t.0);
        match (ci, cj) {
            (Some(x), Some(y)) if x == y => {
                let v = &fa * &row[i].1 - &fb * &p[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, &fa * &row[i].1));
                i += 1;
            }
            (Some(x), None) => {
                out.push((x, &fa * &row[i].1));
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(&fb * &p[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    make_primitive(&mut out);
    out
}

/// Exact rank of a sparse rational matrix given by rows.
pub fn sparse_rank(rows: impl IntoIterator<Item = Vec<(usize, Coeff)>>) -> usize {
    let mut rows: Vec<SparseRow> = rows
        .into_iter()
        .map(|r| primitive_integer_row(&r))
        .filter(|r| !r.is_empty())
        .collect();
    // Short rows first keeps fill-in down.
    rows.sort_by_key(|r| (r.len(), r[0].0));
    let mut ech = SparseEchelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

//! The worked examples, and ideals of minors and Pfaffians.

use std::sync::Arc;

use crate::groebner::{GroebnerError, Ideal};
use crate::matrix::PolyMatrix;
use crate::resolution::Complex;
use crate::ring::{binomial, MonomialOrder, PolyRing, Polynomial};
use crate::textio::{parse_document, Document};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("unknown corpus entry {0:?}")]
    UnknownName(String),
    #[error("size {k} is out of range for a {rows}x{cols} matrix")]
    SizeOutOfRange { k: usize, rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("Pfaffian size {0} is odd")]
    OddSize(usize),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// All subsets of `0..n` of size `k` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::koszul::wedge_basis(n, k)
}

fn determinant(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    if rows.len() == 1 {
        return m.get(rows[0], cols[0]).clone();
    }
    let mut acc = Polynomial::zero(m.ring());
    for (j, &c) in cols.iter().enumerate() {
        let entry = m.get(rows[0], c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &determinant(m, &rows[1..], &rest);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// The `k`-minors of `m`, rows and columns in lexicographic order.
pub fn minor_list(m: &PolyMatrix, k: usize) -> Result<Vec<Polynomial>, CorpusError> {
    if k == 0 || k > m.nrows().min(m.ncols()) {
        return Err(CorpusError::SizeOutOfRange { k, rows: m.nrows(), cols: m.ncols() });
    }
    let mut out = Vec::new();
    for rows in subsets(m.nrows(), k) {
        for cols in subsets(m.ncols(), k) {
            out.push(determinant(m, &rows, &cols));
        }
    }
    Ok(out)
}

/// The ideal of `k`-minors.
pub fn minors(m: &PolyMatrix, k: usize) -> Result<Ideal, CorpusError> {
    Ok(Ideal::new(m.ring(), minor_list(m, k)?)?)
}

/// Pfaffian of the principal submatrix on `idx`, expanded along its first row.
pub fn pfaffian_of(m: &PolyMatrix, idx: &[usize]) -> Polynomial {
    if idx.is_empty() {
        return Polynomial::one(m.ring());
    }
    let mut acc = Polynomial::zero(m.ring());
    for j in 1..idx.len() {
        let entry = m.get(idx[0], idx[j]);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[j]).collect();
        let term = entry * &pfaffian_of(m, &rest);
        acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn check_skew(m: &PolyMatrix, k: usize) -> Result<(), CorpusError> {
    if !m.is_skew_symmetric() {
        return Err(CorpusError::NotSkew);
    }
    if k % 2 == 1 {
        return Err(CorpusError::OddSize(k));
    }
    if k == 0 || k > m.nrows() {
        return Err(CorpusError::SizeOutOfRange { k, rows: m.nrows(), cols: m.ncols() });
    }
    Ok(())
}

/// The principal `k`-Pfaffians, index sets in lexicographic order.
pub fn pfaffian_list(m: &PolyMatrix, k: usize) -> Result<Vec<Polynomial>, CorpusError> {
    check_skew(m, k)?;
    Ok(subsets(m.nrows(), k).iter().map(|s| pfaffian_of(m, s)).collect())
}

/// The ideal of principal `k`-Pfaffians.
pub fn pfaffians(m: &PolyMatrix, k: usize) -> Result<Ideal, CorpusError> {
    Ok(Ideal::new(m.ring(), pfaffian_list(m, k)?)?)
}

/// `q_i = (−1)^i Pf(m without row and column i)` for odd-sized skew `m`;
/// the row `(q_0, ..., q_{n−1})` is annihilated by `m`.
pub fn signed_complementary_pfaffians(m: &PolyMatrix) -> Result<Vec<Polynomial>, CorpusError> {
    let n = m.nrows();
    check_skew(m, n.saturating_sub(1))?;
    Ok((0..n)
        .map(|i| {
            let idx: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let p = pfaffian_of(m, &idx);
            if i % 2 == 0 {
                p
            } else {
                -&p
            }
        })
        .collect())
}

/// Numerical invariants of a corpus entry: dimension `n`, codimension `e`,
/// ambient `P^r` and degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metadata {
    pub n: i64,
    pub e: usize,
    pub r: usize,
    pub d: usize,
    pub del_pezzo: bool,
    pub gorenstein: bool,
}

impl Metadata {
    /// `e = r − n`, and `d = e + 2` for del Pezzo entries.
    pub fn is_consistent(&self) -> bool {
        self.e as i64 == self.r as i64 - self.n && (!self.del_pezzo || self.d == self.e + 2)
    }

    /// Number of independent quadrics of a del Pezzo variety, `C(e+1, 2) − 1`.
    pub fn quadric_count(&self) -> usize {
        binomial(self.e as i64 + 1, 2) as usize - 1
    }
}

/// A worked example: its ring, ordered generators and the reference data.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub ring: Arc<PolyRing>,
    pub gens: Vec<Polynomial>,
    pub ideal: Ideal,
    pub metadata: Metadata,
    pub fixture: Document,
}

pub const CORPUS_NAMES: [&str; 6] = ["rnc4", "veronese_proj", "gr25", "dp5_surface", "segre22", "ci5"];

fn fixture_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "rnc4" => include_str!("../fixtures/corpus/rnc4.txt"),
        "veronese_proj" => include_str!("../fixtures/corpus/veronese_proj.txt"),
        "gr25" => include_str!("../fixtures/corpus/gr25.txt"),
        "dp5_surface" => include_str!("../fixtures/corpus/dp5_surface.txt"),
        "segre22" => include_str!("../fixtures/corpus/segre22.txt"),
        "ci5" => include_str!("../fixtures/corpus/ci5.txt"),
        _ => return None,
    })
}

fn metadata(name: &str) -> Metadata {
    let (n, e, r, d, del_pezzo, gorenstein) = match name {
        "rnc4" => (1, 3, 4, 4, false, false),
        "veronese_proj" => (2, 2, 4, 4, false, false),
        "gr25" => (6, 3, 9, 5, true, true),
        "dp5_surface" => (2, 3, 5, 5, true, true),
        "segre22" => (4, 4, 8, 6, true, true),
        "ci5" => (-1, 5, 4, 1, false, true),
        _ => unreachable!(),
    };
    Metadata { n, e, r, d, del_pezzo, gorenstein }
}

/// Builds a corpus entry in the given monomial order.
pub fn corpus_example_with_order(name: &str, order: MonomialOrder) -> Result<CorpusEntry, CorpusError> {
    let (static_name, text) = CORPUS_NAMES
        .iter()
        .find(|n| **n == name)
        .and_then(|n| fixture_text(n).map(|t| (*n, t)))
        .ok_or_else(|| CorpusError::UnknownName(name.to_string()))?;
    let fixture = parse_document(text, order).expect("corpus fixtures parse");
    let ring = fixture.ring.clone();
    let gens = match static_name {
        "gr25" | "dp5_surface" => signed_complementary_pfaffians(fixture.matrix("d2").unwrap())?,
        "segre22" => pfaffian_list(fixture.matrix("M").unwrap(), 4)?,
        _ => fixture.ideal.clone().expect("fixture carries an ideal"),
    };
    let ideal = Ideal::new(&ring, gens.clone())?;
    Ok(CorpusEntry {
        name: static_name,
        ring,
        gens,
        ideal,
        metadata: metadata(static_name),
        fixture,
    })
}

/// The reference resolution stored with an entry, when there is one: the
/// generators followed by the stored differentials, completed by the
/// self-dual tail where only half of the matrices are stored.
pub fn fixture_complex(entry: &CorpusEntry) -> Option<Complex> {
    let fx = &entry.fixture;
    let ring = &entry.ring;
    let maps = match entry.name {
        "rnc4" => vec![
            PolyMatrix::row_vector(ring, entry.gens.clone()),
            fx.matrix("d2")?.clone(),
            fx.matrix("d3")?.clone(),
        ],
        "ci5" => {
            let d1 = PolyMatrix::row_vector(ring, entry.gens.clone());
            let d2 = fx.matrix("d2")?.clone();
            vec![d1.clone(), d2.clone(), fx.matrix("d3")?.clone(), d2.transpose().neg(), d1.transpose()]
        }
        "segre22" => {
            let d1 = PolyMatrix::row_vector(ring, fx.polys("quadrics")?.to_vec());
            let d2 = fx.matrix("d2")?.clone();
            let a: Vec<usize> = (0..8).collect();
            let b: Vec<usize> = (8..16).collect();
            let bt = d2.select_cols(&b).transpose();
            let at = d2.select_cols(&a).transpose();
            let rows: Vec<Vec<Polynomial>> = (0..16)
                .map(|r| if r < 8 { bt.row(r).to_vec() } else { at.row(r - 8).to_vec() })
                .collect();
            let d3 = PolyMatrix::from_rows(ring, rows, 9);
            vec![d1.clone(), d2, d3, d1.transpose()]
        }
        "gr25" | "dp5_surface" => {
            let d1 = PolyMatrix::row_vector(ring, entry.gens.clone());
            vec![d1.clone(), fx.matrix("d2")?.clone(), d1.transpose()]
        }
        _ => return None,
    };
    Complex::from_differentials(ring, vec![0], maps).filter(Complex::is_complex)
}

/// Builds a corpus entry in grevlex.
pub fn corpus_example(name: &str) -> Result<CorpusEntry, CorpusError> {
    corpus_example_with_order(name, MonomialOrder::Grevlex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial;

    #[test]
    fn minors_and_pfaffians_small_cases() {
        let r = PolyRing::grevlex(&["a", "b", "c", "d", "e", "f"]).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let m = PolyMatrix::from_rows(&r, vec![vec![p("a"), p("b")], vec![p("c"), p("d")]], 2);
        assert_eq!(minor_list(&m, 2).unwrap(), vec![p("a*d - b*c")]);
        assert_eq!(minor_list(&m, 1).unwrap(), vec![p("a"), p("b"), p("c"), p("d")]);
        assert!(minor_list(&m, 3).is_err());
        let z = p("0");
        let s = PolyMatrix::from_rows(
            &r,
            vec![
                vec![z.clone(), p("a"), p("b"), p("c")],
                vec![p("-a"), z.clone(), p("d"), p("e")],
                vec![p("-b"), p("-d"), z.clone(), p("f")],
                vec![p("-c"), p("-e"), p("-f"), z.clone()],
            ],
            4,
        );
        assert_eq!(pfaffian_list(&s, 4).unwrap(), vec![p("a*f - b*e + c*d")]);
        assert_eq!(pfaffian_list(&s, 2).unwrap(), vec![p("a"), p("b"), p("c"), p("d"), p("e"), p("f")]);
        assert_eq!(pfaffian_list(&s, 3), Err(CorpusError::OddSize(3)));
        assert_eq!(pfaffian_list(&m, 2), Err(CorpusError::NotSkew));
    }

    #[test]
    fn every_entry_builds() {
        for name in CORPUS_NAMES {
            let entry = corpus_example(name).unwrap();
            assert!(entry.metadata.is_consistent(), "{name}");
        }
        assert!(matches!(corpus_example("nope"), Err(CorpusError::UnknownName(_))));
    }
}

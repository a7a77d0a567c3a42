use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial. The length always equals the number of
/// variables of the ring the monomial belongs to.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 12]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree,
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Multiplies by a single variable.
    pub fn mul_var(&self, index: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[index] += 1;
        m.degree += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self
                .exps
                .iter()
                .zip(other.exps.iter())
                .all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 12]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Degree in the variables `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    /// Inserts `count` zero exponents in front (new leading variables).
    pub fn prepend_vars(&self, count: usize) -> Monomial {
        let mut exps: SmallVec<[u16; 12]> = SmallVec::from_elem(0, count);
        exps.extend_from_slice(&self.exps);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Drops the first `count` variables; their exponents must be zero.
    pub fn drop_leading_vars(&self, count: usize) -> Option<Monomial> {
        if self.exps[..count].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Monomial {
            exps: SmallVec::from_slice(&self.exps[count..]),
            degree: self.degree,
        })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Monomial orders. All of them are degree compatible except `Lex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Block order: the first `k` variables form a block compared first (by
    /// grevlex restricted to the block), ties broken by grevlex on the rest.
    /// Eliminates the first block.
    Eliminate(usize),
}

fn grevlex_slice(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => {
                match a.degree.cmp(&b.degree) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Eliminate(k) => {
                match grevlex_slice(&a.exps[..k], &b.exps[..k]) {
                    Ordering::Equal => grevlex_slice(&a.exps[k..], &b.exps[k..]),
                    o => o,
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".to_string(),
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::Eliminate(k) => format!("eliminate({k})"),
        }
    }
}

/// All monomials of total degree `d` in `nvars` variables, in lexicographic
/// exponent order (unsorted with respect to any ring order).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    fn rec(pos: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if pos + 1 == exps.len() {
            exps[pos] = left as u16;
            out.push(Monomial::from_exponents(exps));
            exps[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[pos] = e as u16;
            rec(pos + 1, left - e, exps, out);
        }
        exps[pos] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

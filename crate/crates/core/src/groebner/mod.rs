//! Gröbner bases and the ideal operations built on them.

mod ops;

use std::sync::{Arc, OnceLock};

use num_traits::One;

use crate::ring::{same_ring, Coeff, Monomial, PolyRing, Polynomial, RingError};

pub use ops::{
    colon_by_element, colon_ideal, ideal_equal, intersect_ideals, saturate, vector_space_dim,
    Saturation,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("the ideal is not homogeneous")]
    NotHomogeneous,
    #[error("the ideal must be nonzero")]
    ZeroIdeal,
}

/// An ideal given by generators. Zero generators are dropped on construction.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    homogeneous: bool,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal, GroebnerError> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(RingError::RingMismatch.into());
        }
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let homogeneous = gens.iter().all(Polynomial::is_homogeneous);
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            homogeneous,
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    /// The ideal generated by all variables.
    pub fn irrelevant(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect()).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// The reduced Gröbner basis in the ring's order, computed once.
    pub fn groebner(&self) -> Arc<GroebnerBasis> {
        self.gb.get_or_init(|| Arc::new(buchberger(self))).clone()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.groebner().reduce(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }
}

/// A reduced, monic Gröbner basis sorted ascending by leading monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.elements.iter()).finish()
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().unwrap())
    }

    /// True if no leading monomial divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading_monomials().any(|l| l.divides(m))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(RingError::RingMismatch.into());
        }
        Ok(self.reduce(f))
    }

    pub(crate) fn reduce(&self, f: &Polynomial) -> Polynomial {
        let refs: Vec<&Polynomial> = self.elements.iter().collect();
        reduce_full(f.clone(), &refs)
    }

    /// Monomials of degree `d` outside the initial ideal, descending.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        self.ring
            .graded_piece_basis(d as i64)
            .unwrap()
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect()
    }

    pub fn to_ideal(&self) -> Ideal {
        let ideal = Ideal::new(&self.ring, self.elements.clone()).unwrap();
        let _ = ideal.gb.set(Arc::new(self.clone()));
        ideal
    }
}

/// Full reduction of `f` by the monic polynomials in `basis`: the result has
/// no term divisible by a leading monomial of the basis.
pub(crate) fn reduce_full(f: Polynomial, basis: &[&Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut rest = f;
    let mut remainder: Vec<(Monomial, Coeff)> = Vec::new();
    while let Some((m, c)) = rest.leading_term() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|l| l.divides(m)));
        match divisor {
            Some(g) => {
                let (gl, gc) = g.leading_term().unwrap();
                let q = gl.quotient_of(m).unwrap();
                let factor = if gc.is_one() { -c.clone() } else { -(c / gc) };
                rest = rest.add_scaled(&factor, &q, g);
            }
            None => {
                let mut terms = rest.into_terms();
                let lead = terms.remove(0);
                remainder.push(lead);
                rest = Polynomial::from_sorted_terms(&ring, terms);
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, remainder)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn sugar_of(f: &Polynomial) -> u32 {
    f.total_degree().unwrap_or(0)
}

struct Builder {
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
    sugars: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn active_refs(&self) -> Vec<&Polynomial> {
        self.active.iter().map(|&i| &self.polys[i]).collect()
    }

    /// Gebauer–Möller update for a new monic element `h`.
    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.sugars.push(sugar);
        let hl = self.lm(hi).clone();

        let mut candidates: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, hl.lcm(self.lm(g))))
            .collect();
        // Drop candidates whose lcm is a proper multiple of another's lcm,
        // keeping coprime pairs until the product criterion below.
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for k in 0..candidates.len() {
            let (g, ref l) = candidates[k];
            let coprime = hl.is_coprime(self.lm(g));
            let dominated = candidates[k + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((g, l.clone()));
            }
        }
        candidates.clear();
        let fresh: Vec<(usize, Monomial)> = kept
            .into_iter()
            .filter(|(g, _)| !hl.is_coprime(self.lm(*g)))
            .collect();

        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().unwrap();
        self.pairs.retain(|p| {
            !hl.divides(&p.lcm)
                || hl.lcm(lm(p.i)) == p.lcm
                || hl.lcm(lm(p.j)) == p.lcm
        });
        for (g, l) in fresh {
            let s = pair_sugar(&self.polys, &self.sugars, g, hi, &l);
            self.pairs.push(Pair {
                i: g,
                j: hi,
                lcm: l,
                sugar: s,
            });
        }

        let polys = &self.polys;
        self.active
            .retain(|&g| !hl.divides(polys[g].leading_monomial().unwrap()));
        self.active.push(hi);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ring = &self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar
                .cmp(&pb.sugar)
                .then_with(|| ring.compare(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, p: &Pair) -> Polynomial {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let a = self.lm(p.i).quotient_of(&p.lcm).unwrap();
        let b = self.lm(p.j).quotient_of(&p.lcm).unwrap();
        f.mul_term(&a, &Coeff::one())
            .add_scaled(&-Coeff::one(), &b, g)
    }
}

fn pair_sugar(polys: &[Polynomial], sugars: &[u32], i: usize, j: usize, lcm: &Monomial) -> u32 {
    let si = sugars[i] + lcm.degree() - polys[i].leading_monomial().unwrap().degree();
    let sj = sugars[j] + lcm.degree() - polys[j].leading_monomial().unwrap().degree();
    si.max(sj)
}

/// Reduced Gröbner basis by Buchberger's algorithm with the sugar selection
/// strategy and the Gebauer–Möller criteria.
pub fn buchberger(ideal: &Ideal) -> GroebnerBasis {
    let ring = ideal.ring().clone();
    let mut b = Builder {
        ring: ring.clone(),
        polys: Vec::new(),
        sugars: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut inputs: Vec<&Polynomial> = ideal.gens().iter().collect();
    inputs.sort_by(|f, g| {
        sugar_of(f)
            .cmp(&sugar_of(g))
            .then_with(|| ring.compare(f.leading_monomial().unwrap(), g.leading_monomial().unwrap()))
    });
    let unit = || GroebnerBasis {
        ring: ring.clone(),
        elements: vec![Polynomial::one(&ring)],
    };
    for f in inputs {
        let h = reduce_full(f.clone(), &b.active_refs());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        b.insert(h.make_monic(), sugar_of(f));
    }
    while let Some(p) = b.next_pair() {
        let s = b.s_polynomial(&p);
        let h = reduce_full(s, &b.active_refs());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        b.insert(h.make_monic(), p.sugar);
    }

    let active: Vec<Polynomial> = b.active.iter().map(|&i| b.polys[i].clone()).collect();
    let mut elements = Vec::with_capacity(active.len());
    for (k, g) in active.iter().enumerate() {
        let others: Vec<&Polynomial> = active
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, p)| p)
            .collect();
        let (lm, lc) = g.leading_term().unwrap();
        let tail = Polynomial::from_sorted_terms(&ring, g.terms()[1..].to_vec());
        let tail = reduce_full(tail, &others);
        let lead = Polynomial::term(&ring, lm.clone(), lc.clone());
        elements.push((&lead + &tail).make_monic());
    }
    elements.sort_by(|f, g| ring.compare(f.leading_monomial().unwrap(), g.leading_monomial().unwrap()));
    GroebnerBasis { ring, elements }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<GroebnerBasis, GroebnerError> {
    Ok(buchberger(&Ideal::new(ring, gens)?))
}

impl GroebnerBasis {
    /// The zero ideal has an empty basis.
    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::grevlex(vars).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap()
    }

    /// Plain long division, independent of `reduce_full`.
    fn naive_remainder(f: &Polynomial, g: &[Polynomial]) -> Polynomial {
        let mut p = f.clone();
        let mut r = Polynomial::zero(f.ring());
        while !p.is_zero() {
            let (m, c) = p.leading_term().unwrap().clone();
            let lead = Polynomial::term(f.ring(), m.clone(), c.clone());
            match g.iter().find(|q| q.leading_monomial().unwrap().divides(&m)) {
                Some(q) => {
                    let (qm, qc) = q.leading_term().unwrap();
                    let t = Polynomial::term(f.ring(), qm.quotient_of(&m).unwrap(), &c / qc);
                    p = &p - &(&t * q);
                }
                None => {
                    r = &r + &lead;
                    p = &p - &lead;
                }
            }
        }
        r
    }

    fn assert_is_groebner(gb: &GroebnerBasis) {
        let g = gb.elements();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (a, b) = (g[i].leading_monomial().unwrap(), g[j].leading_monomial().unwrap());
                let l = a.lcm(b);
                let one = Coeff::one();
                let fa = Polynomial::term(gb.ring(), a.quotient_of(&l).unwrap(), one.clone());
                let fb = Polynomial::term(gb.ring(), b.quotient_of(&l).unwrap(), one.clone());
                let s = &(&fa * &g[i]) - &(&fb * &g[j]);
                assert!(naive_remainder(&s, g).is_zero(), "S({i},{j}) does not reduce to 0");
            }
        }
    }

    #[test]
    fn principal_monomial_ideal() {
        let r = ring(&["x0", "x1"]);
        let gb = buchberger(&ideal(&r, &["x0"]));
        assert_eq!(gb.elements(), &[parse_polynomial("x0", &r).unwrap()]);
    }

    #[test]
    fn generic_two_by_four_minors() {
        let r = ring(&["a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3"]);
        let mut gens = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                gens.push(format!("a{i}*b{j} - a{j}*b{i}"));
            }
        }
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        let i = ideal(&r, &refs);
        let gb = buchberger(&i);
        assert_is_groebner(&gb);
        for g in i.gens() {
            assert!(gb.reduce(g).is_zero());
        }
        // Reduced: no term of any element is divisible by another's leading monomial.
        for (k, g) in gb.elements().iter().enumerate() {
            for (l, h) in gb.elements().iter().enumerate() {
                if k != l {
                    let lm = h.leading_monomial().unwrap();
                    assert!(g.terms().iter().all(|(m, _)| !lm.divides(m)));
                }
            }
            assert!(g.leading_coeff().unwrap().is_one());
        }
        // Idempotent.
        assert_eq!(buchberger(&gb.to_ideal()).elements(), gb.elements());
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x0", "x1", "x2", "x3", "x4"]);
        let i = ideal(&r, &["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]);
        let gb = i.groebner();
        assert_eq!(gb.normal_form(&Polynomial::one(&r)).unwrap(), Polynomial::one(&r));
        let f = parse_polynomial("x1^2*x3 - x0*x2*x3", &r).unwrap();
        assert!(gb.normal_form(&f).unwrap().is_zero());
        let other = ring(&["y"]);
        assert!(gb.normal_form(&Polynomial::var(&other, 0)).is_err());
    }

    #[test]
    fn unit_and_zero_ideals() {
        let r = ring(&["x", "y"]);
        assert!(buchberger(&ideal(&r, &["x", "x + 1"])).is_unit());
        assert!(buchberger(&ideal(&r, &["0"])).is_zero_ideal());
    }

    #[test]
    fn intersection_colon_saturation() {
        let r = ring(&["x0", "x1", "x2"]);
        let a = ideal(&r, &["x0"]);
        let b = ideal(&r, &["x1"]);
        assert!(ideal_equal(&intersect_ideals(&a, &b).unwrap(), &ideal(&r, &["x0*x1"])));
        let i = ideal(&r, &["x0^2", "x0*x1"]);
        assert!(ideal_equal(&intersect_ideals(&i, &Ideal::unit(&r)).unwrap(), &i));
        assert!(colon_ideal(&i, &i).unwrap().groebner().is_unit());
        let sat = saturate(&i, &ideal(&r, &["x0", "x1"])).unwrap();
        assert!(ideal_equal(&sat.ideal, &a));
        assert_eq!(sat.steps, 1);
        let same = saturate(&i, &Ideal::unit(&r)).unwrap();
        assert!(ideal_equal(&same.ideal, &i));
        assert_eq!(same.steps, 0);
        assert_eq!(colon_ideal(&i, &Ideal::zero(&r)).unwrap_err(), GroebnerError::ZeroIdeal);
    }

    #[test]
    fn equality_and_dimension() {
        let r = ring(&["x0", "x1"]);
        assert!(!ideal_equal(&ideal(&r, &["x0"]), &ideal(&r, &["x0^2"])));
        assert!(ideal_equal(
            &ideal(&r, &["x0^2", "x1^2 + x0*x1"]),
            &ideal(&r, &["x1^2 + x0*x1", "x0^2"])
        ));
        let i = ideal(&r, &["x0^2", "x0*x1"]);
        assert_eq!(vector_space_dim(&i, 0).unwrap(), 0);
        assert_eq!(vector_space_dim(&i, 2).unwrap(), 2);
        assert_eq!(vector_space_dim(&i, 3).unwrap(), 3);
        assert_eq!(
            vector_space_dim(&ideal(&r, &["x0^2 + x1"]), 2).unwrap_err(),
            GroebnerError::NotHomogeneous
        );
    }
}

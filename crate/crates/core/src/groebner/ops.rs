use std::collections::HashMap;
use std::sync::Arc;

use super::{buchberger, GroebnerBasis, GroebnerError, Ideal};
use crate::linalg::sparse_rank;
use crate::ring::{monomials_of_degree, same_ring, Coeff, MonomialOrder, PolyRing, Polynomial, RingError};

/// Dimension of the degree-`d` piece of a homogeneous ideal, as the rank of
/// all generator multiples of degree `d` in the monomial basis.
pub fn vector_space_dim(ideal: &Ideal, d: i64) -> Result<usize, GroebnerError> {
    if !ideal.is_homogeneous() {
        return Err(GroebnerError::NotHomogeneous);
    }
    let ring = ideal.ring();
    let basis = ring.graded_piece_basis(d)?;
    let index: HashMap<_, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut rows = Vec::new();
    for g in ideal.gens() {
        let gd = g.homogeneous_degree().unwrap() as i64;
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(ring.nvars(), (d - gd) as u32) {
            let mut row: Vec<(usize, Coeff)> = g
                .terms()
                .iter()
                .map(|(t, c)| (index[&t.mul(&m)], c.clone()))
                .collect();
            row.sort_by_key(|e| e.0);
            rows.push(row);
        }
    }
    Ok(sparse_rank(rows))
}

fn check_same(a: &Ideal, b: &Ideal) -> Result<(), GroebnerError> {
    if same_ring(a.ring(), b.ring()) {
        Ok(())
    } else {
        Err(RingError::RingMismatch.into())
    }
}

/// The ring with one extra leading variable, ordered to eliminate it.
fn elimination_ring(ring: &Arc<PolyRing>) -> Arc<PolyRing> {
    let mut name = "_t".to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    let mut vars = vec![name];
    vars.extend(ring.variables().iter().cloned());
    PolyRing::new(&vars, MonomialOrder::Eliminate(1)).unwrap()
}

fn ideal_from_basis(ring: &Arc<PolyRing>, elements: Vec<Polynomial>) -> Ideal {
    if ring.order() == MonomialOrder::Grevlex {
        // The restriction of a reduced elimination basis is already reduced
        // for the induced order on the remaining variables.
        let mut elements = elements;
        elements.sort_by(|f, g| ring.compare(f.leading_monomial().unwrap(), g.leading_monomial().unwrap()));
        GroebnerBasis {
            ring: ring.clone(),
            elements,
        }
        .to_ideal()
    } else {
        let ideal = Ideal::new(ring, elements).unwrap();
        buchberger(&ideal).to_ideal()
    }
}

/// `I ∩ J` by eliminating `t` from `t·I + (1 − t)·J`.
pub fn intersect_ideals(i: &Ideal, j: &Ideal) -> Result<Ideal, GroebnerError> {
    check_same(i, j)?;
    let ring = i.ring();
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let big = elimination_ring(ring);
    let t = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut gens = Vec::new();
    for f in i.groebner().elements() {
        gens.push(&t * &f.prepend_vars(&big, 1));
    }
    for g in j.groebner().elements() {
        gens.push(&one_minus_t * &g.prepend_vars(&big, 1));
    }
    let gb = buchberger(&Ideal::new(&big, gens)?);
    let kept: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter_map(|f| f.drop_leading_vars(ring, 1))
        .collect();
    Ok(ideal_from_basis(ring, kept))
}

/// `(I : g) = (I ∩ (g)) / g`.
pub fn colon_by_element(i: &Ideal, g: &Polynomial) -> Result<Ideal, GroebnerError> {
    if g.is_zero() {
        return Err(GroebnerError::ZeroIdeal);
    }
    let principal = Ideal::new(i.ring(), vec![g.clone()])?;
    let meet = intersect_ideals(i, &principal)?;
    let quotients: Vec<Polynomial> = meet
        .gens()
        .iter()
        .map(|f| f.exact_div(g).expect("elements of (g) are divisible by g").make_monic())
        .collect();
    Ok(ideal_from_basis(i.ring(), quotients))
}

/// `(I : J)` as the intersection of `(I : g)` over the generators of `J`.
pub fn colon_ideal(i: &Ideal, j: &Ideal) -> Result<Ideal, GroebnerError> {
    check_same(i, j)?;
    let jgb = j.groebner();
    if jgb.is_zero_ideal() {
        return Err(GroebnerError::ZeroIdeal);
    }
    let mut acc: Option<Ideal> = None;
    for g in jgb.elements() {
        let c = colon_by_element(i, g)?;
        acc = Some(match acc {
            None => c,
            Some(a) => intersect_ideals(&a, &c)?,
        });
        if acc.as_ref().is_some_and(|a| ideal_equal(a, i)) {
            // Once the colon is back down to I it cannot shrink further.
            break;
        }
    }
    Ok(acc.unwrap())
}

/// Result of `saturate`: the stable ideal and the number of colon steps
/// that changed it.
#[derive(Debug, Clone)]
pub struct Saturation {
    pub ideal: Ideal,
    pub steps: usize,
}

/// `(I : J^∞)` by iterating `colon_ideal` until the reduced basis stabilizes.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<Saturation, GroebnerError> {
    check_same(i, j)?;
    if j.groebner().is_zero_ideal() {
        return Err(GroebnerError::ZeroIdeal);
    }
    let mut current = i.groebner().to_ideal();
    let mut steps = 0;
    loop {
        let next = colon_ideal(&current, j)?;
        if ideal_equal(&next, &current) {
            return Ok(Saturation {
                ideal: current,
                steps,
            });
        }
        current = next;
        steps += 1;
    }
}

/// Equality of ideals via their reduced Gröbner bases.
pub fn ideal_equal(i: &Ideal, j: &Ideal) -> bool {
    same_ring(i.ring(), j.ring()) && i.groebner().elements() == j.groebner().elements()
}

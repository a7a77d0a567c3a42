use std::sync::Arc;

use syzygies::corpus::{corpus_example, minors, CORPUS_NAMES};
use syzygies::groebner::{colon_ideal, ideal_equal, intersect_ideals, saturate, vector_space_dim, Ideal};
use syzygies::matrix::PolyMatrix;
use syzygies::ring::{binomial, parse_polynomial, MonomialOrder, PolyRing, Polynomial};

fn ring(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
    PolyRing::new(vars, order).unwrap()
}

fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| p(r, s)).collect()).unwrap()
}

fn twisted_cubic() -> Ideal {
    let r = ring(&["x", "y", "z", "w"], MonomialOrder::Grevlex);
    let m = PolyMatrix::from_rows(
        &r,
        vec![vec![p(&r, "x"), p(&r, "y"), p(&r, "z")], vec![p(&r, "y"), p(&r, "z"), p(&r, "w")]],
        3,
    );
    minors(&m, 2).unwrap()
}

#[test]
fn twisted_cubic_hilbert_function() {
    let i = twisted_cubic();
    assert_eq!(i.groebner().elements().len(), 3);
    for d in 0..7i64 {
        let quotient = binomial(d + 3, 3) - vector_space_dim(&i, d).unwrap() as i64;
        assert_eq!(quotient, 3 * d + 1, "degree {d}");
    }
}

#[test]
fn lex_basis_is_triangular() {
    let r = ring(&["x", "y"], MonomialOrder::Lex);
    let i = ideal(&r, &["x^2 + y^2 - 1", "x - y"]);
    let gb = i.groebner();
    assert!(gb.elements().contains(&p(&r, "x - y")));
    assert!(gb.elements().contains(&p(&r, "y^2 - 1/2")));
    assert_eq!(gb.elements().len(), 2);
}

#[test]
fn elimination_order_projects() {
    let r = ring(&["t", "x", "y"], MonomialOrder::Eliminate(1));
    let i = ideal(&r, &["x - t^2", "y - t^3"]);
    let free_of_t: Vec<_> = i
        .groebner()
        .elements()
        .iter()
        .filter(|f| f.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
        .cloned()
        .collect();
    assert_eq!(free_of_t.len(), 1);
    let cusp = p(&r, "x^3 - y^2");
    assert!(free_of_t[0] == cusp || free_of_t[0] == -&cusp);
}

#[test]
fn normal_form_is_idempotent_and_stays_in_class() {
    let i = twisted_cubic();
    let r = i.ring().clone();
    let gb = i.groebner();
    let f = p(&r, "x^3*w + y^2*z^2 - 3*x*y*z*w + 7*w^4 - z^3*y");
    let nf = gb.normal_form(&f).unwrap();
    assert_eq!(gb.normal_form(&nf).unwrap(), nf);
    assert!(i.contains(&(&f - &nf)));
    for (m, _) in nf.terms() {
        assert!(gb.is_standard(m));
    }
}

#[test]
fn membership() {
    let i = twisted_cubic();
    let r = i.ring().clone();
    assert!(i.contains(&p(&r, "x*z - y^2")));
    assert!(i.contains(&p(&r, "x*(y*w - z^2) + w*(x*z - y^2)")));
    assert!(!i.contains(&p(&r, "x*w")));
    assert!(Ideal::unit(&r).groebner().is_unit());
}

#[test]
fn colon_intersection_saturation() {
    let r = ring(&["x", "y", "z"], MonomialOrder::Grevlex);
    let xy = ideal(&r, &["x*y"]);
    assert!(ideal_equal(&colon_ideal(&xy, &ideal(&r, &["x"])).unwrap(), &ideal(&r, &["y"])));
    let cap = intersect_ideals(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
    assert!(ideal_equal(&cap, &xy));
    let embedded = ideal(&r, &["x^2", "x*y", "x*z"]);
    let sat = saturate(&embedded, &Ideal::irrelevant(&r)).unwrap();
    assert!(ideal_equal(&sat.ideal, &ideal(&r, &["x"])));
    let prime = ideal(&r, &["x", "y"]);
    assert!(ideal_equal(&saturate(&prime, &Ideal::irrelevant(&r)).unwrap().ideal, &prime));
}

#[test]
fn basis_does_not_depend_on_generator_order() {
    for name in CORPUS_NAMES {
        let e = corpus_example(name).unwrap();
        let mut rev = e.gens.clone();
        rev.reverse();
        let again = Ideal::new(&e.ring, rev).unwrap();
        assert_eq!(again.groebner().elements(), e.ideal.groebner().elements(), "{name}");
    }
}

#[test]
fn corpus_quadric_counts() {
    // A del Pezzo variety of codimension e lies on C(e+1,2) − 1 quadrics.
    for name in ["gr25", "dp5_surface", "segre22"] {
        let e = corpus_example(name).unwrap();
        assert_eq!(vector_space_dim(&e.ideal, 2).unwrap(), e.metadata.quadric_count(), "{name}");
        assert!(e.metadata.is_consistent());
    }
}

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;
use syzygies::corpus::{corpus_example, CORPUS_NAMES};
use syzygies::exterior::{column_to_cycle, symmetry_classify, wedge_compose, ExteriorElement, ExteriorMatrix, Symmetry};
use syzygies::koszul::{
    is_koszul_cycle, koszul_cohomology_dim, koszul_cup_product, koszul_differential, wedge_basis, ChainContext,
    CohomologyQuery, KoszulChain, KoszulModule,
};
use syzygies::resolution::{linear_strand_end, minimal_resolution, BettiTable};
use syzygies::ring::{binomial, Coeff, PolyRing, Polynomial};

fn ring5() -> Arc<PolyRing> {
    PolyRing::grevlex(&["x0", "x1", "x2", "x3", "x4"]).unwrap()
}

fn ext(r: &Arc<PolyRing>, s: &str, deg: usize) -> ExteriorElement {
    ExteriorElement::parse(s, r, deg).unwrap()
}

#[test]
fn wedge_signs() {
    let r = ring5();
    let a = ext(&r, "x0", 1);
    let b = ext(&r, "x1", 1);
    assert_eq!(a.wedge(&b), ext(&r, "x0^x1", 2));
    assert_eq!(b.wedge(&a), ext(&r, "-x0^x1", 2));
    assert!(a.wedge(&a).is_zero());
    assert_eq!(ext(&r, "x2^x0", 2), ext(&r, "-x0^x2", 2));
    let c = ext(&r, "x0^x1 + x2^x3", 2);
    assert_eq!(c.wedge(&c), ext(&r, "2*x0^x1^x2^x3", 4));
}

#[test]
fn parse_display_roundtrip() {
    let r = ring5();
    for s in ["1/2*x0^x4 + x1^x4 - 2*x2^x3", "x0^x1^x2", "-x3"] {
        let deg = s.split_whitespace().next().unwrap().matches('^').count() + 1;
        let e = ext(&r, s, deg);
        assert_eq!(ext(&r, &e.to_string(), deg), e);
    }
    assert!(ExteriorElement::parse("x0^x1", &r, 3).is_err());
    assert!(ExteriorElement::parse("x0^y7", &r, 2).is_err());
}

#[test]
fn rational_normal_curve_wedge() {
    let e = corpus_example("rnc4").unwrap();
    let c = minimal_resolution(&e.ideal).unwrap();
    let d3 = wedge_compose(&c.differentials()[1..3]).unwrap();
    assert_eq!((d3.nrows(), d3.ncols(), d3.degree()), (6, 3, 2));
    assert_eq!(d3.content(), Coeff::from_integer(2.into()));
    assert_eq!(symmetry_classify(&d3).err().map(|_| ()), Some(()));
}

#[test]
fn complete_intersection_wedge_is_koszul_pattern() {
    let e = corpus_example("ci5").unwrap();
    let d4 = syzygies::duality::theorem_check(&e.ideal).unwrap().wedge;
    assert_eq!(d4.content(), Coeff::from_integer(6.into()));
    let (prim, _) = d4.primitive_part();
    // Every entry off the diagonal is a single wedge monomial on the three
    // remaining variables, with unit coefficient.
    for i in 0..5 {
        assert!(prim.get(i, i).is_zero());
        for j in 0..5 {
            if i != j {
                let terms: Vec<_> = prim.get(i, j).terms().collect();
                assert_eq!(terms.len(), 1);
                assert!(!terms[0].0.contains(&i) && !terms[0].0.contains(&j));
                assert!(terms[0].1.is_one() || (-terms[0].1).is_one());
            }
        }
    }
    assert_eq!(symmetry_classify(&d4).unwrap(), Symmetry::SkewSymmetric);
}

#[test]
fn wedge_rejects_nonlinear_maps() {
    let e = corpus_example("rnc4").unwrap();
    let c = minimal_resolution(&e.ideal).unwrap();
    assert!(ExteriorMatrix::from_linear(c.d(1)).is_err());
}

#[test]
fn columns_of_wedge_matrices_are_cycles() {
    for name in CORPUS_NAMES {
        let e = corpus_example(name).unwrap();
        let c = minimal_resolution(&e.ideal).unwrap();
        let gens = c.d(1).row(0).to_vec();
        for p in 2..=linear_strand_end(&c) {
            let d = wedge_compose(&c.differentials()[1..p]).unwrap();
            for k in 0..d.ncols() {
                let gamma = column_to_cycle(&d, k, &gens).unwrap();
                assert_eq!(gamma.p(), p - 1);
                assert!(is_koszul_cycle(&gamma), "{name} D{p} column {k}");
            }
        }
    }
}

#[test]
fn koszul_differential_squares_to_zero() {
    let r = ring5();
    let f = syzygies::ring::parse_polynomial("x0*x1 - 3*x4^2 + x2*x3", &r).unwrap();
    let mut terms = BTreeMap::new();
    for (k, idx) in wedge_basis(5, 3).into_iter().enumerate() {
        terms.insert(idx, f.scale(&Coeff::from_integer((k as i64 - 4).into())));
    }
    let chain = KoszulChain::new(&r, 3, 2, ChainContext::Polynomial, terms);
    let d = koszul_differential(&chain).unwrap();
    assert_eq!((d.p(), d.q()), (2, 3));
    assert!(koszul_differential(&d).unwrap().is_zero());
}

#[test]
fn cup_product_of_cycles_is_a_cycle() {
    let e = corpus_example("gr25").unwrap();
    let d = ExteriorMatrix::from_linear(e.fixture.matrix("d2").unwrap()).unwrap();
    let a = column_to_cycle(&d, 4, &e.gens).unwrap();
    let b = KoszulChain::from_tensor(&ExteriorElement::scalar(&e.ring, Coeff::one()), &Polynomial::one(&e.ring), ChainContext::Ideal);
    let prod = koszul_cup_product(&a, &b).unwrap();
    assert_eq!(prod, a);
    let x = KoszulChain::from_tensor(&ExteriorElement::basis(&e.ring, &[0]), &Polynomial::one(&e.ring), ChainContext::Polynomial);
    assert!(koszul_cup_product(&a, &x).is_err());
}

#[test]
fn polynomial_ring_koszul_cohomology() {
    // The Koszul complex of S itself is exact except K_{0,0}.
    let r = PolyRing::grevlex(&["x", "y", "z"]).unwrap();
    let zero = syzygies::groebner::Ideal::zero(&r);
    for p in 0..=3 {
        for q in 0..=2 {
            let dim = koszul_cohomology_dim(&CohomologyQuery { ideal: zero.clone(), module: KoszulModule::Quotient, p, q });
            assert_eq!(dim, usize::from(p == 0 && q == 0), "K_{p},{q}");
        }
    }
}

#[test]
fn ideal_and_quotient_cohomology_are_shifted() {
    for name in ["rnc4", "gr25", "veronese_proj"] {
        let e = corpus_example(name).unwrap();
        let b = BettiTable::from_complex(&minimal_resolution(&e.ideal).unwrap()).unwrap();
        for p in 0..3 {
            for q in 1..4i64 {
                let dim = koszul_cohomology_dim(&CohomologyQuery { ideal: e.ideal.clone(), module: KoszulModule::Ideal, p, q });
                assert_eq!(dim, b.get(p + 1, p as i64 + q), "{name} K_{p},{q}(I)");
            }
        }
    }
}

#[test]
fn wedge_basis_is_lexicographic() {
    let b = wedge_basis(5, 2);
    assert_eq!(b.len(), binomial(5, 2) as usize);
    assert_eq!(b[0], vec![0, 1]);
    assert_eq!(b[9], vec![3, 4]);
    assert!(b.windows(2).all(|w| w[0] < w[1]));
}

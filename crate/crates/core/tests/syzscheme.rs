use syzygies::corpus::corpus_example;
use syzygies::duality::theorem_check;
use syzygies::exterior::{column_to_cycle, ExteriorMatrix};
use syzygies::groebner::{ideal_equal, vector_space_dim, Ideal};
use syzygies::ring::{parse_polynomial, Coeff};
use syzygies::syzscheme::{
    complete_to_invertible, drop_generator_transform, polynomial_span_basis, quadric_count, quadric_count_bounds,
    support_span, syzygy_scheme_decompose, SyzygySchemeError,
};

fn c(v: i64) -> Coeff {
    Coeff::from_integer(v.into())
}

#[test]
fn completion_keeps_the_first_row() {
    let row = vec![c(0), c(2), c(-1), c(0)];
    let p = complete_to_invertible(&row).unwrap();
    assert_eq!(p.row(0), row.as_slice());
    assert!(p.inverse().is_some());
    assert!(matches!(complete_to_invertible(&[c(0), c(0)]), Err(SyzygySchemeError::ZeroRow)));
}

#[test]
fn span_basis_drops_dependent_polynomials() {
    let e = corpus_example("gr25").unwrap();
    let mut polys = e.gens.clone();
    polys.push(&e.gens[0] + &e.gens[1]);
    polys.push(e.gens[2].scale(&c(-3)));
    let basis = polynomial_span_basis(&polys);
    assert_eq!(basis.len(), 5);
    assert!(ideal_equal(&Ideal::new(&e.ring, basis).unwrap(), &e.ideal));
}

#[test]
fn grassmannian_last_column() {
    let e = corpus_example("gr25").unwrap();
    let d = ExteriorMatrix::from_linear(e.fixture.matrix("d2").unwrap()).unwrap();
    let gamma = column_to_cycle(&d, 4, &e.gens).unwrap();
    assert_eq!(quadric_count(&gamma).unwrap(), 4);
    let rep = syzygy_scheme_decompose(&gamma, &e.ideal).unwrap();
    assert!(rep.decomposition_verified);
    let linear = e.fixture.polys("linear_component").unwrap();
    assert!(ideal_equal(&rep.colon, &Ideal::new(&e.ring, linear.to_vec()).unwrap()));
    let span = support_span(&gamma).unwrap();
    assert!(ideal_equal(&Ideal::new(&e.ring, span).unwrap(), &rep.colon));
}

#[test]
fn segre_cycles_miss_one_quadric() {
    let e = corpus_example("segre22").unwrap();
    let quadrics = e.fixture.polys("quadrics").unwrap();
    for name in ["gamma", "gamma_prime"] {
        let gamma = column_to_cycle(e.fixture.exterior(name).unwrap(), 0, quadrics).unwrap();
        let rep = syzygy_scheme_decompose(&gamma, &e.ideal).unwrap();
        assert_eq!(rep.quadric_count(), 8);
        assert!(e.ideal.contains_ideal(&rep.ideal));
        assert!(rep.colon.contains_ideal(&e.ideal));
        assert_eq!(vector_space_dim(&rep.ideal, 2).unwrap(), 8);
        assert!(!rep.decomposition_verified);
        assert!(!rep.saturation_equals_ideal);
    }
}

#[test]
fn drop_transform_example() {
    let e = corpus_example("dp5_surface").unwrap();
    let report = theorem_check(&e.ideal).unwrap();
    let gens = report.complex.d(1).row(0).to_vec();
    let row = vec![c(1), c(-1), c(0), c(2), c(0)];
    let t = drop_generator_transform(&report.wedge, &row, &gens).unwrap();
    assert!(t.matrix.get(0, 0).is_zero());
    assert_eq!(t.matrix.transpose(), t.matrix.neg());
    let gamma = t.first_cycle().unwrap();
    let count = quadric_count(&gamma).unwrap();
    assert!((3..=4).contains(&count));
    assert!(matches!(
        drop_generator_transform(&report.wedge, &row[..4], &gens),
        Err(SyzygySchemeError::RowLength { .. })
    ));
}

#[test]
fn bounds_are_reproducible() {
    let report = theorem_check(&corpus_example("gr25").unwrap().ideal).unwrap();
    let a = quadric_count_bounds(&report, 5, 7).unwrap();
    let b = quadric_count_bounds(&report, 5, 7).unwrap();
    assert_eq!(a, b);
    assert_eq!((a.lower, a.upper), (3, 4));
    assert_eq!(a.samples.len(), 10);
    assert!(a.all_within());
}

#[test]
fn del_pezzo_surface_scroll() {
    let e = corpus_example("dp5_surface").unwrap();
    let d = ExteriorMatrix::from_linear(e.fixture.matrix("d2").unwrap()).unwrap();
    let gamma = column_to_cycle(&d, 4, &e.gens).unwrap();
    assert_eq!(quadric_count(&gamma).unwrap(), 3);
    let reference: Vec<_> = e.fixture.polys("gamma_quadrics").unwrap().to_vec();
    let rep = syzygy_scheme_decompose(&gamma, &e.ideal).unwrap();
    assert!(ideal_equal(&rep.ideal, &Ideal::new(&e.ring, reference).unwrap()));
    let x = parse_polynomial("x0", &e.ring).unwrap();
    assert!(!rep.ideal.contains(&x));
}

use syzygies::corpus::{corpus_example, CORPUS_NAMES};
use syzygies::groebner::vector_space_dim;
use syzygies::resolution::{free_resolution, hoa_betti, minimal_generators, minimal_resolution, BettiTable};
use syzygies::ring::binomial;

fn betti(name: &str) -> BettiTable {
    let e = corpus_example(name).unwrap();
    BettiTable::from_complex(&minimal_resolution(&e.ideal).unwrap()).unwrap()
}

fn totals(b: &BettiTable) -> Vec<usize> {
    (0..=b.projective_dimension()).map(|p| b.total(p)).collect()
}

#[test]
fn corpus_betti_ranks() {
    assert_eq!(totals(&betti("rnc4")), vec![1, 6, 8, 3]);
    assert_eq!(totals(&betti("veronese_proj")), vec![1, 7, 10, 5, 1]);
    assert_eq!(totals(&betti("gr25")), vec![1, 5, 5, 1]);
    assert_eq!(totals(&betti("dp5_surface")), vec![1, 5, 5, 1]);
    assert_eq!(totals(&betti("segre22")), vec![1, 9, 16, 9, 1]);
    assert_eq!(totals(&betti("ci5")), vec![1, 5, 10, 10, 5, 1]);
}

#[test]
fn gorenstein_tables_are_symmetric() {
    let b = betti("segre22");
    assert_eq!(b.get(1, 2), 9);
    assert_eq!(b.get(2, 3), 16);
    assert_eq!(b.get(3, 4), 9);
    assert_eq!(b.get(4, 6), 1);
    assert_eq!(b.regularity(), 2);
    let g = betti("gr25");
    assert_eq!((g.get(1, 2), g.get(2, 3), g.get(3, 5)), (5, 5, 1));
}

#[test]
fn linear_strand_matches_closed_formula() {
    for (name, e) in [("gr25", 3), ("dp5_surface", 3), ("segre22", 4)] {
        let b = betti(name);
        for p in 1..e {
            let formula = p * binomial(e + 1, p + 1) - binomial(e, p - 1);
            assert_eq!(hoa_betti(e, p).unwrap(), formula);
            assert_eq!(b.get(p as usize, p + 1) as i64, formula, "{name} p={p}");
        }
    }
}

#[test]
fn alternating_sum_recovers_hilbert_function() {
    for name in CORPUS_NAMES {
        let e = corpus_example(name).unwrap();
        let n = e.ring.nvars() as i64;
        let c = minimal_resolution(&e.ideal).unwrap();
        for d in 0..7i64 {
            let mut chi = 0i64;
            for i in 0..=c.len() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for &j in c.twists(i) {
                    chi += sign * binomial(d - j + n - 1, n - 1);
                }
            }
            let direct = binomial(d + n - 1, n - 1) - vector_space_dim(&e.ideal, d).unwrap() as i64;
            assert_eq!(chi, direct, "{name} degree {d}");
        }
    }
}

#[test]
fn resolutions_are_minimal_graded_complexes() {
    for name in CORPUS_NAMES {
        let e = corpus_example(name).unwrap();
        let c = minimal_resolution(&e.ideal).unwrap();
        assert!(c.is_complex(), "{name}");
        assert!(c.is_minimal(), "{name}");
        for i in 1..=c.len() {
            assert!(c.map(i).is_graded(), "{name} d{i}");
        }
        assert_eq!(c.d(1).row(0), minimal_generators(&e.ideal).as_slice(), "{name}");
    }
}

#[test]
fn truncated_resolution() {
    let e = corpus_example("segre22").unwrap();
    let c = free_resolution(&e.ideal, Some(2)).unwrap();
    assert_eq!(c.len(), 2);
    assert!(c.is_complex());
}

#[test]
fn redundant_generators_are_dropped_in_input_order() {
    let e = corpus_example("segre22").unwrap();
    assert_eq!(e.gens.len(), 15);
    let kept = minimal_generators(&e.ideal);
    assert_eq!(kept.len(), 9);
    let positions: Vec<usize> = kept.iter().map(|g| e.gens.iter().position(|h| h == g).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

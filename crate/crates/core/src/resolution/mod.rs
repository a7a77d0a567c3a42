//! Graded free resolutions: Schreyer's algorithm, minimalization, Betti
//! tables and lifting along graded maps.

mod betti;
mod frame;
mod minimal;
mod solve;

use std::sync::Arc;

use crate::groebner::Ideal;
use crate::matrix::PolyMatrix;
use crate::ring::{PolyRing, Polynomial};

pub use betti::{hoa_betti, BettiTable};
pub use minimal::{minimal_generators, minimal_resolution, minimalize, rebase_first_map};
pub use solve::graded_solve;

use frame::{schreyer_sort, schreyer_syzygies, tracked_groebner, FrameOrder};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("the ideal is not homogeneous")]
    NotHomogeneous,
    #[error("the complex is not minimal: d_{0} has a unit entry")]
    NotMinimal(usize),
    #[error("index {p} is out of range for codimension {e}")]
    OutOfRange { e: i64, p: i64 },
    #[error("the ideal is zero")]
    ZeroIdeal,
}

/// A graded free module `⊕ S(-a_i)`, stored as the list of twists `a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFreeModule { twists }
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// A graded map between free modules, as a `rank(target) × rank(source)`
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMap {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    pub matrix: PolyMatrix,
}

impl ComplexMap {
    pub fn new(source: GradedFreeModule, target: GradedFreeModule, matrix: PolyMatrix) -> Self {
        assert_eq!(matrix.nrows(), target.rank());
        assert_eq!(matrix.ncols(), source.rank());
        ComplexMap {
            source,
            target,
            matrix,
        }
    }

    pub fn is_graded(&self) -> bool {
        self.matrix.is_graded(self.target.twists(), self.source.twists())
    }
}

/// A chain complex of graded free modules `F_0 ← F_1 ← ... ← F_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    ring: Arc<PolyRing>,
    modules: Vec<GradedFreeModule>,
    maps: Vec<PolyMatrix>,
}

impl Complex {
    /// Builds a complex from `F_0`'s twists and the differentials
    /// `d_1, ..., d_len`; the remaining twists are read off the matrices.
    pub fn from_differentials(ring: &Arc<PolyRing>, f0: Vec<i64>, maps: Vec<PolyMatrix>) -> Option<Complex> {
        let mut modules = vec![GradedFreeModule::new(f0)];
        for d in &maps {
            let target = modules.last().unwrap().twists().to_vec();
            if d.nrows() != target.len() {
                return None;
            }
            let mut twists = Vec::with_capacity(d.ncols());
            for c in 0..d.ncols() {
                let t = (0..d.nrows()).find_map(|r| {
                    d.get(r, c)
                        .homogeneous_degree()
                        .map(|deg| target[r] + i64::from(deg))
                })?;
                twists.push(t);
            }
            modules.push(GradedFreeModule::new(twists));
        }
        Complex::new(ring, modules, maps)
    }

    /// Checks shapes and grading; `None` if they are inconsistent.
    pub fn new(ring: &Arc<PolyRing>, modules: Vec<GradedFreeModule>, maps: Vec<PolyMatrix>) -> Option<Complex> {
        if modules.len() != maps.len() + 1 {
            return None;
        }
        for (i, d) in maps.iter().enumerate() {
            if d.nrows() != modules[i].rank()
                || d.ncols() != modules[i + 1].rank()
                || !d.is_graded(modules[i].twists(), modules[i + 1].twists())
            {
                return None;
            }
        }
        Some(Complex {
            ring: ring.clone(),
            modules,
            maps,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Number of differentials.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn module(&self, i: usize) -> &GradedFreeModule {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    pub fn twists(&self, i: usize) -> &[i64] {
        self.modules[i].twists()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(GradedFreeModule::rank).collect()
    }

    /// The differential `d_i : F_i → F_{i-1}`, for `1 ≤ i ≤ len`.
    pub fn d(&self, i: usize) -> &PolyMatrix {
        &self.maps[i - 1]
    }

    pub fn map(&self, i: usize) -> ComplexMap {
        ComplexMap::new(self.modules[i].clone(), self.modules[i - 1].clone(), self.maps[i - 1].clone())
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// `d_i ∘ d_{i+1} = 0` for all `i`.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// No differential has an entry with nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|d| !d.has_unit_entry())
    }

    /// Drops trailing zero modules.
    pub(crate) fn trimmed(mut self) -> Complex {
        while self.modules.len() > 1 && self.modules.last().unwrap().rank() == 0 {
            self.modules.pop();
            self.maps.pop();
        }
        self
    }
}

/// Schreyer resolution of `S/I` (usually not minimal), with at most
/// `max_length` differentials; the default is the number of variables.
pub fn free_resolution(ideal: &Ideal, max_length: Option<usize>) -> Result<Complex, ResolutionError> {
    if !ideal.is_homogeneous() {
        return Err(ResolutionError::NotHomogeneous);
    }
    let ring = ideal.ring();
    let max_length = max_length.unwrap_or(ring.nvars());
    let gb = ideal.groebner();
    if gb.is_zero_ideal() {
        return Err(ResolutionError::ZeroIdeal);
    }
    let mut order = FrameOrder::top(ring, 1);
    let mut gens: Vec<_> = gb
        .elements()
        .iter()
        .map(|g| order.embed_column(std::slice::from_ref(g)))
        .collect();
    schreyer_sort(&order, &mut gens);

    let mut modules = vec![GradedFreeModule::new(vec![0])];
    let mut maps = Vec::new();
    while !gens.is_empty() && maps.len() < max_length {
        let d = order.to_matrix(&gens);
        let (next, syz) = schreyer_syzygies(&order, &gens);
        modules.push(GradedFreeModule::new(
            next.totals.iter().map(|m| i64::from(m.degree())).collect(),
        ));
        maps.push(d);
        order = next;
        gens = syz;
    }
    Ok(Complex::new(ring, modules, maps).expect("Schreyer frames are graded").trimmed())
}

/// Generators of the kernel of a graded map, pruned to a minimal set.
pub fn syzygy_module(map: &ComplexMap) -> ComplexMap {
    let ring = map.matrix.ring();
    let n = map.source.rank();
    let order = FrameOrder::top(ring, map.target.rank());
    let cols: Vec<_> = (0..n).map(|c| order.embed_column(&map.matrix.column(c))).collect();
    let tracked = tracked_groebner(&order, &cols);

    let mut candidates: Vec<Vec<Polynomial>> = Vec::new();
    if !tracked.gens.is_empty() {
        let (_, syz) = schreyer_syzygies(&order, &tracked.gens);
        let next = frame::induced_order(&order, &tracked.gens);
        for s in &syz {
            let coeffs = next.to_column(s);
            let mut v = vec![Polynomial::zero(ring); n];
            for (a, ca) in coeffs.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (k, vk) in v.iter_mut().enumerate() {
                    *vk = &*vk + &(ca * &tracked.reps[a][k]);
                }
            }
            candidates.push(v);
        }
    }
    // Each input column, rewritten through the basis, differs from itself by
    // a syzygy.
    let divisors = frame::Divisors::new(&order, &tracked.gens);
    for (k, col) in cols.iter().enumerate() {
        let (quot, rem) = divisors.divide(&order, col.clone());
        assert!(rem.is_empty());
        let mut v = vec![Polynomial::zero(ring); n];
        v[k] = Polynomial::one(ring);
        for (a, m, c) in quot {
            let t = Polynomial::term(ring, m, -c);
            for (j, vj) in v.iter_mut().enumerate() {
                *vj = &*vj + &(&t * &tracked.reps[a][j]);
            }
        }
        candidates.push(v);
    }
    let kept = minimal::prune_to_minimal(ring, map.source.twists(), candidates);
    let twists: Vec<i64> = kept.iter().map(|(t, _)| *t).collect();
    let columns: Vec<Vec<Polynomial>> = kept.into_iter().map(|(_, v)| v).collect();
    let matrix = PolyMatrix::from_columns(ring, n, &columns);
    ComplexMap::new(GradedFreeModule::new(twists), map.source.clone(), matrix)
}

/// Largest `p ≥ 1` such that `d_2, ..., d_p` all have linear entries.
pub fn linear_strand_end(c: &Complex) -> usize {
    let mut p = 1;
    while p < c.len() && c.d(p + 1).is_linear() {
        p += 1;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_polynomial;

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
        let r = PolyRing::grevlex(vars).unwrap();
        let gens = gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect();
        Ideal::new(&r, gens).unwrap()
    }

    #[test]
    fn koszul_complex_ranks() {
        let i = ideal(&["x0", "x1", "x2", "x3", "x4"], &["x0", "x1", "x2", "x3", "x4"]);
        let c = minimal_resolution(&i).unwrap();
        assert_eq!(c.ranks(), vec![1, 5, 10, 10, 5, 1]);
        assert!(c.is_complex());
        assert!(c.is_minimal());
        let t = BettiTable::from_complex(&c).unwrap();
        for p in 0..=5 {
            assert_eq!(t.get(p, p as i64) as i64, crate::ring::binomial(5, p as i64));
        }
    }

    #[test]
    fn rational_normal_curve() {
        let i = ideal(
            &["x0", "x1", "x2", "x3", "x4"],
            &[
                "x1^2 - x0*x2",
                "x1*x2 - x0*x3",
                "x2^2 - x1*x3",
                "x1*x3 - x0*x4",
                "x2*x3 - x1*x4",
                "x3^2 - x2*x4",
            ],
        );
        let frame = free_resolution(&i, None).unwrap();
        assert!(frame.is_complex());
        let c = minimal_resolution(&i).unwrap();
        assert_eq!(c.ranks(), vec![1, 6, 8, 3]);
        assert_eq!(c.d(1).row(0), i.gens());
        assert!(c.is_complex() && c.is_minimal());
        assert_eq!(c.twists(2), &[3; 8]);
    }

    #[test]
    fn syzygies_of_small_rows() {
        let r = PolyRing::grevlex(&["x", "y"]).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let row = |gens: &[&str], twists: Vec<i64>| {
            ComplexMap::new(
                GradedFreeModule::new(twists),
                GradedFreeModule::new(vec![0]),
                PolyMatrix::row_vector(&r, gens.iter().map(|g| p(g)).collect()),
            )
        };
        let m = row(&["x", "y"], vec![1, 1]);
        let s = syzygy_module(&m);
        assert_eq!(s.source.twists(), &[2]);
        assert!(m.matrix.mul(&s.matrix).is_zero());
        let col = s.matrix.column(0);
        assert!(col[0] == p("-y") && col[1] == p("x") || col[0] == p("y") && col[1] == p("-x"));

        let m = row(&["x^2", "x*y", "y^2"], vec![2, 2, 2]);
        let s = syzygy_module(&m);
        assert_eq!(s.source.twists(), &[3, 3]);
        assert!(m.matrix.mul(&s.matrix).is_zero());
    }

    #[test]
    fn cancels_inserted_identity_block() {
        let i = ideal(&["x", "y", "z"], &["x", "y", "z"]);
        let c = minimal_resolution(&i).unwrap();
        // Add S(-2) -> S(-2) to F_2 and F_1 with the identity between them.
        let ring = c.ring().clone();
        let d1 = c.d(1);
        let d2 = c.d(2);
        let d3 = c.d(3);
        let one = Polynomial::one(&ring);
        let zero = || Polynomial::zero(&ring);
        let d1x = PolyMatrix::from_fn(&ring, 1, 4, |_, k| if k < 3 { d1.get(0, k).clone() } else { zero() });
        let d2x = PolyMatrix::from_fn(&ring, 4, 4, |r, k| match (r < 3, k < 3) {
            (true, true) => d2.get(r, k).clone(),
            (false, false) => one.clone(),
            _ => zero(),
        });
        let d3x = PolyMatrix::from_fn(&ring, 4, 1, |r, _| if r < 3 { d3.get(r, 0).clone() } else { zero() });
        let modules = vec![
            GradedFreeModule::new(vec![0]),
            GradedFreeModule::new(vec![1, 1, 1, 2]),
            GradedFreeModule::new(vec![2, 2, 2, 2]),
            GradedFreeModule::new(vec![3]),
        ];
        let big = Complex::new(&ring, modules, vec![d1x, d2x, d3x]).unwrap();
        assert!(big.is_complex());
        let small = minimalize(&big);
        assert_eq!(small, c);
        assert_eq!(minimalize(&c), c);
    }
}

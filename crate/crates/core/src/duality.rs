//! Twisted duals of Gorenstein resolutions and self-dual bases.

use num_traits::One;

use crate::exterior::{symmetry_classify, wedge_compose, ExteriorError, ExteriorMatrix, Symmetry};
use crate::groebner::Ideal;
use crate::linalg::QMatrix;
use crate::matrix::PolyMatrix;
use crate::ring::Coeff;
use crate::resolution::{graded_solve, minimal_resolution, BettiTable, Complex, GradedFreeModule, ResolutionError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("last module has rank {0}, not 1")]
    NotGorenstein(usize),
    #[error("complexes of lengths {0} and {1} cannot be compared")]
    LengthMismatch(usize, usize),
    #[error("no lift exists in homological degree {0}")]
    LiftInfeasible(usize),
    #[error("lifted map in homological degree {0} is not an invertible constant matrix")]
    NotInvertible(usize),
    #[error("symmetrized comparison map is singular in homological degree {0}")]
    SingularSymmetrization(usize),
    #[error("lifted comparison is not symmetric up to sign")]
    NoSymmetry,
}

/// `ω ≅ S_X(t)`, read off from `F_e = S(−(r + t + 1))` with `r + 1` variables.
pub fn gorenstein_twist(c: &Complex) -> Result<i64, DualityError> {
    let top = c.module(c.len());
    if top.rank() != 1 {
        return Err(DualityError::NotGorenstein(top.rank()));
    }
    Ok(top.twists()[0] - c.ring().nvars() as i64)
}

/// `Hom(F_{e−•}, S(−r−t−1))`: twists `a ↦ r + t + 1 − a`, differentials
/// `d_i^∨ = d_{e−i+1}^T` without extra signs.
pub fn dualize_complex(c: &Complex, t: i64) -> Complex {
    let e = c.len();
    let total = c.ring().nvars() as i64 + t;
    let modules = (0..=e)
        .map(|i| GradedFreeModule::new(c.twists(e - i).iter().map(|a| total - a).collect()))
        .collect();
    let maps = (1..=e).map(|i| c.d(e - i + 1).transpose()).collect();
    Complex::new(c.ring(), modules, maps).expect("the dual of a graded complex is graded")
}

/// Lifts `f_0` to maps `f_i: source F_i → target F_i` with
/// `d_i^target f_i = f_{i−1} d_i^source`, degree by degree.
pub fn lift_chain_map(source: &Complex, target: &Complex, f0: &PolyMatrix) -> Result<Vec<PolyMatrix>, DualityError> {
    if source.len() != target.len() {
        return Err(DualityError::LengthMismatch(source.len(), target.len()));
    }
    let mut maps = vec![f0.clone()];
    for i in 1..=source.len() {
        let rhs = maps[i - 1].mul(source.d(i));
        let f = graded_solve(target.d(i), target.twists(i), target.twists(i - 1), &rhs, source.twists(i))
            .ok_or(DualityError::LiftInfeasible(i))?;
        maps.push(f);
    }
    Ok(maps)
}

/// The record of a self-dual basis change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityData {
    pub twist: i64,
    /// `f_e^T = sign · f_0` for the lifted comparison `F^∨ → F`.
    pub sign: i64,
    /// Symmetrized comparison maps `u_i: F^∨_i → F_i`, for `0 ≤ i ≤ e`.
    pub comparison: Vec<QMatrix>,
    /// Basis changes `T_i`; the new differentials are `T_{i−1}^{-1} d_i T_i`.
    pub transitions: Vec<QMatrix>,
    /// For even `e = 2m`, the pairing `φ = u_m` with `φ^T = sign · φ`.
    pub pairing: Option<QMatrix>,
}

/// Rewrites a Gorenstein minimal resolution in bases where it is visibly
/// self-dual: the upper half of the modules is replaced by the dual bases of
/// the lower half through the symmetrized comparison map.
pub fn self_dual_bases(c: &Complex) -> Result<(Complex, DualityData), DualityError> {
    let twist = gorenstein_twist(c)?;
    let e = c.len();
    let dual = dualize_complex(c, twist);
    let one = PolyMatrix::from_constant(c.ring(), &QMatrix::identity(1));
    let lifted = lift_chain_map(&dual, c, &one)?;
    let mut f = Vec::with_capacity(e + 1);
    for (i, m) in lifted.iter().enumerate() {
        f.push(m.to_constant().ok_or(DualityError::NotInvertible(i))?);
    }
    let top = f[e].get(0, 0).clone();
    let sign = if top.is_one() {
        1
    } else if (-top).is_one() {
        -1
    } else {
        return Err(DualityError::NoSymmetry);
    };
    let half = Coeff::new(1.into(), 2.into());
    let tau = Coeff::from_integer(sign.into());
    let u: Vec<QMatrix> = (0..=e)
        .map(|i| f[i].add(&f[e - i].transpose().scale(&tau)).scale(&half))
        .collect();
    let m = e / 2;
    let mut inverses = Vec::with_capacity(e + 1);
    for (i, ui) in u.iter().enumerate() {
        inverses.push(ui.inverse().ok_or(DualityError::SingularSymmetrization(i))?);
    }
    let transitions: Vec<QMatrix> = (0..=e)
        .map(|i| if i <= m { QMatrix::identity(c.module(i).rank()) } else { u[i].clone() })
        .collect();
    let mut modules = Vec::with_capacity(e + 1);
    for i in 0..=e {
        modules.push(if i <= m { c.module(i).clone() } else { dual.module(i).clone() });
    }
    let maps: Vec<PolyMatrix> = (1..=e)
        .map(|i| {
            let d = c.d(i).mul_constant_right(&transitions[i]);
            if i - 1 <= m {
                d
            } else {
                d.mul_constant_left(&inverses[i - 1])
            }
        })
        .collect();
    let rebased = Complex::new(c.ring(), modules, maps).expect("constant basis changes preserve grading");
    let pairing = e.is_multiple_of(2).then(|| u[m].clone());
    Ok((
        rebased,
        DualityData {
            twist,
            sign,
            comparison: u,
            transitions,
            pairing,
        },
    ))
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("resolution has length {0}; at least 3 is needed")]
    TooShort(usize),
    #[error("not Gorenstein: the last module has rank {0}")]
    NotGorenstein(usize),
    #[error("module F_{0} is not generated in a single degree")]
    NotPure(usize),
    #[error("differential d_{0} is not linear")]
    NonLinearStrand(usize),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// Outcome of the constructive skew-symmetry check.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub betti: BettiTable,
    pub codimension: usize,
    pub complex: Complex,
    pub duality: DualityData,
    /// `D_{e−1} = d_2 ∧ ... ∧ d_{e−1}` in the self-dual bases.
    pub wedge: ExteriorMatrix,
    pub symmetry: Symmetry,
}

impl TheoremReport {
    pub fn is_skew(&self) -> bool {
        self.symmetry == Symmetry::SkewSymmetric
    }
}

/// Checks that `F_1, ..., F_{e−1}` are pure and `d_2, ..., d_{e−1}` linear.
fn check_shape(c: &Complex) -> Result<(), TheoremError> {
    let e = c.len();
    if e < 3 {
        return Err(TheoremError::TooShort(e));
    }
    if c.module(e).rank() != 1 {
        return Err(TheoremError::NotGorenstein(c.module(e).rank()));
    }
    for i in 1..e {
        let tw = c.twists(i);
        if tw.iter().any(|&a| a != tw[0]) {
            return Err(TheoremError::NotPure(i));
        }
    }
    for i in 2..e {
        if !c.d(i).is_linear() {
            return Err(TheoremError::NonLinearStrand(i));
        }
    }
    Ok(())
}

/// Resolves, moves to self-dual bases and classifies `D_{e−1}`.
pub fn theorem_check(ideal: &Ideal) -> Result<TheoremReport, TheoremError> {
    let c = minimal_resolution(ideal)?;
    theorem_check_complex(&c)
}

/// The same check on an already computed minimal resolution.
pub fn theorem_check_complex(c: &Complex) -> Result<TheoremReport, TheoremError> {
    check_shape(c)?;
    let betti = BettiTable::from_complex(c)?;
    let (complex, duality) = self_dual_bases(c)?;
    let e = complex.len();
    let wedge = wedge_compose(&complex.differentials()[1..e - 1])?;
    let symmetry = symmetry_classify(&wedge)?;
    Ok(TheoremReport {
        betti,
        codimension: e,
        complex,
        duality,
        wedge,
        symmetry,
    })
}

/// Lifts the identity of `F_0 = S` between two resolutions of the same
/// module and checks every lift is an invertible constant matrix, so that
/// `d_i^target w_i = w_{i−1} d_i^source`.
pub fn comparison_isomorphism(source: &Complex, target: &Complex) -> Result<Vec<QMatrix>, DualityError> {
    let one = PolyMatrix::from_constant(source.ring(), &QMatrix::identity(1));
    let lifted = lift_chain_map(source, target, &one)?;
    let mut out = Vec::with_capacity(lifted.len());
    for (i, m) in lifted.iter().enumerate() {
        let c = m.to_constant().filter(|c| c.is_square() && c.inverse().is_some());
        out.push(c.ok_or(DualityError::NotInvertible(i))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_example;
    use crate::resolution::minimal_resolution;

    #[test]
    fn twist_and_double_dual() {
        let entry = corpus_example("ci5").unwrap();
        let c = minimal_resolution(&entry.ideal).unwrap();
        let t = gorenstein_twist(&c).unwrap();
        assert_eq!(t, 0);
        let dual = dualize_complex(&c, t);
        assert!(dual.is_complex());
        assert_eq!(dualize_complex(&dual, t), c);
        let rnc = minimal_resolution(&corpus_example("rnc4").unwrap().ideal).unwrap();
        assert_eq!(gorenstein_twist(&rnc), Err(DualityError::NotGorenstein(3)));
    }

    #[test]
    fn identity_lifts_to_identity() {
        let c = minimal_resolution(&corpus_example("rnc4").unwrap().ideal).unwrap();
        let w = comparison_isomorphism(&c, &c).unwrap();
        for (i, m) in w.iter().enumerate() {
            assert_eq!(*m, QMatrix::identity(c.module(i).rank()));
        }
    }
}

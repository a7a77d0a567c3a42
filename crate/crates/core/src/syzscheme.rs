//! Quadric syzygy schemes of Koszul cycles.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::duality::TheoremReport;
use crate::exterior::{column_to_cycle, symmetry_classify, ExteriorError, ExteriorMatrix, Symmetry};
use crate::groebner::{ideal_equal, colon_ideal, intersect_ideals, saturate, GroebnerError, Ideal};
use crate::koszul::{is_koszul_cycle, KoszulChain};
use crate::linalg::QMatrix;
use crate::ring::{binomial, Coeff, Monomial, Polynomial};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SyzygySchemeError {
    #[error("chain is not a Koszul cycle")]
    NotACycle,
    #[error("chain is zero")]
    ZeroChain,
    #[error("coefficient row is zero")]
    ZeroRow,
    #[error("coefficient row has length {found}, expected {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("no cycles given")]
    NoCycles,
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Reduced row echelon basis of the span of `polys`, leading monomials
/// descending. Canonical for the span.
pub fn polynomial_span_basis(polys: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().iter().map(|(m, _)| m.clone())).collect();
    monos.sort_by(|a, b| ring.compare(b, a));
    monos.dedup();
    let mat = QMatrix::from_fn(polys.len(), monos.len(), |r, c| polys[r].coefficient(&monos[c]));
    let (rref, pivots) = mat.rref();
    (0..pivots.len())
        .map(|r| {
            let terms = (0..monos.len())
                .filter(|&c| !rref.get(r, c).is_zero())
                .map(|c| (monos[c].clone(), rref.get(r, c).clone()))
                .collect();
            Polynomial::from_terms(&ring, terms)
        })
        .collect()
}

/// The quadrics of a minimal representation of `γ`: a canonical basis of the
/// span of its coefficients on the wedge-monomial basis.
pub fn syzygy_quadrics(gamma: &KoszulChain) -> Result<Vec<Polynomial>, SyzygySchemeError> {
    if !is_koszul_cycle(gamma) {
        return Err(SyzygySchemeError::NotACycle);
    }
    let coeffs: Vec<Polynomial> = gamma.terms().map(|(_, f)| f.clone()).collect();
    Ok(polynomial_span_basis(&coeffs))
}

/// `I(γ)`, generated by [`syzygy_quadrics`].
pub fn syzygy_ideal(gamma: &KoszulChain) -> Result<Ideal, SyzygySchemeError> {
    Ok(Ideal::new(gamma.ring(), syzygy_quadrics(gamma)?)?)
}

/// Number of quadrics needed to write `γ`.
pub fn quadric_count(gamma: &KoszulChain) -> Result<usize, SyzygySchemeError> {
    Ok(syzygy_quadrics(gamma)?.len())
}

/// Completes `c` to an invertible `P` with first row `c`, adding standard
/// basis rows in order whenever they raise the rank.
pub fn complete_to_invertible(c: &[Coeff]) -> Result<QMatrix, SyzygySchemeError> {
    if c.iter().all(Zero::is_zero) {
        return Err(SyzygySchemeError::ZeroRow);
    }
    let n = c.len();
    let mut rows = vec![c.to_vec()];
    for j in 0..n {
        if rows.len() == n {
            break;
        }
        let mut candidate = rows.clone();
        let mut e = vec![Coeff::zero(); n];
        e[j] = Coeff::one();
        candidate.push(e);
        if QMatrix::from_rows(candidate.clone(), n).rank() == candidate.len() {
            rows = candidate;
        }
    }
    Ok(QMatrix::from_rows(rows, n))
}

/// The result of moving a combination of columns into the first column.
#[derive(Debug, Clone)]
pub struct DropTransform {
    pub p: QMatrix,
    /// `D' = P D P^T`.
    pub matrix: ExteriorMatrix,
    /// `Q'` with `Q' P = Q`.
    pub gens: Vec<Polynomial>,
}

impl DropTransform {
    /// The cycle of column 1 of `D'` over `Q'`; it never involves `Q'_1`.
    pub fn first_cycle(&self) -> Result<KoszulChain, SyzygySchemeError> {
        Ok(column_to_cycle(&self.matrix, 0, &self.gens)?)
    }
}

/// `D' = P D P^T` for the completion `P` of `c`, with generators `Q' = Q P^{-1}`.
pub fn drop_generator_transform(
    d: &ExteriorMatrix,
    c: &[Coeff],
    gens: &[Polynomial],
) -> Result<DropTransform, SyzygySchemeError> {
    if symmetry_classify(d)? != Symmetry::SkewSymmetric && !d.is_zero() {
        return Err(SyzygySchemeError::NotSkew);
    }
    if c.len() != d.nrows() || gens.len() != d.nrows() {
        return Err(SyzygySchemeError::RowLength {
            expected: d.nrows(),
            found: if c.len() != d.nrows() { c.len() } else { gens.len() },
        });
    }
    let p = complete_to_invertible(c)?;
    let pinv = p.inverse().expect("completion is invertible");
    let matrix = d.mul_constant_left(&p).mul_constant_right(&p.transpose());
    let ring = d.ring();
    let new_gens = (0..gens.len())
        .map(|j| {
            let mut acc = Polynomial::zero(ring);
            for (i, g) in gens.iter().enumerate() {
                let c = pinv.get(i, j);
                if !c.is_zero() {
                    acc = &acc + &g.scale(c);
                }
            }
            acc
        })
        .collect();
    Ok(DropTransform { p, matrix, gens: new_gens })
}

/// One sampled cycle and its quadric count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricSample {
    pub label: String,
    pub count: usize,
}

/// Quadric counts of sampled cycles against `C(e,2) ≤ m ≤ C(e+1,2) − 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricBounds {
    pub lower: usize,
    pub upper: usize,
    pub samples: Vec<QuadricSample>,
}

impl QuadricBounds {
    pub fn all_within(&self) -> bool {
        self.samples.iter().all(|s| self.lower <= s.count && s.count <= self.upper)
    }
}

/// A random nonzero row with entries in `-3..=3`.
pub fn random_row(rng: &mut impl Rng, n: usize) -> Vec<Coeff> {
    loop {
        let row: Vec<Coeff> = (0..n).map(|_| Coeff::from_integer(rng.gen_range(-3i64..=3).into())).collect();
        if row.iter().any(|c| !c.is_zero()) {
            return row;
        }
    }
}

/// Samples every column of `D_{e−1}` plus `samples` seeded random
/// combinations moved into the first column.
pub fn quadric_count_bounds(
    report: &TheoremReport,
    samples: usize,
    seed: u64,
) -> Result<QuadricBounds, SyzygySchemeError> {
    let e = report.codimension as i64;
    let gens = report.complex.d(1).row(0).to_vec();
    let d = &report.wedge;
    let mut out = Vec::new();
    for col in 0..d.ncols() {
        let gamma = column_to_cycle(d, col, &gens)?;
        out.push(QuadricSample {
            label: format!("column {}", col + 1),
            count: quadric_count(&gamma)?,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let c = random_row(&mut rng, d.nrows());
        let t = drop_generator_transform(d, &c, &gens)?;
        out.push(QuadricSample {
            label: format!("random {}", k + 1),
            count: quadric_count(&t.first_cycle()?)?,
        });
    }
    Ok(QuadricBounds {
        lower: binomial(e, 2) as usize,
        upper: binomial(e + 1, 2) as usize - 2,
        samples: out,
    })
}

/// Decomposition data for the syzygy scheme of one cycle.
#[derive(Debug, Clone)]
pub struct SyzygyIdealReport {
    pub quadrics: Vec<Polynomial>,
    pub ideal: Ideal,
    /// `(I(γ) : I_X)`.
    pub colon: Ideal,
    /// Whether `I(γ) = I_X ∩ (I(γ) : I_X)`.
    pub decomposition_verified: bool,
    /// `I(γ)` saturated by the irrelevant ideal.
    pub saturation: Ideal,
    pub saturation_equals_ideal: bool,
}

impl SyzygyIdealReport {
    pub fn quadric_count(&self) -> usize {
        self.quadrics.len()
    }
}

pub fn syzygy_scheme_decompose(gamma: &KoszulChain, ideal_x: &Ideal) -> Result<SyzygyIdealReport, SyzygySchemeError> {
    let quadrics = syzygy_quadrics(gamma)?;
    let ideal = Ideal::new(gamma.ring(), quadrics.clone())?;
    let colon = colon_ideal(&ideal, ideal_x)?;
    let union = intersect_ideals(ideal_x, &colon)?;
    let decomposition_verified = ideal_equal(&ideal, &union);
    let saturation = saturate(&ideal, &Ideal::irrelevant(gamma.ring()))?.ideal;
    let saturation_equals_ideal = ideal_equal(&saturation, ideal_x);
    Ok(SyzygyIdealReport {
        quadrics,
        ideal,
        colon,
        decomposition_verified,
        saturation,
        saturation_equals_ideal,
    })
}

/// The smallest `W ⊂ S_1` with `γ ∈ ∧^p W ⊗ S`, as a reduced echelon basis
/// of linear forms: spanned by the contractions of the exterior parts.
pub fn support_span(gamma: &KoszulChain) -> Result<Vec<Polynomial>, SyzygySchemeError> {
    if gamma.is_zero() {
        return Err(SyzygySchemeError::ZeroChain);
    }
    let ring = gamma.ring();
    let n = ring.nvars();
    // Exterior part for every monomial of the coefficients.
    let mut parts: BTreeMap<Vec<u16>, BTreeMap<Vec<usize>, Coeff>> = BTreeMap::new();
    for (idx, f) in gamma.terms() {
        for (m, c) in f.terms() {
            parts.entry(m.exponents().to_vec()).or_default().insert(idx.clone(), c.clone());
        }
    }
    let mut forms: Vec<Polynomial> = Vec::new();
    for omega in parts.values() {
        // Contract with every (p−1)-subset K: the coefficient of x_i is the
        // signed coefficient of K ∪ {i}.
        let mut contractions: BTreeMap<Vec<usize>, Vec<Coeff>> = BTreeMap::new();
        for (idx, c) in omega {
            for (pos, &i) in idx.iter().enumerate() {
                let mut k = idx.clone();
                k.remove(pos);
                let row = contractions.entry(k).or_insert_with(|| vec![Coeff::zero(); n]);
                let signed = if (idx.len() - 1 - pos) % 2 == 0 { c.clone() } else { -c.clone() };
                row[i] += signed;
            }
        }
        for row in contractions.values() {
            forms.push(Polynomial::from_linear_coefficients(ring, row));
        }
    }
    forms.retain(|f| !f.is_zero());
    Ok(polynomial_span_basis(&forms))
}

/// `Σ I(γ)` saturated by the irrelevant ideal, whose zero locus is the
/// intersection of the syzygy schemes.
pub fn intersected_syzygy_scheme(cycles: &[KoszulChain]) -> Result<Ideal, SyzygySchemeError> {
    let first = cycles.first().ok_or(SyzygySchemeError::NoCycles)?;
    let mut gens = Vec::new();
    for gamma in cycles {
        gens.extend(syzygy_quadrics(gamma)?);
    }
    let ring = first.ring();
    let sum = Ideal::new(ring, polynomial_span_basis(&gens))?;
    Ok(saturate(&sum, &Ideal::irrelevant(ring))?.ideal)
}

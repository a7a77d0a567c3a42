//! Koszul complexes on `S_1` with coefficients in `S`, `S_X` or `I_X`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exterior::ExteriorElement;
use crate::groebner::{GroebnerBasis, Ideal};
use crate::linalg::sparse_rank;
use crate::ring::{binomial, Coeff, Monomial, PolyRing, Polynomial};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error("the differential is not defined in exterior degree 0")]
    ZeroDegree,
    #[error("chain is not a Koszul cycle")]
    NotACycle,
    #[error("chains live in different coefficient modules")]
    ContextMismatch,
}

/// Where the polynomial coefficients of a chain live.
#[derive(Clone)]
pub enum ChainContext {
    /// The polynomial ring `S`.
    Polynomial,
    /// The ideal `I_X`; arithmetic is that of `S`.
    Ideal,
    /// The quotient `S_X`; coefficients are kept in normal form.
    Quotient(Arc<GroebnerBasis>),
}

impl ChainContext {
    fn same(&self, other: &ChainContext) -> bool {
        match (self, other) {
            (ChainContext::Polynomial, ChainContext::Polynomial) | (ChainContext::Ideal, ChainContext::Ideal) => true,
            (ChainContext::Quotient(a), ChainContext::Quotient(b)) => {
                Arc::ptr_eq(a, b) || a.elements() == b.elements()
            }
            _ => false,
        }
    }

    fn normalize(&self, f: Polynomial) -> Polynomial {
        match self {
            ChainContext::Quotient(gb) => gb.reduce(&f),
            _ => f,
        }
    }
}

impl fmt::Debug for ChainContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainContext::Polynomial => write!(f, "S"),
            ChainContext::Ideal => write!(f, "I"),
            ChainContext::Quotient(_) => write!(f, "S/I"),
        }
    }
}

/// An element of `∧^p S_1 ⊗ M_q`.
#[derive(Clone, Debug)]
pub struct KoszulChain {
    ring: Arc<PolyRing>,
    p: usize,
    q: i64,
    context: ChainContext,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

impl PartialEq for KoszulChain {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.context.same(&other.context) && self.terms == other.terms
    }
}

impl KoszulChain {
    /// Builds a chain from `(increasing index tuple, coefficient)` pairs.
    pub fn new(
        ring: &Arc<PolyRing>,
        p: usize,
        q: i64,
        context: ChainContext,
        terms: BTreeMap<Vec<usize>, Polynomial>,
    ) -> Self {
        let terms = terms
            .into_iter()
            .map(|(k, f)| {
                assert_eq!(k.len(), p, "wedge monomial of the wrong length");
                assert!(k.windows(2).all(|w| w[0] < w[1]), "wedge monomial not increasing");
                (k, context.normalize(f))
            })
            .filter(|(_, f)| !f.is_zero())
            .collect();
        KoszulChain {
            ring: ring.clone(),
            p,
            q,
            context,
            terms,
        }
    }

    pub fn zero(ring: &Arc<PolyRing>, p: usize, q: i64, context: ChainContext) -> Self {
        KoszulChain::new(ring, p, q, context, BTreeMap::new())
    }

    /// `w ⊗ f` for an exterior element `w`.
    pub fn from_tensor(w: &ExteriorElement, f: &Polynomial, context: ChainContext) -> Self {
        let q = f.homogeneous_degree().map_or(0, i64::from);
        let terms = w.terms().map(|(k, c)| (k.clone(), f.scale(c))).collect();
        KoszulChain::new(w.ring(), w.degree(), q, context, terms)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn context(&self) -> &ChainContext {
        &self.context
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Polynomial {
        self.terms.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    pub fn add(&self, other: &KoszulChain) -> Result<KoszulChain, KoszulError> {
        if !self.context.same(&other.context) || self.p != other.p {
            return Err(KoszulError::ContextMismatch);
        }
        let mut terms = self.terms.clone();
        for (k, f) in &other.terms {
            let e = terms.entry(k.clone()).or_insert_with(|| Polynomial::zero(&self.ring));
            *e = &*e + f;
        }
        Ok(KoszulChain::new(&self.ring, self.p, self.q, self.context.clone(), terms))
    }

    pub fn scale(&self, c: &Coeff) -> KoszulChain {
        let terms = self.terms.iter().map(|(k, f)| (k.clone(), f.scale(c))).collect();
        KoszulChain::new(&self.ring, self.p, self.q, self.context.clone(), terms)
    }

    /// Gcd of all rational coefficients appearing in the chain.
    pub fn content(&self) -> Coeff {
        crate::exterior::content_of(self.terms.values().flat_map(|f| f.terms().iter().map(|(_, c)| c)))
    }
}

impl fmt::Display for KoszulChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, g)| {
                let w = if k.is_empty() {
                    "1".to_string()
                } else {
                    k.iter().map(|&i| self.ring.variables()[i].as_str()).collect::<Vec<_>>().join("^")
                };
                format!("{w} (x) ({g})")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `δ(x_{i_1} ∧ ... ∧ x_{i_p} ⊗ f) = Σ_j (−1)^{j−1} ... x̂_{i_j} ... ⊗ x_{i_j} f`.
pub fn koszul_differential(c: &KoszulChain) -> Result<KoszulChain, KoszulError> {
    if c.p == 0 {
        return Err(KoszulError::ZeroDegree);
    }
    let ring = &c.ring;
    let mut terms: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
    for (idx, f) in &c.terms {
        for (j, &v) in idx.iter().enumerate() {
            let mut rest = idx.clone();
            rest.remove(j);
            let mut g = f.mul_term(&Monomial::variable(ring.nvars(), v), &Coeff::one());
            if j % 2 == 1 {
                g = -&g;
            }
            let e = terms.entry(rest).or_insert_with(|| Polynomial::zero(ring));
            *e = &*e + &g;
        }
    }
    Ok(KoszulChain::new(ring, c.p - 1, c.q + 1, c.context.clone(), terms))
}

/// True iff the differential vanishes; chains of exterior degree 0 are cycles.
pub fn is_koszul_cycle(c: &KoszulChain) -> bool {
    match koszul_differential(c) {
        Ok(d) => d.is_zero(),
        Err(_) => true,
    }
}

/// Representative-level product: wedge the exterior parts, multiply the
/// coefficients.
pub fn koszul_cup_product(a: &KoszulChain, b: &KoszulChain) -> Result<KoszulChain, KoszulError> {
    if !a.context.same(&b.context) {
        return Err(KoszulError::ContextMismatch);
    }
    if !is_koszul_cycle(a) || !is_koszul_cycle(b) {
        return Err(KoszulError::NotACycle);
    }
    let ring = &a.ring;
    let mut terms: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
    for (ia, fa) in &a.terms {
        for (ib, fb) in &b.terms {
            let w = ExteriorElement::basis(ring, ia).wedge(&ExteriorElement::basis(ring, ib));
            let prod = fa * fb;
            for (k, c) in w.terms() {
                let e = terms.entry(k.clone()).or_insert_with(|| Polynomial::zero(ring));
                *e = &*e + &prod.scale(c);
            }
        }
    }
    Ok(KoszulChain::new(ring, a.p + b.p, a.q + b.q, a.context.clone(), terms))
}

/// Which module the Koszul complex is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KoszulModule {
    /// The coordinate ring `S_X = S/I`.
    Quotient,
    /// The ideal `I_X` itself.
    Ideal,
}

/// `K_{p,q}(M, S_1)` for `M` the quotient or the ideal.
#[derive(Debug, Clone)]
pub struct CohomologyQuery {
    pub ideal: Ideal,
    pub module: KoszulModule,
    pub p: usize,
    pub q: i64,
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn wedge_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// A basis of the degree-`q` piece of the module as polynomials, and for the
/// quotient its Gröbner basis for reducing images.
struct Piece {
    basis: Vec<Polynomial>,
}

fn module_piece(gb: &GroebnerBasis, module: KoszulModule, q: i64) -> Piece {
    let ring = gb.ring();
    if q < 0 {
        return Piece { basis: Vec::new() };
    }
    let basis = match module {
        KoszulModule::Quotient => gb
            .standard_monomials(q as u32)
            .into_iter()
            .map(|m| Polynomial::term(ring, m, Coeff::one()))
            .collect(),
        KoszulModule::Ideal => ring
            .graded_piece_basis(q)
            .unwrap()
            .into_iter()
            .filter(|m| !gb.is_standard(m))
            .map(|m| {
                let f = Polynomial::term(ring, m, Coeff::one());
                let nf = gb.reduce(&f);
                &f - &nf
            })
            .collect(),
    };
    Piece { basis }
}

/// Rank of `δ: ∧^p S_1 ⊗ M_q → ∧^{p−1} S_1 ⊗ M_{q+1}`.
fn differential_rank(gb: &GroebnerBasis, module: KoszulModule, p: usize, q: i64) -> usize {
    if p == 0 || q < 0 {
        return 0;
    }
    let ring = gb.ring();
    let n = ring.nvars();
    let piece = module_piece(gb, module, q);
    if piece.basis.is_empty() {
        return 0;
    }
    // Images x_i * b for every basis element b, in the target's coordinates.
    let mut coords: HashMap<(Vec<usize>, Monomial), usize> = HashMap::new();
    let mut images: Vec<Vec<Polynomial>> = Vec::with_capacity(piece.basis.len());
    for b in &piece.basis {
        let row: Vec<Polynomial> = (0..n)
            .map(|i| {
                let g = b.mul_term(&Monomial::variable(n, i), &Coeff::one());
                match module {
                    KoszulModule::Quotient => gb.reduce(&g),
                    KoszulModule::Ideal => g,
                }
            })
            .collect();
        images.push(row);
    }
    let mut rows = Vec::new();
    for idx in wedge_basis(n, p) {
        for img in &images {
            let mut row: BTreeMap<usize, Coeff> = BTreeMap::new();
            for (j, &v) in idx.iter().enumerate() {
                let mut rest = idx.clone();
                rest.remove(j);
                let negative = j % 2 == 1;
                for (m, c) in img[v].terms() {
                    let next = coords.len();
                    let col = *coords.entry((rest.clone(), m.clone())).or_insert(next);
                    let e = row.entry(col).or_insert_with(Coeff::zero);
                    if negative {
                        *e -= c;
                    } else {
                        *e += c;
                    }
                }
            }
            rows.push(row.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>());
        }
    }
    sparse_rank(rows)
}

/// Dimension of the middle homology at `∧^p S_1 ⊗ M_q`.
pub fn koszul_cohomology_dim(query: &CohomologyQuery) -> usize {
    if query.q < 0 {
        return 0;
    }
    let gb = query.ideal.groebner();
    let n = gb.ring().nvars();
    let piece = module_piece(&gb, query.module, query.q);
    let chains = binomial(n as i64, query.p as i64) as usize * piece.basis.len();
    if chains == 0 {
        return 0;
    }
    let out = differential_rank(&gb, query.module, query.p, query.q);
    let inc = differential_rank(&gb, query.module, query.p + 1, query.q - 1);
    chains - out - inc
}

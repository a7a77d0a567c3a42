use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use super::{free_resolution, graded_solve, Complex, GradedFreeModule, ResolutionError};
use crate::groebner::Ideal;
use crate::linalg::{primitive_integer_row, SparseEchelon};
use crate::matrix::PolyMatrix;
use crate::ring::{monomials_of_degree, Coeff, Monomial, PolyRing, Polynomial};

/// Column-sparse working copy of a differential.
struct Sparse {
    cols: Vec<BTreeMap<usize, Polynomial>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl Sparse {
    fn from(m: &PolyMatrix) -> Sparse {
        let cols = (0..m.ncols())
            .map(|c| {
                (0..m.nrows())
                    .filter(|&r| !m.get(r, c).is_zero())
                    .map(|r| (r, m.get(r, c).clone()))
                    .collect()
            })
            .collect();
        Sparse {
            cols,
            row_alive: vec![true; m.nrows()],
            col_alive: vec![true; m.ncols()],
        }
    }

    fn find_unit(&self) -> Option<(usize, usize, Coeff)> {
        for (c, col) in self.cols.iter().enumerate() {
            if !self.col_alive[c] {
                continue;
            }
            for (&r, p) in col {
                let k = p.constant_term();
                if !k.is_zero() {
                    return Some((r, c, k));
                }
            }
        }
        None
    }

    fn kill_row(&mut self, r: usize) {
        self.row_alive[r] = false;
        for col in &mut self.cols {
            col.remove(&r);
        }
    }

    fn kill_col(&mut self, c: usize) {
        self.col_alive[c] = false;
        self.cols[c].clear();
    }

    /// Schur complement on the unit `u` at `(r, c)`, then removes row `r`
    /// and column `c`.
    fn pivot(&mut self, r: usize, c: usize, u: &Coeff) {
        let alpha: Vec<(usize, Polynomial)> = self.cols[c]
            .iter()
            .filter(|(&rr, _)| rr != r)
            .map(|(&rr, p)| (rr, p.clone()))
            .collect();
        let inv = u.recip();
        for cc in 0..self.cols.len() {
            if cc == c || !self.col_alive[cc] {
                continue;
            }
            let Some(beta) = self.cols[cc].get(&r).cloned() else {
                continue;
            };
            let beta = beta.scale(&inv);
            for (rr, a) in &alpha {
                let entry = self.cols[cc].entry(*rr).or_insert_with(|| Polynomial::zero(a.ring()));
                *entry = &*entry - &(a * &beta);
                if entry.is_zero() {
                    self.cols[cc].remove(rr);
                }
            }
        }
        self.kill_row(r);
        self.kill_col(c);
    }

    fn to_matrix(&self, ring: &Arc<PolyRing>, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(ring, rows.len(), cols.len(), |i, j| {
            self.cols[cols[j]]
                .get(&rows[i])
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(ring))
        })
    }
}

/// Cancels unit entries by Gaussian elimination until no differential has a
/// nonzero constant entry, then orders each basis by twist (stably).
pub fn minimalize(c: &Complex) -> Complex {
    let ring = c.ring().clone();
    let mut maps: Vec<Sparse> = c.differentials().iter().map(Sparse::from).collect();
    for i in 0..maps.len() {
        while let Some((r, col, u)) = maps[i].find_unit() {
            maps[i].pivot(r, col, &u);
            if i > 0 {
                maps[i - 1].kill_col(r);
            }
            if i + 1 < maps.len() {
                maps[i + 1].kill_row(col);
            }
        }
    }
    // Surviving basis elements of each module, sorted by twist.
    let mut alive: Vec<Vec<usize>> = Vec::new();
    for (p, m) in c.modules().iter().enumerate() {
        let mut idx: Vec<usize> = (0..m.rank())
            .filter(|&k| {
                let as_row = p < maps.len() && !maps[p].row_alive[k];
                let as_col = p > 0 && !maps[p - 1].col_alive[k];
                !as_row && !as_col
            })
            .collect();
        idx.sort_by_key(|&k| m.twists()[k]);
        alive.push(idx);
    }
    let modules: Vec<GradedFreeModule> = alive
        .iter()
        .enumerate()
        .map(|(p, idx)| GradedFreeModule::new(idx.iter().map(|&k| c.twists(p)[k]).collect()))
        .collect();
    let matrices = maps
        .iter()
        .enumerate()
        .map(|(i, m)| m.to_matrix(&ring, &alive[i], &alive[i + 1]))
        .collect();
    Complex::new(&ring, modules, matrices)
        .expect("cancellation preserves the grading")
        .trimmed()
}

/// A minimal generating subset of `ideal`'s generators: generators are taken
/// by increasing degree (input order within a degree) and kept unless they
/// lie in the ideal of those already kept.
pub fn minimal_generators(ideal: &Ideal) -> Vec<Polynomial> {
    let mut gens: Vec<&Polynomial> = ideal.gens().iter().collect();
    gens.sort_by_key(|g| g.homogeneous_degree());
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in gens {
        let redundant = !kept.is_empty() && Ideal::new(ideal.ring(), kept.clone()).unwrap().contains(g);
        if !redundant {
            kept.push(g.clone());
        }
    }
    kept
}

/// Changes the basis of `F_1` so that `d_1` becomes the row `gens`, which
/// must minimally generate the same ideal. `d_2` is rewritten accordingly.
pub fn rebase_first_map(c: &Complex, gens: &[Polynomial]) -> Option<Complex> {
    let ring = c.ring();
    if c.is_empty() || gens.len() != c.module(1).rank() {
        return None;
    }
    let mut gens: Vec<Polynomial> = gens.to_vec();
    gens.sort_by_key(|g| g.homogeneous_degree());
    let twists: Vec<i64> = gens
        .iter()
        .map(|g| g.homogeneous_degree().map(i64::from))
        .collect::<Option<_>>()?;
    if twists != c.twists(1) {
        return None;
    }
    let row = PolyMatrix::row_vector(ring, gens);
    let b = graded_solve(&row, &twists, c.twists(0), c.d(1), c.twists(1))?;
    b.constant_part().inverse()?;
    let mut maps = c.differentials().to_vec();
    maps[0] = row;
    if maps.len() > 1 {
        maps[1] = b.mul(&maps[1]);
    }
    Complex::new(ring, c.modules().to_vec(), maps)
}

/// Minimal free resolution of `S/I` with `d_1` the minimal generators of
/// `I` chosen by [`minimal_generators`].
pub fn minimal_resolution(ideal: &Ideal) -> Result<Complex, ResolutionError> {
    let frame = free_resolution(ideal, None)?;
    let min = minimalize(&frame);
    let gens = minimal_generators(ideal);
    Ok(rebase_first_map(&min, &gens).expect("minimal generators give an invertible change of basis"))
}

/// Prunes homogeneous vectors in a free module (twists `twists`) to a
/// minimal generating set of the submodule they generate, returning each
/// kept vector with its degree. Vectors are considered by increasing degree,
/// in input order within a degree.
pub(crate) fn prune_to_minimal(
    ring: &Arc<PolyRing>,
    twists: &[i64],
    candidates: Vec<Vec<Polynomial>>,
) -> Vec<(i64, Vec<Polynomial>)> {
    let degree = |v: &[Polynomial]| -> Option<i64> {
        v.iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .map(|(k, p)| i64::from(p.homogeneous_degree().expect("homogeneous vector")) + twists[k])
    };
    let mut with_deg: Vec<(i64, Vec<Polynomial>)> = candidates
        .into_iter()
        .filter_map(|v| degree(&v).map(|d| (d, v)))
        .collect();
    with_deg.sort_by_key(|(d, _)| *d);

    let mut kept: Vec<(i64, Vec<Polynomial>)> = Vec::new();
    let mut k = 0;
    while k < with_deg.len() {
        let d = with_deg[k].0;
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut coords = |v: &[Polynomial], shift: &Monomial| -> Vec<(usize, Coeff)> {
            let mut row = Vec::new();
            for (comp, p) in v.iter().enumerate() {
                for (m, c) in p.terms() {
                    let next = index.len();
                    let i = *index.entry((comp, m.mul(shift))).or_insert(next);
                    row.push((i, c.clone()));
                }
            }
            row.sort_by_key(|e| e.0);
            row
        };
        let mut ech = SparseEchelon::new();
        for (kd, v) in &kept {
            for mu in monomials_of_degree(ring.nvars(), (d - kd) as u32) {
                ech.insert(primitive_integer_row(&coords(v, &mu)));
            }
        }
        let one = Monomial::one(ring.nvars());
        while k < with_deg.len() && with_deg[k].0 == d {
            let v = std::mem::take(&mut with_deg[k].1);
            if ech.insert(primitive_integer_row(&coords(&v, &one))) {
                kept.push((d, v));
            }
            k += 1;
        }
    }
    kept
}

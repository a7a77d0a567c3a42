use std::collections::HashMap;

use num_traits::Zero;

use crate::linalg::QMatrix;
use crate::matrix::PolyMatrix;
use crate::ring::{monomials_of_degree, Coeff, Monomial, Polynomial};

/// Solves `A · X = B` for a graded `X`, column by column, as a linear system
/// in the coefficients of `X`. `A` maps a module with twists `a_source` to
/// one with twists `a_target`; column `j` of `B` has degree `b_source[j]`.
/// Returns `None` if some column has no solution.
pub fn graded_solve(
    a: &PolyMatrix,
    a_source: &[i64],
    a_target: &[i64],
    b: &PolyMatrix,
    b_source: &[i64],
) -> Option<PolyMatrix> {
    assert_eq!(a.nrows(), b.nrows());
    assert_eq!((a_source.len(), a_target.len()), (a.ncols(), a.nrows()));
    let ring = a.ring();
    let n = ring.nvars();
    let mut x = PolyMatrix::zeros(ring, a.ncols(), b.ncols());
    for (j, &target) in b_source.iter().enumerate().take(b.ncols()) {
        let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
        for (i, &s) in a_source.iter().enumerate() {
            let e = target - s;
            if e >= 0 {
                for m in monomials_of_degree(n, e as u32) {
                    unknowns.push((i, m));
                }
            }
        }
        let mut eq_index: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut entries: Vec<(usize, usize, Coeff)> = Vec::new();
        for (u, (i, mu)) in unknowns.iter().enumerate() {
            for r in 0..a.nrows() {
                for (t, c) in a.get(r, *i).terms() {
                    let key = (r, t.mul(mu));
                    let next = eq_index.len();
                    let e = *eq_index.entry(key).or_insert(next);
                    entries.push((e, u, c.clone()));
                }
            }
        }
        let mut rhs_entries = Vec::new();
        for r in 0..b.nrows() {
            for (t, c) in b.get(r, j).terms() {
                let next = eq_index.len();
                let e = *eq_index.entry((r, t.clone())).or_insert(next);
                rhs_entries.push((e, c.clone()));
            }
        }
        let neq = eq_index.len();
        let mut m = QMatrix::zeros(neq, unknowns.len());
        for (e, u, c) in entries {
            let v = m.get(e, u) + c;
            m.set(e, u, v);
        }
        let mut rhs = QMatrix::zeros(neq, 1);
        for (e, c) in rhs_entries {
            let v = rhs.get(e, 0) + c;
            rhs.set(e, 0, v);
        }
        let sol = m.solve(&rhs)?;
        let mut cols: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); a.ncols()];
        for (u, (i, mu)) in unknowns.into_iter().enumerate() {
            let c = sol.get(u, 0);
            if !c.is_zero() {
                cols[i].push((mu, c.clone()));
            }
        }
        for (i, terms) in cols.into_iter().enumerate() {
            x.set(i, j, Polynomial::from_terms(ring, terms));
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_polynomial, PolyRing};

    #[test]
    fn solves_membership_in_a_row() {
        let r = PolyRing::grevlex(&["x", "y", "z"]).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let a = PolyMatrix::row_vector(&r, vec![p("x"), p("y")]);
        let b = PolyMatrix::row_vector(&r, vec![p("x*z + y^2"), p("x^2")]);
        let x = graded_solve(&a, &[1, 1], &[0], &b, &[2, 2]).unwrap();
        assert_eq!(a.mul(&x), b);
        let bad = PolyMatrix::row_vector(&r, vec![p("z^2")]);
        assert!(graded_solve(&a, &[1, 1], &[0], &bad, &[2]).is_none());
    }
}

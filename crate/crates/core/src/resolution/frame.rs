//! Vectors in graded free modules under Schreyer orders, and the Schreyer
//! syzygy step.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::matrix::PolyMatrix;
use crate::ring::{Coeff, Monomial, PolyRing, Polynomial};

/// A term `c · x^a · e_comp`, stored with its total monomial `x^a · M_comp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub total: Monomial,
    pub comp: usize,
    pub coeff: Coeff,
}

/// Terms sorted descending in the module order, no zero coefficients.
pub(crate) type ModVec = Vec<Term>;

/// A module order: compare `x^a · M_i` in the ring order, ties broken by a
/// rank on basis elements (smaller rank = larger term).
#[derive(Clone, Debug)]
pub(crate) struct FrameOrder {
    pub ring: Arc<PolyRing>,
    pub totals: Vec<Monomial>,
    pub rank: Vec<usize>,
}

impl FrameOrder {
    /// Term-over-position order on a free module with trivial weights.
    pub fn top(ring: &Arc<PolyRing>, n: usize) -> FrameOrder {
        FrameOrder {
            ring: ring.clone(),
            totals: vec![Monomial::one(ring.nvars()); n],
            rank: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.totals.len()
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.ring
            .compare(&a.total, &b.total)
            .then_with(|| self.rank[b.comp].cmp(&self.rank[a.comp]))
    }

    fn sort(&self, mut v: Vec<Term>) -> ModVec {
        v.sort_by(|a, b| self.cmp(b, a));
        let mut out: ModVec = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.total == t.total => last.coeff += t.coeff,
                _ => {
                    if out.last().is_some_and(|l| l.coeff.is_zero()) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff.is_zero()) {
            out.pop();
        }
        out
    }

    /// Embeds a column of polynomials.
    pub fn embed_column(&self, col: &[Polynomial]) -> ModVec {
        let mut terms = Vec::new();
        for (r, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(Term {
                    total: m.mul(&self.totals[r]),
                    comp: r,
                    coeff: c.clone(),
                });
            }
        }
        self.sort(terms)
    }

    pub fn to_column(&self, v: &[Term]) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); self.len()];
        for t in v {
            let m = self.totals[t.comp].quotient_of(&t.total).unwrap();
            parts[t.comp].push((m, t.coeff.clone()));
        }
        parts
            .into_iter()
            .map(|terms| Polynomial::from_terms(&self.ring, terms))
            .collect()
    }

    /// `a + c · m · b`.
    pub fn add_scaled(&self, a: &[Term], c: &Coeff, m: &Monomial, b: &[Term]) -> ModVec {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let scaled = |t: &Term| Term {
            total: t.total.mul(m),
            comp: t.comp,
            coeff: &t.coeff * c,
        };
        let (mut i, mut j) = (0, 0);
        let mut bj = b.first().map(scaled);
        loop {
            match (a.get(i), bj.take()) {
                (Some(x), Some(y)) => match self.cmp(x, &y) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                        bj = Some(y);
                    }
                    Ordering::Less => {
                        out.push(y);
                        j += 1;
                        bj = b.get(j).map(scaled);
                    }
                    Ordering::Equal => {
                        let s = &x.coeff + &y.coeff;
                        if !s.is_zero() {
                            out.push(Term {
                                total: y.total,
                                comp: y.comp,
                                coeff: s,
                            });
                        }
                        i += 1;
                        j += 1;
                        bj = b.get(j).map(scaled);
                    }
                },
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, Some(y)) => {
                    out.push(y);
                    j += 1;
                    bj = b.get(j).map(scaled);
                }
                (None, None) => return out,
            }
        }
    }

    pub fn scale(&self, v: &[Term], c: &Coeff, m: &Monomial) -> ModVec {
        v.iter()
            .map(|t| Term {
                total: t.total.mul(m),
                comp: t.comp,
                coeff: &t.coeff * c,
            })
            .collect()
    }

    pub fn to_matrix(&self, cols: &[ModVec]) -> PolyMatrix {
        let columns: Vec<Vec<Polynomial>> = cols.iter().map(|v| self.to_column(v)).collect();
        PolyMatrix::from_columns(&self.ring, self.len(), &columns)
    }
}

/// Quotient entries `(generator index, monomial, coefficient)`.
pub(crate) type Quotient = Vec<(usize, Monomial, Coeff)>;

/// Leading-term lookup for a list of divisors with monic leading terms.
pub(crate) struct Divisors<'a> {
    gens: &'a [ModVec],
    by_comp: Vec<Vec<usize>>,
}

impl<'a> Divisors<'a> {
    pub fn new(order: &FrameOrder, gens: &'a [ModVec]) -> Self {
        let mut by_comp = vec![Vec::new(); order.len()];
        for (a, g) in gens.iter().enumerate() {
            debug_assert!(g[0].coeff.is_one());
            by_comp[g[0].comp].push(a);
        }
        Divisors { gens, by_comp }
    }

    fn find(&self, t: &Term) -> Option<(usize, Monomial)> {
        self.by_comp[t.comp].iter().find_map(|&a| {
            self.gens[a][0]
                .total
                .quotient_of(&t.total)
                .map(|m| (a, m))
        })
    }

    /// Full division: `v = Σ q · gens + remainder`.
    pub fn divide(&self, order: &FrameOrder, v: ModVec) -> (Quotient, ModVec) {
        let mut rest = v;
        let mut quotient = Vec::new();
        let mut remainder = Vec::new();
        while let Some(lead) = rest.first() {
            match self.find(lead) {
                Some((a, m)) => {
                    let c = lead.coeff.clone();
                    rest = order.add_scaled(&rest, &-c.clone(), &m, &self.gens[a]);
                    quotient.push((a, m, c));
                }
                None => {
                    remainder.push(rest.remove(0));
                }
            }
        }
        (quotient, remainder)
    }
}

fn lex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    b.exponents().cmp(a.exponents())
}

/// Orders generators so that, within each leading component, leading
/// monomials decrease lexicographically. This keeps Schreyer resolutions
/// within the Hilbert syzygy bound.
pub(crate) fn schreyer_sort(order: &FrameOrder, gens: &mut [ModVec]) {
    gens.sort_by(|g, h| {
        let (s, t) = (&g[0], &h[0]);
        let ms = order.totals[s.comp].quotient_of(&s.total).unwrap();
        let mt = order.totals[t.comp].quotient_of(&t.total).unwrap();
        s.comp.cmp(&t.comp).then_with(|| lex_desc(&ms, &mt))
    });
}

/// The order induced on the free module whose basis maps onto `gens`.
pub(crate) fn induced_order(order: &FrameOrder, gens: &[ModVec]) -> FrameOrder {
    let totals: Vec<Monomial> = gens.iter().map(|g| g[0].total.clone()).collect();
    let mut idx: Vec<usize> = (0..gens.len()).collect();
    idx.sort_by_key(|&a| (order.rank[gens[a][0].comp], a));
    let mut rank = vec![0; gens.len()];
    for (r, &a) in idx.iter().enumerate() {
        rank[a] = r;
    }
    FrameOrder {
        ring: order.ring.clone(),
        totals,
        rank,
    }
}

/// Schreyer syzygies of a Gröbner basis `gens` (monic leading terms) of a
/// submodule of the module ordered by `order`. Returns the induced order on
/// the source module and a generating set of syzygies, itself a Gröbner
/// basis for the induced order, sorted by `schreyer_sort`.
pub(crate) fn schreyer_syzygies(order: &FrameOrder, gens: &[ModVec]) -> (FrameOrder, Vec<ModVec>) {
    let next = induced_order(order, gens);
    let divisors = Divisors::new(order, gens);
    let mut syz = Vec::new();
    for a in 0..gens.len() {
        let la = &gens[a][0];
        // Candidate pairs (a, b), b > a, with their leading monomials on e_a.
        let mut cands: Vec<(usize, Monomial)> = Vec::new();
        for (b, g) in gens.iter().enumerate().skip(a + 1) {
            let lb = &g[0];
            if lb.comp != la.comp {
                continue;
            }
            let l = la.total.lcm(&lb.total);
            cands.push((b, la.total.quotient_of(&l).unwrap()));
        }
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (b, m)) in cands.iter().enumerate() {
            let redundant = cands.iter().enumerate().any(|(k2, (_, m2))| {
                k2 != k && m2.divides(m) && (m2 != m || k2 < k)
            });
            if !redundant {
                kept.push((*b, m.clone()));
            }
        }
        for (b, ma) in kept {
            let l = ma.mul(&la.total);
            let mb = gens[b][0].total.quotient_of(&l).unwrap();
            let one = Coeff::one();
            let s = order.add_scaled(&order.scale(&gens[a], &one, &ma), &-one.clone(), &mb, &gens[b]);
            let (quot, rem) = divisors.divide(order, s);
            assert!(rem.is_empty(), "generators are not a Gröbner basis");
            let mut terms = vec![
                Term {
                    total: ma.mul(&next.totals[a]),
                    comp: a,
                    coeff: one.clone(),
                },
                Term {
                    total: mb.mul(&next.totals[b]),
                    comp: b,
                    coeff: -one.clone(),
                },
            ];
            for (c, m, q) in quot {
                terms.push(Term {
                    total: m.mul(&next.totals[c]),
                    comp: c,
                    coeff: -q,
                });
            }
            let v = next.sort(terms);
            debug_assert!(v[0].comp == a && v[0].coeff.is_one());
            syz.push(v);
        }
    }
    schreyer_sort(&next, &mut syz);
    (next, syz)
}

/// Gröbner basis of the submodule generated by `cols`, with each element's
/// expression in terms of the inputs (`rep[k]` is the coefficient of input
/// `k`).
pub(crate) struct TrackedBasis {
    pub gens: Vec<ModVec>,
    pub reps: Vec<Vec<Polynomial>>,
}

pub(crate) fn tracked_groebner(order: &FrameOrder, cols: &[ModVec]) -> TrackedBasis {
    let ring = &order.ring;
    let n = cols.len();
    let mut gens: Vec<ModVec> = Vec::new();
    let mut reps: Vec<Vec<Polynomial>> = Vec::new();

    let reduce = |gens: &[ModVec], reps: &[Vec<Polynomial>], mut v: ModVec, mut rep: Vec<Polynomial>| {
        // Top-reduce until the leading term is not divisible.
        'outer: while let Some(lead) = v.first().cloned() {
            for (a, g) in gens.iter().enumerate() {
                if g[0].comp != lead.comp {
                    continue;
                }
                if let Some(m) = g[0].total.quotient_of(&lead.total) {
                    let c = &lead.coeff / &g[0].coeff;
                    v = order.add_scaled(&v, &-c.clone(), &m, g);
                    let shift = Polynomial::term(ring, m, -c);
                    for (k, r) in rep.iter_mut().enumerate() {
                        *r = &*r + &(&shift * &reps[a][k]);
                    }
                    continue 'outer;
                }
            }
            break;
        }
        (v, rep)
    };

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add = |gens: &mut Vec<ModVec>, reps: &mut Vec<Vec<Polynomial>>, pairs: &mut Vec<(usize, usize)>, v: ModVec, rep: Vec<Polynomial>| {
        let c = v[0].coeff.recip();
        let v = order.scale(&v, &c, &Monomial::one(ring.nvars()));
        let rep = rep.iter().map(|p| p.scale(&c)).collect();
        let idx = gens.len();
        for (a, g) in gens.iter().enumerate() {
            if g[0].comp == v[0].comp {
                pairs.push((a, idx));
            }
        }
        gens.push(v);
        reps.push(rep);
    };

    for (k, col) in cols.iter().enumerate() {
        let mut rep = vec![Polynomial::zero(ring); n];
        rep[k] = Polynomial::one(ring);
        let (v, rep) = reduce(&gens, &reps, col.clone(), rep);
        if !v.is_empty() {
            add(&mut gens, &mut reps, &mut pairs, v, rep);
        }
    }
    while !pairs.is_empty() {
        // Smallest lcm first keeps the computation degree by degree.
        let best = (0..pairs.len())
            .min_by(|&p, &q| {
                let l = |(a, b): (usize, usize)| gens[a][0].total.lcm(&gens[b][0].total);
                let (lp, lq) = (l(pairs[p]), l(pairs[q]));
                lp.degree().cmp(&lq.degree()).then_with(|| ring.compare(&lp, &lq)).then(pairs[p].cmp(&pairs[q]))
            })
            .unwrap();
        let (a, b) = pairs.swap_remove(best);
        let l = gens[a][0].total.lcm(&gens[b][0].total);
        let ma = gens[a][0].total.quotient_of(&l).unwrap();
        let mb = gens[b][0].total.quotient_of(&l).unwrap();
        let one = Coeff::one();
        let s = order.add_scaled(&order.scale(&gens[a], &one, &ma), &-one.clone(), &mb, &gens[b]);
        let pa = Polynomial::term(ring, ma, one.clone());
        let pb = Polynomial::term(ring, mb, one.clone());
        let rep: Vec<Polynomial> = (0..n).map(|k| &(&pa * &reps[a][k]) - &(&pb * &reps[b][k])).collect();
        let (v, rep) = reduce(&gens, &reps, s, rep);
        if !v.is_empty() {
            add(&mut gens, &mut reps, &mut pairs, v, rep);
        }
    }
    TrackedBasis { gens, reps }
}

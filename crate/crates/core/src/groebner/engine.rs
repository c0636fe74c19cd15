//! Buchberger's algorithm with the Gebauer–Möller pair criteria and sugar
//! selection, generic over the coefficient arithmetic.

use std::cmp::Ordering;
use std::time::Instant;

use serde::Serialize;

use super::arith::{normalize_terms, Arith, Term};
use super::order::MonomialOrder;
use crate::ring::Monomial;

/// Counters collected while computing a basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_degree: u32,
    pub basis_size: usize,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl GbStats {
    pub fn absorb(&mut self, other: &GbStats) {
        self.pairs_created += other.pairs_created;
        self.pairs_reduced += other.pairs_reduced;
        self.zero_reductions += other.zero_reductions;
        self.max_degree = self.max_degree.max(other.max_degree);
        self.elapsed_ms += other.elapsed_ms;
    }
}

/// An input polynomial. Inputs sharing a `block` tag are declared to already
/// form a Gröbner basis among themselves, so their mutual pairs are skipped.
pub(crate) struct Input<E> {
    pub terms: Vec<Term<E>>,
    pub block: Option<usize>,
}

pub(crate) struct Engine<'a, A: Arith> {
    pub arith: &'a A,
    pub order: MonomialOrder,
    pub weights: Vec<u32>,
    /// Pairs of larger (weighted) degree are dropped: the result is then a
    /// Gröbner basis only up to this degree, which is exact for homogeneous
    /// input in all degrees up to the bound.
    pub degree_bound: Option<u32>,
}

struct Element<E> {
    terms: Vec<Term<E>>,
    sugar: u32,
    block: Option<usize>,
}

impl<E> Element<E> {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Divisor lookup over the leading monomials of a set of polynomials.
pub(crate) struct Reducers<'p, E> {
    entries: Vec<(&'p Monomial, u64, &'p [Term<E>])>,
}

impl<'p, E> Reducers<'p, E> {
    pub fn new(polys: impl IntoIterator<Item = &'p [Term<E>]>) -> Self {
        let mut entries: Vec<_> = polys
            .into_iter()
            .filter(|p| !p.is_empty())
            .map(|p| (&p[0].0, p[0].0.support_mask(), p))
            .collect();
        // prefer short reducers
        entries.sort_by_key(|e| e.2.len());
        Reducers { entries }
    }

    fn find(&self, m: &Monomial) -> Option<(&'p Monomial, &'p [Term<E>])> {
        let mask = m.support_mask();
        self.entries
            .iter()
            .find(|(lm, lmask, _)| lmask & !mask == 0 && lm.divides(m))
            .map(|(lm, _, p)| (*lm, *p))
    }
}

impl<'a, A: Arith> Engine<'a, A> {
    pub fn new(arith: &'a A, order: MonomialOrder, nvars: usize) -> Self {
        Engine {
            arith,
            order,
            weights: vec![1; nvars],
            degree_bound: None,
        }
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Self {
        self.weights = weights;
        self
    }

    fn sugar_of(&self, terms: &[Term<A::E>]) -> u32 {
        terms
            .iter()
            .map(|(m, _)| m.weighted_degree(&self.weights))
            .max()
            .unwrap_or(0)
    }

    pub fn sort_terms(&self, terms: &mut [Term<A::E>]) {
        terms.sort_by(|a, b| self.order.compare(&b.0, &a.0));
    }

    /// `sf * a - sg * q * b`, both inputs sorted descending.
    fn combine(
        &self,
        a: &[Term<A::E>],
        sf: Option<&A::E>,
        b: &[Term<A::E>],
        q: &Monomial,
        sg: &A::E,
    ) -> Vec<Term<A::E>> {
        let ar = self.arith;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let scale = |c: &A::E| match sf {
            Some(s) => ar.mul(s, c),
            None => c.clone(),
        };
        let (mut i, mut j) = (0, 0);
        let mut bm: Option<Monomial> = b.first().map(|t| t.0.mul(q));
        while i < a.len() {
            let Some(m) = bm.as_ref() else { break };
            match self.order.compare(&a[i].0, m) {
                Ordering::Greater => {
                    out.push((a[i].0.clone(), scale(&a[i].1)));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm.take().unwrap(), ar.neg(&ar.mul(sg, &b[j].1))));
                    j += 1;
                    bm = b.get(j).map(|t| t.0.mul(q));
                }
                Ordering::Equal => {
                    let c = ar.sub(&scale(&a[i].1), &ar.mul(sg, &b[j].1));
                    if !ar.is_zero(&c) {
                        out.push((bm.take().unwrap(), c));
                    }
                    i += 1;
                    j += 1;
                    bm = b.get(j).map(|t| t.0.mul(q));
                }
            }
        }
        out.extend(a[i..].iter().map(|(m, c)| (m.clone(), scale(c))));
        if let Some(m) = bm {
            out.push((m, ar.neg(&ar.mul(sg, &b[j].1))));
            out.extend(
                b[j + 1..]
                    .iter()
                    .map(|(m, c)| (m.mul(q), ar.neg(&ar.mul(sg, c)))),
            );
        }
        out
    }

    /// Full reduction: no term of the result is divisible by a reducer's
    /// leading monomial. With `normalize`, the result is brought to canonical
    /// scalar form; without it (field arithmetic only) it is the true remainder.
    pub fn reduce(&self, mut f: Vec<Term<A::E>>, reducers: &Reducers<'_, A::E>, normalize: bool) -> Vec<Term<A::E>> {
        let mut pos = 0;
        let mut steps = 0usize;
        while pos < f.len() {
            let Some((lm, g)) = reducers.find(&f[pos].0) else {
                pos += 1;
                continue;
            };
            let q = lm.quotient_of(&f[pos].0).expect("divisor");
            let (sf, sg) = self.arith.cancel(&f[pos].1, &g[0].1);
            let tail = self.combine(&f[pos + 1..], sf.as_ref(), &g[1..], &q, &sg);
            if let Some(sf) = &sf {
                for t in &mut f[..pos] {
                    t.1 = self.arith.mul(sf, &t.1);
                }
            }
            f.truncate(pos);
            f.extend(tail);
            steps += 1;
            if self.arith.grows() && steps.is_multiple_of(8) {
                normalize_terms(self.arith, &mut f);
            }
        }
        if normalize || self.arith.grows() {
            normalize_terms(self.arith, &mut f);
        }
        f
    }

    /// Top-reduces until the leading term is irreducible; true iff `f` reduces to zero.
    pub fn reduces_to_zero(&self, mut f: Vec<Term<A::E>>, reducers: &Reducers<'_, A::E>) -> bool {
        let mut steps = 0usize;
        while let Some((m, c)) = f.first() {
            let Some((lm, g)) = reducers.find(m) else {
                return false;
            };
            let q = lm.quotient_of(m).expect("divisor");
            let (sf, sg) = self.arith.cancel(c, &g[0].1);
            f = self.combine(&f[1..], sf.as_ref(), &g[1..], &q, &sg);
            steps += 1;
            if self.arith.grows() && steps.is_multiple_of(8) {
                normalize_terms(self.arith, &mut f);
            }
        }
        true
    }

    fn spoly(&self, f: &Element<A::E>, g: &Element<A::E>, lcm: &Monomial) -> Vec<Term<A::E>> {
        let uf = f.lm().quotient_of(lcm).expect("lcm");
        let ug = g.lm().quotient_of(lcm).expect("lcm");
        let (sf, sg) = self.arith.cancel(&f.terms[0].1, &g.terms[0].1);
        // sf*uf*f - sg*ug*g with the leading terms cancelled
        let fs: Vec<Term<A::E>> = f.terms[1..]
            .iter()
            .map(|(m, c)| (m.mul(&uf), c.clone()))
            .collect();
        self.combine(&fs, sf.as_ref(), &g.terms[1..], &ug, &sg)
    }

    /// Computes the reduced Gröbner basis of the inputs, sorted by leading
    /// monomial descending, each element normalized.
    pub fn groebner(&self, inputs: Vec<Input<A::E>>) -> (Vec<Vec<Term<A::E>>>, GbStats) {
        let start = Instant::now();
        let mut stats = GbStats::default();
        let mut elems: Vec<Element<A::E>> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        let mut inputs: Vec<Input<A::E>> = inputs
            .into_iter()
            .filter(|i| !i.terms.is_empty())
            .map(|mut i| {
                self.sort_terms(&mut i.terms);
                normalize_terms(self.arith, &mut i.terms);
                i
            })
            .collect();
        inputs.sort_by(|a, b| {
            let (sa, sb) = (self.sugar_of(&a.terms), self.sugar_of(&b.terms));
            sa.cmp(&sb)
                .then_with(|| self.order.compare(&a.terms[0].0, &b.terms[0].0))
        });

        for input in inputs {
            let terms = if input.block.is_none() {
                let red = {
                    let reducers = Reducers::new(
                        elems
                            .iter()
                            .zip(&active)
                            .filter(|(_, a)| **a)
                            .map(|(e, _)| e.terms.as_slice()),
                    );
                    self.reduce(input.terms, &reducers, true)
                };
                if red.is_empty() {
                    continue;
                }
                red
            } else {
                input.terms
            };
            if terms[0].0.is_one() {
                return self.unit(stats, start);
            }
            let sugar = self.sugar_of(&terms);
            self.insert(&mut elems, &mut active, &mut pairs, terms, sugar, input.block, &mut stats);
        }

        while let Some(pair) = pairs.pop() {
            if self.degree_bound.is_some_and(|b| pair.sugar > b) {
                // pairs pop in increasing sugar, so the rest are above the bound too
                break;
            }
            stats.pairs_reduced += 1;
            stats.max_degree = stats.max_degree.max(pair.lcm.degree());
            let s = self.spoly(&elems[pair.i], &elems[pair.j], &pair.lcm);
            let h = {
                let reducers = Reducers::new(
                    elems
                        .iter()
                        .zip(&active)
                        .filter(|(_, a)| **a)
                        .map(|(e, _)| e.terms.as_slice()),
                );
                self.reduce(s, &reducers, true)
            };
            if h.is_empty() {
                stats.zero_reductions += 1;
                continue;
            }
            if h[0].0.is_one() {
                return self.unit(stats, start);
            }
            let sugar = pair.sugar.max(self.sugar_of(&h));
            self.insert(&mut elems, &mut active, &mut pairs, h, sugar, None, &mut stats);
        }

        let basis = self.finalize(elems, active);
        stats.basis_size = basis.len();
        stats.elapsed_ms = start.elapsed().as_millis();
        (basis, stats)
    }

    fn unit(&self, mut stats: GbStats, start: Instant) -> (Vec<Vec<Term<A::E>>>, GbStats) {
        let n = self.weights.len();
        stats.basis_size = 1;
        stats.elapsed_ms = start.elapsed().as_millis();
        (vec![vec![(Monomial::one(n), self.arith.one())]], stats)
    }

    #[allow(clippy::too_many_arguments)]
    fn insert(
        &self,
        elems: &mut Vec<Element<A::E>>,
        active: &mut Vec<bool>,
        pairs: &mut Vec<Pair>,
        terms: Vec<Term<A::E>>,
        sugar: u32,
        block: Option<usize>,
        stats: &mut GbStats,
    ) {
        let h = elems.len();
        let lm_h = terms[0].0.clone();
        let wdeg = |m: &Monomial| m.weighted_degree(&self.weights);
        elems.push(Element {
            terms,
            sugar,
            block,
        });
        active.push(false);

        // Gebauer–Möller update.
        let mut cands: Vec<(usize, Monomial, bool)> = (0..h)
            .filter(|&g| active[g])
            .map(|g| {
                let lm_g = elems[g].lm();
                (g, lm_g.lcm(&lm_h), lm_g.is_coprime(&lm_h))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while !cands.is_empty() {
            let (g, lcm, coprime) = cands.remove(0);
            let dominated = cands
                .iter()
                .chain(kept.iter())
                .any(|(_, other, _)| other.divides(&lcm));
            if coprime || !dominated {
                kept.push((g, lcm, coprime));
            }
        }
        pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && elems[p.i].lm().lcm(&lm_h) != p.lcm
                && elems[p.j].lm().lcm(&lm_h) != p.lcm)
        });
        let mut fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(_, _, coprime)| !coprime)
            .filter(|(g, _, _)| block.is_none() || elems[*g].block != block)
            .map(|(g, lcm, _)| {
                let eg = &elems[g];
                let eh = &elems[h];
                let sugar = (eg.sugar + wdeg(&lcm) - wdeg(eg.lm())).max(eh.sugar + wdeg(&lcm) - wdeg(eh.lm()));
                Pair { i: g, j: h, lcm, sugar }
            })
            .collect();
        stats.pairs_created += fresh.len();

        for g in 0..h {
            if active[g] && lm_h.divides(elems[g].lm()) {
                active[g] = false;
            }
        }
        active[h] = true;

        // `pairs` is kept sorted so that the smallest key is last.
        pairs.append(&mut fresh);
        let order = self.order;
        pairs.sort_by(|a, b| {
            b.sugar
                .cmp(&a.sugar)
                .then_with(|| order.compare(&b.lcm, &a.lcm))
                .then_with(|| (b.i, b.j).cmp(&(a.i, a.j)))
        });
    }

    fn finalize(&self, elems: Vec<Element<A::E>>, active: Vec<bool>) -> Vec<Vec<Term<A::E>>> {
        let mut basis: Vec<Vec<Term<A::E>>> = elems
            .into_iter()
            .zip(active)
            .filter(|(_, a)| *a)
            .map(|(e, _)| e.terms)
            .collect();
        // minimal: drop elements whose leading monomial is divisible by another's
        basis.sort_by(|a, b| self.order.compare(&a[0].0, &b[0].0));
        let mut minimal: Vec<Vec<Term<A::E>>> = Vec::with_capacity(basis.len());
        for p in basis {
            if !minimal.iter().any(|q| q[0].0.divides(&p[0].0)) {
                minimal.push(p);
            }
        }
        // reduce tails against the other elements; leading terms stay put
        // because no other leading monomial divides them
        let mut reduced: Vec<Vec<Term<A::E>>> = (0..minimal.len())
            .map(|i| {
                let reducers = Reducers::new(
                    minimal
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, p)| p.as_slice()),
                );
                self.reduce(minimal[i].clone(), &reducers, true)
            })
            .collect();
        reduced.sort_by(|a, b| self.order.compare(&b[0].0, &a[0].0));
        reduced
    }
}

//! Exact linear algebra on graded pieces `R_d` of the polynomial ring.

use std::collections::HashMap;

use super::arith::{Arith, IntArith, ModArith};
use crate::ring::{monomials_of_degree, Coefficient, Field, Monomial, Polynomial, Ring};

/// Coordinates on the degree-`d` monomials.
pub(crate) struct GradedSpace {
    field: Field,
    index: HashMap<Monomial, usize>,
}

impl GradedSpace {
    pub fn new(ring: &Ring, degree: u32) -> GradedSpace {
        let index = monomials_of_degree(ring.nvars(), degree)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        GradedSpace {
            field: ring.field(),
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    fn vector<A: Arith>(&self, arith: &A, p: &Polynomial) -> Vec<A::E> {
        let coeffs: Vec<Coefficient> = p.terms().iter().map(|t| t.1.clone()).collect();
        let zero = arith.sub(&arith.one(), &arith.one());
        let mut v = vec![zero; self.dim()];
        for ((m, _), c) in p.terms().iter().zip(arith.import(&coeffs)) {
            v[self.index[m]] = c;
        }
        v
    }

    /// Whether `f` lies in the span of `spanning` (all homogeneous of this degree).
    pub fn span_contains(&self, spanning: &[Polynomial], f: &Polynomial) -> bool {
        fn run<A: Arith>(arith: &A, space: &GradedSpace, spanning: &[Polynomial], f: &Polynomial) -> bool {
            let mut ech = Echelon::new(arith);
            for p in spanning {
                ech.insert(space.vector(arith, p));
            }
            ech.contains(space.vector(arith, f))
        }
        match self.field {
            Field::Rational => run(&IntArith, self, spanning, f),
            Field::Prime(p) => run(&ModArith { p }, self, spanning, f),
        }
    }

    /// Greedy selection: index of every candidate not in the span of
    /// `fixed` together with the previously selected candidates.
    pub fn independent_subset(&self, fixed: &[Polynomial], candidates: &[Polynomial]) -> Vec<usize> {
        fn run<A: Arith>(arith: &A, space: &GradedSpace, fixed: &[Polynomial], candidates: &[Polynomial]) -> Vec<usize> {
            let mut ech = Echelon::new(arith);
            for p in fixed {
                ech.insert(space.vector(arith, p));
                if ech.rank() == space.dim() {
                    break;
                }
            }
            candidates
                .iter()
                .enumerate()
                .filter(|(_, c)| ech.insert(space.vector(arith, c)))
                .map(|(i, _)| i)
                .collect()
        }
        match self.field {
            Field::Rational => run(&IntArith, self, fixed, candidates),
            Field::Prime(p) => run(&ModArith { p }, self, fixed, candidates),
        }
    }
}

/// All products `u * g` of total degree `d`, `u` ranging over monomials.
pub(crate) fn degree_products(gens: &[Polynomial], d: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for g in gens {
        let Some(e) = g.total_degree() else { continue };
        if e > d {
            continue;
        }
        let one = g.ring().field().one();
        for u in monomials_of_degree(g.ring().nvars(), d - e) {
            out.push(g.mul_term(&u, &one));
        }
    }
    out
}

/// Incremental row echelon form over dense vectors.
pub(crate) struct Echelon<'a, A: Arith> {
    arith: &'a A,
    rows: HashMap<usize, Vec<A::E>>,
}

impl<'a, A: Arith> Echelon<'a, A> {
    pub fn new(arith: &'a A) -> Self {
        Echelon {
            arith,
            rows: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the pivots; returns the first nonzero column left.
    fn reduce(&self, v: &mut [A::E]) -> Option<usize> {
        let ar = self.arith;
        let mut steps = 0usize;
        for c in 0..v.len() {
            if ar.is_zero(&v[c]) {
                continue;
            }
            let Some(row) = self.rows.get(&c) else {
                return Some(c);
            };
            let (sf, sg) = ar.cancel(&v[c], &row[c]);
            for k in c..v.len() {
                let scaled = match &sf {
                    Some(s) => ar.mul(s, &v[k]),
                    None => v[k].clone(),
                };
                v[k] = if ar.is_zero(&row[k]) {
                    scaled
                } else {
                    ar.sub(&scaled, &ar.mul(&sg, &row[k]))
                };
            }
            steps += 1;
            if ar.grows() && steps.is_multiple_of(4) {
                normalize_slice(ar, &mut v[c..]);
            }
        }
        None
    }

    /// Adds `v`; true iff it was independent of the rows so far.
    pub fn insert(&mut self, mut v: Vec<A::E>) -> bool {
        match self.reduce(&mut v) {
            Some(pivot) => {
                normalize_slice(self.arith, &mut v[pivot..]);
                self.rows.insert(pivot, v);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, mut v: Vec<A::E>) -> bool {
        self.reduce(&mut v).is_none()
    }
}

fn normalize_slice<A: Arith>(arith: &A, v: &mut [A::E]) {
    let Some(n) = arith.normalizer(v.iter().filter(|c| !arith.is_zero(c))) else {
        return;
    };
    for c in v.iter_mut() {
        if !arith.is_zero(c) {
            *c = arith.apply_norm(c, &n);
        }
    }
}

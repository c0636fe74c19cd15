//! Monomial orders, multivariate division, Buchberger's algorithm with reduced
//! output, ideal membership and equality, and Krull dimension.

pub(crate) mod arith;
mod engine;
mod ideal;
pub(crate) mod linalg;
mod order;

use num_bigint::BigInt;

pub use engine::GbStats;
pub use ideal::{ideal_contains, ideal_equal, ideal_member, Ideal};
pub use order::MonomialOrder;

use crate::error::{Error, Result};
use crate::ring::{monomials_of_degree, Coefficient, Monomial, Polynomial, Ring, RingContext};
use arith::{Arith, IntArith, ModArith, RatArith, Term};
use engine::{Engine, Input, Reducers};

/// A reduced Gröbner basis: monic elements sorted by leading monomial
/// (descending under `order`). Unique for an ideal and an order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    leading: Vec<Monomial>,
    stats: GbStats,
    internal: Internal,
}

#[derive(Clone, Debug)]
enum Internal {
    Int(Vec<Vec<Term<BigInt>>>),
    Mod(u64, Vec<Vec<Term<u64>>>),
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &GroebnerBasis) -> bool {
        self.order == other.order && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True iff the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.leading.len() == 1 && self.leading[0].is_one()
    }

    /// Elements printed in basis order.
    pub fn to_strings(&self) -> Vec<String> {
        self.elements.iter().map(|p| p.to_string()).collect()
    }

    /// Membership test by top reduction.
    pub fn contains(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        if self.is_unit() {
            return true;
        }
        match &self.internal {
            Internal::Int(basis) => {
                let a = &IntArith;
                let engine = Engine::new(a, self.order, self.ring.nvars());
                let reducers = Reducers::new(basis.iter().map(Vec::as_slice));
                engine.reduces_to_zero(import(a, f, self.order), &reducers)
            }
            Internal::Mod(p, basis) => {
                let a = &ModArith { p: *p };
                let engine = Engine::new(a, self.order, self.ring.nvars());
                let reducers = Reducers::new(basis.iter().map(Vec::as_slice));
                engine.reduces_to_zero(import(a, f, self.order), &reducers)
            }
        }
    }

    /// The unique remainder of `f` modulo the basis.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        divide_remainder(f, &self.elements, self.order)
    }
}

fn import<A: Arith>(arith: &A, p: &Polynomial, order: MonomialOrder) -> Vec<Term<A::E>> {
    let coeffs: Vec<Coefficient> = p.terms().iter().map(|t| t.1.clone()).collect();
    let mut terms: Vec<Term<A::E>> = p
        .terms()
        .iter()
        .map(|t| t.0.clone())
        .zip(arith.import(&coeffs))
        .collect();
    if order != p.ring().order() {
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
    }
    terms
}

fn export<A: Arith>(arith: &A, ring: &Ring, terms: &[Term<A::E>], order: MonomialOrder) -> Polynomial {
    let coeffs: Vec<A::E> = terms.iter().map(|t| t.1.clone()).collect();
    let out = terms
        .iter()
        .map(|t| t.0.clone())
        .zip(arith.export(&coeffs))
        .collect();
    Polynomial::from_sorted_in(ring, out, order)
}

/// A group of generators handed to [`compute_basis`]; `is_basis` declares the
/// group to already be a Gröbner basis under the working order.
pub(crate) struct Block {
    pub polys: Vec<Polynomial>,
    pub is_basis: bool,
}

impl Block {
    pub fn plain(polys: Vec<Polynomial>) -> Block {
        Block { polys, is_basis: false }
    }

    pub fn basis(polys: Vec<Polynomial>) -> Block {
        Block { polys, is_basis: true }
    }
}

/// Reduced Gröbner basis of arbitrary (not necessarily homogeneous) input.
/// `weights` drives sugar selection; defaults to the standard grading.
pub(crate) fn compute_basis(ring: &Ring, order: MonomialOrder, weights: Option<Vec<u32>>, blocks: Vec<Block>) -> GroebnerBasis {
    compute_basis_truncated(ring, order, weights, blocks, None)
}

/// [`compute_basis`] with S-pairs above (weighted) degree `bound` dropped.
pub(crate) fn compute_basis_truncated(
    ring: &Ring,
    order: MonomialOrder,
    weights: Option<Vec<u32>>,
    blocks: Vec<Block>,
    bound: Option<u32>,
) -> GroebnerBasis {
    fn run<A: Arith>(
        arith: &A,
        ring: &Ring,
        order: MonomialOrder,
        weights: Option<Vec<u32>>,
        blocks: &[Block],
        bound: Option<u32>,
    ) -> (Vec<Vec<Term<A::E>>>, GbStats) {
        let mut engine = Engine::new(arith, order, ring.nvars());
        if let Some(w) = weights {
            engine = engine.with_weights(w);
        }
        engine.degree_bound = bound;
        let inputs = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, block)| {
                let tag = block.is_basis.then_some(b);
                block.polys.iter().map(move |p| Input {
                    terms: import(arith, p, order),
                    block: tag,
                })
            })
            .collect();
        engine.groebner(inputs)
    }

    match ring.field() {
        crate::ring::Field::Rational => {
            let (basis, stats) = run(&IntArith, ring, order, weights, &blocks, bound);
            finish(ring, order, stats, &IntArith, &basis, Internal::Int(basis.clone()))
        }
        crate::ring::Field::Prime(p) => {
            let a = ModArith { p };
            let (basis, stats) = run(&a, ring, order, weights, &blocks, bound);
            finish(ring, order, stats, &a, &basis, Internal::Mod(p, basis.clone()))
        }
    }
}

fn finish<A: Arith>(
    ring: &Ring,
    order: MonomialOrder,
    stats: GbStats,
    arith: &A,
    basis: &[Vec<Term<A::E>>],
    internal: Internal,
) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        order,
        elements: basis.iter().map(|t| export(arith, ring, t, order)).collect(),
        leading: basis.iter().map(|t| t[0].0.clone()).collect(),
        stats,
        internal,
    }
}

fn check_same_ring<'a>(mut polys: impl Iterator<Item = &'a Polynomial>) -> Result<Option<Ring>> {
    let Some(first) = polys.next() else {
        return Ok(None);
    };
    let ring = first.ring().clone();
    if polys.all(|p| RingContext::same(p.ring(), &ring)) {
        Ok(Some(ring))
    } else {
        Err(Error::RingMismatch)
    }
}

pub(crate) fn require_homogeneous(p: &Polynomial) -> Result<()> {
    if p.is_homogeneous().0 {
        Ok(())
    } else {
        Err(Error::NotHomogeneous(p.to_string()))
    }
}

/// Reduced Gröbner basis of homogeneous generators.
pub fn buchberger(ring: &Ring, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    if gens.iter().any(|g| !RingContext::same(g.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    for g in gens {
        require_homogeneous(g)?;
    }
    Ok(compute_basis(ring, order, None, vec![Block::plain(gens.to_vec())]))
}

/// Multivariate division remainder of `f` by `basis`: `f - r` lies in the
/// ideal and no term of `r` is divisible by a leading monomial of the basis.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Result<Polynomial> {
    check_same_ring(std::iter::once(f).chain(basis))?;
    if basis.iter().any(Polynomial::is_zero) {
        return Err(Error::InvalidParameters("zero polynomial in division basis".into()));
    }
    Ok(divide_remainder(f, basis, order))
}

fn divide_remainder(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    fn run<A: Arith>(arith: &A, f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
        let ring = f.ring();
        let engine = Engine::new(arith, order, ring.nvars());
        let converted: Vec<Vec<Term<A::E>>> = basis.iter().map(|g| import(arith, g, order)).collect();
        let reducers = Reducers::new(converted.iter().map(Vec::as_slice));
        let r = engine.reduce(import(arith, f, order), &reducers, false);
        let coeffs: Vec<A::E> = r.iter().map(|t| t.1.clone()).collect();
        let exported = arith.export_exact(&coeffs);
        Polynomial::from_sorted_in(ring, r.into_iter().map(|t| t.0).zip(exported).collect(), order)
    }
    match f.ring().field() {
        crate::ring::Field::Rational => run(&RatArith, f, basis, order),
        crate::ring::Field::Prime(p) => run(&ModArith { p }, f, basis, order),
    }
}

/// Krull dimension of `R/I` from the leading-term ideal: the largest set of
/// variables containing the support of no leading monomial. The unit ideal
/// gets -1.
pub fn krull_dimension(ideal: &Ideal) -> i64 {
    let gb = ideal.groebner_basis_in(MonomialOrder::DegRevLex);
    if gb.is_unit() {
        return -1;
    }
    let n = ideal.ring().nvars();
    dimension_from_leading(&gb.leading, n)
}

pub(crate) fn dimension_from_leading(leading: &[Monomial], n: usize) -> i64 {
    fn search(masks: &[u64], n: usize, i: usize, set: u64, size: i64, best: &mut i64) {
        if size + (n - i) as i64 <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = set | (1 << i);
        if masks.iter().all(|m| m & !with != 0) {
            search(masks, n, i + 1, with, size + 1, best);
        }
        search(masks, n, i + 1, set, size, best);
    }
    let masks: Vec<u64> = leading.iter().map(Monomial::support_mask).collect();
    let mut best = -1;
    search(&masks, n, 0, 0, 0, &mut best);
    best.max(0)
}

/// Decides `f ∈ (gens)` for homogeneous data by exact linear algebra in the
/// degree of `f`: `f` is a member iff it lies in the span of the products
/// `u * g` of degree `deg f`, with `u` a monomial. Independent of Buchberger.
pub fn truncated_membership_oracle(f: &Polynomial, gens: &[Polynomial], degree_bound: u32) -> Result<bool> {
    let ring = f.ring().clone();
    check_same_ring(std::iter::once(f).chain(gens))?;
    require_homogeneous(f)?;
    for g in gens {
        require_homogeneous(g)?;
    }
    let Some(d) = f.total_degree() else {
        return Ok(true);
    };
    if d > degree_bound {
        return Err(Error::InvalidParameters(format!(
            "degree {d} exceeds the oracle bound {degree_bound}"
        )));
    }
    let space = linalg::GradedSpace::new(&ring, d);
    let products = linalg::degree_products(gens, d);
    Ok(space.span_contains(&products, f))
}

/// All degree-`d` monomials as polynomials.
pub fn monomial_basis(ring: &Ring, d: u32) -> Vec<Polynomial> {
    monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .map(|m| Polynomial::monomial(ring, m, ring.field().one()))
        .collect()
}

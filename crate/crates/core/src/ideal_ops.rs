//! The ideal calculus: sums, products, powers, intersections, colon ideals,
//! radical membership and the Serre-criterion radicality check for complete
//! intersections.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::linalg::{degree_products, GradedSpace};
use crate::groebner::{
    compute_basis, compute_basis_truncated, krull_dimension, monomial_basis, Block, GroebnerBasis, Ideal, MonomialOrder,
};
use crate::ring::{Polynomial, Ring, RingContext};

fn check(i: &Ideal, k: &Ideal) -> Result<()> {
    if RingContext::same(i.ring(), k.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

pub fn ideal_sum(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    check(i, k)?;
    let mut gens = i.generators().to_vec();
    gens.extend(k.generators().iter().cloned());
    Ok(Ideal::from_trusted(i.ring(), gens))
}

/// Generated by pairwise generator products, then minimalized.
pub fn ideal_product(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    check(i, k)?;
    let mut gens = Vec::with_capacity(i.generators().len() * k.generators().len());
    for a in i.generators() {
        for b in k.generators() {
            gens.push(a.mul_unchecked(b));
        }
    }
    Ok(minimalize_generators(&Ideal::from_trusted(i.ring(), gens)))
}

/// `I^e`, with `I^0 = (1)`.
pub fn ideal_power(i: &Ideal, e: u32) -> Ideal {
    if e == 0 {
        return Ideal::unit(i.ring());
    }
    let base = minimalize_generators(i);
    let mut acc = base.clone();
    for _ in 1..e {
        acc = ideal_product(&acc, &base).expect("same ring");
    }
    acc
}

pub fn maximal_ideal(ring: &Ring) -> Ideal {
    maximal_ideal_power(ring, 1)
}

/// `m^e`, generated by the `C(n+e-1, e)` monomials of degree `e`.
pub fn maximal_ideal_power(ring: &Ring, e: u32) -> Ideal {
    Ideal::from_trusted(ring, monomial_basis(ring, e))
}

/// A minimal homogeneous generating set, chosen lowest degree first; a
/// generator is dropped when it lies in the ideal of those kept before it.
pub fn minimalize_generators(i: &Ideal) -> Ideal {
    let ring = i.ring();
    let mut gens: Vec<Polynomial> = i.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.iter().any(|g| g.total_degree() == Some(0)) {
        return Ideal::unit(ring);
    }
    gens.sort_by_key(|g| g.total_degree());
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut start = 0;
    while start < gens.len() {
        let d = gens[start].total_degree().expect("nonzero");
        let end = start + gens[start..].iter().take_while(|g| g.total_degree() == Some(d)).count();
        let space = GradedSpace::new(ring, d);
        let fixed = degree_products(&kept, d);
        let chosen = space.independent_subset(&fixed, &gens[start..end]);
        kept.extend(chosen.into_iter().map(|k| gens[start + k].clone()));
        start = end;
    }
    i.with_generators(kept)
}

fn elimination_ring(ring: &Ring) -> (Ring, Vec<u32>) {
    let aux = ring.with_auxiliary(MonomialOrder::BlockElimination(1));
    let mut weights = vec![1; aux.nvars()];
    weights[0] = 0;
    (aux, weights)
}

fn aux_t(aux: &Ring) -> Polynomial {
    Polynomial::variable(aux, 0)
}

fn shifted_basis(gb: &GroebnerBasis, aux: &Ring) -> Vec<Polynomial> {
    gb.elements().iter().map(|p| p.shifted(aux, 1)).collect()
}

/// `I ∩ K` by eliminating `t` from `t*I + (1-t)*K`.
pub fn ideal_intersect(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    check(i, k)?;
    let ring = i.ring();
    if i.is_zero() || k.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if i.is_unit() {
        return Ok(k.clone());
    }
    if k.is_unit() {
        return Ok(i.clone());
    }
    let (aux, weights) = elimination_ring(ring);
    let t = aux_t(&aux);
    let one_minus_t = &Polynomial::one(&aux) - &t;
    let gi = i.groebner_basis_in(MonomialOrder::DegRevLex);
    let gk = k.groebner_basis_in(MonomialOrder::DegRevLex);
    let a: Vec<Polynomial> = shifted_basis(&gi, &aux).iter().map(|p| &t * p).collect();
    let b: Vec<Polynomial> = shifted_basis(&gk, &aux).iter().map(|p| &one_minus_t * p).collect();
    // both m-primary: m^N lies in the intersection, so only degrees below N are computed
    let top = primary_index(&gi).zip(primary_index(&gk)).map(|(p, q)| p.max(q));
    let aux_gb = compute_basis_truncated(
        &aux,
        MonomialOrder::BlockElimination(1),
        Some(weights),
        vec![Block::basis(a), Block::basis(b)],
        top.map(|n| n.saturating_sub(1)),
    );
    let low = eliminate_below(ring, &aux_gb, top);
    Ok(ideal_from_drl_basis(ring, complete_with_power(ring, low, top)))
}

/// Least `N` with every degree-`N` monomial in the leading-term ideal of a
/// degrevlex basis, i.e. `m^N ⊆ I`; `None` unless the ideal is m-primary.
pub fn primary_index(gb: &GroebnerBasis) -> Option<u32> {
    if gb.is_unit() {
        return Some(0);
    }
    let n = gb.ring().nvars();
    let lead = gb.leading_monomials();
    let mut bound = 1u32;
    for v in 0..n {
        let pure = lead
            .iter()
            .filter(|m| m.support_mask() == 1 << v)
            .map(|m| m.degree())
            .min()?;
        bound += pure - 1;
    }
    (0..=bound).find(|&d| {
        crate::ring::monomials_of_degree(n, d)
            .iter()
            .all(|m| lead.iter().any(|l| l.divides(m)))
    })
}

/// t-free elements of an elimination basis, moved back to `ring`, keeping
/// only degrees below `top` when a truncation was used.
fn eliminate_below(ring: &Ring, aux_gb: &GroebnerBasis, top: Option<u32>) -> Vec<Polynomial> {
    let drl = ring.with_order(MonomialOrder::DegRevLex);
    aux_gb
        .elements()
        .iter()
        .zip(aux_gb.leading_monomials())
        .filter(|(_, lm)| lm.exponents()[0] == 0 && top.is_none_or(|n| lm.degree() < n))
        .map(|(p, _)| p.unshifted(&drl, 1).expect("t-free").with_ring(ring))
        .collect()
}

/// Reduced degrevlex basis of `(low) + m^top`, where `low` is a Gröbner basis
/// up to degree `top - 1`.
fn complete_with_power(ring: &Ring, low: Vec<Polynomial>, top: Option<u32>) -> GroebnerBasis {
    let mut blocks = vec![Block::basis(low)];
    if let Some(n) = top {
        blocks.push(Block::basis(monomial_basis(ring, n)));
    }
    compute_basis(ring, MonomialOrder::DegRevLex, None, blocks)
}

fn ideal_from_drl_basis(ring: &Ring, gb: GroebnerBasis) -> Ideal {
    let ideal = Ideal::from_trusted(ring, gb.elements().to_vec());
    ideal.seed_basis(gb);
    ideal
}

/// `I : (g)` as `(1/g) * (I ∩ (g))`.
pub fn colon_by_element(i: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if !RingContext::same(i.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        return Err(Error::ZeroColon);
    }
    let ring = i.ring();
    if i.contains_polynomial(g)? {
        return Ok(Ideal::unit(ring));
    }
    if i.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let (aux, weights) = elimination_ring(ring);
    let t = aux_t(&aux);
    let one_minus_t = &Polynomial::one(&aux) - &t;
    let gi = i.groebner_basis_in(MonomialOrder::DegRevLex);
    let a: Vec<Polynomial> = shifted_basis(&gi, &aux).iter().map(|p| &t * p).collect();
    let b = vec![&one_minus_t * &g.shifted(&aux, 1)];
    // with m^N ⊆ I, (I : g) ⊇ m^(N - deg g) and I ∩ (g) is needed only below degree N
    let top = primary_index(&gi);
    let aux_gb = compute_basis_truncated(
        &aux,
        MonomialOrder::BlockElimination(1),
        Some(weights),
        vec![Block::basis(a), Block::basis(b)],
        top.map(|n| n.saturating_sub(1)),
    );
    let inter = compute_basis(
        ring,
        MonomialOrder::DegRevLex,
        None,
        vec![Block::basis(eliminate_below(ring, &aux_gb, top))],
    );
    let quotients: Vec<Polynomial> = inter
        .elements()
        .iter()
        .map(|h| h.div_exact(g).expect("elements of I ∩ (g) are multiples of g"))
        .collect();
    // g times a Gröbner basis is a Gröbner basis, so the quotients already are one
    let delta = g.total_degree().expect("nonzero");
    let gb = complete_with_power(ring, quotients, top.map(|n| n.saturating_sub(delta)));
    Ok(ideal_from_drl_basis(ring, gb))
}

/// `I : K = ∩_g (I : g)` over the generators `g` of `K`.
pub fn ideal_colon(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    check(i, k)?;
    if k.is_zero() {
        return Err(Error::ZeroColon);
    }
    let k = minimalize_generators(k);
    // warm the shared cache before fanning out
    i.groebner_basis_in(MonomialOrder::DegRevLex);
    let parts = k
        .generators()
        .par_iter()
        .map(|g| colon_by_element(i, g))
        .collect::<Result<Vec<Ideal>>>()?;
    let result = intersect_all(i.ring(), parts)?;
    Ok(minimalize_generators(&result))
}

/// Intersection of a family, combined pairwise in a fixed tree shape.
pub fn intersect_all(ring: &Ring, parts: Vec<Ideal>) -> Result<Ideal> {
    let mut parts: Vec<Ideal> = parts.into_iter().filter(|p| !p.is_unit()).collect();
    if parts.is_empty() {
        return Ok(Ideal::unit(ring));
    }
    while parts.len() > 1 {
        let mut it = parts.into_iter();
        let mut pairs = Vec::new();
        let mut odd = None;
        loop {
            match (it.next(), it.next()) {
                (Some(a), Some(b)) => pairs.push((a, b)),
                (Some(a), None) => {
                    odd = Some(a);
                    break;
                }
                _ => break,
            }
        }
        let mut next = pairs
            .par_iter()
            .map(|(a, b)| {
                if a.contains(b)? {
                    Ok(b.clone())
                } else if b.contains(a)? {
                    Ok(a.clone())
                } else {
                    ideal_intersect(a, b)
                }
            })
            .collect::<Result<Vec<Ideal>>>()?;
        next.extend(odd);
        parts = next;
    }
    Ok(parts.pop().expect("nonempty"))
}

/// Rabinowitsch: `f ∈ √I` iff `1 ∈ I + (1 - t f)`.
pub fn radical_member(f: &Polynomial, i: &Ideal) -> Result<bool> {
    if !RingContext::same(i.ring(), f.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let aux = i.ring().with_auxiliary(MonomialOrder::DegRevLex);
    let t = aux_t(&aux);
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|g| g.shifted(&aux, 1)).collect();
    gens.push(&Polynomial::one(&aux) - &(&t * &f.shifted(&aux, 1)));
    let gb = compute_basis(&aux, MonomialOrder::DegRevLex, None, vec![Block::plain(gens)]);
    Ok(gb.is_unit())
}

/// Evidence for [`ci_is_radical`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalityEvidence {
    pub radical: bool,
    pub codimension: i64,
    /// `dim R/I`
    pub dimension: i64,
    /// `dim R/(I + Jacobian minors)`; -1 when the singular locus is empty.
    pub singular_locus_dimension: i64,
    pub minors: usize,
}

/// Serre's criterion for a complete intersection: `R/I` is Cohen–Macaulay,
/// so it is reduced iff its singular locus has smaller dimension.
pub fn ci_is_radical(i: &Ideal) -> Result<RadicalityEvidence> {
    let ring = i.ring();
    let n = ring.nvars() as i64;
    let gens = i.generators();
    let c = gens.len();
    let dim = krull_dimension(i);
    let codim = n - dim;
    if dim < 0 || codim != c as i64 {
        return Err(Error::NotCompleteIntersection { gens: c, codim });
    }
    let minors = jacobian_minors(gens, c);
    let mut all = gens.to_vec();
    all.extend(minors.iter().cloned());
    let sing = krull_dimension(&Ideal::from_trusted(ring, all));
    Ok(RadicalityEvidence {
        radical: sing < dim,
        codimension: codim,
        dimension: dim,
        singular_locus_dimension: sing,
        minors: minors.len(),
    })
}

/// All `c x c` minors of the Jacobian matrix of `gens`, over every choice of
/// `c` rows and `c` variables.
pub fn jacobian_minors(gens: &[Polynomial], c: usize) -> Vec<Polynomial> {
    let Some(ring) = gens.first().map(|g| g.ring().clone()) else {
        return vec![];
    };
    let n = ring.nvars();
    if c == 0 {
        return vec![Polynomial::one(&ring)];
    }
    let jac: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| (0..n).map(|v| g.derivative(v)).collect())
        .collect();
    let mut out = Vec::new();
    for rows in combinations(gens.len(), c) {
        for cols in combinations(n, c) {
            let m: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&k| jac[r][k].clone()).collect())
                .collect();
            let d = determinant(&m, &ring);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Laplace expansion along the first row.
fn determinant(m: &[Vec<Polynomial>], ring: &Ring) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        size => {
            let mut acc = Polynomial::zero(ring);
            for j in 0..size {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(&minor, ring);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Smallest `N <= bound` with `m^N ⊆ I`, read off the leading monomials.
pub fn maximal_power_contained(i: &Ideal, bound: u32) -> Option<u32> {
    if i.is_zero() {
        return None;
    }
    let gb = i.groebner_basis();
    let lead = gb.leading_monomials();
    let n = i.ring().nvars();
    (0..=bound).find(|&d| {
        crate::ring::monomials_of_degree(n, d)
            .iter()
            .all(|m| lead.iter().any(|l| l.divides(m)))
    })
}

/// `m^a * I^b`, with `m^0 = (1)`.
pub fn maximal_power_times(i: &Ideal, a: u32, b: u32) -> Ideal {
    let ib = ideal_power(i, b);
    if a == 0 {
        return ib;
    }
    ideal_product(&maximal_ideal_power(i.ring(), a), &ib).expect("same ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal_equal;
    use crate::ring::{parse_polynomial, Field};

    fn ring() -> Ring {
        RingContext::standard(&["x", "y", "z", "w"], Field::Rational)
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::parse(r, gens).unwrap()
    }

    fn i2(r: &Ring) -> Ideal {
        ideal(r, &["x^2+y*w", "y^2+z*w", "z^2+x*w"])
    }

    #[test]
    fn sums() {
        let r = ring();
        let i = ideal_sum(&i2(&r), &maximal_ideal_power(&r, 3)).unwrap();
        assert_eq!(i.generators().len(), 23);
        assert!(ideal_equal(&ideal_sum(&i, &Ideal::zero(&r)).unwrap(), &i).unwrap());
        let xy = ideal_sum(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert!(ideal_equal(&xy, &ideal(&r, &["x", "y"])).unwrap());
    }

    #[test]
    fn products_and_powers() {
        let r = ring();
        let p = ideal_product(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert_eq!(p.generator_strings(), vec!["x*y"]);
        let sq = ideal_power(&ideal(&r, &["x", "y"]), 2);
        assert!(ideal_equal(&sq, &ideal(&r, &["x^2", "x*y", "y^2"])).unwrap());
        assert_eq!(sq.generators().len(), 3);
        assert_eq!(ideal_power(&maximal_ideal(&r), 2).generators().len(), 10);
        assert!(ideal_power(&i2(&r), 0).is_unit());
        let i = i2(&r);
        assert!(ideal_equal(&ideal_product(&i, &Ideal::unit(&r)).unwrap(), &i).unwrap());
    }

    #[test]
    fn maximal_powers() {
        let r = ring();
        assert_eq!(maximal_ideal_power(&r, 3).generators().len(), 20);
        assert_eq!(maximal_ideal_power(&r, 5).generators().len(), 56);
        let r1 = RingContext::standard(&["x"], Field::Rational);
        assert_eq!(maximal_ideal_power(&r1, 4).generator_strings(), vec!["x^4"]);
    }

    #[test]
    fn minimalization() {
        let r = ring();
        let m = minimalize_generators(&ideal(&r, &["x", "x^2", "y"]));
        assert_eq!(m.generator_strings(), vec!["x", "y"]);
        let already = ideal(&r, &["x^2+y*w", "y^2+z*w"]);
        assert_eq!(minimalize_generators(&already).generators(), already.generators());
        // I = I_2 + m^3 has 3 quadrics and 8 independent cubics beyond m*I_2
        let i = ideal_sum(&i2(&r), &maximal_ideal_power(&r, 3)).unwrap();
        let mi = minimalize_generators(&i);
        assert_eq!(mi.generators().len(), 11);
        assert!(ideal_equal(&mi, &i).unwrap());
    }

    #[test]
    fn intersections() {
        let r = ring();
        let xy = ideal_intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert_eq!(xy.generator_strings(), vec!["x*y"]);
        let i = i2(&r);
        assert!(ideal_equal(&ideal_intersect(&i, &Ideal::unit(&r)).unwrap(), &i).unwrap());
        let h = ideal_intersect(&ideal(&r, &["x^2", "x*y"]), &ideal(&r, &["y"])).unwrap();
        assert!(ideal_equal(&h, &ideal(&r, &["x*y"])).unwrap());
    }

    #[test]
    fn colons() {
        let r = ring();
        let c = ideal_colon(&ideal(&r, &["x^2", "x*y"]), &ideal(&r, &["x"])).unwrap();
        assert!(ideal_equal(&c, &ideal(&r, &["x", "y"])).unwrap());
        let i = i2(&r);
        assert!(ideal_equal(&ideal_colon(&i, &Ideal::unit(&r)).unwrap(), &i).unwrap());
        assert_eq!(ideal_colon(&i, &Ideal::zero(&r)).unwrap_err(), Error::ZeroColon);
        // (x^2 y, x y^2) : (x y) = (x, y)
        let c = ideal_colon(&ideal(&r, &["x^2*y", "x*y^2"]), &ideal(&r, &["x*y"])).unwrap();
        assert!(ideal_equal(&c, &ideal(&r, &["x", "y"])).unwrap());
    }

    #[test]
    fn radical_membership() {
        let r = ring();
        let x = parse_polynomial("x", &r).unwrap();
        assert!(radical_member(&x, &ideal(&r, &["x^2"])).unwrap());
        assert!(!radical_member(&x, &ideal(&r, &["y"])).unwrap());
        let w = parse_polynomial("w", &r).unwrap();
        assert!(!radical_member(&w, &i2(&r)).unwrap());
        // w^2 ∈ sqrt(m^3) obviously
        assert!(radical_member(&w, &maximal_ideal_power(&r, 3)).unwrap());
    }

    #[test]
    fn serre_criterion() {
        let r = ring();
        let ev = ci_is_radical(&i2(&r)).unwrap();
        assert!(ev.radical);
        assert_eq!(ev.codimension, 3);
        assert_eq!(ev.dimension, 1);
        assert_eq!(ev.minors, 4);
        let r1 = RingContext::standard(&["x"], Field::Rational);
        assert!(!ci_is_radical(&Ideal::parse(&r1, &["x^2"]).unwrap()).unwrap().radical);
        let r2 = RingContext::standard(&["x", "y"], Field::Rational);
        assert!(ci_is_radical(&Ideal::parse(&r2, &["x", "y"]).unwrap()).unwrap().radical);
        assert!(matches!(
            ci_is_radical(&Ideal::parse(&r2, &["x^2", "x*y"]).unwrap()),
            Err(Error::NotCompleteIntersection { .. })
        ));
    }

    #[test]
    fn contains_power_of_maximal_ideal() {
        let r = ring();
        let i = ideal_sum(&i2(&r), &maximal_ideal_power(&r, 3)).unwrap();
        assert_eq!(maximal_power_contained(&i, 4), Some(3));
        assert_eq!(maximal_power_contained(&i2(&r), 5), None);
    }
}

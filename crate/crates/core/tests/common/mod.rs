#![allow(dead_code)]

use idealcore::ring::monomials_of_degree;
use idealcore::{Field, Ideal, Polynomial, Ring, RingContext};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(vars: &[&str], field: Field) -> Ring {
    RingContext::standard(vars, field)
}

pub fn xyzw(field: Field) -> Ring {
    ring(&["x", "y", "z", "w"], field)
}

pub fn fp() -> Field {
    Field::prime(32003).unwrap()
}

/// A homogeneous polynomial of degree `d`; each monomial is present with
/// probability `density`, coefficients in `[-bound, bound]`.
pub fn random_form(ring: &Ring, d: u32, density: f64, bound: i64, rng: &mut ChaCha8Rng) -> Polynomial {
    let field = ring.field();
    let terms: Vec<_> = monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .filter_map(|m| {
            let keep = rng.random_bool(density);
            let c = rng.random_range(-bound..=bound);
            keep.then(|| (m, field.from_i64(c)))
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// `count` nonzero sparse forms of degrees in `1..=max_degree`.
pub fn random_ideal(ring: &Ring, count: usize, max_degree: u32, rng: &mut ChaCha8Rng) -> Ideal {
    let mut gens = Vec::new();
    while gens.len() < count {
        let d = rng.random_range(1..=max_degree);
        let f = random_form(ring, d, 0.4, 5, rng);
        if !f.is_zero() {
            gens.push(f);
        }
    }
    Ideal::new(ring, gens).unwrap()
}

/// `Σ u_j g_j` with random forms `u_j` of degree `d - deg g_j`: a member of
/// degree `d` (possibly zero).
pub fn random_member(ideal: &Ideal, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let ring = ideal.ring();
    let mut f = Polynomial::zero(ring);
    for g in ideal.generators() {
        let e = g.total_degree().unwrap();
        if e <= d {
            let u = random_form(ring, d - e, 0.5, 9, rng);
            f = &f + &(&u * g);
        }
    }
    f
}

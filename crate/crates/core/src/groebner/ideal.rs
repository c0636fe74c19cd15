use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{compute_basis, require_homogeneous, Block, GroebnerBasis, MonomialOrder};
use crate::error::{Error, Result};
use crate::ring::{parse_polynomial, Polynomial, Ring, RingContext};

/// An ideal given by homogeneous generators, with a write-once cache of
/// reduced Gröbner bases per monomial order. Clones share the cache.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: Arc<Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>>,
}

impl Ideal {
    /// Zero generators are dropped; every generator must be homogeneous.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !RingContext::same(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            require_homogeneous(g)?;
        }
        Ok(Ideal::from_trusted(ring, gens))
    }

    pub(crate) fn from_trusted(ring: &Ring, gens: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Arc::default(),
        }
    }

    /// One generator per string.
    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<Ideal> {
        let polys = gens
            .iter()
            .map(|s| parse_polynomial(s.as_ref(), ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_trusted(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::from_trusted(ring, vec![Polynomial::one(ring)])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().is_unit()
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(Polynomial::total_degree).max()
    }

    /// Reduced Gröbner basis under the ring's order.
    pub fn groebner_basis(&self) -> Arc<GroebnerBasis> {
        self.groebner_basis_in(self.ring.order())
    }

    pub fn groebner_basis_in(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(&order) {
            return gb.clone();
        }
        // computed outside the lock; racing writers produce the same basis
        let gb = Arc::new(compute_basis(&self.ring, order, None, vec![Block::plain(self.gens.clone())]));
        self.cache
            .lock()
            .expect("cache lock")
            .entry(order)
            .or_insert(gb)
            .clone()
    }

    /// Another generating set of the same ideal; the cache stays shared.
    pub(crate) fn with_generators(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: self.cache.clone(),
        }
    }

    #[cfg(test)]
    pub(crate) fn has_cached_basis(&self, order: MonomialOrder) -> bool {
        self.cache.lock().expect("cache lock").contains_key(&order)
    }

    /// Installs a basis known to be the reduced basis of this ideal.
    pub(crate) fn seed_basis(&self, gb: GroebnerBasis) {
        self.cache
            .lock()
            .expect("cache lock")
            .entry(gb.order())
            .or_insert_with(|| Arc::new(gb));
    }

    /// The ideal with its generators replaced by its reduced Gröbner basis.
    pub fn from_basis(gb: &GroebnerBasis) -> Ideal {
        let ideal = Ideal::from_trusted(gb.ring(), gb.elements().to_vec());
        ideal.seed_basis(gb.clone());
        ideal
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if RingContext::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn contains_polynomial(&self, f: &Polynomial) -> Result<bool> {
        if !RingContext::same(&self.ring, f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        Ok(self.groebner_basis().contains(f))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        if other.gens.is_empty() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        let gb = self.groebner_basis();
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    /// The generator of `other` that is not in `self`, if any.
    pub fn first_missing<'a>(&self, other: &'a Ideal) -> Result<Option<&'a Polynomial>> {
        self.check_ring(other)?;
        if self.gens.is_empty() {
            return Ok(other.gens.first());
        }
        let gb = self.groebner_basis();
        Ok(other.gens.iter().find(|g| !gb.contains(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.equals_in(other, self.ring.order())
    }

    /// Equality of reduced Gröbner bases under `order`.
    pub fn equals_in(&self, other: &Ideal, order: MonomialOrder) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.groebner_basis_in(order).elements() == other.groebner_basis_in(order).elements())
    }

    /// Same generators over another field (same variables and order).
    pub fn to_field(&self, target: &Ring) -> Option<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.reduce_mod(target))
            .collect::<Option<Vec<_>>>()?;
        Some(Ideal::from_trusted(target, gens))
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator_strings().join(", "))
    }
}

/// Serialized as its generator strings, each re-parseable.
impl serde::Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.gens.iter().map(|g| g.to_string()))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.contains_polynomial(f)
}

/// `K ⊆ I`.
pub fn ideal_contains(i: &Ideal, k: &Ideal) -> Result<bool> {
    i.contains(k)
}

pub fn ideal_equal(i: &Ideal, k: &Ideal) -> Result<bool> {
    i.equals(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::krull_dimension;
    use crate::ring::Field;

    fn ring() -> Ring {
        RingContext::standard(&["x", "y", "z", "w"], Field::Rational)
    }

    #[test]
    fn equality_examples() {
        let r = ring();
        let a = Ideal::parse(&r, &["x", "y"]).unwrap();
        let b = Ideal::parse(&r, &["x+y", "y"]).unwrap();
        assert!(ideal_equal(&a, &b).unwrap());
        let c = Ideal::parse(&r, &["x"]).unwrap();
        let d = Ideal::parse(&r, &["x^2"]).unwrap();
        assert!(!ideal_equal(&c, &d).unwrap());
        assert!(c.contains(&d).unwrap());
        assert!(!d.contains(&c).unwrap());
    }

    #[test]
    fn membership_examples() {
        let r = ring();
        let m2 = Ideal::new(&r, crate::groebner::monomial_basis(&r, 2)).unwrap();
        assert!(!ideal_member(&parse_polynomial("x", &r).unwrap(), &m2).unwrap());
        let zero = Ideal::zero(&r);
        assert!(ideal_member(&Polynomial::zero(&r), &zero).unwrap());
        assert!(!ideal_member(&parse_polynomial("x", &r).unwrap(), &zero).unwrap());
    }

    #[test]
    fn dimensions() {
        let r = ring();
        let i2 = Ideal::parse(&r, &["x^2+y*w", "y^2+z*w", "z^2+x*w"]).unwrap();
        assert_eq!(krull_dimension(&i2), 1);
        let m = Ideal::parse(&r, &["x", "y", "z", "w"]).unwrap();
        assert_eq!(krull_dimension(&m), 0);
        assert_eq!(krull_dimension(&Ideal::zero(&r)), 4);
        assert_eq!(krull_dimension(&Ideal::unit(&r)), -1);
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let r = ring();
        assert!(matches!(Ideal::parse(&r, &["x^2+w^3"]), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn cache_is_shared_by_clones() {
        let r = ring();
        let a = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let b = a.clone();
        let g1 = a.groebner_basis();
        assert!(b.has_cached_basis(r.order()));
        assert!(Arc::ptr_eq(&g1, &b.groebner_basis()));
    }
}

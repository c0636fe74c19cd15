use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::groebner::MonomialOrder;

use super::{Coefficient, Monomial, Ring, RingContext};

/// A multivariate polynomial with terms strictly descending under the ring's
/// order, no repeated monomials and no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Coefficient)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: Coefficient) -> Polynomial {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Ring, c: i64) -> Polynomial {
        Polynomial::constant(ring, ring.field().from_i64(c))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Coefficient) -> Polynomial {
        debug_assert_eq!(m.nvars(), ring.nvars());
        debug_assert!(ring.field().check(&c));
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn variable(ring: &Ring, index: usize) -> Polynomial {
        Polynomial::monomial(ring, Monomial::variable(ring.nvars(), index), ring.field().one())
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Polynomial> {
        ring.var_index(name)
            .map(|i| Polynomial::variable(ring, i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Builds the canonical form of an arbitrary list of terms.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Coefficient)>) -> Polynomial {
        let mut acc: HashMap<Monomial, Coefficient> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(e) => *e = e.add_unchecked(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial::from_distinct(ring, acc.into_iter().collect())
    }

    /// Terms whose monomials are already pairwise distinct.
    pub(crate) fn from_distinct(ring: &Ring, mut terms: Vec<(Monomial, Coefficient)>) -> Polynomial {
        terms.retain(|(_, c)| !c.is_zero());
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already sorted descending under some order, possibly not the ring's.
    pub(crate) fn from_sorted_in(ring: &Ring, terms: Vec<(Monomial, Coefficient)>, order: MonomialOrder) -> Polynomial {
        if order == ring.order() {
            Polynomial {
                ring: ring.clone(),
                terms,
            }
        } else {
            Polynomial::from_distinct(ring, terms)
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coefficient)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Leading term under the ring's order.
    pub fn leading_term(&self) -> Option<&(Monomial, Coefficient)> {
        self.terms.first()
    }

    /// Leading term under an arbitrary order.
    pub fn leading_term_in(&self, order: MonomialOrder) -> Option<&(Monomial, Coefficient)> {
        if order == self.ring.order() {
            return self.terms.first();
        }
        self.terms.iter().max_by(|a, b| order.compare(&a.0, &b.0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Whether all terms share one total degree, and that degree. The zero
    /// polynomial is vacuously homogeneous with no degree.
    pub fn is_homogeneous(&self) -> (bool, Option<u32>) {
        let Some(d) = self.terms.first().map(|(m, _)| m.degree()) else {
            return (true, None);
        };
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            (true, Some(d))
        } else {
            (false, None)
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if RingContext::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &Coefficient| if negate { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match order.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add_unchecked(&sign(&b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Coefficient> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul_unchecked(cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add_unchecked(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_distinct(&self.ring, acc.into_iter().collect())
    }

    /// Multiplies by `c * m`; monomial orders are multiplicative so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc.mul_unchecked(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Scales so the leading coefficient (ring order) is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// `self / divisor` if the division is exact.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            let q = lm.quotient_of(&m)?;
            let qc = c.mul_unchecked(&lc_inv);
            rem = rem.merge(&divisor.mul_term(&q, &qc), true);
            quot.push((q, qc));
        }
        Some(Polynomial {
            ring: self.ring.clone(),
            terms: quot,
        })
    }

    /// Moves this polynomial into `target`, which must have the same field
    /// and variable count, re-sorting under its order.
    pub(crate) fn with_ring(&self, target: &Ring) -> Polynomial {
        debug_assert_eq!(target.nvars(), self.ring.nvars());
        Polynomial::from_sorted_in(target, self.terms.clone(), self.ring.order())
    }

    /// Embeds into a ring with `k` extra variables in front.
    pub(crate) fn shifted(&self, target: &Ring, k: usize) -> Polynomial {
        debug_assert_eq!(target.nvars(), self.ring.nvars() + k);
        Polynomial::from_distinct(
            target,
            self.terms.iter().map(|(m, c)| (m.shifted(k), c.clone())).collect(),
        )
    }

    /// Inverse of [`Polynomial::shifted`]; `None` if a leading variable occurs.
    pub(crate) fn unshifted(&self, target: &Ring, k: usize) -> Option<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| m.unshifted(k).map(|m| (m, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::from_distinct(target, terms))
    }

    /// Image in the same ring over F_p; `None` if p divides a denominator.
    pub fn reduce_mod(&self, target: &Ring) -> Option<Polynomial> {
        let p = target.field().characteristic();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| c.reduce_mod(p).map(|c| (m.clone(), c)))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::from_distinct(target, terms))
    }

    /// Jacobian entry: partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[index] > 0)
            .map(|(m, c)| {
                let e = m.exponents()[index];
                let mut exps = m.exponents().to_vec();
                exps[index] -= 1;
                (Monomial::new(exps), c.mul_unchecked(&field.from_i64(e as i64)))
            })
            .collect();
        Polynomial::from_distinct(&self.ring, terms)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Polynomial) -> bool {
        RingContext::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            if negative {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .zip(self.ring.var_names())
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

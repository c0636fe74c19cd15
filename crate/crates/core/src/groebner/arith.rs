//! Coefficient arithmetic used inside the reduction engine.
//!
//! Over the rationals the engine works with primitive integer polynomials
//! (content 1, positive leading coefficient) and fraction-free reduction steps,
//! which keeps bignum growth bounded. Over F_p it works with residues.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::{inv_mod, mul_mod, Coefficient, Monomial};

pub(crate) type Term<E> = (Monomial, E);

pub(crate) trait Arith: Sync + Send {
    type E: Clone + Debug + PartialEq + Send + Sync;

    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - b`
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;

    /// Factors `(sf, sg)` with `sf * c - sg * pivot == 0`; `sf == None` means 1.
    fn cancel(&self, c: &Self::E, pivot: &Self::E) -> (Option<Self::E>, Self::E);

    /// Value `n` such that mapping every coefficient through [`Arith::apply_norm`]
    /// yields the canonical scalar multiple; `None` if already canonical.
    fn normalizer<'a, I>(&self, coeffs: I) -> Option<Self::E>
    where
        I: Iterator<Item = &'a Self::E>,
        Self::E: 'a;

    fn apply_norm(&self, a: &Self::E, n: &Self::E) -> Self::E;

    /// Whether intermediate results should be renormalized during long reductions.
    fn grows(&self) -> bool {
        false
    }

    /// Converts a polynomial's coefficients, possibly rescaling by a common factor.
    fn import(&self, coeffs: &[Coefficient]) -> Vec<Self::E>;

    /// Converts back to monic field coefficients (leading entry first).
    fn export(&self, coeffs: &[Self::E]) -> Vec<Coefficient>;

    /// Converts back without rescaling.
    fn export_exact(&self, coeffs: &[Self::E]) -> Vec<Coefficient>;
}

pub(crate) fn normalize_terms<A: Arith>(arith: &A, terms: &mut [Term<A::E>]) {
    if let Some(n) = arith.normalizer(terms.iter().map(|t| &t.1)) {
        for t in terms.iter_mut() {
            t.1 = arith.apply_norm(&t.1, &n);
        }
    }
}

/// Primitive integer polynomials standing in for rational ones.
pub(crate) struct IntArith;

impl Arith for IntArith {
    type E = BigInt;

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn cancel(&self, c: &BigInt, pivot: &BigInt) -> (Option<BigInt>, BigInt) {
        let g = c.gcd(pivot);
        let mut sf = pivot / &g;
        let mut sg = c / &g;
        if sf.is_negative() {
            sf = -sf;
            sg = -sg;
        }
        if sf.is_one() {
            (None, sg)
        } else {
            (Some(sf), sg)
        }
    }

    fn normalizer<'a, I>(&self, mut coeffs: I) -> Option<BigInt>
    where
        I: Iterator<Item = &'a BigInt>,
    {
        let first = coeffs.next()?;
        let negative = first.is_negative();
        let mut g = first.abs();
        for c in coeffs {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if negative {
            g = -g;
        }
        if g.is_one() {
            None
        } else {
            Some(g)
        }
    }

    fn apply_norm(&self, a: &BigInt, n: &BigInt) -> BigInt {
        a / n
    }

    fn grows(&self) -> bool {
        true
    }

    fn import(&self, coeffs: &[Coefficient]) -> Vec<BigInt> {
        let rats: Vec<&BigRational> = coeffs
            .iter()
            .map(|c| match c {
                Coefficient::Rational(r) => r,
                Coefficient::Modular { .. } => panic!("rational engine fed a modular coefficient"),
            })
            .collect();
        let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        rats.iter().map(|r| r.numer() * (&den / r.denom())).collect()
    }

    fn export_exact(&self, coeffs: &[BigInt]) -> Vec<Coefficient> {
        coeffs
            .iter()
            .map(|c| Coefficient::Rational(BigRational::from_integer(c.clone())))
            .collect()
    }

    fn export(&self, coeffs: &[BigInt]) -> Vec<Coefficient> {
        let Some(lead) = coeffs.first() else {
            return Vec::new();
        };
        coeffs
            .iter()
            .map(|c| Coefficient::Rational(BigRational::new(c.clone(), lead.clone())))
            .collect()
    }
}

/// Residues modulo a prime below 2^31.
pub(crate) struct ModArith {
    pub p: u64,
}

impl Arith for ModArith {
    type E = u64;

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn cancel(&self, c: &u64, pivot: &u64) -> (Option<u64>, u64) {
        (None, mul_mod(*c, inv_mod(*pivot, self.p), self.p))
    }

    fn normalizer<'a, I>(&self, mut coeffs: I) -> Option<u64>
    where
        I: Iterator<Item = &'a u64>,
    {
        let first = *coeffs.next()?;
        (first != 1).then(|| inv_mod(first, self.p))
    }

    fn apply_norm(&self, a: &u64, n: &u64) -> u64 {
        mul_mod(*a, *n, self.p)
    }

    fn import(&self, coeffs: &[Coefficient]) -> Vec<u64> {
        coeffs
            .iter()
            .map(|c| match c {
                Coefficient::Modular { residue, modulus } if *modulus == self.p => *residue,
                other => panic!("modular engine fed coefficient {other:?}"),
            })
            .collect()
    }

    fn export_exact(&self, coeffs: &[u64]) -> Vec<Coefficient> {
        coeffs
            .iter()
            .map(|&residue| Coefficient::Modular { residue, modulus: self.p })
            .collect()
    }

    fn export(&self, coeffs: &[u64]) -> Vec<Coefficient> {
        let Some(&lead) = coeffs.first() else {
            return Vec::new();
        };
        let inv = inv_mod(lead, self.p);
        coeffs
            .iter()
            .map(|c| Coefficient::Modular {
                residue: mul_mod(*c, inv, self.p),
                modulus: self.p,
            })
            .collect()
    }
}

/// Exact rational field arithmetic; used where true remainders are needed.
pub(crate) struct RatArith;

impl Arith for RatArith {
    type E = BigRational;

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn cancel(&self, c: &BigRational, pivot: &BigRational) -> (Option<BigRational>, BigRational) {
        (None, c / pivot)
    }

    fn normalizer<'a, I>(&self, mut coeffs: I) -> Option<BigRational>
    where
        I: Iterator<Item = &'a BigRational>,
    {
        let first = coeffs.next()?;
        (!first.is_one()).then(|| first.recip())
    }

    fn apply_norm(&self, a: &BigRational, n: &BigRational) -> BigRational {
        a * n
    }

    fn import(&self, coeffs: &[Coefficient]) -> Vec<BigRational> {
        coeffs
            .iter()
            .map(|c| match c {
                Coefficient::Rational(r) => r.clone(),
                other => panic!("rational engine fed coefficient {other:?}"),
            })
            .collect()
    }

    fn export_exact(&self, coeffs: &[BigRational]) -> Vec<Coefficient> {
        coeffs.iter().cloned().map(Coefficient::Rational).collect()
    }

    fn export(&self, coeffs: &[BigRational]) -> Vec<Coefficient> {
        let Some(lead) = coeffs.first() else {
            return Vec::new();
        };
        coeffs.iter().map(|c| Coefficient::Rational(c / lead)).collect()
    }
}

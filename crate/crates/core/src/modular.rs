//! Colons `J^(k+1) : I^k` over Q through prime fields.
//!
//! Over Q, the reduced bases of powers of a random reduction carry
//! coefficients with thousands of digits while the colon itself is small. The
//! colon is therefore computed modulo several word-size primes, lifted to Q by
//! Chinese remaindering and rational reconstruction, and then certified
//! exactly:
//!
//! * `C · I^k ⊆ J^(k+1)` is checked over Q, which gives `C ⊆ J^(k+1) : I^k`;
//! * for the reverse inclusion, the dimension of `(J^(k+1) : I^k)_e` over Q is
//!   bounded by its dimension modulo `p`. The colon in degree `e` is the
//!   projection of the kernel of an integer matrix `Ψ` (pairs `(f, h)` with
//!   `f g = Σ h_i a_i`) minus the kernel of its restriction to the `h` part.
//!   Rank can only drop modulo `p`, so the first kernel can only grow; the
//!   second is governed by the Hilbert function of `J^(k+1)`, which is the
//!   same over Q and modulo `p` because `J` is generated by a regular sequence
//!   of the same degrees in both cases (`n` forms generating an m-primary
//!   ideal in `n` variables). Equal leading-term ideals of `C` over Q and of
//!   the colon modulo `p` then force equality in every degree.
//!
//! The stabilized colon `J^(k+2) : I^(k+1)` always contains `J^(k+1) : I^k`
//! once `I^(k+1) = J I^k`, so the same dimension bound certifies equality of
//! the two from one further computation modulo `p`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::core_engine::iterated_colon;
use crate::error::Result;
use crate::groebner::{compute_basis, Block, GroebnerBasis, Ideal, MonomialOrder};
use crate::ideal_ops::{ideal_power, primary_index};
use crate::ring::{is_prime, Coefficient, Field, Monomial, Polynomial, Ring};

/// Primes just below `2^31`, largest first.
pub(crate) fn word_primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

/// Smallest-magnitude fraction `r/s` with `r ≡ s a (mod m)` and
/// `|r|, s <= sqrt(m/2)`, if one exists.
pub(crate) fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1) = (r1, r2);
        (s0, s1) = (s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn residue(c: &Coefficient) -> u64 {
    match c {
        Coefficient::Modular { residue, .. } => *residue,
        Coefficient::Rational(_) => unreachable!("prime-field basis"),
    }
}

/// Chinese-remainder accumulation of reduced bases sharing leading monomials.
struct Lift {
    lead: Vec<Monomial>,
    modulus: BigInt,
    residues: Vec<BTreeMap<Monomial, BigInt>>,
}

impl Lift {
    fn new(gb: &GroebnerBasis) -> Lift {
        let p = gb.ring().field().characteristic();
        Lift {
            lead: gb.leading_monomials().to_vec(),
            modulus: BigInt::from(p),
            residues: gb
                .elements()
                .iter()
                .map(|e| e.terms().iter().map(|(m, c)| (m.clone(), BigInt::from(residue(c)))).collect())
                .collect(),
        }
    }

    fn absorb(&mut self, gb: &GroebnerBasis) {
        let p = gb.ring().field().characteristic();
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(crate::ring::inv_mod(
            (&self.modulus % &pb).try_into().expect("word"),
            p,
        ));
        for (acc, elem) in self.residues.iter_mut().zip(gb.elements()) {
            let fresh: BTreeMap<&Monomial, u64> = elem.terms().iter().map(|(m, c)| (m, residue(c))).collect();
            for m in fresh.keys() {
                acc.entry((*m).clone()).or_insert_with(BigInt::zero);
            }
            for (m, a) in acc.iter_mut() {
                let b = BigInt::from(fresh.get(m).copied().unwrap_or(0));
                let t = ((b - &*a) * &m_inv).mod_floor(&pb);
                *a += &self.modulus * t;
            }
        }
        self.modulus *= pb;
    }

    fn rationalize(&self, ring: &Ring) -> Option<Vec<Polynomial>> {
        self.residues
            .iter()
            .map(|terms| {
                let mut out = Vec::with_capacity(terms.len());
                for (m, a) in terms {
                    if a.is_zero() {
                        continue;
                    }
                    let q = rational_reconstruction(a, &self.modulus)?;
                    out.push((m.clone(), Coefficient::Rational(q)));
                }
                Some(Polynomial::from_terms(ring, out))
            })
            .collect()
    }
}

/// Whether the rational candidate reduces to the given prime-field basis.
fn consistent(candidate: &[Polynomial], gb: &GroebnerBasis) -> bool {
    candidate.len() == gb.len()
        && candidate
            .iter()
            .zip(gb.elements())
            .all(|(c, e)| c.reduce_mod(gb.ring()).is_some_and(|r| &r == e))
}

/// Products of `gens` with `k` factors, as generators of `(gens)^k`.
pub(crate) fn raw_power(gens: &[Polynomial], k: u32) -> Vec<Polynomial> {
    fn rec(gens: &[Polynomial], start: usize, left: u32, acc: &Polynomial, out: &mut Vec<Polynomial>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..gens.len() {
            rec(gens, i, left - 1, &(acc * &gens[i]), out);
        }
    }
    let Some(first) = gens.first() else {
        return vec![];
    };
    let mut out = Vec::new();
    rec(gens, 0, k, &Polynomial::one(first.ring()), &mut out);
    out
}

/// A colon over Q with its certificate.
#[derive(Clone, Debug)]
pub(crate) struct CertifiedColon {
    pub colon: Ideal,
    /// `J^(k+2) : I^(k+1)` was shown equal to `colon`.
    pub stabilized: bool,
    pub primes: Vec<u64>,
}

/// Everything computed modulo one prime.
struct PrimeImage {
    ring: Ring,
    reduction: Vec<Polynomial>,
    ideal: Ideal,
    colon: GroebnerBasis,
    power_index: u32,
}

/// Maximum number of primes tried before giving up on the lift.
const MAX_PRIMES: usize = 64;

fn image(i: &Ideal, j: &Ideal, k: u32, colon_by: &ColonPlan, p: u64) -> Result<Option<PrimeImage>> {
    let ring = i.ring().with_field(Field::prime(p)?);
    let Some(reduction) = j
        .generators()
        .iter()
        .map(|g| g.reduce_mod(&ring).filter(|r| r.total_degree() == g.total_degree()))
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(None);
    };
    let Some(ideal) = i.to_field(&ring) else {
        return Ok(None);
    };
    let j_p = Ideal::new(&ring, reduction.clone())?;
    if primary_index(&j_p.groebner_basis_in(MonomialOrder::DegRevLex)).is_none() {
        return Ok(None);
    }
    let power = Ideal::new(&ring, raw_power(&reduction, k + 1))?;
    let Some(power_index) = primary_index(&power.groebner_basis_in(MonomialOrder::DegRevLex)) else {
        return Ok(None);
    };
    let colon = colon_by.apply(&power, &ideal, k)?;
    let colon = (*colon.groebner_basis_in(MonomialOrder::DegRevLex)).clone();
    Ok(Some(PrimeImage {
        ring,
        reduction,
        ideal,
        colon,
        power_index,
    }))
}

/// How `A : I^k` is evaluated modulo `p`.
pub(crate) enum ColonPlan {
    /// `k` successive colons by `I`.
    ByIdeal,
    /// `I = m^e`: `e k` successive colons by `m`.
    ByMaximal { exponent: u32 },
}

impl ColonPlan {
    pub fn apply(&self, a: &Ideal, i: &Ideal, k: u32) -> Result<Ideal> {
        match self {
            ColonPlan::ByIdeal => iterated_colon(a, i, k),
            ColonPlan::ByMaximal { exponent } => {
                iterated_colon(a, &crate::ideal_ops::maximal_ideal(a.ring()), k * exponent)
            }
        }
    }
}

/// `J^(k+1) : I^k` over Q, certified, or `None` when the method does not
/// apply (`J` not generated by `n` elements) or no prime led to a certificate.
pub(crate) fn certified_colon(i: &Ideal, j: &Ideal, k: u32, plan: &ColonPlan) -> Result<Option<CertifiedColon>> {
    let ring = i.ring();
    if ring.field() != Field::Rational || j.generators().len() != ring.nvars() {
        return Ok(None);
    }
    let mut primes = Vec::new();
    let mut lift: Option<Lift> = None;
    let mut candidate: Option<Vec<Polynomial>> = None;
    let mut last: Option<PrimeImage> = None;
    for p in word_primes().take(MAX_PRIMES) {
        let Some(img) = image(i, j, k, plan, p)? else { continue };
        if let Some(c) = &candidate {
            if consistent(c, &img.colon) {
                primes.push(p);
                last = Some(img);
                break;
            }
        }
        match &mut lift {
            Some(l) if l.lead == img.colon.leading_monomials() => l.absorb(&img.colon),
            // an unlucky prime (or a lucky one after unlucky ones): start over
            _ => {
                primes.clear();
                lift = Some(Lift::new(&img.colon));
            }
        }
        primes.push(p);
        candidate = lift.as_ref().and_then(|l| l.rationalize(ring));
    }
    let (Some(candidate), Some(img)) = (candidate, last) else {
        return Ok(None);
    };

    // leading terms over Q must match the prime image
    let gb_q = compute_basis(ring, MonomialOrder::DegRevLex, None, vec![Block::plain(candidate)]);
    if gb_q.leading_monomials() != img.colon.leading_monomials() {
        return Ok(None);
    }
    let colon = Ideal::from_basis(&gb_q);

    // C · I^k ⊆ J^(k+1) over Q; products of degree >= the index of J^(k+1) are automatic
    let ik = ideal_power(i, k);
    let power_q = Ideal::new(ring, raw_power(j.generators(), k + 1))?;
    let minimal_c = crate::ideal_ops::minimalize_generators(&colon);
    for c in minimal_c.generators() {
        for g in ik.generators() {
            let d = c.total_degree().unwrap_or(0) + g.total_degree().unwrap_or(0);
            if d >= img.power_index {
                continue;
            }
            if !power_q.contains_polynomial(&(c * g))? {
                return Ok(None);
            }
        }
    }

    // one more colon modulo the last prime bounds J^(k+2) : I^(k+1) from above
    let next_power = Ideal::new(&img.ring, raw_power(&img.reduction, k + 2))?;
    let next = plan.apply(&next_power, &img.ideal, k + 1)?;
    let stabilized = next.groebner_basis_in(MonomialOrder::DegRevLex).leading_monomials() == gb_q.leading_monomials();
    Ok(Some(CertifiedColon {
        colon: minimal_c,
        stabilized,
        primes,
    }))
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default modulus for the prime-field surrogate of characteristic zero.
pub const DEFAULT_PRIME: u64 = 32003;

/// Bound on the absolute value of randomly drawn coefficients.
pub const RANDOM_COEFFICIENT_BOUND: i64 = 99;

/// The coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if p <= 2 * RANDOM_COEFFICIENT_BOUND as u64 {
            return Err(Error::InvalidRing(format!(
                "modulus {p} must exceed {}",
                2 * RANDOM_COEFFICIENT_BOUND
            )));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidRing(format!("modulus {p} must be below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals, p otherwise.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coefficient {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(BigRational::from_integer(v.into())),
            Field::Prime(p) => Coefficient::Modular {
                residue: v.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => Coefficient::Modular {
                residue: reduce_bigint(v, *p),
                modulus: *p,
            },
        }
    }

    /// Maps `num/den` into the field; fails when `den` vanishes in it.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coefficient> {
        if den.is_zero() {
            return Err(Error::NotRepresentable(format!("{num}/{den}")));
        }
        match self {
            Field::Rational => Ok(Coefficient::Rational(BigRational::new(
                num.clone(),
                den.clone(),
            ))),
            Field::Prime(p) => {
                let d = reduce_bigint(den, *p);
                if d == 0 {
                    return Err(Error::NotRepresentable(format!("{num}/{den} mod {p}")));
                }
                Ok(Coefficient::Modular {
                    residue: mul_mod(reduce_bigint(num, *p), inv_mod(d, *p), *p),
                    modulus: *p,
                })
            }
        }
    }

    pub(crate) fn check(&self, c: &Coefficient) -> bool {
        match (self, c) {
            (Field::Rational, Coefficient::Rational(_)) => true,
            (Field::Prime(p), Coefficient::Modular { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "ZZ/{p}"),
        }
    }
}

/// An element of either the rationals or a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    /// Always in lowest terms with positive denominator.
    Rational(BigRational),
    /// `residue` lies in `[0, modulus)`.
    Modular { residue: u64, modulus: u64 },
}

impl Coefficient {
    pub fn field(&self) -> Field {
        match self {
            Coefficient::Rational(_) => Field::Rational,
            Coefficient::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_one(),
            Coefficient::Modular { residue, .. } => *residue == 1,
        }
    }

    fn mismatch(&self, other: &Coefficient) -> Error {
        Error::FieldMismatch(self.field().to_string(), other.field().to_string())
    }

    pub fn checked_add(&self, other: &Coefficient) -> Result<Coefficient> {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Ok(Coefficient::Rational(a + b)),
            (
                Coefficient::Modular { residue: a, modulus: p },
                Coefficient::Modular { residue: b, modulus: q },
            ) if p == q => Ok(Coefficient::Modular {
                residue: (a + b) % p,
                modulus: *p,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_mul(&self, other: &Coefficient) -> Result<Coefficient> {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Ok(Coefficient::Rational(a * b)),
            (
                Coefficient::Modular { residue: a, modulus: p },
                Coefficient::Modular { residue: b, modulus: q },
            ) if p == q => Ok(Coefficient::Modular {
                residue: mul_mod(*a, *b, *p),
                modulus: *p,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Rational(a) => Coefficient::Rational(-a),
            Coefficient::Modular { residue, modulus } => Coefficient::Modular {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Coefficient> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coefficient::Rational(a) => Coefficient::Rational(a.recip()),
            Coefficient::Modular { residue, modulus } => Coefficient::Modular {
                residue: inv_mod(*residue, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Sign used when printing: residues are printed as-is and count as positive.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coefficient::Rational(a) => a.is_negative(),
            Coefficient::Modular { .. } => false,
        }
    }

    /// Reduction of a rational into F_p; `None` if p divides the denominator.
    pub fn reduce_mod(&self, p: u64) -> Option<Coefficient> {
        match self {
            Coefficient::Rational(a) => Field::Prime(p).from_fraction(a.numer(), a.denom()).ok(),
            Coefficient::Modular { residue, modulus } if *modulus == p => Some(Coefficient::Modular {
                residue: *residue,
                modulus: p,
            }),
            Coefficient::Modular { .. } => None,
        }
    }

    pub(crate) fn add_unchecked(&self, other: &Coefficient) -> Coefficient {
        self.checked_add(other).expect("mixed-field arithmetic")
    }

    pub(crate) fn mul_unchecked(&self, other: &Coefficient) -> Coefficient {
        self.checked_mul(other).expect("mixed-field arithmetic")
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(a) => {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Coefficient::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 8]>;

/// A power product, stored as a dense exponent vector with its total degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Exponents,
}

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = u16>) -> Monomial {
        let exps: Exponents = exps.into_iter().collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { degree, exps }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn variable(nvars: usize, index: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if exact.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            degree: other.degree - self.degree,
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit i is set iff variable i (mod 64) occurs.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << (i % 64)))
    }

    /// Prepends `k` zero exponents.
    pub(crate) fn shifted(&self, k: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, k);
        exps.extend_from_slice(&self.exps);
        Monomial {
            degree: self.degree,
            exps,
        }
    }

    /// Drops the first `k` exponents; `None` if any of them is nonzero.
    pub(crate) fn unshifted(&self, k: usize) -> Option<Monomial> {
        if self.exps[..k].iter().any(|&e| e > 0) {
            return None;
        }
        Some(Monomial {
            degree: self.degree,
            exps: SmallVec::from_slice(&self.exps[k..]),
        })
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in lex-descending order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, idx: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if idx + 1 == nvars {
            cur.push(left as u16);
            out.push(Monomial::new(cur.iter().copied()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u16);
            rec(nvars, idx + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::new([]));
        }
        return out;
    }
    rec(nvars, 0, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

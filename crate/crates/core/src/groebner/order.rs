use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::ring::Monomial;

/// A monomial order on exponent vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with the declared variable order.
    #[default]
    DegRevLex,
    Lex,
    /// Degrevlex on the first `k` variables, ties broken by degrevlex on the
    /// rest. Eliminates the first `k` variables.
    BlockElimination(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex_tail(ea, eb)),
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::BlockElimination(k) => {
                let k = k.min(ea.len());
                degrevlex_slice(&ea[..k], &eb[..k])
                    .then_with(|| degrevlex_slice(&ea[k..], &eb[k..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::BlockElimination(k) => format!("elim{k}"),
        }
    }
}

fn degrevlex_slice(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| revlex_tail(a, b))
}

// For equal degrees: the monomial with the smaller exponent in the last
// differing variable is larger.
fn revlex_tail(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            other => other
                .strip_prefix("elim")
                .and_then(|k| k.parse().ok())
                .map(MonomialOrder::BlockElimination)
                .ok_or_else(|| Error::InvalidParameters(format!("unknown monomial order `{s}`"))),
        }
    }
}

impl Serialize for MonomialOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::monomials_of_degree;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        // x > y > z > w in degree 1
        assert_eq!(o.compare(&m(&[1, 0, 0, 0]), &m(&[0, 1, 0, 0])), Ordering::Greater);
        // x^2 > xy > y^2 > xz > yz > z^2
        let chain = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in chain.windows(2) {
            assert_eq!(o.compare(&m(&w[0]), &m(&w[1])), Ordering::Greater);
        }
        // y^2 > xw in degrevlex (contrast with lex)
        assert_eq!(o.compare(&m(&[0, 2, 0, 0]), &m(&[1, 0, 0, 1])), Ordering::Greater);
        assert_eq!(
            MonomialOrder::Lex.compare(&m(&[0, 2, 0, 0]), &m(&[1, 0, 0, 1])),
            Ordering::Less
        );
    }

    #[test]
    fn elimination_order_eliminates_leading_block() {
        let o = MonomialOrder::BlockElimination(1);
        // t*x < t^2 never mind total degree; any t beats no t
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::DegRevLex),
            Just(MonomialOrder::Lex),
            (0usize..4).prop_map(MonomialOrder::BlockElimination),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u16..5, 4).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_well_founded(o in orders(), a in mono(), b in mono(), c in mono()) {
            let ab = o.compare(&a, &b);
            prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_ne!(o.compare(&a, &Monomial::one(4)), Ordering::Less);
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(o.compare(&b, &a), ab.reverse());
        }
    }

    #[test]
    fn total_on_a_degree_slice() {
        for o in [MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::BlockElimination(2)] {
            let mut ms = monomials_of_degree(4, 3);
            ms.sort_by(|a, b| o.compare(a, b));
            for w in ms.windows(2) {
                assert_eq!(o.compare(&w[0], &w[1]), Ordering::Less);
            }
        }
    }
}

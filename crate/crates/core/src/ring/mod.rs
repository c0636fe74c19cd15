//! Exact coefficient arithmetic, monomials and multivariate polynomials in
//! canonical (sorted, merged) form.

mod coefficient;
mod monomial;
mod parse;
mod polynomial;

use std::sync::Arc;

pub use coefficient::{Coefficient, Field, DEFAULT_PRIME, RANDOM_COEFFICIENT_BOUND};
pub(crate) use coefficient::{inv_mod, is_prime, mul_mod};
pub use monomial::{monomials_of_degree, Monomial};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;

use crate::error::{Error, Result};
use crate::groebner::MonomialOrder;

/// Name of the auxiliary variable adjoined for elimination. It cannot collide
/// with user variables, which must start with a letter.
pub const AUX_VARIABLE: &str = "__t";

/// Variables, coefficient field and default monomial order of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

pub type Ring = Arc<RingContext>;

impl RingContext {
    pub fn new<S: AsRef<str>>(vars: &[S], field: Field, order: MonomialOrder) -> Result<Ring> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref().trim();
            if !is_valid_name(v) {
                return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
            }
            if names.iter().any(|n| n == v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
            names.push(v.to_string());
        }
        if names.len() > 64 {
            return Err(Error::InvalidRing("at most 64 variables are supported".into()));
        }
        if let Field::Prime(p) = field {
            Field::prime(p)?;
        }
        Ok(Arc::new(RingContext {
            vars: names,
            field,
            order,
        }))
    }

    /// Parses a comma-separated variable list such as `x,y,z,w`.
    pub fn from_spec(vars: &str, field: Field, order: MonomialOrder) -> Result<Ring> {
        let names: Vec<&str> = vars.split(',').map(str::trim).collect();
        RingContext::new(&names, field, order)
    }

    /// `QQ[x,y,z,w]` with degrevlex: the ring of the counterexample.
    pub fn standard(vars: &[&str], field: Field) -> Ring {
        RingContext::new(vars, field, MonomialOrder::DegRevLex).expect("valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(RingContext {
            vars: self.vars.clone(),
            field: self.field,
            order,
        })
    }

    pub fn with_field(&self, field: Field) -> Ring {
        Arc::new(RingContext {
            vars: self.vars.clone(),
            field,
            order: self.order,
        })
    }

    /// The ring with [`AUX_VARIABLE`] placed before all others.
    pub(crate) fn with_auxiliary(&self, order: MonomialOrder) -> Ring {
        let mut vars = Vec::with_capacity(self.vars.len() + 1);
        vars.push(AUX_VARIABLE.to_string());
        vars.extend(self.vars.iter().cloned());
        Arc::new(RingContext {
            vars,
            field: self.field,
            order,
        })
    }

    pub fn same(a: &Ring, b: &Ring) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

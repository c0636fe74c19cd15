//! Exact commutative algebra for cores of m-primary homogeneous ideals:
//! polynomial arithmetic over Q and F_p, reduced Gröbner bases, the ideal
//! calculus (sums, products, intersections, colons), minimal reductions,
//! reduction numbers and cores computed as `J^(r+1) : I^r`.

pub mod error;
pub mod groebner;
pub mod cli;
pub mod core_engine;
pub mod counterexample;
pub mod ideal_ops;
pub mod formulas;
mod modular;
pub mod ring;

pub use error::{Error, Result};
pub use groebner::{GroebnerBasis, Ideal, MonomialOrder};
pub use ring::{Coefficient, Field, Monomial, Polynomial, Ring, RingContext};

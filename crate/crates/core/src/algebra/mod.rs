//! Exact rational and polynomial arithmetic.

pub mod gcd;
pub mod identity;
mod modular;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod sqfree;

pub use gcd::{poly_gcd, poly_gcd_many};
pub use identity::{random_identity_check, IdentityCheck};
pub use parse::{format_poly, parse_poly};
pub use poly::{Monomial, MultiPoly, VarSpace};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use sqfree::{squarefree_decompose, SquarefreeDecomposition};

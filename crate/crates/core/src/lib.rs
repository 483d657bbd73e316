//! Exact arithmetic for the Romik map on the unit quarter circle.
//!
//! Everything is computed over real quadratic fields Q(sqrt D) with
//! arbitrary-precision rationals: no floating point anywhere. The crate
//! covers the field scalars ([`field`]), the ambient quadratic space
//! (R^3, Q) with Q(x) = x1^2 + x2^2 - x3^2 ([`quadspace`]), the map T and
//! its digit expansions ([`romik`]), the ternary tree of primitive
//! Pythagorean triples ([`berggren`]), and the constructive periodicity
//! theory ([`lagrange`]).

pub mod berggren;
pub mod error;
pub mod field;
pub mod lagrange;
pub mod quadspace;
pub mod romik;
pub mod selftest;

pub use error::{Error, Result};
pub use field::{fundamental_unit, squarefree_part, FundamentalUnit, Int, Qfe, Rational};
pub use quadspace::{CirclePoint, Mat3, MatName, Vec3};
pub use romik::{Digit, RationalExpansion, Tail};

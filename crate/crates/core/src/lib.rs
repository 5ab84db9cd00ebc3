#![no_std]
//! Exact computations with graded free resolutions over weighted polynomial
//! rings, and the (skew-)symmetric resolutions of Gorenstein algebras of odd
//! codimension.

extern crate alloc;

pub mod complexes;
pub mod error;
pub mod field;
pub mod gorenstein;
pub mod groebner;
pub mod linalg;
pub mod parse;
pub mod pfaffian;
pub mod poly;
pub mod ring;

pub use error::{AlgebraError, Result};
pub use field::{Field, Scalar};
pub use parse::{parse_poly, render};
pub use poly::Polynomial;
pub use ring::{GradedRing, Monomial, MonomialOrder};

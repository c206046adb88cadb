//! Exact λ-bracket calculus for finite Lie conformal superalgebras: the
//! exterior algebra Λ(N), conformal algebras and their axioms, the families
//! W, S, S̃, K, K′₄ and Cur, finite Lie superalgebras, central extensions and
//! annihilation (mode) algebras.

pub mod cohomology;
pub mod conformal;
pub mod document;
pub mod error;
pub mod families;
pub mod finite;
pub mod grassmann;
pub mod linalg;
pub mod modes;
pub mod parity;
pub mod scalar;

pub use error::{Error, Result};
pub use parity::Parity;
pub use scalar::Scalar;

//! Exact computations with quadratic algebras and coalgebras over prime
//! fields: bar and cobar (co)homology, quadratic duality, Koszulity via
//! homology and via distributivity of subspace lattices, augmentation
//! filtrations of coalgebras, commutative PBW bases and Milnor symbol
//! algebras of the rationals.

pub mod cli;
pub mod error;
pub mod exactla;
pub mod homology;
pub mod koszul;
pub mod milnor;
pub mod nilpotent;
pub mod pbw;
pub mod quadratic;
pub mod tensor;

pub use error::{Error, Result};

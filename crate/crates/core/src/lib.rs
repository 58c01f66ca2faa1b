//! Finite, checkable models of injectivity-theoretic characterizations of weak
//! equivalences: lifting and cone injectivity engines, algebraic injectives,
//! chain complexes, simplicial sets and free algebras for pointed endofunctors.

pub mod cat_equivalence;
pub mod chain;
pub mod error;
pub mod kernel;
pub mod lifting;
pub mod pointed;
pub mod pure_mono;
pub mod simplicial;

pub use error::{Error, Result};

//! Bounded chain complexes over exact fields and the cycle-lifting tests for
//! quasi-isomorphisms.

pub mod complex;
pub mod corpus;
pub mod field;
pub mod injectivity;
pub mod matrix;
pub mod quasi_iso;

pub use complex::{chain_map_basis, BoundedComplex, ChainMap};
pub use field::{Field, FiniteField, PrimeField, Rationals};
pub use injectivity::{
    build_sdi, build_sdi_truncated, injectivity_truncated, is_quasi_iso_via_injectivity,
    ChainCategory, ChainInjectivityVerdict, Sdi,
};
pub use matrix::Matrix;
pub use quasi_iso::{
    homology, induced_on_homology, is_quasi_iso_homology, quasi_iso_condition_enumerative,
    quasi_iso_condition_linear, Homology, InducedMap, CycleCheck, CycleCounterexample,
};

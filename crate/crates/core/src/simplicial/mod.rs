//! Finite simplicial sets, subdivision and `Ex`, and the generating cones for
//! weak equivalences.

pub mod cones;
pub mod constructions;
pub mod corpus;
pub mod ex;
pub mod graph;
pub mod search;
pub mod set;
pub mod simplex;
pub mod subdivision;

pub use cones::{alpha, cone_cnm, cone_pi0, is_we_bounded, pi0_cone_for, rh, ConeFamily, ConeFamilySpec, RelHomotopy, Square, WeBounds, WeEntry};
pub use graph::{graph_a, linear_zigzag_length, pi0, pi0_map, pi0_surjective, skeleton, zigzag_diameter, Components, ReflexiveGraph};
pub use ex::{delta_map, ex_infty, Ex, ExInfty};
pub use constructions::{boundary, nerve, product, standard_simplex, yoneda, zigzag, Product};
pub use search::{search_maps, SSet};
pub use set::{FinSimplicialSet, Levels, SimplicialMap};
pub use simplex::Simplex;
pub use subdivision::{sd, sd_k, Subdivision, Tower};

/// Largest dimension any constructed simplicial set may reach.
pub const DIM_LIMIT: usize = 10;

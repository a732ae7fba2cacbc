//! Finite group cohomology with trivial `Z/m` coefficients, specialised to the
//! torsor group `μ_n × Z/n` of the n-th root stack.
//!
//! Cochains are inhomogeneous and tabulated densely; everything is guarded by
//! [`group::TABLE_LIMIT`] and [`linalg::MATRIX_LIMIT`].

pub mod complex;
pub mod edge;
pub mod extension;
pub mod formal;
pub mod group;
pub mod linalg;

pub use complex::{coboundary_matrix, coboundary_preimage, cocycles_cohomologous, cohomology_rank};
pub use edge::{cup_product_boxtimes, inflate_from_quotient, lhs_edge_map, torsor_group, EdgeImage};
pub use extension::{extension_factor_set, extension_factor_set_with_section, FactorSet, Gamma};
pub use formal::{epsilon_cocycle, verify_coboundary_identity, verify_coboundary_identity_power, EpsilonTable, FormalUnit};
pub use group::{Cochain, FiniteAbelianGroup};

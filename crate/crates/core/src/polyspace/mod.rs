//! Spaces of polynomials in z and z̄ under the Bianchi group action.

mod bipoly;
mod group;
pub mod linalg;
mod wkk;

pub use bipoly::{act_poly, one_var_matrix, BiPoly};
pub use group::{act_word, relation_check, Gen, GroupWord, Letter, Presentation};
pub use wkk::{
    conjecture, dim_row, eigenspace_basis, eps_matrix, membership, operator_matrix, reference_table, wkk, wkk_with,
    DimRow, Eigen, KernelMethod, SubspaceReport,
};

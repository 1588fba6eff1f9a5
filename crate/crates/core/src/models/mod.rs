//! Model hypersurfaces with large stability groups, the group S and its
//! scaled action, and classification by stabilizer dimension.

mod classify;
mod s_group;
mod scaled;
mod surfaces;

pub use classify::{classify, forbidden_band, Case, Classification};
pub use s_group::{
    central_form, central_lie_basis, is_in_s, s_decompose, s_dimension, s_named_subgroup, s_to_matrix, SElement,
    SElementJson, Subgroup,
};
pub use scaled::{verify_scaled_automorphism, ScaledSAuto, ScaledSAutoJson, SymbolicScale};
pub use surfaces::{
    model_corollary2, model_theorem1, model_theorem2, model_umbilic, CoeffJson, Family, FamilyName, ModelDescriptor,
    ModelSurface,
};

//! Automorphisms fixing the origin: parameter extraction, quadric
//! automorphisms, linear invariance, the stabilizer Lie algebra, the weight
//! identity and reparametrization.

mod jet;
mod linear;
mod reparam;
mod verify;
mod weight;

pub use jet::{extract_params, quadric_automorphism, AutoParams, AutoParamsJson, JetMap, JetMapJson};
pub use linear::{is_infinitesimal_symmetry, is_linear_automorphism, stabilizer_algebra, InfSym, Stabilizer};
pub use reparam::reparametrize;
pub use verify::{automorphism_residual, verify_automorphism};
pub use weight::{moser_weight_identity, t_operator};

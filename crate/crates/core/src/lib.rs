//! Exact computer algebra for Levi non-degenerate real hypersurfaces
//! `v = ⟨z, z⟩ + F(z, conj z, u)` in normal form.

pub mod autgroup;
pub mod error;
pub mod forms;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod models;
pub mod normal_form;
pub mod number;
pub mod poly;

pub use error::{Error, Result};
pub use forms::{FormKind, HermitianForm, LieElement};
pub use matrix::Mat;
pub use normal_form::{check_normal_form, Hypersurface, NormalFormReport, TraceCondition};
pub use number::{Cx, Rational};
pub use poly::{HoloPoly, Poly, RealPoly};

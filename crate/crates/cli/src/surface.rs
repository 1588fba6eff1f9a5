use crmoser::json::{mat_from_json, mat_to_json, MatJson};
use crmoser::poly::{PolyJson, TermJson};
use crmoser::{FormKind, HermitianForm, Hypersurface, Poly, RealPoly};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::parser::{parse_surface, to_expression};

/// JSON surface file: `{"n", "m", "kind"?, "matrix"?, "F" | "terms", "maxWeight"?}`.
///
/// `kind` defaults to `diagonal` for `m = 0` and `antidiagonal` otherwise;
/// `explicit` needs `matrix`. `F` is an expression in the surface language,
/// `terms` the polynomial term list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub n: usize,
    #[serde(default)]
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<FormKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatJson>,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermJson>>,
    #[serde(rename = "maxWeight", default, skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<u32>,
}

pub fn default_kind(m: usize) -> FormKind {
    if m == 0 {
        FormKind::Diagonal
    } else {
        FormKind::Antidiagonal
    }
}

impl SurfaceSpec {
    pub fn form(&self) -> Result<HermitianForm, CliError> {
        let kind = self.kind.unwrap_or_else(|| default_kind(self.m));
        let hf = match (kind, &self.matrix) {
            (FormKind::Explicit, Some(mj)) => HermitianForm::explicit(mat_from_json(mj)?, self.m)?,
            (FormKind::Explicit, None) => return Err(CliError::Parse("kind \"explicit\" needs \"matrix\"".into())),
            (_, Some(_)) => return Err(CliError::Parse("\"matrix\" is only allowed with kind \"explicit\"".into())),
            (k, None) => HermitianForm::standard(self.n, self.m, k)?,
        };
        if hf.n() != self.n {
            return Err(CliError::Parse(format!("matrix is {0}x{0} but n = {1}", hf.n(), self.n)));
        }
        Ok(hf)
    }

    /// Builds the surface; `max_weight` overrides the file's `maxWeight`.
    pub fn build(&self, max_weight: Option<u32>) -> Result<Hypersurface, CliError> {
        let hf = self.form()?;
        let max_weight = max_weight.or(self.max_weight);
        match (&self.f, &self.terms) {
            (Some(_), Some(_)) => Err(CliError::Parse("give either \"F\" or \"terms\", not both".into())),
            (None, None) => Err(CliError::Parse("missing \"F\" (use \"0\" for the quadric)".into())),
            (Some(text), None) => parse_surface(text, &hf, max_weight),
            (None, Some(terms)) => {
                let p = Poly::try_from(&PolyJson { n: self.n, terms: terms.clone() })?;
                Ok(Hypersurface::new(hf, RealPoly::new(p)?, max_weight)?)
            }
        }
    }

    /// Expression form of a surface; `build` reproduces it exactly.
    pub fn from_surface(h: &Hypersurface) -> Self {
        let hf = h.form();
        SurfaceSpec {
            n: hf.n(),
            m: hf.m(),
            kind: Some(hf.kind()),
            matrix: (hf.kind() == FormKind::Explicit).then(|| mat_to_json(hf.matrix())),
            f: Some(to_expression(h.f().as_poly())),
            terms: None,
            max_weight: Some(h.max_weight()),
        }
    }
}

pub fn read_surface(text: &str, max_weight: Option<u32>) -> Result<Hypersurface, CliError> {
    let spec: SurfaceSpec = serde_json::from_str(text)?;
    spec.build(max_weight)
}

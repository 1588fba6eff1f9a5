use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{FormKind, HermitianForm};
use crate::normal_form::{check_normal_form, Hypersurface};
use crate::number::{parse_rational, rat, Rational};
use crate::poly::{Poly, RealPoly};

/// Which construction produced a model, with its defining coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `Σ C_{k,r} u^r ⟨z,z⟩^k`, keyed by `(k, r)`.
    Umbilic { terms: BTreeMap<(u32, u32), Rational> },
    /// `Σ C_{p,q,r} u^r |z₁|^{2p} ⟨z,z⟩^q`, keyed by `(p, q, r)`.
    Theorem1 { terms: BTreeMap<(u32, u32, u32), Rational> },
    /// `Σ C_{r,p,q} u^r |z_n|^{2p} ⟨z,z⟩^q` with `(r+q−1)/p = s`, keyed by `(r, p, q)`.
    Theorem2 { s: Rational, terms: BTreeMap<(u32, u32, u32), Rational> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSurface {
    pub surface: Hypersurface,
    pub family: Family,
}

fn abs_pow(n: usize, j: usize, p: u32) -> RealPoly {
    let sq = Poly::z(n, j).mul(&Poly::zbar(n, j));
    RealPoly::new(sq.pow_trunc(p, u32::MAX)).expect("|z_j|^2p is real")
}

fn finish(hf: HermitianForm, f: RealPoly, family: Family) -> Result<ModelSurface> {
    if f.is_zero() {
        return Err(Error::InvalidParameters("all coefficients vanish".into()));
    }
    let surface = Hypersurface::new(hf, f, None)?;
    if !check_normal_form(&surface).passed() {
        return Err(Error::NotNormalForm);
    }
    Ok(ModelSurface { surface, family })
}

/// `v = ⟨z,z⟩ + Σ C_{k,r} u^r ⟨z,z⟩^k`, `k ≥ 4`.
pub fn model_umbilic(n: usize, m: usize, kind: FormKind, coeffs: &BTreeMap<(u32, u32), Rational>) -> Result<ModelSurface> {
    let hf = HermitianForm::standard(n, m, kind)?;
    if let Some((k, _)) = coeffs.keys().find(|(k, _)| *k < 4) {
        return Err(Error::InvalidParameters(format!("power of <z,z> must be at least 4, got {k}")));
    }
    let q = hf.inner_poly();
    let mut f = RealPoly::zero(n);
    for (&(k, r), c) in coeffs {
        f = f.add(&q.pow(k).mul_u_pow(r).scale_real(c));
    }
    let terms = coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
    finish(hf, f, Family::Umbilic { terms })
}

/// `v = Σ|z_α|² + Σ C_{p,q,r} u^r |z₁|^{2p} ⟨z,z⟩^q`, `p ≥ 1`, `p + q ≥ 4`.
pub fn model_theorem1(n: usize, coeffs: &BTreeMap<(u32, u32, u32), Rational>) -> Result<ModelSurface> {
    let hf = HermitianForm::standard(n, 0, FormKind::Diagonal)?;
    for &(p, q, _) in coeffs.keys() {
        if p < 1 {
            return Err(Error::InvalidParameters("every term needs p >= 1".into()));
        }
        if p + q < 4 {
            return Err(Error::InvalidParameters(format!("need p + q >= 4, got p = {p}, q = {q}")));
        }
    }
    let form = hf.inner_poly();
    let mut f = RealPoly::zero(n);
    for (&(p, q, r), c) in coeffs {
        f = f.add(&abs_pow(n, 0, p).mul(&form.pow(q)).mul_u_pow(r).scale_real(c));
    }
    let terms = coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
    finish(hf, f, Family::Theorem1 { terms })
}

/// `v = 2Re Σ z_α z̄_{n−α+1} + Σ|z_α|² + Σ C_{r,p,q} u^r |z_n|^{2p} ⟨z,z⟩^q`
/// over the antidiagonal form, every term with `p ≥ 1` and `(r+q−1)/p = s`.
pub fn model_theorem2(
    n: usize,
    m: usize,
    s: &Rational,
    coeffs: &BTreeMap<(u32, u32, u32), Rational>,
) -> Result<ModelSurface> {
    if m < 1 {
        return Err(Error::InvalidParameters("needs m >= 1".into()));
    }
    if *s < rat(-1, 2) {
        return Err(Error::InvalidParameters(format!("s must be at least -1/2, got {s}")));
    }
    let hf = HermitianForm::standard(n, m, FormKind::Antidiagonal)?;
    for &(r, p, q) in coeffs.keys() {
        if p < 1 {
            return Err(Error::InvalidParameters("every term needs p >= 1".into()));
        }
        let ratio = Rational::new((i64::from(r) + i64::from(q) - 1).into(), i64::from(p).into());
        if ratio != *s {
            return Err(Error::InvalidParameters(format!(
                "exponent relation (r+q-1)/p = {ratio} differs from s = {s} at (r, p, q) = ({r}, {p}, {q})"
            )));
        }
    }
    let form = hf.inner_poly();
    let mut f = RealPoly::zero(n);
    for (&(r, p, q), c) in coeffs {
        f = f.add(&abs_pow(n, n - 1, p).mul(&form.pow(q)).mul_u_pow(r).scale_real(c));
    }
    let terms = coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
    finish(hf, f, Family::Theorem2 { s: s.clone(), terms })
}

/// `v = ⟨z,z⟩ ± |z_n|⁴` over the antidiagonal form.
pub fn model_corollary2(n: usize, m: usize, sign: i8) -> Result<ModelSurface> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParameters(format!("sign must be +1 or -1, got {sign}")));
    }
    let coeffs = BTreeMap::from([((0, 2, 0), Rational::from_integer(sign.into()))]);
    model_theorem2(n, m, &rat(-1, 2), &coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Umbilic,
    Theorem1,
    Theorem2,
    Corollary2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    #[serde(default)]
    pub r: u32,
    #[serde(default)]
    pub p: u32,
    #[serde(default)]
    pub q: u32,
    /// Power of `⟨z,z⟩` for the umbilic family; `q` is accepted in its place.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub c: String,
}

/// JSON description of a model surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub family: FamilyName,
    pub n: usize,
    #[serde(default)]
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<FormKind>,
    #[serde(default)]
    pub coeffs: Vec<CoeffJson>,
}

impl ModelDescriptor {
    pub fn build(&self) -> Result<ModelSurface> {
        let coeff = |c: &CoeffJson| parse_rational(&c.c);
        match self.family {
            FamilyName::Umbilic => {
                let mut map = BTreeMap::new();
                for c in &self.coeffs {
                    *map.entry((c.k.unwrap_or(c.q), c.r)).or_insert_with(Rational::zero) += coeff(c)?;
                }
                let kind = self.kind.unwrap_or(if self.m == 0 { FormKind::Diagonal } else { FormKind::Antidiagonal });
                model_umbilic(self.n, self.m, kind, &map)
            }
            FamilyName::Theorem1 => {
                if self.m != 0 {
                    return Err(Error::InvalidParameters("theorem1 models are positive definite (m = 0)".into()));
                }
                let mut map = BTreeMap::new();
                for c in &self.coeffs {
                    *map.entry((c.p, c.q, c.r)).or_insert_with(Rational::zero) += coeff(c)?;
                }
                model_theorem1(self.n, &map)
            }
            FamilyName::Theorem2 => {
                let s = self.s.as_deref().ok_or_else(|| Error::InvalidParameters("theorem2 needs s".into()))?;
                let mut map = BTreeMap::new();
                for c in &self.coeffs {
                    *map.entry((c.r, c.p, c.q)).or_insert_with(Rational::zero) += coeff(c)?;
                }
                model_theorem2(self.n, self.m, &parse_rational(s)?, &map)
            }
            FamilyName::Corollary2 => model_corollary2(self.n, self.m, self.sign.unwrap_or(1)),
        }
    }
}

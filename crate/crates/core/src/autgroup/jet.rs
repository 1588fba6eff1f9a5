use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{is_pseudounitary, HermitianForm};
use crate::json::{mat_from_json, mat_to_json, vec_from_json, vec_to_json, CxJson, MatJson};
use crate::matrix::Mat;
use crate::number::{parse_rational, rational_sqrt, Cx, Rational};
use crate::poly::{Exponents, HoloPoly, HoloPolyJson};

/// `(U, a, λ, σ, r)` determining an automorphism fixing the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoParams {
    pub u: Mat,
    pub a: Vec<Cx>,
    pub lambda: Rational,
    pub sigma: i8,
    pub r: Rational,
}

impl AutoParams {
    pub fn identity(n: usize) -> Self {
        AutoParams { u: Mat::identity(n), a: vec![Cx::zero(); n], lambda: Rational::one(), sigma: 1, r: Rational::zero() }
    }

    pub fn validate(&self, hf: &HermitianForm) -> Result<()> {
        let n = hf.n();
        if self.a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.a.len() });
        }
        if !self.lambda.is_positive() {
            return Err(Error::InvalidParameters(format!("lambda must be positive, got {}", self.lambda)));
        }
        if self.sigma != 1 && self.sigma != -1 {
            return Err(Error::InvalidParameters(format!("sigma must be +1 or -1, got {}", self.sigma)));
        }
        if is_pseudounitary(&self.u, hf)? != Some(self.sigma) {
            return Err(Error::NotPseudounitary { expected: self.sigma });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutoParamsJson {
    #[serde(rename = "U")]
    pub u: MatJson,
    pub a: Vec<CxJson>,
    pub lambda: String,
    pub sigma: i8,
    pub r: String,
}

impl From<&AutoParams> for AutoParamsJson {
    fn from(p: &AutoParams) -> Self {
        AutoParamsJson {
            u: mat_to_json(&p.u),
            a: vec_to_json(&p.a),
            lambda: p.lambda.to_string(),
            sigma: p.sigma,
            r: p.r.to_string(),
        }
    }
}

impl TryFrom<&AutoParamsJson> for AutoParams {
    type Error = Error;
    fn try_from(j: &AutoParamsJson) -> Result<Self> {
        Ok(AutoParams {
            u: mat_from_json(&j.u)?,
            a: vec_from_json(&j.a)?,
            lambda: parse_rational(&j.lambda)?,
            sigma: j.sigma,
            r: parse_rational(&j.r)?,
        })
    }
}

/// Map germ `z ↦ f(z, w)`, `w ↦ g(z, w)` known up to weight `D`
/// (z of weight 1, w of weight 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetMap {
    d: u32,
    f: Vec<HoloPoly>,
    g: HoloPoly,
}

impl JetMap {
    /// Terms of weight above `d` are discarded.
    pub fn new(d: u32, f: Vec<HoloPoly>, g: HoloPoly) -> Result<Self> {
        let n = f.len();
        for p in f.iter().chain(std::iter::once(&g)) {
            if p.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.n() });
            }
            if !p.coeff(&crate::poly::HoloMonomial::one(n)).is_zero() {
                return Err(Error::InvalidParameters("map does not fix the origin".into()));
            }
        }
        let f = f.iter().map(|p| p.truncate(d)).collect();
        Ok(JetMap { d, g: g.truncate(d), f })
    }

    pub fn identity(n: usize, d: u32) -> Self {
        JetMap::linear(&Mat::identity(n), &Rational::one(), 1, d)
    }

    /// `z ↦ λUz`, `w ↦ σλ²w`.
    pub fn linear(u: &Mat, lambda: &Rational, sigma: i8, d: u32) -> Self {
        let n = u.rows();
        let lu = u.scale_real(lambda);
        let f = (0..n).map(|j| HoloPoly::linear(lu.row(j)).truncate(d)).collect();
        let g = HoloPoly::w(n).scale_real(&(lambda * lambda * Rational::from_integer(sigma.into()))).truncate(d);
        JetMap { d, f, g }
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn f(&self) -> &[HoloPoly] {
        &self.f
    }

    pub fn g(&self) -> &HoloPoly {
        &self.g
    }

    /// Componentwise difference; the truncation is the smaller of the two.
    pub fn sub(&self, o: &JetMap) -> JetMap {
        let d = self.d.min(o.d);
        JetMap {
            d,
            f: self.f.iter().zip(&o.f).map(|(a, b)| a.sub(b).truncate(d)).collect(),
            g: self.g.sub(&o.g).truncate(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetMapJson {
    #[serde(rename = "D")]
    pub d: u32,
    pub f: Vec<HoloPolyJson>,
    pub g: HoloPolyJson,
}

impl From<&JetMap> for JetMapJson {
    fn from(j: &JetMap) -> Self {
        JetMapJson { d: j.d, f: j.f.iter().map(HoloPolyJson::from).collect(), g: HoloPolyJson::from(&j.g) }
    }
}

impl TryFrom<&JetMapJson> for JetMap {
    type Error = Error;
    fn try_from(j: &JetMapJson) -> Result<Self> {
        let f = j.f.iter().map(HoloPoly::try_from).collect::<Result<Vec<_>>>()?;
        JetMap::new(j.d, f, HoloPoly::try_from(&j.g)?)
    }
}

/// Reads `(U, a, λ, σ, r)` off the first and second derivatives at the
/// origin. Needs `D ≥ 4` so that the `w²` coefficient of g is present.
pub fn extract_params(j: &JetMap, hf: &HermitianForm) -> Result<AutoParams> {
    let n = hf.n();
    if j.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: j.n() });
    }
    if j.d() < 4 {
        return Err(Error::Truncation { requested: 4, capacity: j.d() });
    }
    if (0..n).any(|k| !j.g().dz0(k).is_zero()) {
        return Err(Error::NotExtractable("dg/dz(0) != 0".into()));
    }
    let gw = j.g().w_coeff(1);
    if !gw.is_real() || gw.is_zero() {
        return Err(Error::NonRealScale(gw.to_string()));
    }
    let sigma: i8 = if gw.re.is_positive() { 1 } else { -1 };
    let lambda = rational_sqrt(&gw.re.abs()).ok_or_else(|| Error::IrrationalScale(gw.re.abs().to_string()))?;
    let inv_lambda = lambda.recip();
    let rows: Vec<Vec<Cx>> = (0..n).map(|a| (0..n).map(|b| j.f()[a].dz0(b).scale(&inv_lambda)).collect()).collect();
    let u = Mat::from_rows(rows)?;
    if is_pseudounitary(&u, hf)? != Some(sigma) {
        return Err(Error::NotPseudounitary { expected: sigma });
    }
    let u_inv = u.inverse().ok_or(Error::Singular)?;
    let fw: Vec<Cx> = j.f().iter().map(|p| p.w_coeff(1).scale(&inv_lambda)).collect();
    let a = u_inv.mul_vec(&fw);
    // ∂²g/∂w²(0) = 2·coef(w²) and Re of it equals 2σλ²r
    let sl2 = &lambda * &lambda * Rational::from_integer(sigma.into());
    let r = j.g().w_coeff(2).re / sl2;
    Ok(AutoParams { u, a, lambda, sigma, r })
}

/// Expansion of the fractional-linear automorphism of `v = ⟨z,z⟩`:
/// `z ↦ λU(z + aw)/δ`, `w ↦ σλ²w/δ` with
/// `δ = 1 − 2i⟨z,a⟩ − (r + i⟨a,a⟩)w`, truncated at weight `d`.
pub fn quadric_automorphism(p: &AutoParams, hf: &HermitianForm, d: u32) -> Result<JetMap> {
    p.validate(hf)?;
    let n = hf.n();
    let za = hf.pairing_with_z(&p.a);
    let aa = hf.pairing(&p.a, &p.a);
    let w = HoloPoly::w(n);
    // 1 − δ
    let e = za.scale(&Cx::new(Rational::zero(), Rational::from_integer(2.into())))
        .add(&w.scale(&(Cx::real(p.r.clone()) + aa.mul_i())));
    let one = HoloPoly::constant(n, Cx::one());
    let mut inv_delta = one.clone();
    let mut ek = one;
    for _ in 1..=d {
        ek = ek.mul_trunc(&e, d);
        if ek.is_zero() {
            break;
        }
        inv_delta = inv_delta.add(&ek);
    }
    let lu = p.u.scale_real(&p.lambda);
    let shifted: Vec<HoloPoly> = (0..n).map(|k| HoloPoly::z(n, k).add(&w.scale(&p.a[k]))).collect();
    let f = (0..n)
        .map(|j| {
            let num = (0..n).fold(HoloPoly::zero(n), |acc, k| acc.add(&shifted[k].scale(&lu[(j, k)])));
            num.mul_trunc(&inv_delta, d)
        })
        .collect();
    let sl2 = &p.lambda * &p.lambda * Rational::from_integer(p.sigma.into());
    let g = w.scale_real(&sl2).mul_trunc(&inv_delta, d);
    debug_assert!(inv_delta.terms().all(|(m, _)| m.weight() <= d));
    JetMap::new(d, f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormKind;
    use crate::number::{int, rat};

    #[test]
    fn pure_dilation() {
        let hf = HermitianForm::standard(2, 0, FormKind::Diagonal).unwrap();
        let j = JetMap::linear(&Mat::identity(2), &int(2), 1, 6);
        let p = extract_params(&j, &hf).unwrap();
        assert_eq!(p, AutoParams { lambda: int(2), ..AutoParams::identity(2) });
    }

    #[test]
    fn identity_quadric_map() {
        let hf = HermitianForm::standard(2, 1, FormKind::Antidiagonal).unwrap();
        let j = quadric_automorphism(&AutoParams::identity(2), &hf, 6).unwrap();
        assert_eq!(j, JetMap::identity(2, 6));
    }

    #[test]
    fn pure_r_is_the_fractional_map() {
        // r = −q gives z ↦ z/(1+qw), w ↦ w/(1+qw)
        let hf = HermitianForm::standard(1, 0, FormKind::Diagonal).unwrap();
        let p = AutoParams { r: int(-3), ..AutoParams::identity(1) };
        let j = quadric_automorphism(&p, &hf, 6).unwrap();
        let expect_g: HoloPoly = HoloPoly::w(1)
            .add(&HoloPoly::w(1).pow_trunc(2, 6).scale_real(&int(-3)))
            .add(&HoloPoly::w(1).pow_trunc(3, 6).scale_real(&int(9)));
        assert_eq!(j.g(), &expect_g);
        assert_eq!(extract_params(&j, &hf).unwrap(), p);
    }

    #[test]
    fn round_trip_with_shift() {
        let hf = HermitianForm::standard(2, 1, FormKind::Antidiagonal).unwrap();
        let p = AutoParams {
            u: Mat::diag(&[Cx::from_int(2), Cx::real(rat(1, 2))]),
            a: vec![Cx::new(rat(1, 3), int(1)), Cx::from_int(-2)],
            lambda: rat(3, 2),
            sigma: 1,
            r: rat(-5, 7),
        };
        let j = quadric_automorphism(&p, &hf, 5).unwrap();
        assert_eq!(extract_params(&j, &hf).unwrap(), p);
    }

    #[test]
    fn sign_reversal_needs_a_sign_reversing_u() {
        let hf = HermitianForm::standard(2, 1, FormKind::Diagonal).unwrap();
        let j = JetMap::linear(&Mat::identity(2), &int(1), -1, 4);
        assert_eq!(extract_params(&j, &hf), Err(Error::NotPseudounitary { expected: -1 }));
        let swap = Mat::from_ints(&[&[0, 1], &[1, 0]]);
        let p = extract_params(&JetMap::linear(&swap, &int(1), -1, 4), &hf).unwrap();
        assert_eq!(p.sigma, -1);
    }

    #[test]
    fn extraction_errors() {
        let hf = HermitianForm::standard(1, 0, FormKind::Diagonal).unwrap();
        let j = JetMap::linear(&Mat::identity(1), &int(1), 1, 3);
        assert!(matches!(extract_params(&j, &hf), Err(Error::Truncation { .. })));
        let g = HoloPoly::w(1).scale_real(&int(2));
        let j = JetMap::new(4, vec![HoloPoly::z(1, 0)], g).unwrap();
        assert!(matches!(extract_params(&j, &hf), Err(Error::IrrationalScale(_))));
        let g = HoloPoly::w(1).scale(&Cx::i());
        let j = JetMap::new(4, vec![HoloPoly::z(1, 0)], g).unwrap();
        assert!(matches!(extract_params(&j, &hf), Err(Error::NonRealScale(_))));
    }

    #[test]
    fn json_round_trip() {
        let hf = HermitianForm::standard(2, 0, FormKind::Diagonal).unwrap();
        let p = AutoParams { a: vec![Cx::new(rat(1, 2), int(0)), Cx::i()], ..AutoParams::identity(2) };
        let j = quadric_automorphism(&p, &hf, 4).unwrap();
        let back = JetMap::try_from(&JetMapJson::from(&j)).unwrap();
        assert_eq!(back, j);
        let pj = AutoParamsJson::from(&p);
        assert_eq!(AutoParams::try_from(&pj).unwrap(), p);
    }
}

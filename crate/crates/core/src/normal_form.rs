//! The trace operator, the three normal-form trace conditions and umbilicity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::HermitianForm;
use crate::number::Rational;
use crate::poly::{Exponents, Poly, PolyJson, RealPoly, Var};

/// `v = ⟨z, z⟩ + F(z, conj z, u)` with `F` free of monomials of degree < 2 in
/// either z or conj(z), truncated at `max_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    form: HermitianForm,
    f: RealPoly,
    max_weight: u32,
}

impl Hypersurface {
    /// `max_weight` defaults to the largest weight present in `f`.
    pub fn new(form: HermitianForm, f: RealPoly, max_weight: Option<u32>) -> Result<Self> {
        if f.n() != form.n() {
            return Err(Error::DimensionMismatch { expected: form.n(), found: f.n() });
        }
        if let Some((m, _)) = f.terms().find(|(m, _)| m.z_degree() < 2 || m.zbar_degree() < 2) {
            return Err(Error::Harmonic(m.to_string()));
        }
        let max_weight = max_weight.unwrap_or_else(|| f.max_weight().unwrap_or(0));
        if let Some((m, _)) = f.terms().find(|(m, _)| m.weight() > max_weight) {
            return Err(Error::WeightExceeded { monomial: m.to_string(), weight: m.weight(), max: max_weight });
        }
        Ok(Hypersurface { form, f, max_weight })
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    pub fn m(&self) -> usize {
        self.form.m()
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    pub fn f(&self) -> &RealPoly {
        &self.f
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn is_spherical(&self) -> bool {
        self.f.is_zero()
    }

    /// Lowest weight present in F (γ); `None` for the quadric.
    pub fn gamma(&self) -> Option<u32> {
        self.f.min_weight()
    }
}

/// `Σ ĥ_{αβ} ∂²P / ∂z_α ∂conj(z_β)`.
pub fn trace_op(hf: &HermitianForm, p: &Poly) -> Result<Poly> {
    let n = hf.n();
    if p.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.n() });
    }
    let hhat = hf.trace_matrix();
    let mut out = Poly::zero(n);
    for b in 0..n {
        let db = p.partial(Var::Zbar(b));
        if db.is_zero() {
            continue;
        }
        for a in 0..n {
            let h = &hhat[(a, b)];
            if h.is_zero() {
                continue;
            }
            out = out.add(&db.partial(Var::Z(a)).scale(h));
        }
    }
    Ok(out)
}

/// `tr^k P`
pub fn trace_pow(hf: &HermitianForm, p: &Poly, k: u32) -> Result<Poly> {
    let mut acc = p.clone();
    for _ in 0..k {
        acc = trace_op(hf, &acc)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TraceCondition {
    #[serde(rename = "trF22")]
    TrF22,
    #[serde(rename = "tr2F23")]
    Tr2F23,
    #[serde(rename = "tr3F33")]
    Tr3F33,
}

impl TraceCondition {
    pub const ALL: [TraceCondition; 3] = [TraceCondition::TrF22, TraceCondition::Tr2F23, TraceCondition::Tr3F33];

    /// `(k, l, power of tr)`
    fn spec(self) -> (u32, u32, u32) {
        match self {
            TraceCondition::TrF22 => (2, 2, 1),
            TraceCondition::Tr2F23 => (2, 3, 2),
            TraceCondition::Tr3F33 => (3, 3, 3),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: TraceCondition,
    pub residual: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalFormReport {
    pub violations: Vec<Violation>,
}

impl NormalFormReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn residual(&self, c: TraceCondition) -> Option<&Poly> {
        self.violations.iter().find(|v| v.condition == c).map(|v| &v.residual)
    }
}

#[derive(Serialize)]
struct ViolationJson {
    condition: TraceCondition,
    residual: PolyJson,
}

impl Serialize for NormalFormReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let vs: Vec<ViolationJson> = self
            .violations
            .iter()
            .map(|v| ViolationJson { condition: v.condition, residual: PolyJson::from(&v.residual) })
            .collect();
        let mut st = s.serialize_struct("NormalFormReport", 2)?;
        st.serialize_field("passed", &self.passed())?;
        st.serialize_field("violations", &vs)?;
        st.end()
    }
}

/// Evaluates `tr F₂₂̄`, `tr² F₂₃̄` and `tr³ F₃₃̄` exactly, each bidegree
/// component taken with its full u-dependence.
pub fn check_normal_form(surface: &Hypersurface) -> NormalFormReport {
    let hf = surface.form();
    let violations = TraceCondition::ALL
        .iter()
        .filter_map(|&c| {
            let (k, l, power) = c.spec();
            let comp = surface.f().bidegree_component(k, l);
            let residual = trace_pow(hf, &comp, power).expect("dimensions agree by construction");
            (!residual.is_zero()).then_some(Violation { condition: c, residual })
        })
        .collect();
    NormalFormReport { violations }
}

/// Whether `F₂₂̄(z, conj z, 0)` vanishes. Requires a normal-form surface.
pub fn is_umbilic_origin(surface: &Hypersurface) -> Result<bool> {
    if !check_normal_form(surface).passed() {
        return Err(Error::NotNormalForm);
    }
    Ok(!surface.f().terms().any(|(m, _)| m.z_degree() == 2 && m.zbar_degree() == 2 && m.u() == 0))
}

/// Coefficients `c_{k,r}` with `F = Σ c_{k,r} u^r ⟨z,z⟩^k`, or `None` when F
/// is not a polynomial in `⟨z,z⟩` and `u`.
///
/// Each `(k, r)` slice of F must be a real multiple of `u^r ⟨z,z⟩^k`; the
/// multiple is read off a single monomial of `⟨z,z⟩^k` and then checked
/// against the whole slice.
pub fn form_u_expansion(surface: &Hypersurface) -> Option<BTreeMap<(u32, u32), Rational>> {
    let f = surface.f();
    let n = surface.n();
    let mut slices: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    for (m, c) in f.terms() {
        if m.z_degree() != m.zbar_degree() {
            return None;
        }
        slices.entry((m.z_degree(), m.u())).or_insert_with(|| Poly::zero(n)).add_term(m.clone(), c);
    }
    let q = surface.form().inner_poly();
    let mut powers: BTreeMap<u32, Poly> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for ((k, r), slice) in slices {
        let qk = powers.entry(k).or_insert_with(|| q.pow(k).into_poly()).mul_u_pow(r);
        let (lead, lead_c) = qk.terms().next()?;
        let ratio = &slice.coeff(lead) / lead_c;
        if !ratio.is_real() || slice != qk.scale(&ratio) {
            return None;
        }
        out.insert((k, r), ratio.re);
    }
    Some(out)
}

pub fn is_function_of_form_and_u(surface: &Hypersurface) -> bool {
    form_u_expansion(surface).is_some()
}

/// `C · u^r · ⟨z,z⟩^k`
pub fn form_power(hf: &HermitianForm, k: u32, r: u32, c: &Rational) -> RealPoly {
    hf.inner_poly().pow(k).mul_u_pow(r).scale_real(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormKind;
    use crate::number::int;

    fn abs_sq(n: usize, j: usize) -> Poly {
        Poly::z(n, j).mul(&Poly::zbar(n, j))
    }

    fn surface(n: usize, m: usize, kind: FormKind, f: Poly) -> Hypersurface {
        let hf = HermitianForm::standard(n, m, kind).unwrap();
        Hypersurface::new(hf, RealPoly::new(f).unwrap(), None).unwrap()
    }

    #[test]
    fn trace_of_product_of_squares() {
        let hf = HermitianForm::standard(2, 0, FormKind::Diagonal).unwrap();
        let p = abs_sq(2, 0).mul(&abs_sq(2, 1));
        assert_eq!(trace_op(&hf, &p).unwrap(), abs_sq(2, 0).add(&abs_sq(2, 1)));
    }

    #[test]
    fn trace_of_form_square_diagonal() {
        for n in [2usize, 3] {
            let hf = HermitianForm::standard(n, 0, FormKind::Diagonal).unwrap();
            let q = hf.inner_poly();
            let got = trace_op(&hf, &q.pow(2)).unwrap();
            assert_eq!(got, q.scale_real(&int(2 * (n as i64 + 1))).into_poly());
        }
    }

    #[test]
    fn trace_kills_zn_power_antidiagonal() {
        let hf = HermitianForm::standard(2, 1, FormKind::Antidiagonal).unwrap();
        let p = abs_sq(2, 1).mul(&abs_sq(2, 1));
        assert!(trace_op(&hf, &p).unwrap().is_zero());
        assert!(trace_op(&hf, &Poly::z(3, 0)).is_err());
    }

    #[test]
    fn corollary_model_is_normal_and_not_umbilic() {
        let m = surface(2, 1, FormKind::Antidiagonal, abs_sq(2, 1).mul(&abs_sq(2, 1)));
        assert!(check_normal_form(&m).passed());
        assert!(!is_umbilic_origin(&m).unwrap());
        assert!(!is_function_of_form_and_u(&m));
        let mu = surface(2, 1, FormKind::Antidiagonal, abs_sq(2, 1).mul(&abs_sq(2, 1)).mul(&Poly::u(2)));
        assert!(is_umbilic_origin(&mu).unwrap());
    }

    #[test]
    fn form_square_fails_first_condition() {
        for n in [2usize, 3] {
            let hf = HermitianForm::standard(n, 0, FormKind::Diagonal).unwrap();
            let q = hf.inner_poly();
            let m = Hypersurface::new(hf, q.pow(2), None).unwrap();
            let rep = check_normal_form(&m);
            assert!(!rep.passed());
            assert_eq!(rep.violations.len(), 1);
            assert_eq!(rep.residual(TraceCondition::TrF22).unwrap(), &*q.scale_real(&int(2 * (n as i64 + 1))));
            assert_eq!(is_umbilic_origin(&m), Err(Error::NotNormalForm));
        }
    }

    #[test]
    fn form_fourth_power() {
        let hf = HermitianForm::standard(2, 0, FormKind::Diagonal).unwrap();
        let q = hf.inner_poly();
        let f = q.pow(4).add(&q.pow(5).mul_u_pow(2).scale_real(&crate::number::rat(1, 2)));
        let m = Hypersurface::new(hf, f, None).unwrap();
        assert!(check_normal_form(&m).passed());
        assert!(is_umbilic_origin(&m).unwrap());
        let exp = form_u_expansion(&m).unwrap();
        assert_eq!(exp.len(), 2);
        assert_eq!(exp[&(5, 2)], crate::number::rat(1, 2));
    }

    #[test]
    fn spherical_is_trivially_a_function_of_the_form() {
        let m = surface(2, 0, FormKind::Diagonal, Poly::zero(2));
        assert!(is_function_of_form_and_u(&m));
        assert!(m.is_spherical());
    }

    #[test]
    fn hypersurface_invariants() {
        let hf = HermitianForm::standard(2, 0, FormKind::Diagonal).unwrap();
        let harmonic = RealPoly::new(abs_sq(2, 0).mul(&Poly::z(2, 1)).add(&abs_sq(2, 0).mul(&Poly::zbar(2, 1)))).unwrap();
        assert!(matches!(Hypersurface::new(hf.clone(), harmonic, None), Err(Error::Harmonic(_))));
        let q4 = hf.inner_poly().pow(4);
        assert!(matches!(Hypersurface::new(hf, q4, Some(6)), Err(Error::WeightExceeded { .. })));
    }
}

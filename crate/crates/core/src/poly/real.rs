use std::collections::BTreeMap;
use std::ops::Deref;

use super::Poly;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::number::Rational;

/// Polynomial whose coefficients satisfy `c(α, β, r) = conj c(β, α, r)`,
/// i.e. a real-valued function of `z`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RealPoly(Poly);

impl RealPoly {
    pub fn new(p: Poly) -> Result<Self> {
        if let Some(m) = p.reality_defect() {
            return Err(Error::Reality(m.to_string()));
        }
        Ok(RealPoly(p))
    }

    pub(crate) fn new_unchecked(p: Poly) -> Self {
        debug_assert!(p.is_real(), "RealPoly::new_unchecked on a non-real polynomial");
        RealPoly(p)
    }

    pub fn zero(n: usize) -> Self {
        RealPoly(Poly::zero(n))
    }

    /// `2 Re P = P + conj P`.
    pub fn twice_real_part(p: &Poly) -> Self {
        RealPoly(p.add(&p.conj()))
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn add(&self, o: &RealPoly) -> RealPoly {
        RealPoly(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &RealPoly) -> RealPoly {
        RealPoly(self.0.sub(&o.0))
    }

    pub fn mul(&self, o: &RealPoly) -> RealPoly {
        RealPoly(self.0.mul(&o.0))
    }

    pub fn neg(&self) -> RealPoly {
        RealPoly(self.0.neg())
    }

    pub fn scale_real(&self, k: &Rational) -> RealPoly {
        RealPoly(self.0.scale_real(k))
    }

    pub fn pow(&self, k: u32) -> RealPoly {
        if k == 0 {
            return RealPoly(Poly::constant(self.n(), crate::number::Cx::one()));
        }
        RealPoly(self.0.pow_trunc(k, u32::MAX))
    }

    pub fn mul_u_pow(&self, r: u32) -> RealPoly {
        RealPoly(self.0.mul_u_pow(r))
    }

    pub fn truncate(&self, max_weight: u32) -> RealPoly {
        RealPoly(self.0.truncate(max_weight))
    }

    pub fn weight_component(&self, w: u32) -> RealPoly {
        RealPoly(self.0.weight_component(w))
    }

    pub fn weight_decompose(&self) -> BTreeMap<u32, RealPoly> {
        self.0.weight_decompose().into_iter().map(|(w, p)| (w, RealPoly(p))).collect()
    }

    /// `P(Az, conj(A) conj(z), s·u)`; the substitution commutes with
    /// conjugation, so the result stays real.
    pub fn substitute_linear(&self, a: &Mat, u_scale: &Rational) -> Result<RealPoly> {
        Ok(RealPoly(self.0.substitute_linear(a, u_scale)?))
    }
}

impl Deref for RealPoly {
    type Target = Poly;
    fn deref(&self) -> &Poly {
        &self.0
    }
}

impl TryFrom<Poly> for RealPoly {
    type Error = Error;
    fn try_from(p: Poly) -> Result<Self> {
        RealPoly::new(p)
    }
}

impl From<RealPoly> for Poly {
    fn from(p: RealPoly) -> Poly {
        p.0
    }
}

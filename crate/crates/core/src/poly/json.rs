use serde::{Deserialize, Serialize};

use super::{HoloMonomial, HoloPoly, Monomial, Poly, RealPoly};
use crate::error::{Error, Result};
use crate::number::{parse_rational, Cx};

/// `{"n": int, "terms": [{"z", "zbar", "u", "re", "im"}]}` with terms in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub z: Vec<u32>,
    pub zbar: Vec<u32>,
    #[serde(default)]
    pub u: u32,
    pub re: String,
    #[serde(default = "zero")]
    pub im: String,
}

/// Holomorphic variant with a `w` exponent in place of `zbar`/`u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoloPolyJson {
    pub n: usize,
    pub terms: Vec<HoloTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoloTermJson {
    pub z: Vec<u32>,
    #[serde(default)]
    pub w: u32,
    pub re: String,
    #[serde(default = "zero")]
    pub im: String,
}

fn zero() -> String {
    "0".into()
}

fn check_len(n: usize, got: usize) -> Result<()> {
    if got != n {
        return Err(Error::DimensionMismatch { expected: n, found: got });
    }
    Ok(())
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson {
            n: p.n(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    z: m.z_exps(),
                    zbar: m.zbar_exps(),
                    u: m.u(),
                    re: c.re.to_string(),
                    im: c.im.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for Poly {
    type Error = Error;
    fn try_from(j: &PolyJson) -> Result<Poly> {
        let mut p = Poly::zero(j.n);
        for t in &j.terms {
            check_len(j.n, t.z.len())?;
            check_len(j.n, t.zbar.len())?;
            let c = Cx::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
            p.add_term(Monomial::new(&t.z, &t.zbar, t.u), &c);
        }
        Ok(p)
    }
}

impl From<&RealPoly> for PolyJson {
    fn from(p: &RealPoly) -> Self {
        PolyJson::from(p.as_poly())
    }
}

impl TryFrom<&PolyJson> for RealPoly {
    type Error = Error;
    fn try_from(j: &PolyJson) -> Result<RealPoly> {
        RealPoly::new(Poly::try_from(j)?)
    }
}

impl From<&HoloPoly> for HoloPolyJson {
    fn from(p: &HoloPoly) -> Self {
        HoloPolyJson {
            n: p.n(),
            terms: p
                .terms()
                .map(|(m, c)| HoloTermJson { z: m.z_exps(), w: m.w(), re: c.re.to_string(), im: c.im.to_string() })
                .collect(),
        }
    }
}

impl TryFrom<&HoloPolyJson> for HoloPoly {
    type Error = Error;
    fn try_from(j: &HoloPolyJson) -> Result<HoloPoly> {
        let mut p = HoloPoly::zero(j.n);
        for t in &j.terms {
            check_len(j.n, t.z.len())?;
            let c = Cx::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
            p.add_term(HoloMonomial::new(&t.z, t.w), &c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    #[test]
    fn canonical_json_order() {
        let n = 1;
        let p = Poly::u(n)
            .mul(&Poly::z(n, 0))
            .add(&Poly::zbar(n, 0).scale(&Cx::new(rat(1, 2), rat(-3, 4))));
        let j = PolyJson::from(&p);
        // uExp is the leading sort key
        assert_eq!(j.terms[0].u, 0);
        assert_eq!(j.terms[0].re, "1/2");
        assert_eq!(j.terms[0].im, "-3/4");
        assert_eq!(j.terms[1].u, 1);
        assert_eq!(Poly::try_from(&j).unwrap(), p);
    }

    #[test]
    fn length_mismatch_rejected() {
        let j = PolyJson {
            n: 2,
            terms: vec![TermJson { z: vec![1], zbar: vec![1, 0], u: 0, re: "1".into(), im: "0".into() }],
        };
        assert!(Poly::try_from(&j).is_err());
    }
}

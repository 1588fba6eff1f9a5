//! Wire formats shared by every report: rationals are reduced `"p/q"` strings,
//! Gaussian rationals are `{"re", "im"}` objects, matrices are arrays of rows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::number::{parse_rational, Cx, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxJson {
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0".into()
}

impl From<&Cx> for CxJson {
    fn from(c: &Cx) -> Self {
        CxJson { re: c.re.to_string(), im: c.im.to_string() }
    }
}

impl TryFrom<&CxJson> for Cx {
    type Error = Error;
    fn try_from(j: &CxJson) -> Result<Cx> {
        Ok(Cx::new(parse_rational(&j.re)?, parse_rational(&j.im)?))
    }
}

pub fn rational_to_json(r: &Rational) -> String {
    r.to_string()
}

pub type MatJson = Vec<Vec<CxJson>>;

pub fn mat_to_json(m: &Mat) -> MatJson {
    m.to_rows().iter().map(|row| row.iter().map(CxJson::from).collect()).collect()
}

pub fn mat_from_json(j: &MatJson) -> Result<Mat> {
    let rows = j
        .iter()
        .map(|row| row.iter().map(Cx::try_from).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(rows)
}

pub fn vec_to_json(v: &[Cx]) -> Vec<CxJson> {
    v.iter().map(CxJson::from).collect()
}

pub fn vec_from_json(v: &[CxJson]) -> Result<Vec<Cx>> {
    v.iter().map(Cx::try_from).collect()
}

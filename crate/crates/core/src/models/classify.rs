use serde::Serialize;

use crate::autgroup::stabilizer_algebra;
use crate::error::{Error, Result};
use crate::normal_form::{check_normal_form, is_function_of_form_and_u, Hypersurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// `dim = n²`
    #[serde(rename = "FULL")]
    Full,
    /// `m = 0`, `dim = n² − 2n + 2`
    #[serde(rename = "T1_CASE")]
    T1,
    /// `m ≥ 1`, `dim = n² − 2n + 3`
    #[serde(rename = "T2_CASE")]
    T2,
    #[serde(rename = "OTHER")]
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub case: Case,
    pub dim: usize,
    pub n: usize,
    pub m: usize,
    pub function_of_form_and_u: bool,
    /// No dimension in the forbidden band, and `dim = n²` exactly when F is a
    /// function of `⟨z,z⟩` and u.
    pub gap_ok: bool,
}

/// Dimensions strictly between the largest two admissible values:
/// `[n²−2n+3, n²−1]` for `m = 0`, `[n²−2n+4, n²−1]` for `m ≥ 1`.
pub fn forbidden_band(n: usize, m: usize) -> std::ops::RangeInclusive<usize> {
    let nn = n * n;
    let lo = if m == 0 { nn + 3 - 2 * n } else { nn + 4 - 2 * n };
    lo..=nn - 1
}

pub fn classify(m: &Hypersurface) -> Result<Classification> {
    if m.is_spherical() {
        return Err(Error::InvalidParameters("the quadric (F = 0) has no classification case".into()));
    }
    if !check_normal_form(m).passed() {
        return Err(Error::NotNormalForm);
    }
    let (n, sig) = (m.n(), m.m());
    let dim = stabilizer_algebra(m).dim;
    let nn = n * n;
    let case = if dim == nn {
        Case::Full
    } else if sig == 0 && dim + 2 * n == nn + 2 {
        Case::T1
    } else if sig >= 1 && dim + 2 * n == nn + 3 {
        Case::T2
    } else {
        Case::Other
    };
    let function_of_form_and_u = is_function_of_form_and_u(m);
    let gap_ok = !forbidden_band(n, sig).contains(&dim) && (dim == nn) == function_of_form_and_u;
    Ok(Classification { case, dim, n, m: sig, function_of_form_and_u, gap_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormKind;
    use crate::models::{model_corollary2, model_theorem1, model_umbilic};
    use crate::number::int;
    use std::collections::BTreeMap;

    #[test]
    fn model_cases() {
        let u = model_umbilic(2, 0, FormKind::Diagonal, &BTreeMap::from([((4, 0), int(1))])).unwrap();
        let c = classify(&u.surface).unwrap();
        assert_eq!((c.case, c.dim, c.gap_ok), (Case::Full, 4, true));
        let t1 = model_theorem1(2, &BTreeMap::from([((4, 0, 0), int(1))])).unwrap();
        let c = classify(&t1.surface).unwrap();
        assert_eq!((c.case, c.dim, c.gap_ok), (Case::T1, 2, true));
        let t2 = model_corollary2(2, 1, 1).unwrap();
        let c = classify(&t2.surface).unwrap();
        assert_eq!((c.case, c.dim, c.gap_ok), (Case::T2, 3, true));
    }

    #[test]
    fn bands() {
        assert_eq!(forbidden_band(2, 0), 3..=3);
        assert!(forbidden_band(2, 1).is_empty());
        assert_eq!(forbidden_band(3, 1), 7..=8);
        assert_eq!(forbidden_band(3, 0), 6..=8);
    }
}

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{lie_constraint_rows, mat_from_real_coords, HermitianForm};
use crate::json::{mat_from_json, mat_to_json, vec_from_json, vec_to_json, CxJson, MatJson};
use crate::linalg;
use crate::matrix::Mat;
use crate::number::{Cx, Rational};
use crate::FormKind;

fn check_range(n: usize, m: usize) -> Result<()> {
    if n < 2 || m < 1 || n < 2 * m {
        return Err(Error::InvalidParameters(format!("S needs n >= 2, m >= 1, n >= 2m; got n = {n}, m = {m}")));
    }
    Ok(())
}

/// `H′`: the antidiagonal form of size n with its first and last rows and
/// columns removed (empty for n = 2).
pub fn central_form(n: usize, m: usize) -> Result<Mat> {
    check_range(n, m)?;
    Ok(HermitianForm::standard(n, m, FormKind::Antidiagonal)?.central_block())
}

/// Real basis of `{X : XᵀH′ + H′ conj(X) = 0}`.
pub fn central_lie_basis(n: usize, m: usize) -> Result<Vec<Mat>> {
    let hp = central_form(n, m)?;
    let k = hp.rows();
    Ok(linalg::nullspace(lie_constraint_rows(&hp), 2 * k * k).iter().map(|v| mat_from_real_coords(k, v)).collect())
}

/// `xᵀ H′ conj(x)`, real for Hermitian H′.
fn central_norm(hp: &Mat, x: &[Cx]) -> Rational {
    let xb: Vec<Cx> = x.iter().map(Cx::conj).collect();
    let hx = hp.mul_vec(&xb);
    x.iter().zip(&hx).fold(Cx::zero(), |acc, (a, b)| acc + a * b).re
}

/// Parameters `(μ, c, x, A)` of an element of S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElement {
    n: usize,
    m: usize,
    mu: Cx,
    c: Cx,
    x: Vec<Cx>,
    a: Mat,
}

impl SElement {
    /// Checks `μ ≠ 0`, `AᵀH′ conj(A) = H′` and `2Re(c/μ) + xᵀH′ conj(x) = 0`.
    pub fn new(n: usize, m: usize, mu: Cx, c: Cx, x: Vec<Cx>, a: Mat) -> Result<Self> {
        let hp = central_form(n, m)?;
        let k = n - 2;
        if x.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: x.len() });
        }
        if a.rows() != k || a.cols() != k {
            return Err(Error::DimensionMismatch { expected: k, found: a.rows().max(a.cols()) });
        }
        let mu_inv = mu.inv().ok_or_else(|| Error::Constraint("mu must be nonzero".into()))?;
        if a.transpose().mul(&hp).mul(&a.conj()) != hp {
            return Err(Error::Constraint("A does not preserve the central form".into()));
        }
        let corner = (&c * &mu_inv).re * Rational::from_integer(2.into()) + central_norm(&hp, &x);
        if !corner.is_zero() {
            return Err(Error::Constraint(format!("2Re(c/mu) + x^T H' conj(x) = {corner}, expected 0")));
        }
        Ok(SElement { n, m, mu, c, x, a })
    }

    /// The element with the given `μ, x, A` and `c = μ(−xᵀH′ conj(x)/2 + i·t)`,
    /// which satisfies the corner constraint by construction.
    pub fn with_free_c(n: usize, m: usize, mu: Cx, t: Rational, x: Vec<Cx>, a: Mat) -> Result<Self> {
        let hp = central_form(n, m)?;
        if x.len() != n - 2 {
            return Err(Error::DimensionMismatch { expected: n - 2, found: x.len() });
        }
        let half = Rational::new((-1).into(), 2.into());
        let c = &mu * &Cx::new(central_norm(&hp, &x) * half, t);
        SElement::new(n, m, mu, c, x, a)
    }

    pub fn identity(n: usize, m: usize) -> Result<Self> {
        SElement::new(n, m, Cx::one(), Cx::zero(), vec![Cx::zero(); n.saturating_sub(2)], Mat::identity(n.saturating_sub(2)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mu(&self) -> &Cx {
        &self.mu
    }

    pub fn c(&self) -> &Cx {
        &self.c
    }

    pub fn x(&self) -> &[Cx] {
        &self.x
    }

    pub fn a(&self) -> &Mat {
        &self.a
    }

    pub fn to_json(&self) -> SElementJson {
        SElementJson { mu: (&self.mu).into(), c: (&self.c).into(), x: vec_to_json(&self.x), a: mat_to_json(&self.a) }
    }

    pub fn from_json(j: &SElementJson, n: usize, m: usize) -> Result<Self> {
        let k = n.saturating_sub(2);
        let a = if k == 0 { Mat::zeros(0, 0) } else { mat_from_json(&j.a)? };
        SElement::new(n, m, Cx::try_from(&j.mu)?, Cx::try_from(&j.c)?, vec_from_json(&j.x)?, a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SElementJson {
    pub mu: CxJson,
    pub c: CxJson,
    #[serde(default)]
    pub x: Vec<CxJson>,
    #[serde(rename = "A", default)]
    pub a: MatJson,
}

/// `[[μ, −μ conj(x)ᵀH′A, c], [0, A, x], [0, 0, 1/conj(μ)]]`
pub fn s_to_matrix(e: &SElement) -> Mat {
    let n = e.n;
    let k = n - 2;
    let hp = central_form(n, e.m).expect("validated on construction");
    let xb: Vec<Cx> = e.x.iter().map(Cx::conj).collect();
    // row vector conj(x)ᵀ H′ A
    let xh: Vec<Cx> = (0..k).map(|j| (0..k).fold(Cx::zero(), |acc, i| acc + &xb[i] * &hp[(i, j)])).collect();
    let top: Vec<Cx> = (0..k).map(|j| (0..k).fold(Cx::zero(), |acc, i| acc + &xh[i] * &e.a[(i, j)])).collect();
    let mut u = Mat::zeros(n, n);
    u[(0, 0)] = e.mu.clone();
    for j in 0..k {
        u[(0, j + 1)] = -(&e.mu * &top[j]);
        u[(j + 1, n - 1)] = e.x[j].clone();
        for i in 0..k {
            u[(i + 1, j + 1)] = e.a[(i, j)].clone();
        }
    }
    u[(0, n - 1)] = e.c.clone();
    u[(n - 1, n - 1)] = e.mu.conj().inv().expect("mu is nonzero");
    u
}

/// Reads `(μ, c, x, A)` off U when U has the shape of an element of S and
/// satisfies its constraints.
pub fn s_decompose(u: &Mat, m: usize) -> Option<SElement> {
    let n = u.rows();
    if !u.is_square() || check_range(n, m).is_err() {
        return None;
    }
    if (1..n).any(|i| !u[(i, 0)].is_zero()) || (0..n - 1).any(|j| !u[(n - 1, j)].is_zero()) {
        return None;
    }
    let mu = u[(0, 0)].clone();
    let x: Vec<Cx> = (1..n - 1).map(|i| u[(i, n - 1)].clone()).collect();
    let a = u.block(1, n - 1);
    let e = SElement::new(n, m, mu, u[(0, n - 1)].clone(), x, a).ok()?;
    (s_to_matrix(&e) == *u).then_some(e)
}

pub fn is_in_s(u: &Mat, m: usize) -> bool {
    s_decompose(u, m).is_some()
}

/// Dimension of the Lie algebra of S from the linearized parametrization at
/// the identity: unknowns `δμ, δc ∈ ℂ`, `δx ∈ ℂ^{n−2}`, `δA ∈ gl(n−2, ℂ)` as
/// real coordinates, constrained by `δA ∈ u(H′)` and `Re δc = 0`.
pub fn s_dimension(n: usize, m: usize) -> Result<usize> {
    let hp = central_form(n, m)?;
    let k = n - 2;
    // [δμ (2) | δc (2) | δx (2k) | δA (2k²)]
    let a_off = 4 + 2 * k;
    let cols = a_off + 2 * k * k;
    let mut rows: Vec<Vec<Rational>> = lie_constraint_rows(&hp)
        .into_iter()
        .map(|r| {
            let mut full = vec![Rational::zero(); a_off];
            full.extend(r);
            full
        })
        .collect();
    let mut corner = vec![Rational::zero(); cols];
    corner[2] = Rational::one();
    rows.push(corner);
    Ok(cols - linalg::rank(rows, cols))
}

/// Named one- and multi-parameter subgroups of S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    /// `μ = (1 − t² + 2it)/(1 + t²)`, `c = 0`, `x = 0`, `A = E`.
    I(Rational),
    /// `μ = 1`, `A = E`, with `2Re c + xᵀH′ conj(x) = 0`.
    J { c: Cx, x: Vec<Cx> },
    /// `μ = t > 0`, `c = 0`, `x = 0`, `A = E`.
    K(Rational),
}

pub fn s_named_subgroup(n: usize, m: usize, kind: &Subgroup) -> Result<SElement> {
    check_range(n, m)?;
    let k = n - 2;
    let e = Mat::identity(k);
    let zero_x = vec![Cx::zero(); k];
    match kind {
        Subgroup::I(t) => {
            let t2 = t * t;
            let den = Rational::one() + &t2;
            let mu = Cx::new((Rational::one() - &t2) / &den, Rational::from_integer(2.into()) * t / &den);
            SElement::new(n, m, mu, Cx::zero(), zero_x, e)
        }
        Subgroup::J { c, x } => SElement::new(n, m, Cx::one(), c.clone(), x.clone(), e),
        Subgroup::K(t) => {
            if !t.is_positive() {
                return Err(Error::Constraint(format!("K needs t > 0, got {t}")));
            }
            SElement::new(n, m, Cx::real(t.clone()), Cx::zero(), zero_x, e)
        }
    }
}

//! Hermitian forms of signature `(n−m, m)`, pseudounitary membership and the
//! real Lie algebra `u(H) = {X : XᵀH + H·conj(X) = 0}`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Mat;
use crate::number::{Cx, Rational};
use crate::poly::{HoloPoly, Poly, RealPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// `diag(1, …, 1, −1, …, −1)` with `m` trailing minus signs.
    Diagonal,
    /// Antidiagonal blocks of size `m` around a central identity.
    Antidiagonal,
    Explicit,
}

/// `⟨z, z⟩ = Σ h_{αβ} z_α conj(z_β) = zᵀ H conj(z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermitianForm {
    n: usize,
    m: usize,
    kind: FormKind,
    h: Mat,
    /// Coefficient matrix of the trace operator.
    trace: Mat,
}

impl HermitianForm {
    pub fn standard(n: usize, m: usize, kind: FormKind) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("dimension n must be positive".into()));
        }
        if n < 2 * m {
            return Err(Error::InvalidParameters(format!("need n >= 2m, got n = {n}, m = {m}")));
        }
        let mut h = Mat::zeros(n, n);
        match kind {
            FormKind::Diagonal => {
                for i in 0..n {
                    h[(i, i)] = Cx::from_int(if i < n - m { 1 } else { -1 });
                }
            }
            FormKind::Antidiagonal => {
                for i in 0..n {
                    if i < m || i >= n - m {
                        h[(i, n - 1 - i)] = Cx::one();
                    } else {
                        h[(i, i)] = Cx::one();
                    }
                }
            }
            FormKind::Explicit => {
                return Err(Error::InvalidParameters("explicit forms need a matrix".into()));
            }
        }
        Self::build(h, m, kind)
    }

    pub fn explicit(h: Mat, m: usize) -> Result<Self> {
        Self::build(h, m, FormKind::Explicit)
    }

    fn build(h: Mat, m: usize, kind: FormKind) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::DimensionMismatch { expected: h.rows(), found: h.cols() });
        }
        let n = h.rows();
        if n < 2 * m {
            return Err(Error::InvalidParameters(format!("need n >= 2m, got n = {n}, m = {m}")));
        }
        let (pos, neg) = signature(&h)?;
        if (pos, neg) != (n - m, m) {
            return Err(Error::Signature { expected_pos: n - m, expected_neg: m, found_pos: pos, found_neg: neg });
        }
        let trace = h.transpose().inverse().ok_or(Error::Singular)?;
        Ok(HermitianForm { n, m, kind, h, trace })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn matrix(&self) -> &Mat {
        &self.h
    }

    /// `ĥ` with `Σ_β ĥ_{αβ} h_{γβ} = δ_{αγ}`; equals `H⁻¹` for the standard forms.
    pub fn trace_matrix(&self) -> &Mat {
        &self.trace
    }

    /// `⟨a, b⟩ = aᵀ H conj(b)`.
    pub fn pairing(&self, a: &[Cx], b: &[Cx]) -> Cx {
        let hb = self.h.mul_vec(&b.iter().map(Cx::conj).collect::<Vec<_>>());
        a.iter().zip(&hb).fold(Cx::zero(), |acc, (x, y)| acc + x * y)
    }

    /// `⟨z, a⟩ = Σ h_{αβ} z_α conj(a_β)`, holomorphic and linear in z.
    pub fn pairing_with_z(&self, a: &[Cx]) -> HoloPoly {
        let abar: Vec<Cx> = a.iter().map(Cx::conj).collect();
        HoloPoly::linear(&self.h.mul_vec(&abar))
    }

    /// `⟨z, z⟩` as a bidegree-(1,1) real polynomial.
    pub fn inner_poly(&self) -> RealPoly {
        let n = self.n;
        let mut p = Poly::zero(n);
        for a in 0..n {
            for b in 0..n {
                let h = &self.h[(a, b)];
                if !h.is_zero() {
                    p = p.add(&Poly::z(n, a).mul(&Poly::zbar(n, b)).scale(h));
                }
            }
        }
        RealPoly::new_unchecked(p)
    }

    /// `H′`: the form with the first and last rows and columns removed.
    pub fn central_block(&self) -> Mat {
        self.h.block(1, self.n - 1)
    }
}

/// Inertia `(positive, negative)` of a Hermitian matrix by symmetric
/// elimination. Pivots go to the smallest index with nonzero diagonal; when
/// the remaining diagonal vanishes the smallest nonzero off-diagonal pair
/// `(i, j)` is folded into position `i`.
pub fn signature(h: &Mat) -> Result<(usize, usize)> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch { expected: h.rows(), found: h.cols() });
    }
    if h.transpose() != h.conj() {
        return Err(Error::NotHermitian);
    }
    let n = h.rows();
    let mut a = h.clone();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            swap_sym(&mut a, k, p);
        } else {
            let pair = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[(i, j)].is_zero());
            let Some((i, j)) = pair else {
                return Err(Error::Singular);
            };
            // e_i ← e_i + t e_j with t ∈ {1, i}; new diagonal is 2 Re(t h_ji).
            let t = if !a[(j, i)].re.is_zero() { Cx::one() } else { Cx::i() };
            add_sym(&mut a, i, j, &t);
            swap_sym(&mut a, k, i);
        }
        let d = a[(k, k)].re.clone();
        debug_assert!(a[(k, k)].im.is_zero());
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let dinv = Cx::real(d.recip());
        for j in k + 1..n {
            if a[(j, k)].is_zero() {
                continue;
            }
            let f = &a[(j, k)] * &dinv;
            add_sym(&mut a, j, k, &-f);
        }
    }
    Ok((pos, neg))
}

/// Congruence `e_i ← e_i + t e_j`: row i += t·row j, column i += conj(t)·column j.
fn add_sym(a: &mut Mat, i: usize, j: usize, t: &Cx) {
    let n = a.rows();
    for c in 0..n {
        let v = t * &a[(j, c)];
        a[(i, c)] += &v;
    }
    let tc = t.conj();
    for r in 0..n {
        let v = &tc * &a[(r, j)];
        a[(r, i)] += &v;
    }
}

fn swap_sym(a: &mut Mat, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap_rows(i, j);
    let t = a.transpose();
    let mut t2 = t;
    t2.swap_rows(i, j);
    *a = t2.transpose();
}

/// `Some(+1)` if `UᵀH conj(U) = H`, `Some(−1)` if it equals `−H`, else `None`.
pub fn is_pseudounitary(u: &Mat, hf: &HermitianForm) -> Result<Option<i8>> {
    if u.rows() != hf.n || u.cols() != hf.n {
        return Err(Error::DimensionMismatch { expected: hf.n, found: u.rows().max(u.cols()) });
    }
    let g = u.transpose().mul(&hf.h).mul(&u.conj());
    Ok(if g == hf.h {
        Some(1)
    } else if g == hf.h.neg() {
        Some(-1)
    } else {
        None
    })
}

/// Element of `u(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    x: Mat,
}

impl LieElement {
    pub fn new(x: Mat, hf: &HermitianForm) -> Result<Self> {
        if x.rows() != hf.n || x.cols() != hf.n {
            return Err(Error::DimensionMismatch { expected: hf.n, found: x.rows() });
        }
        if !lie_defect(&x, hf.matrix()).is_zero() {
            return Err(Error::Constraint("X^T H + H conj(X) != 0".into()));
        }
        Ok(LieElement { x })
    }

    pub(crate) fn new_unchecked(x: Mat) -> Self {
        LieElement { x }
    }

    pub fn matrix(&self) -> &Mat {
        &self.x
    }

    pub fn into_matrix(self) -> Mat {
        self.x
    }
}

/// `XᵀH + H conj(X)`
pub fn lie_defect(x: &Mat, h: &Mat) -> Mat {
    x.transpose().mul(h).add(&h.mul(&x.conj()))
}

/// Index of `Re X_{jk}` in the real coordinate vector; `Im X_{jk}` follows it.
pub fn real_coord(n: usize, j: usize, k: usize) -> usize {
    2 * (j * n + k)
}

pub fn mat_from_real_coords(n: usize, v: &[Rational]) -> Mat {
    let mut x = Mat::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let c = real_coord(n, j, k);
            x[(j, k)] = Cx::new(v[c].clone(), v[c + 1].clone());
        }
    }
    x
}

/// Real-linear rows for `XᵀH + H conj(X) = 0` over the `2n²` real coordinates of X.
pub fn lie_constraint_rows(h: &Mat) -> Vec<Vec<Rational>> {
    let n = h.rows();
    let cols = 2 * n * n;
    let mut rows = Vec::with_capacity(2 * n * n);
    for a in 0..n {
        for b in 0..n {
            let mut re = vec![Rational::zero(); cols];
            let mut im = vec![Rational::zero(); cols];
            for c in 0..n {
                // X_ca · H_cb
                let hp = &h[(c, b)];
                let i = real_coord(n, c, a);
                re[i] += &hp.re;
                re[i + 1] -= &hp.im;
                im[i] += &hp.im;
                im[i + 1] += &hp.re;
                // H_ac · conj(X_cb)
                let hq = &h[(a, c)];
                let i = real_coord(n, c, b);
                re[i] += &hq.re;
                re[i + 1] += &hq.im;
                im[i] += &hq.im;
                im[i + 1] -= &hq.re;
            }
            rows.push(re);
            rows.push(im);
        }
    }
    rows
}

/// Real basis of `u(H)`, `n²` elements, from the exact kernel of the
/// constraint system on `2n²` real unknowns.
pub fn u_basis(hf: &HermitianForm) -> Vec<LieElement> {
    let n = hf.n;
    linalg::nullspace(lie_constraint_rows(&hf.h), 2 * n * n)
        .iter()
        .map(|v| LieElement::new_unchecked(mat_from_real_coords(n, v)))
        .collect()
}

/// Cayley transform `(E − X)⁻¹ (E + X)`; maps `u(H)` into `U(H)` whenever defined.
pub fn cayley(x: &Mat) -> Option<Mat> {
    let e = Mat::identity(x.rows());
    Some(e.sub(x).inverse()?.mul(&e.add(x)))
}

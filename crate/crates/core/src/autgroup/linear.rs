use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{is_pseudounitary, u_basis, LieElement};
use crate::linalg;
use crate::matrix::Mat;
use crate::normal_form::Hypersurface;
use crate::number::{Cx, Rational};
use crate::poly::{Poly, Var};

/// Infinitesimal symmetry: the vector field of `z ↦ (ρE + X)z`, `u ↦ 2ρu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfSym {
    pub x: LieElement,
    pub rho: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    pub dim: usize,
    pub basis: Vec<InfSym>,
    pub spherical: bool,
}

/// `F(λUz, conj(λUz), σλ²u) = σλ²F`
pub fn is_linear_automorphism(m: &Hypersurface, u: &Mat, lambda: &Rational, sigma: i8) -> Result<bool> {
    if is_pseudounitary(u, m.form())? != Some(sigma) {
        return Err(Error::NotPseudounitary { expected: sigma });
    }
    let s = lambda * lambda * Rational::from_integer(sigma.into());
    let moved = m.f().substitute_linear(&u.scale_real(lambda), &s)?;
    Ok(moved == m.f().scale_real(&s))
}

/// `z_k ∂F/∂z_j` for all `j, k`, indexed `[j][k]`.
fn euler_pieces(f: &Poly) -> Vec<Vec<Poly>> {
    let n = f.n();
    (0..n)
        .map(|j| {
            let dj = f.partial(Var::Z(j));
            (0..n).map(|k| dj.mul(&Poly::z(n, k))).collect()
        })
        .collect()
}

/// `2 Re Σ_j (Xz)_j ∂F/∂z_j`
fn x_action(pieces: &[Vec<Poly>], x: &Mat) -> Poly {
    let n = x.rows();
    let mut acc = Poly::zero(n);
    for (j, row) in pieces.iter().enumerate() {
        for (k, p) in row.iter().enumerate() {
            let c = &x[(j, k)];
            if !c.is_zero() {
                acc = acc.add(&p.scale(c));
            }
        }
    }
    acc.add(&acc.conj())
}

/// `2 Re Σ_j z_j ∂F/∂z_j + 2u ∂F/∂u − 2F`
fn rho_action(pieces: &[Vec<Poly>], f: &Poly) -> Poly {
    let n = f.n();
    let euler = (0..n).fold(Poly::zero(n), |acc, j| acc.add(&pieces[j][j]));
    let two = Rational::from_integer(2.into());
    euler
        .add(&euler.conj())
        .add(&f.partial(Var::U).mul(&Poly::u(n)).scale_real(&two))
        .sub(&f.scale_real(&two))
}

/// Whether `(X, ρ)` annihilates `v − ⟨z,z⟩ − F` to first order.
pub fn is_infinitesimal_symmetry(m: &Hypersurface, s: &InfSym) -> bool {
    let f = m.f().as_poly();
    let pieces = euler_pieces(f);
    let total = x_action(&pieces, s.x.matrix()).add(&rho_action(&pieces, f).scale_real(&s.rho));
    total.is_zero()
}

/// Kernel of the real-linear map `(X, ρ) ↦ 2Re[Σ ((ρE+X)z)_j ∂F/∂z_j] + 2ρu ∂F/∂u − 2ρF`
/// with X over `u(H)`; its dimension is the dimension of the linear
/// stability algebra.
pub fn stabilizer_algebra(m: &Hypersurface) -> Stabilizer {
    let hf = m.form();
    let n = hf.n();
    let basis = u_basis(hf);
    if m.is_spherical() {
        let mut out: Vec<InfSym> = basis.into_iter().map(|x| InfSym { x, rho: Rational::zero() }).collect();
        out.push(InfSym { x: LieElement::new_unchecked(Mat::zeros(n, n)), rho: Rational::one() });
        return Stabilizer { dim: out.len(), basis: out, spherical: true };
    }
    let f = m.f().as_poly();
    let pieces = euler_pieces(f);
    let mut columns: Vec<Poly> = basis.iter().map(|x| x_action(&pieces, x.matrix())).collect();
    columns.push(rho_action(&pieces, f));
    let cols = columns.len();

    // Each column is real, so the coefficient of a monomial determines that
    // of its conjugate; one representative per conjugate pair suffices.
    let mut monos: Vec<_> = columns.iter().flat_map(|c| c.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    monos.retain(|m| *m <= m.conj());
    let mut rows = Vec::with_capacity(2 * monos.len());
    for mono in &monos {
        let cs: Vec<Cx> = columns.iter().map(|c| c.coeff(mono)).collect();
        rows.push(cs.iter().map(|c| c.re.clone()).collect::<Vec<_>>());
        if *mono != mono.conj() {
            rows.push(cs.iter().map(|c| c.im.clone()).collect());
        }
    }
    let kernel = linalg::nullspace(rows, cols);
    let out = kernel
        .iter()
        .map(|v| {
            let x = basis
                .iter()
                .zip(v)
                .filter(|(_, t)| !t.is_zero())
                .fold(Mat::zeros(n, n), |acc, (b, t)| acc.add(&b.matrix().scale_real(t)));
            InfSym { x: LieElement::new_unchecked(x), rho: v[cols - 1].clone() }
        })
        .collect::<Vec<_>>();
    Stabilizer { dim: out.len(), basis: out, spherical: false }
}

impl Stabilizer {
    /// Whether every basis element has `ρ = 0`.
    pub fn is_isometric(&self) -> bool {
        self.basis.iter().all(|s| s.rho.is_zero())
    }
}

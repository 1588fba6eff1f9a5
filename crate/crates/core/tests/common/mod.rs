#![allow(dead_code)]

use crmoser::forms::{cayley, u_basis};
use crmoser::models::{central_lie_basis, SElement};
use crmoser::number::{rat, Cx, Rational};
use crmoser::poly::Monomial;
use crmoser::{FormKind, HermitianForm, Mat, Poly, RealPoly};
use proptest::prelude::*;

pub fn form(n: usize, m: usize) -> HermitianForm {
    let kind = if m == 0 { FormKind::Diagonal } else { FormKind::Antidiagonal };
    HermitianForm::standard(n, m, kind).unwrap()
}

pub fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

/// Sparse, small coefficients for Lie algebra combinations, so Cayley
/// images stay cheap to substitute.
pub fn lie_coeff() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1), rat(-1, 1), rat(1, 2)])
}

pub fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |r| *r != rat(0, 1))
}

pub fn small_cx() -> impl Strategy<Value = Cx> {
    (small_rat(), small_rat()).prop_map(|(a, b)| Cx::new(a, b))
}

pub fn combination(basis: &[Mat], coeffs: &[Rational]) -> Mat {
    let n = basis[0].rows();
    basis.iter().zip(coeffs).fold(Mat::zeros(n, n), |acc, (b, c)| acc.add(&b.scale_real(c)))
}

/// A random element of `u(H)` given `n²` coefficients.
pub fn lie_element(hf: &HermitianForm, coeffs: &[Rational]) -> Mat {
    let basis: Vec<Mat> = u_basis(hf).into_iter().map(|b| b.into_matrix()).collect();
    combination(&basis, coeffs)
}

/// Cayley image of a random element of `u(H)`, skipping singular cases.
pub fn pseudounitary(hf: &HermitianForm, coeffs: &[Rational]) -> Option<Mat> {
    cayley(&lie_element(hf, coeffs))
}

/// An element of S from `μ`, `t`, `x` and Lie coefficients for `A`.
pub fn s_element(n: usize, m: usize, mu: Cx, t: Rational, x: &[Cx], coeffs: &[Rational]) -> Option<SElement> {
    let k = n - 2;
    let a = if k == 0 {
        Mat::zeros(0, 0)
    } else {
        let basis = central_lie_basis(n, m).unwrap();
        cayley(&combination(&basis, coeffs))?
    };
    SElement::with_free_c(n, m, mu, t, x[..k].to_vec(), a).ok()
}

/// `Σ c z^α conj(z)^β u^r + conj`, a real polynomial.
pub fn real_poly(n: usize, terms: &[(Vec<u32>, Vec<u32>, u32, Cx)]) -> RealPoly {
    let mut p = Poly::zero(n);
    for (a, b, r, c) in terms {
        let m = Monomial::new(a, b, *r);
        p = p.add(&Poly::monomial(n, m.clone(), c.clone())).add(&Poly::monomial(n, m.conj(), c.conj()));
    }
    RealPoly::new(p).unwrap()
}

/// Term lists whose monomials have degree ≥ 2 in z and in conj(z).
pub fn terms(n: usize, max_exp: u32, max_u: u32, len: usize) -> impl Strategy<Value = Vec<(Vec<u32>, Vec<u32>, u32, Cx)>> {
    let exps = move || {
        prop::collection::vec(0..=max_exp, n).prop_filter("degree >= 2", |e| e.iter().sum::<u32>() >= 2)
    };
    prop::collection::vec((exps(), exps(), 0..=max_u, small_cx()), 1..=len)
}

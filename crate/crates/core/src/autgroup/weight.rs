use num_traits::Zero;

use super::jet::{extract_params, quadric_automorphism, JetMap};
use crate::error::{Error, Result};
use crate::forms::HermitianForm;
use crate::normal_form::Hypersurface;
use crate::number::{Cx, Rational};
use crate::poly::{HoloPoly, Poly, RealPoly, Var};

/// `u + i⟨z,z⟩`
fn w_on_quadric(hf: &HermitianForm) -> Poly {
    Poly::u(hf.n()).add(&hf.inner_poly().scale(&Cx::i()))
}

fn holo_to_poly(p: &HoloPoly) -> Poly {
    p.substitute_w(&Poly::zero(p.n()), u32::MAX)
}

/// `T(F, a) = 2Re(−2i⟨z,a⟩F + (u + i⟨z,z⟩) Σ a_j ∂F/∂z_j
///   + 2i⟨z,a⟩ Σ z_j ∂F/∂z_j + i⟨z,a⟩(u + i⟨z,z⟩) ∂F/∂u)`.
pub fn t_operator(fg: &RealPoly, a: &[Cx], hf: &HermitianForm) -> Result<RealPoly> {
    let n = hf.n();
    if fg.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: fg.n() });
    }
    if a.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.len() });
    }
    if a.iter().all(Cx::is_zero) {
        return Ok(RealPoly::zero(n));
    }
    let f = fg.as_poly();
    let za = holo_to_poly(&hf.pairing_with_z(a));
    let wq = w_on_quadric(hf);
    let i = Cx::i();
    let two_i = Cx::new(Rational::zero(), Rational::from_integer(2.into()));

    let mut directional = Poly::zero(n);
    let mut euler = Poly::zero(n);
    for (j, aj) in a.iter().enumerate() {
        let dj = f.partial(Var::Z(j));
        if !aj.is_zero() {
            directional = directional.add(&dj.scale(aj));
        }
        euler = euler.add(&dj.mul(&Poly::z(n, j)));
    }
    let s = za
        .mul(f)
        .scale(&-&two_i)
        .add(&wq.mul(&directional))
        .add(&za.mul(&euler).scale(&two_i))
        .add(&za.mul(&wq).mul(&f.partial(Var::U)).scale(&i));
    Ok(RealPoly::twice_real_part(&s))
}

/// Difference of the two sides of the weight-(γ+1) identity satisfied by an
/// automorphism `j` of `m`:
///
/// `Re(i g̃_{γ+1} + 2⟨λ⁻¹U⁻¹ f̃_γ, z⟩)|_{w = u + i⟨z,z⟩} + T(F_γ, a)`
/// minus `F_{γ+1}(z, z̄, u) − λ⁻² F_{γ+1}(λUz, conj(λUz), λ²u)`,
/// where `(f̃, g̃)` is `j` minus the quadric automorphism with the same
/// parameters and γ is the lowest weight of F.
pub fn moser_weight_identity(m: &Hypersurface, j: &JetMap) -> Result<RealPoly> {
    let hf = m.form();
    let n = hf.n();
    let gamma = m
        .gamma()
        .ok_or_else(|| Error::InvalidParameters("the quadric has no lowest weight component".into()))?;
    if j.d() < gamma + 1 {
        return Err(Error::Truncation { requested: gamma + 1, capacity: j.d() });
    }
    let p = extract_params(j, hf)?;
    let q = quadric_automorphism(&p, hf, j.d())?;
    let diff = j.sub(&q);
    let wq = w_on_quadric(hf);
    let top = gamma + 1;

    let inv_lambda = p.lambda.recip();
    let u_inv = p.u.inverse().ok_or(crate::error::Error::Singular)?.scale_real(&inv_lambda);
    let f_gamma: Vec<Poly> = diff.f().iter().map(|fk| fk.weight_component(gamma).substitute_w(&wq, top)).collect();
    // v = λ⁻¹U⁻¹ f̃_γ, then ⟨v, z⟩ = Σ v_a h_ab conj(z_b)
    let h = hf.matrix();
    let mut pairing = Poly::zero(n);
    for a in 0..n {
        let va = (0..n).fold(Poly::zero(n), |acc, b| acc.add(&f_gamma[b].scale(&u_inv[(a, b)])));
        if va.is_zero() {
            continue;
        }
        for b in 0..n {
            if !h[(a, b)].is_zero() {
                pairing = pairing.add(&va.mul(&Poly::zbar(n, b)).scale(&h[(a, b)]));
            }
        }
    }
    let g_top = diff.g().weight_component(top).substitute_w(&wq, top);
    let inner = g_top.scale(&Cx::i()).add(&pairing.scale_real(&Rational::from_integer(2.into())));
    // Re X = (X + conj X)/2
    let re_part = RealPoly::twice_real_part(&inner).scale_real(&Rational::new(1.into(), 2.into()));
    let f_g = m.f().weight_component(gamma);
    let lhs = re_part.add(&t_operator(&f_g, &p.a, hf)?);

    let f_top = m.f().weight_component(top);
    let l2 = &p.lambda * &p.lambda;
    let moved = f_top.substitute_linear(&p.u.scale_real(&p.lambda), &l2)?;
    let rhs = f_top.sub(&moved.scale_real(&l2.recip()));
    Ok(lhs.sub(&rhs))
}

use super::jet::JetMap;
use crate::error::{Error, Result};
use crate::normal_form::Hypersurface;
use crate::number::{Cx, Rational};
use crate::poly::Poly;

/// `Im g − ⟨f, f⟩ − F(f, conj f, Re g)` on `w = u + i(⟨z,z⟩ + F)`, all terms
/// of weight `≤ w_max`.
pub fn automorphism_residual(m: &Hypersurface, j: &JetMap, w_max: u32) -> Result<Poly> {
    let hf = m.form();
    let n = hf.n();
    if j.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: j.n() });
    }
    if w_max > j.d() {
        return Err(Error::Truncation { requested: w_max, capacity: j.d() });
    }
    let v = hf.inner_poly().add(m.f()).truncate(w_max);
    let w = Poly::u(n).add(&v.scale(&Cx::i()));
    let f: Vec<Poly> = j.f().iter().map(|p| p.substitute_w(&w, w_max)).collect();
    let fbar: Vec<Poly> = f.iter().map(Poly::conj).collect();
    let g = j.g().substitute_w(&w, w_max);
    let half = Rational::new(1.into(), 2.into());
    let re_g = g.add(&g.conj()).scale_real(&half);
    // Im g = (g − conj g)/(2i) = −i(g − conj g)/2
    let im_g = g.sub(&g.conj()).scale(&Cx::new(Rational::from_integer(0.into()), -half));

    let h = hf.matrix();
    let mut ff = Poly::zero(n);
    for a in 0..n {
        for b in 0..n {
            if !h[(a, b)].is_zero() {
                ff = ff.add(&f[a].mul_trunc(&fbar[b], w_max).scale(&h[(a, b)]));
            }
        }
    }
    let mut out = im_g.sub(&ff);
    if !m.is_spherical() {
        out = out.sub(&m.f().substitute(&f, &fbar, &re_g, w_max));
    }
    Ok(out.truncate(w_max))
}

/// Whether `j` maps M into itself up to weight `w_max`.
pub fn verify_automorphism(m: &Hypersurface, j: &JetMap, w_max: u32) -> Result<bool> {
    Ok(automorphism_residual(m, j, w_max)?.is_zero())
}

use crate::error::{Error, Result};
use crate::normal_form::Hypersurface;
use crate::number::{Cx, Rational};
use crate::poly::{Poly, RealPoly};

/// Pulls M back along `z ↦ z/(1+qw)`, `w ↦ w/(1+qw)`.
///
/// Since `Im(w/(1+qw)) = v/|1+qw|²`, the new surface is
/// `v = ⟨z,z⟩ + |1+qw|² F(z/(1+qw), conj, Re(w/(1+qw)))` with
/// `w = u + i(⟨z,z⟩ + F')` on the right. The weight-k part of the right side
/// only involves parts of F' of weight below k, so iterating from `F' = F`
/// settles after at most `w_max` rounds.
pub fn reparametrize(m: &Hypersurface, q: &Rational, w_max: u32) -> Result<Hypersurface> {
    if w_max > m.max_weight() {
        return Err(Error::Truncation { requested: w_max, capacity: m.max_weight() });
    }
    let hf = m.form();
    let n = hf.n();
    let f = m.f().truncate(w_max);
    if f.is_zero() || q == &Rational::from_integer(0.into()) {
        return Hypersurface::new(hf.clone(), f, Some(w_max));
    }
    let qc = Cx::real(q.clone());
    let half = Rational::new(1.into(), 2.into());
    let one = Poly::constant(n, Cx::one());
    let mut current = f.clone();
    for _ in 0..=w_max {
        let v = hf.inner_poly().add(&current);
        let w = Poly::u(n).add(&v.scale(&Cx::i()));
        let qw = w.scale(&qc);
        // 1/(1+qw) = Σ (−qw)^k
        let minus_qw = qw.neg();
        let mut inv = one.clone();
        let mut pk = one.clone();
        loop {
            pk = pk.mul_trunc(&minus_qw, w_max);
            if pk.is_zero() {
                break;
            }
            inv = inv.add(&pk);
        }
        let z: Vec<Poly> = (0..n).map(|j| Poly::z(n, j).mul_trunc(&inv, w_max)).collect();
        let zbar: Vec<Poly> = z.iter().map(Poly::conj).collect();
        let wq = w.mul_trunc(&inv, w_max);
        let re_wq = wq.add(&wq.conj()).scale_real(&half);
        let factor = one.add(&qw).mul_trunc(&one.add(&qw.conj()), w_max);
        let pulled = f.substitute(&z, &zbar, &re_wq, w_max).mul_trunc(&factor, w_max);
        let next = RealPoly::new(pulled)?;
        if next == current {
            return Hypersurface::new(hf.clone(), next, Some(w_max));
        }
        current = next;
    }
    Err(Error::Constraint("reparametrization did not settle".into()))
}

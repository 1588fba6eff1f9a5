use std::rc::Rc;

use super::{Exponents, HoloPoly, Monomial, Poly};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::number::{Cx, Rational};

/// Lazily extended table of truncated powers of one polynomial.
struct Powers<'a> {
    base: &'a Poly,
    max_weight: u32,
    table: Vec<Rc<Poly>>,
}

impl<'a> Powers<'a> {
    fn new(base: &'a Poly, one: Rc<Poly>, max_weight: u32) -> Self {
        Powers { base, max_weight, table: vec![one] }
    }

    fn get(&mut self, k: usize) -> Rc<Poly> {
        while self.table.len() <= k {
            let next = self.table.last().unwrap().mul_trunc(self.base, self.max_weight);
            self.table.push(Rc::new(next));
        }
        self.table[k].clone()
    }
}

impl Poly {
    /// Replaces `z_j ↦ z[j]`, `conj(z_j) ↦ zbar[j]`, `u ↦ u`, dropping terms of
    /// weight above `max_weight` along the way.
    ///
    /// Terms are visited in canonical order and partial products over shared
    /// exponent prefixes are reused.
    pub fn substitute(&self, z: &[Poly], zbar: &[Poly], u: &Poly, max_weight: u32) -> Poly {
        let n = self.n();
        assert_eq!(z.len(), n, "one substitute per z variable");
        assert_eq!(zbar.len(), n, "one substitute per conj(z) variable");
        let out_n = u.n();
        let one = Rc::new(Poly::constant(out_n, Cx::one()));
        // raw layout: [u, z.., zbar..]
        let mut powers: Vec<Powers> = std::iter::once(u)
            .chain(z.iter())
            .chain(zbar.iter())
            .map(|b| Powers::new(b, one.clone(), max_weight))
            .collect();

        let mut out = Poly::zero(out_n);
        let mut stack: Vec<Rc<Poly>> = vec![one.clone()];
        let mut prev: Option<&Monomial> = None;
        for (m, c) in self.terms() {
            let raw = m.raw();
            let shared = prev.map_or(0, |p| p.raw().iter().zip(raw).take_while(|(a, b)| a == b).count());
            stack.truncate(shared + 1);
            for (i, &e) in raw.iter().enumerate().skip(shared) {
                let top = stack[i].clone();
                let next = if e == 0 || top.is_zero() {
                    top
                } else {
                    Rc::new(top.mul_trunc(&powers[i].get(e as usize), max_weight))
                };
                stack.push(next);
            }
            let prod = stack.last().unwrap();
            for (pm, pc) in prod.terms() {
                out.add_term(pm.clone(), &(c * pc));
            }
            prev = Some(m);
        }
        out
    }

    /// `P(Az, conj(A) conj(z), s·u)`.
    pub fn substitute_linear(&self, a: &Mat, u_scale: &Rational) -> Result<Poly> {
        let n = self.n();
        if a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.rows().max(a.cols()) });
        }
        let z: Vec<Poly> = (0..n)
            .map(|j| (0..n).fold(Poly::zero(n), |acc, k| acc.add(&Poly::z(n, k).scale(&a[(j, k)]))))
            .collect();
        let zbar: Vec<Poly> = z.iter().map(Poly::conj).collect();
        let u = Poly::u(n).scale_real(u_scale);
        Ok(self.substitute(&z, &zbar, &u, u32::MAX))
    }
}

impl HoloPoly {
    /// Evaluates at `w ↦ wsub`, producing a polynomial in `(z, conj z, u)`.
    pub fn substitute_w(&self, wsub: &Poly, max_weight: u32) -> Poly {
        let n = self.n();
        let one = Rc::new(Poly::constant(n, Cx::one()));
        let mut powers = Powers::new(wsub, one, max_weight);
        let mut by_w: std::collections::BTreeMap<u32, Poly> = Default::default();
        for (m, c) in self.terms() {
            if m.z_degree() > max_weight {
                continue;
            }
            let zm = Monomial::new(&m.z_exps(), &vec![0; n], 0);
            by_w.entry(m.w()).or_insert_with(|| Poly::zero(n)).add_term(zm, c);
        }
        let mut out = Poly::zero(n);
        for (k, coeff) in by_w {
            let term = coeff.mul_trunc(&powers.get(k as usize), max_weight);
            out = out.add(&term);
        }
        out
    }

    /// Holomorphic composition `P(z[0..n], w)` truncated at `max_weight`.
    pub fn compose(&self, z: &[HoloPoly], w: &HoloPoly, max_weight: u32) -> HoloPoly {
        let n = self.n();
        let mut out = HoloPoly::zero(w.n());
        for (m, c) in self.terms() {
            let mut acc = HoloPoly::constant(w.n(), c.clone());
            for (j, zj) in z.iter().enumerate().take(n) {
                if m.z(j) > 0 {
                    acc = acc.mul_trunc(&zj.pow_trunc(m.z(j), max_weight), max_weight);
                }
            }
            if m.w() > 0 {
                acc = acc.mul_trunc(&w.pow_trunc(m.w(), max_weight), max_weight);
            }
            out = out.add(&acc);
        }
        out.filter(|m| m.weight() <= max_weight)
    }
}

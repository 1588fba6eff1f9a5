//! Sparse multivariate polynomials over ℚ(i) with bidegree and weight gradings.
//!
//! Two monomial families share one container: [`Monomial`] in
//! `(z, conj z, u)` for defining functions and [`HoloMonomial`] in `(z, w)`
//! for holomorphic map components. In both, z-type variables carry weight 1
//! and u or w carry weight 2.

mod json;
mod monomial;
mod real;
mod subst;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::Zero;

use crate::number::{Cx, Rational};

pub use json::{HoloPolyJson, HoloTermJson, PolyJson, TermJson};
pub use monomial::{HoloMonomial, Monomial};
pub use real::RealPoly;

pub trait Exponents: Clone + Ord + Eq + Hash + Debug {
    fn weight(&self) -> u32;
    fn mul(&self, other: &Self) -> Self;
    fn one_like(&self) -> Self;
}

/// Sparse polynomial; the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    n: usize,
    terms: BTreeMap<E, Cx>,
}

/// Complex-coefficient polynomial in `z, conj z, u`.
pub type Poly = Polynomial<Monomial>;
/// Polynomial in `z, w`.
pub type HoloPoly = Polynomial<HoloMonomial>;

impl<E: Exponents> Polynomial<E> {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (E, Cx)>) -> Self {
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn monomial(n: usize, m: E, c: Cx) -> Self {
        Polynomial::from_terms(n, [(m, c)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending monomial) order.
    pub fn terms(&self) -> impl Iterator<Item = (&E, &Cx)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &E) -> Cx {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: E, c: &Cx) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &Cx) -> Self {
        if k.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn scale_real(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(k))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_trunc(o, u32::MAX)
    }

    /// Product with every term of weight above `max_weight` discarded.
    pub fn mul_trunc(&self, o: &Self, max_weight: u32) -> Self {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero(self.n);
        }
        let (small, large) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let buckets = large.by_weight();
        let mut acc: HashMap<E, Cx> = HashMap::with_capacity(small.len() * large.len().min(1024));
        for (ma, ca) in &small.terms {
            let wa = ma.weight();
            if wa > max_weight {
                continue;
            }
            let budget = max_weight - wa;
            for (wb, bucket) in buckets.iter() {
                if *wb > budget {
                    break;
                }
                for (mb, cb) in bucket {
                    let prod = ca * *cb;
                    match acc.entry(ma.mul(mb)) {
                        std::collections::hash_map::Entry::Vacant(v) => {
                            v.insert(prod);
                        }
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            *e.get_mut() += &prod;
                        }
                    }
                }
            }
        }
        let terms: BTreeMap<E, Cx> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { n: self.n, terms }
    }

    pub fn pow_trunc(&self, k: u32, max_weight: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = acc.mul_trunc(self, max_weight);
        }
        acc
    }

    fn by_weight(&self) -> BTreeMap<u32, Vec<(&E, &Cx)>> {
        let mut b: BTreeMap<u32, Vec<(&E, &Cx)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            b.entry(m.weight()).or_default().push((m, c));
        }
        b
    }

    fn one_like(&self) -> Self {
        let m = self.terms.keys().next().expect("one_like on zero polynomial").one_like();
        Polynomial::monomial(self.n, m, Cx::one())
    }

    pub fn truncate(&self, max_weight: u32) -> Self {
        self.filter(|m| m.weight() <= max_weight)
    }

    pub fn weight_component(&self, w: u32) -> Self {
        self.filter(|m| m.weight() == w)
    }

    /// Components keyed by weight; they sum back to `self`.
    pub fn weight_decompose(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight())
                .or_insert_with(|| Polynomial::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn min_weight(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::weight).min()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::weight).max()
    }

    pub fn filter(&self, keep: impl Fn(&E) -> bool) -> Self {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub(crate) fn map_monomials(&self, f: impl Fn(&E) -> E) -> Self {
        Polynomial::from_terms(self.n, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn all_coeffs_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }
}

impl<E: Exponents> Debug for Polynomial<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A variable of the `(z, conj z, u)` ring; indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z(usize),
    Zbar(usize),
    U,
}

impl Poly {
    pub fn constant(n: usize, c: Cx) -> Self {
        Poly::monomial(n, Monomial::one(n), c)
    }

    pub fn var(n: usize, v: Var) -> Self {
        let one = Monomial::one(n);
        let idx = raw_index(n, v);
        Poly::monomial(n, one.with_raw(idx, 1), Cx::one())
    }

    pub fn z(n: usize, j: usize) -> Self {
        Poly::var(n, Var::Z(j))
    }

    pub fn zbar(n: usize, j: usize) -> Self {
        Poly::var(n, Var::Zbar(j))
    }

    pub fn u(n: usize) -> Self {
        Poly::var(n, Var::U)
    }

    /// Conjugates every coefficient and swaps z with conj(z).
    pub fn conj(&self) -> Self {
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect() }
    }

    /// `(P + conj P) / 2`
    pub fn re(&self) -> Self {
        self.add(&self.conj()).scale_real(&crate::number::rat(1, 2))
    }

    /// `(P − conj P) / 2i`
    pub fn im(&self) -> Self {
        self.sub(&self.conj()).scale(&Cx::new(Rational::zero(), crate::number::rat(-1, 2)))
    }

    pub fn is_real(&self) -> bool {
        self.reality_defect().is_none()
    }

    /// First monomial whose coefficient is not the conjugate of its mirror's.
    pub fn reality_defect(&self) -> Option<&Monomial> {
        self.terms.iter().find(|(m, c)| self.coeff(&m.conj()) != c.conj()).map(|(m, _)| m)
    }

    /// Sum of the terms of degree `k` in z and `l` in conj(z), any power of u.
    pub fn bidegree_component(&self, k: u32, l: u32) -> Self {
        self.filter(|m| m.z_degree() == k && m.zbar_degree() == l)
    }

    /// Formal partial derivative with z, conj(z), u independent.
    pub fn partial(&self, v: Var) -> Self {
        let idx = raw_index(self.n, v);
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.raw()[idx];
            if e == 0 {
                continue;
            }
            out.add_term(m.with_raw(idx, e - 1), &c.scale(&crate::number::int(e as i64)));
        }
        out
    }

    /// Multiplies by `u^r`.
    pub fn mul_u_pow(&self, r: u32) -> Self {
        self.map_monomials(|m| m.with_raw(0, m.raw()[0] + r as u16))
    }
}

fn raw_index(n: usize, v: Var) -> usize {
    match v {
        Var::U => 0,
        Var::Z(j) => {
            assert!(j < n, "variable index out of range");
            1 + j
        }
        Var::Zbar(j) => {
            assert!(j < n, "variable index out of range");
            1 + n + j
        }
    }
}

impl HoloPoly {
    pub fn constant(n: usize, c: Cx) -> Self {
        HoloPoly::monomial(n, HoloMonomial::one(n), c)
    }

    pub fn z(n: usize, j: usize) -> Self {
        HoloPoly::monomial(n, HoloMonomial::z_var(n, j), Cx::one())
    }

    pub fn w(n: usize) -> Self {
        HoloPoly::monomial(n, HoloMonomial::w_pow(n, 1), Cx::one())
    }

    /// Linear polynomial `Σ c_j z_j`.
    pub fn linear(coeffs: &[Cx]) -> Self {
        let n = coeffs.len();
        HoloPoly::from_terms(n, coeffs.iter().enumerate().map(|(j, c)| (HoloMonomial::z_var(n, j), c.clone())))
    }

    /// Coefficient of `z_j` (the value of ∂/∂z_j at the origin).
    pub fn dz0(&self, j: usize) -> Cx {
        self.coeff(&HoloMonomial::z_var(self.n, j))
    }

    /// Coefficient of `w^k`.
    pub fn w_coeff(&self, k: u32) -> Cx {
        self.coeff(&HoloMonomial::w_pow(self.n, k))
    }
}

use std::fmt;

use smallvec::SmallVec;

use super::Exponents;

type Exps = SmallVec<[u16; 8]>;

/// `z^α · conj(z)^β · u^r`.
///
/// Stored as `[r, α₁..αₙ, β₁..βₙ]`, so the derived ordering is lexicographic
/// on `(uExp, zExp, zbarExp)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Exps,
}

impl Monomial {
    pub fn new(z: &[u32], zbar: &[u32], u: u32) -> Self {
        assert_eq!(z.len(), zbar.len(), "zExp and zbarExp must have equal length");
        let mut exps = Exps::with_capacity(1 + 2 * z.len());
        exps.push(u as u16);
        exps.extend(z.iter().map(|&e| e as u16));
        exps.extend(zbar.iter().map(|&e| e as u16));
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, 1 + 2 * n) }
    }

    pub fn n(&self) -> usize {
        (self.exps.len() - 1) / 2
    }

    pub fn u(&self) -> u32 {
        self.exps[0] as u32
    }

    pub fn z(&self, j: usize) -> u32 {
        self.exps[1 + j] as u32
    }

    pub fn zbar(&self, j: usize) -> u32 {
        self.exps[1 + self.n() + j] as u32
    }

    pub fn z_exps(&self) -> Vec<u32> {
        (0..self.n()).map(|j| self.z(j)).collect()
    }

    pub fn zbar_exps(&self) -> Vec<u32> {
        (0..self.n()).map(|j| self.zbar(j)).collect()
    }

    /// Total degree in z.
    pub fn z_degree(&self) -> u32 {
        (0..self.n()).map(|j| self.z(j)).sum()
    }

    /// Total degree in conj(z).
    pub fn zbar_degree(&self) -> u32 {
        (0..self.n()).map(|j| self.zbar(j)).sum()
    }

    /// Swaps the z and conj(z) exponents.
    pub fn conj(&self) -> Self {
        let n = self.n();
        let mut exps = Exps::with_capacity(self.exps.len());
        exps.push(self.exps[0]);
        exps.extend_from_slice(&self.exps[1 + n..]);
        exps.extend_from_slice(&self.exps[1..1 + n]);
        Monomial { exps }
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.exps
    }

    pub(crate) fn with_raw(&self, idx: usize, value: u16) -> Self {
        let mut m = self.clone();
        m.exps[idx] = value;
        m
    }
}

impl Exponents for Monomial {
    fn weight(&self) -> u32 {
        let n = self.n();
        2 * self.u() + self.exps[1..1 + 2 * n].iter().map(|&e| e as u32).sum::<u32>()
    }

    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.exps.len(), o.exps.len());
        Monomial { exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect() }
    }

    fn one_like(&self) -> Self {
        Monomial::one(self.n())
    }
}

impl fmt::Display for Monomial {
    /// Formats in the surface-language syntax, e.g. `u^2*z1^2*~z2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let pw = |name: String, e: u32| if e == 1 { name } else { format!("{name}^{e}") };
        if self.u() > 0 {
            parts.push(pw("u".into(), self.u()));
        }
        for j in 0..self.n() {
            if self.z(j) > 0 {
                parts.push(pw(format!("z{}", j + 1), self.z(j)));
            }
        }
        for j in 0..self.n() {
            if self.zbar(j) > 0 {
                parts.push(pw(format!("~z{}", j + 1), self.zbar(j)));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `z^α · w^k`, a monomial of a holomorphic map component.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HoloMonomial {
    /// `[k, α₁..αₙ]`
    exps: Exps,
}

impl HoloMonomial {
    pub fn new(z: &[u32], w: u32) -> Self {
        let mut exps = Exps::with_capacity(1 + z.len());
        exps.push(w as u16);
        exps.extend(z.iter().map(|&e| e as u16));
        HoloMonomial { exps }
    }

    pub fn one(n: usize) -> Self {
        HoloMonomial { exps: SmallVec::from_elem(0, 1 + n) }
    }

    /// `z_j` (0-based).
    pub fn z_var(n: usize, j: usize) -> Self {
        let mut m = HoloMonomial::one(n);
        m.exps[1 + j] = 1;
        m
    }

    pub fn w_pow(n: usize, k: u32) -> Self {
        let mut m = HoloMonomial::one(n);
        m.exps[0] = k as u16;
        m
    }

    pub fn n(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn w(&self) -> u32 {
        self.exps[0] as u32
    }

    pub fn z(&self, j: usize) -> u32 {
        self.exps[1 + j] as u32
    }

    pub fn z_exps(&self) -> Vec<u32> {
        (0..self.n()).map(|j| self.z(j)).collect()
    }

    pub fn z_degree(&self) -> u32 {
        (0..self.n()).map(|j| self.z(j)).sum()
    }
}

impl Exponents for HoloMonomial {
    fn weight(&self) -> u32 {
        2 * self.w() + self.z_degree()
    }

    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.exps.len(), o.exps.len());
        HoloMonomial { exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect() }
    }

    fn one_like(&self) -> Self {
        HoloMonomial::one(self.n())
    }
}

impl fmt::Debug for HoloMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.w() > 0 {
            parts.push(format!("w^{}", self.w()));
        }
        for j in 0..self.n() {
            if self.z(j) > 0 {
                parts.push(format!("z{}^{}", j + 1, self.z(j)));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

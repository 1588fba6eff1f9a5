//! Randomized census of normal-form surfaces checking the dimension gap.
//!
//! Each sample has its own ChaCha stream seeded from
//! `sha256("{seed}:{n}:{m}:{index}")`, so the report does not depend on
//! scheduling or thread count.

use std::collections::BTreeMap;

use crmoser::models::{classify, Case};
use crmoser::number::{parse_rational, Cx, Rational};
use crmoser::poly::Monomial;
use crmoser::{check_normal_form, HermitianForm, Hypersurface, Poly, RealPoly};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::parser::to_expression;
use crate::surface::default_kind;

pub const DEFAULT_POOL: [&str; 8] = ["1", "-1", "2", "-2", "1/2", "-1/2", "3", "-1/3"];

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub ns: Vec<usize>,
    pub ms: Vec<usize>,
    pub max_weight: u32,
    pub samples: usize,
    pub seed: u64,
    pub pool: Vec<Rational>,
    /// Draws per sample before giving up on finding a normal-form surface.
    pub max_attempts: usize,
}

impl CensusConfig {
    pub fn new(ns: Vec<usize>, ms: Vec<usize>, samples: usize, seed: u64) -> Self {
        CensusConfig {
            ns,
            ms,
            max_weight: 10,
            samples,
            seed,
            pool: DEFAULT_POOL.iter().map(|s| parse_rational(s).expect("pool literal")).collect(),
            max_attempts: 200,
        }
    }

    /// Admissible `(n, m)` pairs: `n ≥ 2` and `n ≥ 2m`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &n in &self.ns {
            for &m in &self.ms {
                if n >= 2 && n >= 2 * m && !out.contains(&(n, m)) {
                    out.push((n, m));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.pairs().is_empty() {
            return Err(CliError::Usage("no admissible (n, m) pair: need n >= 2 and n >= 2m".into()));
        }
        if self.max_weight < 8 {
            return Err(CliError::Usage(format!("census needs --max-weight >= 8, got {}", self.max_weight)));
        }
        if self.pool.is_empty() || self.pool.iter().all(|c| *c == Rational::from_integer(0.into())) {
            return Err(CliError::Usage("coefficient pool has no nonzero entry".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    /// `Σ c u^r ⟨z,z⟩^k`: must classify as FULL.
    Control,
    /// Products `u^r |z_j|^{2p} ⟨z,z⟩^q` with `j = 1` (m = 0) or `j = n`.
    Structured,
    /// Conjugate-symmetric monomial pairs.
    Random,
    /// Random pairs plus a control term.
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub kind: SampleKind,
    pub attempts: usize,
    #[serde(rename = "F")]
    pub f: String,
    pub case: Case,
    pub dim: usize,
    pub function_of_form_and_u: bool,
    pub gap_ok: bool,
    pub control_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairSummary {
    pub n: usize,
    pub m: usize,
    pub samples: usize,
    pub rejected: usize,
    pub gap_violations: usize,
    pub control_failures: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub cases: BTreeMap<String, usize>,
    pub kinds: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub samples: usize,
    pub rejected: usize,
    pub gap_violations: usize,
    pub control_failures: usize,
    pub pairs: Vec<PairSummary>,
    pub violations: Vec<Sample>,
}

impl CensusReport {
    pub fn clean(&self) -> bool {
        self.gap_violations == 0 && self.control_failures == 0
    }
}

fn sample_rng(seed: u64, n: usize, m: usize, index: usize) -> ChaCha8Rng {
    let digest = Sha256::digest(format!("{seed}:{n}:{m}:{index}").as_bytes());
    ChaCha8Rng::from_seed(digest.into())
}

struct Draw<'a> {
    hf: &'a HermitianForm,
    w: u32,
    pool: &'a [Rational],
    q: RealPoly,
}

impl Draw<'_> {
    fn n(&self) -> usize {
        self.hf.n()
    }

    fn coeff<R: Rng>(&self, rng: &mut R) -> Rational {
        loop {
            let c = self.pool.choose(rng).expect("nonempty pool");
            if *c != Rational::from_integer(0.into()) {
                return c.clone();
            }
        }
    }

    fn abs_pow(&self, j: usize, p: u32) -> Poly {
        let n = self.n();
        Poly::z(n, j).mul(&Poly::zbar(n, j)).pow_trunc(p, u32::MAX)
    }

    fn control_term<R: Rng>(&self, rng: &mut R) -> Poly {
        let k = rng.random_range(4..=self.w / 2);
        let r = rng.random_range(0..=(self.w - 2 * k) / 2);
        self.q.pow(k).mul_u_pow(r).scale_real(&self.coeff(rng)).into_poly()
    }

    fn structured_term<R: Rng>(&self, rng: &mut R, j: usize) -> Poly {
        let d = rng.random_range(2..=self.w / 2);
        let p = rng.random_range(1..=d);
        let r = rng.random_range(0..=(self.w - 2 * d) / 2);
        let qpow = self.q.pow(d - p).into_poly();
        self.abs_pow(j, p).mul(&qpow).mul_u_pow(r).scale_real(&self.coeff(rng))
    }

    fn multi_index<R: Rng>(&self, rng: &mut R, k: u32) -> Vec<u32> {
        let mut e = vec![0; self.n()];
        for _ in 0..k {
            e[rng.random_range(0..self.n())] += 1;
        }
        e
    }

    fn random_pair<R: Rng>(&self, rng: &mut R) -> Poly {
        let n = self.n();
        let k = rng.random_range(2..=self.w - 2);
        let l = rng.random_range(2..=self.w - k);
        let r = rng.random_range(0..=(self.w - k - l) / 2);
        let mono = Monomial::new(&self.multi_index(rng, k), &self.multi_index(rng, l), r);
        let re = self.coeff(rng);
        if mono == mono.conj() {
            return Poly::monomial(n, mono, Cx::real(re));
        }
        let im = if rng.random_bool(0.5) { self.coeff(rng) } else { Rational::from_integer(0.into()) };
        let c = Cx::new(re, im);
        let conj = mono.conj();
        Poly::monomial(n, mono, c.clone()).add(&Poly::monomial(n, conj, c.conj()))
    }

    fn draw<R: Rng>(&self, rng: &mut R, kind: SampleKind) -> Poly {
        let n = self.n();
        let j = if self.hf.m() == 0 { 0 } else { n - 1 };
        let mut f = Poly::zero(n);
        match kind {
            SampleKind::Control => {
                for _ in 0..rng.random_range(1..=2) {
                    f = f.add(&self.control_term(rng));
                }
            }
            SampleKind::Structured => {
                for _ in 0..rng.random_range(1..=2) {
                    f = f.add(&self.structured_term(rng, j));
                }
            }
            SampleKind::Random | SampleKind::Mixed => {
                for _ in 0..rng.random_range(1..=3) {
                    f = f.add(&self.random_pair(rng));
                }
                if kind == SampleKind::Mixed {
                    f = f.add(&self.control_term(rng));
                }
            }
        }
        f
    }
}

fn kind_for(index: usize) -> SampleKind {
    match index % 4 {
        0 => SampleKind::Control,
        1 => SampleKind::Structured,
        2 => SampleKind::Random,
        _ => SampleKind::Mixed,
    }
}

/// Draws until the surface is nonzero and in normal form; `None` after
/// `max_attempts` failures.
pub fn draw_surface(cfg: &CensusConfig, n: usize, m: usize, index: usize) -> Option<(Hypersurface, SampleKind, usize)> {
    let hf = HermitianForm::standard(n, m, default_kind(m)).ok()?;
    let kind = kind_for(index);
    let draw = Draw { hf: &hf, w: cfg.max_weight, pool: &cfg.pool, q: hf.inner_poly() };
    let mut rng = sample_rng(cfg.seed, n, m, index);
    for attempt in 1..=cfg.max_attempts {
        let f = draw.draw(&mut rng, kind);
        if f.is_zero() {
            continue;
        }
        let f = RealPoly::new(f).expect("conjugate-symmetric by construction");
        let h = Hypersurface::new(hf.clone(), f, Some(cfg.max_weight)).expect("weights within bound by construction");
        if check_normal_form(&h).passed() {
            return Some((h, kind, attempt));
        }
    }
    None
}

fn evaluate(cfg: &CensusConfig, n: usize, m: usize, index: usize) -> Option<Sample> {
    let (h, kind, attempts) = draw_surface(cfg, n, m, index)?;
    let c = classify(&h).expect("nonzero normal-form surface");
    let control_ok = kind != SampleKind::Control || (c.case == Case::Full && c.function_of_form_and_u);
    Some(Sample {
        index,
        n,
        m,
        kind,
        attempts,
        f: to_expression(h.f().as_poly()),
        case: c.case,
        dim: c.dim,
        function_of_form_and_u: c.function_of_form_and_u,
        gap_ok: c.gap_ok,
        control_ok,
    })
}

fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn census_inner(cfg: &CensusConfig) -> CensusReport {
    let jobs: Vec<(usize, usize, usize)> =
        cfg.pairs().into_iter().flat_map(|(n, m)| (0..cfg.samples).map(move |i| (n, m, i))).collect();
    let results: Vec<((usize, usize, usize), Option<Sample>)> =
        jobs.par_iter().map(|&(n, m, i)| ((n, m, i), evaluate(cfg, n, m, i))).collect();
    let mut pairs = Vec::new();
    let mut violations = Vec::new();
    for (n, m) in cfg.pairs() {
        let mut s = PairSummary {
            n,
            m,
            samples: 0,
            rejected: 0,
            gap_violations: 0,
            control_failures: 0,
            histogram: BTreeMap::new(),
            cases: BTreeMap::new(),
            kinds: BTreeMap::new(),
        };
        for ((pn, pm, _), r) in &results {
            if (*pn, *pm) != (n, m) {
                continue;
            }
            let Some(sample) = r else {
                s.rejected += 1;
                continue;
            };
            s.samples += 1;
            *s.histogram.entry(sample.dim).or_default() += 1;
            *s.cases.entry(label(&sample.case)).or_default() += 1;
            *s.kinds.entry(label(&sample.kind)).or_default() += 1;
            s.gap_violations += usize::from(!sample.gap_ok);
            s.control_failures += usize::from(!sample.control_ok);
            if !sample.gap_ok || !sample.control_ok {
                violations.push(sample.clone());
            }
        }
        pairs.push(s);
    }
    CensusReport {
        samples: pairs.iter().map(|p| p.samples).sum(),
        rejected: pairs.iter().map(|p| p.rejected).sum(),
        gap_violations: pairs.iter().map(|p| p.gap_violations).sum(),
        control_failures: pairs.iter().map(|p| p.control_failures).sum(),
        pairs,
        violations,
    }
}

/// Runs the census on `threads` worker threads (rayon's default when `None`).
pub fn run_census(cfg: &CensusConfig, threads: Option<usize>) -> Result<CensusReport, CliError> {
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    Ok(pool.install(|| census_inner(cfg)))
}

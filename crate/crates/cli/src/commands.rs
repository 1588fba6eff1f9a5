//! Command implementations: each takes already-read inputs and returns the
//! report body plus whether the mathematical check succeeded.

use crmoser::autgroup::{
    automorphism_residual, extract_params, quadric_automorphism, stabilizer_algebra, AutoParams, AutoParamsJson,
    JetMap, JetMapJson,
};
use crmoser::json::{mat_from_json, mat_to_json, vec_from_json};
use crmoser::models::{
    classify as classify_surface, forbidden_band, verify_scaled_automorphism, ModelDescriptor, ScaledSAuto,
    ScaledSAutoJson,
};
use crmoser::normal_form::is_umbilic_origin;
use crmoser::number::parse_rational;
use crmoser::poly::PolyJson;
use crmoser::check_normal_form;
use serde_json::{json, Value};

use crate::census::{run_census, CensusConfig};
use crate::error::CliError;
use crate::surface::{read_surface, SurfaceSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub body: Value,
    /// False when a mathematical check failed (exit 3).
    pub ok: bool,
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn check(surface: &str, max_weight: Option<u32>) -> Result<Outcome, CliError> {
    let h = read_surface(surface, max_weight)?;
    let report = check_normal_form(&h);
    Ok(Outcome { ok: report.passed(), body: to_value(&report) })
}

pub fn stabdim(surface: &str, max_weight: Option<u32>) -> Result<Outcome, CliError> {
    let h = read_surface(surface, max_weight)?;
    let st = stabilizer_algebra(&h);
    let basis: Vec<Value> = st
        .basis
        .iter()
        .map(|b| json!({"X": mat_to_json(b.x.matrix()), "rho": b.rho.to_string()}))
        .collect();
    let body = json!({
        "dim": st.dim,
        "spherical": st.spherical,
        "isometric": st.is_isometric(),
        "basis": basis,
    });
    Ok(Outcome { body, ok: true })
}

pub fn classify(surface: &str, max_weight: Option<u32>) -> Result<Outcome, CliError> {
    let h = read_surface(surface, max_weight)?;
    let c = classify_surface(&h)?;
    let band = forbidden_band(c.n, c.m);
    let mut body = to_value(&c);
    body["forbidden_band"] = if band.is_empty() { Value::Null } else { json!([band.start(), band.end()]) };
    Ok(Outcome { ok: c.gap_ok, body })
}

/// Inputs of the `verify` command.
pub enum VerifyInput<'a> {
    /// A jet map checked against a surface up to `weight` (default: the jet order).
    Jet { surface: &'a str, map: &'a str, weight: Option<u32> },
    /// `(U, a, λ, σ, r)` turned into the quadric automorphism of order `degree`.
    Params { surface: &'a str, params: &'a str, degree: u32, weight: Option<u32> },
    /// A scaled element of S acting on a model.
    Scaled { model: &'a str, scaled: &'a str },
}

fn parse_params(j: &AutoParamsJson) -> Result<AutoParams, CliError> {
    Ok(AutoParams {
        u: mat_from_json(&j.u)?,
        a: vec_from_json(&j.a)?,
        lambda: parse_rational(&j.lambda)?,
        sigma: j.sigma,
        r: parse_rational(&j.r)?,
    })
}

fn jet_outcome(mode: &str, h: &crmoser::Hypersurface, jet: &JetMap, weight: Option<u32>) -> Result<Outcome, CliError> {
    let w = weight.unwrap_or(jet.d());
    let residual = automorphism_residual(h, jet, w)?;
    let verified = residual.is_zero();
    let body = json!({
        "mode": mode,
        "D": jet.d(),
        "weight": w,
        "verified": verified,
        "residual": to_value(&PolyJson::from(&residual)),
    });
    Ok(Outcome { body, ok: verified })
}

pub fn verify(input: VerifyInput<'_>, max_weight: Option<u32>) -> Result<Outcome, CliError> {
    match input {
        VerifyInput::Jet { surface, map, weight } => {
            let h = read_surface(surface, max_weight)?;
            let j: JetMapJson = serde_json::from_str(map)?;
            jet_outcome("jet", &h, &JetMap::try_from(&j)?, weight)
        }
        VerifyInput::Params { surface, params, degree, weight } => {
            let h = read_surface(surface, max_weight)?;
            let p = parse_params(&serde_json::from_str(params)?)?;
            let jet = quadric_automorphism(&p, h.form(), degree)?;
            let mut out = jet_outcome("params", &h, &jet, weight)?;
            let back = extract_params(&jet, h.form())?;
            let round_trip = back == p;
            out.body["round_trip"] = round_trip.into();
            out.ok &= round_trip;
            Ok(out)
        }
        VerifyInput::Scaled { model, scaled } => {
            let desc: ModelDescriptor = serde_json::from_str(model)?;
            let ms = desc.build()?;
            let sj: ScaledSAutoJson = serde_json::from_str(scaled)?;
            let sa = ScaledSAuto::from_json(&sj, ms.surface.n(), ms.surface.m())?;
            let verified = verify_scaled_automorphism(&ms, &sa)?;
            let scale = sa.scale();
            let body = json!({
                "mode": "scaled",
                "s": sa.s().to_string(),
                "lambda": {
                    "base": scale.base.to_string(),
                    "exponent": scale.exponent.to_string(),
                    "value": scale.value().map(|v| v.to_string()),
                },
                "verified": verified,
            });
            Ok(Outcome { body, ok: verified })
        }
    }
}

pub fn model(desc: &ModelDescriptor) -> Result<Outcome, CliError> {
    let ms = desc.build()?;
    let c = classify_surface(&ms.surface)?;
    let body = json!({
        "family": to_value(&desc.family),
        "surface": to_value(&SurfaceSpec::from_surface(&ms.surface)),
        "normal_form": true,
        "umbilic_origin": is_umbilic_origin(&ms.surface)?,
        "classification": to_value(&c),
    });
    Ok(Outcome { body, ok: true })
}

pub fn census(cfg: &CensusConfig, threads: Option<usize>) -> Result<Outcome, CliError> {
    let report = run_census(cfg, threads)?;
    let mut body = json!({
        "config": {
            "n": cfg.ns,
            "m": cfg.ms,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "max_weight": cfg.max_weight,
            "pool": cfg.pool.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        },
    });
    if let (Value::Object(dst), Value::Object(src)) = (&mut body, to_value(&report)) {
        dst.extend(src);
    }
    Ok(Outcome { ok: report.clean(), body })
}

//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function has a plain-Rust twin returning `Result<_, String>`
//! so the logic can be tested natively; the `#[wasm_bindgen]` wrappers only
//! convert errors into JavaScript exceptions.

use blochlab_core::functions::{lookup_for, parse};
use blochlab_core::geometry::{hyperbolic, pseudo};
use blochlab_core::{density, estimate_sup, parse_cplx, parse_cplx_list, BallSpace, Cplx, DensityKind, DiscMobius, Expr};
use wasm_bindgen::prelude::*;

fn space_of(spec: &str) -> Result<BallSpace, String> {
    spec.parse::<BallSpace>().map_err(|e| e.to_string())
}

fn kind_of(kind: &str) -> Result<DensityKind, String> {
    kind.parse::<DensityKind>().map_err(|e| e.to_string())
}

fn function_of(text: &str, space: &BallSpace) -> Result<Expr, String> {
    match lookup_for(text, space) {
        Some(e) if e.arity == space.n => Ok(e.expr),
        Some(e) => Err(format!("{} needs dimension {}, not {}", e.name, e.arity, space.n)),
        None => parse(text, space.n).map_err(|e| e.to_string()),
    }
}

/// Density values on a `res × res` grid over `[-1, 1]²` in the first
/// coordinate, the remaining coordinates fixed to `rest` (comma-separated,
/// may be empty for the disc). Row-major, top row first (largest imaginary
/// part); cells outside the ball or at singularities are NaN.
pub fn density_grid_impl(kind: &str, space: &str, func: &str, rest: &str, res: usize) -> Result<Vec<f64>, String> {
    let space = space_of(space)?;
    let kind = kind_of(kind)?;
    let f = function_of(func, &space)?;
    let rest = if rest.trim().is_empty() {
        Vec::new()
    } else {
        parse_cplx_list(rest)?
    };
    if rest.len() + 1 != space.n {
        return Err(format!("{space} needs {} fixed coordinates, got {}", space.n - 1, rest.len()));
    }
    if !(2..=512).contains(&res) {
        return Err("resolution must be between 2 and 512".into());
    }
    let step = 2.0 / (res - 1) as f64;
    let mut out = Vec::with_capacity(res * res);
    let mut x = Vec::with_capacity(space.n);
    for row in 0..res {
        let im = 1.0 - row as f64 * step;
        for col in 0..res {
            let re = -1.0 + col as f64 * step;
            x.clear();
            x.push(Cplx::new(re, im));
            x.extend_from_slice(&rest);
            out.push(density(kind, &f, &space, &x).unwrap_or(f64::NAN));
        }
    }
    Ok(out)
}

/// `[ρ, β]` between two points given as comma-separated complex lists.
pub fn distance_impl(space: &str, x: &str, y: &str) -> Result<Vec<f64>, String> {
    let space = space_of(space)?;
    let x = parse_cplx_list(x)?;
    let y = parse_cplx_list(y)?;
    let rho = pseudo(&space, &x, &y).map_err(|e| e.to_string())?;
    let beta = hyperbolic(rho).map_err(|e| e.to_string())?;
    Ok(vec![rho, beta])
}

/// Image of each point of `points` (flattened `[re, im, re, im, …]`) under
/// `w ↦ e^{iα}(a − w)/(1 − āw)`.
pub fn mobius_image_impl(a: &str, alpha: f64, points: &[f64]) -> Result<Vec<f64>, String> {
    let phi = DiscMobius::new(parse_cplx(a)?, alpha).map_err(|e| e.to_string())?;
    Ok(points
        .chunks_exact(2)
        .flat_map(|p| {
            let w = phi.apply(Cplx::new(p[0], p[1]));
            [w.re, w.im]
        })
        .collect())
}

/// Seminorm estimate as JSON: value, witness, samples and shell fit.
pub fn seminorm_impl(kind: &str, space: &str, func: &str, budget: usize, seed: u64) -> Result<String, String> {
    let space = space_of(space)?;
    let kind = kind_of(kind)?;
    let f = function_of(func, &space)?;
    let est = estimate_sup(kind, &f, &space, budget.min(1_000_000), seed).map_err(|e| e.to_string())?;
    let witness: Vec<[f64; 2]> = est.witness.iter().map(|z| [z.re, z.im]).collect();
    let fit = est.shell_fit();
    Ok(format!(
        "{{\"value\":{},\"witness\":{:?},\"samples\":{},\"divergent\":{},\"slope\":{}}}",
        json_num(est.value),
        witness,
        est.samples_used,
        est.divergence.is_some(),
        fit.map_or("null".to_string(), |f| json_num(f.slope))
    ))
}

fn json_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        "null".into()
    }
}

#[wasm_bindgen]
pub fn density_grid(kind: &str, space: &str, func: &str, rest: &str, res: usize) -> Result<Vec<f64>, JsError> {
    density_grid_impl(kind, space, func, rest, res).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn distance(space: &str, x: &str, y: &str) -> Result<Vec<f64>, JsError> {
    distance_impl(space, x, y).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn mobius_image(a: &str, alpha: f64, points: &[f64]) -> Result<Vec<f64>, JsError> {
    mobius_image_impl(a, alpha, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn seminorm(kind: &str, space: &str, func: &str, budget: usize, seed: u64) -> Result<String, JsError> {
    seminorm_impl(kind, space, func, budget, seed).map_err(|e| JsError::new(&e))
}

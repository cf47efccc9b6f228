//! Natural and invariant Bloch densities and their suprema.
//!
//! * natural density: `(1 − ‖x‖²) ‖f′(x)‖`
//! * invariant density: `‖(f ∘ φ_x)′(0)‖` for the automorphism `φ_x` sending
//!   0 to `x`. On the polydisc this is `Σ_k (1 − |x_k|²) |∂f/∂x_k(x)|`; on ℓpⁿ
//!   with `p ∉ {2, ∞}` every automorphism is a linear isometry, so it equals
//!   `‖f′(0)‖` for every `x`.
//!
//! Both seminorms are suprema over an open ball. [`estimate_sup`] reports a
//! lower bound attained at a witness point, along with a divergence record
//! when shell maxima grow like `−log(1 − r)`.

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::automorphism::{pullback_derivative_norm, Automorphism, AutomorphismError};
use crate::functions::{eval, eval_grad, EvalError, Expr};
use crate::geometry::{dual_norm, hyperbolic, pseudo, BallFamily, BallSpace, GeometryError};
use crate::jet::Cplx;
use crate::sampling::{self, SupEstimate};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeminormError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Automorphism(#[from] AutomorphismError),
}

impl SeminormError {
    pub fn is_poisoned(&self) -> bool {
        match self {
            SeminormError::Eval(e) => e.is_poisoned(),
            SeminormError::Automorphism(AutomorphismError::Eval(e)) => e.is_poisoned(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityKind {
    Nat,
    Inv,
}

impl std::str::FromStr for DensityKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nat" => Ok(DensityKind::Nat),
            "inv" => Ok(DensityKind::Inv),
            _ => Err(format!("unknown density kind {s:?} (expected nat or inv)")),
        }
    }
}

pub fn nat_density(f: &Expr, space: &BallSpace, x: &[Cplx]) -> Result<f64, SeminormError> {
    let r = space.check_interior(x)?;
    let (_, grad) = eval_grad(f, x)?;
    Ok((1.0 - r * r) * dual_norm(space, &grad)?)
}

pub fn inv_density(f: &Expr, space: &BallSpace, x: &[Cplx]) -> Result<f64, SeminormError> {
    space.check_interior(x)?;
    match space.family() {
        BallFamily::Polydisc => {
            let (_, grad) = eval_grad(f, x)?;
            Ok(x.iter()
                .zip(&grad)
                .map(|(xk, gk)| (1.0 - xk.norm_sqr()) * gk.norm())
                .sum())
        }
        BallFamily::Hilbert => {
            let phi = Automorphism::point(space, x)?;
            Ok(pullback_derivative_norm(f, &phi, space)?)
        }
        BallFamily::Lp => {
            let (_, grad) = eval_grad(f, &vec![Cplx::new(0.0, 0.0); space.n])?;
            Ok(dual_norm(space, &grad)?)
        }
    }
}

pub fn density(kind: DensityKind, f: &Expr, space: &BallSpace, x: &[Cplx]) -> Result<f64, SeminormError> {
    match kind {
        DensityKind::Nat => nat_density(f, space, x),
        DensityKind::Inv => inv_density(f, space, x),
    }
}

/// Lower bound for `‖f‖_nat` or `‖f‖_inv` from shell sampling plus pattern
/// search. Fails only when `f` does not fit the dimension of `space`.
pub fn estimate_sup(
    kind: DensityKind,
    f: &Expr,
    space: &BallSpace,
    budget: usize,
    seed: u64,
) -> Result<SupEstimate, SeminormError> {
    f.check_arity(space.n)?;
    Ok(sampling::maximize(space, budget, seed, |x| density(kind, f, space, x)))
}

/// `sup |w log w|` over `|w| ≤ 2` (principal branch) by a dense polar sweep.
///
/// In polar form `|w log w| = t·√(ln²t + θ²)` with `θ ∈ (−π, π]`, so the sweep
/// needs no complex logarithm.
pub fn oracle_wlogw_sup() -> f64 {
    static M: OnceLock<f64> = OnceLock::new();
    *M.get_or_init(|| {
        const RADII: usize = 1000;
        const ANGLES: usize = 1000;
        let mut best = 0.0_f64;
        for i in 1..=RADII {
            let t = 2.0 * i as f64 / RADII as f64;
            let lt = t.ln();
            for j in 1..=ANGLES {
                let theta = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / ANGLES as f64;
                best = best.max(t * (lt * lt + theta * theta).sqrt());
            }
        }
        best
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairVerdict {
    pub difference: f64,
    pub beta: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzReport {
    pub verdicts: Vec<PairVerdict>,
    /// Pairs for which no closed-form distance exists, with the reason.
    pub rejected: Vec<String>,
    pub passed: bool,
}

pub const LIPSCHITZ_SLACK: f64 = 1e-8;

/// Checks `|f(x) − f(y)| ≤ M β(x, y)` on each pair.
pub fn lipschitz_check(
    f: &Expr,
    space: &BallSpace,
    pairs: &[(Vec<Cplx>, Vec<Cplx>)],
    m: f64,
) -> Result<LipschitzReport, SeminormError> {
    f.check_arity(space.n)?;
    let mut verdicts = Vec::new();
    let mut rejected = Vec::new();
    for (x, y) in pairs {
        let beta = match pseudo(space, x, y).and_then(hyperbolic) {
            Ok(b) => b,
            Err(e) => {
                rejected.push(e.to_string());
                continue;
            }
        };
        let difference = (eval(f, x)? - eval(f, y)?).norm();
        verdicts.push(PairVerdict {
            difference,
            beta,
            pass: difference <= m * beta + LIPSCHITZ_SLACK,
        });
    }
    let passed = verdicts.iter().all(|v| v.pass);
    Ok(LipschitzReport { verdicts, rejected, passed })
}

//! Supremum estimation over the open unit ball.
//!
//! Points are drawn on radial shells `r_j = 1 − 2^{−j}`: a fixed set of
//! axis-aligned directions first, then seeded random directions. The best
//! sample of each run is polished by a coordinatewise pattern search.
//!
//! A run with budget `B` also replays the runs for `⌊B/2⌋, ⌊B/4⌋, …, 1`, so
//! the schedule for `2B` always contains the one for `B` and the estimate
//! cannot drop when the budget doubles.

use std::f64::consts::{LN_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::BallSpace;
use crate::jet::Cplx;

/// Outermost shell index; `1 − 2^{−29}` keeps samples more than `1e-9`
/// away from the boundary.
pub const MAX_SHELL: u32 = 29;

pub const REFINE_ITERATIONS: usize = 20;

const AXIS_PHASES: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Divergence {
    pub path: String,
    pub slope: f64,
    pub stderr: f64,
}

/// Largest objective value seen on one shell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShellMax {
    pub index: u32,
    pub radius: f64,
    pub value: f64,
}

/// Linear fit of shell maxima against `−log(1 − r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShellFit {
    pub slope: f64,
    pub stderr: f64,
    pub first_shell: u32,
    pub last_shell: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupEstimate {
    /// Lower bound for the supremum, attained at `witness`. Zero with an
    /// empty witness when no sample could be evaluated.
    pub value: f64,
    pub witness: Vec<Cplx>,
    pub samples_used: usize,
    pub poisoned_count: usize,
    pub shells: Vec<ShellMax>,
    pub divergence: Option<Divergence>,
}

impl SupEstimate {
    /// Fit over the outer half of the shells (at least three points).
    pub fn shell_fit(&self) -> Option<ShellFit> {
        let outer: Vec<&ShellMax> = self.shells.iter().filter(|s| s.index >= 1).collect();
        if outer.len() < 3 {
            return None;
        }
        let keep = outer.len().div_ceil(2).max(3);
        let tail = &outer[outer.len() - keep..];
        let xs: Vec<f64> = tail.iter().map(|s| f64::from(s.index) * LN_2).collect();
        let ys: Vec<f64> = tail.iter().map(|s| s.value).collect();
        let (slope, stderr) = linear_fit(&xs, &ys)?;
        Some(ShellFit {
            slope,
            stderr,
            first_shell: tail[0].index,
            last_shell: tail[tail.len() - 1].index,
        })
    }
}

/// Least-squares slope and its standard error.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let m = xs.len();
    if m < 3 || ys.len() != m {
        return None;
    }
    let mf = m as f64;
    let mx = xs.iter().sum::<f64>() / mf;
    let my = ys.iter().sum::<f64>() / mf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - icpt - slope * x).powi(2))
        .sum();
    Some((slope, (sse / (mf - 2.0) / sxx).sqrt()))
}

pub fn shell_radius(j: u32) -> f64 {
    1.0 - 0.5f64.powi(j as i32)
}

/// Number of shells used for a single run with `budget` samples.
pub fn shell_count(budget: usize) -> u32 {
    (budget / 4).clamp(1, MAX_SHELL as usize + 1) as u32
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one shell of one run, independent of evaluation order.
pub fn derive_seed(root: u64, run_budget: usize, shell: u32) -> u64 {
    splitmix(splitmix(splitmix(root) ^ run_budget as u64) ^ u64::from(shell))
}

fn axis_directions(n: usize) -> Vec<Vec<Cplx>> {
    let zero = Cplx::new(0.0, 0.0);
    let mut dirs = Vec::with_capacity(n * AXIS_PHASES + 1);
    for k in 0..n {
        for m in 0..AXIS_PHASES {
            let mut d = vec![zero; n];
            d[k] = Cplx::from_polar(1.0, 2.0 * PI * m as f64 / AXIS_PHASES as f64);
            dirs.push(d);
        }
    }
    if n > 1 {
        dirs.push(vec![Cplx::new(1.0, 0.0); n]);
    }
    dirs
}

fn random_direction(rng: &mut ChaCha8Rng, n: usize, unimodular: bool) -> Vec<Cplx> {
    (0..n)
        .map(|_| {
            let theta = rng.gen_range(0.0..2.0 * PI);
            let rho = if unimodular { 1.0 } else { rng.gen::<f64>().sqrt() };
            Cplx::from_polar(rho, theta)
        })
        .collect()
}

fn scaled_to(space: &BallSpace, dir: &[Cplx], r: f64) -> Option<Vec<Cplx>> {
    let nd = space.norm.apply(dir);
    if !(nd > 0.0) {
        return None;
    }
    Some(dir.iter().map(|z| z * (r / nd)).collect())
}

/// The points of a single run, grouped by shell.
pub fn shell_points(space: &BallSpace, budget: usize, seed: u64) -> Vec<(u32, Vec<Vec<Cplx>>)> {
    let budget = budget.max(1);
    let shells = shell_count(budget);
    let axes = axis_directions(space.n);
    let outer = budget - 1;
    let per = if shells > 1 { outer / (shells as usize - 1) } else { 0 };
    let extra = if shells > 1 { outer % (shells as usize - 1) } else { 0 };
    let mut out = vec![(0, vec![vec![Cplx::new(0.0, 0.0); space.n]])];
    for j in 1..shells {
        let count = per + usize::from(((j - 1) as usize) < extra);
        let r = shell_radius(j);
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, budget, j));
        let mut pts = Vec::with_capacity(count);
        for i in 0..count {
            let dir = match axes.get(i) {
                Some(d) => d.clone(),
                None => random_direction(&mut rng, space.n, i % 2 == 1),
            };
            if let Some(p) = scaled_to(space, &dir, r) {
                pts.push(p);
            }
        }
        out.push((j, pts));
    }
    out
}

#[derive(Debug, Clone)]
struct RunOutcome {
    best: Option<(f64, Vec<Cplx>)>,
    shells: Vec<ShellMax>,
    used: usize,
    poisoned: usize,
}

struct Evaluated {
    best: Option<(f64, Vec<Cplx>)>,
    used: usize,
    poisoned: usize,
}

fn evaluate_shell<F, E>(pts: &[Vec<Cplx>], objective: &F) -> Evaluated
where
    F: Fn(&[Cplx]) -> Result<f64, E>,
{
    let mut best: Option<(f64, Vec<Cplx>)> = None;
    let mut poisoned = 0;
    for p in pts {
        match objective(p) {
            Ok(v) if v.is_finite() => {
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, p.clone()));
                }
            }
            _ => poisoned += 1,
        }
    }
    Evaluated { best, used: pts.len(), poisoned }
}

/// Coordinatewise pattern search on real and imaginary parts, staying in
/// the closed ball of radius `cap`.
fn refine<F, E>(space: &BallSpace, start: (f64, Vec<Cplx>), cap: f64, objective: &F) -> (f64, Vec<Cplx>, usize, usize)
where
    F: Fn(&[Cplx]) -> Result<f64, E>,
{
    let (mut fx, mut x) = start;
    let mut step = 0.125;
    let (mut used, mut poisoned) = (0, 0);
    for _ in 0..REFINE_ITERATIONS {
        let mut improved = false;
        for coord in 0..2 * space.n {
            for sign in [1.0, -1.0] {
                let mut y = x.clone();
                let delta = sign * step;
                if coord % 2 == 0 {
                    y[coord / 2].re += delta;
                } else {
                    y[coord / 2].im += delta;
                }
                let ny = space.norm.apply(&y);
                if ny > cap {
                    y.iter_mut().for_each(|z| *z *= cap / ny);
                }
                used += 1;
                match objective(&y) {
                    Ok(v) if v.is_finite() => {
                        if v > fx {
                            fx = v;
                            x = y;
                            improved = true;
                            break;
                        }
                    }
                    Ok(_) | Err(_) => poisoned += 1,
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (fx, x, used, poisoned)
}

fn run_once<F, E>(space: &BallSpace, budget: usize, seed: u64, objective: &F) -> RunOutcome
where
    F: Fn(&[Cplx]) -> Result<f64, E> + Sync,
{
    let groups = shell_points(space, budget, seed);
    let evaluate = |(j, pts): &(u32, Vec<Vec<Cplx>>)| (*j, evaluate_shell(pts, objective));
    #[cfg(feature = "parallel")]
    let results: Vec<(u32, Evaluated)> = {
        use rayon::prelude::*;
        groups.par_iter().map(evaluate).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<(u32, Evaluated)> = groups.iter().map(evaluate).collect();

    let mut best: Option<(f64, Vec<Cplx>)> = None;
    let (mut used, mut poisoned) = (0, 0);
    let mut shells = Vec::new();
    for (j, ev) in results {
        used += ev.used;
        poisoned += ev.poisoned;
        if let Some((v, p)) = ev.best {
            shells.push(ShellMax { index: j, radius: shell_radius(j), value: v });
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, p));
            }
        }
    }
    if let Some(start) = best.clone() {
        let cap = shell_radius(shell_count(budget.max(1)) - 1);
        let (fx, x, u, p) = refine(space, start, cap, objective);
        used += u;
        poisoned += p;
        if best.as_ref().is_none_or(|(b, _)| fx > *b) {
            best = Some((fx, x));
        }
    }
    RunOutcome { best, shells, used, poisoned }
}

/// Maximizes `objective` over the ball. Errors and non-finite values are
/// skipped and counted as poisoned.
pub fn maximize<F, E>(space: &BallSpace, budget: usize, seed: u64, objective: F) -> SupEstimate
where
    F: Fn(&[Cplx]) -> Result<f64, E> + Sync,
{
    let mut budgets = Vec::new();
    let mut b = budget.max(1);
    while b >= 1 {
        budgets.push(b);
        b /= 2;
    }

    let mut best: Option<(f64, Vec<Cplx>)> = None;
    let mut shells: Vec<ShellMax> = Vec::new();
    let (mut used, mut poisoned) = (0, 0);
    for &b in &budgets {
        let run = run_once(space, b, seed, &objective);
        used += run.used;
        poisoned += run.poisoned;
        if let Some((v, p)) = run.best {
            if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                best = Some((v, p));
            }
        }
        for s in run.shells {
            match shells.iter_mut().find(|t| t.index == s.index) {
                Some(t) if s.value > t.value => t.value = s.value,
                Some(_) => {}
                None => shells.push(s),
            }
        }
    }
    shells.sort_by_key(|s| s.index);

    let (value, witness) = best.unwrap_or((0.0, Vec::new()));
    let mut est = SupEstimate {
        value,
        witness,
        samples_used: used,
        poisoned_count: poisoned,
        shells,
        divergence: None,
    };
    if let Some(fit) = est.shell_fit() {
        if fit.slope > 0.5 && fit.stderr < 0.1 {
            est.divergence = Some(Divergence {
                path: format!(
                    "shell maxima against -log(1-r), shells {}..={} (r = 1 - 2^-j)",
                    fit.first_shell, fit.last_shell
                ),
                slope: fit.slope,
                stderr: fit.stderr,
            });
        }
    }
    est
}

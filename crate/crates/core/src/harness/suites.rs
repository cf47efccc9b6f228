//! Suite bodies. Every check name carries the instance it runs on in
//! brackets, e.g. `inv_shell_slope[linf:2]`.

use std::f64::consts::{LN_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CheckResult;
use crate::automorphism::{
    pullback_derivative_norm, Automorphism, DiscMobius, GenPermIsometry, HilbertMobius, PolydiscAuto,
};
use crate::functions::{
    catalog, eval, eval_grad, lookup, lookup_for, mobius_expr, random_polynomial, sup_norm_estimate,
    sup_norm_search, AnalyticFacts, CatalogEntry, Expr,
};
use crate::geometry::{
    dual_norm, hyperbolic, norm, pseudo, pseudo_disc, pseudo_hilbert, schwarz_rho_bound,
    BallFamily, BallSpace,
};
use crate::jet::{Cplx, LogBranch};
use crate::sampling::{derive_seed, shell_points, SupEstimate};
use crate::seminorm::{estimate_sup, inv_density, lipschitz_check, nat_density, oracle_wlogw_sup, DensityKind};

/// Which check witnesses which result: `(result, suite, check-name prefix)`.
pub const COVERAGE: &[(&str, &str, &str)] = &[
    ("classical Bloch seminorm is bounded by the sup norm", "classical", "embedding_random_polynomials"),
    ("bounded functions form a proper subspace of the Bloch space", "classical", "log_is_unbounded"),
    ("pseudohyperbolic distance is Möbius invariant", "metric", "mobius_invariance"),
    ("holomorphic maps contract the pseudohyperbolic distance", "metric", "contractivity"),
    ("Bloch functions are Lipschitz for the hyperbolic distance", "metric", "lipschitz"),
    ("natural seminorm", "bidisc_separation", "nat_estimate_upper"),
    ("invariant seminorm via automorphisms", "chain_rule", "pullback_matches_density"),
    ("natural seminorm is dominated by the invariant one", "chain_rule", "nat_le_inv"),
    ("polydisc automorphisms", "chain_rule", "involution[linf:2]"),
    ("derivative of a polydisc automorphism at zero", "chain_rule", "derivative_at_zero"),
    ("invariant seminorm on the polydisc as a weighted sum", "chain_rule", "composition_matches_closed_form"),
    ("nat-Bloch is strictly smaller than inv-Bloch on the bidisc", "bidisc_separation", "inv_density_exceeds_log"),
    ("ℓp automorphisms are linear isometries", "lp_separation", "isometry_invariance"),
    ("inv-Bloch is strictly smaller than nat-Bloch on ℓp balls", "lp_separation", "nat_unbounded"),
    ("Schwarz lemma on a sub-ball", "schwarz", "lemma_bound"),
    ("distance bound on sub-balls", "schwarz", "corollary_bound"),
    ("Schwarz-Pick bound", "schwarz_pick", "mobius_bound"),
    ("bounded functions are nat-Bloch", "hinfty_nat", "nat_le_2sup"),
    ("bounded functions are inv-Bloch", "hinfty_inv", "inv_le_2sup"),
    ("log(1 − L(x)) is Bloch and unbounded", "unbounded_bloch", "nat_le_2"),
    ("log(1 − z) on the disc", "unbounded_bloch", "nat_le_2[linf:1]"),
];

fn c(re: f64, im: f64) -> Cplx {
    Cplx::new(re, im)
}

fn tag_hash(tag: &str) -> usize {
    // FNV-1a, only needs to be stable
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h as usize
}

fn rng_for(seed: u64, tag: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, tag_hash(tag), 0))
}

fn random_disc<R: Rng>(rng: &mut R, rmax: f64) -> Cplx {
    let r = rmax * rng.gen::<f64>().sqrt();
    Cplx::from_polar(r, rng.gen_range(-PI..PI))
}

fn random_phase<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(-PI..PI)
}

/// A random point of `space` with norm below `rmax`.
pub fn random_point<R: Rng>(rng: &mut R, space: &BallSpace, rmax: f64) -> Vec<Cplx> {
    let v: Vec<Cplx> = (0..space.n).map(|_| random_disc(rng, 1.0)).collect();
    let nv = space.norm.apply(&v);
    if nv == 0.0 {
        return v;
    }
    let r = rmax * rng.gen::<f64>().powf(1.0 / (2.0 * space.n as f64));
    v.into_iter().map(|z| z * (r / nv)).collect()
}

fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

fn random_polydisc_auto<R: Rng>(rng: &mut R, n: usize, rmax: f64) -> Automorphism {
    let comps = (0..n)
        .map(|_| DiscMobius::new(random_disc(rng, rmax), random_phase(rng)).expect("interior"))
        .collect();
    let sigma = random_permutation(rng, n);
    Automorphism::Polydisc(PolydiscAuto::new(comps, sigma).expect("valid"))
}

fn random_isometry<R: Rng>(rng: &mut R, n: usize) -> Automorphism {
    let sigma = random_permutation(rng, n);
    let phases = (0..n).map(|_| Cplx::from_polar(1.0, random_phase(rng))).collect();
    Automorphism::Isometry(GenPermIsometry::new(sigma, phases).expect("valid"))
}

fn spaces() -> [BallSpace; 7] {
    [
        BallSpace::disc(),
        BallSpace::polydisc(2),
        BallSpace::hilbert(2),
        BallSpace::lp(3.0, 2).expect("valid"),
        BallSpace::lp(1.5, 2).expect("valid"),
        BallSpace::lp(1.0, 2).expect("valid"),
        BallSpace::lp(4.0, 3).expect("valid"),
    ]
}

fn entry(name: &str) -> CatalogEntry {
    lookup(name).unwrap_or_else(|| panic!("catalog entry {name}"))
}

fn entry_for(name: &str, space: &BallSpace) -> CatalogEntry {
    lookup_for(name, space).unwrap_or_else(|| panic!("catalog entry {name} on {space}"))
}

fn seminorm(kind: DensityKind, f: &Expr, space: &BallSpace, budget: usize, seed: u64) -> SupEstimate {
    estimate_sup(kind, f, space, budget, seed).expect("arity checked by catalog")
}

/// Running maximum of `value` that remembers a label for the worst case.
struct Worst {
    value: f64,
    label: String,
    count: usize,
}

impl Worst {
    fn new() -> Self {
        Worst {
            value: f64::NEG_INFINITY,
            label: String::new(),
            count: 0,
        }
    }

    fn push(&mut self, v: f64, label: impl FnOnce() -> String) {
        self.count += 1;
        // a NaN anywhere poisons the whole check
        if self.value.is_nan() {
            return;
        }
        if v.is_nan() || v > self.value {
            self.value = v;
            self.label = label();
        }
    }

    fn details(&self, what: &str) -> String {
        if self.label.is_empty() {
            format!("{} {what}", self.count)
        } else {
            format!("{} {what}; worst at {}", self.count, self.label)
        }
    }
}

/// Bounded functions for the H∞ suites: the bounded catalog entries, then
/// seeded random polynomials and Möbius products up to `count`.
pub fn bounded_family(count: usize, seed: u64) -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = catalog().into_iter().filter(|e| e.facts.bounded).collect();
    let disc = BallSpace::disc();
    let bidisc = BallSpace::polydisc(2);
    let extra = [
        (disc, 5u32),
        (bidisc, 3),
        (BallSpace::hilbert(2), 3),
        (BallSpace::lp(3.0, 2).expect("valid"), 3),
        (BallSpace::polydisc(3), 2),
    ];
    let mut rng = rng_for(seed, "bounded_family");
    let mut i = 0usize;
    while out.len() < count {
        let k = i % (extra.len() + 1);
        let e = if k < extra.len() {
            let (space, deg) = extra[k];
            let degree = 1 + (i as u32 / 6) % deg;
            let name = format!("random_poly_{i}[{space}]");
            let expr = random_polynomial(space.n, degree, derive_seed(seed, i, 1));
            CatalogEntry {
                name,
                arity: space.n,
                text: expr.to_string(),
                expr,
                space,
                facts: AnalyticFacts {
                    bounded: true,
                    ..Default::default()
                },
            }
        } else {
            let a = random_disc(&mut rng, 0.95);
            let b = random_disc(&mut rng, 0.95);
            let expr = mobius_expr(a, random_phase(&mut rng), 1) * mobius_expr(b, random_phase(&mut rng), 2);
            CatalogEntry {
                name: format!("random_mobius_product_{i}[{bidisc}]"),
                arity: 2,
                text: expr.to_string(),
                expr,
                space: bidisc,
                facts: AnalyticFacts {
                    bounded: true,
                    sup_norm: Some(1.0),
                    ..Default::default()
                },
            }
        };
        out.push(e);
        i += 1;
    }
    out.truncate(count);
    out
}

pub(super) fn classical(seed: u64, budget: usize) -> Vec<CheckResult> {
    const S: &str = "classical";
    let disc = BallSpace::disc();
    let mut out = Vec::new();

    let points: Vec<Vec<Cplx>> = shell_points(&disc, 10_000, seed)
        .into_iter()
        .flat_map(|(_, pts)| pts)
        .take(10_000)
        .collect();
    let mut worst = Worst::new();
    for i in 0..200u64 {
        let degree = 1 + (i % 5) as u32;
        let f = random_polynomial(1, degree, derive_seed(seed, i as usize, 2));
        let mut dmax = 0.0_f64;
        let mut smax = 0.0_f64;
        for x in &points {
            if let Ok(d) = nat_density(&f, &disc, x) {
                dmax = dmax.max(d);
            }
            if let Ok(v) = eval(&f, x) {
                smax = smax.max(v.norm());
            }
        }
        worst.push(dmax - smax, || format!("polynomial {i} (degree {degree})"));
    }
    out.push(CheckResult::at_most(
        S,
        "embedding_random_polynomials[linf:1]",
        worst.value,
        0.0,
        1e-8,
        format!("{} over {} shared points", worst.details("polynomials"), points.len()),
    ));

    let konst = Cplx::new(0.7, -0.2);
    let f = Expr::constant(konst);
    let est = seminorm(DensityKind::Nat, &f, &disc, budget, seed).value;
    out.push(CheckResult::close(S, "constant_has_zero_seminorm[linf:1]", est, 0.0, 0.0, "f = 0.7-0.2i"));
    out.push(CheckResult::at_most(
        S,
        "constant_below_sup[linf:1]",
        est,
        konst.norm(),
        1e-8,
        "seminorm of a constant vs its modulus",
    ));

    let mut worst = Worst::new();
    for e in catalog().into_iter().filter(|e| e.space == disc && e.facts.bounded) {
        let Some(sup) = e.facts.sup_norm else { continue };
        let est = seminorm(DensityKind::Nat, &e.expr, &disc, budget, seed).value;
        worst.push(est - sup, || e.name.clone());
    }
    out.push(CheckResult::at_most(
        S,
        "seminorm_below_known_sup[linf:1]",
        worst.value,
        0.0,
        1e-8,
        worst.details("bounded catalog functions with known sup"),
    ));

    let h = entry("h");
    let nat = seminorm(DensityKind::Nat, &h.expr, &disc, budget, seed).value;
    out.push(CheckResult::at_most(S, "log_is_bloch[linf:1]", nat, 2.0, 1e-9, "h = log(1-z)"));
    let sup = sup_norm_estimate(&h.expr, &disc, budget, seed);
    out.push(CheckResult::at_least(
        S,
        "log_is_unbounded[linf:1]",
        sup,
        5.0,
        0.0,
        "sup |log(1-z)| estimate; a bounded function could not exceed its Bloch bound this way",
    ));
    out
}

/// Bounded test functions with `|f| ≤ 1` on `space`.
fn unit_bounded<R: Rng>(rng: &mut R, space: &BallSpace) -> Expr {
    match space.family() {
        BallFamily::Polydisc => (1..=space.n)
            .map(|k| mobius_expr(random_disc(rng, 0.9), random_phase(rng), k))
            .reduce(|a, b| a * b)
            .expect("n ≥ 1"),
        _ => {
            // φ_a(⟨x, u⟩) with a unit-norm functional u
            let u: Vec<Cplx> = (0..space.n).map(|_| random_disc(rng, 1.0)).collect();
            let nu = dual_norm(space, &u).expect("dims");
            let u: Vec<Cplx> = u.into_iter().map(|z| z / nu).collect();
            let a = random_disc(rng, 0.9);
            let l = Expr::Linear(u);
            (Expr::constant(a) - l.clone()) / (Expr::real(1.0) - Expr::constant(a.conj()) * l)
        }
    }
}

pub(super) fn schwarz(seed: u64) -> Vec<CheckResult> {
    const S: &str = "schwarz";
    let mut out = Vec::new();
    let tested = [BallSpace::disc(), BallSpace::polydisc(2), BallSpace::hilbert(2), BallSpace::lp(3.0, 2).expect("valid")];

    for space in tested {
        let mut rng = rng_for(seed, &format!("schwarz_lemma{space}"));
        let mut worst = Worst::new();
        for _ in 0..1000 {
            let f = unit_bounded(&mut rng, &space);
            let x0 = random_point(&mut rng, &space, 0.8);
            let nx = norm(&space, &x0).expect("dims");
            let r = (1.0 - nx) * rng.gen_range(0.2..1.0);
            let dir = random_point(&mut rng, &space, 1.0);
            let nd = norm(&space, &dir).expect("dims").max(f64::MIN_POSITIVE);
            let t = r * rng.gen::<f64>();
            let y: Vec<Cplx> = x0.iter().zip(&dir).map(|(a, d)| a + d * (t / nd)).collect();
            let (Ok(fx), Ok(fy)) = (eval(&f, &x0), eval(&f, &y)) else { continue };
            let g_norm = 1.0 + fx.norm();
            let dist = norm(&space, &y.iter().zip(&x0).map(|(a, b)| a - b).collect::<Vec<_>>()).expect("dims");
            worst.push((fy - fx).norm() - g_norm * dist / r, || format!("x0 = {x0:?}"));
        }
        out.push(CheckResult::at_most(
            S,
            &format!("lemma_bound[{space}]"),
            worst.value,
            0.0,
            1e-8,
            worst.details("g = f - f(x0) with |f| ≤ 1 on B(x0, r)"),
        ));
    }

    for space in tested {
        let rho_ok = space.family() != BallFamily::Lp;
        let mut rng = rng_for(seed, &format!("schwarz_corollary{space}"));
        if rho_ok {
            let mut worst = Worst::new();
            for _ in 0..1000 {
                let x = random_point(&mut rng, &space, 0.95);
                let nx = norm(&space, &x).expect("dims");
                let r = (1.0 - nx) * rng.gen_range(0.05..1.0);
                let dir = random_point(&mut rng, &space, 1.0);
                let nd = norm(&space, &dir).expect("dims").max(f64::MIN_POSITIVE);
                let t = r * rng.gen::<f64>() * 0.999_999;
                let y: Vec<Cplx> = x.iter().zip(&dir).map(|(a, d)| a + d * (t / nd)).collect();
                if let Ok((lhs, rhs)) = schwarz_rho_bound(&x, &y, r, &space) {
                    worst.push(lhs - rhs, || format!("x = {x:?}, r = {r}"));
                }
            }
            out.push(CheckResult::at_most(
                S,
                &format!("corollary_bound[{space}]"),
                worst.value,
                0.0,
                1e-10,
                worst.details("pairs with y in B(x, r)"),
            ));
        } else {
            out.push(CheckResult::skipped(
                S,
                &format!("corollary_bound[{space}]"),
                "ρ has no closed form between two nonzero points of this ball",
            ));
        }
        let mut worst = Worst::new();
        for _ in 0..1000 {
            let y = random_point(&mut rng, &space, 0.999);
            let zero = vec![c(0.0, 0.0); space.n];
            if let Ok((lhs, rhs)) = schwarz_rho_bound(&zero, &y, 1.0, &space) {
                worst.push((lhs - rhs).abs(), || format!("y = {y:?}"));
            }
        }
        out.push(CheckResult::close(
            S,
            &format!("corollary_equality_at_center[{space}]"),
            worst.value,
            0.0,
            1e-12,
            worst.details("points with x = 0, r = 1"),
        ));
    }
    out
}

pub(super) fn schwarz_pick(seed: u64) -> Vec<CheckResult> {
    const S: &str = "schwarz_pick";
    let mut out = Vec::new();
    let mut rng = rng_for(seed, "schwarz_pick");
    let mut worst = Worst::new();
    for i in 0..1000 {
        let a = random_disc(&mut rng, 0.99);
        let mut f = mobius_expr(a, random_phase(&mut rng), 1);
        if i % 2 == 1 {
            f = f * mobius_expr(random_disc(&mut rng, 0.99), random_phase(&mut rng), 1);
        }
        let x0 = random_disc(&mut rng, 0.999);
        let Ok((v, g)) = eval_grad(&f, &[x0]) else { continue };
        let lhs = (1.0 - x0.norm()) * g[0].norm();
        let rhs = 1.0 - v.norm_sqr();
        worst.push(lhs - rhs, || format!("{f} at {x0}"));
    }
    out.push(CheckResult::at_most(
        S,
        "mobius_bound[linf:1]",
        worst.value,
        0.0,
        1e-8,
        worst.details("Möbius maps and products of two"),
    ));

    let bidisc = BallSpace::polydisc(2);
    let mut worst = Worst::new();
    for _ in 0..1000 {
        let f = unit_bounded(&mut rng, &bidisc);
        let x0 = random_point(&mut rng, &bidisc, 0.999);
        let Ok((v, g)) = eval_grad(&f, &x0) else { continue };
        let lhs = (1.0 - norm(&bidisc, &x0).expect("dims")) * dual_norm(&bidisc, &g).expect("dims");
        worst.push(lhs - (1.0 - v.norm_sqr()), || format!("{f} at {x0:?}"));
    }
    out.push(CheckResult::at_most(
        S,
        "mobius_bound[linf:2]",
        worst.value,
        0.0,
        1e-8,
        worst.details("products φ_a(x1)·φ_b(x2)"),
    ));

    let f = entry("mobius_0.3").expr;
    let (v, g) = eval_grad(&f, &[c(0.0, 0.0)]).expect("regular at 0");
    let lhs = g[0].norm();
    out.push(CheckResult::close(
        S,
        "equality_at_origin[linf:1]",
        lhs,
        1.0 - v.norm_sqr(),
        1e-10,
        "φ_0.3 at x0 = 0",
    ));
    out.push(CheckResult::close(S, "value_at_origin[linf:1]", lhs, 0.91, 1e-10, "1 - |a|² for a = 0.3"));
    out
}

struct Bounds {
    name: String,
    space: BallSpace,
    f0: f64,
    sup: f64,
    value: f64,
}

fn family_budget(budget: usize) -> usize {
    budget.clamp(64, 10_000)
}

fn family_estimates(kind: DensityKind, seed: u64, budget: usize) -> Vec<Bounds> {
    let b = family_budget(budget);
    bounded_family(100, seed)
        .into_iter()
        .map(|e| {
            let zero = vec![c(0.0, 0.0); e.space.n];
            Bounds {
                f0: eval(&e.expr, &zero).map(|v| v.norm()).unwrap_or(f64::NAN),
                sup: sup_norm_estimate(&e.expr, &e.space, b, seed),
                value: seminorm(kind, &e.expr, &e.space, b, seed).value,
                name: e.name,
                space: e.space,
            }
        })
        .collect()
}

pub(super) fn hinfty_nat(seed: u64, budget: usize) -> Vec<CheckResult> {
    const S: &str = "hinfty_nat";
    let est = family_estimates(DensityKind::Nat, seed, budget);
    let b = family_budget(budget);
    let mut w2 = Worst::new();
    let mut w3 = Worst::new();
    for e in &est {
        w2.push(e.value - 2.0 * e.sup, || format!("{} ({})", e.name, e.space));
        w3.push(e.f0 + e.value - 3.0 * e.sup, || format!("{} ({})", e.name, e.space));
    }
    vec![
        CheckResult::at_most(
            S,
            "nat_le_2sup[mixed]",
            w2.value,
            0.0,
            1e-6,
            format!("{}; budget {b}", w2.details("bounded functions")),
        ),
        CheckResult::at_most(
            S,
            "bloch_norm_le_3sup[mixed]",
            w3.value,
            0.0,
            1e-6,
            format!("|f(0)| + nat vs 3 sup; {}", w3.details("bounded functions")),
        ),
    ]
}

pub(super) fn hinfty_inv(seed: u64, budget: usize) -> Vec<CheckResult> {
    const S: &str = "hinfty_inv";
    let est = family_estimates(DensityKind::Inv, seed, budget);
    let mut poly = Worst::new();
    let mut other = Worst::new();
    for e in &est {
        let w = if e.space.family() == BallFamily::Polydisc { &mut poly } else { &mut other };
        w.push(e.value - 2.0 * e.sup, || format!("{} ({})", e.name, e.space));
    }
    vec![
        CheckResult::at_most(S, "inv_le_2sup[polydisc]", poly.value, 0.0, 1e-6, poly.details("bounded functions")),
        CheckResult::at_most(
            S,
            "inv_le_2sup[l2:2,lp:3:2]",
            other.value,
            0.0,
            1e-6,
            other.details("bounded functions"),
        ),
    ]
}

pub(super) fn bidisc_separation(seed: u64, budget: usize) -> Vec<CheckResult> {
    const S: &str = "bidisc_separation";
    let bidisc = BallSpace::polydisc(2);
    let f = entry("countex1").expr;
    let mut out = Vec::new();
    for n in [10u32, 100, 1000] {
        let nf = f64::from(n);
        let x = [c(1.0 - 1.0 / nf, 0.0), c(0.0, 0.0)];
        let d = inv_density(&f, &bidisc, &x).unwrap_or(f64::NAN);
        out.push(CheckResult::at_least(
            S,
            &format!("inv_density_exceeds_log[linf:2,n={n}]"),
            d,
            1.0 + nf.ln(),
            1e-9,
            format!("inv density at (1-1/{n}, 0) vs 1 + ln {n}"),
        ));
        let closed = 2.0 - 1.0 / nf + (nf.ln().powi(2) + PI * PI).sqrt();
        out.push(CheckResult::close(
            S,
            &format!("inv_density_closed_form[linf:2,n={n}]"),
            d,
            closed,
            1e-9,
            "2 - 1/n + sqrt(ln²n + π²)",
        ));
    }

    let m = oracle_wlogw_sup();
    out.push(CheckResult::close(
        S,
        "oracle_closed_form",
        m,
        2.0 * (LN_2 * LN_2 + PI * PI).sqrt(),
        1e-9,
        "sup |w log w| over |w| ≤ 2, attained at w = -2",
    ));

    let nat = seminorm(DensityKind::Nat, &f, &bidisc, budget, seed);
    out.push(CheckResult::at_least(
        S,
        "nat_estimate_lower[linf:2]",
        nat.value,
        2.0,
        0.0,
        format!("budget {budget}, witness {:?}", nat.witness),
    ));
    out.push(CheckResult::at_most(
        S,
        "nat_estimate_upper[linf:2]",
        nat.value,
        4.0 + m,
        1e-8,
        format!("4 + M with M = {m:.6}"),
    ));

    let inv = seminorm(DensityKind::Inv, &f, &bidisc, budget, seed);
    match inv.shell_fit() {
        Some(fit) => out.push(CheckResult::close(
            S,
            "inv_shell_slope[linf:2]",
            fit.slope,
            1.0,
            0.05,
            format!(
                "shells {}..={} regressed on -ln(1-r); stderr {:.3e}",
                fit.first_shell, fit.last_shell, fit.stderr
            ),
        )),
        None => out.push(CheckResult::skipped(S, "inv_shell_slope[linf:2]", "budget too small for a fit")),
    }
    out.push(CheckResult::at_least(
        S,
        "inv_divergence_flagged[linf:2]",
        if inv.divergence.is_some() { 1.0 } else { 0.0 },
        1.0,
        0.0,
        match &inv.divergence {
            Some(d) => format!("along {}", d.path),
            None => "no divergence flagged".to_string(),
        },
    ));
    out
}

pub(super) fn lp_separation(seed: u64, budget: usize) -> Vec<CheckResult> {
    const S: &str = "lp_separation";
    let l3 = BallSpace::lp(3.0, 2).expect("valid");
    let f = entry_for("reciprocal", &l3).expr;
    let mut out = Vec::new();
    for t in [0.9, 0.99, 0.999] {
        let d = nat_density(&f, &l3, &[c(t, 0.0), c(0.0, 0.0)]).unwrap_or(f64::NAN);
        out.push(CheckResult::close(
            S,
            &format!("nat_density_closed_form[lp:3:2,t={t}]"),
            d,
            (1.0 + t) / (1.0 - t),
            1e-9,
            "(1+t)/(1-t)",
        ));
    }
    let nat = seminorm(DensityKind::Nat, &f, &l3, budget, seed);
    out.push(CheckResult::at_least(
        S,
        "nat_unbounded[lp:3:2]",
        nat.value,
        1e6,
        0.0,
        format!("nat estimate at budget {budget}"),
    ));

    for space in [l3, BallSpace::lp(1.5, 2).expect("valid"), BallSpace::lp(4.0, 3).expect("valid")] {
        let f = entry_for("reciprocal", &space).expr;
        let inv = seminorm(DensityKind::Inv, &f, &space, budget, seed);
        out.push(CheckResult::close(
            S,
            &format!("inv_seminorm_exact[{space}]"),
            inv.value,
            1.0,
            1e-12,
            "inv estimate of 1/(1-x1)",
        ));
        let mut rng = rng_for(seed, &format!("lp_independence{space}"));
        let base = inv_density(&f, &space, &vec![c(0.0, 0.0); space.n]).unwrap_or(f64::NAN);
        let mut worst = Worst::new();
        for _ in 0..100 {
            let x = random_point(&mut rng, &space, 0.999);
            let d = inv_density(&f, &space, &x).unwrap_or(f64::NAN);
            worst.push((d - base).abs(), || format!("x = {x:?}"));
        }
        out.push(CheckResult::close(
            S,
            &format!("inv_x_independent[{space}]"),
            worst.value,
            0.0,
            1e-12,
            worst.details("random points"),
        ));
    }

    let mut rng = rng_for(seed, "lp_isometries");
    let mut worst = Worst::new();
    let fns: Vec<CatalogEntry> = catalog().into_iter().filter(|e| e.space == l3).collect();
    for i in 0..100 {
        let e = &fns[i % fns.len()];
        let u = random_isometry(&mut rng, 2);
        let x = random_point(&mut rng, &l3, 0.99);
        let ux = u.apply(&x).expect("interior");
        let nrm = (norm(&l3, &ux).expect("dims") - norm(&l3, &x).expect("dims")).abs();
        let pulled = pullback_derivative_norm(&e.expr, &u, &l3).unwrap_or(f64::NAN);
        let direct = inv_density(&e.expr, &l3, &x).unwrap_or(f64::NAN);
        worst.push(nrm.max((pulled - direct).abs()), || format!("{} with {u:?}", e.name));
    }
    out.push(CheckResult::close(
        S,
        "isometry_invariance[lp:3:2]",
        worst.value,
        0.0,
        1e-12,
        worst.details("random generalized permutations (norm and pulled-back derivative)"),
    ));
    out
}

pub(super) fn unbounded_bloch(seed: u64, budget: usize) -> Vec<CheckResult> {
    const S: &str = "unbounded_bloch";
    let mut out = Vec::new();
    for space in spaces() {
        let f = if space.n == 1 {
            entry("h").expr
        } else {
            entry_for("log_functional", &space).expr
        };
        let nat = seminorm(DensityKind::Nat, &f, &space, budget, seed);
        out.push(CheckResult::at_most(
            S,
            &format!("nat_le_2[{space}]"),
            nat.value,
            2.0,
            1e-9,
            format!("log(1-x1), budget {budget}"),
        ));
        let inv = seminorm(DensityKind::Inv, &f, &space, budget, seed);
        out.push(CheckResult::at_most(
            S,
            &format!("inv_le_2[{space}]"),
            inv.value,
            2.0,
            1e-9,
            format!("log(1-x1), budget {budget}"),
        ));
        let sup = sup_norm_search(&f, &space, budget, seed);
        out.push(CheckResult::at_least(
            S,
            &format!("sup_exceeds_5[{space}]"),
            sup.value,
            5.0,
            0.0,
            format!("witness {:?}", sup.witness),
        ));
    }

    // a norm-one functional that is not a coordinate
    let mut rng = rng_for(seed, "functional");
    for space in [BallSpace::polydisc(2), BallSpace::hilbert(2), BallSpace::lp(3.0, 2).expect("valid")] {
        let u: Vec<Cplx> = (0..space.n).map(|_| random_disc(&mut rng, 1.0)).collect();
        let nu = dual_norm(&space, &u).expect("dims");
        let l = Expr::Linear(u.into_iter().map(|z| z / nu).collect());
        let f = (Expr::real(1.0) - l).log(LogBranch::Principal);
        let nat = seminorm(DensityKind::Nat, &f, &space, budget, seed);
        out.push(CheckResult::at_most(
            S,
            &format!("nat_le_2_functional[{space}]"),
            nat.value,
            2.0,
            1e-9,
            format!("log(1-L(x)), ‖L‖ = 1: {f}"),
        ));
    }
    out
}

pub(super) fn metric(seed: u64, budget: usize) -> Vec<CheckResult> {
    const S: &str = "metric";
    let mut out = Vec::new();
    let disc = BallSpace::disc();
    let bidisc = BallSpace::polydisc(2);
    let l2 = BallSpace::hilbert(2);

    let mut rng = rng_for(seed, "metric_invariance");
    let mut worst = Worst::new();
    for _ in 0..1000 {
        let phi = DiscMobius::new(random_disc(&mut rng, 0.99), random_phase(&mut rng)).expect("interior");
        let (z, w) = (random_disc(&mut rng, 0.999), random_disc(&mut rng, 0.999));
        let before = pseudo_disc(z, w).unwrap_or(f64::NAN);
        let after = pseudo_disc(phi.apply(z), phi.apply(w)).unwrap_or(f64::NAN);
        worst.push((after - before).abs(), || format!("{phi:?}, z = {z}, w = {w}"));
    }
    out.push(CheckResult::close(S, "mobius_invariance[linf:1]", worst.value, 0.0, 1e-10, worst.details("triples")));

    for space in [bidisc, l2] {
        let mut worst = Worst::new();
        for _ in 0..1000 {
            let phi = if space == bidisc {
                random_polydisc_auto(&mut rng, 2, 0.99)
            } else {
                Automorphism::Hilbert(HilbertMobius::new(random_point(&mut rng, &l2, 0.99)).expect("interior"))
            };
            let x = random_point(&mut rng, &space, 0.999);
            let y = random_point(&mut rng, &space, 0.999);
            let before = pseudo(&space, &x, &y).unwrap_or(f64::NAN);
            let (Ok(px), Ok(py)) = (phi.apply(&x), phi.apply(&y)) else { continue };
            let after = pseudo(&space, &px, &py).unwrap_or(f64::NAN);
            worst.push((after - before).abs(), || format!("x = {x:?}, y = {y:?}"));
        }
        out.push(CheckResult::close(
            S,
            &format!("mobius_invariance[{space}]"),
            worst.value,
            0.0,
            1e-10,
            worst.details("triples"),
        ));
    }

    // self-maps of the disc
    let mut worst = Worst::new();
    for i in 0..1000 {
        let a = random_disc(&mut rng, 0.9);
        let b = random_disc(&mut rng, 0.9);
        let g: Box<dyn Fn(Cplx) -> Cplx> = match i % 4 {
            0 => Box::new(|z: Cplx| z * z),
            1 => Box::new(move |z: Cplx| 0.8 * (a - z) / (1.0 - a.conj() * z)),
            2 => Box::new(move |z: Cplx| {
                let m = (a - z) / (1.0 - a.conj() * z);
                m * m * m
            }),
            _ => Box::new(move |z: Cplx| (a - z) / (1.0 - a.conj() * z) * (b - z) / (1.0 - b.conj() * z)),
        };
        let (z, w) = (random_disc(&mut rng, 0.999), random_disc(&mut rng, 0.999));
        let before = pseudo_disc(z, w).unwrap_or(f64::NAN);
        let after = pseudo_disc(g(z), g(w)).unwrap_or(f64::NAN);
        worst.push(after - before, || format!("map {} at z = {z}, w = {w}", i % 4));
    }
    out.push(CheckResult::at_most(S, "contractivity[linf:1]", worst.value, 0.0, 1e-10, worst.details("pairs")));

    for space in [bidisc, l2] {
        let mut worst = Worst::new();
        for _ in 0..1000 {
            let f = unit_bounded(&mut rng, &space);
            let x = random_point(&mut rng, &space, 0.999);
            let y = random_point(&mut rng, &space, 0.999);
            let (Ok(fx), Ok(fy)) = (eval(&f, &x), eval(&f, &y)) else { continue };
            let before = pseudo(&space, &x, &y).unwrap_or(f64::NAN);
            let after = pseudo_disc(fx, fy).unwrap_or(f64::NAN);
            worst.push(after - before, || format!("{f}: x = {x:?}, y = {y:?}"));
        }
        out.push(CheckResult::at_most(
            S,
            &format!("contractivity[{space}->linf:1]"),
            worst.value,
            0.0,
            1e-10,
            worst.details("pairs"),
        ));
    }

    for space in [disc, bidisc, l2] {
        let mut worst = Worst::new();
        for _ in 0..1000 {
            let x = random_point(&mut rng, &space, 0.999);
            let y = random_point(&mut rng, &space, 0.999);
            let z = random_point(&mut rng, &space, 0.999);
            let r = |a: &[Cplx], b: &[Cplx]| pseudo(&space, a, b).unwrap_or(f64::NAN);
            let excess = (r(&x, &z) - r(&x, &y) - r(&y, &z))
                .max((r(&x, &y) - r(&y, &x)).abs())
                .max(r(&x, &x));
            worst.push(excess, || format!("x = {x:?}, y = {y:?}, z = {z:?}"));
        }
        out.push(CheckResult::at_most(
            S,
            &format!("metric_axioms[{space}]"),
            worst.value,
            0.0,
            1e-12,
            worst.details("triples (symmetry, identity, triangle)"),
        ));
    }

    let mut worst = Worst::new();
    for _ in 0..1000 {
        let x = random_point(&mut rng, &l2, 0.99);
        let y = random_point(&mut rng, &l2, 0.99);
        let phi = HilbertMobius::new(x.clone()).expect("interior");
        let direct = pseudo_hilbert(&x, &y).unwrap_or(f64::NAN);
        let moved = l2.norm.apply(&phi.apply_point(&y));
        worst.push((direct - moved).abs(), || format!("x = {x:?}, y = {y:?}"));
    }
    out.push(CheckResult::close(
        S,
        "closed_form_matches_mobius[l2:2]",
        worst.value,
        0.0,
        1e-10,
        worst.details("pairs, ρ(x, y) vs ‖φ_x(y)‖"),
    ));

    let mut worst = Worst::new();
    let mut prev = -1.0;
    for i in 0..1000 {
        let b = hyperbolic(f64::from(i) / 1000.0).unwrap_or(f64::NAN);
        worst.push(prev - b, || format!("ρ = {}", f64::from(i) / 1000.0));
        prev = b;
    }
    out.push(CheckResult::at_most(
        S,
        "hyperbolic_monotone",
        worst.value,
        0.0,
        0.0,
        "β on a uniform ρ grid must increase",
    ));

    // Lipschitz bounds with known seminorms: ‖h‖ = 2 on the disc, and
    // ‖f‖_inv ≤ 1 for |f| ≤ 1 on the bidisc
    let h = entry("h");
    let est = seminorm(DensityKind::Nat, &h.expr, &disc, budget, seed).value;
    let lip_cases: [(&str, Expr, BallSpace, f64); 2] = [
        ("h", h.expr.clone(), disc, 2.0),
        ("bidisc_mobius_product", entry("bidisc_mobius_product").expr, bidisc, 1.0),
    ];
    for (name, f, space, m) in lip_cases {
        let pairs: Vec<(Vec<Cplx>, Vec<Cplx>)> = (0..1000)
            .map(|_| (random_point(&mut rng, &space, 0.999), random_point(&mut rng, &space, 0.999)))
            .collect();
        match lipschitz_check(&f, &space, &pairs, m) {
            Ok(rep) => {
                let worst = rep
                    .verdicts
                    .iter()
                    .map(|v| v.difference - m * v.beta)
                    .fold(f64::NEG_INFINITY, f64::max);
                let mut details = format!("{name}, M = {m}, {} pairs", rep.verdicts.len());
                if name == "h" {
                    details.push_str(&format!(", nat estimate {est:.9}"));
                }
                out.push(CheckResult::at_most(S, &format!("lipschitz[{space}]"), worst, 0.0, 1e-8, details));
            }
            Err(e) => out.push(CheckResult::at_most(S, &format!("lipschitz[{space}]"), f64::NAN, 0.0, 1e-8, e.to_string())),
        }
    }
    out
}

/// Gradient of `f ∘ φ_x` at zero, by substituting the automorphism's
/// component expressions and differentiating the composite.
fn composed_gradient(f: &Expr, phi: &Automorphism) -> Option<Vec<Cplx>> {
    let composite = f.substitute(&phi.to_exprs());
    let zero = vec![c(0.0, 0.0); phi.dim()];
    eval_grad(&composite, &zero).ok().map(|(_, g)| g)
}

pub(super) fn chain_rule(seed: u64) -> Vec<CheckResult> {
    const S: &str = "chain_rule";
    let mut out = Vec::new();
    let bidisc = BallSpace::polydisc(2);
    let l2 = BallSpace::hilbert(2);
    let mut rng = rng_for(seed, "chain_rule");

    let bidisc_fns: Vec<CatalogEntry> = catalog().into_iter().filter(|e| e.space == bidisc).collect();
    let mut worst = Worst::new();
    for i in 0..1000 {
        let e = &bidisc_fns[i % bidisc_fns.len()];
        let x = random_point(&mut rng, &bidisc, 0.95);
        let phi = Automorphism::point(&bidisc, &x).expect("interior");
        let Some(g) = composed_gradient(&e.expr, &phi) else { continue };
        let auto = dual_norm(&bidisc, &g).expect("dims");
        let Ok((_, grad)) = eval_grad(&e.expr, &x) else { continue };
        let closed: f64 = x.iter().zip(&grad).map(|(xk, gk)| (1.0 - xk.norm_sqr()) * gk.norm()).sum();
        worst.push((auto - closed).abs(), || format!("{} at {x:?}", e.name));
    }
    out.push(CheckResult::close(
        S,
        "composition_matches_closed_form[linf:2]",
        worst.value,
        0.0,
        1e-9,
        worst.details("(function, point) pairs"),
    ));

    for space in [bidisc, l2] {
        let fns: Vec<CatalogEntry> = catalog().into_iter().filter(|e| e.space == space).collect();
        let mut worst = Worst::new();
        for i in 0..300 {
            let e = &fns[i % fns.len()];
            let x = random_point(&mut rng, &space, 0.95);
            let phi = Automorphism::point(&space, &x).expect("interior");
            let pulled = pullback_derivative_norm(&e.expr, &phi, &space).unwrap_or(f64::NAN);
            let auto = composed_gradient(&e.expr, &phi)
                .map(|g| dual_norm(&space, &g).expect("dims"))
                .unwrap_or(f64::NAN);
            let dens = inv_density(&e.expr, &space, &x).unwrap_or(f64::NAN);
            worst.push((pulled - dens).abs().max((auto - dens).abs()), || format!("{} at {x:?}", e.name));
        }
        out.push(CheckResult::close(
            S,
            &format!("pullback_matches_density[{space}]"),
            worst.value,
            0.0,
            1e-9,
            worst.details("(function, point) pairs"),
        ));

        let mut worst = Worst::new();
        for i in 0..1000 {
            let e = &fns[i % fns.len()];
            let x = random_point(&mut rng, &space, 0.999);
            let (Ok(n), Ok(v)) = (nat_density(&e.expr, &space, &x), inv_density(&e.expr, &space, &x)) else {
                continue;
            };
            worst.push((n - v) / v.max(1.0), || format!("{} at {x:?}", e.name));
        }
        out.push(CheckResult::at_most(
            S,
            &format!("nat_le_inv[{space}]"),
            worst.value,
            0.0,
            1e-12,
            worst.details("points, (nat - inv)/max(1, inv)"),
        ));

        let mut involution = Worst::new();
        let mut inside = Worst::new();
        for _ in 0..1000 {
            let x = random_point(&mut rng, &space, 0.99);
            let y = random_point(&mut rng, &space, 0.999);
            let phi = Automorphism::point(&space, &x).expect("interior");
            let Ok(py) = phi.apply(&y) else { continue };
            inside.push(norm(&space, &py).unwrap_or(f64::NAN), || format!("x = {x:?}, y = {y:?}"));
            let Ok(back) = phi.apply(&py) else { continue };
            let err = back.iter().zip(&y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            involution.push(err, || format!("x = {x:?}, y = {y:?}"));
        }
        out.push(CheckResult::close(
            S,
            &format!("involution[{space}]"),
            involution.value,
            0.0,
            1e-9,
            involution.details("pairs, φ_x(φ_x(y)) = y"),
        ));
        let pass = inside.value < 1.0;
        out.push(CheckResult::at_most(
            S,
            &format!("maps_into_ball[{space}]"),
            inside.value,
            if pass { 1.0 } else { 0.0 },
            0.0,
            inside.details("images, largest norm"),
        ));

        let mut worst = Worst::new();
        for _ in 0..100 {
            let phi = if space == bidisc {
                random_polydisc_auto(&mut rng, 2, 0.95)
            } else {
                Automorphism::point(&space, &random_point(&mut rng, &space, 0.95)).expect("interior")
            };
            let d = phi.derivative_at_zero();
            let h = 1e-6;
            for j in 0..space.n {
                for (dir, scale) in [(c(1.0, 0.0), c(1.0, 0.0)), (c(0.0, 1.0), c(0.0, -1.0))] {
                    let mut p = vec![c(0.0, 0.0); space.n];
                    let mut m = p.clone();
                    p[j] = dir * h;
                    m[j] = -dir * h;
                    let (Ok(fp), Ok(fm)) = (phi.apply(&p), phi.apply(&m)) else { continue };
                    for i in 0..space.n {
                        let fd = (fp[i] - fm[i]) / (2.0 * h) * scale;
                        worst.push((fd - d.get(i, j)).norm(), || format!("{phi:?}, entry ({i}, {j})"));
                    }
                }
            }
        }
        out.push(CheckResult::close(
            S,
            &format!("derivative_at_zero[{space}]"),
            worst.value,
            0.0,
            1e-6,
            worst.details("matrix entries vs central differences"),
        ));
    }
    out
}

/// Largest gradient component error against central differences with
/// step `1e-5` along the real and imaginary axes, relative to the largest
/// gradient component.
fn fd_gradient_error(f: &Expr, x: &[Cplx]) -> Option<f64> {
    let (_, grad) = eval_grad(f, x).ok()?;
    let scale = grad.iter().map(|g| g.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let h = 1e-5;
    let mut worst = 0.0_f64;
    for k in 0..x.len() {
        for (dir, div) in [(c(h, 0.0), c(2.0 * h, 0.0)), (c(0.0, h), c(0.0, 2.0 * h))] {
            let mut p = x.to_vec();
            let mut m = x.to_vec();
            p[k] += dir;
            m[k] -= dir;
            let fd = (eval(f, &p).ok()? - eval(f, &m).ok()?) / div;
            worst = worst.max((fd - grad[k]).norm() / scale);
        }
    }
    Some(worst)
}

/// Directional derivatives along `+1` and `+i` from a five-point stencil;
/// returns `|D₁ − D_i / i| / max(1, |D₁|)` over coordinates.
fn cauchy_riemann_gap(f: &Expr, x: &[Cplx]) -> Option<f64> {
    let h = 1e-3;
    let mut worst = 0.0_f64;
    for k in 0..x.len() {
        let mut d = [c(0.0, 0.0); 2];
        for (slot, dir) in [c(1.0, 0.0), c(0.0, 1.0)].into_iter().enumerate() {
            let at = |t: f64| {
                let mut p = x.to_vec();
                p[k] += dir * t;
                eval(f, &p)
            };
            let s = (at(-2.0 * h).ok()? - 8.0 * at(-h).ok()? + 8.0 * at(h).ok()? - at(2.0 * h).ok()?) / (12.0 * h);
            d[slot] = s / dir;
        }
        worst = worst.max((d[0] - d[1]).norm() / d[0].norm().max(1.0));
    }
    Some(worst)
}

pub(super) fn numerics(seed: u64, budget: usize) -> Vec<CheckResult> {
    const S: &str = "numerics";
    let mut out = Vec::new();
    let mut rng = rng_for(seed, "numerics");
    let all = catalog();

    let mut fd = Worst::new();
    let mut cr = Worst::new();
    for e in &all {
        for _ in 0..100 {
            let x = random_point(&mut rng, &e.space, 0.9);
            if let Some(err) = fd_gradient_error(&e.expr, &x) {
                fd.push(err, || format!("{} at {x:?}", e.name));
            }
            let x = random_point(&mut rng, &e.space, 0.5);
            if let Some(gap) = cauchy_riemann_gap(&e.expr, &x) {
                cr.push(gap, || format!("{} at {x:?}", e.name));
            }
        }
    }
    out.push(CheckResult::at_most(
        S,
        "gradient_vs_finite_differences[catalog]",
        fd.value,
        1e-6,
        0.0,
        format!("{} entries; {}", all.len(), fd.details("points, ‖x‖ ≤ 0.9")),
    ));
    out.push(CheckResult::at_most(
        S,
        "cauchy_riemann[catalog]",
        cr.value,
        1e-9,
        0.0,
        cr.details("points, ‖x‖ ≤ 0.5, five-point stencil"),
    ));

    let l3 = BallSpace::lp(3.0, 2).expect("valid");
    let cases: [(&str, BallSpace, Option<DensityKind>); 10] = [
        ("countex1", BallSpace::polydisc(2), Some(DensityKind::Nat)),
        ("countex1", BallSpace::polydisc(2), Some(DensityKind::Inv)),
        ("h", BallSpace::disc(), Some(DensityKind::Nat)),
        ("h", BallSpace::disc(), None),
        ("reciprocal", l3, Some(DensityKind::Nat)),
        ("reciprocal", l3, Some(DensityKind::Inv)),
        ("log_functional", BallSpace::hilbert(2), Some(DensityKind::Inv)),
        ("mobius_0.9", BallSpace::disc(), Some(DensityKind::Nat)),
        ("poly_bidisc_0", BallSpace::polydisc(2), Some(DensityKind::Inv)),
        ("zw", BallSpace::hilbert(2), Some(DensityKind::Nat)),
    ];
    let b = budget.clamp(16, 4096);
    let mut worst = Worst::new();
    let mut repeat = 0.0_f64;
    for (name, space, kind) in cases {
        let f = entry_for(name, &space).expr;
        let run = |budget: usize| match kind {
            Some(k) => seminorm(k, &f, &space, budget, seed).value,
            None => sup_norm_estimate(&f, &space, budget, seed),
        };
        let (small, large) = (run(b), run(2 * b));
        repeat = repeat.max((run(b) - small).abs());
        let label = match kind {
            Some(k) => format!("{k:?}"),
            None => "sup".to_string(),
        };
        worst.push(small - large, || format!("{name} {label} on {space}"));
    }
    out.push(CheckResult::at_most(
        S,
        "monotone_under_doubling[cases]",
        worst.value,
        0.0,
        0.0,
        format!("budget {b} vs {}; {}", 2 * b, worst.details("(function, space) cases")),
    ));
    out.push(CheckResult::close(
        S,
        "deterministic_estimates[cases]",
        repeat,
        0.0,
        0.0,
        "repeat runs with the same seed",
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_points_are_interior() {
        let mut rng = rng_for(1, "t");
        for space in spaces() {
            for _ in 0..200 {
                let x = random_point(&mut rng, &space, 0.999);
                assert!(norm(&space, &x).unwrap() < 0.999 + 1e-12);
            }
        }
    }

    #[test]
    fn family_has_requested_size() {
        let fam = bounded_family(100, 3);
        assert_eq!(fam.len(), 100);
        assert!(fam.iter().all(|e| e.facts.bounded && e.expr.check_arity(e.space.n).is_ok()));
        let again: Vec<String> = bounded_family(100, 3).into_iter().map(|e| e.text).collect();
        assert_eq!(again, fam.iter().map(|e| e.text.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn worst_keeps_nan() {
        let mut w = Worst::new();
        w.push(1.0, || "a".into());
        w.push(f64::NAN, || "b".into());
        w.push(2.0, || "c".into());
        assert!(w.value.is_nan());
        assert_eq!(w.label, "b");
    }
}

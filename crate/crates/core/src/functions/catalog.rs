//! Named functions used by the verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{parse, Expr};
use crate::geometry::BallSpace;
use crate::jet::Cplx;
use crate::seminorm::oracle_wlogw_sup;

/// What is known in closed form about a catalog function.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AnalyticFacts {
    pub bounded: bool,
    /// Exact `‖f‖∞` when known.
    pub sup_norm: Option<f64>,
    /// Upper bound for the natural Bloch seminorm.
    pub nat_upper: Option<f64>,
    /// Exact invariant seminorm when known.
    pub inv_exact: Option<f64>,
    /// Registered singular points (e.g. poles or log branch points).
    pub singular_points: Vec<Vec<Cplx>>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub arity: usize,
    pub text: String,
    pub expr: Expr,
    pub space: BallSpace,
    pub facts: AnalyticFacts,
}

impl CatalogEntry {
    fn new(name: impl Into<String>, text: &str, space: BallSpace, facts: AnalyticFacts) -> Self {
        let expr = parse(text, space.n).unwrap_or_else(|e| panic!("catalog entry {text}: {e}"));
        CatalogEntry {
            name: name.into(),
            arity: space.n,
            text: text.to_string(),
            expr,
            space,
            facts,
        }
    }

    fn from_expr(name: impl Into<String>, expr: Expr, space: BallSpace, facts: AnalyticFacts) -> Self {
        CatalogEntry {
            name: name.into(),
            arity: space.n,
            text: expr.to_string(),
            expr,
            space,
            facts,
        }
    }

    /// Name without the `[space]` suffix.
    pub fn base_name(&self) -> &str {
        self.name.split('[').next().unwrap_or(&self.name)
    }
}

fn bounded(sup: Option<f64>) -> AnalyticFacts {
    AnalyticFacts {
        bounded: true,
        sup_norm: sup,
        ..Default::default()
    }
}

fn point(n: usize, first: f64) -> Vec<Cplx> {
    let mut v = vec![Cplx::new(0.0, 0.0); n];
    v[0] = Cplx::new(first, 0.0);
    v
}

/// Disc Möbius map `e^{iα}(a − z)/(1 − āz)` in the variable `x{k}`.
pub fn mobius_expr(a: Cplx, alpha: f64, k: usize) -> Expr {
    let z = Expr::var(k);
    let core = (Expr::constant(a) - z.clone()) / (Expr::real(1.0) - Expr::constant(a.conj()) * z);
    if alpha == 0.0 {
        core
    } else {
        Expr::constant(Cplx::from_polar(1.0, alpha)) * core
    }
}

/// Polynomial of total degree at most `degree` in `arity` variables with
/// coefficients drawn uniformly from `[-1, 1]²` and scaled by `1/(degree+1)`.
pub fn random_polynomial(arity: usize, degree: u32, seed: u64) -> Expr {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 / f64::from(degree + 1);
    let mut terms: Vec<Expr> = Vec::new();
    for alpha in multi_indices(arity, degree) {
        let c = Cplx::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)) * scale;
        let mono = alpha
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| if e == 1 { Expr::var(k + 1) } else { Expr::var(k + 1).pow(e) })
            .fold(Expr::constant(c), |acc, m| acc * m);
        terms.push(mono);
    }
    terms.into_iter().reduce(|a, b| a + b).unwrap_or(Expr::real(0.0))
}

fn multi_indices(arity: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[k] = e;
            rec(k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    rec(0, degree, &mut vec![0; arity], &mut out);
    out
}

/// Every named function, each tagged with the space it is meant for.
pub fn catalog() -> Vec<CatalogEntry> {
    let disc = BallSpace::disc();
    let bidisc = BallSpace::polydisc(2);
    let l2 = BallSpace::hilbert(2);
    let l3 = BallSpace::lp(3.0, 2).expect("valid");
    let l32 = BallSpace::lp(1.5, 2).expect("valid");
    let l1 = BallSpace::lp(1.0, 2).expect("valid");
    let l4_3 = BallSpace::lp(4.0, 3).expect("valid");

    let mut out = vec![
        CatalogEntry::new(
            "countex1",
            "(x2+1)*log2pi(x1-1)",
            bidisc,
            AnalyticFacts {
                nat_upper: Some(4.0 + oracle_wlogw_sup()),
                singular_points: vec![point(2, 1.0)],
                ..Default::default()
            },
        ),
        CatalogEntry::new(
            "h",
            "log(1-x1)",
            disc,
            AnalyticFacts {
                nat_upper: Some(2.0),
                singular_points: vec![point(1, 1.0)],
                ..Default::default()
            },
        ),
    ];

    for space in [bidisc, l2, l3, l32, l1, l4_3] {
        out.push(CatalogEntry::new(
            format!("log_functional[{space}]"),
            "log(1-x1)",
            space,
            AnalyticFacts {
                nat_upper: Some(2.0),
                singular_points: vec![point(space.n, 1.0)],
                ..Default::default()
            },
        ));
    }
    for space in [l3, l32, l4_3] {
        out.push(CatalogEntry::new(
            format!("reciprocal[{space}]"),
            "1/(1-x1)",
            space,
            AnalyticFacts {
                inv_exact: Some(1.0),
                singular_points: vec![point(space.n, 1.0)],
                ..Default::default()
            },
        ));
    }

    let one = Some(1.0);
    let mobius = [
        ("mobius_0.3", Cplx::new(0.3, 0.0), 0.0),
        ("mobius_0.5i", Cplx::new(0.0, 0.5), 0.0),
        ("mobius_rot", Cplx::new(-0.6, 0.2), 1.1),
        ("mobius_0.9", Cplx::new(0.9, 0.0), 0.0),
    ];
    for (name, a, alpha) in mobius {
        out.push(CatalogEntry::from_expr(name, mobius_expr(a, alpha, 1), disc, bounded(one)));
    }
    out.push(CatalogEntry::from_expr(
        "mobius_product",
        mobius_expr(Cplx::new(0.3, 0.0), 0.0, 1) * mobius_expr(Cplx::new(0.0, 0.5), 0.0, 1),
        disc,
        bounded(one),
    ));
    out.push(CatalogEntry::from_expr(
        "bidisc_mobius_product",
        mobius_expr(Cplx::new(0.3, 0.0), 0.0, 1) * mobius_expr(Cplx::new(-0.2, 0.4), 0.5, 2),
        bidisc,
        bounded(one),
    ));

    let monomials = [
        ("z", "x1", disc, 1.0),
        ("z_cubed", "x1^3", disc, 1.0),
        ("exp_z", "exp(x1)", disc, std::f64::consts::E),
        ("zw", "x1*x2", bidisc, 1.0),
        ("z2w3", "x1^2*x2^3", bidisc, 1.0),
        ("zw[l2:2]", "x1*x2", l2, 0.5),
    ];
    for (name, text, space, sup) in monomials {
        out.push(CatalogEntry::new(name, text, space, bounded(Some(sup))));
    }

    for s in 0..4u64 {
        for (tag, space, degree) in [("disc", disc, 5), ("bidisc", bidisc, 3), ("l2", l2, 3), ("l3", l3, 3)] {
            out.push(CatalogEntry::from_expr(
                format!("poly_{tag}_{s}"),
                random_polynomial(space.n, degree, 0xB10C + s),
                space,
                bounded(None),
            ));
        }
    }
    out
}

/// Looks up by exact name, then by base name (ignoring any `[space]` tag).
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    let all = catalog();
    if let Some(e) = all.iter().find(|e| e.name == name) {
        return Some(e.clone());
    }
    all.into_iter().find(|e| e.base_name() == name)
}

/// Prefers the entry whose intended space equals `space`.
pub fn lookup_for(name: &str, space: &BallSpace) -> Option<CatalogEntry> {
    let all = catalog();
    if let Some(e) = all.iter().find(|e| e.name == name) {
        return Some(e.clone());
    }
    let mut matching = all.into_iter().filter(|e| e.base_name() == name);
    let first = matching.next()?;
    if first.space == *space {
        return Some(first);
    }
    Some(matching.find(|e| e.space == *space).unwrap_or(first))
}

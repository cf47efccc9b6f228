//! Automorphisms of the supported balls.
//!
//! Three families are represented: coordinatewise Möbius maps of the
//! polydisc (the disc is the case `n = 1`), Möbius maps of the Euclidean
//! ball, and generalized permutations, which are the surjective linear
//! isometries of ℓpⁿ for `p ≠ 2`.

use thiserror::Error;

use crate::functions::{eval_grad, EvalError, Expr};
use crate::geometry::{dual_norm, BallFamily, BallSpace, GeometryError, NormTag};
use crate::jet::Cplx;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AutomorphismError {
    #[error("Möbius parameter must lie in the open unit ball (norm {0})")]
    ParameterOutsideBall(f64),
    #[error("not a permutation of 0..{0}")]
    BadPermutation(usize),
    #[error("phase {0} is not unimodular")]
    BadPhase(Cplx),
    #[error("component count {got} does not match dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no automorphism family for {0}")]
    UnsupportedSpace(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn zero() -> Cplx {
    Cplx::new(0.0, 0.0)
}

/// `w ↦ e^{iα} (a − w) / (1 − ā w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscMobius {
    a: Cplx,
    alpha: f64,
}

impl DiscMobius {
    pub fn new(a: Cplx, alpha: f64) -> Result<Self, AutomorphismError> {
        if !(a.norm() < 1.0) {
            return Err(AutomorphismError::ParameterOutsideBall(a.norm()));
        }
        Ok(DiscMobius { a, alpha })
    }

    /// The involution exchanging `0` and `a`.
    pub fn point(a: Cplx) -> Result<Self, AutomorphismError> {
        DiscMobius::new(a, 0.0)
    }

    pub fn a(&self) -> Cplx {
        self.a
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn rotation(&self) -> Cplx {
        Cplx::from_polar(1.0, self.alpha)
    }

    pub fn apply(&self, w: Cplx) -> Cplx {
        self.rotation() * (self.a - w) / (1.0 - self.a.conj() * w)
    }

    /// `φ′(0) = −e^{iα}(1 − |a|²)`.
    pub fn derivative_at_zero(&self) -> Cplx {
        -self.rotation() * (1.0 - self.a.norm_sqr())
    }

    pub fn to_expr(&self, var: usize) -> Expr {
        crate::functions::mobius_expr(self.a, self.alpha, var)
    }
}

/// `y ↦ (φ_1(y_{σ(1)}), …, φ_n(y_{σ(n)}))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolydiscAuto {
    components: Vec<DiscMobius>,
    sigma: Vec<usize>,
}

impl PolydiscAuto {
    pub fn new(components: Vec<DiscMobius>, sigma: Vec<usize>) -> Result<Self, AutomorphismError> {
        check_permutation(&sigma)?;
        if components.len() != sigma.len() {
            return Err(AutomorphismError::DimensionMismatch {
                expected: sigma.len(),
                got: components.len(),
            });
        }
        Ok(PolydiscAuto { components, sigma })
    }

    /// The point automorphism `φ_x`, an involution with `φ_x(0) = x`.
    pub fn point(x: &[Cplx]) -> Result<Self, AutomorphismError> {
        let components = x.iter().map(|&a| DiscMobius::point(a)).collect::<Result<_, _>>()?;
        Ok(PolydiscAuto {
            components,
            sigma: (0..x.len()).collect(),
        })
    }

    pub fn components(&self) -> &[DiscMobius] {
        &self.components
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }
}

/// Möbius map of the Euclidean ball,
/// `φ_a(y) = (a − P_a y − s_a Q_a y) / (1 − ⟨y, a⟩)` with `s_a = √(1 − ‖a‖²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertMobius {
    a: Vec<Cplx>,
}

impl HilbertMobius {
    pub fn new(a: Vec<Cplx>) -> Result<Self, AutomorphismError> {
        let r = NormTag::L2.apply(&a);
        if !(r < 1.0) {
            return Err(AutomorphismError::ParameterOutsideBall(r));
        }
        Ok(HilbertMobius { a })
    }

    pub fn a(&self) -> &[Cplx] {
        &self.a
    }

    fn norm_sqr(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum()
    }

    fn s(&self) -> f64 {
        (1.0 - self.norm_sqr()).sqrt()
    }

    fn inner_with_a(&self, y: &[Cplx]) -> Cplx {
        y.iter().zip(&self.a).map(|(u, v)| u * v.conj()).sum()
    }

    pub fn apply_point(&self, y: &[Cplx]) -> Vec<Cplx> {
        let na2 = self.norm_sqr();
        let s = self.s();
        let ya = self.inner_with_a(y);
        let denom = 1.0 - ya;
        let coef = if na2 == 0.0 { zero() } else { ya * (1.0 - s) / na2 };
        self.a
            .iter()
            .zip(y)
            .map(|(&ak, &yk)| (ak - coef * ak - yk * s) / denom)
            .collect()
    }

    /// `φ_a′(0) = −(1 − ‖a‖²) P_a − s_a Q_a`.
    pub fn derivative_at_zero(&self) -> CMatrix {
        let n = self.a.len();
        let na2 = self.norm_sqr();
        let s = self.s();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let p = if na2 == 0.0 { zero() } else { self.a[i] * self.a[j].conj() / na2 };
                let id = if i == j { 1.0 } else { 0.0 };
                // −s²P − s(I − P)
                m.set(i, j, -(p * (s * s)) - (Cplx::new(id, 0.0) - p) * s);
            }
        }
        m
    }

    pub fn to_exprs(&self) -> Vec<Expr> {
        let na2 = self.norm_sqr();
        let s = self.s();
        let ya = Expr::Linear(self.a.iter().map(|z| z.conj()).collect());
        let denom = Expr::real(1.0) - ya.clone();
        self.a
            .iter()
            .enumerate()
            .map(|(k, &ak)| {
                let proj = if na2 == 0.0 {
                    Expr::real(0.0)
                } else {
                    Expr::constant(ak * (1.0 - s) / na2) * ya.clone()
                };
                (Expr::constant(ak) - proj - Expr::real(s) * Expr::var(k + 1)) / denom.clone()
            })
            .collect()
    }
}

/// `y ↦ (c_1 y_{σ(1)}, …, c_n y_{σ(n)})` with unimodular `c_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenPermIsometry {
    sigma: Vec<usize>,
    phases: Vec<Cplx>,
}

impl GenPermIsometry {
    pub fn new(sigma: Vec<usize>, phases: Vec<Cplx>) -> Result<Self, AutomorphismError> {
        check_permutation(&sigma)?;
        if phases.len() != sigma.len() {
            return Err(AutomorphismError::DimensionMismatch {
                expected: sigma.len(),
                got: phases.len(),
            });
        }
        if let Some(&c) = phases.iter().find(|c| (c.norm() - 1.0).abs() > 1e-12) {
            return Err(AutomorphismError::BadPhase(c));
        }
        Ok(GenPermIsometry { sigma, phases })
    }

    pub fn identity(n: usize) -> Self {
        GenPermIsometry {
            sigma: (0..n).collect(),
            phases: vec![Cplx::new(1.0, 0.0); n],
        }
    }
}

fn check_permutation(sigma: &[usize]) -> Result<(), AutomorphismError> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(AutomorphismError::BadPermutation(n));
        }
        seen[s] = true;
    }
    Ok(())
}

/// Dense complex `n × n` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Cplx>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Cplx::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Cplx {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cplx) {
        self.data[i * self.n + j] = v;
    }

    /// The covector `L ∘ M`, i.e. `(L ∘ M)_j = Σ_k L_k M_{kj}`.
    pub fn pull_back(&self, l: &[Cplx]) -> Vec<Cplx> {
        (0..self.n)
            .map(|j| (0..self.n).map(|k| l[k] * self.get(k, j)).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Automorphism {
    Polydisc(PolydiscAuto),
    Hilbert(HilbertMobius),
    Isometry(GenPermIsometry),
}

impl Automorphism {
    pub fn dim(&self) -> usize {
        match self {
            Automorphism::Polydisc(p) => p.sigma.len(),
            Automorphism::Hilbert(h) => h.a.len(),
            Automorphism::Isometry(g) => g.sigma.len(),
        }
    }

    /// Norm of the ball this map preserves, where it is tied to one.
    fn check_input(&self, y: &[Cplx]) -> Result<(), AutomorphismError> {
        let n = self.dim();
        if y.len() != n {
            return Err(AutomorphismError::DimensionMismatch { expected: n, got: y.len() });
        }
        let r = match self {
            Automorphism::Polydisc(_) => NormTag::LInf.apply(y),
            Automorphism::Hilbert(_) => NormTag::L2.apply(y),
            // isometries preserve every ℓp ball; only finiteness matters here
            Automorphism::Isometry(_) => 0.0,
        };
        if !(r < 1.0) {
            return Err(GeometryError::OutsideBall { norm: r }.into());
        }
        Ok(())
    }

    pub fn apply(&self, y: &[Cplx]) -> Result<Vec<Cplx>, AutomorphismError> {
        self.check_input(y)?;
        Ok(match self {
            Automorphism::Polydisc(p) => p
                .components
                .iter()
                .zip(&p.sigma)
                .map(|(phi, &s)| phi.apply(y[s]))
                .collect(),
            Automorphism::Hilbert(h) => h.apply_point(y),
            Automorphism::Isometry(g) => g.sigma.iter().zip(&g.phases).map(|(&s, &c)| c * y[s]).collect(),
        })
    }

    pub fn image_of_zero(&self) -> Vec<Cplx> {
        let n = self.dim();
        self.apply(&vec![zero(); n]).expect("origin is interior")
    }

    pub fn derivative_at_zero(&self) -> CMatrix {
        let n = self.dim();
        match self {
            Automorphism::Polydisc(p) => {
                let mut m = CMatrix::zeros(n);
                for (k, (phi, &s)) in p.components.iter().zip(&p.sigma).enumerate() {
                    m.set(k, s, phi.derivative_at_zero());
                }
                m
            }
            Automorphism::Hilbert(h) => h.derivative_at_zero(),
            Automorphism::Isometry(g) => {
                let mut m = CMatrix::zeros(n);
                for (k, (&s, &c)) in g.sigma.iter().zip(&g.phases).enumerate() {
                    m.set(k, s, c);
                }
                m
            }
        }
    }

    /// Component expressions of the map in the variables `x1..xn`.
    pub fn to_exprs(&self) -> Vec<Expr> {
        match self {
            Automorphism::Polydisc(p) => p
                .components
                .iter()
                .zip(&p.sigma)
                .map(|(phi, &s)| phi.to_expr(s + 1))
                .collect(),
            Automorphism::Hilbert(h) => h.to_exprs(),
            Automorphism::Isometry(g) => g
                .sigma
                .iter()
                .zip(&g.phases)
                .map(|(&s, &c)| Expr::constant(c) * Expr::var(s + 1))
                .collect(),
        }
    }

    /// The point automorphism of `space` sending 0 to `x`. On ℓp balls
    /// without transitive automorphisms only `x = 0` is reachable, and the
    /// identity is returned for it.
    pub fn point(space: &BallSpace, x: &[Cplx]) -> Result<Automorphism, AutomorphismError> {
        space.check_dim(x)?;
        match space.family() {
            BallFamily::Polydisc => Ok(Automorphism::Polydisc(PolydiscAuto::point(x)?)),
            BallFamily::Hilbert => Ok(Automorphism::Hilbert(HilbertMobius::new(x.to_vec())?)),
            BallFamily::Lp if x.iter().all(|z| z.norm() == 0.0) => {
                Ok(Automorphism::Isometry(GenPermIsometry::identity(space.n)))
            }
            BallFamily::Lp => Err(AutomorphismError::UnsupportedSpace(format!(
                "{space}: automorphisms fix the origin, no map sends 0 to a nonzero point"
            ))),
        }
    }

    /// Whether the map preserves the unit ball of `space`.
    pub fn acts_on(&self, space: &BallSpace) -> bool {
        if self.dim() != space.n {
            return false;
        }
        match self {
            Automorphism::Polydisc(_) => space.family() == BallFamily::Polydisc,
            Automorphism::Hilbert(_) => space.norm == NormTag::L2 || space.n == 1,
            Automorphism::Isometry(_) => true,
        }
    }
}

/// `‖(f ∘ φ)′(0)‖ = ‖f′(φ(0)) ∘ φ′(0)‖` in the dual norm of `space`.
pub fn pullback_derivative_norm(
    f: &Expr,
    phi: &Automorphism,
    space: &BallSpace,
) -> Result<f64, AutomorphismError> {
    if !phi.acts_on(space) {
        return Err(AutomorphismError::UnsupportedSpace(format!(
            "automorphism does not act on {space}"
        )));
    }
    let base = phi.image_of_zero();
    let (_, grad) = eval_grad(f, &base)?;
    let pulled = phi.derivative_at_zero().pull_back(&grad);
    Ok(dual_norm(space, &pulled)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{eval_jets, parse};
    use crate::jet::Jet;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    #[test]
    fn disc_maps() {
        let phi = DiscMobius::point(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(phi.derivative_at_zero().re, -0.75, epsilon = 1e-15);
        let zero_map = DiscMobius::point(c(0.0, 0.0)).unwrap();
        let y = c(0.2, -0.3);
        assert_eq!(zero_map.apply(y), -y);
        assert!(DiscMobius::point(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn polydisc_point_map() {
        let x = [c(0.5, 0.0), c(0.0, 0.3)];
        let phi = Automorphism::Polydisc(PolydiscAuto::point(&x).unwrap());
        let img = phi.image_of_zero();
        assert!((img[0] - x[0]).norm() < 1e-15 && (img[1] - x[1]).norm() < 1e-15);
        let d = phi.derivative_at_zero();
        assert_abs_diff_eq!(d.get(0, 0).re, -0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(d.get(1, 1).re, -0.91, epsilon = 1e-15);
        assert_eq!(d.get(0, 1), c(0.0, 0.0));
        assert!(phi.apply(&[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn isometries() {
        let swap = Automorphism::Isometry(
            GenPermIsometry::new(vec![1, 0], vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap(),
        );
        let (u, v) = (c(0.1, 0.2), c(-0.3, 0.0));
        assert_eq!(swap.apply(&[u, v]).unwrap(), vec![v, u]);
        let id = Automorphism::Isometry(GenPermIsometry::identity(3));
        assert_eq!(id.derivative_at_zero(), CMatrix::identity(3));
        assert!(GenPermIsometry::new(vec![0, 0], vec![c(1.0, 0.0); 2]).is_err());
        assert!(GenPermIsometry::new(vec![0, 1], vec![c(1.0, 0.0), c(0.5, 0.0)]).is_err());
    }

    #[test]
    fn hilbert_map_matches_closed_forms() {
        let a = vec![c(0.3, -0.1), c(0.2, 0.4)];
        let h = HilbertMobius::new(a.clone()).unwrap();
        let phi = Automorphism::Hilbert(h.clone());
        let img = phi.image_of_zero();
        for (u, v) in img.iter().zip(&a) {
            assert!((u - v).norm() < 1e-15);
        }
        let y = [c(-0.1, 0.25), c(0.5, -0.2)];
        let back = phi.apply(&phi.apply(&y).unwrap()).unwrap();
        for (u, v) in back.iter().zip(&y) {
            assert!((u - v).norm() < 1e-12);
        }
        // ρ(a, y) = ‖φ_a(y)‖ on the Euclidean ball
        let rho = crate::geometry::pseudo_hilbert(&a, &y).unwrap();
        assert_abs_diff_eq!(NormTag::L2.apply(&phi.apply(&y).unwrap()), rho, epsilon = 1e-12);

        // derivative against jet propagation through the component expressions
        let jets = Jet::seed_all(&[c(0.0, 0.0), c(0.0, 0.0)]);
        let d = h.derivative_at_zero();
        for (i, e) in h.to_exprs().iter().enumerate() {
            let j = eval_jets(e, &jets).unwrap();
            assert!((j.val() - a[i]).norm() < 1e-15);
            for (k, g) in j.grad().iter().enumerate() {
                assert!((g - d.get(i, k)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn pullback_examples() {
        let bi = BallSpace::polydisc(2);
        let x1 = Expr::var(1);
        let phi = Automorphism::point(&bi, &[c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(pullback_derivative_norm(&x1, &phi, &bi).unwrap(), 0.75, epsilon = 1e-15);

        let f = parse("(x2+1)*log2pi(x1-1)", 2).unwrap();
        let phi = Automorphism::point(&bi, &[c(0.9, 0.0), c(0.0, 0.0)]).unwrap();
        let want = 0.19 * 10.0 + (std::f64::consts::LN_10.powi(2) + std::f64::consts::PI.powi(2)).sqrt();
        assert_abs_diff_eq!(pullback_derivative_norm(&f, &phi, &bi).unwrap(), want, epsilon = 1e-9);
        assert_abs_diff_eq!(want, 5.795061, epsilon = 1e-6);

        let l3 = BallSpace::lp(3.0, 2).unwrap();
        let id = Automorphism::Isometry(GenPermIsometry::identity(2));
        let g = parse("x1^2 + 3*x2 - 0.5*i*x1", 2).unwrap();
        let (_, grad0) = eval_grad(&g, &[c(0.0, 0.0); 2]).unwrap();
        assert_abs_diff_eq!(
            pullback_derivative_norm(&g, &id, &l3).unwrap(),
            dual_norm(&l3, &grad0).unwrap(),
            epsilon = 1e-15
        );
        assert!(Automorphism::point(&l3, &[c(0.1, 0.0), c(0.0, 0.0)]).is_err());
        let hphi = Automorphism::point(&BallSpace::hilbert(2), &[c(0.1, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(pullback_derivative_norm(&g, &hphi, &l3).is_err());
    }
}

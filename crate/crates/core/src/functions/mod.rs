//! Holomorphic functions on a ball: expression trees, parsing, evaluation
//! with exact gradients, and the catalog of named test functions.

mod catalog;
mod parser;

use std::fmt;
use std::ops;

use thiserror::Error;

use crate::geometry::BallSpace;
use crate::jet::{cpowi, finite, Cplx, Jet, JetError, LogBranch};
use crate::sampling::{self, SupEstimate};

pub use catalog::{
    catalog, lookup, lookup_for, mobius_expr, random_polynomial, AnalyticFacts, CatalogEntry,
};
pub use parser::{parse, ParseError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("expression uses x{index} but the point has dimension {dim}")]
    Arity { index: usize, dim: usize },
    #[error("linear form of length {len} applied in dimension {dim}")]
    LinearLength { len: usize, dim: usize },
    #[error("singular evaluation: {0}")]
    Singular(JetError),
    #[error("non-finite value")]
    NonFinite,
}

impl EvalError {
    /// Singularities and overflow, as opposed to malformed input.
    pub fn is_poisoned(&self) -> bool {
        matches!(self, EvalError::Singular(_) | EvalError::NonFinite)
    }
}

/// Abstract syntax tree of a holomorphic function of `x1..xn`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Cplx),
    /// 1-based coordinate index.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Pow(Box<Expr>, u32),
    Log(Box<Expr>, LogBranch),
    /// `x ↦ Σ L_k x_k`.
    Linear(Vec<Cplx>),
}

impl Expr {
    pub fn var(k: usize) -> Expr {
        Expr::Var(k)
    }

    pub fn constant(c: Cplx) -> Expr {
        Expr::Const(c)
    }

    pub fn real(r: f64) -> Expr {
        Expr::Const(Cplx::new(r, 0.0))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn pow(self, m: u32) -> Expr {
        Expr::Pow(Box::new(self), m)
    }

    pub fn log(self, branch: LogBranch) -> Expr {
        Expr::Log(Box::new(self), branch)
    }

    /// Smallest dimension the expression can be evaluated in.
    pub fn min_arity(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(k) => *k,
            Expr::Linear(l) => l.len(),
            Expr::Neg(a) | Expr::Exp(a) | Expr::Pow(a, _) | Expr::Log(a, _) => a.min_arity(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.min_arity().max(b.min_arity())
            }
        }
    }

    /// Checks every variable index and linear form against dimension `n`.
    pub fn check_arity(&self, n: usize) -> Result<(), EvalError> {
        match self {
            Expr::Const(_) => Ok(()),
            Expr::Var(k) if *k == 0 || *k > n => Err(EvalError::Arity { index: *k, dim: n }),
            Expr::Var(_) => Ok(()),
            Expr::Linear(l) if l.len() != n => Err(EvalError::LinearLength { len: l.len(), dim: n }),
            Expr::Linear(_) => Ok(()),
            Expr::Neg(a) | Expr::Exp(a) | Expr::Pow(a, _) | Expr::Log(a, _) => a.check_arity(n),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.check_arity(n)?;
                b.check_arity(n)
            }
        }
    }

    /// Replaces `x_k` by `subs[k-1]`, producing `f ∘ g`.
    pub fn substitute(&self, subs: &[Expr]) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var(k) => subs[k - 1].clone(),
            Expr::Linear(l) => l
                .iter()
                .zip(subs)
                .map(|(&c, s)| Expr::Const(c) * s.clone())
                .reduce(|a, b| a + b)
                .unwrap_or(Expr::real(0.0)),
            Expr::Neg(a) => -a.substitute(subs),
            Expr::Exp(a) => a.substitute(subs).exp(),
            Expr::Pow(a, m) => a.substitute(subs).pow(*m),
            Expr::Log(a, br) => a.substitute(subs).log(*br),
            Expr::Add(a, b) => a.substitute(subs) + b.substitute(subs),
            Expr::Sub(a, b) => a.substitute(subs) - b.substitute(subs),
            Expr::Mul(a, b) => a.substitute(subs) * b.substitute(subs),
            Expr::Div(a, b) => a.substitute(subs) / b.substitute(subs),
        }
    }

    fn walk<S: Carrier>(&self, inputs: &[S], n: usize) -> Result<S, EvalError> {
        Ok(match self {
            Expr::Const(c) => S::lift(*c, n),
            Expr::Var(k) => inputs[k - 1].clone(),
            Expr::Linear(l) => {
                let mut acc = S::lift(Cplx::new(0.0, 0.0), n);
                for (&c, x) in l.iter().zip(inputs) {
                    acc = acc.add(&x.scale(c))?;
                }
                acc
            }
            Expr::Neg(a) => a.walk(inputs, n)?.neg(),
            Expr::Exp(a) => a.walk(inputs, n)?.exp(),
            Expr::Pow(a, m) => a.walk(inputs, n)?.powi(*m),
            Expr::Log(a, br) => a.walk(inputs, n)?.ln(*br)?,
            Expr::Add(a, b) => a.walk(inputs, n)?.add(&b.walk(inputs, n)?)?,
            Expr::Sub(a, b) => a.walk(inputs, n)?.sub(&b.walk(inputs, n)?)?,
            Expr::Mul(a, b) => a.walk(inputs, n)?.mul(&b.walk(inputs, n)?)?,
            Expr::Div(a, b) => a.walk(inputs, n)?.div(&b.walk(inputs, n)?)?,
        })
    }
}

/// Scalar types the evaluator can run over.
trait Carrier: Clone + Sized {
    fn lift(c: Cplx, n: usize) -> Self;
    fn scale(&self, c: Cplx) -> Self;
    fn add(&self, o: &Self) -> Result<Self, EvalError>;
    fn sub(&self, o: &Self) -> Result<Self, EvalError>;
    fn mul(&self, o: &Self) -> Result<Self, EvalError>;
    fn div(&self, o: &Self) -> Result<Self, EvalError>;
    fn neg(&self) -> Self;
    fn exp(&self) -> Self;
    fn powi(&self, m: u32) -> Self;
    fn ln(&self, br: LogBranch) -> Result<Self, EvalError>;
}

impl Carrier for Cplx {
    fn lift(c: Cplx, _: usize) -> Self {
        c
    }
    fn scale(&self, c: Cplx) -> Self {
        self * c
    }
    fn add(&self, o: &Self) -> Result<Self, EvalError> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Result<Self, EvalError> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Result<Self, EvalError> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self, EvalError> {
        if o.re == 0.0 && o.im == 0.0 {
            return Err(EvalError::Singular(JetError::DivisionByZero));
        }
        Ok(self / o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exp(&self) -> Self {
        Cplx::exp(*self)
    }
    fn powi(&self, m: u32) -> Self {
        cpowi(*self, m)
    }
    fn ln(&self, br: LogBranch) -> Result<Self, EvalError> {
        br.ln(*self).map_err(EvalError::Singular)
    }
}

impl Carrier for Jet {
    fn lift(c: Cplx, n: usize) -> Self {
        Jet::constant(c, n)
    }
    fn scale(&self, c: Cplx) -> Self {
        let (v, g) = (self.val(), self.grad());
        Jet::from_parts(v * c, g.iter().map(|x| x * c).collect())
    }
    fn add(&self, o: &Self) -> Result<Self, EvalError> {
        Jet::add(self, o).map_err(EvalError::Singular)
    }
    fn sub(&self, o: &Self) -> Result<Self, EvalError> {
        Jet::sub(self, o).map_err(EvalError::Singular)
    }
    fn mul(&self, o: &Self) -> Result<Self, EvalError> {
        Jet::mul(self, o).map_err(EvalError::Singular)
    }
    fn div(&self, o: &Self) -> Result<Self, EvalError> {
        Jet::div(self, o).map_err(EvalError::Singular)
    }
    fn neg(&self) -> Self {
        Jet::neg(self)
    }
    fn exp(&self) -> Self {
        Jet::exp(self)
    }
    fn powi(&self, m: u32) -> Self {
        Jet::powi(self, m)
    }
    fn ln(&self, br: LogBranch) -> Result<Self, EvalError> {
        Jet::ln(self, br).map_err(EvalError::Singular)
    }
}

/// Value of `f` at `x`.
pub fn eval(f: &Expr, x: &[Cplx]) -> Result<Cplx, EvalError> {
    f.check_arity(x.len())?;
    let v = f.walk(x, x.len())?;
    if !finite(v) {
        return Err(EvalError::NonFinite);
    }
    Ok(v)
}

/// Value and holomorphic gradient `f′(x)` by forward-mode propagation.
pub fn eval_grad(f: &Expr, x: &[Cplx]) -> Result<(Cplx, Vec<Cplx>), EvalError> {
    Ok(eval_jets(f, &Jet::seed_all(x))?.into_parts())
}

/// Evaluates `f` on jet inputs, which composes `f` with whatever map
/// produced them.
pub fn eval_jets(f: &Expr, inputs: &[Jet]) -> Result<Jet, EvalError> {
    f.check_arity(inputs.len())?;
    let n = inputs.first().map_or(0, Jet::dim);
    let j = f.walk(inputs, n)?;
    if j.is_poisoned() {
        return Err(EvalError::NonFinite);
    }
    Ok(j)
}

/// Certified lower bound for `sup |f|` over the ball.
pub fn sup_norm_estimate(f: &Expr, space: &BallSpace, budget: usize, seed: u64) -> f64 {
    sup_norm_search(f, space, budget, seed).value
}

/// Full sampling record behind [`sup_norm_estimate`].
pub fn sup_norm_search(f: &Expr, space: &BallSpace, budget: usize, seed: u64) -> SupEstimate {
    sampling::maximize(space, budget, seed, |x| eval(f, x).map(|v| v.norm()))
}

// Builders used by the catalog and by composition.

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

fn write_const(f: &mut fmt::Formatter<'_>, c: Cplx) -> fmt::Result {
    // `Display` for f64 never uses exponents and round-trips exactly
    if c.im == 0.0 && !c.im.is_sign_negative() {
        write!(f, "({})", c.re)
    } else {
        write!(f, "({}+{}*i)", c.re, c.im)
    }
}

/// Prints in the parser's grammar; the output reparses to an expression
/// with the same values.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write_const(f, *c),
            Expr::Var(k) => write!(f, "x{k}"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Pow(a, m) => write!(f, "({a})^{m}"),
            Expr::Log(a, LogBranch::Principal) => write!(f, "log({a})"),
            Expr::Log(a, LogBranch::CutPositiveAxis) => write!(f, "log2pi({a})"),
            Expr::Linear(l) => {
                write!(f, "(")?;
                for (k, &c) in l.iter().enumerate() {
                    if k > 0 {
                        write!(f, "+")?;
                    }
                    write_const(f, c)?;
                    write!(f, "*x{}", k + 1)?;
                }
                if l.is_empty() {
                    write!(f, "0")?;
                }
                write!(f, ")")
            }
        }
    }
}

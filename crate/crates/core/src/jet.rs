//! Forward-mode differentiation over complex scalars.
//!
//! A [`Jet`] carries a value together with its holomorphic gradient, the
//! covector `(∂f/∂x₁, …, ∂f/∂xₙ)`. Arithmetic follows the usual sum,
//! product and quotient rules coordinatewise. Operations that would hit a
//! pole return an error; anything else that overflows is left in place and
//! reported by [`Jet::is_poisoned`].

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type Cplx = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("variable index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("jet dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("division by a zero value")]
    DivisionByZero,
    #[error("logarithm of zero")]
    LogOfZero,
}

/// Branch of the complex logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogBranch {
    /// `arg ∈ (-π, π]`; points on the negative real axis take `arg = π`.
    Principal,
    /// Cut along the positive real axis, `arg ∈ [0, 2π)`.
    CutPositiveAxis,
}

impl LogBranch {
    /// Argument of `z` on this branch. Points on a cut take the value
    /// approached from the upper half-plane; `-0.0` imaginary parts count as
    /// zero.
    pub fn arg(self, z: Cplx) -> f64 {
        if z.im == 0.0 {
            return if z.re < 0.0 { PI } else { 0.0 };
        }
        let a = z.im.atan2(z.re);
        match self {
            LogBranch::Principal => a,
            LogBranch::CutPositiveAxis if a < 0.0 => a + 2.0 * PI,
            LogBranch::CutPositiveAxis => a,
        }
    }

    pub fn ln(self, z: Cplx) -> Result<Cplx, JetError> {
        if z.re == 0.0 && z.im == 0.0 {
            return Err(JetError::LogOfZero);
        }
        Ok(Cplx::new(z.norm().ln(), self.arg(z)))
    }
}

/// Binary arithmetic selector for [`jet_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A complex value paired with its holomorphic gradient.
#[derive(Clone, PartialEq)]
pub struct Jet {
    val: Cplx,
    grad: Vec<Cplx>,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet({} ; {:?})", self.val, self.grad)
    }
}

impl Jet {
    /// Seeds the `k`-th coordinate (1-based) of an `n`-dimensional space.
    pub fn var(k: usize, value: Cplx, n: usize) -> Result<Jet, JetError> {
        if k == 0 || k > n {
            return Err(JetError::IndexOutOfRange { index: k, dim: n });
        }
        let mut grad = vec![Cplx::new(0.0, 0.0); n];
        grad[k - 1] = Cplx::new(1.0, 0.0);
        Ok(Jet { val: value, grad })
    }

    pub fn constant(value: Cplx, n: usize) -> Jet {
        Jet {
            val: value,
            grad: vec![Cplx::new(0.0, 0.0); n],
        }
    }

    /// Seeds every coordinate of `x` at once.
    pub fn seed_all(x: &[Cplx]) -> Vec<Jet> {
        let n = x.len();
        x.iter()
            .enumerate()
            .map(|(i, &v)| Jet::var(i + 1, v, n).expect("index in range"))
            .collect()
    }

    pub fn from_parts(val: Cplx, grad: Vec<Cplx>) -> Jet {
        Jet { val, grad }
    }

    pub fn val(&self) -> Cplx {
        self.val
    }

    pub fn grad(&self) -> &[Cplx] {
        &self.grad
    }

    pub fn into_parts(self) -> (Cplx, Vec<Cplx>) {
        (self.val, self.grad)
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    /// True when the value or any gradient component is NaN or infinite.
    pub fn is_poisoned(&self) -> bool {
        !finite(self.val) || self.grad.iter().any(|g| !finite(*g))
    }

    fn check_dim(&self, other: &Jet) -> Result<(), JetError> {
        if self.dim() != other.dim() {
            return Err(JetError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Jet, val: Cplx, f: impl Fn(Cplx, Cplx) -> Cplx) -> Jet {
        let grad = self
            .grad
            .iter()
            .zip(&other.grad)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Jet { val, grad }
    }

    fn scale_grad(&self, val: Cplx, factor: Cplx) -> Jet {
        Jet {
            val,
            grad: self.grad.iter().map(|&g| g * factor).collect(),
        }
    }

    pub fn add(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, self.val + other.val, |a, b| a + b))
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, self.val - other.val, |a, b| a - b))
    }

    pub fn mul(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_dim(other)?;
        let (u, v) = (self.val, other.val);
        Ok(self.zip_with(other, u * v, |a, b| a * v + u * b))
    }

    pub fn div(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_dim(other)?;
        let (u, v) = (self.val, other.val);
        if v.re == 0.0 && v.im == 0.0 {
            return Err(JetError::DivisionByZero);
        }
        let inv = v.inv();
        let q = u * inv;
        Ok(self.zip_with(other, q, |a, b| (a - q * b) * inv))
    }

    pub fn neg(&self) -> Jet {
        self.scale_grad(-self.val, Cplx::new(-1.0, 0.0))
    }

    pub fn ln(&self, branch: LogBranch) -> Result<Jet, JetError> {
        let val = branch.ln(self.val)?;
        Ok(self.scale_grad(val, self.val.inv()))
    }

    pub fn exp(&self) -> Jet {
        let e = self.val.exp();
        self.scale_grad(e, e)
    }

    /// Integer power by repeated multiplication; `m = 0` gives the constant 1.
    pub fn powi(&self, m: u32) -> Jet {
        if m == 0 {
            return Jet::constant(Cplx::new(1.0, 0.0), self.dim());
        }
        let lower = cpowi(self.val, m - 1);
        self.scale_grad(lower * self.val, lower * f64::from(m))
    }
}

/// Dispatches a binary operation by tag.
pub fn jet_arith(a: &Jet, b: &Jet, op: ArithOp) -> Result<Jet, JetError> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

/// `z^m` by repeated squaring; `0^0 = 1`.
pub fn cpowi(z: Cplx, mut m: u32) -> Cplx {
    let mut base = z;
    let mut acc = Cplx::new(1.0, 0.0);
    while m > 0 {
        if m & 1 == 1 {
            acc *= base;
        }
        base *= base;
        m >>= 1;
    }
    acc
}

pub fn finite(z: Cplx) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Parses a complex literal: `0.5`, `-2i`, `i`, `0.3-0.1i`, `1e-3+2E-2i`.
pub fn parse_cplx(text: &str) -> Result<Cplx, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("invalid complex literal {text:?} (expected a+bi)");
    let num = |t: &str| -> Result<f64, String> {
        let v: f64 = t.parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Cplx::new(num(&s)?, 0.0));
    };
    // split at the last sign that is neither leading nor an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => num(t)?,
    };
    Ok(Cplx::new(re, im))
}

/// Comma-separated list of complex literals.
pub fn parse_cplx_list(text: &str) -> Result<Vec<Cplx>, String> {
    text.split(',').map(parse_cplx).collect()
}

//! Norms, dual norms and the pseudohyperbolic/hyperbolic distances.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jet::Cplx;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point outside the open unit ball (norm {norm})")]
    OutsideBall { norm: f64 },
    #[error("pseudohyperbolic distance must lie in [0, 1), got {0}")]
    InvalidRho(f64),
    #[error("invalid norm exponent {0}; need p >= 1")]
    InvalidExponent(f64),
    #[error("invalid space spec {0:?}")]
    InvalidSpaceSpec(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Exponent of an ℓp norm, with `p = 1`, `2` and `∞` kept as explicit cases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NormTag {
    L1,
    L2,
    Lp(f64),
    LInf,
}

impl NormTag {
    pub fn from_p(p: f64) -> Result<NormTag, GeometryError> {
        if p.is_nan() || p < 1.0 {
            return Err(GeometryError::InvalidExponent(p));
        }
        Ok(if p == 1.0 {
            NormTag::L1
        } else if p == 2.0 {
            NormTag::L2
        } else if p == f64::INFINITY {
            NormTag::LInf
        } else {
            NormTag::Lp(p)
        })
    }

    pub fn p(self) -> f64 {
        match self {
            NormTag::L1 => 1.0,
            NormTag::L2 => 2.0,
            NormTag::Lp(p) => p,
            NormTag::LInf => f64::INFINITY,
        }
    }

    /// Hölder conjugate `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> NormTag {
        match self {
            NormTag::L1 => NormTag::LInf,
            NormTag::LInf => NormTag::L1,
            NormTag::L2 => NormTag::L2,
            NormTag::Lp(p) => NormTag::from_p(p / (p - 1.0)).expect("conjugate of p > 1"),
        }
    }

    /// ℓp norm of the moduli of `v`.
    pub fn apply(self, v: &[Cplx]) -> f64 {
        match self {
            NormTag::L1 => v.iter().map(|z| z.norm()).sum(),
            NormTag::L2 => v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
            NormTag::LInf => v.iter().map(|z| z.norm()).fold(0.0, f64::max),
            NormTag::Lp(p) => {
                // scale by the max modulus so large p does not overflow
                let m = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
                if m == 0.0 {
                    return 0.0;
                }
                m * v.iter().map(|z| (z.norm() / m).powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    }
}

impl fmt::Display for NormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormTag::L1 => write!(f, "lp:1"),
            NormTag::L2 => write!(f, "l2"),
            NormTag::Lp(p) => write!(f, "lp:{p}"),
            NormTag::LInf => write!(f, "linf"),
        }
    }
}

/// The automorphism family a ball belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallFamily {
    /// Disc or polydisc: coordinatewise Möbius maps.
    Polydisc,
    /// Euclidean ball: Hilbert-ball Möbius maps.
    Hilbert,
    /// ℓpⁿ with `p ∉ {2, ∞}` and `n ≥ 2`: only linear isometries.
    Lp,
}

/// Unit ball of `(ℂⁿ, ‖·‖_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallSpace {
    pub n: usize,
    pub norm: NormTag,
}

impl BallSpace {
    pub fn new(n: usize, norm: NormTag) -> Result<BallSpace, GeometryError> {
        if n == 0 {
            return Err(GeometryError::InvalidSpaceSpec("dimension must be >= 1".into()));
        }
        Ok(BallSpace { n, norm })
    }

    pub fn disc() -> BallSpace {
        BallSpace { n: 1, norm: NormTag::LInf }
    }

    pub fn polydisc(n: usize) -> BallSpace {
        BallSpace { n, norm: NormTag::LInf }
    }

    pub fn hilbert(n: usize) -> BallSpace {
        BallSpace { n, norm: NormTag::L2 }
    }

    pub fn lp(p: f64, n: usize) -> Result<BallSpace, GeometryError> {
        BallSpace::new(n, NormTag::from_p(p)?)
    }

    /// In one dimension every ℓp norm is the modulus, so the ball is the disc.
    pub fn family(&self) -> BallFamily {
        match self.norm {
            _ if self.n == 1 => BallFamily::Polydisc,
            NormTag::LInf => BallFamily::Polydisc,
            NormTag::L2 => BallFamily::Hilbert,
            NormTag::L1 | NormTag::Lp(_) => BallFamily::Lp,
        }
    }

    pub fn check_dim(&self, v: &[Cplx]) -> Result<(), GeometryError> {
        if v.len() != self.n {
            return Err(GeometryError::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Errors unless `x` lies in the open unit ball.
    pub fn check_interior(&self, x: &[Cplx]) -> Result<f64, GeometryError> {
        let r = norm(self, x)?;
        if !(r < 1.0) {
            return Err(GeometryError::OutsideBall { norm: r });
        }
        Ok(r)
    }
}

impl fmt::Display for BallSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.norm, self.n)
    }
}

impl FromStr for BallSpace {
    type Err = GeometryError;

    /// Accepts `linf:<n>`, `l2:<n>` and `lp:<p>:<n>` (`p` may be `inf`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GeometryError::InvalidSpaceSpec(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let dim = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let (norm, n) = match parts.as_slice() {
            ["linf", n] => (NormTag::LInf, dim(n)?),
            ["l2", n] => (NormTag::L2, dim(n)?),
            ["lp", p, n] => {
                let p = match *p {
                    "inf" | "infinity" => f64::INFINITY,
                    p => p.parse::<f64>().map_err(|_| bad())?,
                };
                (NormTag::from_p(p)?, dim(n)?)
            }
            _ => return Err(bad()),
        };
        BallSpace::new(n, norm)
    }
}

pub fn norm(space: &BallSpace, x: &[Cplx]) -> Result<f64, GeometryError> {
    space.check_dim(x)?;
    Ok(space.norm.apply(x))
}

/// Norm of a covector: the ℓq norm of its moduli, `q` conjugate to `p`.
pub fn dual_norm(space: &BallSpace, l: &[Cplx]) -> Result<f64, GeometryError> {
    space.check_dim(l)?;
    Ok(space.norm.conjugate().apply(l))
}

/// A unit-norm `x` with `L(x) = dual_norm(L)`.
pub fn norming_vector(space: &BallSpace, l: &[Cplx]) -> Result<Vec<Cplx>, GeometryError> {
    let d = dual_norm(space, l)?;
    let zero = Cplx::new(0.0, 0.0);
    if d == 0.0 {
        let mut e = vec![zero; space.n];
        e[0] = Cplx::new(1.0, 0.0);
        return Ok(e);
    }
    let phase = |z: Cplx| if z.norm() == 0.0 { zero } else { z.conj() / z.norm() };
    Ok(match space.norm {
        NormTag::LInf => l.iter().map(|&z| phase(z)).collect(),
        NormTag::L1 => {
            let k = (0..l.len())
                .max_by(|&a, &b| l[a].norm().total_cmp(&l[b].norm()))
                .unwrap_or(0);
            let mut e = vec![zero; space.n];
            e[k] = phase(l[k]);
            e
        }
        NormTag::L2 => l.iter().map(|&z| z.conj() / d).collect(),
        NormTag::Lp(p) => {
            let q = p / (p - 1.0);
            l.iter()
                .map(|&z| phase(z) * (z.norm() / d).powf(q - 1.0))
                .collect()
        }
    })
}

fn check_disc(z: Cplx) -> Result<(), GeometryError> {
    if !(z.norm() < 1.0) {
        return Err(GeometryError::OutsideBall { norm: z.norm() });
    }
    Ok(())
}

/// `ρ(z, w) = |z − w| / |1 − z̄w|` on the unit disc.
pub fn pseudo_disc(z: Cplx, w: Cplx) -> Result<f64, GeometryError> {
    check_disc(z)?;
    check_disc(w)?;
    Ok(((z - w) / (1.0 - z.conj() * w)).norm())
}

/// Coordinatewise maximum of the disc distance.
pub fn pseudo_polydisc(x: &[Cplx], y: &[Cplx]) -> Result<f64, GeometryError> {
    if x.len() != y.len() {
        return Err(GeometryError::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    x.iter()
        .zip(y)
        .try_fold(0.0_f64, |acc, (&a, &b)| Ok(acc.max(pseudo_disc(a, b)?)))
}

/// `ρ` on the Euclidean ball: `1 − ρ² = (1 − ‖x‖²)(1 − ‖y‖²) / |1 − ⟨x, y⟩|²`.
pub fn pseudo_hilbert(x: &[Cplx], y: &[Cplx]) -> Result<f64, GeometryError> {
    let space = BallSpace::hilbert(x.len());
    space.check_dim(y)?;
    space.check_interior(x)?;
    space.check_interior(y)?;
    let inner: Cplx = x.iter().zip(y).map(|(a, b)| a * b.conj()).sum();
    // |1 − ⟨x,y⟩|² − (1 − ‖x‖²)(1 − ‖y‖²) = ‖d‖² − Σ_{i<j} |x_i d_j − x_j d_i|²
    // with d = y − x (Lagrange's identity); both terms vanish at x = y, so
    // nearby points do not lose their distance to cancellation.
    let d: Vec<Cplx> = y.iter().zip(x).map(|(b, a)| b - a).collect();
    let mut num: f64 = d.iter().map(|v| v.norm_sqr()).sum();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            num -= (x[i] * d[j] - x[j] * d[i]).norm_sqr();
        }
    }
    Ok((num.max(0.0) / (1.0 - inner).norm_sqr()).sqrt().min(1.0))
}

/// `ρ(x, y)` where a closed form is available: disc and polydisc, the
/// Euclidean ball, and any pair with one point at the origin (`ρ(x, 0) = ‖x‖`).
pub fn pseudo(space: &BallSpace, x: &[Cplx], y: &[Cplx]) -> Result<f64, GeometryError> {
    space.check_dim(x)?;
    space.check_dim(y)?;
    match space.family() {
        BallFamily::Polydisc => pseudo_polydisc(x, y),
        BallFamily::Hilbert => pseudo_hilbert(x, y),
        BallFamily::Lp => {
            let is_zero = |v: &[Cplx]| v.iter().all(|z| z.norm() == 0.0);
            if is_zero(y) {
                space.check_interior(x)
            } else if is_zero(x) {
                space.check_interior(y)
            } else {
                Err(GeometryError::Unsupported(format!(
                    "pseudohyperbolic distance between two nonzero points of {space}"
                )))
            }
        }
    }
}

/// `β = ½ log((1 + ρ)/(1 − ρ))`.
pub fn hyperbolic(rho: f64) -> Result<f64, GeometryError> {
    if !(0.0..1.0).contains(&rho) {
        return Err(GeometryError::InvalidRho(rho));
    }
    Ok(rho.atanh())
}

/// Returns `(ρ(y, x), ‖y − x‖ / r)`; the first never exceeds the second
/// whenever `B(x, r)` sits inside the unit ball.
pub fn schwarz_rho_bound(
    x: &[Cplx],
    y: &[Cplx],
    r: f64,
    space: &BallSpace,
) -> Result<(f64, f64), GeometryError> {
    let nx = norm(space, x)?;
    space.check_dim(y)?;
    if !(r > 0.0) || nx + r > 1.0 + 1e-15 {
        return Err(GeometryError::Precondition(format!(
            "B(x, {r}) is not contained in the unit ball (‖x‖ = {nx})"
        )));
    }
    let diff: Vec<Cplx> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let d = space.norm.apply(&diff);
    if !(d < r) {
        return Err(GeometryError::Precondition(format!(
            "‖y − x‖ = {d} is not below r = {r}"
        )));
    }
    Ok((pseudo(space, y, x)?, d / r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    #[test]
    fn norms() {
        let linf = BallSpace::polydisc(2);
        assert_eq!(norm(&linf, &[c(0.5, 0.0), c(0.0, -0.9)]).unwrap(), 0.9);
        assert_eq!(norm(&BallSpace::hilbert(2), &[c(3.0, 0.0), c(4.0, 0.0)]).unwrap(), 5.0);
        let l3 = BallSpace::lp(3.0, 2).unwrap();
        assert_abs_diff_eq!(
            norm(&l3, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap(),
            2f64.powf(1.0 / 3.0),
            epsilon = 1e-14
        );
        assert!(matches!(
            norm(&l3, &[c(1.0, 0.0)]),
            Err(GeometryError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn dual_norms() {
        let linf = BallSpace::polydisc(2);
        assert_eq!(dual_norm(&linf, &[c(1.0, 0.0), c(0.0, -1.0)]).unwrap(), 2.0);
        let l2 = BallSpace::hilbert(2);
        assert_eq!(dual_norm(&l2, &[c(3.0, 0.0), c(4.0, 0.0)]).unwrap(), 5.0);
        let l3 = BallSpace::lp(3.0, 2).unwrap();
        assert_abs_diff_eq!(
            dual_norm(&l3, &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap(),
            2f64.powf(2.0 / 3.0),
            epsilon = 1e-14
        );
        let l1 = BallSpace::lp(1.0, 3).unwrap();
        assert_eq!(dual_norm(&l1, &[c(1.0, 0.0), c(0.0, -3.0), c(2.0, 0.0)]).unwrap(), 3.0);
    }

    #[test]
    fn exponent_tags() {
        assert_eq!(NormTag::from_p(1.0).unwrap(), NormTag::L1);
        assert_eq!(NormTag::from_p(f64::INFINITY).unwrap(), NormTag::LInf);
        assert_eq!(NormTag::from_p(2.0).unwrap().conjugate(), NormTag::L2);
        assert_eq!(NormTag::Lp(3.0).conjugate(), NormTag::Lp(1.5));
        assert!(NormTag::from_p(0.5).is_err());
        assert!(NormTag::from_p(f64::NAN).is_err());
    }

    #[test]
    fn space_specs() {
        assert_eq!("linf:2".parse::<BallSpace>().unwrap(), BallSpace::polydisc(2));
        assert_eq!("l2:3".parse::<BallSpace>().unwrap(), BallSpace::hilbert(3));
        assert_eq!("lp:3:2".parse::<BallSpace>().unwrap(), BallSpace::lp(3.0, 2).unwrap());
        assert_eq!("lp:inf:4".parse::<BallSpace>().unwrap(), BallSpace::polydisc(4));
        assert!("lp:0.5:2".parse::<BallSpace>().is_err());
        assert!("l7:2".parse::<BallSpace>().is_err());
        assert!("linf:0".parse::<BallSpace>().is_err());
        for s in ["linf:2", "l2:3", "lp:3:2", "lp:1:2"] {
            let sp: BallSpace = s.parse().unwrap();
            assert_eq!(sp.to_string().parse::<BallSpace>().unwrap(), sp);
        }
    }

    #[test]
    fn families() {
        assert_eq!(BallSpace::lp(3.0, 1).unwrap().family(), BallFamily::Polydisc);
        assert_eq!(BallSpace::hilbert(1).family(), BallFamily::Polydisc);
        assert_eq!(BallSpace::polydisc(3).family(), BallFamily::Polydisc);
        assert_eq!(BallSpace::hilbert(2).family(), BallFamily::Hilbert);
        assert_eq!(BallSpace::lp(1.0, 2).unwrap().family(), BallFamily::Lp);
    }

    #[test]
    fn disc_distance() {
        assert_abs_diff_eq!(pseudo_disc(c(0.5, 0.0), c(0.0, 0.0)).unwrap(), 0.5, epsilon = 1e-15);
        assert_eq!(pseudo_disc(c(0.3, 0.2), c(0.3, 0.2)).unwrap(), 0.0);
        assert_abs_diff_eq!(pseudo_disc(c(0.0, 0.5), c(0.0, -0.5)).unwrap(), 0.8, epsilon = 1e-15);
        assert!(pseudo_disc(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn polydisc_distance() {
        let o = [c(0.0, 0.0), c(0.0, 0.0)];
        assert_abs_diff_eq!(
            pseudo_polydisc(&[c(0.5, 0.0), c(0.0, 0.0)], &o).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        let x = [c(0.0, 0.5), c(0.3, 0.0)];
        assert_eq!(pseudo_polydisc(&x, &x).unwrap(), 0.0);
        let y = [c(0.0, -0.5), c(0.3, 0.0)];
        assert_abs_diff_eq!(pseudo_polydisc(&x, &y).unwrap(), 0.8, epsilon = 1e-15);
        assert!(pseudo_polydisc(&[c(0.0, 1.0)], &[c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn general_distance_support() {
        let l3 = BallSpace::lp(3.0, 2).unwrap();
        let x = [c(0.5, 0.0), c(0.5, 0.0)];
        let o = [c(0.0, 0.0), c(0.0, 0.0)];
        assert_abs_diff_eq!(pseudo(&l3, &x, &o).unwrap(), norm(&l3, &x).unwrap(), epsilon = 1e-15);
        assert!(matches!(
            pseudo(&l3, &x, &[c(0.1, 0.0), c(0.0, 0.0)]),
            Err(GeometryError::Unsupported(_))
        ));
        // Euclidean ball, one point at the origin
        let h = BallSpace::hilbert(2);
        assert_abs_diff_eq!(pseudo(&h, &[c(0.3, 0.0), c(0.0, 0.4)], &o).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn hyperbolic_distance() {
        assert_eq!(hyperbolic(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(hyperbolic(0.5).unwrap(), 0.5 * 3f64.ln(), epsilon = 1e-15);
        assert!(hyperbolic(1.0).is_err());
        assert!(hyperbolic(-0.1).is_err());
        assert!(hyperbolic(1.0 - 1e-15).unwrap().is_finite());
    }

    #[test]
    fn schwarz_corollary() {
        let disc = BallSpace::disc();
        let (l, r) = schwarz_rho_bound(&[c(0.0, 0.0)], &[c(0.3, 0.0)], 1.0, &disc).unwrap();
        assert_abs_diff_eq!(l, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(r, 0.3, epsilon = 1e-15);

        let (l, r) = schwarz_rho_bound(&[c(0.5, 0.0)], &[c(0.6, 0.0)], 0.5, &disc).unwrap();
        assert_abs_diff_eq!(l, 1.0 / 7.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r, 0.2, epsilon = 1e-12);

        let bi = BallSpace::polydisc(2);
        let (l, r) = schwarz_rho_bound(
            &[c(0.0, 0.0), c(0.0, 0.0)],
            &[c(0.2, 0.0), c(0.1, 0.0)],
            1.0,
            &bi,
        )
        .unwrap();
        assert_abs_diff_eq!(l, 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(r, 0.2, epsilon = 1e-15);

        assert!(schwarz_rho_bound(&[c(0.5, 0.0)], &[c(0.6, 0.0)], 0.6, &disc).is_err());
        assert!(schwarz_rho_bound(&[c(0.5, 0.0)], &[c(0.9, 0.0)], 0.3, &disc).is_err());
    }

    #[test]
    fn norming_vectors_attain_dual_norm() {
        let l = [c(0.3, -1.2), c(0.7, 0.4), c(-0.1, 0.0)];
        for space in [
            BallSpace::polydisc(3),
            BallSpace::hilbert(3),
            BallSpace::lp(1.0, 3).unwrap(),
            BallSpace::lp(3.0, 3).unwrap(),
            BallSpace::lp(1.5, 3).unwrap(),
        ] {
            let x = norming_vector(&space, &l).unwrap();
            assert_abs_diff_eq!(norm(&space, &x).unwrap(), 1.0, epsilon = 1e-12);
            let lx: Cplx = l.iter().zip(&x).map(|(a, b)| a * b).sum();
            assert_abs_diff_eq!(lx.norm(), dual_norm(&space, &l).unwrap(), epsilon = 1e-12);
        }
    }
}

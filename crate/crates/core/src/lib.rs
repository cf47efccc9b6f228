//! Bloch seminorms on unit balls of finite-dimensional complex Banach spaces.
//!
//! The crate covers the pieces needed to compare the natural seminorm
//! `sup (1 − ‖x‖²)‖f′(x)‖` with the automorphism-invariant one
//! `sup_φ ‖(f ∘ φ)′(0)‖` on the disc, polydiscs, Euclidean balls and ℓpⁿ:
//!
//! * [`jet`]: forward-mode complex differentiation
//! * [`geometry`]: norms, dual norms, pseudohyperbolic and hyperbolic distances
//! * [`functions`]: expression trees, parser, evaluator and named test functions
//! * [`automorphism`]: Möbius maps and isometries of the supported balls
//! * [`seminorm`]: densities, supremum estimation, Lipschitz checks
//! * [`harness`]: verification suites and JSON/CSV reports

pub mod automorphism;
pub mod functions;
pub mod geometry;
pub mod harness;
pub mod jet;
pub mod sampling;
pub mod seminorm;

pub use automorphism::{Automorphism, DiscMobius, GenPermIsometry, HilbertMobius, PolydiscAuto};
pub use functions::{eval, eval_grad, parse, Expr};
pub use geometry::{BallSpace, NormTag};
pub use jet::{parse_cplx, parse_cplx_list, Cplx, Jet, LogBranch};
pub use sampling::SupEstimate;
pub use seminorm::{density, estimate_sup, inv_density, nat_density, DensityKind};

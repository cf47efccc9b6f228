use blochlab_core::automorphism::{pullback_derivative_norm, Automorphism, DiscMobius, GenPermIsometry};
use blochlab_core::functions::{catalog, eval, eval_grad, parse, sup_norm_search};
use blochlab_core::geometry::{dual_norm, norm, norming_vector, pseudo, pseudo_disc};
use blochlab_core::{estimate_sup, inv_density, nat_density, BallSpace, Cplx, DensityKind};
use proptest::prelude::*;

fn cplx(bound: f64) -> impl Strategy<Value = Cplx> {
    (-bound..bound, -bound..bound).prop_map(|(a, b)| Cplx::new(a, b))
}

fn disc_point(rmax: f64) -> impl Strategy<Value = Cplx> {
    (0.0..rmax, -3.14..3.14f64).prop_map(|(r, t)| Cplx::from_polar(r, t))
}

/// Point of `space` with norm below `rmax`.
fn ball_point(space: BallSpace, rmax: f64) -> impl Strategy<Value = Vec<Cplx>> {
    (proptest::collection::vec(cplx(1.0), space.n), 0.0..rmax).prop_map(move |(v, r)| {
        let n = space.norm.apply(&v);
        if n == 0.0 {
            v
        } else {
            v.into_iter().map(|z| z * (r / n)).collect()
        }
    })
}

fn bidisc() -> BallSpace {
    BallSpace::polydisc(2)
}

fn l2() -> BallSpace {
    BallSpace::hilbert(2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn disc_metric_axioms(z in disc_point(0.999), w in disc_point(0.999), u in disc_point(0.999)) {
        let r = |a, b| pseudo_disc(a, b).unwrap();
        prop_assert!(r(z, z) == 0.0);
        prop_assert!((r(z, w) - r(w, z)).abs() < 1e-15);
        prop_assert!(r(z, w) < 1.0);
        prop_assert!(r(z, u) <= r(z, w) + r(w, u) + 1e-12);
    }

    #[test]
    fn hilbert_metric_axioms(x in ball_point(l2(), 0.999), y in ball_point(l2(), 0.999), z in ball_point(l2(), 0.999)) {
        let sp = l2();
        let r = |a: &[Cplx], b: &[Cplx]| pseudo(&sp, a, b).unwrap();
        prop_assert!(r(&x, &x) == 0.0);
        prop_assert!((r(&x, &y) - r(&y, &x)).abs() < 1e-14);
        prop_assert!(r(&x, &z) <= r(&x, &y) + r(&y, &z) + 1e-12);
    }

    #[test]
    fn mobius_invariance(a in disc_point(0.99), alpha in -3.0..3.0f64, z in disc_point(0.999), w in disc_point(0.999)) {
        let phi = DiscMobius::new(a, alpha).unwrap();
        let before = pseudo_disc(z, w).unwrap();
        let after = pseudo_disc(phi.apply(z), phi.apply(w)).unwrap();
        prop_assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn polydisc_automorphisms_are_involutions(x in ball_point(bidisc(), 0.99), y in ball_point(bidisc(), 0.999)) {
        let phi = Automorphism::point(&bidisc(), &x).unwrap();
        let py = phi.apply(&y).unwrap();
        prop_assert!(norm(&bidisc(), &py).unwrap() < 1.0);
        let back = phi.apply(&py).unwrap();
        for (b, v) in back.iter().zip(&y) {
            prop_assert!((b - v).norm() < 1e-9);
        }
        // sends 0 to x and preserves distances
        for (p, q) in phi.image_of_zero().iter().zip(&x) {
            prop_assert!((p - q).norm() < 1e-15);
        }
    }

    #[test]
    fn hilbert_automorphisms_preserve_distance(x in ball_point(l2(), 0.99), y in ball_point(l2(), 0.999), z in ball_point(l2(), 0.999)) {
        let phi = Automorphism::point(&l2(), &x).unwrap();
        let (py, pz) = (phi.apply(&y).unwrap(), phi.apply(&z).unwrap());
        prop_assert!(norm(&l2(), &py).unwrap() < 1.0);
        let d0 = pseudo(&l2(), &y, &z).unwrap();
        let d1 = pseudo(&l2(), &py, &pz).unwrap();
        prop_assert!((d0 - d1).abs() < 1e-9);
    }

    #[test]
    fn contractivity_of_squaring(z in disc_point(0.999), w in disc_point(0.999)) {
        prop_assert!(pseudo_disc(z * z, w * w).unwrap() <= pseudo_disc(z, w).unwrap() + 1e-10);
    }

    #[test]
    fn dual_norm_is_attained(l in proptest::collection::vec(cplx(3.0), 3), p in 1.0..6.0f64, v in proptest::collection::vec(cplx(1.0), 3)) {
        let space = BallSpace::lp(p, 3).unwrap();
        let d = dual_norm(&space, &l).unwrap();
        let apply = |x: &[Cplx]| -> Cplx { l.iter().zip(x).map(|(a, b)| a * b).sum() };
        // Hölder
        prop_assert!(apply(&v).norm() <= d * norm(&space, &v).unwrap() * (1.0 + 1e-12) + 1e-12);
        let e = norming_vector(&space, &l).unwrap();
        prop_assert!((norm(&space, &e).unwrap() - 1.0).abs() < 1e-9);
        prop_assert!((apply(&e) - Cplx::new(d, 0.0)).norm() < 1e-9 * d.max(1.0));
    }

    #[test]
    fn lp_isometries_fix_inv_density(x in ball_point(BallSpace::lp(3.0, 2).unwrap(), 0.99), t in -3.0..3.0f64, swap in any::<bool>()) {
        let space = BallSpace::lp(3.0, 2).unwrap();
        let sigma = if swap { vec![1, 0] } else { vec![0, 1] };
        let u = Automorphism::Isometry(GenPermIsometry::new(sigma, vec![Cplx::from_polar(1.0, t), Cplx::new(0.0, 1.0)]).unwrap());
        let ux = u.apply(&x).unwrap();
        prop_assert!((norm(&space, &ux).unwrap() - norm(&space, &x).unwrap()).abs() < 1e-12);
        for e in catalog().into_iter().filter(|e| e.space == space) {
            let a = pullback_derivative_norm(&e.expr, &u, &space).unwrap();
            let b = inv_density(&e.expr, &space, &x).unwrap();
            prop_assert!((a - b).abs() < 1e-12, "{}", e.name);
        }
    }

    #[test]
    fn nat_dominated_by_inv(x in ball_point(bidisc(), 0.999), y in ball_point(l2(), 0.999)) {
        for e in catalog() {
            let pt = if e.space == bidisc() { &x } else if e.space == l2() { &y } else { continue };
            let n = nat_density(&e.expr, &e.space, pt).unwrap();
            let i = inv_density(&e.expr, &e.space, pt).unwrap();
            prop_assert!(n <= i * (1.0 + 1e-12) + 1e-12, "{}: {n} > {i}", e.name);
        }
    }

    #[test]
    fn gradients_match_finite_differences(x in ball_point(bidisc(), 0.9)) {
        let h = 1e-6;
        for e in catalog().into_iter().filter(|e| e.space == bidisc()) {
            let (_, g) = eval_grad(&e.expr, &x).unwrap();
            let scale = g.iter().map(|v| v.norm()).fold(1e-300, f64::max);
            for k in 0..2 {
                let mut p = x.clone();
                let mut m = x.clone();
                p[k] += h;
                m[k] -= h;
                let fd = (eval(&e.expr, &p).unwrap() - eval(&e.expr, &m).unwrap()) / (2.0 * h);
                prop_assert!((fd - g[k]).norm() / scale < 1e-6, "{}", e.name);
            }
        }
    }

    #[test]
    fn printed_expressions_reparse(idx in 0usize..64, x in ball_point(bidisc(), 0.9)) {
        let all = catalog();
        let e = &all[idx % all.len()];
        let printed = e.expr.to_string();
        let back = parse(&printed, e.arity).unwrap();
        let pt: Vec<Cplx> = x.iter().copied().chain(std::iter::repeat(Cplx::new(0.0, 0.0))).take(e.arity).collect();
        let (a, b) = (eval(&e.expr, &pt).unwrap(), eval(&back, &pt).unwrap());
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0), "{printed}");
    }
}

#[test]
fn estimates_never_exceed_known_bounds() {
    for e in catalog() {
        if let Some(sup) = e.facts.sup_norm {
            let est = sup_norm_search(&e.expr, &e.space, 2000, 9);
            assert!(est.value <= sup + 1e-12, "{}: {} > {sup}", e.name, est.value);
            // the witness really attains the reported value
            let at = eval(&e.expr, &est.witness).unwrap().norm();
            assert_eq!(at, est.value, "{}", e.name);
        }
        if let Some(upper) = e.facts.nat_upper {
            let est = estimate_sup(DensityKind::Nat, &e.expr, &e.space, 2000, 9).unwrap();
            assert!(est.value <= upper + 1e-9, "{}: {} > {upper}", e.name, est.value);
        }
        if let Some(exact) = e.facts.inv_exact {
            let est = estimate_sup(DensityKind::Inv, &e.expr, &e.space, 2000, 9).unwrap();
            assert!((est.value - exact).abs() < 1e-12, "{}", e.name);
        }
    }
}

#[test]
fn estimates_are_monotone_and_seeded() {
    let e = blochlab_core::functions::lookup("countex1").unwrap();
    let mut prev = 0.0;
    for b in [16, 32, 64, 128, 256, 512, 1024, 2048] {
        let est = estimate_sup(DensityKind::Inv, &e.expr, &e.space, b, 5).unwrap();
        assert!(est.value >= prev);
        prev = est.value;
    }
    let a = estimate_sup(DensityKind::Nat, &e.expr, &e.space, 3000, 1).unwrap();
    let b = estimate_sup(DensityKind::Nat, &e.expr, &e.space, 3000, 1).unwrap();
    assert_eq!(a, b);
}

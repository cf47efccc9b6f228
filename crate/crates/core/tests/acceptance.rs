//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use blochlab_core::functions::{lookup, lookup_for, sup_norm_estimate};
use blochlab_core::harness::{run_suite, CheckResult, Status};
use blochlab_core::BallSpace;

const SEED: u64 = 20_240_917;

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<CheckResult>,
}

impl Criterion {
    fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.status == Status::Pass)
    }
}

/// Checks from `suite` whose names start with any of `prefixes`.
fn pick(suite: &str, budget: usize, prefixes: &[&str]) -> Vec<CheckResult> {
    let all = run_suite(suite, SEED, budget).expect("known suite");
    let picked: Vec<CheckResult> = all
        .into_iter()
        .filter(|c| prefixes.iter().any(|p| c.check.starts_with(p)))
        .collect();
    for p in prefixes {
        assert!(picked.iter().any(|c| c.check.starts_with(p)), "{suite} has no check {p}");
    }
    picked
}

fn unbounded_witnesses() -> Vec<CheckResult> {
    let mut checks = pick("unbounded_bloch", 100_000, &["nat_le_2["]);
    let spaces = [
        BallSpace::disc(),
        BallSpace::polydisc(2),
        BallSpace::hilbert(2),
        BallSpace::lp(3.0, 2).unwrap(),
        BallSpace::lp(1.5, 2).unwrap(),
        BallSpace::lp(1.0, 2).unwrap(),
        BallSpace::lp(4.0, 3).unwrap(),
    ];
    for space in spaces {
        let f = if space.n == 1 {
            lookup("h").unwrap()
        } else {
            lookup_for("log_functional", &space).unwrap()
        };
        let sup = sup_norm_estimate(&f.expr, &space, 1_000_000, SEED);
        checks.push(CheckResult::at_least(
            "acceptance",
            &format!("sup_exceeds_5[{space}]"),
            sup,
            5.0,
            0.0,
            "budget 1e6",
        ));
    }
    checks
}

#[test]
fn acceptance() {
    let started = std::time::Instant::now();
    let criteria = vec![
        Criterion {
            id: 1,
            title: "classical embedding on random disc polynomials",
            checks: pick("classical", 10_000, &["embedding_random_polynomials"]),
        },
        Criterion {
            id: 2,
            title: "Schwarz-Pick bound and equality at the origin",
            checks: pick("schwarz_pick", 10_000, &["mobius_bound[linf:1]", "equality_at_origin", "value_at_origin"]),
        },
        Criterion {
            id: 3,
            title: "bidisc separation of nat and inv",
            checks: pick(
                "bidisc_separation",
                100_000,
                &["inv_density_exceeds_log", "inv_shell_slope", "nat_estimate_lower", "nat_estimate_upper"],
            ),
        },
        Criterion {
            id: 4,
            title: "reverse separation on lp:3:2",
            checks: pick(
                "lp_separation",
                10_000,
                &["nat_density_closed_form", "inv_seminorm_exact[lp:3:2]", "inv_x_independent[lp:3:2]"],
            ),
        },
        Criterion {
            id: 5,
            title: "chain rule for polydisc automorphisms",
            checks: pick("chain_rule", 10_000, &["composition_matches_closed_form"]),
        },
        Criterion {
            id: 6,
            title: "bounded functions embed in both Bloch spaces",
            checks: [
                pick("hinfty_nat", 10_000, &["nat_le_2sup", "bloch_norm_le_3sup"]),
                pick("hinfty_inv", 10_000, &["inv_le_2sup[polydisc]"]),
            ]
            .concat(),
        },
        Criterion {
            id: 7,
            title: "unbounded Bloch witnesses log(1 - x1)",
            checks: unbounded_witnesses(),
        },
        Criterion {
            id: 8,
            title: "distance invariance, contractivity, sub-ball bound",
            checks: [
                pick("metric", 10_000, &["mobius_invariance", "contractivity"]),
                pick("schwarz", 10_000, &["corollary_equality_at_center", "corollary_bound"])
                    .into_iter()
                    .filter(|c| c.status != Status::Skipped)
                    .collect(),
            ]
            .concat(),
        },
        Criterion {
            id: 9,
            title: "autodiff vs finite differences, budget monotonicity",
            checks: pick("numerics", 4096, &["gradient_vs_finite_differences", "monotone_under_doubling"]),
        },
    ];

    for c in &criteria {
        let verdict = if c.passed() { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {}: {} ({} checks)", c.id, c.title, c.checks.len());
        for chk in c.checks.iter().filter(|k| k.status != Status::Pass) {
            println!(
                "    {} {}: value {} vs bound {} (tol {}) {}",
                chk.status.as_str(),
                chk.check,
                chk.value,
                chk.bound,
                chk.tolerance,
                chk.details
            );
        }
    }
    println!("acceptance finished in {:.1}s", started.elapsed().as_secs_f64());
    let failed: Vec<u32> = criteria.iter().filter(|c| !c.passed()).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

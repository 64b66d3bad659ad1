//! The twelve acceptance criteria, each with its time limit. Prints one line per criterion.

use std::time::{Duration, Instant};

use hh::{run_suite, Mode, Status, SuiteConfig};

struct Run {
    suite: &'static str,
    cfg: SuiteConfig,
    checks: &'static [&'static str],
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    runs: Vec<Run>,
}

fn cfg(n: Option<usize>, big_n: Option<u32>, kmax: Option<u32>) -> SuiteConfig {
    SuiteConfig {
        n,
        max_degree: big_n,
        kmax,
        mode: Mode::Both,
        ..SuiteConfig::default()
    }
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            name: "ladder and field commutation relations",
            limit: secs(5),
            runs: [1, 2]
                .into_iter()
                .map(|n| Run {
                    suite: "fock-basics",
                    cfg: cfg(Some(n), Some(8), None),
                    checks: &["ladder-commutators", "ladder-adjoint", "invariant-field-commutators"],
                })
                .collect(),
        },
        Criterion {
            id: 2,
            name: "Plancherel polarization",
            limit: secs(30),
            runs: vec![Run {
                suite: "plancherel",
                cfg: cfg(Some(2), Some(10), Some(6)),
                checks: &["plancherel-polarization"],
            }],
        },
        Criterion {
            id: 3,
            name: "Weyl transform of psi_k is the projection",
            limit: secs(20),
            runs: [1, 2]
                .into_iter()
                .map(|n| Run {
                    suite: "projections",
                    cfg: cfg(Some(n), Some(5), Some(5)),
                    checks: &["weyl-of-psi-is-projection"],
                })
                .collect(),
        },
        Criterion {
            id: 4,
            name: "completeness of the spherical expansion",
            limit: secs(30),
            runs: vec![Run {
                suite: "projections",
                cfg: cfg(Some(2), Some(8), Some(4)),
                checks: &["completeness"],
            }],
        },
        Criterion {
            id: 5,
            name: "theta closed forms",
            limit: secs(20),
            runs: vec![Run {
                suite: "generalized-spherical",
                cfg: cfg(Some(2), None, Some(5)),
                checks: &["theta-closed-form"],
            }],
        },
        Criterion {
            id: 6,
            name: "A-constant formula",
            limit: secs(10),
            runs: vec![Run {
                suite: "generalized-spherical",
                cfg: cfg(Some(2), None, Some(5)),
                checks: &["a-constant"],
            }],
        },
        Criterion {
            id: 7,
            name: "Hecke-Bochner coefficients and Geller integral",
            limit: secs(60),
            runs: [1, 2]
                .into_iter()
                .map(|n| Run {
                    suite: "hecke-bochner-un",
                    cfg: cfg(Some(n), Some(10), Some(5)),
                    checks: &["coefficients-all-bases", "vanishing-above-k", "gaussian-coefficient-n1"],
                })
                .collect(),
        },
        Criterion {
            id: 8,
            name: "product family eigenvalues and Laguerre forms",
            limit: secs(30),
            runs: vec![Run {
                suite: "hecke-bochner-product",
                cfg: cfg(None, None, Some(4)),
                checks: &["block-eigenvalues", "product-laguerre-forms", "product-coefficients"],
            }],
        },
        Criterion {
            id: 9,
            name: "square-integrable eigenfunction norm identity",
            limit: secs(30),
            runs: vec![Run {
                suite: "eigenfunctions",
                cfg: cfg(Some(2), None, Some(3)),
                checks: &["random-operators-norm-identity"],
            }],
        },
        Criterion {
            id: 10,
            name: "orthogonality and uniqueness",
            limit: secs(20),
            runs: vec![Run {
                suite: "generalized-spherical",
                cfg: cfg(Some(2), None, Some(4)),
                checks: &["orthogonality", "uniqueness-recovery"],
            }],
        },
        Criterion {
            id: 11,
            name: "surface-measure lemma and kernel series",
            limit: secs(60),
            runs: vec![Run {
                suite: "kernels-and-surface",
                cfg: cfg(None, None, Some(2)),
                checks: &["surface-lemma", "surface-vanishing", "q-projection", "q-versus-series"],
            }],
        },
        Criterion {
            id: 12,
            name: "eta against the J0 series",
            limit: secs(5),
            runs: vec![Run {
                suite: "eta",
                cfg: cfg(Some(1), None, None),
                checks: &["bessel-j0-grid"],
            }],
        },
    ]
}

/// Runs a criterion; returns failure descriptions.
fn evaluate(c: &Criterion) -> (Duration, Vec<String>) {
    let start = Instant::now();
    let mut problems = Vec::new();
    for run in &c.runs {
        let report = match run_suite(run.suite, &run.cfg) {
            Ok(r) => r,
            Err(e) => {
                problems.push(format!("{}: {e}", run.suite));
                continue;
            }
        };
        for id in run.checks {
            match report.records.iter().find(|r| r.check_id == *id) {
                Some(r) if r.status == Status::Pass => {}
                Some(r) => problems.push(format!(
                    "{}/{id}: {:?} residual {:e} {}",
                    run.suite,
                    r.status,
                    r.residual,
                    r.note.clone().unwrap_or_default()
                )),
                None => problems.push(format!("{}/{id}: not run", run.suite)),
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > c.limit {
        problems.push(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), c.limit.as_secs()));
    }
    (elapsed, problems)
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in criteria() {
        let (t, problems) = evaluate(&c);
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:2} {status} {:6.2}s (limit {:2}s)  {}",
            c.id,
            t.as_secs_f64(),
            c.limit.as_secs(),
            c.name
        );
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

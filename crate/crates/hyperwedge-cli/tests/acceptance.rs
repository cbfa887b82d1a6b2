//! Acceptance run: every verification suite, grouped into ten criteria, with one
//! PASS/FAIL line per criterion.

use hyperwedge_cli::config::Tolerances;
use hyperwedge_cli::suites::{run_suite, SuiteReport};
use rayon::prelude::*;

const CRITERIA: &[(u32, &str, &[&str])] = &[
    (1, "Legendre identities and Whipple relations", &["identities", "whipple"]),
    (2, "series vs integral representations", &["representations"]),
    (3, "generalized Mehler-Fock transform equality", &["transforms"]),
    (4, "addition formula", &["addition-formula"]),
    (5, "asymptotic ratios", &["asymptotics"]),
    (6, "product bounds", &["bounds"]),
    (7, "plane Green's function and heat kernel consistency", &["green-plane-consistency", "heat-consistency"]),
    (8, "wedge boundary behaviour", &["wedge-boundary"]),
    (9, "reflection oracle at γ = π", &["wedge-reflection"]),
    (10, "Laplace inversion and heat kernel round trip", &["laplace-roundtrip"]),
];

fn describe(report: &SuiteReport) -> Vec<String> {
    report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}/{}: {} of {} failed, worst {:e} vs {:e}; {}", report.name, c.label, c.failures, c.points, c.worst, c.limit, c.note))
        .collect()
}

#[test]
fn acceptance() {
    let tol = Tolerances::default();
    let names: Vec<&str> = CRITERIA.iter().flat_map(|(_, _, s)| s.iter().copied()).collect();
    let reports: Vec<SuiteReport> = names.par_iter().map(|n| run_suite(n, &tol).expect("known suite")).collect();

    let mut failed = Vec::new();
    for (id, title, suites) in CRITERIA {
        let mut problems = Vec::new();
        for r in reports.iter().filter(|r| suites.contains(&r.name)) {
            problems.extend(describe(r));
        }
        if problems.is_empty() {
            println!("PASS criterion {id}: {title}");
        } else {
            println!("FAIL criterion {id}: {title}");
            for p in &problems {
                println!("    {p}");
            }
            failed.push(*id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

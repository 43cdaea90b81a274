//! One line per acceptance criterion. Each criterion is a set of suite
//! checks plus a wall-clock limit on their summed running time.
//!
//! Criterion 2 is known to be unattainable as stated: the star clause holds
//! only for graphs on at most two vertices. Its line reads FAIL, and the
//! harness asserts that it fails exactly in that way.

use std::collections::BTreeMap;

use radtower::suite::{run_suite, CheckReport, Status, SuiteOptions, DEFAULT_BUDGET, SUITES};

struct Criterion {
    id: u32,
    title: &'static str,
    limit_ms: u128,
    checks: &'static [(&'static str, &'static str)],
    /// Stretch checks: `Unknown` is acceptable, `Fail` is not.
    stretch: &'static [(&'static str, &'static str)],
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "gadget exactness",
        limit_ms: 1_000,
        checks: &[("graphs", "gadget shape")],
        stretch: &[],
    },
    Criterion {
        id: 2,
        title: "graph-color corpus",
        limit_ms: 120_000,
        checks: &[("graphs", "transform corpus"), ("graphs", "disconnected input rejected")],
        stretch: &[],
    },
    Criterion {
        id: 3,
        title: "field construction",
        limit_ms: 120_000,
        checks: &[("field", "tower K2"), ("field", "tower P3"), ("field", "tower K3 (colors 0,1,2)")],
        stretch: &[],
    },
    Criterion {
        id: 4,
        title: "irreducibility",
        limit_ms: 60_000,
        checks: &[("roots", "deepest roots are irreducible")],
        stretch: &[],
    },
    Criterion {
        id: 5,
        title: "p-high classification",
        limit_ms: 180_000,
        checks: &[("roots", "p0-high classification"), ("roots", "x_s^0 has no p'-th roots")],
        stretch: &[],
    },
    Criterion {
        id: 6,
        title: "sigma and Psi",
        limit_ms: 120_000,
        checks: &[("sigma", "sigma on transform(K2)"), ("sigma", "sigma on transform(K3)")],
        stretch: &[],
    },
    Criterion {
        id: 7,
        title: "group towers",
        limit_ms: 60_000,
        checks: &[
            ("groups", "automorphism tower of A5"),
            ("groups", "normalizer tower of A5 matches"),
            ("groups", "normalizer tower of <(0 1)> in S4"),
        ],
        stretch: &[],
    },
    Criterion {
        id: 8,
        title: "PSL facts",
        limit_ms: 300_000,
        checks: &[
            ("groups", "PSL(2,q) simple"),
            ("groups", "PSL(2,3) not simple"),
            ("groups", "Aut(PSL(2,4)) = PGammaL(2,4)"),
        ],
        stretch: &[("groups", "Aut(PSL(2,9)) = PGammaL(2,9)")],
    },
    Criterion {
        id: 9,
        title: "semidirect induction",
        limit_ms: 300_000,
        checks: &[
            ("groups", "semidirect tower q=4, H trivial"),
            ("groups", "semidirect tower q=8, H trivial"),
            ("groups", "semidirect tower q=9, H = <Frob>"),
        ],
        stretch: &[],
    },
    Criterion {
        id: 10,
        title: "root round trip",
        limit_ms: 180_000,
        checks: &[("roots", "root round trip")],
        stretch: &[],
    },
];

fn all_reports() -> BTreeMap<(String, String), CheckReport> {
    let opts = SuiteOptions { seed: 0, budget: DEFAULT_BUDGET };
    SUITES
        .iter()
        .flat_map(|s| run_suite(s, &opts).expect("known suite"))
        .map(|r| ((r.suite.clone(), r.check.clone()), r))
        .collect()
}

#[test]
fn acceptance() {
    let reps = all_reports();
    let get = |(s, c): &(&str, &str)| reps.get(&(s.to_string(), c.to_string())).unwrap_or_else(|| panic!("no check {s}/{c}"));
    let mut failures = vec![];
    for cr in CRITERIA {
        let mut ok = true;
        let mut ms = 0;
        let mut notes = vec![];
        for key in cr.checks {
            let r = get(key);
            ms += r.elapsed_ms;
            if r.status != Status::Pass {
                ok = false;
                notes.push(format!("{}: {:?}", r.check, r.status));
            }
        }
        for key in cr.stretch {
            let r = get(key);
            ms += r.elapsed_ms;
            match r.status {
                Status::Fail => {
                    ok = false;
                    notes.push(format!("{}: Fail", r.check));
                }
                Status::Unknown => notes.push(format!("{}: skipped", r.check)),
                Status::Pass => {}
            }
        }
        if ms > cr.limit_ms {
            ok = false;
            notes.push(format!("{ms} ms over the {} ms limit", cr.limit_ms));
        }

        if cr.id == 2 {
            // The star clause fails for every graph with three or more
            // vertices; the documented check passes iff that is exactly
            // what happened.
            let star = get(&("graphs", "star clause fails as documented"));
            ms += star.elapsed_ms;
            let documented = star.status == Status::Pass && star.details["star_failures"].as_u64() > Some(0);
            println!(
                "criterion 2 ({}): FAIL [known unattainable: star clause, {} of {} graphs] other clauses {} in {ms} ms",
                cr.title,
                star.details["star_failures"],
                star.details["graphs"],
                if ok { "pass" } else { "FAIL" },
            );
            if !ok || !documented {
                failures.push(format!("criterion 2 did not fail in the documented way: {notes:?} {}", star.details));
            }
            continue;
        }

        println!(
            "criterion {} ({}): {} in {ms} ms (limit {} ms){}",
            cr.id,
            cr.title,
            if ok { "PASS" } else { "FAIL" },
            cr.limit_ms,
            if notes.is_empty() { String::new() } else { format!(" [{}]", notes.join("; ")) },
        );
        if !ok {
            failures.push(format!("criterion {}: {notes:?}", cr.id));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

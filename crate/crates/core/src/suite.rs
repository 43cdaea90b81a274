//! Verification suites shared by the command line and the acceptance tests.
//! Every check yields one [`CheckReport`]; a failing check carries its
//! counterexample in `details`, an undecided one the budget it ran out of.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::autfield::verify_injectivity_sigma;
use crate::error::Result;
use crate::fieldtower::checks::{independence_check, primality_smoke, rng};
use crate::fieldtower::{generator_radical, generator_var, Ctx, Depths, TowerCtx, TowerElement};
use crate::graphs::corpus::connected_graphs_up_to;
use crate::graphs::transform::{gadget_prime, COLOR_COUNT};
use crate::graphs::{aut_colored, aut_graph, aut_graph_with, check_star_coloring, gadget, lift_aut, restrict_aut, transform, AutOptions};
use crate::graphs::{ColoredGraph, Graph};
use crate::groups::autgroup::aut_group;
use crate::groups::tower::DEFAULT_MAX_STEPS;
use crate::groups::verify::{verify_semidirect_tower, verify_simple_tower, verify_van_der_waerden, TowerBase};
use crate::groups::{automorphism_tower, normalizer_tower, pgammal2, psl2, Perm, PermGroup};
use crate::par;
use crate::roots::corpus::{random_high_monomial, random_structured, random_unstructured};
use crate::roots::{
    check_irreducible_radical, classify_p_high, is_p_high, pth_root_with, q_high_descends, HighVerdict, RootOptions,
    RootResult,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub check: String,
    pub anchor: String,
    pub status: Status,
    pub details: Value,
    pub elapsed_ms: u128,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Random trials per check; stretch checks run only at the default or
    /// above.
    pub budget: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0, budget: DEFAULT_BUDGET }
    }
}

pub const DEFAULT_BUDGET: usize = 200;

pub const SUITES: [&str; 5] = ["graphs", "groups", "field", "roots", "sigma"];

type Check = Box<dyn Fn() -> (Status, Value) + Send + Sync>;

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn from_err<T>(r: Result<T>, f: impl FnOnce(T) -> (Status, Value)) -> (Status, Value) {
    match r {
        Ok(v) => f(v),
        Err(crate::Error::BudgetExceeded(m)) => (Status::Unknown, json!({ "budget": m })),
        Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
    }
}

fn run(suite: &str, checks: Vec<(&str, &str, Check)>) -> Vec<CheckReport> {
    par::map(&checks, |(name, anchor, f)| {
        let t = Instant::now();
        let (status, details) = f();
        CheckReport {
            suite: suite.into(),
            check: name.to_string(),
            anchor: anchor.to_string(),
            status,
            details,
            elapsed_ms: t.elapsed().as_millis(),
        }
    })
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Option<Vec<CheckReport>> {
    Some(match name {
        "graphs" => graphs_suite(opts),
        "groups" => groups_suite(opts),
        "field" => field_suite(opts),
        "roots" => roots_suite(opts),
        "sigma" => sigma_suite(opts),
        _ => return None,
    })
}

/// Clauses of the star-coloring transform on one connected graph.
#[derive(Clone, Debug, Serialize)]
pub struct GraphColorReport {
    pub graph: String,
    pub aut_order: usize,
    pub plus_aut_order: usize,
    pub restrict_lift_identity: bool,
    pub vertex_count_ok: bool,
    pub stars: bool,
}

pub fn graph_color_report(g: &Graph) -> Result<GraphColorReport> {
    let cg = transform(g)?;
    let a = aut_graph(g)?;
    // transform(Γ) has |X|+4|E| vertices, past the default bound at six.
    let opts = AutOptions { max_vertices: cg.graph.num_vertices(), ..AutOptions::default() };
    let ap = aut_graph_with(&cg.graph, Some(&cg.colors), opts)?;
    let mut restrict_lift_identity = true;
    for psi in a.elements() {
        restrict_lift_identity &= restrict_aut(&cg, &lift_aut(&cg, psi)?)? == *psi;
    }
    Ok(GraphColorReport {
        graph: format!("{:?}", g.edges()),
        aut_order: a.order(),
        plus_aut_order: ap.order(),
        restrict_lift_identity,
        vertex_count_ok: cg.graph.num_vertices() == g.num_vertices() + 4 * g.num_edges(),
        stars: check_star_coloring(&cg).iter().all(|s| s.pass),
    })
}

pub fn graphs_suite(_opts: &SuiteOptions) -> Vec<CheckReport> {
    let checks: Vec<(&str, &str, Check)> = vec![
        (
            "gadget shape",
            "gadget and the seven-edge graph",
            Box::new(|| {
                let g = gadget();
                from_err(aut_graph(&g), |a| {
                    let ok = g.num_vertices() == 6
                        && g.num_edges() == 9
                        && a.order() == 2
                        && gadget_prime().num_edges() == 7
                        && COLOR_COUNT == 7;
                    (status(ok), json!({"vertices": g.num_vertices(), "edges": g.num_edges(), "aut": a.order(),
                        "prime_edges": gadget_prime().num_edges()}))
                })
            }),
        ),
        (
            "transform corpus",
            "graph-color lemma: automorphisms, restriction, size",
            Box::new(|| {
                let corpus = connected_graphs_up_to(6);
                let reps = par::map(&corpus, graph_color_report);
                let mut bad = vec![];
                for r in &reps {
                    match r {
                        Ok(r) if r.aut_order == r.plus_aut_order && r.restrict_lift_identity && r.vertex_count_ok => {}
                        Ok(r) => bad.push(json!(r)),
                        Err(e) => bad.push(json!(e.to_string())),
                    }
                }
                (status(bad.is_empty()), json!({"graphs": corpus.len(), "failures": bad}))
            }),
        ),
        (
            "star clause fails as documented",
            "graph-color lemma: color classes are stars",
            Box::new(|| {
                // Known discrepancy: the two attachment edges at (2,u,z) share
                // a color, so classes 0 and 1 are stars only for K1 and K2.
                let corpus = connected_graphs_up_to(6);
                let mut unexpected = vec![];
                let mut star_failures = 0;
                for g in &corpus {
                    let cg = match transform(g) {
                        Ok(c) => c,
                        Err(e) => return (Status::Fail, json!({"error": e.to_string()})),
                    };
                    let reps = check_star_coloring(&cg);
                    let pass = reps.iter().all(|s| s.pass);
                    let expected = g.num_vertices() <= 2;
                    if pass != expected {
                        unexpected.push(format!("{:?}", g.edges()));
                    }
                    star_failures += (!pass) as usize;
                }
                (
                    status(unexpected.is_empty()),
                    json!({"documented_discrepancy": true, "graphs": corpus.len(),
                        "star_failures": star_failures, "unexpected": unexpected}),
                )
            }),
        ),
        (
            "disconnected input rejected",
            "transform precondition",
            Box::new(|| {
                let g = Graph::from_indices(3, &[(0, 1)]).expect("valid graph");
                let r = transform(&g);
                (status(matches!(r, Err(crate::Error::Disconnected))), json!({}))
            }),
        ),
    ];
    run("graphs", checks)
}

fn orders_check(rep: &crate::groups::TowerReport, tau: usize, orders: &[usize]) -> (Status, Value) {
    let got = rep.stage_orders();
    (status(rep.tau == tau && got == orders), json!({"tau": rep.tau, "orders": got}))
}

pub fn groups_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    let stretch = opts.budget >= DEFAULT_BUDGET;
    let mut checks: Vec<(&str, &str, Check)> = vec![
        (
            "automorphism tower of A5",
            "automorphism tower of a simple group",
            Box::new(|| {
                from_err(automorphism_tower(&PermGroup::alternating(5), DEFAULT_MAX_STEPS, 1000), |r| {
                    orders_check(&r, 1, &[60, 120])
                })
            }),
        ),
        (
            "normalizer tower of A5 matches",
            "simple-group towers agree stagewise",
            Box::new(|| {
                from_err(verify_simple_tower(&PermGroup::alternating(5), &TowerBase::Inner), |r| {
                    (status(r.pass), json!(r))
                })
            }),
        ),
        (
            "normalizer tower of <(0 1)> in S4",
            "normalizer tower",
            Box::new(|| {
                let s4 = PermGroup::symmetric(4);
                let t = Perm::from_cycles(4, &[vec![0, 1]]).expect("valid cycle");
                from_err(s4.subgroup(&[t]).and_then(|h| normalizer_tower(&s4, &h, DEFAULT_MAX_STEPS)), |r| {
                    orders_check(&r, 2, &[2, 4, 8])
                })
            }),
        ),
        (
            "PSL(2,q) simple",
            "simplicity of PSL(2,q)",
            Box::new(|| {
                let mut out = serde_json::Map::new();
                let mut ok = true;
                for q in [4, 5, 7, 8, 9] {
                    match psl2(q) {
                        Ok(g) => {
                            let s = g.is_simple();
                            ok &= s;
                            out.insert(q.to_string(), json!(s));
                        }
                        Err(e) => return (Status::Fail, json!({"q": q, "error": e.to_string()})),
                    }
                }
                (status(ok), Value::Object(out))
            }),
        ),
        (
            "PSL(2,3) not simple",
            "simplicity threshold",
            Box::new(|| {
                from_err(psl2(3), |g| {
                    let simple = g.is_simple();
                    (
                        status(!simple),
                        json!({"documented_discrepancy": true, "order": g.order(), "simple": simple,
                            "note": "PSL(2,3) ≅ A4 is not simple; the simplicity statement needs q > 3"}),
                    )
                })
            }),
        ),
        (
            "Aut(PSL(2,4)) = PGammaL(2,4)",
            "automorphisms of PSL(2,q)",
            Box::new(|| {
                from_err(verify_van_der_waerden(4, 1000), |r| {
                    (status(r.pass && r.aut_psl_order == 120), json!(r))
                })
            }),
        ),
    ];
    for (q, k, label) in [(4u64, None, "semidirect tower q=4, H trivial"), (8, None, "semidirect tower q=8, H trivial"),
        (9, Some(1u32), "semidirect tower q=9, H = <Frob>")]
    {
        checks.push((
            label,
            "normalizer towers of PGL(2,q) x| H",
            Box::new(move || from_err(verify_semidirect_tower(q, k), |r| (status(r.pass), json!(r)))),
        ));
    }
    checks.push((
        "Aut(PSL(2,9)) = PGammaL(2,9)",
        "automorphisms of PSL(2,q)",
        Box::new(move || {
            if !stretch {
                return (Status::Unknown, json!({"budget": "stretch check skipped under --budget"}));
            }
            from_err(psl2(9).and_then(|g| aut_group(&g, 2000)), |a| {
                let pgl = pgammal2(9).map(|g| g.order()).unwrap_or(0);
                (status(a.aut.order() == 1440 && pgl == 1440), json!({"aut": a.aut.order(), "pgammal": pgl}))
            })
        }),
    ));
    run("groups", checks)
}

/// The three test towers at depth 1, characteristic 0.
pub fn test_towers() -> Vec<(&'static str, ColoredGraph)> {
    vec![
        ("K2", ColoredGraph::monochromatic(Graph::complete(2))),
        ("P3", ColoredGraph::monochromatic(Graph::path(3))),
        ("K3 (colors 0,1,2)", ColoredGraph::new(Graph::complete(3), vec![0, 1, 2], 3).expect("valid coloring")),
    ]
}

pub fn depth_one(cg: &ColoredGraph) -> Result<Ctx> {
    Ok(Arc::new(TowerCtx::graph_tower(cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, crate::fieldtower::tower::DEFAULT_DIM_CAP)?))
}

pub fn field_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    let (seed, trials) = (opts.seed, opts.budget);
    let mut checks: Vec<(&str, &str, Check)> = Vec::new();
    for (name, cg) in test_towers() {
        let label: &'static str = Box::leak(format!("tower {name}").into_boxed_str());
        checks.push((
            label,
            "the tower ideal is prime",
            Box::new(move || {
                from_err(depth_one(&cg), |ctx| {
                    let expect: u128 = cg.colors.iter().map(|&c| ctx.primes()[c as usize + 1] as u128).product();
                    let smoke = primality_smoke(&ctx, trials, seed);
                    let indep = independence_check(&ctx, 2);
                    let ok = ctx.dimension() == expect && smoke.passed() && indep.independent();
                    (status(ok), json!({"dimension": ctx.dimension(), "expected": expect, "smoke": smoke,
                        "independence": indep}))
                })
            }),
        ));
    }
    run("field", checks)
}

fn k2() -> Ctx {
    depth_one(&ColoredGraph::monochromatic(Graph::complete(2))).expect("K2 tower")
}

pub fn roots_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    let (seed, n) = (opts.seed, opts.budget);
    let ro = RootOptions { trials: 20, seed };
    let checks: Vec<(&str, &str, Check)> = vec![
        (
            "deepest roots are irreducible",
            "X^p - a irreducible iff a has no p-th root",
            Box::new(move || {
                let ctx = k2();
                let p = ctx.primes();
                let xs = generator_var(&ctx, 0, 1).expect("generator");
                let ye = generator_radical(&ctx, 0, 1).expect("generator");
                let a = check_irreducible_radical(&xs, p[0], &ro);
                let b = check_irreducible_radical(&ye, p[1], &ro);
                match (a, b) {
                    (Ok(a), Ok(b)) => (status(a && b), json!({"vertex": a, "edge": b})),
                    (a, b) => (Status::Fail, json!({"vertex": format!("{a:?}"), "edge": format!("{b:?}")})),
                }
            }),
        ),
        (
            "x_s^0 has no p'-th roots",
            "x_s^0 has no p' root",
            Box::new(move || {
                let ctx = k2();
                let x0 = generator_var(&ctx, 0, 0).expect("generator");
                let mut out = vec![];
                let mut ok = true;
                for p in [2, ctx.primes()[1]] {
                    let r = pth_root_with(&x0, p, &ro);
                    ok &= matches!(&r, RootResult::No(c) if c.is_absolute());
                    out.push(json!({"p": p, "result": r.to_json()}));
                }
                (status(ok), json!(out))
            }),
        ),
        (
            "p0-high classification",
            "p-high elements are structured monomials",
            Box::new(move || {
                let ctx = k2();
                let p0 = ctx.primes()[0];
                let mut r = rng(seed);
                let mut not_high = vec![];
                for _ in 0..n / 2 {
                    let a = random_high_monomial(&ctx, p0, &mut r);
                    let predicted = classify_p_high(&a, p0).is_some_and(|f| f.predicts_high);
                    if !predicted || is_p_high(&a, p0, 3, &ro) != HighVerdict::True {
                        not_high.push(a.fmt_pretty());
                    }
                }
                let (mut refuted, mut unknown, mut wrongly_high) = (0, 0, vec![]);
                for _ in 0..n / 2 {
                    let a = random_unstructured(&ctx, p0, &mut r);
                    match is_p_high(&a, p0, 3, &ro) {
                        HighVerdict::False => refuted += 1,
                        HighVerdict::Unknown => unknown += 1,
                        HighVerdict::True => wrongly_high.push(a.fmt_pretty()),
                    }
                }
                let ok = not_high.is_empty() && wrongly_high.is_empty() && refuted * 100 >= 95 * (n / 2);
                (status(ok), json!({"structured": n / 2, "structured_failures": not_high, "unstructured": n / 2,
                    "refuted": refuted, "unknown": unknown, "wrongly_high": wrongly_high}))
            }),
        ),
        (
            "q-high elements descend",
            "q-high elements lie in the base field",
            Box::new(move || {
                let ctx = k2();
                let rep = q_high_descends(&ctx, 2, n / 4, 2, seed);
                (status(rep.passed()), json!(rep))
            }),
        ),
        (
            "root round trip",
            "soundness and completeness on p-th powers",
            Box::new(move || {
                let mut failures = vec![];
                let mut count = 0;
                for (name, cg) in test_towers() {
                    let ctx = match depth_one(&cg) {
                        Ok(c) => c,
                        Err(e) => return (Status::Fail, json!({"error": e.to_string()})),
                    };
                    let mut r = rng(seed ^ 0x5eed);
                    for p in [ctx.primes()[0], ctx.primes()[1]] {
                        for _ in 0..n {
                            let b = random_structured(&ctx, &mut r);
                            let a = b.pow(p);
                            count += 1;
                            match pth_root_with(&a, p, &ro) {
                                RootResult::Root(w) if w.pow(p) == a => {}
                                other => failures.push(json!({"tower": name, "p": p, "b": b.fmt_pretty(),
                                    "result": other.to_json()})),
                            }
                        }
                    }
                }
                (status(failures.is_empty()), json!({"cases": count, "failures": failures}))
            }),
        ),
    ];
    run("roots", checks)
}

pub fn sigma_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    let (seed, pairs) = (opts.seed, opts.budget * 5);
    let mut checks: Vec<(&str, &str, Check)> = Vec::new();
    for (label, g, order) in [("sigma on transform(K2)", Graph::complete(2), 2usize),
        ("sigma on transform(K3)", Graph::complete(3), 6)]
    {
        checks.push((
            label,
            "canonical injective homomorphism into Aut(K)",
            Box::new(move || from_err(sigma_report(&g, pairs, seed), |v| {
                let ok = v["sigma"]["passed"] == json!(true) && v["image_order"] == json!(order)
                    && v["psi_failures"].as_array().is_some_and(|a| a.is_empty());
                (status(ok), v)
            })),
        ));
    }
    run("sigma", checks)
}

/// σ on all of Aut(Γ⁺), the edge-image property, and Ψ injectivity and
/// equivariance on random pairs.
pub fn sigma_report(g: &Graph, pairs: usize, seed: u64) -> Result<Value> {
    use crate::autfield::{apply, decode_element, encode_element, sigma};
    use crate::fieldtower::checks::random_element;
    let cg = transform(g)?;
    let ctx: Ctx = Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, u128::MAX)?);
    let aut = aut_colored(&cg)?;
    let rep = verify_injectivity_sigma(&cg, &ctx, &aut)?;
    let sig: Vec<_> = aut.elements().iter().map(|p| sigma(&cg, &ctx, p)).collect::<Result<_>>()?;
    let labels = cg.graph.labels();
    let mut r = rng(seed);
    let mut failures = vec![];
    let mut distinct = std::collections::BTreeMap::new();
    for _ in 0..pairs {
        let a = random_element(&ctx, &mut r);
        let b = random_element(&ctx, &mut r);
        let (ca, cb) = (encode_element(&a)?, encode_element(&b)?);
        if (ca == cb) != (a == b) {
            failures.push(json!({"kind": "collision", "a": a.fmt_pretty(), "b": b.fmt_pretty()}));
        }
        if decode_element(&ctx, &ca)? != a {
            failures.push(json!({"kind": "decode", "a": a.fmt_pretty()}));
        }
        distinct.entry(ca.clone()).or_insert_with(|| a.clone());
        for (phi, s) in aut.elements().iter().zip(&sig) {
            let moved = ca.relabel(|l| labels[phi.apply(cg.graph.vertex(l).expect("label"))].clone());
            if encode_element(&apply(s, &a))? != moved {
                failures.push(json!({"kind": "equivariance", "a": a.fmt_pretty(), "phi": phi.cycles()}));
            }
        }
    }
    let one = TowerElement::one(&ctx);
    let id_ok = sig.iter().all(|s| apply(s, &one) == one);
    if !id_ok {
        failures.push(json!({"kind": "prime field not fixed"}));
    }
    Ok(json!({
        "vertices": ctx.nvars(),
        "radicals": ctx.nradicals(),
        "aut_order": aut.order(),
        "image_order": rep.image_order,
        "sigma": {"passed": rep.passed(), "report": rep},
        "pairs": pairs,
        "distinct_codes": distinct.len(),
        "psi_failures": failures,
    }))
}

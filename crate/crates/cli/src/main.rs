//! `radtower` command line: transform graphs, build towers, run the
//! verification suites and compute group towers. Reports go to stdout as
//! JSON lines, a short summary to stderr.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use radtower::fieldtower::checks::primality_smoke;
use radtower::fieldtower::tower::DEFAULT_DIM_CAP;
use radtower::fieldtower::{generator_radical, generator_var, Ctx, Depths, TowerCtx};
use radtower::graphs::{check_star_coloring, GraphJson};
use radtower::groups::autgroup::DEFAULT_AUT_CAP;
use radtower::groups::tower::DEFAULT_MAX_STEPS;
use radtower::groups::{automorphism_tower, normalizer_tower, pgl2, psl2, Perm, PermGroup};
use radtower::roots::{check_irreducible_radical, RootOptions};
use radtower::suite::{self, CheckReport, Status, SuiteOptions, DEFAULT_BUDGET, SUITES};
use radtower::Error;

#[derive(Debug, Parser)]
#[command(name = "radtower", version)]
#[command(about = "graph transforms, radical towers, p-th roots and group towers, with machine checks")]
struct Cli {
    /// Sort report lines by suite and check name.
    #[arg(long, global = true)]
    sorted: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Star-coloring transform of a connected graph, with the automorphism
    /// comparison.
    Transform {
        /// Graph JSON: {"vertices":[..],"edges":[[a,b],..]}.
        graph: PathBuf,
        /// Write the colored graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the radical tower of a colored graph and smoke-test it.
    BuildField {
        /// Colored graph JSON (colors keyed by "a,b"); uncolored means one color.
        graph: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u32,
        /// Uniform depth `N`, or `v1,v2,..;e1,e2,..` per generator.
        #[arg(long, default_value = "1")]
        depth: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trials.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Cap on the basis dimension.
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        cap: u128,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = ["graphs", "groups", "field", "roots", "sigma", "all"])]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trials per check; below the default, stretch checks are skipped.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Automorphism tower of a group, or the normalizer tower of a subgroup.
    Towers {
        /// sym:n, alt:n, psl2:q or pgl2:q.
        #[arg(long)]
        group: String,
        /// Generators in cycle notation separated by ';', e.g. "(0 1);(2 3)".
        #[arg(long)]
        subgroup: Option<String>,
        /// Cap on automorphism group orders.
        #[arg(long, default_value_t = DEFAULT_AUT_CAP)]
        budget: usize,
    },
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn report(suite: &str, check: &str, anchor: &str, ok: Option<bool>, details: Value, t: Instant) -> CheckReport {
    CheckReport {
        suite: suite.into(),
        check: check.into(),
        anchor: anchor.into(),
        status: match ok {
            Some(true) => Status::Pass,
            Some(false) => Status::Fail,
            None => Status::Unknown,
        },
        details,
        elapsed_ms: t.elapsed().as_millis(),
    }
}

fn cmd_transform(graph: &PathBuf, out: &Option<PathBuf>) -> Result<Vec<CheckReport>, Error> {
    let g = GraphJson::parse(&read(graph)?)?.to_graph()?;
    let t = Instant::now();
    let cg = radtower::graphs::transform(&g)?;
    let text = serde_json::to_string(&cg.to_json()).expect("serializable");
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
        None => println!("{text}"),
    }
    let r = suite::graph_color_report(&g)?;
    let stars = check_star_coloring(&cg);
    Ok(vec![
        report("transform", "automorphism groups agree", "graph-color lemma", Some(r.aut_order == r.plus_aut_order),
            json!({"aut": r.aut_order, "plus_aut": r.plus_aut_order}), t),
        report("transform", "color classes are stars", "graph-color lemma", Some(r.stars), json!(stars), t),
        report("transform", "restriction inverts lifting", "graph-color lemma", Some(r.restrict_lift_identity),
            json!({}), t),
        report("transform", "vertex count", "graph-color lemma", Some(r.vertex_count_ok),
            json!({"vertices": cg.graph.num_vertices(), "source_vertices": g.num_vertices(), "source_edges": g.num_edges()}), t),
    ])
}

fn parse_depths(s: &str) -> Result<Depths, Error> {
    let list = |p: &str| -> Result<Vec<u32>, Error> {
        p.split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("depth {x}"))))
            .collect()
    };
    match s.split_once(';') {
        None => {
            let d: u32 = s.trim().parse().map_err(|_| Error::Parse(format!("depth {s}")))?;
            Ok(Depths::Uniform { vertex: d, edge: d })
        }
        Some((v, e)) => Ok(Depths::Explicit { vertex: list(v)?, edge: list(e)? }),
    }
}

fn cmd_build_field(
    graph: &PathBuf,
    ch: u32,
    depth: &str,
    seed: u64,
    budget: usize,
    cap: u128,
) -> Result<Vec<CheckReport>, Error> {
    let cg = GraphJson::parse(&read(graph)?)?.to_colored()?;
    let t = Instant::now();
    let ctx: Ctx = Arc::new(TowerCtx::graph_tower(&cg, ch, &parse_depths(depth)?, cap)?);
    let mut out = vec![report("build-field", "context", "tower construction", Some(true),
        json!({"dimension": ctx.dimension().to_string(), "profile": ctx.profile(), "variables": ctx.var_names(),
            "radicals": ctx.radicals().iter().map(|r| &r.name).collect::<Vec<_>>()}), t)];
    let t = Instant::now();
    let smoke = primality_smoke(&ctx, budget, seed);
    out.push(report("build-field", "primality smoke", "the tower ideal is prime", Some(smoke.passed()), json!(smoke), t));
    let opts = RootOptions { trials: 20, seed };
    let mut gens = vec![];
    for s in 0..ctx.nvars() {
        let v = &ctx.vars()[s];
        gens.push((v.name.clone(), v.prime, generator_var(&ctx, s, v.depth)?));
    }
    for f in 0..ctx.nradicals() {
        let r = &ctx.radicals()[f];
        if r.depth > 0 {
            gens.push((r.name.clone(), r.prime, generator_radical(&ctx, f, r.depth)?));
        }
    }
    for (name, p, g) in gens {
        let t = Instant::now();
        let (ok, details) = match check_irreducible_radical(&g, p, &opts) {
            Ok(b) => (Some(b), json!({"generator": name, "p": p, "irreducible": b})),
            Err(e) => (None, json!({"generator": name, "p": p, "budget": e.to_string()})),
        };
        out.push(report("build-field", "deepest root is irreducible", "X^p - a irreducible iff a has no p-th root",
            ok, details, t));
    }
    Ok(out)
}

fn parse_group(s: &str) -> Result<PermGroup, Error> {
    let (kind, n) = s.split_once(':').ok_or_else(|| Error::Parse(format!("group {s}")))?;
    let n: u64 = n.parse().map_err(|_| Error::Parse(format!("group size {n}")))?;
    match kind {
        "sym" => Ok(PermGroup::symmetric(n as usize)),
        "alt" => Ok(PermGroup::alternating(n as usize)),
        "psl2" => psl2(n),
        "pgl2" => pgl2(n),
        _ => Err(Error::Parse(format!("unknown group family {kind}"))),
    }
}

fn cmd_towers(group: &str, subgroup: &Option<String>, budget: usize) -> Result<Vec<CheckReport>, Error> {
    let g = parse_group(group)?;
    let t = Instant::now();
    let (check, rep) = match subgroup {
        Some(spec) => {
            let gens: Vec<Perm> = spec
                .split(';')
                .filter(|x| !x.trim().is_empty())
                .map(|c| Perm::parse_cycles(g.degree(), c.trim()))
                .collect::<Result<_, _>>()?;
            ("normalizer tower", normalizer_tower(&g, &g.subgroup(&gens)?, DEFAULT_MAX_STEPS)?)
        }
        None => ("automorphism tower", automorphism_tower(&g, DEFAULT_MAX_STEPS, budget)?),
    };
    let mut details = rep.to_json();
    details["group"] = json!(group);
    details["group_order"] = json!(g.order());
    Ok(vec![report("towers", check, "tower length", rep.stabilized.then_some(true), details, t)])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Transform { graph, out } => cmd_transform(graph, out),
        Command::BuildField { graph, characteristic, depth, seed, budget, cap } => {
            cmd_build_field(graph, *characteristic, depth, *seed, *budget, *cap)
        }
        Command::Verify { suite: name, seed, budget } => {
            let opts = SuiteOptions { seed: *seed, budget: *budget };
            let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name.as_str()] };
            let mut reps = vec![];
            for n in names {
                let batch = suite::run_suite(n, &opts).expect("suite names are validated by clap");
                if !cli.sorted {
                    for r in &batch {
                        println!("{}", serde_json::to_string(r).expect("serializable"));
                    }
                }
                reps.extend(batch);
            }
            if !cli.sorted {
                return finish(reps, false, false);
            }
            Ok(reps)
        }
        Command::Towers { group, subgroup, budget } => cmd_towers(group, subgroup, *budget),
    };
    match result {
        Ok(reps) => finish(reps, true, cli.sorted),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn finish(mut reps: Vec<CheckReport>, print: bool, sorted: bool) -> ExitCode {
    if print {
        if sorted {
            reps.sort_by(|a, b| (&a.suite, &a.check).cmp(&(&b.suite, &b.check)));
        }
        for r in &reps {
            println!("{}", serde_json::to_string(r).expect("serializable"));
        }
    }
    let count = |s: Status| reps.iter().filter(|r| r.status == s).count();
    let (pass, fail, unknown) = (count(Status::Pass), count(Status::Fail), count(Status::Unknown));
    eprintln!("{pass} pass, {fail} fail, {unknown} unknown");
    for r in reps.iter().filter(|r| r.status == Status::Fail) {
        eprintln!("FAIL {}: {}", r.suite, r.check);
    }
    if fail > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

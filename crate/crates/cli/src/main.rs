mod render;

use std::io::{self, Read};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use setflex::flex::{count_displaying_triples, defining_triples, disjoint_count_formula, is_flexible_bruteforce_with_budget};
use setflex::graphopt::{is_slim, is_thin, sdr, SdrOutcome};
use setflex::phylo::{build_supertree_on, parse_newick_standalone, parse_tree_list, write_newick, BuildOutcome, RootedTriple, TripleSet};
use setflex::represent::{
    caterpillar_median_representation, extend_to_total_order, is_total_order_flexible, lca_caterpillar_representation,
    OrderMode, OrderOutcome, Orientation,
};
use setflex::setsys::{is_slim_exhaustive, is_thin_exhaustive, parse_json, parse_text};
use setflex::{CheckReport, Error, SetSystem, Stats, Universe};

use render::labels;

#[derive(Parser)]
#[command(name = "setflex", version, about = "Thin and slim set systems, supertrees and caterpillar representations")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Leave out counters and timings (for reproducible output).
    #[arg(long, global = true)]
    no_stats: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide thin, slim, phylogenetic flexibility or total-order flexibility.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        /// Set-system file (text or JSON), or - for stdin.
        input: String,
        /// Member size for the thin test; defaults to the common member size.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Largest number of assignments a brute-force scan may visit.
        #[arg(long, env = "SETFLEX_BUDGET", default_value_t = setflex::flex::DEFAULT_BRUTEFORCE_BUDGET as u64)]
        budget: u64,
    },
    /// Combine rooted triples or trees with BUILD.
    Supertree {
        /// One `a,b|c` triple or Newick tree per line, or - for stdin.
        input: String,
        /// Resolve the result into a binary tree.
        #[arg(long)]
        binary: bool,
    },
    /// Build a caterpillar representation of a thin system.
    Represent {
        #[arg(value_enum)]
        kind: RepresentKind,
        input: String,
        /// Extra taxa (comma-separated) that belong to no member.
        #[arg(long, value_delimiter = ',')]
        taxa: Vec<String>,
    },
    /// Count binary trees displaying a set of triples.
    Count {
        /// Triples file, or - for stdin.
        input: Option<String>,
        /// Evaluate (2n-3)!!/3^(n/3) for n taxa in n/3 disjoint triples.
        #[arg(long)]
        formula_n: Option<u64>,
        /// Extra taxa (comma-separated) on which trees are counted.
        #[arg(long, value_delimiter = ',')]
        taxa: Vec<String>,
    },
    /// Distinct representatives for the members with the taxa of B removed.
    Sdr {
        input: String,
        /// The removed taxa, comma-separated.
        #[arg(long = "B", value_delimiter = ',', required = true)]
        b: Vec<String>,
    },
    /// Extend `a,b` lines (a before b) to a total order, or report a cycle.
    Order {
        input: String,
        /// Extra taxa (comma-separated) to place in the order.
        #[arg(long, value_delimiter = ',')]
        taxa: Vec<String>,
    },
    /// Triples displayed only by the given binary Newick tree.
    GenDefining { input: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Thin,
    Slim,
    Flexible,
    OrderFlexible,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Thin => "thin",
            CheckKind::Slim => "slim",
            CheckKind::Flexible => "flexible",
            CheckKind::OrderFlexible => "order-flexible",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Mincut,
    Exhaustive,
    Bruteforce,
    Forest,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepresentKind {
    MedianCaterpillar,
    LcaCaterpillar,
}

/// What a command printed and how it should exit.
struct Outcome {
    success: bool,
    json: Map<String, Value>,
    text: Vec<String>,
    stats: Stats,
}

impl Outcome {
    fn new(success: bool, json: Map<String, Value>, text: Vec<String>) -> Self {
        Outcome {
            success,
            json,
            text,
            stats: Stats::new(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli.command) {
        Ok(mut outcome) => {
            outcome.stats.set("elapsed_us", started.elapsed().as_micros() as u64);
            if cli.json {
                if !cli.no_stats {
                    outcome.json.insert("stats".into(), render::stats_json(&outcome.stats));
                }
                println!("{}", serde_json::to_string_pretty(&Value::Object(outcome.json)).expect("json"));
            } else {
                for line in &outcome.text {
                    println!("{line}");
                }
                if !cli.no_stats {
                    println!("stats: {}", render::stats_text(&outcome.stats));
                }
            }
            ExitCode::from(if outcome.success { 0 } else { 1 })
        }
        Err(e) => {
            let code = match e {
                Error::CapExceeded { .. } => 3,
                _ => 2,
            };
            if cli.json {
                let doc = json!({ "error": e.to_string(), "exit_code": code });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            }
            eprintln!("setflex: {e}");
            ExitCode::from(code)
        }
    }
}

fn read_input(path: &str) -> setflex::Result<String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Input(format!("cannot read stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))
    }
}

fn read_system(path: &str) -> setflex::Result<SetSystem> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('{') {
        parse_json(&text)
    } else {
        parse_text(&text)
    }
}

/// Adds the labels of `extra` that are not yet in the universe.
fn widen(system: SetSystem, extra: &[String]) -> setflex::Result<SetSystem> {
    let mut missing: Vec<&String> = extra.iter().filter(|l| system.universe().id(l).is_none()).collect();
    missing.sort();
    missing.dedup();
    if missing.is_empty() {
        Ok(system)
    } else {
        system.with_extra_taxa(&missing)
    }
}

fn run(command: &Command) -> setflex::Result<Outcome> {
    match command {
        Command::Check {
            kind,
            input,
            r,
            method,
            budget,
        } => cmd_check(*kind, &read_system(input)?, *r, *method, *budget),
        Command::Supertree { input, binary } => cmd_supertree(&read_input(input)?, *binary),
        Command::Represent { kind, input, taxa } => cmd_represent(*kind, &widen(read_system(input)?, taxa)?),
        Command::Count { input, formula_n, taxa } => {
            let text = input.as_deref().map(read_input).transpose()?;
            cmd_count(text.as_deref(), *formula_n, taxa)
        }
        Command::Sdr { input, b } => cmd_sdr(&read_system(input)?, b),
        Command::Order { input, taxa } => cmd_order(&read_input(input)?, taxa),
        Command::GenDefining { input } => cmd_gen_defining(&read_input(input)?),
    }
}

fn method_error(kind: CheckKind, method: MethodArg) -> Error {
    let name = match method {
        MethodArg::Auto => "auto",
        MethodArg::Mincut => "mincut",
        MethodArg::Exhaustive => "exhaustive",
        MethodArg::Bruteforce => "bruteforce",
        MethodArg::Forest => "forest",
    };
    Error::Input(format!("method {name} does not apply to `check {}`", kind.name()))
}

fn cmd_check(kind: CheckKind, system: &SetSystem, r: Option<usize>, method: MethodArg, budget: u64) -> setflex::Result<Outcome> {
    use MethodArg::*;
    let (report, measure): (CheckReport, Option<&str>) = match (kind, method) {
        (CheckKind::Thin, Auto | Mincut | Exhaustive) => {
            let r = match r {
                Some(r) => r,
                None => system
                    .uniform_size()
                    .ok_or_else(|| Error::Input("members differ in size; pass --r".into()))?,
            };
            if method == Exhaustive {
                (is_thin_exhaustive(system, r)?, None)
            } else {
                (is_thin(system, r)?, Some("sigma_star"))
            }
        }
        (CheckKind::Slim, Auto | Mincut) => (is_slim(system)?, Some("gamma_star")),
        (CheckKind::Slim, Exhaustive) => (is_slim_exhaustive(system)?, None),
        (CheckKind::Flexible, Auto | Mincut) => {
            if system.uniform_size() == Some(3) {
                (is_thin(system, 3)?, Some("sigma_star"))
            } else {
                (is_slim(system)?, Some("gamma_star"))
            }
        }
        (CheckKind::Flexible, Bruteforce) => (is_flexible_bruteforce_with_budget(system, budget as u128)?.into(), None),
        (CheckKind::OrderFlexible, Auto | Forest) => (is_total_order_flexible(system, OrderMode::Forest)?, None),
        (CheckKind::OrderFlexible, Bruteforce) => (is_total_order_flexible(system, OrderMode::Bruteforce)?, None),
        (kind, method) => return Err(method_error(kind, method)),
    };
    let json = render::check_json(system, kind.name(), &report, measure);
    let mut text = vec![
        format!("verdict: {}", report.verdict),
        format!("method: {}", report.method),
    ];
    if let (Some(name), Some(m)) = (measure, report.minimizer()) {
        let symbol = if name == "sigma_star" { "sigma*" } else { "gamma*" };
        text.push(format!("{symbol}: {}", m.value));
    }
    text.extend(render::certificate_text(system, &report.certificate));
    let mut outcome = Outcome::new(report.verdict, json, text);
    outcome.stats = report.stats;
    Ok(outcome)
}

fn pooled_triples(trees: &[setflex::phylo::RootedPhyloTree]) -> TripleSet {
    trees.iter().flat_map(|t| t.triples_of().as_slice().to_vec()).collect()
}

fn cmd_supertree(text: &str, binary: bool) -> setflex::Result<Outcome> {
    let (universe, trees) = parse_tree_list(text)?;
    if trees.is_empty() {
        return Err(Error::Input("no triples or trees given".into()));
    }
    let triples = pooled_triples(&trees);
    let taxa: Vec<_> = universe.ids().collect();
    let mut json = Map::new();
    json.insert("command".into(), json!("supertree"));
    json.insert("triples".into(), json!(triples.len()));
    match build_supertree_on(&triples, &taxa)? {
        BuildOutcome::Tree(tree) => {
            let tree = if binary { tree.make_binary() } else { tree };
            let newick = write_newick(&tree, &universe);
            let reparsed = setflex::phylo::parse_newick(&newick, &universe)?;
            for t in triples.iter() {
                if !reparsed.displays_triple(t)? {
                    return Err(Error::Internal(format!("supertree misses {}", t.render(&universe))));
                }
            }
            json.insert("compatible".into(), json!(true));
            json.insert("tree".into(), json!(newick));
            Ok(Outcome::new(true, json, vec![newick]))
        }
        BuildOutcome::Incompatible { witness } => {
            let names = labels(&universe, &witness);
            json.insert("compatible".into(), json!(false));
            json.insert("witness".into(), json!(names));
            Ok(Outcome::new(false, json, vec![format!("incompatible: {}", names.join(" "))]))
        }
    }
}

fn cmd_represent(kind: RepresentKind, system: &SetSystem) -> setflex::Result<Outcome> {
    let (name, report) = match kind {
        RepresentKind::MedianCaterpillar => ("median-caterpillar", caterpillar_median_representation(system)?),
        RepresentKind::LcaCaterpillar => ("lca-caterpillar", lca_caterpillar_representation(system)?),
    };
    let u = system.universe();
    let newick = report.tree.newick(u);
    let map: Vec<Value> = report
        .vertex_map
        .iter()
        .enumerate()
        .map(|(i, v)| json!({ "member": system.render_member(i), "vertex": v }))
        .collect();
    let mut json = Map::new();
    json.insert("command".into(), json!("represent"));
    json.insert("kind".into(), json!(name));
    json.insert("tree".into(), json!(newick));
    json.insert("sequence".into(), json!(labels(u, &report.sequence)));
    json.insert("vertex_map".into(), Value::Array(map));
    json.insert("appended".into(), json!(labels(u, &report.appended)));
    json.insert("verified".into(), json!(report.verified));
    let mut text = vec![
        newick,
        format!("sequence: {}", labels(u, &report.sequence).join(" ")),
    ];
    for (i, v) in report.vertex_map.iter().enumerate() {
        text.push(format!("{} -> {v}", system.render_member(i)));
    }
    text.push(format!("verified: {}", report.verified));
    let mut outcome = Outcome::new(report.verified, json, text);
    outcome.stats = report.stats;
    Ok(outcome)
}

/// Whether the triples are pairwise disjoint and cover all `n` taxa.
fn disjoint_cover(triples: &TripleSet, n: usize) -> bool {
    triples.len() * 3 == n && triples.leaf_set().len() == n
}

fn cmd_count(text: Option<&str>, formula_n: Option<u64>, extra: &[String]) -> setflex::Result<Outcome> {
    let mut json = Map::new();
    json.insert("command".into(), json!("count"));
    let mut lines = Vec::new();
    let formula = formula_n.map(disjoint_count_formula).transpose()?;
    if let Some(f) = formula {
        json.insert("formula".into(), json!(f.to_string()));
        lines.push(format!("formula: {f}"));
    }
    if let Some(text) = text {
        let (universe, triples) = read_triples(text, extra)?;
        let taxa: Vec<_> = universe.ids().collect();
        let count = count_displaying_triples(&triples, &taxa)?;
        json.insert("taxa".into(), json!(taxa.len()));
        json.insert("count".into(), json!(count));
        lines.push(format!("count: {count}"));
        if let (Some(n), Some(f)) = (formula_n, formula) {
            if n as usize != taxa.len() || !disjoint_cover(&triples, taxa.len()) {
                return Err(Error::Input(format!(
                    "--formula-n {n} needs an input of {} disjoint triples on {n} taxa",
                    n / 3
                )));
            }
            if f != count as u128 {
                return Err(Error::Internal(format!("enumerated count {count} differs from formula value {f}")));
            }
        }
    } else if formula.is_none() {
        return Err(Error::Input("give a triples file, --formula-n, or both".into()));
    }
    Ok(Outcome::new(true, json, lines))
}

/// Pooled triples of a tree list, over its labels plus `extra`.
fn read_triples(text: &str, extra: &[String]) -> setflex::Result<(Universe, TripleSet)> {
    let (base, trees) = parse_tree_list(text)?;
    let triples = pooled_triples(&trees);
    if extra.iter().all(|l| base.id(l).is_some()) {
        return Ok((base, triples));
    }
    let mut all: Vec<String> = base.labels().iter().chain(extra).cloned().collect();
    all.sort();
    all.dedup();
    let universe = Universe::new(all)?;
    let map = |t: usize| universe.require(base.label(t));
    let remapped = triples
        .iter()
        .map(|t| {
            let (a, b) = t.cherry();
            RootedTriple::new(map(a)?, map(b)?, map(t.outgroup())?)
        })
        .collect::<setflex::Result<TripleSet>>()?;
    Ok((universe, remapped))
}

fn cmd_sdr(system: &SetSystem, b: &[String]) -> setflex::Result<Outcome> {
    let u = system.universe();
    let removed = b.iter().map(|l| u.require(l)).collect::<setflex::Result<Vec<_>>>()?;
    let mut json = Map::new();
    json.insert("command".into(), json!("sdr"));
    json.insert("removed".into(), json!(labels(u, &removed)));
    match sdr(system, &removed)? {
        SdrOutcome::Representatives(pairs) => {
            let map: Vec<Value> = pairs
                .iter()
                .map(|&(i, t)| json!({ "member": system.render_member(i), "representative": u.label(t) }))
                .collect();
            json.insert("success".into(), json!(true));
            json.insert("representatives".into(), Value::Array(map));
            let text = pairs
                .iter()
                .map(|&(i, t)| format!("{} -> {}", system.render_member(i), u.label(t)))
                .collect();
            Ok(Outcome::new(true, json, text))
        }
        SdrOutcome::HallViolator { members, neighborhood } => {
            let sets: Vec<String> = members.iter().map(|&i| system.render_member(i)).collect();
            json.insert("success".into(), json!(false));
            json.insert(
                "hall_violator".into(),
                json!({ "members": sets, "neighborhood": labels(u, &neighborhood) }),
            );
            let text = vec![
                "no system of distinct representatives".to_string(),
                format!("members: {}", sets.join("; ")),
                format!("neighborhood: {}", labels(u, &neighborhood).join(",")),
            ];
            Ok(Outcome::new(false, json, text))
        }
    }
}

fn parse_order(text: &str, extra: &[String]) -> setflex::Result<(Universe, Orientation)> {
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content.split(',').map(str::trim).collect();
        let [x, y] = parts[..] else {
            return Err(Error::Parse {
                line: i + 1,
                column: 1,
                message: "expected two comma-separated labels".into(),
            });
        };
        for label in [x, y] {
            setflex::taxa::validate_label(label).map_err(|e| Error::Parse {
                line: i + 1,
                column: 1,
                message: e.to_string(),
            })?;
        }
        raw.push((x.to_string(), y.to_string()));
    }
    let mut all: Vec<String> = raw.iter().flat_map(|(x, y)| [x.clone(), y.clone()]).chain(extra.iter().cloned()).collect();
    all.sort();
    all.dedup();
    let universe = Universe::new(all)?;
    let pairs = raw
        .iter()
        .map(|(x, y)| Ok((universe.require(x)?, universe.require(y)?)))
        .collect::<setflex::Result<Vec<_>>>()?;
    Ok((universe, Orientation { pairs }))
}

fn cmd_order(text: &str, extra: &[String]) -> setflex::Result<Outcome> {
    let (universe, orientation) = parse_order(text, extra)?;
    let taxa: Vec<_> = universe.ids().collect();
    let mut json = Map::new();
    json.insert("command".into(), json!("order"));
    match extend_to_total_order(&taxa, &orientation)? {
        OrderOutcome::Order(order) => {
            let names = labels(&universe, &order);
            json.insert("success".into(), json!(true));
            json.insert("order".into(), json!(names));
            Ok(Outcome::new(true, json, vec![names.join(" < ")]))
        }
        OrderOutcome::Cycle(cycle) => {
            let names = labels(&universe, &cycle);
            json.insert("success".into(), json!(false));
            json.insert("cycle".into(), json!(names));
            Ok(Outcome::new(false, json, vec![format!("cycle: {}", names.join(" < "))]))
        }
    }
}

fn cmd_gen_defining(text: &str) -> setflex::Result<Outcome> {
    let trimmed: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    let (universe, tree) = parse_newick_standalone(trimmed.trim())?;
    let triples = defining_triples(&tree)?;
    let lines: Vec<String> = triples.iter().map(|t| t.render(&universe)).collect();
    let mut json = Map::new();
    json.insert("command".into(), json!("gen-defining"));
    json.insert("tree".into(), json!(write_newick(&tree, &universe)));
    json.insert("triples".into(), json!(lines));
    Ok(Outcome::new(true, json, lines))
}

//! Text and JSON rendering of library reports.

use serde_json::{json, Map, Value};
use setflex::flex::TreeAssignment;
use setflex::graphopt::{CutArc, IncidenceNode, MinimizerReport};
use setflex::phylo::{write_newick, TripleSet};
use setflex::setsys::{ExcessReport, SubsetSelection};
use setflex::{Certificate, CheckReport, SetSystem, Stats, TaxonId, Universe};

pub fn members(system: &SetSystem, selection: &SubsetSelection) -> Vec<String> {
    selection.iter().map(|i| system.render_member(i)).collect()
}

pub fn labels(universe: &Universe, ids: &[TaxonId]) -> Vec<String> {
    ids.iter().map(|&t| universe.label(t).to_string()).collect()
}

pub fn node(system: &SetSystem, n: IncidenceNode) -> Value {
    match n {
        IncidenceNode::Member(i) => json!({ "member": system.render_member(i) }),
        IncidenceNode::Taxon(t) => json!({ "taxon": system.universe().label(t) }),
    }
}

fn node_text(system: &SetSystem, n: IncidenceNode) -> String {
    match n {
        IncidenceNode::Member(i) => format!("{{{}}}", system.render_member(i)),
        IncidenceNode::Taxon(t) => system.universe().label(t).to_string(),
    }
}

/// Triples rendered as `a,b|c`, in label order.
pub fn triple_lines(triples: &TripleSet, universe: &Universe) -> Vec<String> {
    let mut lines: Vec<String> = triples.iter().map(|t| t.render(universe)).collect();
    lines.sort();
    lines
}

pub fn stats_json(stats: &Stats) -> Value {
    Value::Object(stats.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

pub fn stats_text(stats: &Stats) -> String {
    stats.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn minimizer_json(system: &SetSystem, m: &MinimizerReport) -> Value {
    let u = system.universe();
    let cut: Vec<Value> = m
        .cut
        .iter()
        .map(|arc| match *arc {
            CutArc::SourceToMember(i) => json!({ "member": system.render_member(i) }),
            CutArc::TaxonToSink(t) => json!({ "taxon": u.label(t) }),
        })
        .collect();
    json!({
        "type": "minimizer",
        "value": m.value,
        "witness": members(system, &m.witness),
        "forced": system.render_member(m.forced),
        "cut": cut,
        "offset": m.offset,
    })
}

fn subset_json(system: &SetSystem, e: &ExcessReport) -> Value {
    json!({
        "type": "subset",
        "excess": e.value,
        "witness": members(system, &e.witness),
        "leaf_count": e.leaf_count,
    })
}

fn assignment_json(system: &SetSystem, a: &TreeAssignment) -> Value {
    let u = system.universe();
    json!({
        "type": "assignment",
        "trees": a.trees.iter().map(|t| write_newick(t, u)).collect::<Vec<_>>(),
        "triples": triple_lines(&a.pooled_triples(), u),
    })
}

pub fn certificate_json(system: &SetSystem, c: &Certificate) -> Value {
    let u = system.universe();
    match c {
        Certificate::None => Value::Null,
        Certificate::Subset(e) => subset_json(system, e),
        Certificate::Minimizer(m) => minimizer_json(system, m),
        Certificate::Assignment(a) => assignment_json(system, a),
        Certificate::GraphCycle(nodes) => json!({
            "type": "cycle",
            "nodes": nodes.iter().map(|&n| node(system, n)).collect::<Vec<_>>(),
        }),
        Certificate::Orientation { orientation, cycle } => json!({
            "type": "orientation",
            "pairs": orientation.pairs.iter().map(|&(x, y)| [u.label(x), u.label(y)]).collect::<Vec<_>>(),
            "cycle": labels(u, cycle),
        }),
        Certificate::Patchwork(p) => json!({
            "type": "patchwork",
            "first": members(system, &p.first),
            "second": members(system, &p.second),
        }),
    }
}

pub fn certificate_text(system: &SetSystem, c: &Certificate) -> Vec<String> {
    let u = system.universe();
    match c {
        Certificate::None => Vec::new(),
        Certificate::Subset(e) => vec![
            format!("minimum excess: {}", e.value),
            format!("witness: {}", members(system, &e.witness).join("; ")),
        ],
        Certificate::Minimizer(m) => vec![format!("witness: {}", members(system, &m.witness).join("; "))],
        Certificate::Assignment(a) => {
            let mut lines = vec!["counterexample:".to_string()];
            lines.extend(triple_lines(&a.pooled_triples(), u));
            lines
        }
        Certificate::GraphCycle(nodes) => vec![format!(
            "cycle: {}",
            nodes.iter().map(|&n| node_text(system, n)).collect::<Vec<_>>().join(" - ")
        )],
        Certificate::Orientation { orientation, cycle } => vec![
            format!(
                "orientation: {}",
                orientation
                    .pairs
                    .iter()
                    .map(|&(x, y)| format!("{}<{}", u.label(x), u.label(y)))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            format!("cycle: {}", labels(u, cycle).join(" < ")),
        ],
        Certificate::Patchwork(p) => vec![
            format!("first: {}", members(system, &p.first).join("; ")),
            format!("second: {}", members(system, &p.second).join("; ")),
        ],
    }
}

/// JSON for a check; `measure` names the minimized quantity when there is one.
pub fn check_json(system: &SetSystem, kind: &str, report: &CheckReport, measure: Option<&str>) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("command".into(), json!("check"));
    out.insert("kind".into(), json!(kind));
    out.insert("verdict".into(), json!(report.verdict));
    out.insert("method".into(), json!(report.method.as_str()));
    if let (Some(name), Some(m)) = (measure, report.minimizer()) {
        out.insert(name.into(), json!(m.value));
    }
    out.insert("certificate".into(), certificate_json(system, &report.certificate));
    out
}

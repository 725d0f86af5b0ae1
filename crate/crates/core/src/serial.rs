//! JSON and DOT output. Rationals are always written `"p/q"`, integral
//! weights as integer arrays. Object keys are emitted in a fixed order so
//! equal inputs give equal bytes.

use serde_json::{json, Value};

use crate::crystal::CrystalGraph;
use crate::path::Path;
use crate::plactic::{ConfluenceReport, RewriteSystem, TerminationReport};
use crate::root_ops::Monomial;
use crate::root_system::RootSystem;
use crate::weight::{RatVec, Weight, Q};

pub fn rational(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rat_vec(v: &RatVec) -> Value {
    Value::Array(v.coords().iter().map(|q| Value::String(rational(q))).collect())
}

pub fn weight(w: &Weight) -> Value {
    json!(w.coords())
}

pub fn breakpoints(p: &Path) -> Value {
    Value::Array(p.points().iter().map(rat_vec).collect())
}

/// Weight of a path or monomial: integer array when integral.
fn end_weight(v: &RatVec) -> Value {
    v.to_weight().map(|w| weight(&w)).unwrap_or_else(|| rat_vec(v))
}

pub fn monomial(m: &Monomial) -> Value {
    json!({
        "shape": weight(&m.shape()),
        "breakpoints": breakpoints(m.concatenation()),
        "weight": end_weight(m.weight()),
        "factors": m.factors().iter().map(|f| json!({
            "shape": weight(&f.shape),
            "breakpoints": breakpoints(&f.path),
        })).collect::<Vec<_>>(),
    })
}

pub fn system_header(rs: &RootSystem) -> Value {
    json!({ "type": rs.label().to_string(), "rank": rs.rank() })
}

pub fn crystal(rs: &RootSystem, g: &CrystalGraph) -> Value {
    let vertices: Vec<Value> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(id, m)| {
            json!({
                "id": id,
                "shape": weight(&m.shape()),
                "breakpoints": breakpoints(m.concatenation()),
                "weight": end_weight(m.weight()),
            })
        })
        .collect();
    let edges: Vec<Value> = g.edges().iter().map(|&(u, i, v)| json!([u, i, v])).collect();
    json!({ "system": system_header(rs), "vertices": vertices, "edges": edges })
}

/// Vertices labelled by ordinal and weight, edges by root index.
pub fn crystal_dot(g: &CrystalGraph) -> String {
    let mut out = String::from("digraph crystal {\n  rankdir=TB;\n");
    for (id, m) in g.vertices().iter().enumerate() {
        out.push_str(&format!("  v{id} [label=\"{id}: {}\"];\n", m.weight()));
    }
    for &(u, i, v) in g.edges() {
        out.push_str(&format!("  v{u} -> v{v} [label=\"{i}\"];\n"));
    }
    out.push_str("}\n");
    out
}

pub fn generators(system: &RewriteSystem) -> Value {
    let rank = system.rank();
    Value::Array(
        system
            .table()
            .entries()
            .iter()
            .map(|g| {
                json!({
                    "id": g.id,
                    "shape": weight(&Weight::fundamental(rank, g.shape).expect("valid shape")),
                    "breakpoints": breakpoints(&g.path),
                    "weight": weight(&g.weight),
                })
            })
            .collect(),
    )
}

pub fn rules(system: &RewriteSystem) -> Value {
    let table = system.table();
    let rules: Vec<Value> = system
        .rules()
        .iter()
        .map(|r| {
            json!({
                "lhs": [table.get(r.lhs.0).id, table.get(r.lhs.1).id],
                "rhs": table.ids(&r.rhs),
                "lhs_shape": weight(&r.lhs_shape),
                "rhs_shape": weight(&r.rhs_shape),
            })
        })
        .collect();
    json!({
        "system": system_header(system.root_system()),
        "generators": generators(system),
        "rules": rules,
    })
}

pub fn audit(termination: &TerminationReport, confluence: &ConfluenceReport) -> Value {
    json!({
        "termination": termination,
        "confluence": confluence,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

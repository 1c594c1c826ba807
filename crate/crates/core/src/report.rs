//! JSON property reports.
//!
//! A report carries `"schema": 1`, a graph summary, one entry per property
//! and the limits and seed used. Every `yes`/`no` entry embeds its witness,
//! written with vertex and edge labels so it can be parsed back and checked
//! against the graph by [`validate_report`].

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::{
    decide_equi_exact, stable_system, star_system, strong_check, DecideOptions, EquiRefutation, SetSystem,
    StrongRefutation, StrongYes, SystemWitness, DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_STRONG_LIMIT,
};
use crate::graph::Graph;
use crate::recognize::{
    crosscheck_table1, general_partition, is_p5_constrained, triangle_condition, CrosscheckOptions, NoStrongClique,
    P5Checked, P5Path, StrongCliqueMap, TriangleChecked, TriangleFailure, ROW_PROPERTIES,
};
use crate::transforms::co_line;
use crate::verdict::{Answer, Verdict, DEFAULT_STEP_BUDGET};

pub const SCHEMA_VERSION: u64 = 1;

/// What to compute and with which limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PanelOptions {
    pub budget: u64,
    pub seed: u64,
    pub exhaustive_limit: usize,
    pub strong_limit: usize,
    /// Also run the strong variants.
    pub strong: bool,
    /// Also run the properties of the complement of the line graph.
    pub with_co_line: bool,
}

impl Default for PanelOptions {
    fn default() -> Self {
        PanelOptions {
            budget: DEFAULT_STEP_BUDGET,
            seed: 0,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            strong_limit: DEFAULT_STRONG_LIMIT,
            strong: false,
            with_co_line: false,
        }
    }
}

/// A finished report and the properties that came back `unknown`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub json: Value,
    pub unknown: Vec<String>,
}

fn labels(g: &Graph, vs: &[usize]) -> Value {
    Value::Array(vs.iter().map(|&v| json!(g.label(v))).collect())
}

fn edge_pair(g: &Graph, e: usize) -> Value {
    let (u, v) = g.edge(e);
    json!([g.label(u), g.label(v)])
}

fn bad(msg: &str) -> Error {
    Error::Certificate(msg.to_string())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(&format!("missing `{key}`")))
}

fn vertex_of(g: &Graph, v: &Value) -> Result<usize> {
    let name = v.as_str().ok_or_else(|| bad("vertex labels are strings"))?;
    g.vertex(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))
}

fn vertices_of(g: &Graph, v: &Value) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| bad("expected a list of vertex labels"))?
        .iter()
        .map(|x| vertex_of(g, x))
        .collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn edge_of(g: &Graph, v: &Value) -> Result<usize> {
    let ends = vertices_of(g, v)?;
    if ends.len() != 2 {
        return Err(bad("an edge is a pair of labels"));
    }
    g.edge_id(ends[0], ends[1]).ok_or_else(|| bad("pair is not an edge"))
}

// ---------------------------------------------------------------------------
// graph witnesses

fn p5_json(g: &Graph, v: &Verdict<P5Checked, P5Path>) -> Value {
    match v {
        Verdict::Yes(c) => json!({"type": "degree_two_checked", "vertices": labels(g, &c.degree_two)}),
        Verdict::No(p) => json!({"type": "p5_path", "vertices": labels(g, &p.vertices)}),
        Verdict::Unknown(_) => Value::Null,
    }
}

fn triangle_json(g: &Graph, v: &Verdict<TriangleChecked, TriangleFailure>) -> Value {
    match v {
        Verdict::Yes(c) => json!({"type": "triangle_checked", "maximal_stable_sets": c.stable_sets}),
        Verdict::No(f) => json!({
            "type": "triangle_failure",
            "stable_set": labels(g, &f.stable_set),
            "edge": labels(g, &[f.edge.0, f.edge.1]),
        }),
        Verdict::Unknown(_) => Value::Null,
    }
}

fn partition_json(g: &Graph, v: &Verdict<StrongCliqueMap, NoStrongClique>) -> Value {
    match v {
        Verdict::Yes(m) => json!({
            "type": "strong_clique_map",
            "cliques": m.cliques.iter().map(|c| labels(g, c)).collect::<Vec<_>>(),
            "edges": m.clique_of_edge.iter().enumerate()
                .map(|(e, &i)| json!({"edge": edge_pair(g, e), "clique": i}))
                .collect::<Vec<_>>(),
        }),
        Verdict::No(n) => json!({
            "type": "no_strong_clique",
            "edge": edge_pair(g, n.edge),
            "misses": n.misses.iter()
                .map(|(c, s)| json!({"clique": labels(g, c), "stable_set": labels(g, s)}))
                .collect::<Vec<_>>(),
        }),
        Verdict::Unknown(_) => Value::Null,
    }
}

fn strong_yes_json(s: &SetSystem, y: &StrongYes) -> Value {
    json!({
        "type": "strong_polytope",
        "zero_elements": y.zero_elements.iter().map(|&e| json!(s.element_names()[e])).collect::<Vec<_>>(),
        "dimension": y.dimension,
    })
}

// ---------------------------------------------------------------------------
// panel

fn entry(value: &str, witness: Value) -> Value {
    json!({"value": value, "witness": witness})
}

/// Turns a verdict or a limit error into a report entry.
fn settle<Y, N>(
    r: Result<Verdict<Y, N>>,
    name: &str,
    unknown: &mut Vec<String>,
    render: impl FnOnce(&Verdict<Y, N>) -> Value,
) -> Result<Value> {
    match r {
        Ok(v @ Verdict::Yes(_)) => Ok(entry("yes", render(&v))),
        Ok(v @ Verdict::No(_)) => Ok(entry("no", render(&v))),
        Ok(Verdict::Unknown(x)) => {
            unknown.push(name.to_string());
            Ok(json!({"value": "unknown", "budget": x.budget, "reason": "step budget exhausted"}))
        }
        Err(Error::BudgetExhausted(b)) => {
            unknown.push(name.to_string());
            Ok(json!({"value": "unknown", "budget": b, "reason": "step budget exhausted"}))
        }
        Err(e @ Error::TooLarge { .. }) => {
            let Error::TooLarge { limit, .. } = e else {
                unreachable!()
            };
            unknown.push(name.to_string());
            Ok(json!({"value": "unknown", "budget": limit, "reason": e.to_string()}))
        }
        Err(e) => Err(e),
    }
}

fn equi_entry(s: &SetSystem, o: &PanelOptions, name: &str, unknown: &mut Vec<String>) -> Result<Value> {
    let opts = DecideOptions {
        seed: o.seed,
        exhaustive_limit: o.exhaustive_limit,
    };
    settle(decide_equi_exact(s, &opts), name, unknown, |v| match v {
        Verdict::Yes(w) => SystemWitness::Weighting(w.clone()).to_json(s),
        Verdict::No(r) => SystemWitness::from(r.clone()).to_json(s),
        Verdict::Unknown(_) => Value::Null,
    })
}

fn strong_entry(s: &SetSystem, o: &PanelOptions, name: &str, unknown: &mut Vec<String>) -> Result<Value> {
    settle(strong_check(s, o.strong_limit), name, unknown, |v| match v {
        Verdict::Yes(y) => strong_yes_json(s, y),
        Verdict::No(r) => SystemWitness::from(r.clone()).to_json(s),
        Verdict::Unknown(_) => Value::Null,
    })
}

/// Runs the property panel on `g`.
///
/// Fails on inputs outside a property's domain (isolated vertices for the
/// star properties); limits that are hit give `unknown` entries instead.
pub fn analyze(g: &Graph, o: &PanelOptions) -> Result<PropertyReport> {
    let mut unknown = Vec::new();
    let mut props = Map::new();
    let p5 = is_p5_constrained(g);
    let value = if p5.is_yes() { "yes" } else { "no" };
    props.insert("p5_constrained".into(), entry(value, p5_json(g, &p5)));
    let stars = star_system(g)?;
    props.insert(
        "equistarable".into(),
        equi_entry(&stars, o, "equistarable", &mut unknown)?,
    );
    if o.strong {
        props.insert(
            "strongly_equistarable".into(),
            strong_entry(&stars, o, "strongly_equistarable", &mut unknown)?,
        );
    }
    if o.with_co_line {
        let lg = co_line(g)?.graph;
        match stable_system(&lg, o.budget) {
            Ok(stables) => {
                props.insert(
                    "equistable".into(),
                    equi_entry(&stables, o, "equistable", &mut unknown)?,
                );
                if o.strong {
                    props.insert(
                        "strongly_equistable".into(),
                        strong_entry(&stables, o, "strongly_equistable", &mut unknown)?,
                    );
                }
            }
            Err(Error::BudgetExhausted(b)) => {
                let mut names = vec!["equistable"];
                if o.strong {
                    names.push("strongly_equistable");
                }
                for name in names {
                    unknown.push(name.to_string());
                    props.insert(
                        name.into(),
                        json!({"value": "unknown", "budget": b, "reason": "step budget exhausted"}),
                    );
                }
            }
            Err(e) => return Err(e),
        }
        props.insert(
            "triangle_condition".into(),
            settle(
                triangle_condition(&lg, o.budget),
                "triangle_condition",
                &mut unknown,
                |v| triangle_json(&lg, v),
            )?,
        );
        props.insert(
            "general_partition".into(),
            settle(
                general_partition(&lg, o.budget),
                "general_partition",
                &mut unknown,
                |v| partition_json(&lg, v),
            )?,
        );
    }
    let json = json!({
        "schema": SCHEMA_VERSION,
        "tool": {"name": "equilab", "version": env!("CARGO_PKG_VERSION")},
        "graph": graph_summary(g),
        "properties": props,
        "budgets": {
            "steps": o.budget,
            "exhaustive_subsets_log2": o.exhaustive_limit,
            "strong_ground_size": o.strong_limit,
        },
        "seed": o.seed,
    });
    Ok(PropertyReport { json, unknown })
}

pub fn graph_summary(g: &Graph) -> Value {
    json!({
        "n": g.n(),
        "m": g.m(),
        "bipartite": g.is_bipartite(),
        "triangle_free": g.is_triangle_free(),
        "components": g.components().count(),
    })
}

// ---------------------------------------------------------------------------
// validation

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(bad(&format!("{what} witness failed verification")))
    }
}

fn validate_equi(s: &SetSystem, e: &Value, limit: usize) -> Result<()> {
    let w = SystemWitness::from_json(s, field(e, "witness")?)?;
    let ok = match (field(e, "value")?.as_str(), &w) {
        (Some("yes"), SystemWitness::Weighting(w)) => crate::exact::verify_weighting(s, w, limit)?.is_yes(),
        (Some("no"), SystemWitness::Forced(c)) => EquiRefutation::Forced(c.clone()).verify(s),
        (Some("no"), SystemWitness::Infeasible(p)) => EquiRefutation::Infeasible(p.clone()).verify(s),
        (Some("no"), SystemWitness::Obstruction(o)) => EquiRefutation::NoPositiveSolution(o.clone()).verify(s),
        _ => false,
    };
    check(ok, "weighting")
}

fn validate_strong(s: &SetSystem, e: &Value) -> Result<()> {
    let w = field(e, "witness")?;
    let ok = match field(e, "value")?.as_str() {
        Some("yes") => {
            let zero = sorted(
                field(w, "zero_elements")?
                    .as_array()
                    .ok_or_else(|| bad("zero_elements is a list"))?
                    .iter()
                    .map(|x| {
                        let name = x.as_str().ok_or_else(|| bad("element names are strings"))?;
                        s.element(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
            let dimension = field(w, "dimension")?.as_u64().ok_or_else(|| bad("dimension"))? as usize;
            StrongYes {
                zero_elements: zero,
                dimension,
            }
            .verify(s)
        }
        Some("no") => match SystemWitness::from_json(s, w)? {
            SystemWitness::Constant(c) => StrongRefutation::Constant(c).verify(s),
            SystemWitness::Obstruction(o) => StrongRefutation::EmptyPolytope(o).verify(s),
            _ => false,
        },
        _ => false,
    };
    check(ok, "strong")
}

fn validate_p5(g: &Graph, e: &Value) -> Result<()> {
    let w = field(e, "witness")?;
    let vs = vertices_of(g, field(w, "vertices")?)?;
    let ok = match field(e, "value")?.as_str() {
        Some("yes") => P5Checked { degree_two: vs }.verify(g),
        Some("no") => match <[usize; 5]>::try_from(vs) {
            Ok(vertices) => P5Path { vertices }.verify(g),
            Err(_) => false,
        },
        _ => false,
    };
    check(ok, "p5")
}

fn validate_triangle(g: &Graph, e: &Value, budget: u64) -> Result<()> {
    let w = field(e, "witness")?;
    let ok = match field(e, "value")?.as_str() {
        Some("yes") => {
            let k = field(w, "maximal_stable_sets")?.as_u64().ok_or_else(|| bad("count"))? as usize;
            TriangleChecked { stable_sets: k }.verify(g, budget)
        }
        Some("no") => {
            let ends = vertices_of(g, field(w, "edge")?)?;
            ends.len() == 2
                && TriangleFailure {
                    stable_set: sorted(vertices_of(g, field(w, "stable_set")?)?),
                    edge: (ends[0], ends[1]),
                }
                .verify(g)
        }
        _ => false,
    };
    check(ok, "triangle condition")
}

fn validate_partition(g: &Graph, e: &Value, budget: u64) -> Result<()> {
    let w = field(e, "witness")?;
    let ok = match field(e, "value")?.as_str() {
        Some("yes") => {
            let cliques = field(w, "cliques")?
                .as_array()
                .ok_or_else(|| bad("cliques is a list"))?
                .iter()
                .map(|c| vertices_of(g, c).map(sorted))
                .collect::<Result<Vec<_>>>()?;
            let mut clique_of_edge = vec![usize::MAX; g.m()];
            for item in field(w, "edges")?.as_array().ok_or_else(|| bad("edges is a list"))? {
                let e = edge_of(g, field(item, "edge")?)?;
                clique_of_edge[e] = field(item, "clique")?.as_u64().ok_or_else(|| bad("clique index"))? as usize;
            }
            StrongCliqueMap {
                cliques,
                clique_of_edge,
            }
            .verify(g, budget)
        }
        Some("no") => {
            let edge = edge_of(g, field(w, "edge")?)?;
            let misses = field(w, "misses")?
                .as_array()
                .ok_or_else(|| bad("misses is a list"))?
                .iter()
                .map(|m| {
                    Ok((
                        sorted(vertices_of(g, field(m, "clique")?)?),
                        sorted(vertices_of(g, field(m, "stable_set")?)?),
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            NoStrongClique { edge, misses }.verify(g, budget)
        }
        _ => false,
    };
    check(ok, "general partition")
}

/// Parses every witness in `report` back and re-checks it against `g`.
/// Returns the number of witnesses checked.
pub fn validate_report(g: &Graph, report: &Value) -> Result<usize> {
    if report.get("schema").and_then(Value::as_u64) != Some(SCHEMA_VERSION) {
        return Err(bad("unsupported schema"));
    }
    let budget = report
        .pointer("/budgets/steps")
        .and_then(Value::as_u64)
        .unwrap_or(DEFAULT_STEP_BUDGET);
    let limit = report
        .pointer("/budgets/exhaustive_subsets_log2")
        .and_then(Value::as_u64)
        .map_or(DEFAULT_EXHAUSTIVE_LIMIT, |x| x as usize);
    let props = field(report, "properties")?
        .as_object()
        .ok_or_else(|| bad("properties is an object"))?;
    let mut checked = 0;
    let mut co = None;
    let mut stables = None;
    let stars = star_system(g)?;
    for (name, e) in props {
        if field(e, "value")?.as_str() == Some("unknown") {
            continue;
        }
        if matches!(
            name.as_str(),
            "equistable" | "strongly_equistable" | "triangle_condition" | "general_partition"
        ) && co.is_none()
        {
            co = Some(co_line(g)?.graph);
        }
        match name.as_str() {
            "p5_constrained" => validate_p5(g, e)?,
            "equistarable" => validate_equi(&stars, e, limit)?,
            "strongly_equistarable" => validate_strong(&stars, e)?,
            "equistable" | "strongly_equistable" => {
                if stables.is_none() {
                    stables = Some(stable_system(co.as_ref().expect("built"), budget)?);
                }
                let s = stables.as_ref().expect("built");
                if name == "equistable" {
                    validate_equi(s, e, limit)?
                } else {
                    validate_strong(s, e)?
                }
            }
            "triangle_condition" => validate_triangle(co.as_ref().expect("built"), e, budget)?,
            "general_partition" => validate_partition(co.as_ref().expect("built"), e, budget)?,
            other => return Err(bad(&format!("unknown property `{other}`"))),
        }
        checked += 1;
    }
    Ok(checked)
}

// ---------------------------------------------------------------------------
// text form

fn witness_note(w: &Value) -> String {
    let ty = w.get("type").and_then(Value::as_str).unwrap_or("");
    let value = |v: &Value| format!("{}/{}", v["num"], v["den"]);
    match ty {
        "forced_value" => format!(
            "forced value {} on {{{}}}",
            value(&w["value"]),
            w["target"].as_array().map_or(String::new(), |t| t
                .iter()
                .filter_map(Value::as_str)
                .collect::<Vec<_>>()
                .join(", "))
        ),
        "constant_total" => format!(
            "constant total {} on {{{}}}",
            value(&w["value"]),
            w["target"].as_array().map_or(String::new(), |t| t
                .iter()
                .filter_map(Value::as_str)
                .collect::<Vec<_>>()
                .join(", "))
        ),
        "p5_path"
        | "triangle_failure"
        | "no_strong_clique"
        | "weighting"
        | "infeasible_unit_system"
        | "positivity_obstruction"
        | "strong_clique_map"
        | "strong_polytope"
        | "triangle_checked"
        | "degree_two_checked" => ty.replace('_', " "),
        other => other.to_string(),
    }
}

/// Human-readable rendering of a report.
pub fn render_text(report: &Value) -> String {
    let g = &report["graph"];
    let mut out = format!(
        "graph: n={} m={} bipartite={} triangle_free={} components={}\n",
        g["n"], g["m"], g["bipartite"], g["triangle_free"], g["components"]
    );
    if let Some(props) = report["properties"].as_object() {
        for (name, e) in props {
            let v = e["value"].as_str().unwrap_or("?");
            if v == "unknown" {
                out.push_str(&format!("{name}: unknown ({})\n", e["reason"].as_str().unwrap_or("")));
            } else {
                out.push_str(&format!("{name}: {v} ({})\n", witness_note(&e["witness"])));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// cross-check summaries

/// Per-row tallies over many graphs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RowCounts {
    pub yes_yes: usize,
    pub no_no: usize,
    pub disagree: usize,
    /// At least one side unknown.
    pub unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckSummary {
    pub graphs: usize,
    pub rows: Vec<RowCounts>,
    /// Offending graph (as an edge list) with its messages.
    pub violations: Vec<(String, Vec<String>)>,
    pub witnesses_checked: usize,
}

/// Runs [`crosscheck_table1`] on each graph, in order, and tallies the rows.
pub fn crosscheck_all(graphs: &[Graph], o: &CrosscheckOptions) -> Result<CrosscheckSummary> {
    let mut rows = vec![RowCounts::default(); ROW_PROPERTIES.len()];
    let mut violations = Vec::new();
    let mut witnesses_checked = 0;
    for g in graphs {
        let r = crosscheck_table1(g, o)?;
        for (c, row) in rows.iter_mut().zip(&r.rows) {
            match (row.left, row.right) {
                (Answer::Yes, Answer::Yes) => c.yes_yes += 1,
                (Answer::No, Answer::No) => c.no_no += 1,
                (Answer::Unknown, _) | (_, Answer::Unknown) => c.unknown += 1,
                _ => c.disagree += 1,
            }
        }
        witnesses_checked += r.witnesses_checked;
        if !r.violations.is_empty() {
            violations.push((g.to_edge_list(), r.violations));
        }
    }
    Ok(CrosscheckSummary {
        graphs: graphs.len(),
        rows,
        violations,
        witnesses_checked,
    })
}

impl CrosscheckSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA_VERSION,
            "graphs": self.graphs,
            "rows": ROW_PROPERTIES.iter().zip(&self.rows).map(|((l, r), c)| json!({
                "left_property": l,
                "right_property": r,
                "yes_yes": c.yes_yes,
                "no_no": c.no_no,
                "disagree": c.disagree,
                "unknown": c.unknown,
            })).collect::<Vec<_>>(),
            "violations": self.violations.iter()
                .map(|(g, m)| json!({"graph": g, "messages": m}))
                .collect::<Vec<_>>(),
            "witnesses_checked": self.witnesses_checked,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("graphs: {}\n", self.graphs);
        for (i, ((l, r), c)) in ROW_PROPERTIES.iter().zip(&self.rows).enumerate() {
            out.push_str(&format!(
                "row {}: {l} / {r}: yes/yes {} no/no {} disagree {} unknown {}\n",
                i + 1,
                c.yes_yes,
                c.no_no,
                c.disagree,
                c.unknown
            ));
        }
        out.push_str(&format!("witnesses checked: {}\n", self.witnesses_checked));
        out.push_str(&format!("violations: {}\n", self.violations.len()));
        for (g, msgs) in &self.violations {
            for m in msgs {
                out.push_str(&format!("  {m}\n"));
            }
            out.push_str(&format!("  graph:\n{g}"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    fn full() -> PanelOptions {
        PanelOptions {
            strong: true,
            with_co_line: true,
            ..PanelOptions::default()
        }
    }

    #[test]
    fn reports_round_trip() {
        for f in [
            Family::Cycle(4),
            Family::Cycle(6),
            Family::Path(5),
            Family::CompleteBipartite(4, 3),
        ] {
            let g = generate(&f).unwrap();
            let r = analyze(&g, &full()).unwrap();
            assert!(r.unknown.is_empty());
            assert_eq!(r.json["schema"], 1);
            let text = serde_json::to_string(&r.json).unwrap();
            let back: Value = serde_json::from_str(&text).unwrap();
            assert_eq!(validate_report(&g, &back).unwrap(), 7, "{f}");
        }
    }

    #[test]
    fn tampered_report_is_rejected() {
        let g = generate(&Family::Path(5)).unwrap();
        let mut r = analyze(&g, &full()).unwrap().json;
        r["properties"]["p5_constrained"]["witness"]["vertices"] = json!(["1", "2", "3", "4", "1"]);
        assert!(validate_report(&g, &r).is_err());
    }

    #[test]
    fn unknown_on_small_limits() {
        let g = generate(&Family::Petersen).unwrap();
        let o = PanelOptions {
            strong: true,
            strong_limit: 10,
            ..PanelOptions::default()
        };
        let r = analyze(&g, &o).unwrap();
        assert_eq!(r.unknown, ["strongly_equistarable"]);
        assert_eq!(r.json["properties"]["equistarable"]["value"], "no");
        assert!(render_text(&r.json).contains("forced value 1/1"));
    }
}

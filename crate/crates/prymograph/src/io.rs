//! JSON input/output and DOT export.
//!
//! Graphs are exchanged as `{"vertices": [{"id", "genus"}], "edges": [{"id",
//! "ends": [a, b]}]}`. Reports serialize with arbitrary-precision counts as
//! decimal strings and rationals as `"p/q"`, and every collection is emitted
//! in a fixed sorted order so output is byte-stable run to run.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cover::{CoverGraph, MonodromyData, SheetChoice};
use crate::degrees::{Multidegree, Rat, SubcurveCertificate};
use crate::error::{Error, Result};
use crate::fiber::{self, FiberReport};
use crate::graph::{DualGraph, EdgeSubset};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: String,
    pub genus: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: String,
    pub ends: [String; 2],
}

/// The on-disk graph format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    #[serde(default)]
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<DualGraph> {
        let vertices = self.vertices.iter().map(|v| (v.id.clone(), v.genus)).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| (e.id.clone(), e.ends[0].clone(), e.ends[1].clone()))
            .collect();
        DualGraph::new(vertices, edges)
    }

    pub fn from_graph(g: &DualGraph) -> Self {
        GraphJson {
            vertices: g
                .vertex_entries()
                .iter()
                .map(|v| VertexJson { id: v.name.clone(), genus: v.genus })
                .collect(),
            edges: g
                .edge_entries()
                .iter()
                .map(|e| {
                    let (a, b) = (e.ends.0 as usize, e.ends.1 as usize);
                    EdgeJson {
                        id: e.name.clone(),
                        ends: [g.vertex_name(a).to_string(), g.vertex_name(b).to_string()],
                    }
                })
                .collect(),
        }
    }
}

/// Parse a graph from JSON text. Malformed JSON maps to [`Error::Parse`];
/// a well-formed file describing an invalid graph keeps the structural
/// error.
pub fn parse_graph(text: &str) -> Result<DualGraph> {
    let gj: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    gj.to_graph()
}

pub fn read_graph(path: &Path) -> Result<DualGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Parse(format!("serialize: {e}")))
}

/// `p/q` with an explicit denominator, even when it is 1.
pub fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberComponentJson {
    pub blown: Vec<String>,
    pub untouched: Vec<String>,
    pub blown_betti: usize,
    pub untouched_betti: usize,
    /// Number of square roots supported on this stratum, as a decimal string.
    pub square_roots: String,
    pub multiplicity: String,
    pub multiplicity_exponent: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberReportJson {
    pub genus: u64,
    pub geometric_genus_sum: u64,
    pub first_betti: usize,
    pub component_count: String,
    pub length: String,
    pub multiplicity_exponents: Vec<usize>,
    pub multiplicity_set: Vec<u64>,
    pub parity_exponents: Vec<usize>,
    pub parity_multiplicity_set: Vec<u64>,
    pub automorphism_caveat: Option<bool>,
    pub components: Vec<FiberComponentJson>,
}

pub fn fiber_report_json(g: &DualGraph, r: &FiberReport) -> FiberReportJson {
    FiberReportJson {
        genus: r.genus,
        geometric_genus_sum: r.genus_nu,
        first_betti: r.betti1,
        component_count: r.component_count.to_string(),
        length: r.length.to_string(),
        multiplicity_exponents: r.prym_exponents.iter().copied().collect(),
        multiplicity_set: fiber::l_values(&r.prym_exponents),
        parity_exponents: r.spin_exponents.iter().copied().collect(),
        parity_multiplicity_set: fiber::l_values(&r.spin_exponents),
        automorphism_caveat: r.aut_caveat,
        components: r
            .records
            .iter()
            .map(|rec| FiberComponentJson {
                blown: rec.sigma.names(g).iter().map(|s| s.to_string()).collect(),
                untouched: rec.delta.names(g).iter().map(|s| s.to_string()).collect(),
                blown_betti: rec.sigma_betti1,
                untouched_betti: rec.delta_betti1,
                square_roots: rec.eta_count.to_string(),
                multiplicity: rec.multiplicity.to_string(),
                multiplicity_exponent: rec.multiplicity_exponent,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpinReportJson {
    pub first_betti: usize,
    pub multiplicity_exponents: Vec<usize>,
    pub multiplicity_set: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentDegreeJson {
    pub component: String,
    pub degree: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub members: Vec<String>,
    pub degree: i64,
    pub crossing: u32,
    pub genus: i64,
    pub lower_bound: String,
    pub slack_lower: String,
    pub slack_upper: String,
    pub interior_crossing: u32,
    pub holds: bool,
    pub lower_equality: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreesJson {
    pub t: i64,
    pub total: i64,
    pub blown: Vec<String>,
    pub degrees: Vec<ComponentDegreeJson>,
    pub all_hold: bool,
    pub closed_orbit: bool,
    pub certificates: Vec<CertificateJson>,
}

pub fn degrees_json(md: &Multidegree, certs: &[SubcurveCertificate]) -> DegreesJson {
    let model = md.model();
    let base = model.base();
    DegreesJson {
        t: md.t,
        total: md.total,
        blown: model.blown().names(base).iter().map(|s| s.to_string()).collect(),
        degrees: md
            .degrees
            .iter()
            .enumerate()
            .map(|(c, &d)| ComponentDegreeJson { component: model.component_name(c), degree: d })
            .collect(),
        all_hold: certs.iter().all(|c| c.holds),
        closed_orbit: crate::degrees::closed_orbit_criterion(md, certs),
        certificates: certs
            .iter()
            .map(|c| CertificateJson {
                members: c.members.iter().map(|&ix| model.component_name(ix)).collect(),
                degree: c.d_y,
                crossing: c.k_y,
                genus: c.g_y,
                lower_bound: rat_string(&c.m_y),
                slack_lower: rat_string(&c.slack_low),
                slack_upper: rat_string(&c.slack_high),
                interior_crossing: c.ktilde_y,
                holds: c.holds,
                lower_equality: c.lower_equality,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverJson {
    pub base: GraphJson,
    pub blown: Vec<String>,
    pub cover: GraphJson,
    pub vertex_involution: BTreeMap<String, String>,
    pub edge_involution: BTreeMap<String, String>,
    pub vertex_projection: BTreeMap<String, String>,
    pub edge_projection: BTreeMap<String, String>,
    pub fixed_edges: Vec<String>,
    pub base_genus: u64,
    pub cover_genus: u64,
    pub admissible: bool,
}

pub fn cover_json(cg: &CoverGraph) -> CoverJson {
    let c = &cg.cover;
    let b = &cg.base;
    CoverJson {
        base: GraphJson::from_graph(b),
        blown: cg.blown.names(b).iter().map(|s| s.to_string()).collect(),
        cover: GraphJson::from_graph(c),
        vertex_involution: (0..c.vertex_count())
            .map(|v| {
                (c.vertex_name(v).to_string(), c.vertex_name(cg.vertex_involution[v]).to_string())
            })
            .collect(),
        edge_involution: (0..c.edge_count())
            .map(|e| (c.edge_name(e).to_string(), c.edge_name(cg.edge_involution[e]).to_string()))
            .collect(),
        vertex_projection: (0..c.vertex_count())
            .map(|v| {
                (c.vertex_name(v).to_string(), b.vertex_name(cg.vertex_projection[v]).to_string())
            })
            .collect(),
        edge_projection: (0..c.edge_count())
            .map(|e| (c.edge_name(e).to_string(), b.edge_name(cg.edge_projection[e]).to_string()))
            .collect(),
        fixed_edges: cg.fixed_edges.names(c).iter().map(|s| s.to_string()).collect(),
        base_genus: b.genus(),
        cover_genus: c.genus(),
        admissible: crate::cover::verify_admissible(cg),
    }
}

/// Monodromy choices by name, as read from disk: sheet values are `"split"`
/// or `"connected"`, twists map edge ids to booleans.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonodromyJson {
    #[serde(default)]
    pub split: BTreeMap<String, String>,
    #[serde(default)]
    pub twists: BTreeMap<String, bool>,
}

pub fn monodromy_from_json(g: &DualGraph, mj: &MonodromyJson) -> Result<MonodromyData> {
    let mut data = MonodromyData::default();
    for (name, value) in &mj.split {
        let v = g
            .vertex_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown vertex {name:?} in monodromy")))?;
        let choice = match value.as_str() {
            "split" => SheetChoice::Split,
            "connected" => SheetChoice::Connected,
            other => {
                return Err(Error::Parse(format!(
                    "sheet choice for {name:?} must be \"split\" or \"connected\", got {other:?}"
                )))
            }
        };
        data.split.insert(v, choice);
    }
    for (name, &twist) in &mj.twists {
        let e = g
            .edge_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown edge {name:?} in monodromy")))?;
        data.twists.insert(e, twist);
    }
    Ok(data)
}

pub fn monodromy_to_json(g: &DualGraph, data: &MonodromyData) -> MonodromyJson {
    MonodromyJson {
        split: data
            .split
            .iter()
            .map(|(&v, &choice)| {
                let value = match choice {
                    SheetChoice::Split => "split",
                    SheetChoice::Connected => "connected",
                };
                (g.vertex_name(v).to_string(), value.to_string())
            })
            .collect(),
        twists: data
            .twists
            .iter()
            .map(|(&e, &t)| (g.edge_name(e).to_string(), t))
            .collect(),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT rendering with `highlight` edges dashed. Vertices are labeled
/// `id:genus`. Byte-stable: everything is emitted in index order.
pub fn graph_dot(g: &DualGraph, highlight: &EdgeSubset) -> String {
    let mut out = String::from("graph dual {\n  node [shape=circle];\n");
    for v in 0..g.vertex_count() {
        let name = dot_escape(g.vertex_name(v));
        out.push_str(&format!("  \"{}\" [label=\"{}:{}\"];\n", name, name, g.vertex_genus(v)));
    }
    for e in 0..g.edge_count() {
        let (a, b) = g.edge_ends(e);
        let style = if highlight.contains(e) { ", style=dashed" } else { "" };
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"{}\"{}];\n",
            dot_escape(g.vertex_name(a)),
            dot_escape(g.vertex_name(b)),
            dot_escape(g.edge_name(e)),
            style
        ));
    }
    out.push_str("}\n");
    out
}

const ORBIT_PALETTE: [&str; 10] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
    "#1f78b4", "#b2182b",
];

/// DOT rendering of a double cover: involution orbits share a color, fixed
/// edges are dashed. Byte-stable.
pub fn cover_dot(cg: &CoverGraph) -> String {
    let c = &cg.cover;
    let mut vertex_orbit: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..c.vertex_count() {
        let rep = v.min(cg.vertex_involution[v]);
        let next = vertex_orbit.len();
        vertex_orbit.entry(rep).or_insert(next);
    }
    let mut edge_orbit: BTreeMap<usize, usize> = BTreeMap::new();
    for e in 0..c.edge_count() {
        let rep = e.min(cg.edge_involution[e]);
        let next = edge_orbit.len();
        edge_orbit.entry(rep).or_insert(next);
    }

    let mut out = String::from("graph cover {\n  node [shape=circle];\n");
    for v in 0..c.vertex_count() {
        let name = dot_escape(c.vertex_name(v));
        let color = ORBIT_PALETTE
            [vertex_orbit[&v.min(cg.vertex_involution[v])] % ORBIT_PALETTE.len()];
        out.push_str(&format!(
            "  \"{}\" [label=\"{}:{}\", color=\"{}\"];\n",
            name,
            name,
            c.vertex_genus(v),
            color
        ));
    }
    for e in 0..c.edge_count() {
        let (a, b) = c.edge_ends(e);
        let color =
            ORBIT_PALETTE[edge_orbit[&e.min(cg.edge_involution[e])] % ORBIT_PALETTE.len()];
        let style = if cg.fixed_edges.contains(e) { ", style=dashed" } else { "" };
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"{}\", color=\"{}\"{}];\n",
            dot_escape(c.vertex_name(a)),
            dot_escape(c.vertex_name(b)),
            dot_escape(c.edge_name(e)),
            color,
            style
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover;
    use crate::degrees;
    use crate::graph::QuasistableModel;
    use std::collections::BTreeMap as Map;

    const BANANA2: &str = r#"{
        "vertices": [{"id": "v1", "genus": 1}, {"id": "v2", "genus": 1}],
        "edges": [
            {"id": "e1", "ends": ["v1", "v2"]},
            {"id": "e2", "ends": ["v1", "v2"]}
        ]
    }"#;

    #[test]
    fn graph_round_trip() {
        let g = parse_graph(BANANA2).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        let back = GraphJson::from_graph(&g);
        let again = back.to_graph().unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn parse_error_classes() {
        assert!(matches!(parse_graph("not json"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_graph(r#"{"vertices": [], "edges": []}"#),
            Err(Error::InvalidGraph(_))
        ));
        // Unknown field is a parse error, not silently ignored.
        assert!(matches!(
            parse_graph(r#"{"vertices": [{"id": "v", "genus": 2, "weight": 3}], "edges": []}"#),
            Err(Error::Parse(_))
        ));
        // Dangling edge end is a structural error.
        let text = r#"{
            "vertices": [{"id": "v", "genus": 2}],
            "edges": [{"id": "e", "ends": ["v", "w"]}]
        }"#;
        assert!(matches!(parse_graph(text), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn fiber_json_fields() {
        let g = parse_graph(BANANA2).unwrap();
        let r = fiber::prym_fiber(&g, 24).unwrap();
        let j = fiber_report_json(&g, &r);
        assert_eq!(j.genus, 3);
        assert_eq!(j.first_betti, 1);
        assert_eq!(j.length, "64");
        assert_eq!(j.multiplicity_set, vec![1, 2]);
        assert_eq!(j.components.len(), 2);
        assert_eq!(j.components[0].blown, Vec::<String>::new());
        assert_eq!(j.components[1].blown, vec!["e1", "e2"]);
        let text = to_pretty_json(&j).unwrap();
        assert!(text.contains("\"square_roots\""));
    }

    #[test]
    fn degrees_json_rationals() {
        let g = parse_graph(BANANA2).unwrap();
        let model = QuasistableModel::new(g.clone(), EdgeSubset::empty(&g)).unwrap();
        let md = degrees::prym_multidegree(&model, 10).unwrap();
        let certs = degrees::basic_inequality_check(&md).unwrap();
        let j = degrees_json(&md, &certs);
        assert_eq!(j.total, 40);
        assert!(j.all_hold);
        assert!(j.certificates.iter().all(|c| c.lower_bound.contains('/')));
    }

    #[test]
    fn cover_json_and_dot_are_stable() {
        let g = parse_graph(BANANA2).unwrap();
        let blown = EdgeSubset::full(&g);
        let cg = cover::build_cover(&g, &blown, &cover::MonodromyData::default()).unwrap();
        let j = cover_json(&cg);
        assert!(j.admissible);
        assert_eq!(j.cover_genus, 5);
        assert_eq!(j.fixed_edges, vec!["e1~", "e2~"]);
        assert_eq!(j.vertex_involution["v1~"], "v1~");

        let d1 = cover_dot(&cg);
        let d2 = cover_dot(&cg);
        assert_eq!(d1, d2);
        assert!(d1.contains("style=dashed"));

        let plain = graph_dot(&g, &blown);
        assert!(plain.starts_with("graph dual {"));
        assert!(plain.contains("\"v1\" -- \"v2\" [label=\"e1\", style=dashed];"));
    }

    #[test]
    fn monodromy_name_mapping() {
        let g = parse_graph(BANANA2).unwrap();
        let mut split = Map::new();
        split.insert("v1".to_string(), "split".to_string());
        split.insert("v2".to_string(), "split".to_string());
        let mut twists = Map::new();
        twists.insert("e2".to_string(), true);
        let mj = MonodromyJson { split, twists };
        let data = monodromy_from_json(&g, &mj).unwrap();
        assert_eq!(data.split[&0], SheetChoice::Split);
        assert_eq!(data.twists[&1], true);
        let back = monodromy_to_json(&g, &data);
        assert_eq!(back.split["v1"], "split");
        assert_eq!(back.twists["e2"], true);

        let mut bad = MonodromyJson::default();
        bad.split.insert("nope".to_string(), "split".to_string());
        assert!(matches!(monodromy_from_json(&g, &bad), Err(Error::Parse(_))));
        let mut bad = MonodromyJson::default();
        bad.split.insert("v1".to_string(), "sideways".to_string());
        assert!(matches!(monodromy_from_json(&g, &bad), Err(Error::Parse(_))));
    }
}

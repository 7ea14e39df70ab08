//! Catalog export: JSON, one-line-per-entry text, and DOT.
//!
//! The JSON layer uses dedicated DTO structs so the core types stay free of
//! serialization concerns. Key order is fixed by declaration order and
//! entries arrive sorted by code, which makes emitted catalogs byte-stable
//! across runs and parallel schedules.

use serde::{Deserialize, Serialize};

use crate::canon::{
    automorphism_face_orbits, CanonicalCode, PlaneGraph, Reconstructed, Surface,
};
use crate::census::{PlaneCatalog, SphereCatalog};
use crate::map::{CombinatorialMap, Dart};
use crate::morse::{flow_summary, FlowSummary};

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FlowDto {
    pub sources: usize,
    pub saddles: usize,
    pub sinks: usize,
    pub euler_check: bool,
}

impl From<FlowSummary> for FlowDto {
    fn from(f: FlowSummary) -> Self {
        FlowDto {
            sources: f.sources,
            saddles: f.saddles,
            sinks: f.sinks,
            euler_check: f.euler_check,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct EntryDto {
    pub code: String,
    #[serde(rename = "V")]
    pub vertices: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    #[serde(rename = "F")]
    pub faces: usize,
    pub vertex_degrees: Vec<usize>,
    pub face_degrees: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outer_face_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parent_sphere_code: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face_orbit_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flow: Option<FlowDto>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CatalogDto {
    pub edge_count: usize,
    pub surface: String,
    pub mode: String,
    pub total: usize,
    pub entries: Vec<EntryDto>,
}

pub fn sphere_catalog_dto(catalog: &SphereCatalog) -> CatalogDto {
    let entries = catalog
        .entries
        .iter()
        .map(|entry| EntryDto {
            code: entry.code.to_string(),
            vertices: entry.summary.vertex_count,
            edges: entry.summary.edge_count,
            faces: entry.summary.face_count,
            vertex_degrees: entry.summary.vertex_degrees.clone(),
            face_degrees: entry.summary.face_degrees.clone(),
            outer_face_degree: None,
            parent_sphere_code: None,
            face_orbit_index: None,
            flow: None,
        })
        .collect();
    CatalogDto {
        edge_count: catalog.edge_count,
        surface: Surface::Sphere.to_string(),
        mode: catalog.mode.to_string(),
        total: catalog.entries.len(),
        entries,
    }
}

pub fn plane_catalog_dto(catalog: &PlaneCatalog) -> CatalogDto {
    let entries = catalog
        .entries
        .iter()
        .map(|entry| EntryDto {
            code: entry.code.to_string(),
            vertices: entry.summary.vertex_count,
            edges: entry.summary.edge_count,
            faces: entry.summary.face_count,
            vertex_degrees: entry.summary.vertex_degrees.clone(),
            face_degrees: entry.summary.face_degrees.clone(),
            outer_face_degree: Some(entry.outer_face_degree),
            parent_sphere_code: Some(entry.parent_sphere_code.to_string()),
            face_orbit_index: Some(entry.face_orbit_index),
            flow: Some(flow_summary(&entry.representative).into()),
        })
        .collect();
    CatalogDto {
        edge_count: catalog.edge_count,
        surface: Surface::Plane.to_string(),
        mode: catalog.mode.to_string(),
        total: catalog.entries.len(),
        entries,
    }
}

pub fn render_json(dto: &CatalogDto) -> String {
    let mut out = serde_json::to_string_pretty(dto).expect("DTOs serialize");
    out.push('\n');
    out
}

pub fn parse_json(text: &str) -> serde_json::Result<CatalogDto> {
    serde_json::from_str(text)
}

fn join_degrees(degrees: &[usize]) -> String {
    let parts: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// One line per entry: code followed by the headline statistics.
pub fn render_sphere_text(catalog: &SphereCatalog) -> String {
    let mut out = String::new();
    for entry in &catalog.entries {
        let s = &entry.summary;
        out.push_str(&format!(
            "{} V={} E={} F={} vdeg={} fdeg={} orbits={}\n",
            entry.code,
            s.vertex_count,
            s.edge_count,
            s.face_count,
            join_degrees(&s.vertex_degrees),
            join_degrees(&s.face_degrees),
            entry.face_orbits.len()
        ));
    }
    out
}

/// One line per entry: code, statistics, outer face, parent class, flow.
pub fn render_plane_text(catalog: &PlaneCatalog) -> String {
    let mut out = String::new();
    for entry in &catalog.entries {
        let s = &entry.summary;
        let flow = flow_summary(&entry.representative);
        out.push_str(&format!(
            "{} V={} E={} F={} vdeg={} fdeg={} outer={} parent={} orbit={} flow=({},{},{})\n",
            entry.code,
            s.vertex_count,
            s.edge_count,
            s.face_count,
            join_degrees(&s.vertex_degrees),
            join_degrees(&s.face_degrees),
            entry.outer_face_degree,
            entry.parent_sphere_code,
            entry.face_orbit_index,
            flow.sources,
            flow.saddles,
            flow.sinks
        ));
    }
    out
}

fn cycle_string(cycle: &[Dart]) -> String {
    let parts: Vec<String> = cycle.iter().map(|d| d.index().to_string()).collect();
    format!("({})", parts.join(" "))
}

fn cycles_string(cycles: &[Vec<Dart>]) -> String {
    cycles.iter().map(|c| cycle_string(c)).collect::<Vec<_>>().join("")
}

fn vertex_of_darts(map: &CombinatorialMap) -> Vec<usize> {
    let mut vertex_of = vec![0usize; map.dart_count()];
    for (vi, v) in map.vertices().iter().enumerate() {
        for d in v {
            vertex_of[d.index()] = vi;
        }
    }
    vertex_of
}

/// One `graph` block for one map. DOT has no notion of an embedding, so the
/// rotation system and outer face ride along as comments.
fn dot_block(name: &str, code: &str, map: &CombinatorialMap, outer: Option<&PlaneGraph>) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph {name} {{\n"));
    out.push_str(&format!("  // code: {code}\n"));
    let rotations: Vec<String> = map
        .vertices()
        .iter()
        .enumerate()
        .map(|(vi, v)| format!("v{vi}={}", cycle_string(v)))
        .collect();
    out.push_str(&format!("  // rotation: {}\n", rotations.join(" ")));
    let faces = map.faces();
    let face_strings: Vec<String> = faces
        .iter()
        .enumerate()
        .map(|(fi, c)| format!("f{fi}={}", cycle_string(c)))
        .collect();
    out.push_str(&format!("  // faces: {}\n", face_strings.join(" ")));
    if let Some(plane) = outer {
        out.push_str(&format!(
            "  // outer face: f{} (degree {})\n",
            plane.outer_face_index(),
            plane.outer_face_degree()
        ));
    }
    out.push_str(&format!("  label=\"{code}\";\n"));
    let vertex_of = vertex_of_darts(map);
    for i in 0..map.edge_count() {
        out.push_str(&format!(
            "  v{} -- v{} [label=\"e{}\"];\n",
            vertex_of[2 * i],
            vertex_of[2 * i + 1],
            i
        ));
    }
    out.push_str("}\n");
    out
}

pub fn render_sphere_dot(catalog: &SphereCatalog) -> String {
    let mut out = format!(
        "// catalog edges={} surface=sphere mode={} total={}\n",
        catalog.edge_count,
        catalog.mode,
        catalog.entries.len()
    );
    for (i, entry) in catalog.entries.iter().enumerate() {
        out.push_str(&dot_block(
            &format!("entry_{i}"),
            &entry.code.to_string(),
            &entry.representative,
            None,
        ));
    }
    out
}

pub fn render_plane_dot(catalog: &PlaneCatalog) -> String {
    let mut out = format!(
        "// catalog edges={} surface=plane mode={} total={}\n",
        catalog.edge_count,
        catalog.mode,
        catalog.entries.len()
    );
    for (i, entry) in catalog.entries.iter().enumerate() {
        out.push_str(&dot_block(
            &format!("entry_{i}"),
            &entry.code.to_string(),
            entry.representative.map(),
            Some(&entry.representative),
        ));
    }
    out
}

/// Detailed one-object rendering for the `show` command.
pub fn render_show_text(code: &CanonicalCode, object: &Reconstructed) -> String {
    let map = object.map();
    let summary = map.summary().expect("catalog objects are connected");
    let mut out = String::new();
    out.push_str(&format!("code: {code}\n"));
    out.push_str(&format!(
        "edges: {}, surface: {}, mode: {}\n",
        code.edge_count(),
        code.surface(),
        code.mode()
    ));
    out.push_str(&format!("sigma: {}\n", cycles_string(&map.vertices())));
    let alpha: Vec<Vec<Dart>> = (0..map.edge_count())
        .map(|i| vec![Dart(2 * i), Dart(2 * i + 1)])
        .collect();
    out.push_str(&format!("alpha: {}\n", cycles_string(&alpha)));
    let faces = map.faces();
    let face_strings: Vec<String> = faces
        .iter()
        .enumerate()
        .map(|(fi, c)| format!("f{fi}={}", cycle_string(c)))
        .collect();
    out.push_str(&format!("faces: {}\n", face_strings.join(" ")));
    if let Reconstructed::Plane(plane) = object {
        out.push_str(&format!(
            "outer face: f{} (degree {})\n",
            plane.outer_face_index(),
            plane.outer_face_degree()
        ));
    }
    out.push_str(&format!(
        "summary: V={} E={} F={} genus={} vdeg={} fdeg={}\n",
        summary.vertex_count,
        summary.edge_count,
        summary.face_count,
        summary.genus,
        join_degrees(&summary.vertex_degrees),
        join_degrees(&summary.face_degrees)
    ));
    let orbits = automorphism_face_orbits(map, code.mode()).expect("catalog objects are spherical");
    let orbit_strings: Vec<String> = orbits
        .iter()
        .map(|orbit| {
            let names: Vec<String> = orbit.iter().map(|i| format!("f{i}")).collect();
            format!("{{{}}}", names.join(" "))
        })
        .collect();
    out.push_str(&format!("face orbits: {}\n", orbit_strings.join(" ")));
    if let Reconstructed::Plane(plane) = object {
        let flow = flow_summary(plane);
        out.push_str(&format!(
            "flow: sources={} saddles={} sinks={} euler_check={}\n",
            flow.sources, flow.saddles, flow.sinks, flow.euler_check
        ));
    }
    out
}

pub fn render_show_dot(code: &CanonicalCode, object: &Reconstructed) -> String {
    match object {
        Reconstructed::Sphere(map) => dot_block("map", &code.to_string(), map, None),
        Reconstructed::Plane(plane) => {
            dot_block("map", &code.to_string(), plane.map(), Some(plane))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::EquivalenceMode;
    use crate::census::{enumerate_plane, enumerate_spherical};

    #[test]
    fn json_round_trips_and_recanonicalizes() {
        let catalog = enumerate_plane(2, EquivalenceMode::Full).unwrap();
        let dto = plane_catalog_dto(&catalog);
        let text = render_json(&dto);
        let parsed = parse_json(&text).unwrap();
        assert_eq!(parsed.total, 6);
        assert_eq!(parsed.entries.len(), 6);
        for entry in &parsed.entries {
            let code: CanonicalCode = entry.code.parse().unwrap();
            // Resolving checks that the code is its own canonical form.
            assert!(code.resolve().is_ok());
            assert_eq!(entry.edges, 2);
            assert!(entry.flow.is_some());
            assert!(entry.parent_sphere_code.is_some());
        }
    }

    #[test]
    fn sphere_json_omits_plane_fields() {
        let catalog = enumerate_spherical(1, EquivalenceMode::Full).unwrap();
        let text = render_json(&sphere_catalog_dto(&catalog));
        assert!(!text.contains("outer_face_degree"));
        assert!(!text.contains("flow"));
        assert!(text.contains("\"V\""));
    }

    #[test]
    fn text_has_one_line_per_entry() {
        let sphere = enumerate_spherical(2, EquivalenceMode::Full).unwrap();
        let text = render_sphere_text(&sphere);
        assert_eq!(text.lines().count(), sphere.entries.len());
        let plane = enumerate_plane(2, EquivalenceMode::Full).unwrap();
        let text = render_plane_text(&plane);
        assert_eq!(text.lines().count(), 6);
        for line in text.lines() {
            assert!(line.starts_with("E2:P:F:"));
            assert!(line.contains("flow=("));
        }
    }

    #[test]
    fn dot_has_one_graph_block_per_entry() {
        let plane = enumerate_plane(2, EquivalenceMode::Full).unwrap();
        let dot = render_plane_dot(&plane);
        let blocks = dot.lines().filter(|l| l.starts_with("graph ")).count();
        assert_eq!(blocks, 6);
        assert!(dot.contains("// outer face: f"));
        assert!(dot.contains(" -- "));
    }

    #[test]
    fn show_text_for_the_segment() {
        let code: CanonicalCode = "E1:S:F:0.1.1.0".parse().unwrap();
        let object = code.resolve().unwrap();
        let text = render_show_text(&code, &object);
        assert!(text.contains("summary: V=2 E=1 F=1 genus=0"));
        assert!(text.contains("face orbits: {f0}"));
        assert!(!text.contains("flow:"));
    }

    #[test]
    fn show_text_for_a_plane_loop() {
        let loop_map = crate::map::CombinatorialMap::new(1, vec![1, 0]).unwrap();
        let plane = PlaneGraph::from_face_index(loop_map, 0).unwrap();
        let code = crate::canon::canonical_code_plane(&plane, EquivalenceMode::Full);
        let object = code.resolve().unwrap();
        let text = render_show_text(&code, &object);
        assert!(text.contains("outer face: f"));
        assert!(text.contains("flow: sources=1 saddles=1 sinks=1 euler_check=true"));
        let dot = render_show_dot(&code, &object);
        assert!(dot.starts_with("graph map {"));
    }
}

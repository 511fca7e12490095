//! Diagram JSON, DOT rendering and derivation traces.

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, VertexKind, V};
use crate::error::{Error, Result};
use crate::phase::Phase;
use crate::rewrite::Step;
use crate::scalar::Scalar;

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: V,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phase: Option<Phase>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    inputs: Vec<V>,
    outputs: Vec<V>,
    vertices: Vec<VertexJson>,
    /// One entry per edge instance.
    edges: Vec<[V; 2]>,
    #[serde(default)]
    scalar: Scalar,
}

pub fn to_json(d: &Diagram) -> String {
    let vertices = d
        .vertices()
        .map(|v| {
            let (kind, phase) = match d.kind(v).unwrap() {
                VertexKind::Z(p) => ("Z", Some(p.clone())),
                VertexKind::X(p) => ("X", Some(p.clone())),
                VertexKind::H => ("H", None),
                VertexKind::Boundary => ("B", None),
            };
            VertexJson {
                id: v,
                kind: kind.to_string(),
                phase,
            }
        })
        .collect();
    let edges = d
        .edges()
        .into_iter()
        .flat_map(|(a, b, m)| std::iter::repeat_n([a, b], m))
        .collect();
    let j = DiagramJson {
        inputs: d.inputs().to_vec(),
        outputs: d.outputs().to_vec(),
        vertices,
        edges,
        scalar: d.scalar().clone(),
    };
    serde_json::to_string_pretty(&j).expect("diagram serializes")
}

/// Parses and validates a diagram.
pub fn from_json(text: &str) -> Result<Diagram> {
    let j: DiagramJson = serde_json::from_str(text).map_err(|e| Error::InvalidDiagram(format!("bad diagram json: {e}")))?;
    let mut d = Diagram::new(0, 0);
    for v in j.vertices {
        let phase = v.phase.unwrap_or_default();
        let kind = match v.kind.as_str() {
            "Z" => VertexKind::Z(phase),
            "X" => VertexKind::X(phase),
            "H" => VertexKind::H,
            "B" => VertexKind::Boundary,
            other => return Err(Error::InvalidDiagram(format!("unknown vertex kind `{other}`"))),
        };
        d.add_vertex_with_id(v.id, kind)?;
    }
    for [a, b] in j.edges {
        d.add_edge(a, b)?;
    }
    d.set_inputs(j.inputs);
    d.set_outputs(j.outputs);
    d.set_scalar(j.scalar.normalized());
    d.ensure_valid()?;
    Ok(d)
}

pub fn to_dot(d: &Diagram) -> String {
    let mut s = String::from("graph diagram {\n  rankdir=LR;\n");
    for v in d.vertices() {
        let attrs = match d.kind(v).unwrap() {
            VertexKind::Z(p) => format!("shape=ellipse, style=filled, fillcolor=green, label=\"{}\"", phase_label(p)),
            VertexKind::X(p) => format!("shape=ellipse, style=filled, fillcolor=red, label=\"{}\"", phase_label(p)),
            VertexKind::H => "shape=square, style=filled, fillcolor=yellow, label=\"H\"".to_string(),
            VertexKind::Boundary => {
                let role = if let Some(i) = d.inputs().iter().position(|x| *x == v) {
                    format!("in{i}")
                } else if let Some(i) = d.outputs().iter().position(|x| *x == v) {
                    format!("out{i}")
                } else {
                    "?".to_string()
                };
                format!("shape=point, xlabel=\"{role}\"")
            }
        };
        s.push_str(&format!("  v{v} [{attrs}];\n"));
    }
    for (a, b, m) in d.edges() {
        for _ in 0..m {
            s.push_str(&format!("  v{a} -- v{b};\n"));
        }
    }
    if !d.scalar().is_one() {
        s.push_str(&format!("  label=\"scalar: {}\";\n", d.scalar()));
    }
    s.push_str("}\n");
    s
}

fn phase_label(p: &Phase) -> String {
    if p.is_zero() {
        String::new()
    } else {
        p.to_string()
    }
}

pub fn trace_to_json(steps: &[Step]) -> String {
    serde_json::to_string_pretty(steps).expect("trace serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Diagram {
        let mut d = Diagram::new(1, 1);
        let z = d.add_z("1/4+a".parse().unwrap());
        let h = d.add_h();
        d.add_edge(d.inputs()[0], z).unwrap();
        d.add_edges(z, h, 2).unwrap();
        d.add_edge(z, z).unwrap();
        let x = d.add_x(Phase::pi());
        d.add_edge(x, d.outputs()[0]).unwrap();
        d.mul_scalar(&Scalar::new(3, Phase::new(1, 2), vec![Phase::new(1, 4)]));
        d
    }

    #[test]
    fn json_roundtrip_preserves_everything() {
        let d = sample();
        let back = from_json(&to_json(&d)).unwrap();
        assert!(back.isomorphic(&d));
        assert_eq!(back.vertices().collect::<Vec<_>>(), d.vertices().collect::<Vec<_>>());
        assert_eq!(to_json(&back), to_json(&d));
    }

    #[test]
    fn json_rejects_invalid() {
        let bad = r#"{"inputs":[0],"outputs":[],"vertices":[{"id":0,"kind":"B"}],"edges":[]}"#;
        assert!(matches!(from_json(bad), Err(Error::InvalidDiagram(_))));
        let kind = r#"{"inputs":[],"outputs":[],"vertices":[{"id":0,"kind":"Q"}],"edges":[]}"#;
        assert!(from_json(kind).is_err());
        let edge = r#"{"inputs":[],"outputs":[],"vertices":[],"edges":[[0,1]]}"#;
        assert!(matches!(from_json(edge), Err(Error::UnknownVertex(0))));
    }

    #[test]
    fn dot_is_deterministic() {
        let d = sample();
        let a = to_dot(&d);
        assert_eq!(a, to_dot(&d.clone()));
        assert!(a.contains("fillcolor=green"));
        assert!(a.contains("fillcolor=red"));
        assert!(a.contains("shape=square"));
        assert!(a.contains("shape=point"));
    }
}

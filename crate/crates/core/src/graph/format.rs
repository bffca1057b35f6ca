//! JSON graph documents:
//! `{"vertices": ["a", ...], "edges": [["e1", "a", "b"], ...]}`.

use serde_json::{json, Value};

use super::Multigraph;
use crate::error::GraphError;

fn shape(path: impl Into<String>, message: impl Into<String>) -> GraphError {
    GraphError::Shape {
        path: path.into(),
        message: message.into(),
    }
}

/// Parse a graph document, keeping edges in the listed order.
pub fn parse_graph(text: &str) -> Result<Multigraph, GraphError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| GraphError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = doc
        .as_object()
        .ok_or_else(|| shape("$", "expected an object"))?;
    for key in obj.keys() {
        if key != "vertices" && key != "edges" {
            return Err(shape(format!("$.{key}"), "unexpected field"));
        }
    }
    let vertices = obj
        .get("vertices")
        .ok_or_else(|| shape("$", "missing field \"vertices\""))?
        .as_array()
        .ok_or_else(|| shape("$.vertices", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| shape(format!("$.vertices[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let edges = obj
        .get("edges")
        .ok_or_else(|| shape("$", "missing field \"edges\""))?
        .as_array()
        .ok_or_else(|| shape("$.edges", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let triple = e.as_array().filter(|a| a.len() == 3).ok_or_else(|| {
                shape(
                    format!("$.edges[{i}]"),
                    "expected [edge-id, tail-id, head-id]",
                )
            })?;
            let s = |j: usize| {
                triple[j]
                    .as_str()
                    .map(str::to_string)
                    .ok_or_else(|| shape(format!("$.edges[{i}][{j}]"), "expected a string"))
            };
            Ok((s(0)?, s(1)?, s(2)?))
        })
        .collect::<Result<Vec<_>, GraphError>>()?;
    Multigraph::new(vertices, edges)
}

impl Multigraph {
    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices(),
            "edges": self
                .edges()
                .iter()
                .map(|e| json!([e.id, self.vertices()[e.tail], self.vertices()[e.head]]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_document(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::theta;

    #[test]
    fn parses_smallest_input() {
        let g = parse_graph(r#"{"vertices":["v"],"edges":[["e","v","v"]]}"#).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.edge(0).is_loop());
    }

    #[test]
    fn parses_theta_in_order() {
        let g = parse_graph(
            r#"{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","a","b"],["e3","a","b"]]}"#,
        )
        .unwrap();
        assert_eq!(g, theta());
        assert_eq!(parse_graph(&g.to_document()).unwrap(), g);
    }

    #[test]
    fn dangling_endpoint_is_named() {
        let err = parse_graph(r#"{"vertices":["a","b"],"edges":[["e1","a","c"]]}"#).unwrap_err();
        assert!(err.to_string().contains("\"c\""), "{err}");
        assert!(matches!(err, GraphError::DanglingEndpoint { index: 0, .. }));
    }

    #[test]
    fn malformed_documents_carry_positions() {
        let err = parse_graph("{\"vertices\": [\"a\",\n  }").unwrap_err();
        assert!(matches!(err, GraphError::Syntax { line: 2, .. }), "{err:?}");
        let err = parse_graph(r#"{"vertices":["a"],"edges":[["e","a"]]}"#).unwrap_err();
        assert!(err.to_string().contains("$.edges[0]"), "{err}");
        let err = parse_graph(r#"{"vertices":["a",3],"edges":[]}"#).unwrap_err();
        assert!(err.to_string().contains("$.vertices[1]"), "{err}");
        let err = parse_graph(r#"{"vertices":["a","a"],"edges":[]}"#).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateVertex { index: 1, .. }));
    }
}

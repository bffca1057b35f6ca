#![allow(dead_code)]

use upsilon_core::graph::parse_graph;
use upsilon_core::Multigraph;

pub fn graph(doc: &str) -> Multigraph {
    parse_graph(doc).expect("valid test graph")
}

pub fn loop_graph() -> Multigraph {
    graph(r#"{"vertices":["v"],"edges":[["e","v","v"]]}"#)
}

pub fn banana() -> Multigraph {
    graph(r#"{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","a","b"]]}"#)
}

pub fn theta() -> Multigraph {
    graph(r#"{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","a","b"],["e3","a","b"]]}"#)
}

pub fn k4() -> Multigraph {
    graph(
        r#"{"vertices":["a","b","c","d"],"edges":[["e1","a","b"],["e2","a","c"],["e3","a","d"],["e4","b","c"],["e5","b","d"],["e6","c","d"]]}"#,
    )
}

pub fn doubled_triangle() -> Multigraph {
    graph(
        r#"{"vertices":["a","b","c"],"edges":[["e1","a","b"],["e2","a","b"],["e3","a","c"],["e4","a","c"],["e5","b","c"],["e6","b","c"]]}"#,
    )
}

use thiserror::Error;
use upsilon_linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed graph document at {path}: {message}")]
    Shape { path: String, message: String },
    #[error("duplicate vertex id \"{id}\" at vertices[{index}]")]
    DuplicateVertex { id: String, index: usize },
    #[error("duplicate edge id \"{id}\" at edges[{index}]")]
    DuplicateEdge { id: String, index: usize },
    #[error("edges[{index}] (\"{edge}\") names endpoint \"{vertex}\" which is not a vertex")]
    DanglingEndpoint {
        edge: String,
        vertex: String,
        index: usize,
    },
    #[error("unknown edge id \"{0}\"")]
    UnknownEdge(String),
    #[error("cannot contract loop \"{0}\"")]
    ContractLoop(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {0} edges; subset enumeration supports at most 63")]
    TooManyEdges(usize),
    #[error("cannot build a connected graph with {vertices} vertices and {edges} edges")]
    InvalidGeneratorParams { vertices: usize, edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("edge \"{0}\" is a bridge of the graph")]
    BridgeEdge(String),
    #[error("edge \"{0}\" is a loop")]
    LoopEdge(String),
    #[error("q = {0} is not a prime")]
    NotPrime(u64),
    #[error("eta has {found} entries, the graph has {expected} vertices")]
    EtaLength { expected: usize, found: usize },
    #[error("eta value {value} at vertex {vertex} is not a unit mod {q}")]
    EtaNotUnit { vertex: usize, value: u64, q: u64 },
    #[error("product of eta values is {product} mod {q}, expected 1")]
    EtaProduct { product: u64, q: u64 },
    #[error("no generic eta exists over F_{0} for this graph")]
    NoGenericEta(u64),
    #[error("eta is not generic for this graph over F_{0}")]
    NonGenericEta(u64),
    #[error("enumeration of {size} points exceeds the ceiling {ceiling}")]
    TooLarge { size: u128, ceiling: u128 },
    #[error("point total {total} is not divisible by (q-1)^{exponent}")]
    InexactDivision { total: String, exponent: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

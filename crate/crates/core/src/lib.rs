pub mod delcon;
pub mod error;
pub mod graph;
pub mod monodromy;
pub mod motive;
pub mod pointcount;
pub mod poly;
pub mod upsilon;

pub use error::{CoreError, GraphError};
pub use graph::{Edge, EdgeKind, EdgeMask, Multigraph};

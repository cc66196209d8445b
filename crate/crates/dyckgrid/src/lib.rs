//! Dyck-grids, surface obstructions and the graph machinery around them:
//! generators, a rooted minor oracle, minor-model transformations, exact
//! width parameters and connectivity certificates.

pub mod connectivity;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod minor;
pub mod societies;
pub mod surfaces;
pub mod transforms;
pub mod width;

pub use error::{Error, Result};
pub use graph::{Graph, Partition, VertexSet};

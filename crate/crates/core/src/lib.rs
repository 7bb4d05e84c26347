pub mod bounds;
pub mod ear;
pub mod emit;
pub mod error;
pub mod gadget;
pub mod generate;
pub mod graph;
pub mod io;
pub mod nice;
pub mod oracle;
pub mod pendant;
pub mod pipeline;
pub mod trace;
mod transform;

pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, Vertex};
pub use pipeline::{approximate_2vcss, PipelineConfig, PipelineOutput};

pub mod bitset;
pub mod bounds;
pub mod cert;
pub mod cliques;
pub mod coloring;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod rng;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::{gen_gnp, Graph};
pub use rng::RngHandle;

pub mod binning;
pub mod cli;
pub mod datasets;
pub mod error;
pub mod fence;
pub mod geometry;
pub mod horizon;
pub mod hulls;
pub mod io;
pub mod pipeline;
pub mod render;

pub use error::{HullError, Result};

//! Dataset IO, file formats, parallel drivers and the command line for
//! frequent-subgraph persistent homology. The algorithms live in `fph-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod pipeline;
pub mod tudataset;

pub use error::DataError;
pub use tudataset::{load_tudataset, write_tudataset};

pub mod bps;
pub mod catalog;
pub mod closedform;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

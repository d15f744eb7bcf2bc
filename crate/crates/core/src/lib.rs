//! Representation theory of `S(n)` for port-based teleportation.

pub mod algebra;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod oracle;
pub mod pbt;
pub mod symmetric;
pub mod verify;
pub mod young;

pub use error::{Error, Result};

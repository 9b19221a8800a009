//! Real structures on horospherical homogeneous spaces and their
//! embeddings, computed from root data and lattice involutions.

pub mod cohomology;
pub mod error;
pub mod fans;
pub mod horospherical;
pub mod lattice;
pub mod picard1;
pub mod realform;
pub mod rootsys;

pub use error::{Error, Result};

//! Rotation systems of graphs, the coined quantum walk on their blow-up
//! graphs, closed-form scattering, and comfortability of embeddings.

pub mod catalog;
pub mod comfort;
pub mod cover;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod graph;
pub mod par;
pub mod rotation;
pub mod scattering;
pub mod walk;

pub use error::{Error, Result};

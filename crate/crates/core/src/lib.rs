//! Machine checks for collapse certificates, link-group presentations,
//! hyperbolic triangle-group representations and free-factor multisets.

pub mod assets;
pub mod collapse;
pub mod error;
pub mod group;
pub mod hyperbolic;
pub mod mazur;
pub mod report;
pub mod sampling;
pub mod simplicial;
pub mod splitting;

pub use error::{Error, Result};

//! Exact computation of cohomological-support kernels for artinian
//! hypersurface quotients of a local ring `R = Q/I`, and certified search
//! for quotients whose supports intersect trivially.

pub mod bundle;
pub mod cert;
pub mod construct;
pub mod error;
pub mod gb;
pub mod linalg;
pub mod poly;
pub mod ringfile;
pub mod scalar;
pub mod support;

pub use error::{Error, Result};

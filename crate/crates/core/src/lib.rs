//! Exact computations with hybrid algebras of biserial quivers.

pub mod algebra;
pub mod closure;
pub mod contract;
pub mod data;
pub mod error;
pub mod format;
pub mod linalg;
pub mod modrep;
pub mod path;
pub mod perm;
pub mod quiver;
pub mod relations;
pub mod roundtrip;
pub mod scalar;
pub mod star;
pub mod symmetric;
pub mod validate;

pub use error::{Error, Result};

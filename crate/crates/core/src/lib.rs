//! Root systems of arbitrary (possibly infinite, non-crystallographic)
//! Coxeter groups: validation and realization of simple systems, root
//! enumeration, normalized ("projective") root geometry on the isotropic
//! cone, limit-root point clouds, dominance order and elementary roots,
//! the imaginary cone and its face structure, type classification,
//! universal reflection subsystems, and a JSON/SVG command-line surface.

pub mod classify;
pub mod cli;
pub mod cone;
pub mod doc;
pub mod dominance;
pub mod error;
pub mod fixtures;
pub mod gram;
pub mod lp;
pub mod limits;
pub mod projective;
pub mod quadric;
pub mod render;
pub mod scalar;
pub mod system;
pub mod universal;

pub use error::{Error, Result};

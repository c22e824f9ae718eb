//! Gabriel-Roiter measures of finite-dimensional modules over the
//! `n`-Kronecker quiver, over small prime fields.

pub mod ar;
pub mod config;
pub mod engine;
pub mod error;
pub mod kronecker;
pub mod linalg;
pub mod order;
pub mod verify;

pub use ar::{DimVector, Position};
pub use config::Caps;
pub use engine::{gr_measure, Lattice};
pub use error::{Error, Result};
pub use kronecker::{KroneckerModule, SubmodulePair};
pub use linalg::{Fq, FqMatrix};
pub use order::GrMeasure;

//! Exact analysis of central hyperplane arrangements over the rationals:
//! intersection lattices, formality and k-formality, line closure,
//! factorizations (nice partitions) and real chamber geometry.

pub mod arrangement;
pub mod catalog;
pub mod chambers;
pub mod error;
pub mod factorization;
pub mod formality;
pub mod kformality;
pub mod lattice;
pub mod linalg;
pub mod line_closure;
pub mod lp;
pub mod report;
pub mod verify;

pub use arrangement::{Arrangement, HypSet};
pub use error::{Error, Result};

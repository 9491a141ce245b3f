//! Exact verification of Capparelli-type partition identities and their
//! finite polynomial refinements.
//!
//! * [`qpoly`]: sparse Laurent polynomials in `q` with markers.
//! * [`qseries`]: Pochhammer symbols, products, Gaussian binomials, trinomials.
//! * [`partitions`]: partition families, enumeration and `G_{m,N}(a, b, q)`.
//! * [`motions`]: the bijection between partitions and (minimal configuration, move path).
//! * [`identities`]: the catalog of identities and the verification engine.

pub mod error;
pub mod identities;
pub mod motions;
pub mod partitions;
pub mod qpoly;
pub mod qseries;

pub use error::{Error, Result};
pub use qpoly::{Discrepancy, Marker, Monomial, QPoly};

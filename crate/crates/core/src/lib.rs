pub mod cones;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod parse;
pub mod projgeo;
pub mod ratmath;
pub mod scalar;
pub mod scenario;
pub mod sinv;
pub mod zariski;

pub use error::{Error, Result};
pub use ratmath::{Poly1, Poly2, RatFunc, Rational};
pub use scalar::{Field, GaussianRational, OrderedField};

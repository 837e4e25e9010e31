pub mod arrangement;
pub mod error;
pub mod examples;
pub mod graph;
pub mod linalg;
pub mod patterns;
pub mod poly;
pub mod random;
pub mod report;
pub mod simplicial;

pub use error::{Error, Result};
pub use poly::{IntPolynomial, Monomial, WeightedGF};
pub use report::Report;

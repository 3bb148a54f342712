//! Independence polynomials of graphs and the hypergeometric structure of
//! their inverse power series, in exact rational arithmetic.

pub mod arith;
pub mod chordal;
pub mod cli;
pub mod cycletools;
pub mod error;
pub mod graph;
pub mod hornfit;
pub mod identities;
pub mod linalg;
pub mod nahm;
pub mod poly;
pub mod series;
pub mod tracemonoid;

pub use error::{Error, Result};

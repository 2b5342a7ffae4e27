//! Cohomology rings of torus reductions of the Grassmannian `G(n,2)`.
//!
//! The pipeline: pick a regular value in the hypersimplex (module
//! [`hypersimplex`]), enumerate the admissible permutation pairs for its
//! chamber and turn permuted divided differences of the determinant
//! polynomial into relations ([`weyl`], [`kirwan`]), then compute a Gröbner
//! basis and read off Betti numbers ([`groebner`]). Independent presentations
//! of the same rings live in [`oracles`].

pub mod algebra;
pub mod error;
pub mod groebner;
pub mod hypersimplex;
pub mod kirwan;
pub mod oracles;
pub mod suites;
pub mod weyl;

pub use error::{Error, Result};

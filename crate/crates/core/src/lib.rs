//! Exact Hochschild cohomology of finite-dimensional graded and dg
//! categories, graded centers, and the two spectral sequences of the
//! Hochschild double complex together with their edge maps.

pub mod center;
pub mod corpus;
pub mod dgcat;
pub mod error;
pub mod graded;
pub mod hochschild;
pub mod linalg;
pub mod specseq;

pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar, Subquotient};

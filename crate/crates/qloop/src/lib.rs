//! Exact R-matrices and K-matrices for finite-dimensional representations of
//! untwisted quantum loop algebras.

pub mod braid;
pub mod exec;
pub mod irred;
pub mod kmat;
pub mod linalg;
pub mod repcore;
pub mod report;
pub mod rmat;
pub mod rootdata;
pub mod scalars;

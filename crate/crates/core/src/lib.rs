//! Exact symbolic verification of Poisson and quantum structures on E(2).

// dense index loops read closest to the component formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod exprio;
pub mod homspace;
pub mod hopf;
pub mod liebialg;
pub mod linalg;
pub mod ncalg;
pub mod poisson;
pub mod report;
pub mod scalars;
pub mod suites;

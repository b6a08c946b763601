//! Exact Yang-Baxter cohomology of rack operators and their deformations.

pub mod algebra;
pub mod cochain;
pub mod deformation;
pub mod fixtures;
pub mod homology;
pub mod homotopy;
pub mod operator;
pub mod rack;

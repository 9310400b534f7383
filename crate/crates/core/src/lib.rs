pub mod cli;
pub mod dimension;
mod json;
pub mod knot;
pub mod prover;
pub mod slope;
pub mod su2;
pub mod surgery;

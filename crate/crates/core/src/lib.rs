//! Quasi-periodic functions `f(x) = F(Pᵀx)` and their periodic parents.
pub mod analysis;
pub mod cli;
pub mod error;
pub mod independence;
pub mod lattice;
pub mod meyer;
pub mod number_field;
pub mod numeric;
pub mod qp;
pub mod selftest;
pub mod torus;

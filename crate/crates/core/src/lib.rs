//! Computational toolkit around prime Fibonacci numbers: exact and modular
//! Fibonacci arithmetic, Pisano cycles, Baillie-PSW primality, quadratic and
//! quartic residue symbols, representation of primes by the forms
//! x^2 + d y^2 (Cornacchia plus a brute-force cross-check), imaginary
//! quadratic class numbers via reduced forms, planar geometry of two-square
//! decompositions along Pisano cycles, and box/information dimension
//! estimates for the real interpolation of the Fibonacci sequence.

pub mod classgroup;
pub mod error;
pub mod fibonacci;
pub mod fractal;
pub mod geometry;
pub mod primality;
pub mod represent;
pub mod symbols;

pub use error::{Error, Result};

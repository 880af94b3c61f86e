//! Scattered `q`-linearized polynomials over finite fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`ff`]: finite-field towers with deterministic moduli and table-driven small fields;
//! * [`linalg`]: dense matrices over a small field;
//! * [`linpoly`]: `q`-linearized polynomials and the linear maps they induce;
//! * [`scatter`]: scatteredness tests, normalization, index shifting and scans;
//! * [`galois`]: Frobenius orbit types, the fixed-point rank condition,
//!   Newton-polygon ramification and the Kummer family `ℓ = x`;
//! * [`groups`]: order formulas, Zsigmondy primes, Schreier–Sims, Singer
//!   cycles, transitive-group classification and the embedding search;
//! * [`mrd`]: the two-dimensional rank-metric code of a scattered polynomial;
//! * [`cli`]: the report-producing front end used by the `scatter` binary.

pub mod cli;
pub mod error;
pub mod ff;
pub mod galois;
pub mod groups;
pub mod linalg;
pub mod linpoly;
pub mod mrd;
pub mod scatter;

pub use error::{Error, Result};

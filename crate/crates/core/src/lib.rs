//! Construction and exact analysis of resilient Boolean functions with high
//! nonlinearity and algebraic immunity, together with linear-size gate-level
//! implementations of every construction.
//!
//! The crate is organised around a few carriers:
//!
//! * [`TruthTable`] and [`AnfPoly`]: bit-packed value and coefficient vectors.
//! * [`spectra::WalshSpectrum`]: the integer Walsh spectrum and every metric
//!   derived from it (nonlinearity, linear bias, resiliency, bentness).
//! * [`immunity`]: algebraic and fast algebraic immunity by GF(2) elimination.
//! * [`constructions::Construction`]: a symbolic description of a function
//!   that can be expanded to a truth table, evaluated pointwise, or compiled.
//! * [`circuits::Netlist`]: 2-input gate circuits with simulation and
//!   equivalence checking.
//!
//! Variables are numbered from 1. Variable `X_j` is bit `j - 1` of a truth
//! table index.

pub mod anf;
mod bits;
pub mod circuits;
pub mod constructions;
mod error;
pub mod immunity;
pub mod io;
mod perm;
pub mod spectra;
mod truth_table;

pub use anf::AnfPoly;
pub use error::{Error, Result};
pub use perm::BitPermutation;
pub use truth_table::{TruthTable, N_MAX_TT};

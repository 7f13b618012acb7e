//! Exact-arithmetic engine for color Heisenberg-Lie (super)algebras graded by
//! `Z2^p x Z3^q`, with the supporting oscillator, triangle and braid machinery.

#![allow(clippy::needless_range_loop)]

pub mod braid;
pub mod colorlie;
pub mod cyclotomic;
pub mod error;
pub mod exec;
pub mod fock;
pub mod gmat;
pub mod grading;
pub mod op;
pub mod pascal;
pub mod report;

pub use cyclotomic::{Cyclotomic, RootLevel};
pub use error::{Error, Result};
pub use exec::Exec;
pub use gmat::{GradedMatrix, Mat};
pub use grading::{FactorTable, GroupElement, Shape};

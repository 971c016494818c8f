//! One-bit transmit-signal construction for the multiuser MISO downlink
//! under 4^n-QAM.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`constellation`]: the real-valued expansion maps, the quaternary
//!   indexing of 4^n-QAM points, base regions and minimum-distance
//!   detection.
//! * [`feasibility`]: the cascaded margin system `alpha = Λ x̃ - τ Λ_b`
//!   that certifies every user's noiseless receive point lies inside its
//!   decision region.
//! * [`lp`]: a dense bounded-variable primal simplex solver and the box
//!   relaxation of the max-min-margin problem.
//! * [`precoders`]: LP relaxation followed by a greedy 1-bit pass
//!   (F-greedy), the QLP / QZF / ZF baselines and an exhaustive oracle for
//!   tiny instances.
//!
//! Monte Carlo simulation, file formats and the command-line front end live
//! in the companion `onebit` crate.
#![cfg_attr(not(test), no_std)]
// `!(a >= b)` is used on purpose so NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod constellation;
mod error;
pub mod feasibility;
pub mod linalg;
pub mod lp;
pub mod precoders;

pub use num_complex::Complex64;

pub use crate::constellation::{QamSpec, SymbolIndex};
pub use crate::error::Error;
pub use crate::feasibility::{build_system, FeasibilitySystem, MarginVector, MessageVector};
pub use crate::linalg::{CMatrix, Matrix, RMatrix};
pub use crate::lp::{LinearProgram, LpSolution, LpStatus, SimplexOptions};
pub use crate::precoders::{Method, PrecodeResult};

pub type Result<T, E = Error> = core::result::Result<T, E>;

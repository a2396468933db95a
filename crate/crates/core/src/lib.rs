//! Exact solver for time-dependent quantum tunneling transients behind a
//! suddenly removed reflecting shutter, for the rectangular barrier.
//!
//! The solution is assembled from the stationary scattering problem plus a
//! resonance (S-matrix pole / Gamow state) expansion, with every time
//! dependence carried by Moshinsky M-functions.  The crate also carries the
//! comparison tunneling-time clocks, the transient-peak analysis used for the
//! time-domain resonance, and an independent Crank-Nicolson grid integrator
//! for validation.
//!
//! Internal unit system: energy in eV, length in nm, time in fs, mass as a
//! ratio to the electron mass, wavenumber in nm^-1.  No raw SI quantities
//! cross module boundaries.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod barrier;
pub mod cerf;
pub mod clocks;
pub mod error;
pub mod gamow;
pub mod oracle;
pub mod poles;
pub mod shutter;
pub mod transients;
pub mod units;

#[cfg(test)]
pub(crate) mod testutil;

pub use barrier::BarrierSpec;
pub use error::{Error, Result};
pub use gamow::GamowState;
pub use poles::Pole;
pub use shutter::ShutterSolution;
pub use transients::{TimeSeries, TransientSummary, WidthRule};

pub type Complex64 = num_complex::Complex<f64>;

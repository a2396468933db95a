//! Internal unit system and exact physical constants.
//!
//! Energy in eV, length in nm, time in fs, wavenumber in nm^-1, mass always
//! carried as a ratio to the electron mass.  The three constants below are
//! the single source of truth; no other module redefines them.

use crate::error::{Error, Result};

/// Reduced Planck constant, eV fs.
pub const HBAR: f64 = 0.6582119569;

/// hbar^2 / (2 m_e), eV nm^2.
pub const HBAR2_OVER_2ME: f64 = 0.0380998212;

/// Speed of light, nm/fs.
pub const SPEED_OF_LIGHT: f64 = 299.792458;

/// Particle mass in eV fs^2 / nm^2 for a given electron-mass ratio.
pub fn mass(mass_ratio: f64) -> f64 {
    mass_ratio * HBAR * HBAR / (2.0 * HBAR2_OVER_2ME)
}

/// k = sqrt(E m* / (hbar^2/2m_e)) for E = hbar^2 k^2 / 2m.
pub fn wavenumber_from_energy(energy: f64, mass_ratio: f64) -> Result<f64> {
    if !(energy >= 0.0) {
        return Err(Error::Domain {
            what: "energy must be >= 0",
            value: energy,
        });
    }
    if !(mass_ratio > 0.0) {
        return Err(Error::Domain {
            what: "mass ratio must be > 0",
            value: mass_ratio,
        });
    }
    Ok((energy * mass_ratio / HBAR2_OVER_2ME).sqrt())
}

/// Inverse of [`wavenumber_from_energy`].
pub fn energy_from_wavenumber(k: f64, mass_ratio: f64) -> Result<f64> {
    if !(k >= 0.0) {
        return Err(Error::Domain {
            what: "wavenumber must be >= 0",
            value: k,
        });
    }
    if !(mass_ratio > 0.0) {
        return Err(Error::Domain {
            what: "mass ratio must be > 0",
            value: mass_ratio,
        });
    }
    Ok(k * k * HBAR2_OVER_2ME / mass_ratio)
}

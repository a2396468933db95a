//! Stationary scattering off the rectangular barrier: channel momentum,
//! the J determinant whose zeros are the S-matrix poles, transmission and
//! reflection amplitudes, and the internal stationary wave.

use crate::error::{Error, Result};
use crate::units::{mass, wavenumber_from_energy, HBAR, SPEED_OF_LIGHT};
use crate::Complex64;

/// Physical problem definition with derived wavenumbers.
///
/// alpha = k0 L is always recomputed from its factors, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierSpec {
    pub v0: f64,
    pub length: f64,
    pub mass_ratio: f64,
    pub energy: f64,
    /// Incident wavenumber, sqrt(2mE)/hbar.
    pub k: f64,
    /// Barrier wavenumber, sqrt(2mV0)/hbar.
    pub k0: f64,
}

impl BarrierSpec {
    pub fn new(v0: f64, length: f64, mass_ratio: f64, energy: f64) -> Result<Self> {
        for (what, value) in [
            ("barrier height V0 must be > 0", v0),
            ("barrier width L must be > 0", length),
            ("mass ratio must be > 0", mass_ratio),
            ("incident energy E must be > 0", energy),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::Domain { what, value });
            }
        }
        Ok(BarrierSpec {
            v0,
            length,
            mass_ratio,
            energy,
            k: wavenumber_from_energy(energy, mass_ratio)?,
            k0: wavenumber_from_energy(v0, mass_ratio)?,
        })
    }

    /// The paper's example parameters (semiconductor quantum structure).
    pub fn paper() -> Self {
        BarrierSpec::new(0.711, 10.0, 0.067, 0.1422).expect("paper parameters are valid")
    }

    /// Opacity alpha = k0 L.
    pub fn alpha(&self) -> f64 {
        self.k0 * self.length
    }

    /// Particle mass in eV fs^2/nm^2.
    pub fn mass(&self) -> f64 {
        mass(self.mass_ratio)
    }

    /// Free passage time m L / (hbar k).
    pub fn tau_free(&self) -> f64 {
        self.mass() * self.length / (HBAR * self.k)
    }

    /// Causality cutoff tau_0 = L / c.
    pub fn tau_light(&self) -> f64 {
        self.length / SPEED_OF_LIGHT
    }
}

/// q = (k^2 - k0^2)^{1/2}, branch chosen so q -> k as |k| -> infinity in the
/// fourth quadrant; for real 0 < k < k0 this is +i kappa.
pub fn channel_momentum(k: Complex64, spec: &BarrierSpec) -> Complex64 {
    (k * k - spec.k0 * spec.k0).sqrt()
}

/// J(k) = (q+k)^2 e^{-iqL} - (q-k)^2 e^{iqL}.  Zeros are the S-matrix poles.
pub fn j_det(k: Complex64, spec: &BarrierSpec) -> Result<Complex64> {
    let q = channel_momentum(k, spec);
    let iql = Complex64::new(0.0, 1.0) * q * spec.length;
    if iql.re.abs() > 700.0 {
        return Err(Error::Overflow {
            re: k.re,
            im: k.im,
        });
    }
    Ok((q + k) * (q + k) * (-iql).exp() - (q - k) * (q - k) * iql.exp())
}

/// Scaled evaluation of J for |Im(qL)| beyond exp range: returns
/// (log-magnitude, phase).
pub fn j_det_log(k: Complex64, spec: &BarrierSpec) -> (f64, f64) {
    let q = channel_momentum(k, spec);
    let iql = Complex64::new(0.0, 1.0) * q * spec.length;
    let g = iql.re.abs();
    // One of the two exponents has real part -g <= 0, the other -2g-ish.
    let bracket = if iql.re <= 0.0 {
        (q + k) * (q + k) * (-iql - g).exp() - (q - k) * (q - k) * (iql - g).exp()
    } else {
        (q + k) * (q + k) * (-iql - g).exp() - (q - k) * (q - k) * (iql - g).exp()
    };
    (g + bracket.norm().ln(), bracket.arg())
}

/// sin(u)/u, stable at the origin.
fn csinc(u: Complex64) -> Complex64 {
    if u.norm() < 1e-4 {
        let u2 = u * u;
        Complex64::new(1.0, 0.0) - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}

/// The entire factor H(k) in J = q H: H = 4k cos(qL) - 2i (q^2+k^2) L sinc(qL).
///
/// H is even in q, hence analytic in k with no branch point at k = +-k0, and
/// carries exactly the pole zero set.  All amplitude formulas below divide by
/// H rather than J so the branch point stays a removable hazard.
pub fn j_entire(k: Complex64, spec: &BarrierSpec) -> Complex64 {
    let q = channel_momentum(k, spec);
    let l = spec.length;
    let u = q * l;
    4.0 * k * u.cos() - Complex64::new(0.0, 2.0) * (q * q + k * k) * l * csinc(u)
}

/// dH/dk, analytic (see `j_entire`).
pub fn j_entire_deriv(k: Complex64, spec: &BarrierSpec) -> Complex64 {
    let q = channel_momentum(k, spec);
    let l = spec.length;
    let u = q * l;
    let s = csinc(u);
    let cos_u = u.cos();
    // d cos(qL)/dk = -k L^2 sinc(qL); d sinc(qL)/dk = k L^2 (cos - sinc)/u^2.
    let dsinc = if u.norm() < 1e-3 {
        let u2 = u * u;
        -Complex64::new(1.0 / 3.0, 0.0) + u2 / 30.0 - u2 * u2 / 840.0
    } else {
        (cos_u - s) / (u * u)
    };
    4.0 * cos_u - 4.0 * k * k * l * l * s
        - Complex64::new(0.0, 8.0) * k * l * s
        - Complex64::new(0.0, 2.0) * (q * q + k * k) * l * k * l * l * dsinc
}

/// Transmission and reflection amplitudes for a unit-amplitude incident wave
/// e^{ikx}: T(k) = 4 k q e^{-ikL} / J(k), R from matching at x = 0.
pub fn scattering_amplitudes(spec: &BarrierSpec, k: f64) -> Result<(Complex64, Complex64)> {
    if !(k != 0.0) || !k.is_finite() {
        return Err(Error::Domain {
            what: "scattering wavenumber must be nonzero and finite",
            value: k,
        });
    }
    let kc = Complex64::new(k, 0.0);
    let q = channel_momentum(kc, spec);
    let l = spec.length;
    let h = j_entire(kc, spec);
    // T = 4 k q e^{-ikL} / (q H) = 4 k e^{-ikL} / H: analytic through q = 0.
    let t = 4.0 * kc * Complex64::new(0.0, -k * l).exp() / h;
    // R = (k^2 - q^2)(e^{-iqL} - e^{iqL}) / J = -2i (k^2-q^2) L sinc(qL) / H.
    let r = Complex64::new(0.0, -2.0) * (kc * kc - q * q) * l * csinc(q * l) / h;
    Ok((t, r))
}

/// Internal stationary wave phi(x, k) = A e^{iqx} + B e^{-iqx} with A, B
/// fixed by continuity of value and derivative at x = L against T e^{ikx};
/// at x = 0 it equals 1 + R(k).
pub fn stationary_wave(x: f64, k: f64, spec: &BarrierSpec) -> Result<Complex64> {
    if !(0.0 <= x && x <= spec.length) {
        return Err(Error::Domain {
            what: "stationary wave requires 0 <= x <= L",
            value: x,
        });
    }
    let kc = Complex64::new(k, 0.0);
    let q = channel_momentum(kc, spec);
    let (t, _) = scattering_amplitudes(spec, k)?;
    // A e^{iqx} + B e^{-iqx} = T e^{ikL} [cos(q(x-L)) + ik (x-L) sinc(q(x-L))],
    // exact at the branch point and giving phi(L) = T e^{ikL} identically.
    let s = x - spec.length;
    let u = q * s;
    Ok(t * Complex64::new(0.0, k * spec.length).exp() * (u.cos() + Complex64::new(0.0, k * s) * csinc(u)))
}

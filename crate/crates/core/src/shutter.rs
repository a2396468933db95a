//! Moshinsky M-functions and the exact time-dependent shutter solutions:
//! internal, transmitted, and free.
//!
//! All time dependence enters through M(x, q, tau); the sudden removal of a
//! perfectly reflecting shutter at tau = 0 gives the initial condition
//! psi(x, 0) = e^{ikx} - e^{-ikx} for x < 0 and 0 for x > 0, so every
//! solution here vanishes identically at tau = 0 for x > 0.

use crate::barrier::{scattering_amplitudes, stationary_wave, BarrierSpec};
use crate::cerf::erfc_scaled;
use crate::error::{Error, Result};
use crate::gamow::{build_state, residue_internal, residue_transmitted, GamowState};
use crate::poles::enumerate_poles;
use crate::units::{mass, HBAR};
use crate::Complex64;
use alloc::vec::Vec;
use core::f64::consts::TAU;

/// Arguments of the M-function.  tau > 0 strictly: tau = 0 belongs to the
/// initial-condition branch of the solutions, not to M.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MArgs {
    pub x: f64,
    pub q: Complex64,
    pub tau: f64,
    pub mass_ratio: f64,
}

/// M(x, q, tau) = 1/2 e^{i m x^2 / (2 hbar tau)} e^{y^2} erfc(y) with
/// y = e^{-i pi/4} sqrt(m/(2 hbar tau)) (x - hbar q tau / m).
pub fn m_function(args: &MArgs) -> Result<Complex64> {
    if !(args.tau > 0.0) {
        return Err(Error::Domain {
            what: "m_function requires tau > 0",
            value: args.tau,
        });
    }
    let m = mass(args.mass_ratio);
    let c = (m / (2.0 * HBAR * args.tau)).sqrt();
    let drift = args.x - HBAR * args.q * args.tau / m;
    let half_sqrt2 = core::f64::consts::FRAC_1_SQRT_2;
    let y = Complex64::new(half_sqrt2, -half_sqrt2) * c * drift;
    // The quadratic phase has unit modulus; reduce the argument mod 2 pi so
    // small tau keeps full phase accuracy.
    let raw = m * args.x * args.x / (2.0 * HBAR * args.tau);
    let theta = raw - TAU * (raw / TAU).floor();
    let phase = Complex64::new(theta.cos(), theta.sin());
    Ok(0.5 * phase * erfc_scaled(y)?)
}

/// Assembled resonance expansion for one barrier: certified Gamow states of
/// the fourth-quadrant family (mirrors generated by conjugation) plus the
/// fixed-k transmission data, truncated at `n_per_family` poles per family.
#[derive(Debug, Clone)]
pub struct ShutterSolution {
    pub spec: BarrierSpec,
    pub states: Vec<GamowState>,
    pub n_per_family: usize,
    t_k: Complex64,
    t_minus_k: Complex64,
    /// Transmitted residue coefficients T_n for the stored family and the
    /// mirror family, at the spec's incident k.
    t_n: Vec<Complex64>,
    t_n_mirror: Vec<Complex64>,
}

impl ShutterSolution {
    pub fn assemble(spec: BarrierSpec, n_per_family: usize) -> Result<Self> {
        if n_per_family == 0 {
            return Err(Error::Domain {
                what: "truncation must be >= 1 pole per family",
                value: 0.0,
            });
        }
        let poles = enumerate_poles(&spec, n_per_family)?;
        let mut states = Vec::with_capacity(n_per_family);
        for p in &poles {
            let st = build_state(p, &spec)?;
            if st.norm_residual > 1e-10 {
                return Err(Error::Construction {
                    what: "Gamow normalization residual exceeds tolerance",
                });
            }
            states.push(st);
        }
        let (t_k, _) = scattering_amplitudes(&spec, spec.k)?;
        let (t_minus_k, _) = scattering_amplitudes(&spec, -spec.k)?;
        let mut t_n = Vec::with_capacity(n_per_family);
        let mut t_n_mirror = Vec::with_capacity(n_per_family);
        for st in &states {
            t_n.push(residue_transmitted(st, &spec, spec.k)?);
            t_n_mirror.push(residue_transmitted(&st.mirror(), &spec, spec.k)?);
        }
        Ok(ShutterSolution {
            spec,
            states,
            n_per_family,
            t_k,
            t_minus_k,
            t_n,
            t_n_mirror,
        })
    }

    pub fn transmission(&self) -> Complex64 {
        self.t_k
    }

    /// |T(k)|^2, the normalization of every density in the transients module.
    pub fn transmission_probability(&self) -> f64 {
        self.t_k.norm_sqr()
    }

    fn m(&self, x: f64, q: Complex64, tau: f64) -> Result<Complex64> {
        m_function(&MArgs {
            x,
            q,
            tau,
            mass_ratio: self.spec.mass_ratio,
        })
    }

    /// Eq. (3b): internal solution on 0 <= x <= L.
    ///
    /// phi(x,k) M(0,k,tau) - phi(x,-k) M(0,-k,tau) - sum_n phi_n(x) M(0,k_n,tau),
    /// the sum running over both mirror families up to the truncation.
    pub fn psi_internal(&self, x: f64, tau: f64) -> Result<Complex64> {
        if !(0.0 <= x && x <= self.spec.length) {
            return Err(Error::Domain {
                what: "psi_internal requires 0 <= x <= L",
                value: x,
            });
        }
        if tau == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let k = self.spec.k;
        let mut acc = stationary_wave(x, k, &self.spec)? * self.m(0.0, Complex64::new(k, 0.0), tau)?
            - stationary_wave(x, -k, &self.spec)? * self.m(0.0, Complex64::new(-k, 0.0), tau)?;
        for st in &self.states {
            // Fourth-quadrant term and its conjugated third-quadrant mirror.
            let kn = st.pole.k;
            acc -= residue_internal(st, &self.spec, x, k)? * self.m(0.0, kn, tau)?;
            acc -= residue_internal(&st.mirror(), &self.spec, x, k)? * self.m(0.0, -kn.conj(), tau)?;
        }
        Ok(acc)
    }

    /// Eq. (3c): transmitted solution on x >= L.
    ///
    /// T(k) M(x,k,tau) - T(-k) M(x,-k,tau) - sum_n T_n M(x,k_n,tau).
    pub fn psi_transmitted(&self, x: f64, tau: f64) -> Result<Complex64> {
        if !(x >= self.spec.length) {
            return Err(Error::Domain {
                what: "psi_transmitted requires x >= L",
                value: x,
            });
        }
        if tau == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let k = self.spec.k;
        let mut acc = self.t_k * self.m(x, Complex64::new(k, 0.0), tau)?
            - self.t_minus_k * self.m(x, Complex64::new(-k, 0.0), tau)?;
        for (i, st) in self.states.iter().enumerate() {
            let kn = st.pole.k;
            acc -= self.t_n[i] * self.m(x, kn, tau)?;
            acc -= self.t_n_mirror[i] * self.m(x, -kn.conj(), tau)?;
        }
        Ok(acc)
    }

    /// Normalized probability density |psi|^2 / |T(k)|^2, picking Eq. (3b)
    /// or Eq. (3c) by the evaluation point.
    pub fn density(&self, x: f64, tau: f64) -> Result<f64> {
        let psi = if x < self.spec.length {
            self.psi_internal(x, tau)
        } else {
            self.psi_transmitted(x, tau)
        }
        .map_err(|e| e.at(x, tau))?;
        Ok(psi.norm_sqr() / self.transmission_probability())
    }
}

/// Free shutter solution psi_s^0 = M(x,k,tau) - M(x,-k,tau) for the
/// reflecting initial condition without a barrier.
pub fn psi_free(k: f64, mass_ratio: f64, x: f64, tau: f64) -> Result<Complex64> {
    if tau == 0.0 {
        // The initial condition itself.
        return Ok(if x > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            let ikx = Complex64::new(0.0, k * x);
            ikx.exp() - (-ikx).exp()
        });
    }
    let plus = m_function(&MArgs {
        x,
        q: Complex64::new(k, 0.0),
        tau,
        mass_ratio,
    })?;
    let minus = m_function(&MArgs {
        x,
        q: Complex64::new(-k, 0.0),
        tau,
        mass_ratio,
    })?;
    Ok(plus - minus)
}

//! Comparison tunneling times: free passage, Larmor, Buettiker-Landauer,
//! Buettiker traversal, and phase delay.
//!
//! Normative definitions: tau_f = mL/(hbar k); tau_BL = mL/(hbar kappa);
//! tau_y = -hbar d(arg T)/dV0 and tau_z = -hbar d(ln|T|)/dV0 (Larmor
//! components, tau_LM = tau_y); tau_B = sqrt(tau_y^2 + tau_z^2);
//! tau_D = hbar d(arg T + kL)/dE.  The V0- and E-derivatives are central
//! differences with one Richardson halving, cross-checked in tests against
//! the closed-form rectangular-barrier expressions.

use crate::barrier::{scattering_amplitudes, BarrierSpec};
use crate::error::{Error, Result};
use crate::units::HBAR;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockTable {
    pub tau_f: f64,
    /// Larmor (Baz'-Rybachenko) time, = tau_y.
    pub tau_lm: f64,
    /// Semiclassical Buettiker-Landauer time; None above the barrier.
    pub tau_bl: Option<f64>,
    /// Buettiker traversal time sqrt(tau_y^2 + tau_z^2), stored exactly as
    /// that root of the stored components.
    pub tau_b: f64,
    pub tau_d: f64,
    pub tau_y: f64,
    pub tau_z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clock {
    Larmor,
    BuettikerLandauer,
    Buettiker,
    PhaseDelay,
}

impl Clock {
    pub fn name(&self) -> &'static str {
        match self {
            Clock::Larmor => "tau_LM",
            Clock::BuettikerLandauer => "tau_BL",
            Clock::Buettiker => "tau_B",
            Clock::PhaseDelay => "tau_D",
        }
    }
}

/// Remove 2 pi jumps relative to a reference phase.
fn unwrap_phase(phi: f64, reference: f64) -> f64 {
    let mut p = phi;
    while p - reference > PI {
        p -= 2.0 * PI;
    }
    while p - reference < -PI {
        p += 2.0 * PI;
    }
    p
}

/// Central difference with one Richardson halving, relative step 1e-5.
fn richardson<F: Fn(f64) -> Result<f64>>(f: F, x: f64, rel_step: f64) -> Result<f64> {
    let h = rel_step * x.abs();
    let d1 = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let d2 = (f(x + 0.5 * h)? - f(x - 0.5 * h)?) / h;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// All five times for one barrier; requires E > 0, and returns
/// tau_bl = None when E >= V0 (the semiclassical time is undefined there
/// while every other entry is still returned).
pub fn clock_table(spec: &BarrierSpec) -> Result<ClockTable> {
    let k = spec.k;
    let m = spec.mass();
    let l = spec.length;
    let tau_f = m * l / (HBAR * k);

    let tau_bl = if spec.energy < spec.v0 {
        let kappa = (spec.k0 * spec.k0 - k * k).sqrt();
        Some(m * l / (HBAR * kappa))
    } else {
        None
    };

    // Larmor components: derivatives of T(k; V0) with respect to V0 at
    // fixed k, phases unwrapped along the stencil.
    let t_center = scattering_amplitudes(spec, k)?.0;
    let arg_center = t_center.arg();
    let arg_at = |v0: f64| -> Result<f64> {
        let sp = BarrierSpec::new(v0, l, spec.mass_ratio, spec.energy)?;
        let t = scattering_amplitudes(&sp, k)?.0;
        Ok(unwrap_phase(t.arg(), arg_center))
    };
    let ln_at = |v0: f64| -> Result<f64> {
        let sp = BarrierSpec::new(v0, l, spec.mass_ratio, spec.energy)?;
        Ok(scattering_amplitudes(&sp, k)?.0.norm().ln())
    };
    let tau_y = -HBAR * richardson(arg_at, spec.v0, 1e-5)?;
    let tau_z = -HBAR * richardson(ln_at, spec.v0, 1e-5)?;
    let tau_b = tau_y.hypot(tau_z);

    // Phase-delay time: hbar d(arg T + kL)/dE with k = k(E).
    let total_phase_center = arg_center + k * l;
    let phase_at = |e: f64| -> Result<f64> {
        let sp = BarrierSpec::new(spec.v0, l, spec.mass_ratio, e)?;
        let t = scattering_amplitudes(&sp, sp.k)?.0;
        let phi = t.arg() + sp.k * l;
        Ok(unwrap_phase(phi, total_phase_center))
    };
    let tau_d = HBAR * richardson(phase_at, spec.energy, 1e-5)?;

    Ok(ClockTable {
        tau_f,
        tau_lm: tau_y,
        tau_bl,
        tau_b,
        tau_d,
        tau_y,
        tau_z,
    })
}

/// The four literature times sorted by |tau - tau_p|; ties break toward
/// tau_B, then lexical name order.
pub fn rank_against(table: &ClockTable, tau_p: f64) -> Result<Vec<(Clock, f64)>> {
    if !(tau_p > 0.0) {
        return Err(Error::Domain {
            what: "tau_p must be > 0",
            value: tau_p,
        });
    }
    let mut entries: Vec<(Clock, f64)> = Vec::new();
    entries.push((Clock::Larmor, table.tau_lm));
    if let Some(bl) = table.tau_bl {
        entries.push((Clock::BuettikerLandauer, bl));
    }
    entries.push((Clock::Buettiker, table.tau_b));
    entries.push((Clock::PhaseDelay, table.tau_d));
    entries.sort_by(|a, b| {
        let da = (a.1 - tau_p).abs();
        let db = (b.1 - tau_p).abs();
        da.partial_cmp(&db)
            .expect("finite clock values")
            .then_with(|| {
                let pri = |c: &Clock| match c {
                    Clock::Buettiker => 0u8,
                    Clock::BuettikerLandauer => 1,
                    Clock::PhaseDelay => 2,
                    Clock::Larmor => 3,
                };
                pri(&a.0).cmp(&pri(&b.0))
            })
    });
    Ok(entries)
}

//! Normalized resonant (Gamow) states u_n and the residue coefficients
//! phi_n(x) and T_n entering the internal and transmitted pole expansions.
//!
//! u_n(x) = C_n [e^{i q_n x} + b_n e^{-i q_n x}] with b_n = (q_n+k_n)/(q_n-k_n),
//! normalized by  int_0^L u_n^2 dx + i (u_n^2(0) + u_n^2(L)) / (2 k_n) = 1.
//! Only C_n^2 is stored: every consumer needs products of two u factors, and
//! the square removes the sign ambiguity of the root.

use crate::barrier::BarrierSpec;
use crate::error::{Error, Result};
use crate::poles::Pole;
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GamowState {
    pub pole: Pole,
    pub b: Complex64,
    /// C_n^2 from the normalization condition.
    pub c_sq: Complex64,
    /// Roundoff residual of the normalization identity rebuilt from the
    /// stored fields.
    pub norm_residual: f64,
}

fn i_c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Closed-form int_0^L g dx for g = (e^{iqx} + b e^{-iqx})^2.
fn interior_integral(q: Complex64, b: Complex64, l: f64) -> Complex64 {
    let two_iq = i_c(0.0, 2.0) * q;
    ((two_iq * l).exp() - 1.0) / two_iq + 2.0 * b * l + b * b * (1.0 - (-two_iq * l).exp()) / two_iq
}

impl GamowState {
    /// Unnormalized mode shape e^{i q x} + b e^{-i q x}.
    fn shape(&self, x: f64) -> Complex64 {
        let iqx = i_c(0.0, 1.0) * self.pole.q * x;
        iqx.exp() + self.b * (-iqx).exp()
    }

    /// u_n(0) u_n(x), the only combination downstream code needs.
    pub fn u_product(&self, x: f64) -> Complex64 {
        self.c_sq * (1.0 + self.b) * self.shape(x)
    }

    /// Third-quadrant mirror partner: k -> -conj k, u -> conj u.
    pub fn mirror(&self) -> GamowState {
        GamowState {
            pole: Pole {
                index: self.pole.index,
                k: -self.pole.k.conj(),
                q: -self.pole.q.conj(),
                residual: self.pole.residual,
            },
            b: self.b.conj(),
            c_sq: self.c_sq.conj(),
            norm_residual: self.norm_residual,
        }
    }
}

/// Build the normalized state for a certified pole.
pub fn build_state(pole: &Pole, spec: &BarrierSpec) -> Result<GamowState> {
    if pole.residual > 1e-10 {
        return Err(Error::Construction {
            what: "pole residual exceeds certification tolerance",
        });
    }
    let (k, q) = (pole.k, pole.q);
    let denom = q - k;
    // b_n = (q+k)/(q-k) is huge-but-finite for thin barriers (q-k =
    // -k0^2/(q+k)); only the exact degeneracy is malformed input.
    let b = (q + k) / denom;
    if denom.norm() == 0.0 || !b.re.is_finite() || !b.im.is_finite() {
        return Err(Error::Construction {
            what: "degenerate pole with q_n = k_n",
        });
    }
    let l = spec.length;
    let interior = interior_integral(q, b, l);
    let g0 = (1.0 + b) * (1.0 + b);
    let shape_l = {
        let iql = i_c(0.0, 1.0) * q * l;
        iql.exp() + b * (-iql).exp()
    };
    let gl = shape_l * shape_l;
    let c_sq = 1.0 / (interior + i_c(0.0, 1.0) * (g0 + gl) / (2.0 * k));
    let norm_residual = (c_sq * (interior + i_c(0.0, 1.0) * (g0 + gl) / (2.0 * k)) - 1.0).norm();
    Ok(GamowState {
        pole: *pole,
        b,
        c_sq,
        norm_residual,
    })
}

/// phi_n(x) = 2 i k u_n(0) u_n(x) / (k^2 - k_n^2), 0 <= x <= L.
pub fn residue_internal(state: &GamowState, spec: &BarrierSpec, x: f64, k: f64) -> Result<Complex64> {
    if !(0.0 <= x && x <= spec.length) {
        return Err(Error::Domain {
            what: "residue_internal requires 0 <= x <= L",
            value: x,
        });
    }
    let kn = state.pole.k;
    Ok(i_c(0.0, 2.0 * k) * state.u_product(x) / (k * k - kn * kn))
}

/// T_n = 2 i k u_n(0) u_n(L) e^{-i k_n L} / (k^2 - k_n^2).
pub fn residue_transmitted(state: &GamowState, spec: &BarrierSpec, k: f64) -> Result<Complex64> {
    let kn = state.pole.k;
    let phi_l = residue_internal(state, spec, spec.length, k)?;
    Ok(phi_l * (i_c(0.0, -1.0) * kn * spec.length).exp())
}

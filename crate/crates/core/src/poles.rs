//! Enumeration of the S-matrix poles k_n (zeros of J in the fourth quadrant)
//! with Newton iteration from asymptotic seeds, scaled residual
//! certification, and an argument-principle count certificate.

use crate::barrier::{channel_momentum, j_entire, j_entire_deriv, BarrierSpec};
use crate::error::{Error, Result};
use crate::Complex64;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// One fourth-quadrant pole: Re k_n > 0, Im k_n < 0.  Third-quadrant mirrors
/// -conj(k_n) are generated downstream by conjugation, never re-solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    /// 1-based index, strictly increasing with Re k_n.
    pub index: usize,
    pub k: Complex64,
    pub q: Complex64,
    /// |J(k_n)| / |k_n J'(k_n)|.
    pub residual: f64,
}

const MAX_NEWTON: usize = 100;
const RESIDUAL_TOL: f64 = 1e-10;

/// Newton seed: Re(q_n L) = n pi, Im(q_n L) = -ln(4 n^2 pi^2 / alpha^2),
/// clamped to magnitude >= ln 2, mapped through k = +(q^2 + k0^2)^{1/2}.
fn seed(n: usize, spec: &BarrierSpec) -> Complex64 {
    let alpha = spec.alpha();
    let nf = n as f64;
    let beta = (4.0 * nf * nf * PI * PI / (alpha * alpha)).ln().max(2.0f64.ln());
    let q = Complex64::new(nf * PI, -beta) / spec.length;
    let k = (q * q + spec.k0 * spec.k0).sqrt();
    if k.re < 0.0 {
        -k
    } else {
        k
    }
}

/// Factored pole condition F(k) = 1 - r^2 e^{2iqL}, r = (q-k)/(q+k)
/// = -k0^2/(q+k)^2, with J = (q+k)^2 e^{-iqL} F.
///
/// J and H = J/q both subtract terms of magnitude e^{|Im qL|}, losing
/// |Im qL|/ln(10) digits near deep poles; F evaluates the cancellation
/// directly (near a root |r^2 e^{2iqL}| ~ 1) and stays fully conditioned at
/// any depth.  Returns (F, dF/dk).
fn f_factored(k: Complex64, spec: &BarrierSpec) -> (Complex64, Complex64) {
    let q = channel_momentum(k, spec);
    let k0sq = spec.k0 * spec.k0;
    let qk = q + k;
    let r = -k0sq / (qk * qk);
    let two_iql = Complex64::new(0.0, 2.0 * spec.length) * q;
    let growth = two_iql.re;
    if growth > 700.0 {
        // e^{2iqL} overflows: F is dominated by the exponential; steer the
        // iterate back with a bounded surrogate of matching phase.
        return (
            -r * r * Complex64::new(f64::MAX.sqrt(), 0.0),
            Complex64::new(f64::MAX.sqrt(), 0.0),
        );
    }
    let e = two_iql.exp();
    let f = Complex64::new(1.0, 0.0) - r * r * e;
    // dr/dk = 2 k0^2 / (q (q+k)^2)  (with dq/dk = k/q), so
    // dF/dk = -e r [2 dr/dk + 2iL r k/q] = -(2 e r / q)(2k0^2/(q+k)^2 + iL k r).
    let df = -(2.0 * e * r / q) * (2.0 * k0sq / (qk * qk) + Complex64::new(0.0, spec.length) * k * r);
    (f, df)
}

/// Logarithmic pole condition for branch n:
/// G_n(k) = 2iqL + 2 ln(k0^2/(q+k)^2) ... written as
/// G_n = 2iqL + 2[ln(k0^2) - 2 ln(q+k)] - 2 pi i n, whose zeros are the
/// poles (r^2 e^{2iqL} = 1 resolved on the branch the seed selects).
/// dG/dk = (2/q)(iLk - 2): bounded at any resonance depth, so Newton never
/// overshoots the way the exponential forms do.
fn log_condition(k: Complex64, spec: &BarrierSpec, n: usize) -> (Complex64, Complex64) {
    let q = channel_momentum(k, spec);
    let qk = q + k;
    let g = Complex64::new(0.0, 2.0 * spec.length) * q
        + 2.0 * (spec.k0 * spec.k0).ln()
        - 4.0 * qk.ln()
        - Complex64::new(0.0, 2.0 * PI * n as f64);
    let dg = (Complex64::new(0.0, 2.0 * spec.length) * k - 4.0) / q;
    (g, dg)
}

/// Newton on the logarithmic condition with step damping.
fn refine(mut k: Complex64, spec: &BarrierSpec, index: usize) -> Result<Complex64> {
    for _ in 0..MAX_NEWTON {
        let (g, dg) = log_condition(k, spec, index);
        let mut step = g / dg;
        if step.norm() <= 1e-14 * k.norm() {
            return Ok(k - step);
        }
        let g_norm = g.norm();
        let mut k_next = k - step;
        let mut next_norm = log_condition(k_next, spec, index).0.norm();
        let mut tries = 0;
        while next_norm > g_norm && tries < 8 {
            step = step * 0.5;
            k_next = k - step;
            next_norm = log_condition(k_next, spec, index).0.norm();
            tries += 1;
        }
        // Roundoff plateau well under the certification tolerance.
        if next_norm >= g_norm && step.norm() <= 1e-12 * k.norm() {
            return Ok(if next_norm <= g_norm { k_next } else { k });
        }
        k = k_next;
    }
    Err(Error::Convergence {
        what: "pole Newton iteration",
        index,
    })
}

/// |J|/|k J'| evaluated through the factored form: at a root of F,
/// J' = (q+k)^2 e^{-iqL} F' exactly, so the prefactors cancel and the
/// conditioning matches the root finder's.
fn scaled_residual(k: Complex64, spec: &BarrierSpec) -> f64 {
    let (f, df) = f_factored(k, spec);
    f.norm() / (k.norm() * df.norm())
}

/// Poles n = 1..count ordered by Re k_n.
///
/// Pole positions depend only on (V0, L, m*), never on E.
pub fn enumerate_poles(spec: &BarrierSpec, count: usize) -> Result<Vec<Pole>> {
    if count == 0 {
        return Err(Error::Domain {
            what: "pole count must be >= 1",
            value: 0.0,
        });
    }
    let mut poles: Vec<Pole> = Vec::with_capacity(count);
    for n in 1..=count {
        let mut k = refine(seed(n, spec), spec, n)?;
        // The quadrant convention: store the fourth-quadrant representative.
        if k.re < 0.0 {
            k = -k;
        }
        if k.im > 0.0 {
            k = k.conj();
        }
        let residual = scaled_residual(k, spec);
        if residual > RESIDUAL_TOL {
            return Err(Error::Convergence {
                what: "pole residual certification",
                index: n,
            });
        }
        for p in &poles {
            if (p.k - k).norm() < 1e-8 * k.norm() {
                return Err(Error::Enumeration { index: n });
            }
        }
        poles.push(Pole {
            index: n,
            k,
            q: channel_momentum(k, spec),
            residual,
        });
    }
    poles.sort_by(|a, b| a.k.re.partial_cmp(&b.k.re).expect("finite pole positions"));
    for (i, p) in poles.iter_mut().enumerate() {
        p.index = i + 1;
    }
    Ok(poles)
}

/// Rectangle contour used for a count certificate, in k-plane coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountCertificate {
    pub count: usize,
    pub contour: Contour,
}

/// Winding-number integral of H'/H (H = J/q carries exactly the pole zero
/// set and no branch point) over a rectangle, trapezoid rule.
pub fn winding_number(spec: &BarrierSpec, contour: Contour, points_per_side: usize) -> Result<f64> {
    let corners = [
        Complex64::new(contour.re_min, contour.im_min),
        Complex64::new(contour.re_max, contour.im_min),
        Complex64::new(contour.re_max, contour.im_max),
        Complex64::new(contour.re_min, contour.im_max),
    ];
    let mut acc = Complex64::new(0.0, 0.0);
    for side in 0..4 {
        let a = corners[side];
        let b = corners[(side + 1) % 4];
        let dz = (b - a) / points_per_side as f64;
        let mut f_prev = logderiv(a, spec);
        for i in 1..=points_per_side {
            let z = a + dz * i as f64;
            let f = logderiv(z, spec);
            acc += (f_prev + f) * 0.5 * dz;
            f_prev = f;
        }
    }
    let w = acc / Complex64::new(0.0, 2.0 * PI);
    Ok(w.re)
}

fn logderiv(k: Complex64, spec: &BarrierSpec) -> Complex64 {
    j_entire_deriv(k, spec) / j_entire(k, spec)
}

/// Certify that exactly `poles.len()` zeros of J lie in the fourth-quadrant
/// band the enumeration covers.
pub fn verify_pole_count(spec: &BarrierSpec, poles: &[Pole]) -> Result<CountCertificate> {
    if poles.is_empty() {
        return Err(Error::Domain {
            what: "pole list must be nonempty",
            value: 0.0,
        });
    }
    let n = poles.len();
    let alpha = spec.alpha();
    let l = spec.length;
    // Re k L up to the asymptotic midpoint between pole N and N+1.
    let re_max = ((n as f64 + 0.5) * PI).hypot(alpha) / l;
    let shallowest = poles.iter().map(|p| -p.k.im).fold(f64::INFINITY, f64::min);
    let deepest = poles.iter().map(|p| -p.k.im).fold(0.0, f64::max);
    let contour = Contour {
        re_min: 1e-3 / l,
        re_max,
        im_min: -(1.5 * deepest + 2.0 / l),
        im_max: -0.5 * shallowest,
    };
    // Enough contour points to track each zero's phase turn.
    let w = winding_number(spec, contour, 160 * (n + 4))?;
    let rounded = w.round();
    if (w - rounded).abs() > 0.3 {
        return Err(Error::ContourTooClose { winding: w });
    }
    Ok(CountCertificate {
        count: rounded as usize,
        contour,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barrier::j_det;

    fn paper() -> BarrierSpec {
        BarrierSpec::paper()
    }

    #[test]
    fn first_pole_location() {
        let s = paper();
        let poles = enumerate_poles(&s, 3).unwrap();
        let k1 = poles[0].k;
        assert!(k1.re > 0.0 && k1.im < 0.0, "fourth quadrant: {k1}");
        // Certified against the prototype's argument-principle scan.
        assert!((k1 - Complex64::new(1.157_820_266_534_558_7, -0.014_199_457_936_854_669)).norm() < 1e-9);
        let q1l = poles[0].q * s.length;
        assert!(q1l.re > 0.5 * PI && q1l.re < 1.5 * PI, "q1 L = {q1l}");
    }

    #[test]
    fn residuals_certified() {
        let s = paper();
        let poles = enumerate_poles(&s, 100).unwrap();
        assert_eq!(poles.len(), 100);
        for p in &poles {
            assert!(p.residual <= 1e-10, "n = {}: {}", p.index, p.residual);
        }
        // Strictly increasing real parts.
        for w in poles.windows(2) {
            assert!(w[0].k.re < w[1].k.re);
        }
        // k_100 frozen from the prototype.
        assert!((poles[99].k - Complex64::new(31.430_683_229_168_931, -0.805_338_990_872_858_98)).norm() < 1e-7);
    }

    #[test]
    fn j_vanishes_at_poles() {
        let s = paper();
        let poles = enumerate_poles(&s, 20).unwrap();
        for p in &poles {
            let j = j_det(p.k, &s).unwrap();
            // The scaled residual bound transfers to |J|/|k J'|.
            assert!(p.residual <= 1e-10);
            assert!(j.norm() / (p.k.norm() * 1e3) < 1.0, "crude magnitude sanity");
        }
    }

    #[test]
    fn mirror_poles_satisfy_j() {
        let s = paper();
        for p in enumerate_poles(&s, 30).unwrap() {
            let mirror = -p.k.conj();
            assert!(scaled_residual(mirror, &s) <= 1e-10, "n = {}", p.index);
        }
    }

    #[test]
    fn asymptotic_seed_tightens() {
        // |Re(q_n L) - n pi| decreasing in n for n in [20, 100].
        let s = paper();
        let poles = enumerate_poles(&s, 100).unwrap();
        let gap = |p: &Pole| (p.q.re * s.length - p.index as f64 * PI).abs();
        for w in poles[19..].windows(2) {
            assert!(gap(&w[1]) < gap(&w[0]), "n = {}", w[0].index);
        }
    }

    #[test]
    fn seed_robustness() {
        // Final pole independent of +-20% perturbation of the seed's
        // imaginary part.
        let s = paper();
        let reference = enumerate_poles(&s, 5).unwrap();
        for n in 1..=5usize {
            for scale in [0.8, 1.2] {
                let s0 = seed(n, &s);
                let q0 = channel_momentum(s0, &s);
                let q = Complex64::new(q0.re, q0.im * scale);
                let k = {
                    let k = (q * q + s.k0 * s.k0).sqrt();
                    if k.re < 0.0 {
                        -k
                    } else {
                        k
                    }
                };
                let refined = refine(k, &s, n).unwrap();
                let expect = reference[n - 1].k;
                assert!(
                    (refined - expect).norm() <= 1e-10 * expect.norm(),
                    "n = {n}, scale = {scale}"
                );
            }
        }
    }

    #[test]
    fn poles_do_not_depend_on_energy() {
        let s = paper();
        let other = BarrierSpec::new(s.v0, s.length, s.mass_ratio, 0.5).unwrap();
        let a = enumerate_poles(&s, 25).unwrap();
        let b = enumerate_poles(&other, 25).unwrap();
        for (pa, pb) in a.iter().zip(&b) {
            assert_eq!(pa.k, pb.k, "bit-identical positions");
        }
    }

    #[test]
    fn count_certificate_ten() {
        let s = paper();
        let poles = enumerate_poles(&s, 10).unwrap();
        let cert = verify_pole_count(&s, &poles).unwrap();
        assert_eq!(cert.count, 10);
    }

    #[test]
    fn empty_rectangle_above_axis() {
        let s = paper();
        let contour = Contour {
            re_min: 0.05,
            re_max: 3.0,
            im_min: 0.05,
            im_max: 2.0,
        };
        let w = winding_number(&s, contour, 2000).unwrap();
        assert!(w.abs() < 0.05, "w = {w}");
    }

    #[test]
    fn rectangle_around_single_pole() {
        let s = paper();
        let poles = enumerate_poles(&s, 2).unwrap();
        let k1 = poles[0].k;
        let contour = Contour {
            re_min: k1.re - 0.05,
            re_max: k1.re + 0.05,
            im_min: k1.im - 0.05,
            im_max: k1.im + 0.05,
        };
        let w = winding_number(&s, contour, 4000).unwrap();
        assert!((w - 1.0).abs() < 0.05, "w = {w}");
    }
}

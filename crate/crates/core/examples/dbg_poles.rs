use ttx_core::barrier::{j_entire, j_entire_deriv, channel_momentum, BarrierSpec};
use ttx_core::poles::enumerate_poles;
use ttx_core::Complex64;

fn mix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

fn main() {
    // Issue 4: tiny barrier.
    let tiny = BarrierSpec::new(1e-10, 10.0, 0.067, 0.1422).unwrap();
    let alpha = tiny.alpha();
    println!("tiny alpha = {alpha:e}");
    let n = 1usize;
    let nf = n as f64;
    let beta = (4.0 * nf * nf * std::f64::consts::PI.powi(2) / (alpha * alpha)).ln().max(2.0f64.ln());
    let q = Complex64::new(nf * std::f64::consts::PI, -beta) / tiny.length;
    let mut k = (q * q + tiny.k0 * tiny.k0).sqrt();
    if k.re < 0.0 { k = -k; }
    println!("seed k = {k}, beta = {beta}");
    for it in 0..40 {
        let h = j_entire(k, &tiny);
        let dh = j_entire_deriv(k, &tiny);
        let step = h / dh;
        println!("  it{it}: k={k} |H|={:.3e} |step|={:.3e}", h.norm(), step.norm());
        k -= step;
        if step.norm() < 1e-13 * k.norm() { break; }
        if it > 12 { break; }
    }

    // Issue 1: randomized specs, worst residual.
    let mut seed = 0x5eedu64;
    for trial in 0..5 {
        let v0 = 0.2 + 1.8 * mix(&mut seed);
        let l = 2.0 + 18.0 * mix(&mut seed);
        let s = BarrierSpec::new(v0, l, 0.067, 0.2 * v0).unwrap();
        match enumerate_poles(&s, 100) {
            Ok(poles) => {
                let worst = poles.iter().map(|p| p.residual).fold(0.0f64, f64::max);
                println!("trial {trial}: V0={v0:.4} L={l:.4} worst residual {worst:.3e}");
            }
            Err(e) => {
                println!("trial {trial}: V0={v0:.4} L={l:.4} FAILED: {e}");
                // direct residual of the failing index via plain Newton
                let alpha = s.alpha();
                for n in [67usize, 68, 69] {
                    let nf = n as f64;
                    let beta = (4.0*nf*nf*std::f64::consts::PI.powi(2)/(alpha*alpha)).ln().max(2.0f64.ln());
                    let q = Complex64::new(nf*std::f64::consts::PI, -beta)/s.length;
                    let mut k = (q*q + s.k0*s.k0).sqrt();
                    if k.re < 0.0 { k = -k; }
                    for _ in 0..60 {
                        let step = j_entire(k, &s)/j_entire_deriv(k, &s);
                        k -= step;
                        if step.norm() < 1e-13*k.norm() { break; }
                    }
                    let qq = channel_momentum(k, &s);
                    let h = j_entire(k, &s);
                    let dh = j_entire_deriv(k, &s);
                    let j = qq*h;
                    let kjp = k*k*h/qq + k*qq*dh;
                    println!("  n={n}: k={k} residual={:.3e}", j.norm()/kjp.norm());
                }
            }
        }
    }
}

use ttx_core::Complex64;
use ttx_core::BarrierSpec;
use ttx_core::units::{HBAR, HBAR2_OVER_2ME};

fn main() {
    let spec = BarrierSpec::paper();
    let (x_left, x_right, dx, dt) = (-50.26548245743669f64, 60.0f64, 0.02f64, 0.005f64);
    let n = ((x_right - x_left) / dx).round() as usize + 1;
    let k = spec.k;
    let h2m = HBAR2_OVER_2ME / spec.mass_ratio;
    let x_at = |i: usize| x_left + i as f64 * dx;
    let mut psi: Vec<Complex64> = (0..n)
        .map(|i| {
            let x = x_at(i);
            if x < 0.0 {
                let ikx = Complex64::new(0.0, k * x);
                ikx.exp() - (-ikx).exp()
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    psi[0] = Complex64::new(0.0, 0.0);
    psi[n - 1] = Complex64::new(0.0, 0.0);
    let lam = Complex64::new(0.0, dt / (2.0 * HBAR));
    let off = lam * (-h2m / (dx * dx));
    let diag: Vec<Complex64> = (0..n)
        .map(|i| {
            let x = x_at(i);
            let v = if x >= 0.0 && x <= spec.length { spec.v0 } else { 0.0 };
            Complex64::new(1.0, 0.0) + lam * (2.0 * h2m / (dx * dx) + v)
        })
        .collect();
    // forward-precomputed Thomas
    let mut c_prime = vec![Complex64::new(0.0, 0.0); n];
    let mut inv_pivot = vec![Complex64::new(0.0, 0.0); n];
    inv_pivot[0] = 1.0 / diag[0];
    c_prime[0] = off * inv_pivot[0];
    for i in 1..n {
        let denom = diag[i] - off * c_prime[i - 1];
        inv_pivot[i] = 1.0 / denom;
        c_prime[i] = off * inv_pivot[i];
    }
    let norm = |p: &Vec<Complex64>| p.iter().map(|c| c.norm_sqr()).sum::<f64>() * dx;
    println!("norm0 = {}", norm(&psi));
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    for step in 1..=200 {
        rhs[0] = Complex64::new(0.0, 0.0);
        rhs[n - 1] = Complex64::new(0.0, 0.0);
        for i in 1..n - 1 {
            let lap = psi[i + 1] - 2.0 * psi[i] + psi[i - 1];
            let x = x_at(i);
            let v = if x >= 0.0 && x <= spec.length { spec.v0 } else { 0.0 };
            let h_psi = (-h2m / (dx * dx)) * lap + v * psi[i];
            rhs[i] = psi[i] - lam * h_psi;
        }
        // solve in place
        rhs[0] = rhs[0] * inv_pivot[0];
        for i in 1..n {
            let prev = rhs[i - 1];
            rhs[i] = (rhs[i] - off * prev) * inv_pivot[i];
        }
        for i in (0..n - 1).rev() {
            let next = rhs[i + 1];
            rhs[i] = rhs[i] - c_prime[i] * next;
        }
        std::mem::swap(&mut psi, &mut rhs);
        if step % 40 == 0 {
            println!("step {step}: norm = {}", norm(&psi));
        }
    }
}

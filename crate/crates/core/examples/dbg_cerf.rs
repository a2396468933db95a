use ttx_core::cerf::faddeeva;
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
    let mut s = 7u64;
    let mut worst = 0.0;
    let mut worst_z = Complex64::new(0.0, 0.0);
    for _ in 0..100 {
        let z = Complex64::new(20.0 * (mix(&mut s) - 0.5), 20.0 * (mix(&mut s) - 0.5));
        let lhs = faddeeva(z).unwrap() + faddeeva(-z).unwrap();
        let rhs = 2.0 * (-z * z).exp();
        let rel = (lhs - rhs).norm() / rhs.norm();
        if rel > worst { worst = rel; worst_z = z; }
    }
    println!("worst rel {worst:.3e} at z = {worst_z}");
    let z = worst_z;
    println!("w(z)  = {:?}", faddeeva(z));
    println!("w(-z) = {:?}", faddeeva(-z));
    println!("2e^-z2 = {}", 2.0*(-z*z).exp());
}

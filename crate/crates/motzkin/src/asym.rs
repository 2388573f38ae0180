use std::f64::consts::PI;

use nwalk_walk::Class;

/// Root of `1024γ⁴ - 8019γ² + 2916` in `(0, 1)`, by bisection.
pub fn gamma() -> f64 {
    let f = |g: f64| 1024.0 * g.powi(4) - 8019.0 * g * g + 2916.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    debug_assert!(f(lo) > 0.0 && f(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Two-term asymptotic count of unweighted Motzkin walks of length `n` in `class`.
pub fn motzkin_asymptotics(class: Class, n: u32) -> f64 {
    let nf = f64::from(n);
    let seven = 7f64.powi(n as i32);
    let six = 6f64.powi(n as i32);
    match class {
        Class::Walk => seven,
        Class::Bridge => seven - (3.0 / PI).sqrt() * six / nf.sqrt(),
        Class::Meander => 0.75 * seven + 3.0 * 3f64.sqrt() / (2.0 * PI.sqrt()) * six / nf.powf(1.5),
        Class::Excursion => 9.0 / 16.0 * seven - gamma() * six / (PI * nf.powi(3)).sqrt(),
    }
}

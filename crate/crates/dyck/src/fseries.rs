//! Float power series, used where the limit laws need numeric expansions.

pub(crate) fn mul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn inv(a: &[f64], n: usize) -> Vec<f64> {
    assert!(a[0] != 0.0, "series with zero constant term has no inverse");
    let mut out = vec![0.0; n];
    out[0] = 1.0 / a[0];
    for k in 1..n {
        let s: f64 = (1..=k.min(a.len() - 1)).map(|i| a[i] * out[k - i]).sum();
        out[k] = -s / a[0];
    }
    out
}

/// Principal square root; needs a positive constant term.
pub(crate) fn sqrt(a: &[f64], n: usize) -> Vec<f64> {
    assert!(a[0] > 0.0, "square root needs a positive constant term");
    let mut out = vec![0.0; n];
    out[0] = a[0].sqrt();
    for k in 1..n {
        let ak = a.get(k).copied().unwrap_or(0.0);
        let s: f64 = (1..k).map(|i| out[i] * out[k - i]).sum();
        out[k] = (ak - s) / (2.0 * out[0]);
    }
    out
}

#[cfg(test)]
fn eval(a: &[f64], x: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_square() {
        let a = [1.0, 2.0, 1.0];
        let r = sqrt(&a, 6);
        assert!((r[0] - 1.0).abs() < 1e-15 && (r[1] - 1.0).abs() < 1e-15);
        assert!(r[2..].iter().all(|c| c.abs() < 1e-15));
        let g = inv(&[1.0, -0.5], 5);
        assert!((eval(&g, 1.0) - (1.0 - 0.5f64.powi(5)) / 0.5).abs() < 1e-12);
        assert_eq!(mul(&[1.0, 1.0], &[1.0, -1.0], 3), vec![1.0, 0.0, -1.0]);
    }
}

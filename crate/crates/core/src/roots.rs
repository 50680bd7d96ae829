//! Simultaneous root finding (Aberth–Ehrlich) for characteristic polynomials
//! with rational coefficients.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::upoly::UPoly;

pub const DEFAULT_MAX_ITERATIONS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    /// Backward error `|p(z)| / sum_k |a_k| |z|^k`.
    pub residual: f64,
}

impl Root {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn residual(abs_coeffs: &[f64], p: Complex64, z: Complex64) -> f64 {
    let r = z.norm();
    let scale = abs_coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c);
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// All complex roots of `cp`, sorted by real then imaginary part.
///
/// Iterates until every backward error is below `precision_target`, then
/// applies two polishing sweeps. Fails after `max_iterations` sweeps.
pub fn numeric_roots(
    cp: &UPoly,
    precision_target: f64,
    max_iterations: usize,
) -> Result<Vec<Root>> {
    let Some(n) = cp.degree() else {
        return Err(Error::InvalidArgument(
            "zero polynomial has no roots".into(),
        ));
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let lc = cp.lc();
    let coeffs: Vec<Complex64> = cp
        .scale(&(num_rational::BigRational::from_integer(1.into()) / lc))
        .to_f64()
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect();
    let abs_coeffs: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();

    // Initial points on a circle around the centroid of the roots.
    let center = -coeffs[n - 1] / n as f64;
    let radius = {
        let bound = abs_coeffs[..n]
            .iter()
            .enumerate()
            .map(|(k, c)| c.powf(1.0 / (n - k) as f64))
            .fold(0.0, f64::max);
        if bound > 0.0 {
            bound
        } else {
            1.0
        }
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut polish = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..max_iterations {
        for k in 0..n {
            let (p, dp) = horner(&coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
            }
        }
        worst = z
            .iter()
            .map(|&zk| residual(&abs_coeffs, horner(&coeffs, zk).0, zk))
            .fold(0.0, f64::max);
        if worst < precision_target {
            polish += 1;
            if polish > 2 {
                break;
            }
        }
    }
    if worst.is_nan() || worst >= precision_target {
        return Err(Error::NonConvergence {
            iterations: max_iterations,
            worst_residual: worst,
        });
    }

    for zk in z.iter_mut() {
        if zk.im.abs() <= 1e-12 * zk.re.abs().max(1.0) {
            zk.im = 0.0;
        }
    }
    // Real coefficients: make conjugate pairs exact.
    let mut paired = vec![false; n];
    for k in 0..n {
        if paired[k] || z[k].im <= 0.0 {
            continue;
        }
        let mate = (0..n)
            .filter(|&j| !paired[j] && z[j].im < 0.0)
            .min_by(|&i, &j| {
                (z[i] - z[k].conj())
                    .norm()
                    .total_cmp(&(z[j] - z[k].conj()).norm())
            });
        if let Some(j) = mate {
            let re = 0.5 * (z[k].re + z[j].re);
            let im = 0.5 * (z[k].im - z[j].im);
            z[k] = Complex64::new(re, im);
            z[j] = Complex64::new(re, -im);
            paired[k] = true;
            paired[j] = true;
        }
    }

    let mut roots: Vec<Root> = z
        .into_iter()
        .map(|zk| {
            let res = residual(&abs_coeffs, horner(&coeffs, zk).0, zk);
            let im = zk.im;
            Root {
                re: zk.re,
                im,
                residual: res,
            }
        })
        .collect();
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn simple_quadratics() {
        let r = numeric_roots(&up(&[2, -3, 1]), 1e-12, DEFAULT_MAX_ITERATIONS).unwrap();
        assert!((r[0].re - 1.0).abs() < 1e-12 && r[0].im == 0.0);
        assert!((r[1].re - 2.0).abs() < 1e-12 && r[1].im == 0.0);

        let r = numeric_roots(&up(&[-2, 0, 1]), 1e-12, DEFAULT_MAX_ITERATIONS).unwrap();
        assert!((r[0].re + std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((r[1].re - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn complex_pair() {
        let r = numeric_roots(&up(&[1, 0, 1]), 1e-12, DEFAULT_MAX_ITERATIONS).unwrap();
        assert!(r[0].re.abs() < 1e-12 && (r[0].im + 1.0).abs() < 1e-12);
        assert!((r[1].im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let cp = up(&[-6, 11, -6, 1]);
        let err = numeric_roots(&cp, 0.0, 20).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { iterations: 20, .. }));
    }

    #[test]
    fn constants_and_zero() {
        assert!(numeric_roots(&up(&[5]), 1e-12, 10).unwrap().is_empty());
        assert!(numeric_roots(&UPoly::default(), 1e-12, 10).is_err());
    }
}

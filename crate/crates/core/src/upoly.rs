//! Dense univariate polynomials over `Q` (in the spectral variable).

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UPoly(Vec<BigRational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> UPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn constant(c: BigRational) -> UPoly {
        UPoly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear(r: BigRational) -> UPoly {
        UPoly::new(vec![-r, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> UPoly {
        UPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.0.clone();
        let n = rem.len();
        if n <= dd {
            return (UPoly::default(), self.clone());
        }
        let lc = divisor.lc();
        let mut quot = vec![BigRational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let f = &rem[k + dd] / &lc;
            if f.is_zero() {
                continue;
            }
            for (i, c) in divisor.0.iter().enumerate() {
                rem[k + i] -= &f * c;
            }
            quot[k] = f;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &UPoly) -> BigRational {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return BigRational::zero();
        };
        if n == 0 {
            return num_traits::pow(other.lc(), m);
        }
        if m == 0 {
            return num_traits::pow(self.lc(), n);
        }
        let sign = if (m * n) % 2 == 1 {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        let (_, r) = self.div_rem(other);
        let Some(dr) = r.degree() else {
            return BigRational::zero();
        };
        // res(f, g) = (-1)^{mn} lc(g)^{m - deg r} res(g, r)
        sign * num_traits::pow(other.lc(), m - dr) * other.resultant(&r)
    }

    /// `(-1)^{n(n-1)/2} res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigRational {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return BigRational::one();
        }
        let res = self.resultant(&self.derivative()) / self.lc();
        if (n * (n - 1) / 2) % 2 == 1 {
            -res
        } else {
            res
        }
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&crate::poly::fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", crate::poly::fmt_rational(&a)));
            }
        }
        out
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    let z = BigRational::zero();
                    self.0.get(i).unwrap_or(&z) + rhs.0.get(i).unwrap_or(&z)
                })
                .collect(),
        )
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn division() {
        let f = up(&[2, -3, 1]);
        let (q, r) = f.div_rem(&up(&[-1, 1]));
        assert_eq!(q, up(&[-2, 1]));
        assert!(r.is_zero());
        let (q, r) = up(&[1, 0, 1]).div_rem(&up(&[1, 1]));
        assert_eq!(&(&q * &up(&[1, 1])) + &r, up(&[1, 0, 1]));
    }

    #[test]
    fn resultants_and_discriminants() {
        // x^2 - 3x + 2: discriminant 9 - 8 = 1
        assert_eq!(up(&[2, -3, 1]).discriminant(), int(1));
        // (x - 1)^2
        assert!(up(&[1, -2, 1]).discriminant().is_zero());
        // x^3 + px + q: -4p^3 - 27q^2
        assert_eq!(up(&[1, 2, 0, 1]).discriminant(), int(-4 * 8 - 27));
        // res(x - a, x - b) = a - b
        assert_eq!(
            UPoly::linear(int(3)).resultant(&UPoly::linear(int(5))),
            int(-2)
        );
    }

    #[test]
    fn printing() {
        assert_eq!(up(&[2, -3, 1]).to_string_in("x"), "x^2 - 3*x + 2");
    }
}

//! Commutators, characteristic polynomials and spectra of operator matrices.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::{Mono, Poly, Var};
use crate::roots::{numeric_roots, Root, DEFAULT_MAX_ITERATIONS};
use crate::space::OpMatrix;
use crate::upoly::UPoly;

/// `AB - BA`.
pub fn commutator(a: &OpMatrix, b: &OpMatrix) -> Result<OpMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Monic `det(x I - M)` with coefficients in `Q[e2, e3]`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    pub coefficients: Vec<Poly>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn specialize(&self, e2: &BigRational, e3: &BigRational) -> Result<UPoly> {
        let coeffs = self
            .coefficients
            .iter()
            .map(|c| {
                c.specialize(e2, e3)
                    .as_constant()
                    .ok_or_else(|| Error::InvalidArgument("coefficient depends on z".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(UPoly::new(coeffs))
    }
}

/// Faddeev–LeVerrier over `Q[e2, e3]`:
/// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
///
/// Runs on the integer matrix `A = L M`, `L` the common denominator of all
/// entries; every `M_k` and `c_k` then has integer coefficients and the
/// division by `k` is exact. Afterwards `c_{n-k}` is rescaled by `L^{-k}`.
pub fn char_poly(m: &OpMatrix) -> CharPoly {
    let n = m.dim();
    let l = m
        .entries
        .iter()
        .flatten()
        .flat_map(|x| x.terms().map(|(_, c)| c.denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let Some(a) = m
        .entries
        .iter()
        .map(|r| r.iter().map(|x| ZPoly::from_poly(x, &l)).collect())
        .collect::<Option<Vec<Vec<ZPoly>>>>()
    else {
        return char_poly_generic(m);
    };

    let mut c = vec![ZPoly::default(); n + 1];
    c[n] = ZPoly::constant(BigInt::one());
    let mut mk: Vec<Vec<ZPoly>> = vec![vec![ZPoly::default(); n]; n];
    for k in 1..=n {
        mk = zmat_mul(&a, &mk);
        for (i, row) in mk.iter_mut().enumerate() {
            row[i].add_assign(&c[n - k + 1]);
        }
        let am = zmat_mul(&a, &mk);
        let mut tr = ZPoly::default();
        for (i, row) in am.iter().enumerate() {
            tr.add_assign(&row[i]);
        }
        c[n - k] = tr.exact_div(&-BigInt::from(k));
    }

    let mut coefficients = vec![Poly::zero(); n + 1];
    coefficients[n] = Poly::one();
    let mut scale = BigRational::one();
    let inv_l = BigRational::new(BigInt::one(), l);
    for k in 1..=n {
        scale *= &inv_l;
        coefficients[n - k] = c[n - k].to_poly(&scale);
    }
    CharPoly { coefficients }
}

/// Faddeev–LeVerrier directly on `Poly` entries, for matrices with `z`.
fn char_poly_generic(m: &OpMatrix) -> CharPoly {
    let n = m.dim();
    let mut coeffs = vec![Poly::zero(); n + 1];
    coeffs[n] = Poly::one();
    let identity = OpMatrix::identity(&m.basis);
    let mut mk = OpMatrix::identity(&m.basis).scale(&Poly::zero());
    for k in 1..=n {
        mk = m
            .mul(&mk)
            .expect("square")
            .add(&identity.scale(&coeffs[n - k + 1]))
            .expect("square");
        let am = m.mul(&mk).expect("square");
        let inv_k = BigRational::new(BigInt::from(-1), BigInt::from(k));
        coeffs[n - k] = am.trace().scalar_mul(&inv_k);
    }
    CharPoly {
        coefficients: coeffs,
    }
}

/// Sparse polynomial in `e2, e3` with integer coefficients, keyed by
/// exponent pair.
#[derive(Debug, Clone, Default)]
struct ZPoly(HashMap<(u32, u32), BigInt>);

impl ZPoly {
    fn constant(c: BigInt) -> ZPoly {
        let mut out = ZPoly::default();
        out.add_term((0, 0), c);
        out
    }

    /// `l * x` when `x` is free of `z` and `l` clears its denominators.
    fn from_poly(x: &Poly, l: &BigInt) -> Option<ZPoly> {
        let mut out = ZPoly::default();
        for (mono, c) in x.terms() {
            if !mono.is_z_free() {
                return None;
            }
            let v = c.numer() * (l / c.denom());
            out.0.insert((mono.exp(Var::E2), mono.exp(Var::E3)), v);
        }
        Some(out)
    }

    fn to_poly(&self, scale: &BigRational) -> Poly {
        let mut out = Poly::zero();
        for (&(i, j), c) in &self.0 {
            let coeff = BigRational::from_integer(c.clone()) * scale;
            out += &Poly::monomial(coeff, Mono([0, 0, i, j]));
        }
        out
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(key) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn add_assign(&mut self, other: &ZPoly) {
        for (&k, c) in &other.0 {
            self.add_term(k, c.clone());
        }
    }

    fn add_product(&mut self, a: &ZPoly, b: &ZPoly) {
        for (&(i1, j1), x) in &a.0 {
            for (&(i2, j2), y) in &b.0 {
                self.add_term((i1 + i2, j1 + j2), x * y);
            }
        }
    }

    fn exact_div(&self, k: &BigInt) -> ZPoly {
        ZPoly(
            self.0
                .iter()
                .map(|(&key, c)| {
                    debug_assert!((c % k).is_zero(), "trace must be divisible by k");
                    (key, c / k)
                })
                .collect(),
        )
    }
}

fn zmat_mul(a: &[Vec<ZPoly>], b: &[Vec<ZPoly>]) -> Vec<Vec<ZPoly>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = ZPoly::default();
                    for k in 0..n {
                        acc.add_product(&a[i][k], &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Fraction-free Bareiss determinant of `x I - M` over `Q[x]`.
pub fn char_poly_bareiss(m: &QMatrix) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::constant(BigRational::one());
    }
    let mut a: Vec<Vec<UPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        UPoly::linear(m[i][j].clone())
                    } else {
                        UPoly::constant(-m[i][j].clone())
                    }
                })
                .collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = UPoly::constant(BigRational::one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return UPoly::default(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss step must divide exactly");
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Whether the characteristic polynomial has simple roots: `res(p, p') != 0`.
pub fn discriminant_nonzero(cp: &UPoly) -> bool {
    !cp.discriminant().is_zero()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// Coefficients from the constant term upwards, as `p/q` strings.
    pub charpoly: Vec<String>,
    pub discriminant: String,
    pub roots: Vec<Root>,
    pub discriminant_nonzero: bool,
}

/// Exact characteristic polynomial at `(e2, e3)`, its discriminant, and
/// numeric roots.
pub fn spectrum(
    m: &OpMatrix,
    e2: &BigRational,
    e3: &BigRational,
    precision_target: f64,
) -> Result<SpectrumReport> {
    let cp = char_poly(m).specialize(e2, e3)?;
    let disc = cp.discriminant();
    let roots = numeric_roots(&cp, precision_target, DEFAULT_MAX_ITERATIONS)?;
    Ok(SpectrumReport {
        charpoly: cp.coeffs().iter().map(crate::poly::fmt_rational).collect(),
        discriminant: crate::poly::fmt_rational(&disc),
        discriminant_nonzero: !disc.is_zero(),
        roots,
    })
}

impl SpectrumReport {
    /// One row per root: `index,re,im,residual`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "re", "im", "residual"]).unwrap();
        for (i, r) in self.roots.iter().enumerate() {
            w.write_record([
                i.to_string(),
                format!("{:e}", r.re),
                format!("{:e}", r.im),
                format!("{:e}", r.residual),
            ])
            .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn diag(v: &[i64]) -> OpMatrix {
        let n = v.len();
        OpMatrix::from_rows(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                Poly::from_int(v[i])
                            } else {
                                Poly::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn commutator_trivial_cases() {
        let m = OpMatrix::from_rows(vec![
            vec!["e2".parse().unwrap(), Poly::from_int(3)],
            vec![
                "z1".parse::<Poly>().unwrap().differentiate(crate::ZVar::Z1),
                "e3^2".parse().unwrap(),
            ],
        ])
        .unwrap();
        assert!(commutator(&m, &m).unwrap().is_zero());
        assert!(commutator(&m, &OpMatrix::identity(&m.basis))
            .unwrap()
            .is_zero());
        assert!(matches!(
            commutator(&m, &diag(&[1, 2, 3])),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn char_poly_small() {
        let cp = char_poly(&diag(&[1, 2]));
        assert_eq!(
            cp.coefficients,
            vec![Poly::from_int(2), Poly::from_int(-3), Poly::one()]
        );
        let one = OpMatrix::from_rows(vec![vec!["2*e2 - e3".parse().unwrap()]]).unwrap();
        assert_eq!(
            char_poly(&one).coefficients,
            vec!["e3 - 2*e2".parse().unwrap(), Poly::one()]
        );
    }

    #[test]
    fn integer_path_matches_generic() {
        let m = OpMatrix::from_rows(vec![
            vec![
                "1/3*e2 - e3".parse().unwrap(),
                "2/5*e2^2".parse().unwrap(),
                Poly::from_int(7),
            ],
            vec![
                "-3/4".parse().unwrap(),
                "e2*e3 + 1/6".parse().unwrap(),
                "e3".parse().unwrap(),
            ],
            vec![
                "e2^3".parse().unwrap(),
                Poly::zero(),
                "-2/7*e3^2 + e2".parse().unwrap(),
            ],
        ])
        .unwrap();
        assert_eq!(char_poly(&m), char_poly_generic(&m));
    }

    #[test]
    fn bareiss_matches_leverrier() {
        let rows: QMatrix = vec![
            vec![int(0), int(2), int(-1)],
            vec![int(3), int(0), int(5)],
            vec![int(1), int(-4), int(0)],
        ];
        let m = OpMatrix::from_rational(&rows).unwrap();
        let fl = char_poly(&m).specialize(&int(0), &int(0)).unwrap();
        assert_eq!(char_poly_bareiss(&rows), fl);
        // zero diagonal forces a pivot swap only if the leading entry vanishes
        assert_eq!(fl.lc(), int(1));
    }

    #[test]
    fn discriminants() {
        assert!(discriminant_nonzero(&char_poly_bareiss(&vec![
            vec![int(1), int(0)],
            vec![int(0), int(2)]
        ])));
        assert!(!discriminant_nonzero(&char_poly_bareiss(&vec![
            vec![int(1), int(1)],
            vec![int(0), int(1)]
        ])));
    }

    #[test]
    fn spectrum_report() {
        let r = spectrum(&diag(&[1, 2]), &int(0), &int(0), 1e-12).unwrap();
        assert_eq!(r.charpoly, vec!["2", "-3", "1"]);
        assert!(r.discriminant_nonzero);
        assert!((r.roots[0].re - 1.0).abs() < 1e-12);
        assert!(r.to_csv().starts_with("index,re,im,residual\n0,"));
    }
}

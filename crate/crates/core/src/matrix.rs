//! Arithmetic on [`OpMatrix`] and dense rational matrices.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Poly, Var};
use crate::space::{BasisVd, OpMatrix};

/// Dense row-major matrix over `Q`.
pub type QMatrix = Vec<Vec<BigRational>>;

impl OpMatrix {
    pub fn identity(basis: &BasisVd) -> OpMatrix {
        let n = basis.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Poly::one() } else { Poly::zero() })
                    .collect()
            })
            .collect();
        OpMatrix {
            basis: basis.clone(),
            entries,
        }
    }

    /// A matrix not tied to an operator; the basis is only used for labels.
    pub fn from_rows(entries: Vec<Vec<Poly>>) -> Result<OpMatrix> {
        let n = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(n, row.len()));
        }
        let basis = BasisVd {
            d: 0,
            elements: (0..n as u32).map(|i| (i, i)).collect(),
        };
        Ok(OpMatrix { basis, entries })
    }

    pub fn from_rational(rows: &QMatrix) -> Result<OpMatrix> {
        OpMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().map(Poly::constant).collect())
                .collect(),
        )
    }

    fn check_dim(&self, other: &OpMatrix) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> OpMatrix {
        OpMatrix {
            basis: self.basis.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &OpMatrix) -> Result<OpMatrix> {
        self.check_dim(other)?;
        let n = self.dim();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = Poly::zero();
                        for k in 0..n {
                            if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                                acc += &(&self.entries[i][k] * &other.entries[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(OpMatrix {
            basis: self.basis.clone(),
            entries,
        })
    }

    fn zip(&self, other: &OpMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<OpMatrix> {
        self.check_dim(other)?;
        Ok(OpMatrix {
            basis: self.basis.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(x, y)| f(x, y)).collect())
                .collect(),
        })
    }

    pub fn add(&self, other: &OpMatrix) -> Result<OpMatrix> {
        self.zip(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &OpMatrix) -> Result<OpMatrix> {
        self.zip(other, |x, y| x - y)
    }

    pub fn scale(&self, c: &Poly) -> OpMatrix {
        self.map(|x| x * c)
    }

    /// `[1, M, M^2, ..., M^k]`.
    pub fn powers(&self, k: usize) -> Vec<OpMatrix> {
        let mut out = vec![OpMatrix::identity(&self.basis)];
        for _ in 0..k {
            let next = out.last().unwrap().mul(self).expect("square");
            out.push(next);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn trace(&self) -> Poly {
        let mut acc = Poly::zero();
        for (i, r) in self.entries.iter().enumerate() {
            acc += &r[i];
        }
        acc
    }

    /// Substitutes numeric `e2`, `e3` and returns the rational matrix.
    pub fn specialize(&self, e2: &BigRational, e3: &BigRational) -> Result<QMatrix> {
        self.entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        x.specialize(e2, e3).as_constant().ok_or_else(|| {
                            Error::InvalidArgument("matrix entry depends on z".into())
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Restricts to the line `e1 = 0`, `e2 = -e3`.
    pub fn restrict_to_line(&self) -> OpMatrix {
        let minus_e3 = -Poly::var(Var::E3);
        self.map(|x| x.substitute(Var::E2, &minus_e3))
    }

    /// Substitutes `e2 -> s e2`, `e3 -> s e3`.
    pub fn scale_e(&self, s: &BigRational) -> OpMatrix {
        let e2 = Poly::var(Var::E2).scalar_mul(s);
        let e3 = Poly::var(Var::E3).scalar_mul(s);
        self.map(|x| x.substitute(Var::E2, &e2).substitute(Var::E3, &e3))
    }
}

pub fn q_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = BigRational::zero();
                    for (k, row) in b.iter().enumerate() {
                        if !a[i][k].is_zero() && !row[j].is_zero() {
                            acc += &a[i][k] * &row[j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn q_identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::from_integer(1.into())
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `[1, M, ..., M^k]` over `Q`.
pub fn q_powers(m: &QMatrix, k: usize) -> Vec<QMatrix> {
    let mut out = vec![q_identity(m.len())];
    for _ in 0..k {
        let next = q_mul(out.last().unwrap(), m);
        out.push(next);
    }
    out
}

//! The invariant space `V_d^sym` spanned by symmetric monomials
//! `m_(m1,m2) = z1^m1 z2^m2 + z1^m2 z2^m1` (`m1 < m2`) and `z1^m z2^m`,
//! with `0 <= m1 <= m2 <= d`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::DiffOperator;
use crate::poly::{Mono, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisVd {
    pub d: u32,
    pub elements: Vec<(u32, u32)>,
}

impl BasisVd {
    /// Ordered by `m1 + m2`, then lexicographically on `(m1, m2)`.
    pub fn new(d: u32) -> BasisVd {
        let mut elements = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
        for s in 0..=2 * d {
            for m1 in 0..=s / 2 {
                let m2 = s - m1;
                if m2 <= d {
                    elements.push((m1, m2));
                }
            }
        }
        BasisVd { d, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element_poly(&self, idx: usize) -> Poly {
        let (m1, m2) = self.elements[idx];
        symmetric_monomial(m1, m2)
    }

    pub fn position(&self, m1: u32, m2: u32) -> Option<usize> {
        self.elements.iter().position(|&e| e == (m1, m2))
    }

    /// Coordinates of a symmetric `f` in this basis.
    pub fn to_coordinates(&self, f: &Poly) -> Result<Vec<Poly>> {
        if !f.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let degree = f
            .degree_in(crate::poly::Var::Z1)
            .max(f.degree_in(crate::poly::Var::Z2));
        if degree > self.d {
            return Err(Error::DegreeOverflow {
                degree,
                d: self.d,
                element: None,
            });
        }
        Ok(self
            .elements
            .iter()
            .map(|&(m1, m2)| f.z_coefficient(m1, m2))
            .collect())
    }

    /// `sum_j coords[j] * m_j`.
    pub fn reconstruct(&self, coords: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (idx, c) in coords.iter().enumerate() {
            out += &(c * &self.element_poly(idx));
        }
        out
    }
}

pub fn enumerate_basis(d: u32) -> BasisVd {
    BasisVd::new(d)
}

pub fn symmetric_monomial(m1: u32, m2: u32) -> Poly {
    let one = num_rational::BigRational::from_integer(1.into());
    let a = Poly::monomial(one.clone(), Mono([m1, m2, 0, 0]));
    if m1 == m2 {
        a
    } else {
        &a + &Poly::monomial(one, Mono([m2, m1, 0, 0]))
    }
}

/// Square matrix with polynomial entries, stored row-major. Column `j` holds
/// the coordinates of the operator applied to basis element `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpMatrix {
    pub basis: BasisVd,
    pub entries: Vec<Vec<Poly>>,
}

#[derive(Serialize)]
struct MatrixDump<'a> {
    d: u32,
    basis: Vec<[u32; 2]>,
    entries: &'a [Vec<Poly>],
}

impl OpMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn from_columns(basis: BasisVd, columns: Vec<Vec<Poly>>) -> OpMatrix {
        let n = columns.len();
        let entries = (0..n)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        OpMatrix { basis, entries }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixDump {
            d: self.basis.d,
            basis: self.basis.elements.iter().map(|&(a, b)| [a, b]).collect(),
            entries: &self.entries,
        })
        .expect("matrix dump serializes")
    }
}

/// Matrix of `op` on `basis`. Fails with the first (in basis order) element
/// whose image is not polynomial or leaves the space.
pub fn matrix_of(op: &DiffOperator, basis: &BasisVd) -> Result<OpMatrix> {
    // Columns are computed in parallel chunks, in basis order, so that an
    // overflow stops the work early and the reported element is deterministic.
    let chunk = 4 * rayon::current_num_threads().max(1);
    let mut columns = Vec::with_capacity(basis.len());
    for start in (0..basis.len()).step_by(chunk) {
        let end = (start + chunk).min(basis.len());
        let part: Vec<Result<Vec<Poly>>> = (start..end)
            .into_par_iter()
            .map(|j| {
                op.apply(&basis.element_poly(j))
                    .and_then(|img| basis.to_coordinates(&img))
                    .map_err(|e| Error::BasisElement {
                        element: basis.elements[j],
                        source: Box::new(e),
                    })
            })
            .collect();
        for col in part {
            columns.push(col?);
        }
    }
    Ok(OpMatrix::from_columns(basis.clone(), columns))
}

//! Polynomial relations between the commuting matrices of `H` and `P2`.
//!
//! A relation of shape `(I, J)` has the separated form
//!
//! ```text
//! P2^J + alpha_{J-1} P2^{J-1} + ... + alpha_1 P2 = c_I H^I + ... + c_1 H + c_0
//! ```
//!
//! The coefficients are found by solving the vectorized identity exactly at
//! rational specializations of `(e2, e3)`, interpolating each coefficient as a
//! polynomial of bounded degree, and finally checking the identity with the
//! symbolic matrices.

use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{rank, solve, Solution};
use crate::matrix::{q_powers, QMatrix};
use crate::poly::{rat, Mono, Poly, Var};
use crate::space::OpMatrix;

/// Where `(e2, e3)` range: the full plane, or the line `e1 = 0, e2 = -e3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EDomain {
    Plane,
    Line,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    D1Relation,
    D2Relation,
    General,
}

/// Highest powers of `H` and `P2` in a separated relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationShape {
    pub h_degree: usize,
    pub p_degree: usize,
}

impl RelationShape {
    /// Weighted degree with `wt(H) = 1`, `wt(P2) = 2`.
    pub fn weight(&self) -> usize {
        self.h_degree.max(2 * self.p_degree)
    }

    /// Degree in `e` of `alpha_j` (`P2^j`) under homogeneity.
    pub fn p_coeff_degree(&self, j: usize) -> usize {
        2 * (self.p_degree - j)
    }

    /// Degree in `e` of `c_i` (`H^i`) under homogeneity; `None` when negative.
    pub fn h_coeff_degree(&self, i: usize) -> Option<usize> {
        (2 * self.p_degree).checked_sub(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCoefficients {
    pub kind: RelationKind,
    pub shape: RelationShape,
    pub domain: EDomain,
    /// `alpha_1 .. alpha_{J-1}`; the `P2^J` coefficient is 1.
    pub p_coeffs: Vec<Poly>,
    /// `c_0 .. c_I`.
    pub h_coeffs: Vec<Poly>,
}

impl RelationCoefficients {
    /// `c_k`, the coefficient of `H^k`.
    pub fn c(&self, k: usize) -> &Poly {
        &self.h_coeffs[k]
    }

    /// `d0`, the coefficient of `P2` in a degree-2 relation.
    pub fn d0(&self) -> Option<&Poly> {
        (self.shape.p_degree == 2).then(|| &self.p_coeffs[0])
    }

    /// The relation as `sum coeff * H^i P2^j = 0`, keyed by `(i, j)`.
    pub fn terms(&self) -> Vec<((usize, usize), Poly)> {
        let mut out = vec![((0, self.shape.p_degree), Poly::one())];
        for (j, a) in self.p_coeffs.iter().enumerate().rev() {
            if !a.is_zero() {
                out.push(((0, j + 1), a.clone()));
            }
        }
        for (i, c) in self.h_coeffs.iter().enumerate().rev() {
            if !c.is_zero() {
                out.push(((i, 0), -c));
            }
        }
        out
    }

    /// Checks the identity exactly with symbolic matrices.
    pub fn holds_for(&self, h: &OpMatrix, p2: &OpMatrix) -> Result<bool> {
        let (h, p2) = match self.domain {
            EDomain::Plane => (h.clone(), p2.clone()),
            EDomain::Line => (h.restrict_to_line(), p2.restrict_to_line()),
        };
        let hp = h.powers(self.shape.h_degree);
        let pp = p2.powers(self.shape.p_degree);
        let mut acc = pp[self.shape.p_degree].clone();
        for (j, a) in self.p_coeffs.iter().enumerate() {
            acc = acc.add(&pp[j + 1].scale(a))?;
        }
        for (i, c) in self.h_coeffs.iter().enumerate() {
            acc = acc.sub(&hp[i].scale(c))?;
        }
        Ok(acc.is_zero())
    }

    /// Every coefficient is zero or homogeneous of the degree its weight
    /// dictates (`wt(e) = 2`, `wt(H) = 2`, `wt(P2) = 4`).
    pub fn is_weight_homogeneous(&self) -> bool {
        let ok = |p: &Poly, deg: Option<usize>| {
            p.is_zero() || (deg.is_some() && p.homogeneous_degree() == deg.map(|d| d as u32))
        };
        self.p_coeffs
            .iter()
            .enumerate()
            .all(|(j, a)| ok(a, Some(self.shape.p_coeff_degree(j + 1))))
            && self
                .h_coeffs
                .iter()
                .enumerate()
                .all(|(i, c)| ok(c, self.shape.h_coeff_degree(i)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms()
            .into_iter()
            .map(|((i, j), c)| json!({"h_power": i, "p2_power": j, "coefficient": c}))
            .collect();
        let mut v = json!({
            "kind": self.kind,
            "domain": self.domain,
            "shape": self.shape,
            "c": self.h_coeffs,
            "terms": terms,
        });
        if let Some(d0) = self.d0() {
            v["d0"] = json!(d0);
        }
        v
    }
}

/// Sample points for interpolating polynomials of total degree `<= k`:
/// a triangular grid `(x_a, y_b)`, `a + b <= k`, avoiding `e_i` collisions.
fn sample_grid(k: usize, offset: usize) -> Vec<(BigRational, BigRational)> {
    let mut pts = Vec::new();
    for a in 0..=k {
        for b in 0..=k - a {
            let x = BigRational::from_integer((a + 2 + offset * (k + 1)).into());
            let y = rat(1, (b + 2 + offset) as i64);
            pts.push((x, y));
        }
    }
    pts
}

fn grid_monomials(k: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    for i in 0..=k {
        for j in 0..=k - i {
            out.push(Mono([0, 0, i as u32, j as u32]));
        }
    }
    out
}

fn vectorize(m: &QMatrix) -> impl Iterator<Item = &BigRational> {
    m.iter().flatten()
}

enum PointSolve {
    Values(Vec<BigRational>),
    Ambiguous(usize),
}

/// Solves for `(alpha_1..alpha_{J-1}, c_0..c_I)` at one rational point.
fn solve_at(
    h: &OpMatrix,
    p2: &OpMatrix,
    shape: RelationShape,
    e2: &BigRational,
    e3: &BigRational,
) -> Result<PointSolve> {
    let hq = h.specialize(e2, e3)?;
    let pq = p2.specialize(e2, e3)?;
    let hp = q_powers(&hq, shape.h_degree);
    let pp = q_powers(&pq, shape.p_degree);
    let mut columns: Vec<Vec<BigRational>> = Vec::new();
    for m in &pp[1..shape.p_degree] {
        columns.push(vectorize(m).cloned().collect());
    }
    for m in &hp {
        columns.push(vectorize(m).map(|x| -x).collect());
    }
    let rhs: Vec<BigRational> = vectorize(&pp[shape.p_degree]).map(|x| -x).collect();
    let rows = rhs.len();
    let a: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    match solve(&a, &rhs) {
        Solution::Unique(x) => Ok(PointSolve::Values(x)),
        Solution::Underdetermined { nullity } => Ok(PointSolve::Ambiguous(nullity)),
        Solution::Inconsistent => Err(Error::NoRelation(format!(
            "P2^{} is not a combination of lower terms of shape ({}, {}) at (e2, e3) = ({}, {})",
            shape.p_degree,
            shape.h_degree,
            shape.p_degree,
            crate::poly::fmt_rational(e2),
            crate::poly::fmt_rational(e3)
        ))),
    }
}

fn prepare(h: &OpMatrix, p2: &OpMatrix, domain: EDomain) -> Result<(OpMatrix, OpMatrix)> {
    if h.dim() != p2.dim() {
        return Err(Error::DimensionMismatch(h.dim(), p2.dim()));
    }
    Ok(match domain {
        EDomain::Plane => (h.clone(), p2.clone()),
        EDomain::Line => (h.restrict_to_line(), p2.restrict_to_line()),
    })
}

/// Fits a relation of the given shape. Fails with `AmbiguousRelation` when the
/// lower terms are linearly dependent and with `NoRelation` when none exists.
pub fn fit_relation_shape(
    h: &OpMatrix,
    p2: &OpMatrix,
    shape: RelationShape,
    domain: EDomain,
) -> Result<RelationCoefficients> {
    if shape.p_degree == 0 {
        return Err(Error::InvalidArgument("relation must involve P2".into()));
    }
    let (h, p2) = prepare(h, p2, domain)?;
    let max_degree = (1..shape.p_degree)
        .map(|j| shape.p_coeff_degree(j))
        .chain((0..=shape.h_degree).map(|i| shape.h_coeff_degree(i).unwrap_or(0)))
        .max()
        .unwrap_or(0);
    let monomials = grid_monomials(max_degree);

    let mut last_nullity = 0;
    for offset in 0..6 {
        let points = sample_grid(max_degree, offset);
        let mut values: Vec<Vec<BigRational>> = Vec::with_capacity(points.len());
        let mut degenerate = false;
        for (e2, e3) in &points {
            match solve_at(&h, &p2, shape, e2, e3)? {
                PointSolve::Values(v) => values.push(v),
                PointSolve::Ambiguous(n) => {
                    last_nullity = n;
                    degenerate = true;
                    break;
                }
            }
        }
        if degenerate {
            continue;
        }
        // Interpolation matrix: rows = points, columns = e-monomials.
        let vander: Vec<Vec<BigRational>> = points
            .iter()
            .map(|(x, y)| {
                monomials
                    .iter()
                    .map(|m| {
                        num_traits::pow(x.clone(), m.0[2] as usize)
                            * num_traits::pow(y.clone(), m.0[3] as usize)
                    })
                    .collect()
            })
            .collect();
        let unknowns = values[0].len();
        let mut coeffs = Vec::with_capacity(unknowns);
        for u in 0..unknowns {
            let rhs: Vec<BigRational> = values.iter().map(|v| v[u].clone()).collect();
            let Solution::Unique(a) = solve(&vander, &rhs) else {
                return Err(Error::InvalidArgument(
                    "interpolation grid is singular".into(),
                ));
            };
            let mut p = Poly::zero();
            for (m, c) in monomials.iter().zip(a) {
                p += &Poly::monomial(c, *m);
            }
            if domain == EDomain::Line {
                p = p.substitute(Var::E2, &-Poly::var(Var::E3));
            }
            coeffs.push(p);
        }
        let h_coeffs = coeffs.split_off(shape.p_degree - 1);
        let rel = RelationCoefficients {
            kind: RelationKind::General,
            shape,
            domain,
            p_coeffs: coeffs,
            h_coeffs,
        };
        if !rel.holds_for(&h, &p2)? {
            return Err(Error::NoRelation(
                "interpolated coefficients do not satisfy the symbolic identity".into(),
            ));
        }
        return Ok(rel);
    }
    Err(Error::AmbiguousRelation {
        nullity: last_nullity,
    })
}

/// `P2 = c2 H^2 + c1 H + c0` on `V_1`, or
/// `P2^2 + d0 P2 = c4 H^4 + ... + c0` on `V_2`.
pub fn fit_relation(
    h: &OpMatrix,
    p2: &OpMatrix,
    d: u32,
    domain: EDomain,
) -> Result<RelationCoefficients> {
    let (shape, kind) = match d {
        1 => (
            RelationShape {
                h_degree: 2,
                p_degree: 1,
            },
            RelationKind::D1Relation,
        ),
        2 => (
            RelationShape {
                h_degree: 4,
                p_degree: 2,
            },
            RelationKind::D2Relation,
        ),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "fit_relation supports d = 1 or 2, got {d}"
            )))
        }
    };
    let mut rel = fit_relation_shape(h, p2, shape, domain)?;
    rel.kind = kind;
    Ok(rel)
}

/// Whether `P2^J` lies in the span of the lower terms at a point.
fn shape_admits_relation(
    h: &OpMatrix,
    p2: &OpMatrix,
    shape: RelationShape,
    e2: &BigRational,
    e3: &BigRational,
) -> Result<bool> {
    let hq = h.specialize(e2, e3)?;
    let pq = p2.specialize(e2, e3)?;
    let mut rows: Vec<Vec<BigRational>> = q_powers(&hq, shape.h_degree)
        .iter()
        .map(|m| vectorize(m).cloned().collect())
        .collect();
    let pp = q_powers(&pq, shape.p_degree);
    for m in &pp[1..shape.p_degree] {
        rows.push(vectorize(m).cloned().collect());
    }
    let r = rank(&rows);
    rows.push(vectorize(&pp[shape.p_degree]).cloned().collect());
    Ok(rank(&rows) == r)
}

/// The separated relation of least weighted degree (`wt(H) = 1`,
/// `wt(P2) = 2`) within `h_degree <= max.0`, `p_degree <= max.1`; ties go to
/// the lower power of `P2`, then of `H`.
pub fn find_minimal_relation(
    h: &OpMatrix,
    p2: &OpMatrix,
    max_bidegree: (usize, usize),
    domain: EDomain,
) -> Result<RelationCoefficients> {
    let (hr, pr) = prepare(h, p2, domain)?;
    let mut shapes: Vec<RelationShape> = (1..=max_bidegree.1)
        .flat_map(|j| {
            (0..=max_bidegree.0).map(move |i| RelationShape {
                h_degree: i,
                p_degree: j,
            })
        })
        .collect();
    shapes.sort_by_key(|s| (s.weight(), s.p_degree, s.h_degree));
    let probes = sample_grid(1, 0);
    for shape in shapes {
        let mut admits = true;
        for (e2, e3) in probes.iter().take(2) {
            if !shape_admits_relation(&hr, &pr, shape, e2, e3)? {
                admits = false;
                break;
            }
        }
        if admits {
            return fit_relation_shape(h, p2, shape, domain);
        }
    }
    Err(Error::NoRelation(format!(
        "no relation with H-degree <= {} and P2-degree <= {}",
        max_bidegree.0, max_bidegree.1
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn diag(v: &[i64]) -> OpMatrix {
        let rows: QMatrix = (0..v.len())
            .map(|i| {
                (0..v.len())
                    .map(|j| if i == j { int(v[i]) } else { int(0) })
                    .collect()
            })
            .collect();
        OpMatrix::from_rational(&rows).unwrap()
    }

    #[test]
    fn synthetic_square_relation() {
        let rel = fit_relation(&diag(&[1, 2, 3]), &diag(&[1, 4, 9]), 1, EDomain::Plane).unwrap();
        assert_eq!(rel.c(2), &Poly::one());
        assert!(rel.c(1).is_zero());
        assert!(rel.c(0).is_zero());
    }

    #[test]
    fn underdetermined_is_ambiguous() {
        // On a 2-dimensional space 1, H, H^2 are dependent.
        let err = fit_relation(&diag(&[1, 2]), &diag(&[1, 4]), 1, EDomain::Plane).unwrap_err();
        assert_eq!(err, Error::AmbiguousRelation { nullity: 1 });
    }

    #[test]
    fn missing_relation_is_reported() {
        // P2 separates the first two eigenvectors, H does not.
        let err = fit_relation_shape(
            &diag(&[1, 1, 2]),
            &diag(&[1, 2, 2]),
            RelationShape {
                h_degree: 1,
                p_degree: 1,
            },
            EDomain::Plane,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoRelation(_)));
    }

    #[test]
    fn minimal_relation_of_identities() {
        let i3 = diag(&[1, 1, 1]);
        let rel = find_minimal_relation(&i3, &i3, (1, 1), EDomain::Plane).unwrap();
        assert_eq!(
            rel.shape,
            RelationShape {
                h_degree: 0,
                p_degree: 1
            }
        );
        assert_eq!(
            rel.terms(),
            vec![((0, 1), Poly::one()), ((0, 0), Poly::from_int(-1))]
        );
    }

    #[test]
    fn minimal_relation_respects_bound() {
        let err =
            find_minimal_relation(&diag(&[1, 2, 3]), &diag(&[1, 4, 9]), (1, 1), EDomain::Plane)
                .unwrap_err();
        assert!(matches!(err, Error::NoRelation(_)));
        let rel =
            find_minimal_relation(&diag(&[1, 2, 3]), &diag(&[1, 4, 9]), (2, 1), EDomain::Plane)
                .unwrap();
        assert_eq!(
            rel.shape,
            RelationShape {
                h_degree: 2,
                p_degree: 1
            }
        );
    }
}

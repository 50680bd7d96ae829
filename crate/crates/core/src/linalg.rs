//! Gaussian elimination over `Q`.

use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    Inconsistent,
    Underdetermined { nullity: usize },
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// Solves `a x = b` for `a` with any number of rows.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Solution {
    let unknowns = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&unknowns) {
        return Solution::Inconsistent;
    }
    if pivots.len() < unknowns {
        return Solution::Underdetermined {
            nullity: unknowns - pivots.len(),
        };
    }
    Solution::Unique((0..unknowns).map(|i| aug[i][unknowns].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn unique_inconsistent_underdetermined() {
        let a = q(&[&[2, 1], &[1, 3], &[3, 4]]);
        assert_eq!(
            solve(&a, &[int(3), int(4), int(7)]),
            Solution::Unique(vec![int(1), int(1)])
        );
        assert_eq!(solve(&a, &[int(3), int(4), int(8)]), Solution::Inconsistent);
        let b = q(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            solve(&b, &[int(1), int(2)]),
            Solution::Underdetermined { nullity: 1 }
        );
        assert_eq!(rank(&b), 1);
    }
}

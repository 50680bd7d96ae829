//! The gauge-transformed BC2 operators `H` (second order) and `P2` (fourth
//! order) as explicit differential operators in `z1`, `z2`.
//!
//! Coefficients are assembled from factored pieces (`c(z)`, `b(z)`, `q(x, y)`)
//! whose denominator atoms carry signed exponents, so the `c(z)/c(z)`
//! cancellations happen by exponent arithmetic and never by division. Only
//! powers of `z1 - z2` survive as denominators in the built operators.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{int, rat, Atom, Poly, ZVar};

/// Gauge exponents `a`, `b0..b3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentParams {
    pub a: BigRational,
    pub b: [BigRational; 4],
}

impl ExponentParams {
    pub fn new(
        a: BigRational,
        b0: BigRational,
        b1: BigRational,
        b2: BigRational,
        b3: BigRational,
    ) -> Self {
        ExponentParams {
            a,
            b: [b0, b1, b2, b3],
        }
    }

    /// Small-integer shorthand.
    pub fn from_ints(a: i64, b0: i64, b1: i64, b2: i64, b3: i64) -> Self {
        ExponentParams::new(int(a), int(b0), int(b1), int(b2), int(b3))
    }

    /// `d = -(a + b0 + b1 + b2 + b3)`.
    pub fn d(&self) -> BigRational {
        -(&self.a + self.b_tilde())
    }

    /// `d` when it is a nonnegative integer.
    pub fn integral_d(&self) -> Option<u32> {
        let d = self.d();
        if d.is_integer() && d >= BigRational::zero() {
            d.to_integer().try_into().ok()
        } else {
            None
        }
    }

    /// `b0 + b1 + b2 + b3`.
    pub fn b_tilde(&self) -> BigRational {
        self.b.iter().cloned().sum()
    }

    /// `-b0 + b1 + b2 + b3 + 1/2`.
    pub fn b_tilde_prime(&self) -> BigRational {
        &self.b[1] + &self.b[2] + &self.b[3] - &self.b[0] + rat(1, 2)
    }

    pub fn derived(&self) -> DerivedConstants {
        let [_, b1, b2, b3] = &self.b;
        let sq = |x: BigRational| Poly::constant(&x * &x);
        let d1 =
            (&sq(b1 + b2) * &Poly::e(3) + &sq(b1 + b3) * &Poly::e(2) + &sq(b2 + b3) * &Poly::e(1))
                .scalar_mul(&int(4));
        let d2 = (&(&Poly::e(1).scalar_mul(b1) + &Poly::e(2).scalar_mul(b2))
            + &Poly::e(3).scalar_mul(b3))
            .scalar_mul(&(int(-8) * &self.a));
        DerivedConstants {
            b_tilde: self.b_tilde(),
            b_tilde_prime: self.b_tilde_prime(),
            d1,
            d2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchA {
    MinusL,
    LPlusOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchB {
    MinusHalfL,
    HalfLPlusOne,
}

/// Coupling constants of the elliptic Hamiltonian plus the choice of root
/// for each gauge exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingParams {
    pub l: BigRational,
    pub li: [BigRational; 4],
    pub branch_a: BranchA,
    pub branch_b: [BranchB; 4],
}

impl CouplingParams {
    pub fn to_exponents(&self) -> ExponentParams {
        let a = match self.branch_a {
            BranchA::MinusL => -self.l.clone(),
            BranchA::LPlusOne => &self.l + BigRational::one(),
        };
        let half = rat(1, 2);
        let b = std::array::from_fn(|i| {
            let li = &self.li[i];
            match self.branch_b[i] {
                BranchB::MinusHalfL => -(li * &half),
                BranchB::HalfLPlusOne => (li + BigRational::one()) * &half,
            }
        });
        ExponentParams { a, b }
    }
}

/// `b~`, `b~'`, `d1`, `d2` with `e1` eliminated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedConstants {
    pub b_tilde: BigRational,
    pub b_tilde_prime: BigRational,
    pub d1: Poly,
    pub d2: Poly,
}

/// One summand `num / prod(denom) * d^a1/dz1^a1 d^a2/dz2^a2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTerm {
    pub num: Poly,
    pub denom: BTreeMap<Atom, u32>,
    pub deriv: (u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOperator {
    terms: Vec<OpTerm>,
}

#[derive(Serialize)]
struct TermDump {
    num: Poly,
    denom: Vec<String>,
    deriv: [u32; 2],
}

impl DiffOperator {
    pub fn terms(&self) -> &[OpTerm] {
        &self.terms
    }

    pub fn order(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.deriv.0 + t.deriv.1)
            .max()
            .unwrap_or(0)
    }

    /// The numerator of the `d^a1 d^a2` term with no denominator, if any.
    pub fn coefficient(&self, deriv: (u32, u32)) -> Vec<&OpTerm> {
        self.terms.iter().filter(|t| t.deriv == deriv).collect()
    }

    /// JSON list of terms; atoms repeated by multiplicity.
    pub fn to_json(&self) -> serde_json::Value {
        let dump: Vec<TermDump> = self
            .terms
            .iter()
            .map(|t| TermDump {
                num: t.num.clone(),
                denom: t
                    .denom
                    .iter()
                    .flat_map(|(a, k)| std::iter::repeat_n(a.to_string(), *k as usize))
                    .collect(),
                deriv: [t.deriv.0, t.deriv.1],
            })
            .collect();
        serde_json::to_value(dump).expect("operator dump serializes")
    }

    /// Applies the operator to `f` over the least common denominator, then
    /// divides the accumulated numerator by each atom exactly.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        let mut lcd: BTreeMap<Atom, u32> = BTreeMap::new();
        for t in &self.terms {
            for (a, k) in &t.denom {
                let e = lcd.entry(*a).or_insert(0);
                *e = (*e).max(*k);
            }
        }
        let mut derivs: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
        let mut total = Poly::zero();
        for t in &self.terms {
            let df = derivs
                .entry(t.deriv)
                .or_insert_with(|| f.derivative(t.deriv.0, t.deriv.1));
            if df.is_zero() {
                continue;
            }
            let mut g = &t.num * df;
            for (a, k) in &lcd {
                let have = t.denom.get(a).copied().unwrap_or(0);
                if *k > have {
                    g = &g * &a.as_poly().powu(k - have);
                }
            }
            total += &g;
        }
        for (a, k) in &lcd {
            total = total
                .exact_divide_atom(*a, *k)
                .map_err(|e| Error::NonPolynomial {
                    source: Box::new(e),
                })?;
        }
        Ok(total)
    }

    /// Applies the operator to several inputs in parallel; order is preserved.
    pub fn apply_many(&self, fs: &[Poly]) -> Vec<Result<Poly>> {
        fs.par_iter().map(|f| self.apply(f)).collect()
    }
}

/// `num * prod(atom^k)` with signed exponents.
#[derive(Debug, Clone)]
struct Factored {
    num: Poly,
    atoms: BTreeMap<Atom, i32>,
}

impl Factored {
    fn scalar(c: BigRational) -> Factored {
        Factored::poly(Poly::constant(c))
    }

    fn poly(num: Poly) -> Factored {
        Factored {
            num,
            atoms: BTreeMap::new(),
        }
    }

    fn atom(c: BigRational, atom: Atom, k: i32) -> Factored {
        Factored {
            num: Poly::constant(c),
            atoms: BTreeMap::from([(atom, k)]),
        }
    }

    fn mul(&self, other: &Factored) -> Factored {
        let mut atoms = self.atoms.clone();
        for (a, k) in &other.atoms {
            let e = atoms.entry(*a).or_insert(0);
            *e += k;
            if *e == 0 {
                atoms.remove(a);
            }
        }
        Factored {
            num: &self.num * &other.num,
            atoms,
        }
    }
}

/// A sum of factored terms.
#[derive(Debug, Clone, Default)]
struct Coeff(Vec<Factored>);

impl Coeff {
    fn from(f: Factored) -> Coeff {
        Coeff(vec![f])
    }

    fn scalar(c: BigRational) -> Coeff {
        Coeff::from(Factored::scalar(c))
    }

    fn add(&self, other: &Coeff) -> Coeff {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Coeff(v)
    }

    fn mul(&self, other: &Coeff) -> Coeff {
        let mut v = Vec::with_capacity(self.0.len() * other.0.len());
        for x in &self.0 {
            for y in &other.0 {
                v.push(x.mul(y));
            }
        }
        Coeff(v)
    }

    fn scale(&self, c: &BigRational) -> Coeff {
        Coeff(
            self.0
                .iter()
                .map(|f| Factored {
                    num: f.num.scalar_mul(c),
                    atoms: f.atoms.clone(),
                })
                .collect(),
        )
    }
}

/// Denominator atoms and derivative orders of one operator term.
type TermKey = (BTreeMap<Atom, u32>, (u32, u32));

struct Builder<'a> {
    p: &'a ExponentParams,
    k: DerivedConstants,
    terms: BTreeMap<TermKey, Poly>,
}

impl<'a> Builder<'a> {
    fn new(p: &'a ExponentParams) -> Self {
        Builder {
            p,
            k: p.derived(),
            terms: BTreeMap::new(),
        }
    }

    /// `c(z) = 4 (z - e1)(z - e2)(z - e3)`.
    fn c(&self, z: ZVar) -> Coeff {
        let mut f = Factored::scalar(int(4));
        for i in 1..=3 {
            f = f.mul(&Factored::atom(
                BigRational::one(),
                Atom::z_minus_e(z, i),
                1,
            ));
        }
        Coeff::from(f)
    }

    /// `1 / c(z)`.
    fn c_inv(&self, z: ZVar) -> Coeff {
        let mut f = Factored::scalar(rat(1, 4));
        for i in 1..=3 {
            f = f.mul(&Factored::atom(
                BigRational::one(),
                Atom::z_minus_e(z, i),
                -1,
            ));
        }
        Coeff::from(f)
    }

    /// `b(z) = sum_i (2 b_i + 1/2) / (z - e_i)`.
    fn b(&self, z: ZVar) -> Coeff {
        Coeff(
            (1..=3u8)
                .map(|i| {
                    let c = int(2) * &self.p.b[i as usize] + rat(1, 2);
                    Factored::atom(c, Atom::z_minus_e(z, i), -1)
                })
                .collect(),
        )
    }

    /// `c / (zj - zk)^n`.
    fn over_diff(&self, c: BigRational, j: ZVar, n: i32) -> Coeff {
        // (z2 - z1)^-n = (-1)^n (z1 - z2)^-n
        let sign = if j == ZVar::Z2 && n % 2 != 0 { -c } else { c };
        Coeff::from(Factored::atom(sign, Atom::ZDiff, -n))
    }

    /// `2a / (zj - zk) + b(zj)`.
    fn w(&self, j: ZVar) -> Coeff {
        self.over_diff(int(2) * &self.p.a, j, 1).add(&self.b(j))
    }

    /// `q(x, y) = a/(y - x) ((a - 1)/(y - x) + b(y)) + (4 b~ b~' y - d1) / c(y)`.
    fn q(&self, x: ZVar) -> Coeff {
        let y = x.other();
        let a = &self.p.a;
        let inner = self.over_diff(a - BigRational::one(), y, 1).add(&self.b(y));
        let first = self.over_diff(a.clone(), y, 1).mul(&inner);
        let lin = &Poly::z(y).scalar_mul(&(int(4) * &self.k.b_tilde * &self.k.b_tilde_prime))
            - &self.k.d1;
        let second = Coeff::from(Factored::poly(lin)).mul(&self.c_inv(y));
        first.add(&second)
    }

    fn push(&mut self, coeff: &Coeff, deriv: (u32, u32)) {
        for f in &coeff.0 {
            let mut num = f.num.clone();
            let mut denom = BTreeMap::new();
            for (a, k) in &f.atoms {
                if *k > 0 {
                    num = &num * &a.as_poly().powu(*k as u32);
                } else {
                    denom.insert(*a, (-*k) as u32);
                }
            }
            if num.is_zero() {
                continue;
            }
            *self.terms.entry((denom, deriv)).or_default() += &num;
        }
    }

    fn finish(self) -> DiffOperator {
        DiffOperator {
            terms: self
                .terms
                .into_iter()
                .filter(|(_, num)| !num.is_zero())
                .map(|((denom, deriv), num)| OpTerm { num, denom, deriv })
                .collect(),
        }
    }

    /// `4 (a + b~)(a + b~')`.
    fn lead_const(&self) -> BigRational {
        int(4) * (&self.p.a + &self.k.b_tilde) * (&self.p.a + &self.k.b_tilde_prime)
    }
}

fn d(var: ZVar, n: u32) -> (u32, u32) {
    match var {
        ZVar::Z1 => (n, 0),
        ZVar::Z2 => (0, n),
    }
}

/// The transformed Hamiltonian
/// `-sum_j c(zj) (d_j^2 + (2a/(zj - zk) + b(zj)) d_j) - 4(a + b~)(a + b~')(z1 + z2) + 2 d1 + d2`.
pub fn build_h_hat(p: &ExponentParams) -> DiffOperator {
    let mut bld = Builder::new(p);
    for j in [ZVar::Z1, ZVar::Z2] {
        let minus_c = bld.c(j).scale(&int(-1));
        bld.push(&minus_c, d(j, 2));
        let first = minus_c.mul(&bld.w(j));
        bld.push(&first, d(j, 1));
    }
    let z_sum = &Poly::z(ZVar::Z1) + &Poly::z(ZVar::Z2);
    let zeroth =
        &(&z_sum.scalar_mul(&-bld.lead_const()) + &bld.k.d1.scalar_mul(&int(2))) + &bld.k.d2;
    bld.push(&Coeff::from(Factored::poly(zeroth)), (0, 0));
    bld.finish()
}

/// The transformed second commuting operator, normalized so that
/// `(P2 . 1)(0, 0) = 0`.
pub fn build_p2_hat(p: &ExponentParams) -> DiffOperator {
    let mut bld = Builder::new(p);
    let (z1, z2) = (ZVar::Z1, ZVar::Z2);
    let a = p.a.clone();
    let a_a1 = &a * (&a + BigRational::one());
    let cc = bld.c(z1).mul(&bld.c(z2));
    let w1 = bld.w(z1);
    let w2 = bld.w(z2);
    let q12 = bld.q(z1);
    let q21 = bld.q(z2);

    let mut bracket: Vec<(Coeff, (u32, u32))> = vec![
        (Coeff::scalar(BigRational::one()), (2, 2)),
        (w2.clone(), (2, 1)),
        (w1.clone(), (1, 2)),
        (q12.clone(), (2, 0)),
        (q21.clone(), (0, 2)),
    ];
    // (w1 w2 + 2a(a+1)/(z1 - z2)^2) d1 d2
    let mixed = w1.mul(&w2).add(&bld.over_diff(int(2) * &a_a1, z1, 2));
    bracket.push((mixed, (1, 1)));
    // a(a+1)/(zk - zj)^2 (2(a-1)/(zk - zj) + b(zk)) + w_j q(zj, zk), for d_j
    for (j, wj, qj) in [(z1, &w1, &q12), (z2, &w2, &q21)] {
        let k = j.other();
        let inner = bld
            .over_diff(int(2) * (&a - BigRational::one()), k, 1)
            .add(&bld.b(k));
        let first = bld.over_diff(a_a1.clone(), k, 2).mul(&inner);
        bracket.push((first.add(&wj.mul(qj)), d(j, 1)));
    }
    for (coeff, deriv) in &bracket {
        let full = cc.mul(coeff);
        bld.push(&full, *deriv);
    }

    let k = &bld.k;
    let z_prod = &Poly::z(z1) * &Poly::z(z2);
    let z_sum = &Poly::z(z1) + &Poly::z(z2);
    let inner = &z_prod.scalar_mul(&(int(4) * &k.b_tilde * &k.b_tilde_prime)) - &(&k.d1 * &z_sum);
    let zeroth = inner.scalar_mul(&bld.lead_const());
    bld.push(&Coeff::from(Factored::poly(zeroth)), (0, 0));
    bld.finish()
}

/// Exchanges `z1` and `z2`.
pub fn swap_z(f: &Poly) -> Poly {
    f.swap_z()
}

pub fn is_symmetric(f: &Poly) -> bool {
    f.is_symmetric()
}

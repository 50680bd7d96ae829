//! Sparse polynomials in `Q[z1, z2, e2, e3]`.
//!
//! The half-period value `e1` never appears in a stored polynomial: every
//! constructor that mentions it substitutes `e1 = -e2 - e3`. Terms are kept in
//! a `BTreeMap` keyed by graded-lex monomials (`z1 > z2 > e2 > e3`), so equal
//! polynomials have identical representations and print identically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of indeterminates: z1, z2, e2, e3.
pub const NVARS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z1,
    Z2,
    E2,
    E3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Z1, Var::Z2, Var::E2, Var::E3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::E2 => "e2",
            Var::E3 => "e3",
        }
    }
}

/// The two particle coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZVar {
    Z1,
    Z2,
}

impl ZVar {
    pub fn var(self) -> Var {
        match self {
            ZVar::Z1 => Var::Z1,
            ZVar::Z2 => Var::Z2,
        }
    }

    pub fn other(self) -> ZVar {
        match self {
            ZVar::Z1 => ZVar::Z2,
            ZVar::Z2 => ZVar::Z1,
        }
    }
}

/// A monic linear denominator factor: `z1 - z2` or `z_j - e_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    ZDiff,
    ZMinusE { z: ZVar, e: u8 },
}

impl Atom {
    /// `z_j - e_i` for `i` in 1..=3.
    pub fn z_minus_e(z: ZVar, e: u8) -> Atom {
        assert!((1..=3).contains(&e), "half-period index out of range: {e}");
        Atom::ZMinusE { z, e }
    }

    /// The variable in which the atom is monic of degree one.
    pub fn variable(self) -> ZVar {
        match self {
            Atom::ZDiff => ZVar::Z1,
            Atom::ZMinusE { z, .. } => z,
        }
    }

    /// `r` such that the atom equals `variable - r`.
    pub fn root(self) -> Poly {
        match self {
            Atom::ZDiff => Poly::var(Var::Z2),
            Atom::ZMinusE { e, .. } => Poly::e(e),
        }
    }

    pub fn as_poly(self) -> Poly {
        &Poly::var(self.variable().var()) - &self.root()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::ZDiff => write!(f, "(z1-z2)"),
            Atom::ZMinusE { z, e } => {
                let zn = z.var().name();
                match e {
                    1 => write!(f, "({zn}+e2+e3)"),
                    _ => write!(f, "({zn}-e{e})"),
                }
            }
        }
    }
}

/// Exponent vector `(z1, z2, e2, e3)`, ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u32; NVARS]);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn is_z_free(&self) -> bool {
        self.0[0] == 0 && self.0[1] == 0
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut out = self.0;
        for (o, x) in out.iter_mut().zip(other.0) {
            *o += x;
        }
        Mono(out)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Prints `p/q`, or `p` when `q = 1`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational `p/q`: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Poly {
        Poly::monomial(c, Mono::default())
    }

    pub fn from_int(n: i64) -> Poly {
        Poly::constant(int(n))
    }

    pub fn monomial(c: BigRational, m: Mono) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Poly {
        let mut m = Mono::default();
        m.0[v.index()] = 1;
        Poly::monomial(BigRational::one(), m)
    }

    /// `e_i` for `i` in 1..=3, with `e1` expanded as `-e2 - e3`.
    pub fn e(i: u8) -> Poly {
        match i {
            1 => -(&Poly::var(Var::E2) + &Poly::var(Var::E3)),
            2 => Poly::var(Var::E2),
            3 => Poly::var(Var::E3),
            _ => panic!("half-period index out of range: {i}"),
        }
    }

    pub fn z(v: ZVar) -> Poly {
        Poly::var(v.var())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a polynomial with no variables.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn is_z_free(&self) -> bool {
        self.terms.keys().all(Mono::is_z_free)
    }

    /// The common total degree of all terms, if the polynomial is homogeneous.
    /// `None` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Mono::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scalar_mul(&self, s: &BigRational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    /// `self^k`; negative exponents are rejected.
    pub fn pow(&self, k: i64) -> Result<Poly> {
        if k < 0 {
            return Err(Error::InvalidArgument(format!(
                "negative polynomial exponent {k}"
            )));
        }
        Ok(self.powu(k as u32))
    }

    pub fn powu(&self, k: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn differentiate(&self, v: ZVar) -> Poly {
        let idx = v.var().index();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let k = m.0[idx];
            if k == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[idx] -= 1;
            out.add_term(dm, c * BigInt::from(k));
        }
        out
    }

    /// Applies `d^a1/dz1^a1 d^a2/dz2^a2`.
    pub fn derivative(&self, a1: u32, a2: u32) -> Poly {
        let mut p = self.clone();
        for _ in 0..a1 {
            p = p.differentiate(ZVar::Z1);
        }
        for _ in 0..a2 {
            p = p.differentiate(ZVar::Z2);
        }
        p
    }

    /// Coefficients of the powers of `v`: `self = sum_k out[k] * v^k`.
    pub fn split_by(&self, v: Var) -> Vec<Poly> {
        let idx = v.index();
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.0[idx] as usize;
            let mut rest = *m;
            rest.0[idx] = 0;
            out[k].add_term(rest, c.clone());
        }
        out
    }

    /// Divides by `atom^multiplicity` exactly, using synthetic division in the
    /// atom's leading variable. Fails on any nonzero remainder.
    pub fn exact_divide_atom(&self, atom: Atom, multiplicity: u32) -> Result<Poly> {
        let v = atom.variable().var();
        let root = atom.root();
        let mut p = self.clone();
        for _ in 0..multiplicity {
            if p.is_zero() {
                return Ok(p);
            }
            let coeffs = p.split_by(v);
            let n = coeffs.len() - 1;
            if n == 0 {
                return Err(Error::NonDivisible { atom, multiplicity });
            }
            // Horner: q_{k-1} = c_k + r q_k, remainder = c_0 + r q_0.
            let mut quotient = vec![Poly::zero(); n];
            let mut carry = Poly::zero();
            for k in (1..=n).rev() {
                carry = &coeffs[k] + &(&root * &carry);
                quotient[k - 1] = carry.clone();
            }
            let rem = &coeffs[0] + &(&root * &carry);
            if !rem.is_zero() {
                return Err(Error::NonDivisible { atom, multiplicity });
            }
            p = Poly::from_powers(v, quotient);
        }
        Ok(p)
    }

    fn from_powers(v: Var, coeffs: Vec<Poly>) -> Poly {
        let idx = v.index();
        let mut out = Poly::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            for (m, q) in c.terms {
                let mut mm = m;
                mm.0[idx] += k as u32;
                out.add_term(mm, q);
            }
        }
        out
    }

    /// Substitutes `v := value` everywhere.
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        let idx = v.index();
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let k = m.0[idx] as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = *m;
            rest.0[idx] = 0;
            let term = Poly::monomial(c.clone(), rest);
            out += &(&term * &powers[k]);
        }
        out
    }

    /// Substitutes numeric values for `e2`, `e3`.
    pub fn specialize(&self, e2: &BigRational, e3: &BigRational) -> Poly {
        self.substitute(Var::E2, &Poly::constant(e2.clone()))
            .substitute(Var::E3, &Poly::constant(e3.clone()))
    }

    /// Evaluates at a full point `(z1, z2, e2, e3)`.
    pub fn eval(&self, point: [&BigRational; NVARS]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(m.0.iter()) {
                if k > 0 {
                    t *= num_traits::pow((*x).clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exchanges `z1` and `z2`.
    pub fn swap_z(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut s = *m;
                    s.0.swap(0, 1);
                    (s, c.clone())
                })
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.swap_z() == *self
    }

    /// Coefficient of `z1^m1 z2^m2`, as a polynomial in `e2`, `e3`.
    pub fn z_coefficient(&self, m1: u32, m2: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.0[0] == m1 && m.0[1] == m2 {
                out.add_term(Mono([0, 0, m.0[2], m.0[3]]), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let factors: Vec<String> = Var::ALL
                .iter()
                .filter(|v| m.exp(**v) > 0)
                .map(|v| match m.exp(*v) {
                    1 => v.name().to_string(),
                    k => format!("{}^{k}", v.name()),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&a), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Accepts the canonical form plus parentheses, `e1`, and integer powers.
    fn from_str(s: &str) -> Result<Poly> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at byte {} of {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.digits()?;
            let k: u32 = k.parse().map_err(|_| self.error("bad exponent"))?;
            return Ok(base.powu(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits()?.parse().unwrap();
                // `p/q` binds tighter than `*` only when directly followed by digits.
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let d: BigInt = self.digits()?.parse().unwrap();
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    return Ok(Poly::constant(BigRational::new(n, d)));
                }
                Ok(Poly::constant(BigRational::from_integer(n)))
            }
            Some(b'z') | Some(b'e') => {
                let kind = self.src[self.pos];
                self.pos += 1;
                let idx = self.src.get(self.pos).copied();
                self.pos += 1;
                match (kind, idx) {
                    (b'z', Some(b'1')) => Ok(Poly::var(Var::Z1)),
                    (b'z', Some(b'2')) => Ok(Poly::var(Var::Z2)),
                    (b'e', Some(b'1')) => Ok(Poly::e(1)),
                    (b'e', Some(b'2')) => Ok(Poly::e(2)),
                    (b'e', Some(b'3')) => Ok(Poly::e(3)),
                    _ => {
                        self.pos -= 1;
                        Err(self.error("unknown variable"))
                    }
                }
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl From<BigRational> for Poly {
    fn from(c: BigRational) -> Poly {
        Poly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("z1 - z2") * &p("z1 + z2"), p("z1^2 - z2^2"));
    }

    #[test]
    fn additive_identity() {
        let q = p("3/2*z1*e2 - 7");
        assert_eq!(&q + &Poly::zero(), q);
    }

    #[test]
    fn e1_is_eliminated() {
        assert_eq!(p("z1 - e1"), p("z1 + e2 + e3"));
        assert_eq!(p("e1 + e2 + e3"), Poly::zero());
        assert_eq!(Atom::z_minus_e(ZVar::Z1, 1).as_poly(), p("z1 + e2 + e3"));
    }

    #[test]
    fn negative_power_is_rejected() {
        assert!(matches!(p("z1").pow(-1), Err(Error::InvalidArgument(_))));
        assert_eq!(p("z1 + 1").pow(2).unwrap(), p("z1^2 + 2*z1 + 1"));
        assert_eq!(p("z1").pow(0).unwrap(), Poly::one());
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("z1^2*z2").differentiate(ZVar::Z1), p("2*z1*z2"));
        assert!(p("e2*z1").differentiate(ZVar::Z2).is_zero());
        assert_eq!(
            p("z1^3 - 3*e2*z1").differentiate(ZVar::Z1),
            p("3*z1^2 - 3*e2")
        );
    }

    #[test]
    fn atom_division() {
        let zd = Atom::ZDiff;
        assert_eq!(
            p("z1^2 - z2^2").exact_divide_atom(zd, 1).unwrap(),
            p("z1 + z2")
        );
        assert_eq!(
            p("(z1 - z2)^3").exact_divide_atom(zd, 3).unwrap(),
            Poly::one()
        );
        assert!(matches!(
            p("z1 + z2").exact_divide_atom(zd, 1),
            Err(Error::NonDivisible { .. })
        ));
        let a = Atom::z_minus_e(ZVar::Z2, 1);
        let q = p("z2^2*e3 + z1 - 5/3");
        assert_eq!((&a.as_poly() * &q).exact_divide_atom(a, 1).unwrap(), q);
        assert!(Poly::zero().exact_divide_atom(zd, 2).unwrap().is_zero());
    }

    #[test]
    fn specialization() {
        assert_eq!(
            p("40*e2 - 80*e3").specialize(&int(1), &int(0)),
            Poly::from_int(40)
        );
        assert!(p("e2 + e3").specialize(&int(1), &int(-1)).is_zero());
        assert_eq!(
            p("44*e2^2 - 500*e2*e3 + 380*e3^2").specialize(&int(1), &int(1)),
            Poly::from_int(-76)
        );
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("z2 - z1").to_string(), "-z1 + z2");
        assert_eq!(
            p("3/2*e2^2*z1 + 40*e3 - 32*e2").to_string(),
            "3/2*z1*e2^2 - 32*e2 + 40*e3"
        );
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p("-7/3").to_string(), "-7/3");
        let q = p("z1^2*z2 - 3/4*z1*e2*e3 + 2");
        assert_eq!(p(&q.to_string()), q);
    }

    #[test]
    fn parse_errors() {
        assert!("z3".parse::<Poly>().is_err());
        assert!("1/0".parse::<Poly>().is_err());
        assert!("(z1".parse::<Poly>().is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
    }

    #[test]
    fn swap_and_symmetry() {
        assert_eq!(p("z1^2*z2").swap_z(), p("z1*z2^2"));
        assert!(p("z1 + z2").is_symmetric());
        assert!(!p("z1 - z2").is_symmetric());
    }

    #[test]
    fn graded_lex_order() {
        let order: Vec<String> = p("e3 + z1 + z2^2 + e2*z1 + 1")
            .terms()
            .map(|(m, _)| format!("{:?}", m.0))
            .collect();
        assert_eq!(
            order,
            [
                "[1, 0, 1, 0]",
                "[0, 2, 0, 0]",
                "[1, 0, 0, 0]",
                "[0, 0, 0, 1]",
                "[0, 0, 0, 0]"
            ]
        );
    }
}

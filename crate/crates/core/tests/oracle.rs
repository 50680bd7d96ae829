//! Pointwise oracle: evaluates the explicit operator formulas with plain
//! rational arithmetic at sample points and compares with the built
//! operators applied symbolically.

use num_rational::BigRational;
use num_traits::{One, Zero};
use qes_core::poly::{int, rat};
use qes_core::{
    build_h_hat, build_p2_hat, char_poly, matrix_of, BasisVd, Error, ExponentParams, Poly,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

struct Point {
    z1: Q,
    z2: Q,
    e: [Q; 4], // e[1..=3], e[0] unused
}

impl Point {
    fn new(z1: Q, z2: Q, e2: Q, e3: Q) -> Point {
        let e1 = -(&e2 + &e3);
        Point {
            z1,
            z2,
            e: [Q::zero(), e1, e2, e3],
        }
    }
}

struct Formula<'a> {
    p: &'a ExponentParams,
    pt: &'a Point,
}

impl Formula<'_> {
    fn a(&self) -> Q {
        self.p.a.clone()
    }
    fn bt(&self) -> Q {
        self.p.b.iter().cloned().sum()
    }
    fn btp(&self) -> Q {
        -&self.p.b[0] + &self.p.b[1] + &self.p.b[2] + &self.p.b[3] + rat(1, 2)
    }
    fn d1(&self) -> Q {
        let b = &self.p.b;
        let e = &self.pt.e;
        let sq = |x: Q| &x * &x;
        int(4) * (sq(&b[1] + &b[2]) * &e[3] + sq(&b[1] + &b[3]) * &e[2] + sq(&b[2] + &b[3]) * &e[1])
    }
    fn d2(&self) -> Q {
        let b = &self.p.b;
        let e = &self.pt.e;
        int(-8) * self.a() * (&e[1] * &b[1] + &e[2] * &b[2] + &e[3] * &b[3])
    }
    fn c(&self, z: &Q) -> Q {
        let e = &self.pt.e;
        int(4) * (z - &e[1]) * (z - &e[2]) * (z - &e[3])
    }
    fn b(&self, z: &Q) -> Q {
        (1..=3)
            .map(|i| (int(2) * &self.p.b[i] + rat(1, 2)) / (z - &self.pt.e[i]))
            .sum()
    }
    fn q(&self, x: &Q, y: &Q) -> Q {
        let a = self.a();
        &a / (y - x) * ((&a - Q::one()) / (y - x) + self.b(y))
            + (int(4) * self.bt() * self.btp() * y - self.d1()) / self.c(y)
    }

    fn h(&self, f: &Poly) -> Q {
        let (z1, z2) = (&self.pt.z1, &self.pt.z2);
        let ev = |i, j| eval(&f.derivative(i, j), self.pt);
        let a = self.a();
        let w1 = int(2) * &a / (z1 - z2) + self.b(z1);
        let w2 = int(2) * &a / (z2 - z1) + self.b(z2);
        -self.c(z1) * (ev(2, 0) + w1 * ev(1, 0))
            - self.c(z2) * (ev(0, 2) + w2 * ev(0, 1))
            - int(4) * (&a + self.bt()) * (&a + self.btp()) * (z1 + z2) * ev(0, 0)
            + (int(2) * self.d1() + self.d2()) * ev(0, 0)
    }

    fn p2(&self, f: &Poly) -> Q {
        let (z1, z2) = (&self.pt.z1, &self.pt.z2);
        let ev = |i, j| eval(&f.derivative(i, j), self.pt);
        let a = self.a();
        let aa1 = &a * (&a + Q::one());
        let w1 = int(2) * &a / (z1 - z2) + self.b(z1);
        let w2 = int(2) * &a / (z2 - z1) + self.b(z2);
        let q12 = self.q(z1, z2);
        let q21 = self.q(z2, z1);
        let d12 = z1 - z2;
        let d21 = z2 - z1;
        let bracket = ev(2, 2)
            + &w2 * ev(2, 1)
            + &w1 * ev(1, 2)
            + &q12 * ev(2, 0)
            + &q21 * ev(0, 2)
            + (&w1 * &w2 + int(2) * &aa1 / (&d12 * &d12)) * ev(1, 1)
            + (&aa1 / (&d21 * &d21) * (int(2) * (&a - Q::one()) / &d21 + self.b(z2)) + &w1 * &q12)
                * ev(1, 0)
            + (&aa1 / (&d12 * &d12) * (int(2) * (&a - Q::one()) / &d12 + self.b(z1)) + &w2 * &q21)
                * ev(0, 1);
        self.c(z1) * self.c(z2) * bracket
            + int(4)
                * (&a + self.bt())
                * (&a + self.btp())
                * (int(4) * self.bt() * self.btp() * z1 * z2 - self.d1() * (z1 + z2))
                * ev(0, 0)
    }
}

fn eval(f: &Poly, pt: &Point) -> Q {
    f.eval([&pt.z1, &pt.z2, &pt.e[2], &pt.e[3]])
}

fn small_rat(rng: &mut ChaCha8Rng) -> Q {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=7))
}

fn random_point(rng: &mut ChaCha8Rng) -> Point {
    loop {
        let pt = Point::new(
            small_rat(rng),
            small_rat(rng),
            small_rat(rng),
            small_rat(rng),
        );
        let distinct = pt.z1 != pt.z2 && (1..=3).all(|i| pt.z1 != pt.e[i] && pt.z2 != pt.e[i]);
        if distinct {
            return pt;
        }
    }
}

fn random_params(rng: &mut ChaCha8Rng, d: Option<i64>) -> ExponentParams {
    let mut p = ExponentParams::new(
        small_rat(rng),
        small_rat(rng),
        small_rat(rng),
        small_rat(rng),
        small_rat(rng),
    );
    if let Some(d) = d {
        p.b[3] = -(int(d) + &p.a + &p.b[0] + &p.b[1] + &p.b[2]);
    }
    p
}

fn random_symmetric(rng: &mut ChaCha8Rng, deg: u32) -> Poly {
    let mut f = Poly::zero();
    for _ in 0..5 {
        let m = qes_core::poly::Mono([
            rng.gen_range(0..=deg),
            rng.gen_range(0..=deg),
            rng.gen_range(0..=1),
            rng.gen_range(0..=1),
        ]);
        f += &Poly::monomial(small_rat(rng), m);
    }
    &f + &f.swap_z()
}

#[test]
fn built_operators_match_pointwise_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..12 {
        let params = random_params(&mut rng, if round % 2 == 0 { Some(2) } else { None });
        let h = build_h_hat(&params);
        let p2 = build_p2_hat(&params);
        let f = random_symmetric(&mut rng, 3);
        let hf = h.apply(&f).unwrap();
        let pf = p2.apply(&f).unwrap();
        for _ in 0..4 {
            let pt = random_point(&mut rng);
            let oracle = Formula {
                p: &params,
                pt: &pt,
            };
            assert_eq!(eval(&hf, &pt), oracle.h(&f), "H, round {round}");
            assert_eq!(eval(&pf, &pt), oracle.p2(&f), "P2, round {round}");
        }
    }
}

#[test]
fn h_on_one_example_i_matches_formula() {
    let params = ExponentParams::from_ints(2, 1, -1, -3, 0);
    let hf = build_h_hat(&params).apply(&Poly::one()).unwrap();
    assert_eq!(hf, "-10*z1 - 10*z2 + 40*e3 - 32*e2".parse().unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let pt = random_point(&mut rng);
        assert_eq!(
            eval(&hf, &pt),
            Formula {
                p: &params,
                pt: &pt
            }
            .h(&Poly::one())
        );
    }
}

#[test]
fn antisymmetric_input_has_a_pole() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let params = random_params(&mut rng, None);
    let f: Poly = "z1 - z2".parse().unwrap();
    assert!(matches!(
        build_h_hat(&params).apply(&f),
        Err(Error::NonPolynomial { .. })
    ));
    // (z1 - z2) * (H f) tends to -4a c(z1) as z2 -> z1.
    let z1 = rat(1, 3);
    let eps = rat(1, 1_000_000_000_000_000);
    let pt = Point::new(z1.clone(), &z1 - &eps, rat(2, 1), rat(-1, 5));
    let oracle = Formula {
        p: &params,
        pt: &pt,
    };
    let residue = oracle.h(&f) * &eps;
    let limit = int(-4) * &params.a * oracle.c(&z1);
    assert!(!limit.is_zero());
    let gap = &residue - &limit;
    assert!(
        gap.clone() * gap < rat(1, 1_000_000),
        "{residue} vs {limit}"
    );
}

fn frozen_h_example_i() -> Vec<Vec<&'static str>> {
    vec![
        vec![
            "-32*e2 + 40*e3",
            "20*e2^2 - 12*e2*e3 - 28*e3^2",
            "16*e2^2*e3 + 16*e2*e3^2",
        ],
        vec!["-10", "-16*e2 + 32*e3", "2*e2^2 - 14*e2*e3 - 22*e3^2"],
        vec!["0", "-36", "24*e3"],
    ]
}

fn frozen_p2_example_i() -> Vec<Vec<&'static str>> {
    vec![
        vec![
            "0",
            "-640*e2^3 + 80*e2^2*e3 - 304*e2*e3^2 - 784*e3^3",
            "60*e2^4 - 584*e2^3*e3 - 364*e2^2*e3^2 + 1240*e2*e3^3 + 924*e3^4",
        ],
        vec![
            "320*e2 - 280*e3",
            "-620*e2^2 + 1460*e2*e3 + 964*e3^2",
            "32*e2^3 - 456*e2^2*e3 - 648*e2*e3^2 - 88*e3^3",
        ],
        vec![
            "540",
            "-576*e2 - 144*e3",
            "-64*e2^2 + 1216*e2*e3 + 512*e3^2",
        ],
    ]
}

/// Checks a candidate matrix against the oracle: for each column `j`,
/// `sum_i M_ij m_i = op(m_j)` at random points.
fn oracle_confirms(
    frozen: &[Vec<&str>],
    basis: &BasisVd,
    params: &ExponentParams,
    op: impl Fn(&Formula, &Poly) -> Q,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for j in 0..basis.len() {
        let mj = basis.element_poly(j);
        for _ in 0..6 {
            let pt = random_point(&mut rng);
            let lhs: Q = frozen
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let entry: Poly = row[j].parse().unwrap();
                    eval(&entry, &pt) * eval(&basis.element_poly(i), &pt)
                })
                .sum();
            assert_eq!(lhs, op(&Formula { p: params, pt: &pt }, &mj), "column {j}");
        }
    }
}

#[test]
fn example_i_matrices_frozen_and_oracle_checked() {
    let params = ExponentParams::from_ints(2, 1, -1, -3, 0);
    let basis = BasisVd::new(1);
    oracle_confirms(
        &frozen_h_example_i(),
        &basis,
        &params,
        |f: &Formula, p: &Poly| f.h(p),
    );
    oracle_confirms(
        &frozen_p2_example_i(),
        &basis,
        &params,
        |f: &Formula, p: &Poly| f.p2(p),
    );

    let h = matrix_of(&build_h_hat(&params), &basis).unwrap();
    let p2 = matrix_of(&build_p2_hat(&params), &basis).unwrap();
    for (m, frozen) in [(h, frozen_h_example_i()), (p2, frozen_p2_example_i())] {
        for (row, frow) in m.entries.iter().zip(&frozen) {
            for (x, s) in row.iter().zip(frow) {
                assert_eq!(x, &s.parse::<Poly>().unwrap());
            }
        }
    }
}

#[test]
fn example_i_cubic_at_e2_one_e3_zero() {
    let params = ExponentParams::from_ints(2, 1, -1, -3, 0);
    let h = matrix_of(&build_h_hat(&params), &BasisVd::new(1)).unwrap();
    let cp = char_poly(&h).specialize(&int(1), &int(0)).unwrap();
    assert_eq!(cp.to_string_in("x"), "x^3 + 48*x^2 + 784*x + 2304");
    // -trace of the frozen matrix at (1, 0): -(-32 - 16 + 0) = 48
    let trace: Q = frozen_h_example_i()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r[i].parse::<Poly>()
                .unwrap()
                .specialize(&int(1), &int(0))
                .as_constant()
                .unwrap()
        })
        .sum();
    assert_eq!(-trace, cp.coeffs()[2]);
    assert_eq!(cp.discriminant(), int(-113262592));
}

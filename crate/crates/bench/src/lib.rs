//! Parameter sets shared by the benchmarks.

use qes_core::poly::rat;
use qes_core::ExponentParams;

/// A parameter set with non-trivial denominators and the given `d`.
pub fn generic_params(d: i64) -> ExponentParams {
    let mut p = ExponentParams::new(rat(-13, 7), rat(11, 5), rat(-9, 8), rat(7, 3), rat(0, 1));
    p.b[3] = -(rat(d, 1) + &p.a + &p.b[0] + &p.b[1] + &p.b[2]);
    p
}

pub fn example_i() -> ExponentParams {
    ExponentParams::from_ints(2, 1, -1, -3, 0)
}

pub fn example_ii() -> ExponentParams {
    ExponentParams::from_ints(-7, 3, -1, 2, 1)
}

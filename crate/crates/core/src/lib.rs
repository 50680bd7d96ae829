//! Exact computer algebra for the quasi-exactly solvable BC2 Inozemtsev model.
//!
//! The crate builds the gauge-transformed Hamiltonian `H` and the commuting
//! fourth-order operator `P2` as differential operators in `z1`, `z2`, with the
//! half-period values `e2`, `e3` kept symbolic (`e1 = -e2 - e3`), represents
//! them as exact matrices on the invariant space `V_d^sym`, and derives
//! spectra and polynomial relations between the two matrices.

pub mod error;
pub mod linalg;
pub mod matrix;
pub mod operators;
pub mod poly;
pub mod relation;
pub mod roots;
pub mod space;
pub mod spectral;
pub mod upoly;

pub use error::{Error, Result};
pub use operators::{
    build_h_hat, build_p2_hat, BranchA, BranchB, CouplingParams, DerivedConstants, DiffOperator,
    ExponentParams,
};
pub use poly::{Atom, Poly, Var, ZVar};
pub use relation::{
    find_minimal_relation, fit_relation, fit_relation_shape, EDomain, RelationCoefficients,
    RelationKind, RelationShape,
};
pub use roots::{numeric_roots, Root};
pub use space::{enumerate_basis, matrix_of, BasisVd, OpMatrix};
pub use spectral::{
    char_poly, char_poly_bareiss, commutator, discriminant_nonzero, spectrum, CharPoly,
    SpectrumReport,
};
pub use upoly::UPoly;

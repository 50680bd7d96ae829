use thiserror::Error;

use crate::poly::Atom;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial is not divisible by {atom}^{multiplicity}")]
    NonDivisible { atom: Atom, multiplicity: u32 },

    #[error("operator output is not polynomial: {source}")]
    NonPolynomial {
        #[source]
        source: Box<Error>,
    },

    #[error("polynomial is not symmetric under z1 <-> z2")]
    NotSymmetric,

    #[error("degree {degree} exceeds d = {d}{}", fmt_element(.element))]
    DegreeOverflow {
        degree: u32,
        d: u32,
        element: Option<(u32, u32)>,
    },

    #[error("failed on basis element m_({},{}): {source}", .element.0, .element.1)]
    BasisElement {
        element: (u32, u32),
        #[source]
        source: Box<Error>,
    },

    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("no relation: {0}")]
    NoRelation(String),

    #[error("relation is not unique (nullspace dimension {nullity})")]
    AmbiguousRelation { nullity: usize },

    #[error("root finding did not converge after {iterations} iterations (worst residual {worst_residual:e})")]
    NonConvergence {
        iterations: usize,
        worst_residual: f64,
    },
}

fn fmt_element(element: &Option<(u32, u32)>) -> String {
    match element {
        Some((m1, m2)) => format!(" at basis element m_({m1},{m2})"),
        None => String::new(),
    }
}

impl Error {
    /// Strips `BasisElement` wrappers, filling in the element on degree overflows.
    pub fn root_cause(&self) -> Error {
        match self {
            Error::BasisElement { element, source } => match source.root_cause() {
                Error::DegreeOverflow { degree, d, .. } => Error::DegreeOverflow {
                    degree,
                    d,
                    element: Some(*element),
                },
                other => other,
            },
            other => other.clone(),
        }
    }

    pub fn is_degree_overflow(&self) -> bool {
        matches!(self.root_cause(), Error::DegreeOverflow { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

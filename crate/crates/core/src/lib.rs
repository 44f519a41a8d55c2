//! Orthogonal polynomials on the Sierpinski gasket.
//!
//! The crate builds the antisymmetric and symmetric orthogonal families over
//! the gasket's polynomial monomials from exact boundary-jet recursions and
//! closed-form inner products, constructs the three-term recurrence and its
//! Jacobi/Christoffel-Darboux data by independent routes, enumerates the
//! Dirichlet spectrum by spectral decimation for the Green's-operator trace
//! identities, and evaluates everything on graph approximations for plots,
//! edge restrictions, and nodal analysis.
//!
//! Numeric work runs in one of two modes everywhere: exact rationals, or
//! arbitrary-precision floats with correctly rounded arithmetic.

pub mod decimation;
mod error;
pub mod export;
pub mod inner;
pub mod jacobi;
pub mod jets;
pub mod mesh;
pub mod numeric;
pub mod ortho;
pub mod plot;

pub use rug;

pub use error::{Error, Result};
pub use jets::{JetTable, MonomialKind};
pub use numeric::{Num, NumericMode, PrecisionConfig, Scalar};
pub use ortho::{MonomialVector, OpBasis, OpFamily};

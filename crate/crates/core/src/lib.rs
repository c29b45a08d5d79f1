//! Exact verification toolkit for Lie pairs `(L, A)` given on a polynomial
//! chart: the Chevalley–Eilenberg side, the dg Lie algebroid `pi^! L` over
//! `A[1]`, homological perturbation, and the two Atiyah and Todd classes.
//!
//! Everything is generic over an exact [`Scalar`]; the aliases below fix it to
//! arbitrary-precision rationals.

pub mod atiyah;
pub mod error;
pub mod exactalg;
pub mod hpl;
pub mod liepair;
pub mod linalg;
pub mod pidgla;
pub mod scalar;
pub mod todd;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type Poly = exactalg::Polynomial<Rational>;
pub type Cochain = exactalg::CochainElem<Rational>;
pub type Model = liepair::LiePairModel<Rational>;
pub type Elem = hpl::ModElem<Rational>;
pub type Op = hpl::Operator<Rational>;
pub type Contraction = hpl::Contraction<Rational>;

//! Exact coefficient algebra: polynomials in the chart coordinates tensored
//! with the exterior algebra on the odd fiber coordinates.

mod cochain;
mod monomial;
pub mod parse;
mod poly;

pub use cochain::{CochainElem, Grade};
pub use monomial::{ExtMonomial, MAX_ODD};
pub use poly::Polynomial;

use crate::scalar::Scalar;

/// Number of even coordinates `n` and odd coordinates `r` of a coefficient
/// ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingShape {
    pub nvars: usize,
    pub nodd: usize,
}

impl RingShape {
    pub fn new(nvars: usize, nodd: usize) -> Self {
        assert!(nodd <= MAX_ODD);
        RingShape { nvars, nodd }
    }

    pub fn point() -> Self {
        RingShape { nvars: 0, nodd: 0 }
    }

    pub fn is_finite(&self) -> bool {
        self.nvars == 0
    }

    /// Monomials `x^a eta^I` with `|a| <= xdeg`; a basis of the ring when
    /// `nvars == 0`.
    pub fn monomials<F: Scalar>(&self, xdeg: u32) -> Vec<CochainElem<F>> {
        let mut out = Vec::new();
        for m in ExtMonomial::all(self.nodd) {
            for e in Polynomial::<F>::exponents_up_to(self.nvars, xdeg) {
                out.push(CochainElem::term(m, Polynomial::monomial(e, F::one())));
            }
        }
        out
    }
}

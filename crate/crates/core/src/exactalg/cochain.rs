use std::collections::BTreeMap;
use std::fmt;

use super::monomial::ExtMonomial;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Element of `Poly[x1..xn] (x) Lambda(eta^1..eta^r)`: polynomial coefficients
/// on exterior monomials. Graded by exterior degree only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CochainElem<F> {
    nvars: usize,
    terms: BTreeMap<ExtMonomial, Polynomial<F>>,
}

/// Degree information for a cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grade {
    Zero,
    Homogeneous(usize),
    Inhomogeneous,
}

impl<F: Scalar> CochainElem<F> {
    pub fn zero(nvars: usize) -> Self {
        CochainElem { nvars, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        Self::term(ExtMonomial::ONE, p)
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, F::from_int(c))
    }

    pub fn term(m: ExtMonomial, p: Polynomial<F>) -> Self {
        let mut out = Self::zero(p.nvars());
        out.add_term(m, p);
        out
    }

    /// The generator `eta^{i+1}`.
    pub fn eta(nvars: usize, i: usize) -> Self {
        Self::term(ExtMonomial::gen(i), Polynomial::one(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtMonomial, &Polynomial<F>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: ExtMonomial) -> Polynomial<F> {
        self.terms.get(&m).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn add_term(&mut self, m: ExtMonomial, p: Polynomial<F>) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&p);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, p);
            }
        }
    }

    pub fn grade(&self) -> Grade {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => Grade::Zero,
            Some(d) => {
                if it.all(|e| e == d) {
                    Grade::Homogeneous(d)
                } else {
                    Grade::Inhomogeneous
                }
            }
        }
    }

    /// Component of exterior degree `d`.
    pub fn part(&self, d: usize) -> Self {
        CochainElem {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, p)| (*m, p.clone())).collect(),
        }
    }

    /// Split into (even, odd) exterior degree parts.
    pub fn parity_split(&self) -> (Self, Self) {
        let mut even = Self::zero(self.nvars);
        let mut odd = Self::zero(self.nvars);
        for (m, p) in &self.terms {
            if m.is_odd() {
                odd.terms.insert(*m, p.clone());
            } else {
                even.terms.insert(*m, p.clone());
            }
        }
        (even, odd)
    }

    /// Multiply each homogeneous piece of degree `k` by `(-1)^(k*d)`.
    pub fn twist(&self, d: i32) -> Self {
        if d % 2 == 0 {
            return self.clone();
        }
        CochainElem {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, p)| (*m, if m.is_odd() { p.neg() } else { p.clone() }))
                .collect(),
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (m, p) in &other.terms {
            self.add_term(*m, p.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(*m, p.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        CochainElem { nvars: self.nvars, terms: self.terms.iter().map(|(m, p)| (*m, p.neg())).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        CochainElem { nvars: self.nvars, terms: self.terms.iter().map(|(m, p)| (*m, p.scale(s))).collect() }
    }

    pub fn scale_poly(&self, q: &Polynomial<F>) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, p) in &self.terms {
            out.add_term(*m, p.mul(q));
        }
        out
    }

    /// Graded-commutative product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars.max(other.nvars));
        for (m1, p1) in &self.terms {
            for (m2, p2) in &other.terms {
                if let Some((neg, m)) = m1.mul(*m2) {
                    let p = p1.mul(p2);
                    out.add_term(m, if neg { p.neg() } else { p });
                }
            }
        }
        out
    }

    /// Left derivation `d/d eta^{i+1}` (odd, degree -1).
    pub fn contract(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, p) in &self.terms {
            if let Some((neg, m2)) = m.contract(i) {
                out.add_term(m2, if neg { p.neg() } else { p.clone() });
            }
        }
        out
    }

    /// Partial derivative in `x_{j+1}` applied to every coefficient.
    pub fn derive_x(&self, j: usize) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (m, p) in &self.terms {
            out.add_term(*m, p.derive(j)?);
        }
        Ok(out)
    }

    /// Apply the even vector field `sum_j v[j] d/dx_j` coefficientwise.
    pub fn apply_field(&self, v: &[Polynomial<F>]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, p) in &self.terms {
            out.add_term(*m, p.apply_field(v));
        }
        out
    }

    /// Validate the odd-generator indices against `r`.
    pub fn check_odd(&self, r: usize) -> Result<()> {
        for m in self.terms.keys() {
            if let Some(&i) = m.indices().iter().find(|&&i| i >= r) {
                return Err(Error::IndexOutOfRange { what: "odd generator", index: i + 1, bound: r });
            }
        }
        Ok(())
    }

    /// If every coefficient is constant, the (monomial, scalar) pairs.
    pub fn constant_terms(&self) -> Option<Vec<(ExtMonomial, F)>> {
        self.terms.iter().map(|(m, p)| p.as_constant().map(|c| (*m, c))).collect()
    }
}

impl<F: Scalar> fmt::Display for CochainElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, p)| if *m == ExtMonomial::ONE { format!("({})", p) } else { format!("({})*{}", p, m) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

use std::fmt;
use std::sync::Arc;

use super::module::{FreeModule, ModElem};
use crate::exactalg::{CochainElem, ExtMonomial};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub type RingDiff<F> = Arc<dyn Fn(&CochainElem<F>) -> CochainElem<F> + Send + Sync>;

type ApplyFn<F> = Arc<dyn Fn(&ModElem<F>) -> ModElem<F> + Send + Sync>;

/// What an operator promises about coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linearity {
    /// `T(f x) = (-1)^{|f||T|} f T(x)`.
    RLinear,
    /// `T(f x) = d_R(f) x + (-1)^{|f||T|} f T(x)`.
    Derivation,
    /// Only linear over the scalars.
    Scalar,
}

/// Graded map between free modules, evaluated lazily.
#[derive(Clone)]
pub struct Operator<F> {
    pub degree: i32,
    pub linearity: Linearity,
    f: ApplyFn<F>,
}

impl<F> fmt::Debug for Operator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator(degree {}, {:?})", self.degree, self.linearity)
    }
}

/// `sum_i (-1)^{|c_i| d} c_i table[i]`.
pub fn apply_table<F: Scalar>(table: &[ModElem<F>], degree: i32, x: &ModElem<F>, out: &mut ModElem<F>) {
    for (c, t) in x.coeffs.iter().zip(table) {
        if c.is_zero() || t.is_zero() {
            continue;
        }
        out.add_assign_ref(&t.lmul(&c.twist(degree)));
    }
}

impl<F: Scalar> Operator<F> {
    pub fn new(degree: i32, linearity: Linearity, f: impl Fn(&ModElem<F>) -> ModElem<F> + Send + Sync + 'static) -> Self {
        Operator { degree, linearity, f: Arc::new(f) }
    }

    pub fn apply(&self, x: &ModElem<F>) -> ModElem<F> {
        (self.f)(x)
    }

    /// R-linear map given by its values on generators.
    pub fn linear(dst: &FreeModule, degree: i32, table: Vec<ModElem<F>>) -> Self {
        let zero = ModElem::zero(dst);
        Operator::new(degree, Linearity::RLinear, move |x| {
            let mut out = zero.clone();
            apply_table(&table, degree, x, &mut out);
            out
        })
    }

    /// Derivation over `(R, d_R)` given by its values on generators.
    pub fn derivation(module: &FreeModule, degree: i32, table: Vec<ModElem<F>>, ring_diff: RingDiff<F>) -> Self {
        let zero = ModElem::zero(module);
        Operator::new(degree, Linearity::Derivation, move |x| {
            let mut out = zero.clone();
            for (i, c) in x.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let dc = ring_diff(c);
                    if !dc.is_zero() {
                        out.coeffs[i].add_assign_ref(&dc);
                    }
                }
            }
            apply_table(&table, degree, x, &mut out);
            out
        })
    }

    /// Scalar matrix on a point chart; column `i` is the image of generator `i`.
    pub fn from_matrix(dst: &FreeModule, degree: i32, m: &Matrix<F>) -> Self {
        let nv = dst.shape().nvars;
        let table = (0..m.cols)
            .map(|i| ModElem::from_coeffs((0..m.rows).map(|j| CochainElem::constant(nv, m.get(j, i).clone())).collect()))
            .collect();
        Self::linear(dst, degree, table)
    }

    pub fn identity() -> Self {
        Operator::new(0, Linearity::RLinear, |x| x.clone())
    }

    pub fn zero(dst: &FreeModule, degree: i32) -> Self {
        let z = ModElem::zero(dst);
        Operator::new(degree, Linearity::RLinear, move |_| z.clone())
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let lin = if a.linearity == Linearity::RLinear && b.linearity == Linearity::RLinear { Linearity::RLinear } else { Linearity::Scalar };
        Operator::new(a.degree + b.degree, lin, move |x| a.apply(&b.apply(x)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let lin = match (a.linearity, b.linearity) {
            (Linearity::RLinear, Linearity::RLinear) => Linearity::RLinear,
            (Linearity::Derivation, Linearity::RLinear) | (Linearity::RLinear, Linearity::Derivation) => Linearity::Derivation,
            _ => Linearity::Scalar,
        };
        Operator::new(a.degree, lin, move |x| a.apply(x).add(&b.apply(x)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let a = self.clone();
        let lin = if a.linearity == Linearity::Derivation { Linearity::Scalar } else { a.linearity };
        Operator::new(a.degree, lin, move |x| a.apply(x).neg())
    }

    pub fn scale(&self, s: F) -> Self {
        let a = self.clone();
        let lin = if a.linearity == Linearity::Derivation { Linearity::Scalar } else { a.linearity };
        Operator::new(a.degree, lin, move |x| a.apply(x).scale(&s))
    }

    /// Graded commutator `[self, other] = self other - (-1)^{|self||other|} other self`.
    pub fn commutator(&self, other: &Self) -> Self {
        let ab = self.compose(other);
        let ba = other.compose(self);
        if (self.degree * other.degree) % 2 == 0 {
            ab.sub(&ba)
        } else {
            ab.add(&ba)
        }
    }

    /// Values on the generators of `src`.
    pub fn table(&self, src: &FreeModule) -> Vec<ModElem<F>> {
        (0..src.rank()).map(|i| self.apply(&src.gen(i))).collect()
    }

    /// Matrix over the scalar basis of a point chart, in the coordinates of
    /// [`point_coords`].
    pub fn matrix(&self, src: &FreeModule, dst: &FreeModule) -> Matrix<F> {
        let sb = src.basis_elements::<F>(0);
        let mut m = Matrix::zeros(dst.rank() << dst.shape().nodd, sb.len());
        for (col, x) in sb.iter().enumerate() {
            for (row, v) in point_coords(&self.apply(x), dst.shape().nodd) {
                m.set(row, col, v);
            }
        }
        m
    }
}

/// Coordinates of a point-chart element: generator-major, monomials in
/// `ExtMonomial::all` order. This matches `FreeModule::basis_elements(0)`.
pub fn point_coords<F: Scalar>(x: &ModElem<F>, nodd: usize) -> Vec<(usize, F)> {
    let pos = mono_positions(nodd);
    let mut out = Vec::new();
    for (i, c) in x.coeffs.iter().enumerate() {
        let terms = c.constant_terms().expect("point-chart element has constant coefficients");
        for (m, v) in terms {
            out.push(((i << nodd) + pos[m.bits() as usize], v));
        }
    }
    out
}

pub fn mono_positions(nodd: usize) -> Vec<usize> {
    let mut pos = vec![0; 1 << nodd];
    for (k, m) in ExtMonomial::all(nodd).into_iter().enumerate() {
        pos[m.bits() as usize] = k;
    }
    pos
}

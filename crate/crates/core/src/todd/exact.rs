use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::exactalg::{CochainElem, ExtMonomial, Polynomial};
use crate::hpl::operator::point_coords;
use crate::hpl::{FreeModule, ModElem, Operator};
use crate::liepair::{BottModule, LiePairModel, ModuleTag};
use crate::linalg::{Matrix, Solve};
use crate::scalar::Scalar;

/// Outcome of deciding whether a closed point-chart element is exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Exactness<F> {
    /// `D witness = z`.
    Exact { witness: ModElem<F> },
    /// A functional on point coordinates that kills the image of `D` but
    /// not `z`.
    NotExact { functional: Vec<F> },
}

impl<F> Exactness<F> {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact { .. })
    }
}

/// Solve `D xi = z` with `xi` in the span of `spanning`, over a point chart.
pub fn exactness_solve<F: Scalar>(
    module: &FreeModule,
    d: &Operator<F>,
    spanning: &[ModElem<F>],
    z: &ModElem<F>,
) -> Result<Exactness<F>> {
    let shape = module.shape();
    if shape.nvars > 0 {
        return Err(Error::NotPointCase(shape.nvars));
    }
    let dz = d.apply(z);
    if !dz.is_zero() {
        return Err(Error::NotClosed(format!("target (D z = {})", dz.display(module))));
    }
    let nodd = shape.nodd;
    let rows = module.rank() << nodd;
    let mut a = Matrix::zeros(rows, spanning.len());
    for (col, s) in spanning.iter().enumerate() {
        for (row, v) in point_coords(&d.apply(s), nodd) {
            a.set(row, col, v);
        }
    }
    let mut b = vec![F::zero(); rows];
    for (row, v) in point_coords(z, nodd) {
        b[row] = v;
    }
    match a.solve(&b) {
        Solve::Solution(x) => {
            let mut witness = ModElem::zero(module);
            for (s, c) in spanning.iter().zip(x) {
                if !c.is_zero() {
                    witness.add_assign_ref(&s.scale(&c));
                }
            }
            debug_assert_eq!(&d.apply(&witness), z);
            Ok(Exactness::Exact { witness })
        }
        Solve::Inconsistent(y) => Ok(Exactness::NotExact { functional: y }),
    }
}

/// Elements among `spanning` that are homogeneous of total degree `deg`.
pub fn of_degree<F: Scalar>(module: &FreeModule, spanning: Vec<ModElem<F>>, deg: i32) -> Vec<ModElem<F>> {
    spanning.into_iter().filter(|s| s.degree(module) == Some(deg)).collect()
}

/// Cochains `Lambda^p A* (x) M` over a point as coordinate vectors: frame
/// index major, degree-`p` monomials minor.
fn cochain_basis(r: usize, p: usize) -> Vec<ExtMonomial> {
    ExtMonomial::all(r).into_iter().filter(|m| m.degree() == p).collect()
}

/// `dim H^p_CE(A, M)` for each `p` in `degrees`, by exact ranks of the
/// differential matrices.
pub fn ce_cohomology_dims<F: Scalar>(model: &LiePairModel<F>, tag: ModuleTag, degrees: RangeInclusive<usize>) -> Result<Vec<usize>> {
    if model.n() > 0 {
        return Err(Error::NotPointCase(model.n()));
    }
    let r = model.r();
    let module = BottModule::new(model, tag);
    let rank_d = |p: usize| -> usize {
        if p >= r {
            return 0;
        }
        let src = cochain_basis(r, p);
        let dst = cochain_basis(r, p + 1);
        let mut mat = Matrix::zeros(dst.len() * module.rank(), src.len() * module.rank());
        for j in 0..module.rank() {
            for (s, m) in src.iter().enumerate() {
                let mut omega = vec![CochainElem::zero(0); module.rank()];
                omega[j] = CochainElem::term(*m, Polynomial::one(0));
                let out = module.covariant_derivative(model, &omega);
                for (k, c) in out.iter().enumerate() {
                    for (mm, v) in c.constant_terms().expect("point chart") {
                        let row = dst.iter().position(|x| *x == mm).expect("degree p+1 monomial");
                        mat.set(k * dst.len() + row, j * src.len() + s, v);
                    }
                }
            }
        }
        mat.rank()
    };
    Ok(degrees
        .map(|p| {
            if p > r {
                return 0;
            }
            let dim = cochain_basis(r, p).len() * module.rank();
            let below = if p == 0 { 0 } else { rank_d(p - 1) };
            dim - rank_d(p) - below
        })
        .collect())
}

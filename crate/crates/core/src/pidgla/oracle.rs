//! Sections as pairs `(X, v)` of a vector field on `A[1]` and an `L`-part,
//! with the fiber-product bracket. Independent of the generator table of `Q`.

use crate::error::{Error, Result};
use crate::exactalg::CochainElem;
use crate::hpl::ModElem;
use crate::scalar::Scalar;

use super::sections::PullbackAlgebroid;

/// Vector field `sum vertical_k d/deta^k + sum horizontal_j d/dx_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFieldA1<F> {
    pub vertical: Vec<CochainElem<F>>,
    pub horizontal: Vec<CochainElem<F>>,
}

impl<F: Scalar> VectorFieldA1<F> {
    pub fn apply(&self, f: &CochainElem<F>) -> CochainElem<F> {
        let mut out = CochainElem::zero(f.nvars());
        for (k, a) in self.vertical.iter().enumerate() {
            if !a.is_zero() {
                out.add_assign_ref(&a.mul(&f.contract(k)));
            }
        }
        for (j, a) in self.horizontal.iter().enumerate() {
            if !a.is_zero() {
                out.add_assign_ref(&a.mul(&f.derive_x(j).expect("coordinate in range")));
            }
        }
        out
    }
}

/// Homogeneous section `(X, v)` of total degree `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairSection<F> {
    pub degree: i32,
    pub field: VectorFieldA1<F>,
    pub l_part: Vec<CochainElem<F>>,
}

fn odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

impl<F: Scalar> PullbackAlgebroid<F> {
    /// `(x, v) -> (x + psi(rho v), v)` for a homogeneous trivialized section.
    pub fn to_pair(&self, s: &ModElem<F>, degree: i32) -> PairSection<F> {
        let (n, r, m) = (self.nvars(), self.r(), self.m());
        let vertical: Vec<_> = (0..r).map(|k| s.coeffs[self.deta(k)].clone()).collect();
        let l_part: Vec<_> = (0..m).map(|a| s.coeffs[self.e(a)].clone()).collect();
        let mut horizontal = vec![CochainElem::zero(n); n];
        for (a, g) in l_part.iter().enumerate() {
            for (j, rho) in self.model.rho(a).iter().enumerate() {
                if !g.is_zero() && !rho.is_zero() {
                    horizontal[j].add_assign_ref(&g.scale_poly(rho));
                }
            }
        }
        PairSection { degree, field: VectorFieldA1 { vertical, horizontal }, l_part }
    }

    pub fn from_pair(&self, p: &PairSection<F>) -> ModElem<F> {
        let mut out = self.zero();
        for (k, c) in p.field.vertical.iter().enumerate() {
            out.coeffs[self.deta(k)] = c.clone();
        }
        for (a, c) in p.l_part.iter().enumerate() {
            out.coeffs[self.e(a)] = c.clone();
        }
        out
    }

    /// The section `s_{i_A} = (d_A, sum eta^i e_i)`.
    pub fn s_ia(&self) -> PairSection<F> {
        let (n, r, m) = (self.nvars(), self.r(), self.m());
        let model = &self.model;
        let mut vertical = vec![CochainElem::zero(n); r];
        let half = F::frac(1, 2);
        for (k, v) in vertical.iter_mut().enumerate() {
            for i in 0..r {
                for j in 0..r {
                    let c = model.c(i, j, k);
                    if !c.is_zero() {
                        v.add_assign_ref(&CochainElem::eta(n, i).mul(&CochainElem::eta(n, j)).scale_poly(&c.scale(&half)).neg());
                    }
                }
            }
        }
        let mut horizontal = vec![CochainElem::zero(n); n];
        for i in 0..r {
            for (j, rho) in model.rho(i).iter().enumerate() {
                if !rho.is_zero() {
                    horizontal[j].add_assign_ref(&CochainElem::eta(n, i).scale_poly(rho));
                }
            }
        }
        let l_part = (0..m).map(|a| if a < r { CochainElem::eta(n, a) } else { CochainElem::zero(n) }).collect();
        PairSection { degree: 1, field: VectorFieldA1 { vertical, horizontal }, l_part }
    }

    /// `pi_* X = rho(v)` componentwise.
    pub fn check_anchor_condition(&self, p: &PairSection<F>) -> Result<()> {
        let n = self.nvars();
        for j in 0..n {
            let mut rv = CochainElem::zero(n);
            for (a, g) in p.l_part.iter().enumerate() {
                rv.add_assign_ref(&g.scale_poly(&self.model.rho(a)[j]));
            }
            if rv != p.field.horizontal[j] {
                return Err(Error::ConstraintViolation(format!(
                    "x{} component: field has {}, anchor of L-part gives {}",
                    j + 1,
                    p.field.horizontal[j],
                    rv
                )));
            }
        }
        Ok(())
    }

    /// Graded bracket `[(X, v), (X', v')] = ([X, X'], X(v') - (-1)^{|X||X'|} X'(v) + [v, v'])`.
    pub fn bracket_oracle(&self, s1: &PairSection<F>, s2: &PairSection<F>) -> Result<PairSection<F>> {
        self.check_anchor_condition(s1)?;
        self.check_anchor_condition(s2)?;
        let (n, r, m) = (self.nvars(), self.r(), self.m());
        let swap = odd(s1.degree) && odd(s2.degree);
        let comm = |a: &CochainElem<F>, b: &CochainElem<F>| {
            let x = s1.field.apply(b);
            let y = s2.field.apply(a);
            if swap {
                x.add(&y)
            } else {
                x.sub(&y)
            }
        };
        // [X, X'] on each coordinate y: X(X'(y)) -+ X'(X(y)), where X(eta^k) and X(x_j) are the components
        let field = VectorFieldA1 {
            vertical: (0..r).map(|k| comm(&s1.field.vertical[k], &s2.field.vertical[k])).collect(),
            horizontal: (0..n).map(|j| comm(&s1.field.horizontal[j], &s2.field.horizontal[j])).collect(),
        };
        let mut l_part: Vec<CochainElem<F>> = (0..m).map(|a| comm(&s1.l_part[a], &s2.l_part[a])).collect();
        for a in 0..m {
            for b in 0..m {
                let ff = s1.l_part[a].mul(&s2.l_part[b]);
                if ff.is_zero() {
                    continue;
                }
                for (k, lk) in l_part.iter_mut().enumerate() {
                    let c = self.model.c(a, b, k);
                    if !c.is_zero() {
                        lk.add_assign_ref(&ff.scale_poly(c));
                    }
                }
            }
        }
        Ok(PairSection { degree: s1.degree + s2.degree, field, l_part })
    }

    /// `[s_{i_A}, w]` written back in trivialized form.
    pub fn q_by_bracket(&self, w: &ModElem<F>) -> Result<ModElem<F>> {
        let mut out = self.zero();
        for (deg, part) in w.parts_by_degree(&self.sections) {
            let p = self.to_pair(&part, deg);
            out.add_assign_ref(&self.from_pair(&self.bracket_oracle(&self.s_ia(), &p)?));
        }
        Ok(out)
    }
}

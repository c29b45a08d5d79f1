use std::sync::Arc;

use crate::exactalg::CochainElem;
use crate::hpl::{FreeModule, ModElem, Operator, RingDiff};
use crate::liepair::LiePairModel;
use crate::scalar::Scalar;

/// Sections of the pullback algebroid in trivialized form: generators
/// `deta_1..deta_r` (degree -1, indices `0..r`) and `e_1..e_m` (degree 0,
/// indices `r..r+m`).
#[derive(Clone, Debug)]
pub struct PullbackAlgebroid<F> {
    pub model: Arc<LiePairModel<F>>,
    pub sections: Arc<FreeModule>,
    /// The quotient `B` with generators `b_{r+1}..b_m`.
    pub b: Arc<FreeModule>,
}

impl<F: Scalar> PullbackAlgebroid<F> {
    pub fn new(model: &LiePairModel<F>) -> Self {
        let (r, m) = (model.r(), model.m());
        let shape = model.shape();
        let mut degrees = vec![-1; r];
        degrees.extend(vec![0; m]);
        let mut labels: Vec<String> = (0..r).map(|l| format!("deta{}", l + 1)).collect();
        labels.extend((0..m).map(|a| format!("e{}", a + 1)));
        let sections = Arc::new(FreeModule::new(shape, degrees, labels));
        let b = Arc::new(FreeModule::new(shape, vec![0; m - r], (r..m).map(|l| format!("b{}", l + 1)).collect()));
        PullbackAlgebroid { model: Arc::new(model.clone()), sections, b }
    }

    pub fn r(&self) -> usize {
        self.model.r()
    }

    pub fn m(&self) -> usize {
        self.model.m()
    }

    pub fn nvars(&self) -> usize {
        self.model.n()
    }

    /// Generator index of `deta_l`.
    pub fn deta(&self, l: usize) -> usize {
        l
    }

    /// Generator index of `e_a`.
    pub fn e(&self, a: usize) -> usize {
        self.r() + a
    }

    pub fn gen(&self, i: usize) -> ModElem<F> {
        self.sections.gen(i)
    }

    pub fn zero(&self) -> ModElem<F> {
        ModElem::zero(&self.sections)
    }

    /// `d_A` on coefficients.
    pub fn ring_diff(&self) -> RingDiff<F> {
        let model = self.model.clone();
        Arc::new(move |f| model.ce_differential(f))
    }

    /// Values of `Q` on generators.
    pub fn q_table(&self) -> Vec<ModElem<F>> {
        let (n, r, m) = (self.nvars(), self.r(), self.m());
        let model = &self.model;
        let eta = |i| CochainElem::<F>::eta(n, i);
        let half = F::frac(1, 2);
        let mut table = Vec::with_capacity(r + m);
        for l in 0..r {
            let mut v = self.zero();
            for i in 0..r {
                for k in 0..r {
                    let c = model.c(i, l, k);
                    if !c.is_zero() {
                        v.coeffs[self.deta(k)].add_assign_ref(&eta(i).scale_poly(c));
                    }
                }
            }
            v.coeffs[self.e(l)].add_assign_ref(&CochainElem::one(n));
            table.push(v);
        }
        for l in 0..m {
            let mut v = self.zero();
            for i in 0..r {
                for j in 0..r {
                    let ee = eta(i).mul(&eta(j));
                    if ee.is_zero() {
                        continue;
                    }
                    for k in 0..r {
                        let rc = model.anchor_apply(l, model.c(i, j, k));
                        if !rc.is_zero() {
                            v.coeffs[self.deta(k)].add_assign_ref(&ee.scale_poly(&rc.scale(&half)));
                        }
                    }
                }
            }
            for i in 0..r {
                for k in 0..m {
                    let c = model.c(i, l, k);
                    if !c.is_zero() {
                        v.coeffs[self.e(k)].add_assign_ref(&eta(i).scale_poly(c));
                    }
                }
            }
            table.push(v);
        }
        table
    }

    /// The homological vector field `Q`, a degree +1 derivation over `d_A`.
    pub fn q(&self) -> Operator<F> {
        Operator::derivation(&self.sections, 1, self.q_table(), self.ring_diff())
    }

    /// `i~_A : deta_j -> e_j`.
    pub fn i_tilde(&self) -> Operator<F> {
        let table = (0..self.sections.rank())
            .map(|g| if g < self.r() { self.gen(self.e(g)) } else { self.zero() })
            .collect();
        Operator::linear(&self.sections, 1, table)
    }

    /// `p~_A : e_j -> deta_j` for `j < r`.
    pub fn p_tilde(&self) -> Operator<F> {
        let r = self.r();
        let table = (0..self.sections.rank())
            .map(|g| if g >= r && g < 2 * r { self.gen(self.deta(g - r)) } else { self.zero() })
            .collect();
        Operator::linear(&self.sections, -1, table)
    }

    /// `i_B : b_l -> e_l`.
    pub fn i_b(&self) -> Operator<F> {
        let r = self.r();
        let table = (0..self.b.rank()).map(|l| self.gen(self.e(r + l))).collect();
        Operator::linear(&self.sections, 0, table)
    }

    /// `p_B : e_l -> b_l` for `l >= r`, zero elsewhere.
    pub fn p_b(&self) -> Operator<F> {
        let r = self.r();
        let table = (0..self.sections.rank())
            .map(|g| if g >= 2 * r { self.b.gen(g - 2 * r) } else { ModElem::zero(&self.b) })
            .collect();
        Operator::linear(&self.b, 0, table)
    }

    /// `i_A p_A`: keeps `e_j` for `j < r`.
    pub fn a_projector(&self) -> Operator<F> {
        let r = self.r();
        let table = (0..self.sections.rank())
            .map(|g| if g >= r && g < 2 * r { self.gen(g) } else { self.zero() })
            .collect();
        Operator::linear(&self.sections, 0, table)
    }
}

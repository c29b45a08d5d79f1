use crate::exactalg::CochainElem;
use crate::hpl::ModElem;
use crate::liepair::ConnectionTable;
use crate::pidgla::PullbackAlgebroid;
use crate::scalar::Scalar;

/// Connection on sections of the pullback algebroid built from a
/// Christoffel table: `nabla_{deta} deta = 0`, `nabla_{deta_i} e_j` from
/// `al`, `nabla_{e_i} deta_j` from `la`, `nabla_{e_i} e_j` from `gamma`.
#[derive(Clone, Debug)]
pub struct SectionConnection<F> {
    pub pi: PullbackAlgebroid<F>,
    pub table: ConnectionTable<F>,
}

impl<F: Scalar> SectionConnection<F> {
    pub fn new(pi: &PullbackAlgebroid<F>, table: &ConnectionTable<F>) -> Self {
        SectionConnection { pi: pi.clone(), table: table.clone() }
    }

    /// `nabla_{lambda_a} lambda_b` on generators.
    pub fn on_generators(&self, a: usize, b: usize) -> ModElem<F> {
        let pi = &self.pi;
        let r = pi.r();
        let t = &self.table;
        let mut out = pi.zero();
        let mut put = |g: usize, p: &crate::exactalg::Polynomial<F>| {
            if !p.is_zero() {
                out.coeffs[g].add_assign_ref(&CochainElem::from_poly(p.clone()));
            }
        };
        match (a < r, b < r) {
            (true, true) => {}
            (true, false) => (0..r).for_each(|k| put(pi.deta(k), t.al(a, b - r, k))),
            (false, true) => (0..r).for_each(|k| put(pi.deta(k), t.la(a - r, b, k))),
            (false, false) => (0..pi.m()).for_each(|k| put(pi.e(k), t.gamma(a - r, b - r, k))),
        }
        out
    }

    /// Anchor of generator `a` acting on a coefficient: `d/deta^i` for
    /// `deta_i`, `sum_j rho_a^j d/dx_j` for `e_a`.
    pub fn anchor(&self, a: usize, g: &CochainElem<F>) -> CochainElem<F> {
        let r = self.pi.r();
        if a < r {
            g.contract(a)
        } else {
            self.pi.model.anchor_apply_cochain(a - r, g)
        }
    }

    /// `nabla_{sum f_a lambda_a} (sum g_b lambda_b) =
    /// sum f_a [rho(lambda_a)(g_b) lambda_b + (-1)^{|lambda_a||g_b|} g_b nabla_{lambda_a} lambda_b]`.
    pub fn nabla(&self, x: &ModElem<F>, y: &ModElem<F>) -> ModElem<F> {
        let pi = &self.pi;
        let w = &pi.sections;
        let mut out = pi.zero();
        for (a, f) in x.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let da = w.degree(a);
            let mut inner = pi.zero();
            for (b, g) in y.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let dg = self.anchor(a, g);
                if !dg.is_zero() {
                    inner.coeffs[b].add_assign_ref(&dg);
                }
                let nab = self.on_generators(a, b);
                if !nab.is_zero() {
                    inner.add_assign_ref(&nab.lmul(&g.twist(da)));
                }
            }
            out.add_assign_ref(&inner.lmul(f));
        }
        out
    }
}

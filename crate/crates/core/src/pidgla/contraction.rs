use crate::error::{Error, Result};
use crate::hpl::contraction::check_identity;
use crate::hpl::{perturb, CheckResult, Contraction, ModElem, Operator, Perturbed, SmallModel, Space, DEFAULT_MAX_ITER};
use crate::liepair::{BottModule, ModuleTag};
use crate::scalar::Scalar;

use super::sections::PullbackAlgebroid;

/// The splitting operators on sections.
#[derive(Clone, Debug)]
pub struct ContractionMaps<F> {
    pub i_b: Operator<F>,
    pub p_b: Operator<F>,
    pub i_tilde: Operator<F>,
    pub p_tilde: Operator<F>,
}

fn first_failure(checks: Vec<CheckResult>) -> Option<CheckResult> {
    checks.into_iter().find(|c| !c.ok)
}

impl<F: Scalar> PullbackAlgebroid<F> {
    pub fn maps(&self) -> ContractionMaps<F> {
        ContractionMaps { i_b: self.i_b(), p_b: self.p_b(), i_tilde: self.i_tilde(), p_tilde: self.p_tilde() }
    }

    /// `p_B i_B = id`, `i_A p_A + i_B p_B = id` on the `e`-generators,
    /// `p~_A^2 = 0` and `i~_A^2 = 0`.
    pub fn check_maps(&self, xdeg: u32) -> Vec<CheckResult> {
        let mp = self.maps();
        let w = &self.sections;
        let b = &self.b;
        let wt = w.basis_elements::<F>(xdeg);
        let bt = b.basis_elements::<F>(xdeg);
        let r = self.r();
        let e_only: Vec<ModElem<F>> =
            wt.iter().filter(|x| x.coeffs.iter().enumerate().all(|(g, c)| g >= r || c.is_zero())).cloned().collect();
        let a_proj = self.a_projector();
        vec![
            check_identity("p_B i_B = id", b, b, &bt, |x| mp.p_b.apply(&mp.i_b.apply(x)), |x| x.clone()),
            check_identity("i_A p_A + i_B p_B = id", w, w, &e_only, |x| a_proj.apply(x).add(&mp.i_b.apply(&mp.p_b.apply(x))), |x| x.clone()),
            check_identity("p~_A^2 = 0", w, w, &wt, |x| mp.p_tilde.apply(&mp.p_tilde.apply(x)), |_| self.zero()),
            check_identity("i~_A^2 = 0", w, w, &wt, |x| mp.i_tilde.apply(&mp.i_tilde.apply(x)), |_| self.zero()),
        ]
    }

    /// Sections with differential `i~_A` and homotopy `p~_A` over the
    /// undifferentiated coefficient ring; the small model is `B`.
    pub fn basic_contraction(&self) -> Contraction<F> {
        let mp = self.maps();
        Contraction {
            name: format!("basic({})", self.model.name),
            big: Space::free(self.sections.clone()),
            delta: mp.i_tilde,
            h: mp.p_tilde,
            small: SmallModel { space: Space::free(self.b.clone()), d: Operator::zero(&self.b, 1), tau: mp.i_b, sigma: mp.p_b },
            ring_diff: None,
            test_xdeg: 1,
        }
    }

    /// `Q - i~_A`.
    pub fn perturbation(&self) -> Operator<F> {
        self.q().sub(&self.i_tilde())
    }

    /// `tau = i_B - p~_A Q i_B` in explicit form:
    /// `b_l -> e_l + sum eta^i c_il^k deta_k`.
    pub fn tau_closed_form(&self) -> Operator<F> {
        let (n, r) = (self.nvars(), self.r());
        let table = (0..self.b.rank())
            .map(|l| {
                let mut v = self.gen(self.e(r + l));
                for i in 0..r {
                    for k in 0..r {
                        let c = self.model.c(i, r + l, k);
                        if !c.is_zero() {
                            v.coeffs[self.deta(k)].add_assign_ref(&crate::exactalg::CochainElem::eta(n, i).scale_poly(c));
                        }
                    }
                }
                v
            })
            .collect();
        Operator::linear(&self.sections, 0, table)
    }

    /// The Bott differential on `B` from the module description.
    pub fn bott_differential(&self) -> Operator<F> {
        let bott = BottModule::new(&self.model, ModuleTag::B);
        let model = self.model.clone();
        Operator::new(1, crate::hpl::Linearity::Derivation, move |x| ModElem::from_coeffs(bott.covariant_derivative(&model, &x.coeffs)))
    }

    /// `(pert p~_A)^2 = 0` on the test elements: the one-step filtration.
    pub fn check_filtration(&self, xdeg: u32) -> CheckResult {
        let pert = self.perturbation();
        let pt = self.p_tilde();
        let step = pert.compose(&pt);
        let w = &self.sections;
        check_identity("(pert p~_A)^2 = 0", w, w, &w.basis_elements(xdeg), |x| step.apply(&step.apply(x)), |_| self.zero())
    }

    /// Perturb the basic contraction by `Q - i~_A` and check the closed
    /// forms `h = p~_A`, `sigma = p_B`, `tau = i_B - p~_A Q i_B` and
    /// `d = d^Bott`.
    pub fn perturbed_pi_contraction(&self) -> Result<Perturbed<F>> {
        let basic = self.basic_contraction();
        let filt = self.check_filtration(basic.test_xdeg);
        if !filt.ok {
            return Err(Error::ClosedFormMismatch { map: "(pert p~_A)^2", witness: filt.witness.unwrap_or_default() });
        }
        let mut p = perturb(&basic, &self.perturbation(), DEFAULT_MAX_ITER)?;
        p.contraction.ring_diff = Some(self.ring_diff());
        p.contraction.name = format!("perturbed({})", self.model.name);

        let w = &self.sections;
        let b = &self.b;
        let wt = basic.big_tests();
        let bt = basic.small_tests();
        let mp = self.maps();
        let q = self.q();
        let tau_formula = mp.i_b.sub(&mp.p_tilde.compose(&q).compose(&mp.i_b));
        let tau_explicit = self.tau_closed_form();
        let bott = self.bott_differential();
        let checks: Vec<(&'static str, CheckResult)> = vec![
            ("h", check_identity("h = p~_A", w, w, &wt, |x| p.h().apply(x), |x| mp.p_tilde.apply(x))),
            ("sigma", check_identity("sigma = p_B", w, b, &wt, |x| p.sigma().apply(x), |x| mp.p_b.apply(x))),
            ("tau", check_identity("tau = i_B - p~_A Q i_B", b, w, &bt, |x| p.tau().apply(x), |x| tau_formula.apply(x))),
            ("tau", check_identity("tau explicit", b, w, &bt, |x| p.tau().apply(x), |x| tau_explicit.apply(x))),
            ("d", check_identity("d = d^Bott", b, b, &bt, |x| p.d().apply(x), |x| bott.apply(x))),
        ];
        for (map, c) in checks {
            if !c.ok {
                return Err(Error::ClosedFormMismatch { map, witness: c.witness.unwrap_or_default() });
            }
        }
        if let Some(f) = first_failure(p.report.checks.clone()) {
            return Err(Error::ClosedFormMismatch { map: "contraction axioms", witness: format!("{}: {}", f.name, f.witness.unwrap_or_default()) });
        }
        Ok(p)
    }
}

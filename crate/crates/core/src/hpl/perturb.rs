use super::contraction::{Contraction, SmallModel, VerifyReport};
use super::module::ModElem;
use super::operator::{Linearity, Operator};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_MAX_ITER: usize = 64;

/// Result of [`perturb`]: the perturbed contraction and its verification.
#[derive(Clone, Debug)]
pub struct Perturbed<F> {
    pub contraction: Contraction<F>,
    pub report: VerifyReport,
}

impl<F: Scalar> Perturbed<F> {
    pub fn h(&self) -> &Operator<F> {
        &self.contraction.h
    }
    pub fn tau(&self) -> &Operator<F> {
        &self.contraction.small.tau
    }
    pub fn sigma(&self) -> &Operator<F> {
        &self.contraction.small.sigma
    }
    pub fn d(&self) -> &Operator<F> {
        &self.contraction.small.d
    }
}

/// `sum_k step^k (x)` stopping at the first vanishing term.
fn geometric<F: Scalar>(step: &Operator<F>, x: &ModElem<F>, max_iter: usize) -> ModElem<F> {
    let mut acc = x.clone();
    let mut term = x.clone();
    for _ in 0..max_iter {
        term = step.apply(&term);
        if term.is_zero() {
            return acc;
        }
        acc.add_assign_ref(&term);
    }
    panic!("perturbation series did not terminate within {} terms", max_iter);
}

/// Number of nonzero terms `k >= 1` of the series `step^k (x)`, or `None`
/// if still nonzero after `max_iter`.
fn series_length<F: Scalar>(step: &Operator<F>, x: &ModElem<F>, max_iter: usize) -> Option<usize> {
    let mut term = x.clone();
    for k in 0..=max_iter {
        term = step.apply(&term);
        if term.is_zero() {
            return Some(k);
        }
    }
    None
}

fn lin_of(ops: &[&Operator<impl Scalar>]) -> Linearity {
    if ops.iter().all(|o| o.linearity == Linearity::RLinear) {
        Linearity::RLinear
    } else {
        Linearity::Scalar
    }
}

/// Homological perturbation of `c` by `pert`.
///
/// The series for `h`, `tau`, `sigma` and `d` are evaluated lazily and cut
/// off at the first vanishing term. Nilpotency of `-pert h` and `-h pert` is
/// witnessed on the verification elements before anything is built.
pub fn perturb<F: Scalar>(c: &Contraction<F>, pert: &Operator<F>, max_iter: usize) -> Result<Perturbed<F>> {
    let w = c.big.module.clone();
    let bt = c.big_tests();
    let st = c.small_tests();
    if pert.degree != 1 {
        return Err(Error::NotAPerturbation(format!("perturbation has degree {}", pert.degree)));
    }
    let total = c.delta.add(pert);
    for x in &bt {
        let y = total.apply(&total.apply(x));
        if !y.is_zero() {
            return Err(Error::NotAPerturbation(format!("(delta + pert)^2 on {} = {}", x.display(&w), y.display(&w))));
        }
    }
    let step_l = pert.compose(&c.h).neg(); // -pert h
    let step_r = c.h.compose(pert).neg(); // -h pert
    for x in &bt {
        if series_length(&step_l, x, max_iter).is_none() || series_length(&step_r, x, max_iter).is_none() {
            return Err(Error::NonNilpotent { max_iter, witness: x.display(&w) });
        }
    }
    let v = c.small.space.module.clone();
    for x in &st {
        if series_length(&step_r, &c.small.tau.apply(x), max_iter).is_none() {
            return Err(Error::NonNilpotent { max_iter, witness: x.display(&v) });
        }
    }

    let lin = lin_of(&[&c.h, pert]);
    let h_p = {
        let (h, s) = (c.h.clone(), step_l.clone());
        Operator::new(-1, lin, move |x| h.apply(&geometric(&s, x, max_iter)))
    };
    let sigma_p = {
        let (sg, s) = (c.small.sigma.clone(), step_l.clone());
        Operator::new(c.small.sigma.degree, lin_of(&[&c.small.sigma, &c.h, pert]), move |x| sg.apply(&geometric(&s, x, max_iter)))
    };
    let tau_p = {
        let (t, s) = (c.small.tau.clone(), step_r.clone());
        Operator::new(c.small.tau.degree, lin_of(&[&c.small.tau, &c.h, pert]), move |x| geometric(&s, &t.apply(x), max_iter))
    };
    let d_p = {
        let (d, sg, p, tp) = (c.small.d.clone(), c.small.sigma.clone(), pert.clone(), tau_p.clone());
        let lin = if d.linearity == Linearity::Derivation { Linearity::Scalar } else { lin_of(&[&d, pert]) };
        Operator::new(1, lin, move |x| d.apply(x).add(&sg.apply(&p.apply(&tp.apply(x)))))
    };
    let contraction = Contraction {
        name: format!("{} + pert", c.name),
        big: c.big.clone(),
        delta: total,
        h: h_p,
        small: SmallModel { space: c.small.space.clone(), d: d_p, tau: tau_p, sigma: sigma_p },
        ring_diff: c.ring_diff.clone(),
        test_xdeg: c.test_xdeg,
    };
    let report = contraction.verify();
    Ok(Perturbed { contraction, report })
}

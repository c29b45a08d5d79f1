use std::fmt;
use std::sync::Arc;

use super::module::{FreeModule, ModElem, Structure};
use super::operator::{Linearity, Operator, RingDiff};
use crate::scalar::Scalar;

/// A free module, possibly cut down to the image of a projector (used for
/// exterior powers inside tensor powers).
#[derive(Clone, Debug)]
pub struct Space<F> {
    pub module: Arc<FreeModule>,
    pub proj: Option<Operator<F>>,
}

impl<F: Scalar> Space<F> {
    pub fn free(module: Arc<FreeModule>) -> Self {
        Space { module, proj: None }
    }

    /// Spanning set used for verification: monomial multiples of generators,
    /// projected when the space is a subspace. For antisymmetric tensors only
    /// nondecreasing tuples are needed.
    pub fn test_elements(&self, xdeg: u32) -> Vec<ModElem<F>> {
        let mut basis = self.module.basis_elements::<F>(xdeg);
        if let (Some(_), Structure::Tensor { .. }) = (&self.proj, self.module.structure()) {
            basis.retain(|e| {
                let t = e.coeffs.iter().position(|c| !c.is_zero()).expect("basis element is nonzero");
                self.module.index_tuple(t).windows(2).all(|w| w[0] <= w[1])
            });
        }
        match &self.proj {
            None => basis,
            Some(p) => {
                let mut out: Vec<ModElem<F>> = Vec::new();
                for e in basis {
                    let y = p.apply(&e);
                    if !y.is_zero() && !out.contains(&y) {
                        out.push(y);
                    }
                }
                out
            }
        }
    }

    pub fn zero(&self) -> ModElem<F> {
        ModElem::zero(&self.module)
    }
}

/// Small side `(V, d)` of a contraction with its comparison maps.
#[derive(Clone, Debug)]
pub struct SmallModel<F> {
    pub space: Space<F>,
    pub d: Operator<F>,
    pub tau: Operator<F>,
    pub sigma: Operator<F>,
}

/// Contraction `(W, delta, h)` with `h^2 = 0`, `h delta h = h`, together with
/// an explicit small model.
#[derive(Clone)]
pub struct Contraction<F> {
    pub name: String,
    pub big: Space<F>,
    pub delta: Operator<F>,
    pub h: Operator<F>,
    pub small: SmallModel<F>,
    /// Differential on coefficients, if nonzero. Needed for `Lambda^0`.
    pub ring_diff: Option<RingDiff<F>>,
    /// Coordinate degree of the coefficient monomials used in verification.
    pub test_xdeg: u32,
}

impl<F> fmt::Debug for Contraction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Contraction({}, rank {} -> {})", self.name, self.big.module.rank(), self.small.space.module.rank())
    }
}

/// One verified identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
    pub witness: Option<String>,
    pub samples: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub contraction: String,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    pub fn summary(&self) -> String {
        let bad: Vec<String> = self.failures().iter().map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect();
        if bad.is_empty() {
            format!("{}: {} identities hold", self.contraction, self.checks.len())
        } else {
            format!("{}: {}", self.contraction, bad.join("; "))
        }
    }
}

/// Check `lhs(x) == rhs(x)` on every sample.
pub fn check_identity<F: Scalar>(
    name: &str,
    module_in: &FreeModule,
    module_out: &FreeModule,
    samples: &[ModElem<F>],
    lhs: impl Fn(&ModElem<F>) -> ModElem<F>,
    rhs: impl Fn(&ModElem<F>) -> ModElem<F>,
) -> CheckResult {
    for x in samples {
        let a = lhs(x);
        let b = rhs(x);
        if a != b {
            return CheckResult {
                name: name.into(),
                ok: false,
                witness: Some(format!("on {}: difference {}", x.display(module_in), a.sub(&b).display(module_out))),
                samples: samples.len(),
            };
        }
    }
    CheckResult { name: name.into(), ok: true, witness: None, samples: samples.len() }
}

fn check_degree<F: Scalar>(name: &str, op: &Operator<F>, src: &FreeModule, dst: &FreeModule, samples: &[ModElem<F>]) -> CheckResult {
    for x in samples {
        let Some(dx) = x.degree(src) else { continue };
        let y = op.apply(x);
        if y.is_zero() {
            continue;
        }
        match y.degree(dst) {
            Some(dy) if dy == dx + op.degree => {}
            got => {
                return CheckResult {
                    name: name.into(),
                    ok: false,
                    witness: Some(format!("{} of degree {} maps to degree {:?}, expected {}", x.display(src), dx, got, dx + op.degree)),
                    samples: samples.len(),
                };
            }
        }
    }
    CheckResult { name: name.into(), ok: true, witness: None, samples: samples.len() }
}

fn check_linear<F: Scalar>(name: &str, op: &Operator<F>, src: &FreeModule, dst: &FreeModule, xdeg: u32) -> CheckResult {
    let monos = src.shape().monomials::<F>(xdeg);
    let mut count = 0;
    for i in 0..src.rank() {
        let g: ModElem<F> = src.gen(i);
        let tg = op.apply(&g);
        for m in &monos {
            count += 1;
            let lhs = op.apply(&g.lmul(m));
            let rhs = tg.lmul(&m.twist(op.degree));
            if lhs != rhs {
                return CheckResult {
                    name: name.into(),
                    ok: false,
                    witness: Some(format!("on ({}) {}: difference {}", m, src.label(i), lhs.sub(&rhs).display(dst))),
                    samples: count,
                };
            }
        }
    }
    CheckResult { name: name.into(), ok: true, witness: None, samples: count }
}

impl<F: Scalar> Contraction<F> {
    /// `id - [delta, h]`.
    pub fn varpi(&self) -> Operator<F> {
        Operator::identity().sub(&self.delta.commutator(&self.h))
    }

    pub fn big_tests(&self) -> Vec<ModElem<F>> {
        self.big.test_elements(self.test_xdeg)
    }

    pub fn small_tests(&self) -> Vec<ModElem<F>> {
        self.small.space.test_elements(self.test_xdeg)
    }

    /// Contraction axioms, the classical side conditions against the small
    /// model, degrees, and R-linearity of the homotopy.
    pub fn verify(&self) -> VerifyReport {
        let w = &self.big.module;
        let v = &self.small.space.module;
        let bt = self.big_tests();
        let st = self.small_tests();
        let (d, h) = (&self.delta, &self.h);
        let sm = &self.small;
        let zero_w = |_: &ModElem<F>| ModElem::zero(w);
        let zero_v = |_: &ModElem<F>| ModElem::zero(v);
        let mut checks = vec![
            check_degree("delta has degree +1", d, w, w, &bt),
            check_degree("h has degree -1", h, w, w, &bt),
            check_identity("delta^2 = 0", w, w, &bt, |x| d.apply(&d.apply(x)), zero_w),
            check_identity("h^2 = 0", w, w, &bt, |x| h.apply(&h.apply(x)), zero_w),
            check_identity("h delta h = h", w, w, &bt, |x| h.apply(&d.apply(&h.apply(x))), |x| h.apply(x)),
            check_identity("d^2 = 0 on V", v, v, &st, |x| sm.d.apply(&sm.d.apply(x)), zero_v),
            check_identity("sigma tau = id", v, v, &st, |x| sm.sigma.apply(&sm.tau.apply(x)), |x| x.clone()),
            check_identity(
                "id - tau sigma = h delta + delta h",
                w,
                w,
                &bt,
                |x| x.sub(&sm.tau.apply(&sm.sigma.apply(x))),
                |x| h.apply(&d.apply(x)).add(&d.apply(&h.apply(x))),
            ),
            check_identity("sigma h = 0", w, v, &bt, |x| sm.sigma.apply(&h.apply(x)), zero_v),
            check_identity("h tau = 0", v, w, &st, |x| h.apply(&sm.tau.apply(x)), zero_w),
            check_identity("delta tau = tau d", v, w, &st, |x| d.apply(&sm.tau.apply(x)), |x| sm.tau.apply(&sm.d.apply(x))),
            check_identity("sigma delta = d sigma", w, v, &bt, |x| sm.sigma.apply(&d.apply(x)), |x| sm.d.apply(&sm.sigma.apply(x))),
        ];
        if h.linearity == Linearity::RLinear && self.big.proj.is_none() {
            checks.push(check_linear("h is R-linear", h, w, w, self.test_xdeg));
        }
        VerifyReport { contraction: self.name.clone(), checks }
    }
}

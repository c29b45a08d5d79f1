//! Atiyah cocycles of a Lie pair: the curvature cocycle on `B` and the
//! cocycle of the pullback dg Lie algebroid, and their comparison.

pub mod connection;

use std::sync::Arc;

use crate::error::Result;
use crate::exactalg::CochainElem;
use crate::hpl::algebra::{hom_as_operator, hom_eval, hom_from_values, tensor_elems, tensor_op};
use crate::hpl::contraction::check_identity;
use crate::hpl::{hom_contraction, tensor_contraction, CheckResult, Contraction, FreeModule, ModElem, Operator, Perturbed};
use crate::liepair::{BottModule, ConnectionTable, LiePairModel, ModuleTag};
use crate::pidgla::PullbackAlgebroid;
use crate::scalar::Scalar;

pub use connection::SectionConnection;

/// Everything needed to compare the two cocycles for one model: the
/// perturbed contraction onto `B` and the induced contraction of
/// `Hom(L (x) L, L)` onto `Hom(B (x) B, B)`.
#[derive(Clone, Debug)]
pub struct AtiyahSetup<F> {
    pub pi: PullbackAlgebroid<F>,
    pub perturbed: Perturbed<F>,
    pub hom: Contraction<F>,
}

/// Outcome of the cochain-level comparison.
#[derive(Clone, Debug)]
pub struct Comparison<F> {
    pub equal: bool,
    pub residual: ModElem<F>,
    pub residual_display: String,
}

fn sign<F: Scalar>(deg: i32, x: ModElem<F>) -> ModElem<F> {
    if deg.rem_euclid(2) == 1 {
        x.neg()
    } else {
        x
    }
}

impl<F: Scalar> AtiyahSetup<F> {
    pub fn new(model: &LiePairModel<F>) -> Result<Self> {
        let pi = PullbackAlgebroid::new(model);
        let perturbed = pi.perturbed_pi_contraction()?;
        let p = &perturbed.contraction;
        let hom = hom_contraction(&tensor_contraction(&[p.clone(), p.clone()]), p);
        Ok(AtiyahSetup { pi, perturbed, hom })
    }

    /// `Hom(L (x) L, L)`.
    pub fn big(&self) -> &Arc<FreeModule> {
        &self.hom.big.module
    }

    /// `Hom(B (x) B, B)`.
    pub fn small(&self) -> &Arc<FreeModule> {
        &self.hom.small.space.module
    }

    /// `L (x) L`.
    pub fn tensor(&self) -> &Arc<FreeModule> {
        self.big().hom_parts().expect("Hom module").0
    }

    pub fn b_tensor(&self) -> &Arc<FreeModule> {
        self.small().hom_parts().expect("Hom module").0
    }

    /// `At(x, y) = Q(nabla_x y) - nabla_{Qx} y - (-1)^{|x|} nabla_x (Q y)` for
    /// homogeneous `x`.
    pub fn atiyah_pair_value(&self, conn: &SectionConnection<F>, q: &Operator<F>, x: &ModElem<F>, y: &ModElem<F>) -> ModElem<F> {
        let dx = x.degree(&self.pi.sections).unwrap_or(0);
        let a = q.apply(&conn.nabla(x, y));
        let b = conn.nabla(&q.apply(x), y);
        let c = sign(dx, conn.nabla(x, &q.apply(y)));
        a.sub(&b).sub(&c)
    }

    /// The dg Atiyah cocycle as an element of `Hom(L (x) L, L)`.
    pub fn dgla_atiyah(&self, table: &ConnectionTable<F>) -> ModElem<F> {
        let conn = SectionConnection::new(&self.pi, table);
        let q = self.pi.q();
        let t = self.tensor();
        let w = &self.pi.sections;
        let values: Vec<ModElem<F>> = (0..t.rank())
            .map(|idx| {
                let tup = t.index_tuple(idx);
                self.atiyah_pair_value(&conn, &q, &w.gen(tup[0]), &w.gen(tup[1]))
            })
            .collect();
        hom_from_values(self.big(), &values)
    }

    /// Curvature cocycle `sum_p eta^p R(e_p, e_i) e_j` on `B`, as an element of
    /// `Hom(B (x) B, B)`. Computed from the Christoffel symbols on `B` alone.
    pub fn pair_atiyah(&self, table: &ConnectionTable<F>) -> ModElem<F> {
        let model = &self.pi.model;
        let (n, r, m) = (model.n(), model.r(), model.m());
        let g = |i: usize, j: usize, k: usize| table.gamma(i, j, k);
        let bt = self.b_tensor();
        let mut values = vec![ModElem::zero(&self.pi.b); bt.rank()];
        for i in r..m {
            for j in r..m {
                let slot = bt.tuple_index(&[i - r, j - r]);
                for t in r..m {
                    let mut coef = CochainElem::zero(n);
                    for p in 0..r {
                        let mut c = model.anchor_apply(p, g(i, j, t)).sub(&model.anchor_apply(i, g(p, j, t)));
                        for k in r..m {
                            c = c.add(&g(i, j, k).mul(g(p, k, t))).sub(&g(p, j, k).mul(g(i, k, t)));
                        }
                        for s in 0..m {
                            c = c.sub(&model.c(p, i, s).mul(g(s, j, t)));
                        }
                        if !c.is_zero() {
                            coef.add_assign_ref(&CochainElem::eta(n, p).scale_poly(&c));
                        }
                    }
                    values[slot].coeffs[t - r] = coef;
                }
            }
        }
        hom_from_values(self.small(), &values)
    }

    /// `Pi(Theta) = p_B Theta (tau (x) tau)`.
    pub fn proj_pi12(&self, theta: &ModElem<F>) -> ModElem<F> {
        self.hom.small.sigma.apply(theta)
    }

    /// `T(g) = tau g (p_B (x) p_B)`.
    pub fn incl_t12(&self, g: &ModElem<F>) -> ModElem<F> {
        self.hom.small.tau.apply(g)
    }

    /// `H(Theta) = p~_A Theta + (-1)^{|Theta|} varpi Theta (p~_A (x) id + varpi (x) p~_A)`
    /// with `varpi = id - [Q, p~_A]`, written directly from the splitting maps.
    pub fn homotopy_h12(&self, theta: &ModElem<F>) -> ModElem<F> {
        let pt = self.pi.p_tilde();
        let q = self.pi.q();
        let varpi = Operator::identity().sub(&q.commutator(&pt));
        let t = self.tensor();
        let ht = tensor_op(t, t, vec![pt.clone(), Operator::identity()]).add(&tensor_op(t, t, vec![varpi.clone(), pt.clone()]));
        let big = self.big();
        let mut out = ModElem::zero(big);
        for (deg, part) in theta.parts_by_degree(big) {
            let values: Vec<ModElem<F>> = (0..t.rank())
                .map(|idx| {
                    let g = t.gen(idx);
                    pt.apply(&hom_eval(big, &part, &g)).add(&sign(deg, varpi.apply(&hom_eval(big, &part, &ht.apply(&g)))))
                })
                .collect();
            out.add_assign_ref(&hom_from_values(big, &values));
        }
        out
    }

    /// `Pi(At) - at`; equal iff identically zero.
    pub fn compare_projection(&self, table: &ConnectionTable<F>) -> Comparison<F> {
        let lhs = self.proj_pi12(&self.dgla_atiyah(table));
        let rhs = self.pair_atiyah(table);
        let residual = lhs.sub(&rhs);
        Comparison { equal: residual.is_zero(), residual_display: residual.display(self.small()), residual }
    }

    /// `D(At) = 0` for the differential of `Hom(L (x) L, L)` induced by `Q`.
    pub fn q_closedness(&self, at: &ModElem<F>) -> CheckResult {
        let big = self.big();
        let d = self.hom.delta.apply(at);
        CheckResult {
            name: "Q-closedness of At".into(),
            ok: d.is_zero(),
            witness: if d.is_zero() { None } else { Some(d.display(big)) },
            samples: big.rank(),
        }
    }

    /// `d^Bott(at) = 0` in `B* (x) B* (x) B`, via the module description.
    pub fn pair_closedness(&self, at: &ModElem<F>) -> CheckResult {
        let module = BottModule::new(&self.pi.model, ModuleTag::BDualEndB);
        let d = ModElem::from_coeffs(module.covariant_derivative(&self.pi.model, &at.coeffs));
        CheckResult {
            name: "d_CE(at) = 0".into(),
            ok: d.is_zero(),
            witness: if d.is_zero() { None } else { Some(d.display(self.small())) },
            samples: self.small().rank(),
        }
    }

    /// `At(f x, y)` and `At(x, f y)` from the definition against evaluation of
    /// the stored element, for monomials `f` up to coordinate degree `xdeg`.
    pub fn tensoriality(&self, table: &ConnectionTable<F>, at: &ModElem<F>, xdeg: u32) -> CheckResult {
        let conn = SectionConnection::new(&self.pi, table);
        let q = self.pi.q();
        let w = &self.pi.sections;
        let t = self.tensor();
        let big = self.big();
        let monos = w.shape().monomials::<F>(xdeg);
        let mut samples = 0;
        for a in 0..w.rank() {
            for b in 0..w.rank() {
                for f in &monos {
                    let (x, y) = (w.gen::<F>(a), w.gen::<F>(b));
                    for (lhs_x, lhs_y) in [(x.lmul(f), y.clone()), (x.clone(), y.lmul(f))] {
                        samples += 1;
                        let direct = self.atiyah_pair_value(&conn, &q, &lhs_x, &lhs_y);
                        let stored = hom_eval(big, at, &tensor_elems(t, &[&lhs_x, &lhs_y]));
                        if direct != stored {
                            return CheckResult {
                                name: "tensoriality of At".into(),
                                ok: false,
                                witness: Some(format!(
                                    "on ({}, {}): {}",
                                    lhs_x.display(w),
                                    lhs_y.display(w),
                                    direct.sub(&stored).display(w)
                                )),
                                samples,
                            };
                        }
                    }
                }
            }
        }
        CheckResult { name: "tensoriality of At".into(), ok: true, witness: None, samples }
    }

    /// The two displayed properties of the connection: `nabla_{deta} deta = 0`
    /// and `nabla_{e_l} i_B(b) = i_B(nabla_{e_l} b)`.
    pub fn connection_properties(&self, table: &ConnectionTable<F>) -> Vec<CheckResult> {
        let conn = SectionConnection::new(&self.pi, table);
        let pi = &self.pi;
        let w = &pi.sections;
        let (r, m) = (pi.r(), pi.m());
        let mut out = Vec::new();
        let mut witness = None;
        'pairs: for i in 0..r {
            for j in 0..r {
                let v = conn.nabla(&pi.gen(pi.deta(i)), &pi.gen(pi.deta(j)));
                if !v.is_zero() {
                    witness = Some(format!("deta{} on deta{}: {}", i + 1, j + 1, v.display(w)));
                    break 'pairs;
                }
            }
        }
        out.push(CheckResult { name: "nabla_{deta} deta = 0".into(), ok: witness.is_none(), witness, samples: r * r });
        let b_gens: Vec<ModElem<F>> = (0..m - r).map(|l| pi.b.gen(l)).collect();
        let ib = pi.i_b();
        let mut ok = true;
        let mut witness = None;
        'outer: for l in 0..m {
            for b in &b_gens {
                let lhs = conn.nabla(&pi.gen(pi.e(l)), &ib.apply(b));
                let bl = b.coeffs.iter().position(|c| !c.is_zero()).expect("generator");
                let mut on_b = ModElem::zero(&pi.b);
                for k in r..m {
                    on_b.coeffs[k - r] = CochainElem::from_poly(table.gamma(l, r + bl, k).clone());
                }
                let rhs = ib.apply(&on_b);
                if lhs != rhs {
                    ok = false;
                    witness = Some(format!("e{} on b{}: {}", l + 1, r + bl + 1, lhs.sub(&rhs).display(w)));
                    break 'outer;
                }
            }
        }
        out.push(CheckResult { name: "nabla_{e_l} i_B = i_B nabla_{e_l}".into(), ok, witness, samples: m * (m - r) });
        out
    }

    /// Direct formula against the constructed contraction's homotopy.
    pub fn check_h12(&self, samples: &[ModElem<F>]) -> CheckResult {
        let big = self.big();
        check_identity("H12 direct = constructed", big, big, samples, |x| self.homotopy_h12(x), |x| self.hom.h.apply(x))
    }

    /// Wrap a homogeneous element of `Hom(L (x) L, L)` as an operator.
    pub fn as_operator(&self, theta: &ModElem<F>) -> Operator<F> {
        hom_as_operator(self.big(), theta)
    }
}

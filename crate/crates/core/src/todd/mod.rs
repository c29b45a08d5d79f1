//! Scalar Atiyah classes, Todd cocycles on both sides, the contraction of
//! End-valued forms, and exact cohomology over a point.

pub mod exact;
pub mod forms;
pub mod series;

use std::fmt;

use crate::atiyah::AtiyahSetup;
use crate::error::{Error, Result};
use crate::exactalg::CochainElem;
use crate::hpl::contraction::check_identity;
use crate::hpl::{exterior_contraction, hom_contraction, tensor_contraction, CheckResult, Contraction, ModElem, Operator};
use crate::liepair::{BottModule, ConnectionTable, LiePairModel, ModuleTag};
use crate::scalar::Scalar;

pub use exact::{ce_cohomology_dims, exactness_solve, of_degree, Exactness};
pub use forms::FormSpaces;
pub use series::{bernoulli, SeriesCoeffs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Forms on `B` with Chevalley–Eilenberg coefficients.
    Pair,
    /// Forms on the sections of the pullback dg Lie algebroid.
    Dgla,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Pair => "pair",
            Side::Dgla => "dgla",
        })
    }
}

/// The maps of the contraction of `Lambda^k L*` onto `Lambda^k B*`, and
/// `T^` on End-valued forms.
#[derive(Clone, Debug)]
pub struct LambdaMaps<F> {
    pub k: usize,
    pub forms: Contraction<F>,
    pub form_end: Contraction<F>,
}

impl<F: Scalar> LambdaMaps<F> {
    pub fn t(&self) -> &Operator<F> {
        &self.forms.small.tau
    }

    pub fn pi(&self) -> &Operator<F> {
        &self.forms.small.sigma
    }

    pub fn h(&self) -> &Operator<F> {
        &self.forms.h
    }

    /// `T^(omega (x) Phi) = T(omega) (x) tau Phi p_B`.
    pub fn t_hat(&self) -> &Operator<F> {
        &self.form_end.small.tau
    }
}

#[derive(Clone, Debug)]
pub struct ToddSetup<F> {
    pub atiyah: AtiyahSetup<F>,
    /// `Hom(L, R)` onto `Hom(B, R)`.
    pub dual: Contraction<F>,
    /// `Hom(L, L)` onto `Hom(B, B)`.
    pub end: Contraction<F>,
    pub big: FormSpaces,
    pub small: FormSpaces,
}

impl<F: Scalar> ToddSetup<F> {
    pub fn new(model: &LiePairModel<F>) -> Result<Self> {
        let atiyah = AtiyahSetup::new(model)?;
        let p = &atiyah.perturbed.contraction;
        let unit = Contraction::unit(model.shape(), p.ring_diff.clone());
        let dual = hom_contraction(p, &unit);
        let end = hom_contraction(p, p);
        let r = model.r();
        // one degree past r, where every form vanishes
        let big = FormSpaces::new(&dual.big.module, &end.big.module, r + 1);
        let small = FormSpaces::new(&dual.small.space.module, &end.small.space.module, r + 1);
        Ok(ToddSetup { atiyah, dual, end, big, small })
    }

    pub fn model(&self) -> &LiePairModel<F> {
        &self.atiyah.pi.model
    }

    pub fn r(&self) -> usize {
        self.model().r()
    }

    pub fn spaces(&self, side: Side) -> &FormSpaces {
        match side {
            Side::Pair => &self.small,
            Side::Dgla => &self.big,
        }
    }

    pub fn lambda_maps(&self, k: usize) -> LambdaMaps<F> {
        let mut factors = vec![self.dual.clone(); k];
        factors.push(self.end.clone());
        LambdaMaps { k, forms: exterior_contraction(&self.dual, k), form_end: tensor_contraction(&factors) }
    }

    /// The differential on `Lambda^k` forms of one side.
    pub fn form_differential(&self, side: Side, k: usize) -> Operator<F> {
        let c = exterior_contraction(&self.dual, k);
        match side {
            Side::Pair => c.small.d,
            Side::Dgla => c.delta,
        }
    }

    /// The Atiyah cocycle as an End-valued one-form.
    pub fn cocycle(&self, table: &ConnectionTable<F>, side: Side) -> ModElem<F> {
        match side {
            Side::Pair => self.small.from_hom(&self.atiyah.pair_atiyah(table)),
            Side::Dgla => self.big.from_hom(&self.atiyah.dgla_atiyah(table)),
        }
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.r() {
            return Err(Error::KOutOfRange { k, max: self.r() });
        }
        Ok(())
    }

    fn certify_closed(&self, side: Side, k: usize, x: &ModElem<F>, what: &str) -> Result<()> {
        let dx = self.form_differential(side, k).apply(x);
        if dx.is_zero() {
            Ok(())
        } else {
            Err(Error::NotClosed(format!("{} {} in degree {}: d = {}", side, what, k, dx.display(self.spaces(side).forms(k)))))
        }
    }

    /// `str(theta^k)` for `k = 0..=kmax`, each certified closed.
    pub fn scalar_classes(&self, table: &ConnectionTable<F>, side: Side, kmax: usize) -> Result<Vec<ModElem<F>>> {
        self.check_k(kmax)?;
        let s = self.spaces(side);
        let theta = self.cocycle(table, side);
        let mut power = s.identity_end();
        let mut out = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            if k > 0 {
                power = s.product(k - 1, &power, 1, &theta);
            }
            let c = s.supertrace(k, &power);
            self.certify_closed(side, k, &c, "scalar class")?;
            out.push(c);
        }
        Ok(out)
    }

    pub fn scalar_class(&self, table: &ConnectionTable<F>, side: Side, k: usize) -> Result<ModElem<F>> {
        Ok(self.scalar_classes(table, side, k)?.pop().expect("nonempty"))
    }

    /// Components `0..=kmax` of `exp(sum_m t_m str(theta^m))`.
    pub fn todd_cocycle(&self, table: &ConnectionTable<F>, side: Side, kmax: usize) -> Result<Vec<ModElem<F>>> {
        let classes = self.scalar_classes(table, side, kmax)?;
        let t = SeriesCoeffs::<F>::new(kmax);
        let s = self.spaces(side);
        let log: Vec<ModElem<F>> = (0..=kmax)
            .map(|m| if m == 0 { ModElem::zero(s.forms(0)) } else { classes[m].scale(&t.t[m]) })
            .collect();
        let todd = truncated_exp(s, &log);
        for (k, x) in todd.iter().enumerate() {
            self.certify_closed(side, k, x, "Todd component")?;
        }
        Ok(todd)
    }

    /// Spanning set of `Lambda^k X* (x) End X` for one side: antisymmetrized
    /// monomial multiples of generators.
    pub fn form_end_spanning(&self, side: Side, k: usize, xdeg: u32) -> Vec<ModElem<F>> {
        let s = self.spaces(side);
        let alt = s.form_end_alt::<F>(k);
        let module = s.form_end(k);
        let mut out: Vec<ModElem<F>> = Vec::new();
        for e in module.basis_elements::<F>(xdeg) {
            let t = e.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
            let tuple = module.index_tuple(t);
            if !tuple[..k].windows(2).all(|w| w[0] <= w[1]) {
                continue;
            }
            let y = alt.apply(&e);
            if !y.is_zero() && !out.contains(&y) {
                out.push(y);
            }
        }
        out
    }

    /// `str(T^ X) = T_Lambda(tr X)` on a spanning set of each
    /// `Lambda^k B* (x) End B`, `k = 0..=r`.
    pub fn supertrace_identity_check(&self) -> Vec<CheckResult> {
        (0..=self.r())
            .map(|k| {
                let maps = self.lambda_maps(k);
                let samples = self.form_end_spanning(Side::Pair, k, 0);
                check_identity(
                    &format!("str T^ = T tr on Lambda^{} B* (x) End B", k),
                    self.small.form_end(k),
                    self.big.forms(k),
                    &samples,
                    |x| self.big.supertrace(k, &maps.t_hat().apply(x)),
                    |x| maps.t().apply(&self.small.supertrace(k, x)),
                )
            })
            .collect()
    }

    /// `T^(X Y) = T^(X) T^(Y)` on spanning elements with `p + q <= r`.
    pub fn multiplicativity_check(&self, xdeg: u32) -> Vec<CheckResult> {
        let r = self.r();
        let maps: Vec<LambdaMaps<F>> = (0..=r).map(|k| self.lambda_maps(k)).collect();
        let mut out = Vec::new();
        for p in 0..=r {
            let xs = self.form_end_spanning(Side::Pair, p, xdeg);
            for q in 0..=(r - p) {
                let ys = self.form_end_spanning(Side::Pair, q, xdeg);
                let mut res = CheckResult { name: format!("T^ multiplicative on degrees ({}, {})", p, q), ok: true, witness: None, samples: xs.len() * ys.len() };
                'outer: for x in &xs {
                    for y in &ys {
                        let lhs = maps[p + q].t_hat().apply(&self.small.product(p, x, q, y));
                        let rhs = self.big.product(p, &maps[p].t_hat().apply(x), q, &maps[q].t_hat().apply(y));
                        if lhs != rhs {
                            res.ok = false;
                            res.witness = Some(format!(
                                "{} times {}",
                                x.display(self.small.form_end(p)),
                                y.display(self.small.form_end(q))
                            ));
                            break 'outer;
                        }
                    }
                }
                out.push(res);
            }
        }
        out
    }

    /// `str(At^k) - T_Lambda(tr(at^k))` in `Lambda^k L*`.
    pub fn class_difference(&self, table: &ConnectionTable<F>, k: usize) -> Result<ModElem<F>> {
        let dg = self.scalar_class(table, Side::Dgla, k)?;
        let pair = self.scalar_class(table, Side::Pair, k)?;
        Ok(dg.sub(&self.lambda_maps(k).t().apply(&pair)))
    }

    /// Decide whether [`Self::class_difference`] is `Q`-exact (point charts).
    pub fn class_comparison(&self, table: &ConnectionTable<F>, k: usize) -> Result<Exactness<F>> {
        let z = self.class_difference(table, k)?;
        let maps = self.lambda_maps(k);
        let module = self.big.forms(k);
        let spanning = of_degree(module, maps.forms.big.test_elements(0), k as i32 - 1);
        exactness_solve(module, &maps.forms.delta, &spanning, &z)
    }

    /// Decide whether `at(table) - at(other)` is `d_CE`-exact in
    /// `B* (x) End B` (point charts).
    pub fn connection_independence(&self, table: &ConnectionTable<F>, other: &ConnectionTable<F>) -> Result<Exactness<F>> {
        let z = self.atiyah.pair_atiyah(table).sub(&self.atiyah.pair_atiyah(other));
        let module = self.atiyah.small();
        let spanning = of_degree(module, module.basis_elements(0), 0);
        exactness_solve(module, &bott_operator(self.model(), ModuleTag::BDualEndB), &spanning, &z)
    }
}

/// The Chevalley–Eilenberg differential of a Bott module as an operator on
/// coefficient vectors.
pub fn bott_operator<F: Scalar>(model: &LiePairModel<F>, tag: ModuleTag) -> Operator<F> {
    let module = BottModule::new(model, tag);
    let model = model.clone();
    Operator::new(1, crate::hpl::Linearity::Scalar, move |x| ModElem::from_coeffs(module.covariant_derivative(&model, &x.coeffs)))
}

/// `exp(x)` truncated at the top form degree, for `x` with no degree-zero
/// part, given by homogeneous components.
pub fn truncated_exp<F: Scalar>(s: &FormSpaces, x: &[ModElem<F>]) -> Vec<ModElem<F>> {
    let kmax = x.len() - 1;
    let add = |a: &mut Vec<ModElem<F>>, b: &[ModElem<F>], c: &F| {
        for (ai, bi) in a.iter_mut().zip(b) {
            ai.add_assign_ref(&bi.scale(c));
        }
    };
    let mut out: Vec<ModElem<F>> = (0..=kmax).map(|k| ModElem::zero(s.forms(k))).collect();
    let mut power: Vec<ModElem<F>> = out.clone();
    power[0] = s.unit_form();
    let mut inv_fact = F::one();
    for j in 0..=kmax {
        if j > 0 {
            let mut next: Vec<ModElem<F>> = (0..=kmax).map(|k| ModElem::zero(s.forms(k))).collect();
            for p in 0..=kmax {
                if power[p].is_zero() {
                    continue;
                }
                for q in 1..=(kmax - p) {
                    if !x[q].is_zero() {
                        next[p + q].add_assign_ref(&s.wedge(p, &power[p], q, &x[q]));
                    }
                }
            }
            power = next;
            inv_fact = inv_fact / F::from_int(j as i64);
        }
        add(&mut out, &power, &inv_fact);
    }
    out
}

/// Constant `c` as a degree-zero form.
pub fn constant_form<F: Scalar>(s: &FormSpaces, c: F) -> ModElem<F> {
    let mut out = ModElem::zero(s.forms(0));
    out.coeffs[0] = CochainElem::constant(s.base.shape().nvars, c);
    out
}

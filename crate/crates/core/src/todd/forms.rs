use std::sync::Arc;

use crate::exactalg::CochainElem;
use crate::hpl::algebra::alt_slots;
use crate::hpl::{FreeModule, ModElem, Operator};
use crate::scalar::Scalar;

/// Forms `Lambda^k X*` and End-valued forms `Lambda^k X* (x) End X` for a
/// free module `X`, stored as tensors `X*^{(x)k}` and `X*^{(x)k} (x) End X`
/// antisymmetrized over the form slots.
#[derive(Clone, Debug)]
pub struct FormSpaces {
    pub base: Arc<FreeModule>,
    pub dual: Arc<FreeModule>,
    pub end: Arc<FreeModule>,
    forms: Vec<Arc<FreeModule>>,
    form_end: Vec<Arc<FreeModule>>,
}

fn odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

impl FormSpaces {
    /// `dual = Hom(X, R)` and `end = Hom(X, X)`, up to form degree `kmax`.
    pub fn new(dual: &Arc<FreeModule>, end: &Arc<FreeModule>, kmax: usize) -> Self {
        let base = end.hom_parts().expect("End module").0.clone();
        let shape = base.shape();
        let forms = (0..=kmax).map(|k| Arc::new(FreeModule::tensor(shape, &vec![dual.clone(); k]))).collect();
        let form_end = (0..=kmax)
            .map(|k| {
                let mut f = vec![dual.clone(); k];
                f.push(end.clone());
                Arc::new(FreeModule::tensor(shape, &f))
            })
            .collect();
        FormSpaces { base, dual: dual.clone(), end: end.clone(), forms, form_end }
    }

    pub fn kmax(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn forms(&self, k: usize) -> &Arc<FreeModule> {
        &self.forms[k]
    }

    pub fn form_end(&self, k: usize) -> &Arc<FreeModule> {
        &self.form_end[k]
    }

    fn n(&self) -> usize {
        self.base.rank()
    }

    /// `sum_a 1 (x) phi_{a->a}` in `Lambda^0 (x) End X`.
    pub fn identity_end<F: Scalar>(&self) -> ModElem<F> {
        let n = self.n();
        let mut out = ModElem::zero(&self.form_end[0]);
        for a in 0..n {
            out.coeffs[a * n + a] = CochainElem::one(self.base.shape().nvars);
        }
        out
    }

    pub fn unit_form<F: Scalar>(&self) -> ModElem<F> {
        let mut out = ModElem::zero(&self.forms[0]);
        out.coeffs[0] = CochainElem::one(self.base.shape().nvars);
        out
    }

    /// Read `f in Hom(X (x) X, X)` as an element of `X* (x) End X`:
    /// `x_i* (x) phi_{k->l}` corresponds to `(-1)^{|x_i|(|x_l| - |x_k|)} phi_{(i,k)->l}`.
    pub fn from_hom<F: Scalar>(&self, f: &ModElem<F>) -> ModElem<F> {
        let n = self.n();
        let b = &self.base;
        let mut out = ModElem::zero(&self.form_end[1]);
        for (g, c) in f.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, k, l) = (g / (n * n), (g / n) % n, g % n);
            let neg = odd(b.degree(i)) && odd(b.degree(l) - b.degree(k));
            out.coeffs[g] = if neg { c.neg() } else { c.clone() };
        }
        out
    }

    fn alt<F: Scalar>(&self, module: &Arc<FreeModule>, k: usize, x: ModElem<F>) -> ModElem<F> {
        if k < 2 {
            x
        } else {
            alt_slots::<F>(module, k).apply(&x)
        }
    }

    /// `(c x)(s y) = (-1)^{|x||s|} c s (x (x) y)`, antisymmetrized.
    pub fn wedge<F: Scalar>(&self, p: usize, x: &ModElem<F>, q: usize, y: &ModElem<F>) -> ModElem<F> {
        let (m1, m2, out_mod) = (&self.forms[p], &self.forms[q], &self.forms[p + q]);
        let mut out = ModElem::zero(out_mod);
        for (t1, c1) in x.coeffs.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            let d1 = m1.degree(t1);
            for (t2, c2) in y.coeffs.iter().enumerate() {
                if c2.is_zero() {
                    continue;
                }
                let c = c1.mul(&c2.twist(d1));
                if !c.is_zero() {
                    out.coeffs[t1 * m2.rank() + t2].add_assign_ref(&c);
                }
            }
        }
        self.alt(out_mod, p + q, out)
    }

    /// `(c x (x) A)(s y (x) B) = (-1)^{(|x|+|A|)|s| + |A||y|} c s (x (x) y) (x) (A B)`,
    /// antisymmetrized over the form slots.
    pub fn product<F: Scalar>(&self, p: usize, x: &ModElem<F>, q: usize, y: &ModElem<F>) -> ModElem<F> {
        let n = self.n();
        let nn = n * n;
        let (m1, out_mod) = (&self.form_end[p], &self.form_end[p + q]);
        let fq = self.forms[q].clone();
        let mut out = ModElem::zero(out_mod);
        for (t1, c1) in x.coeffs.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            let d1 = m1.degree(t1);
            let (f1, a) = (t1 / nn, t1 % nn);
            let (a_src, a_dst) = (a / n, a % n);
            let a_odd = odd(self.end.degree(a));
            for (t2, c2) in y.coeffs.iter().enumerate() {
                if c2.is_zero() {
                    continue;
                }
                let (f2, b) = (t2 / nn, t2 % nn);
                let (b_src, b_dst) = (b / n, b % n);
                if b_dst != a_src {
                    continue;
                }
                let mut c = c1.mul(&c2.twist(d1));
                if a_odd && odd(fq.degree(f2)) {
                    c = c.neg();
                }
                if !c.is_zero() {
                    let idx = (f1 * fq.rank() + f2) * nn + b_src * n + a_dst;
                    out.coeffs[idx].add_assign_ref(&c);
                }
            }
        }
        self.alt(out_mod, p + q, out)
    }

    /// `theta^k` for `theta` of form degree one; `theta^0 = id`.
    pub fn wedge_end_power<F: Scalar>(&self, theta: &ModElem<F>, k: usize) -> ModElem<F> {
        let mut acc = self.identity_end();
        for j in 0..k {
            acc = self.product(j, &acc, 1, theta);
        }
        acc
    }

    /// Supertrace `omega (x) phi_{a->b} -> delta_ab (-1)^{|x_a|} omega`.
    pub fn supertrace<F: Scalar>(&self, k: usize, phi: &ModElem<F>) -> ModElem<F> {
        let n = self.n();
        let mut out = ModElem::zero(&self.forms[k]);
        for (t, c) in phi.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (f, a) = (t / (n * n), t % (n * n));
            if a / n != a % n {
                continue;
            }
            if odd(self.base.degree(a / n)) {
                out.coeffs[f].add_assign_ref(&c.neg());
            } else {
                out.coeffs[f].add_assign_ref(c);
            }
        }
        out
    }

    /// Antisymmetrizer on `Lambda^k X* (x) End X`.
    pub fn form_end_alt<F: Scalar>(&self, k: usize) -> Operator<F> {
        if k < 2 {
            Operator::identity()
        } else {
            alt_slots(&self.form_end[k], k)
        }
    }
}

//! Contractions induced on the unit module, `Hom`, tensor products and
//! exterior powers.

use std::sync::Arc;

use super::algebra::{alt_operator, hom_as_operator, hom_from_values, tensor_op};
use super::contraction::{Contraction, Space, SmallModel};
use super::module::{FreeModule, ModElem};
use super::operator::{Linearity, Operator, RingDiff};
use crate::exactalg::RingShape;
use crate::scalar::Scalar;

fn ring_op<F: Scalar>(module: &FreeModule, ring_diff: &Option<RingDiff<F>>) -> Operator<F> {
    match ring_diff {
        Some(rd) => Operator::derivation(module, 1, vec![ModElem::zero(module); module.rank()], rd.clone()),
        None => Operator::zero(module, 1),
    }
}

impl<F: Scalar> Contraction<F> {
    /// The coefficient ring as a rank-one module: `delta = d_R`, `h = 0`.
    pub fn unit(shape: RingShape, ring_diff: Option<RingDiff<F>>) -> Self {
        let r = Arc::new(FreeModule::unit(shape));
        let delta = ring_op(&r, &ring_diff);
        Contraction {
            name: "R".into(),
            big: Space::free(r.clone()),
            delta: delta.clone(),
            h: Operator::zero(&r, -1),
            small: SmallModel { space: Space::free(r), d: delta, tau: Operator::identity(), sigma: Operator::identity() },
            ring_diff,
            test_xdeg: 0,
        }
    }
}

/// Apply `map` to each homogeneous part of a Hom element (as an operator of
/// that part's degree) and collect the results as new values on `src`.
fn hom_map<F: Scalar>(
    hom_in: &Arc<FreeModule>,
    hom_out: &FreeModule,
    src: &FreeModule,
    f: &ModElem<F>,
    map: impl Fn(&Operator<F>, i32, &ModElem<F>) -> ModElem<F>,
) -> ModElem<F> {
    let mut out = ModElem::zero(hom_out);
    for (deg, part) in f.parts_by_degree(hom_in) {
        let op = hom_as_operator(hom_in, &part);
        let values: Vec<ModElem<F>> = (0..src.rank()).map(|i| map(&op, deg, &src.gen(i))).collect();
        out.add_assign_ref(&hom_from_values(hom_out, &values));
    }
    out
}

fn sign<F: Scalar>(deg: i32, x: ModElem<F>) -> ModElem<F> {
    if deg.rem_euclid(2) == 1 {
        x.neg()
    } else {
        x
    }
}

/// `D f = delta' f - (-1)^{|f|} f delta` on Hom elements.
fn hom_differential<F: Scalar>(
    hom_in: &Arc<FreeModule>,
    hom_out: &Arc<FreeModule>,
    src: &Arc<FreeModule>,
    d_src: &Operator<F>,
    d_dst: &Operator<F>,
) -> Operator<F> {
    let (hi, ho, s, ds, dd) = (hom_in.clone(), hom_out.clone(), src.clone(), d_src.clone(), d_dst.clone());
    Operator::new(1, Linearity::Scalar, move |f| {
        hom_map(&hi, &ho, &s, f, |op, deg, w| dd.apply(&op.apply(w)).sub(&sign(deg, op.apply(&ds.apply(w)))))
    })
}

/// Contraction on `Hom(W, W')` with `D f = delta' f - (-1)^{|f|} f delta` and
/// `H f = h' f + (-1)^{|f|} varpi' f h`. The small model is `Hom(V, V')` with
/// `T g = tau' g sigma` and `S f = sigma' f tau`.
pub fn hom_contraction<F: Scalar>(c: &Contraction<F>, c2: &Contraction<F>) -> Contraction<F> {
    assert!(c.big.proj.is_none() && c2.big.proj.is_none(), "Hom of projected spaces is not supported");
    let (w, w2) = (&c.big.module, &c2.big.module);
    let (v, v2) = (&c.small.space.module, &c2.small.space.module);
    let big = Arc::new(FreeModule::hom(w, w2));
    let small = Arc::new(FreeModule::hom(v, v2));

    let delta = hom_differential(&big, &big, w, &c.delta, &c2.delta);
    let d = hom_differential(&small, &small, v, &c.small.d, &c2.small.d);

    let h = {
        let (hm, w, h1, h2, varpi2) = (big.clone(), w.clone(), c.h.clone(), c2.h.clone(), c2.varpi());
        Operator::new(-1, Linearity::RLinear, move |f| {
            hom_map(&hm, &hm, &w, f, |op, deg, g| h2.apply(&op.apply(g)).add(&sign(deg, varpi2.apply(&op.apply(&h1.apply(g))))))
        })
    };
    let tau = {
        let (sm, bm, w, sg, t2) = (small.clone(), big.clone(), w.clone(), c.small.sigma.clone(), c2.small.tau.clone());
        Operator::new(0, Linearity::RLinear, move |g| hom_map(&sm, &bm, &w, g, |op, _, x| t2.apply(&op.apply(&sg.apply(x)))))
    };
    let sigma = {
        let (sm, bm, v, t, s2) = (small.clone(), big.clone(), v.clone(), c.small.tau.clone(), c2.small.sigma.clone());
        Operator::new(0, Linearity::RLinear, move |f| hom_map(&bm, &sm, &v, f, |op, _, x| s2.apply(&op.apply(&t.apply(x)))))
    };
    Contraction {
        name: format!("Hom({}, {})", c.name, c2.name),
        big: Space::free(big),
        delta,
        h,
        small: SmallModel { space: Space::free(small), d, tau, sigma },
        ring_diff: c.ring_diff.clone(),
        test_xdeg: 0,
    }
}

/// `sum_i id (x) .. (x) op_i (x) .. (x) id` together with the "left factor"
/// variant `sum_i left_1 (x) .. (x) left_{i-1} (x) op_i (x) id ..`.
fn slot_sum<F: Scalar>(
    tmod: &Arc<FreeModule>,
    degree: i32,
    ops: &[Operator<F>],
    left: Option<&[Operator<F>]>,
) -> Operator<F> {
    let k = ops.len();
    let mut total = Operator::zero(tmod, degree);
    for i in 0..k {
        let mut slot: Vec<Operator<F>> = Vec::with_capacity(k);
        for a in 0..k {
            slot.push(match a.cmp(&i) {
                std::cmp::Ordering::Less => left.map(|l| l[a].clone()).unwrap_or_else(Operator::identity),
                std::cmp::Ordering::Equal => ops[i].clone(),
                std::cmp::Ordering::Greater => Operator::identity(),
            });
        }
        total = total.add(&tensor_op(tmod, tmod, slot));
    }
    total
}

/// Tensor product of contractions: `D = sum id (x) delta_i (x) id` and
/// `H = sum varpi (x) .. (x) varpi (x) h_i (x) id (x) .. (x) id`.
/// A single factor is returned unchanged; use [`Contraction::unit`] for none.
pub fn tensor_contraction<F: Scalar>(factors: &[Contraction<F>]) -> Contraction<F> {
    assert!(!factors.is_empty(), "empty tensor product: use Contraction::unit");
    if factors.len() == 1 {
        return factors[0].clone();
    }
    assert!(factors.iter().all(|c| c.big.proj.is_none() && c.small.space.proj.is_none()), "tensor of projected spaces is not supported");
    let shape = factors[0].big.module.shape();
    let big = Arc::new(FreeModule::tensor(shape, &factors.iter().map(|c| c.big.module.clone()).collect::<Vec<_>>()));
    let small = Arc::new(FreeModule::tensor(shape, &factors.iter().map(|c| c.small.space.module.clone()).collect::<Vec<_>>()));
    let parts = TensorParts::new(&big, &small, factors);
    Contraction {
        name: factors.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join(" (x) "),
        big: Space::free(big),
        delta: parts.delta,
        h: parts.h,
        small: SmallModel { space: Space::free(small), d: parts.d, tau: parts.tau, sigma: parts.sigma },
        ring_diff: factors[0].ring_diff.clone(),
        test_xdeg: 0,
    }
}

struct TensorParts<F> {
    delta: Operator<F>,
    h: Operator<F>,
    d: Operator<F>,
    tau: Operator<F>,
    sigma: Operator<F>,
}

impl<F: Scalar> TensorParts<F> {
    fn new(big: &Arc<FreeModule>, small: &Arc<FreeModule>, factors: &[Contraction<F>]) -> Self {
        let deltas: Vec<_> = factors.iter().map(|c| c.delta.clone()).collect();
        let hs: Vec<_> = factors.iter().map(|c| c.h.clone()).collect();
        let varpis: Vec<_> = factors.iter().map(|c| c.varpi()).collect();
        let ds: Vec<_> = factors.iter().map(|c| c.small.d.clone()).collect();
        let mut h = slot_sum(big, -1, &hs, Some(&varpis));
        if hs.iter().all(|o| o.linearity == Linearity::RLinear) {
            h.linearity = Linearity::RLinear;
        }
        let mut delta = slot_sum(big, 1, &deltas, None);
        if factors.iter().any(|c| c.delta.linearity == Linearity::Derivation) {
            delta.linearity = Linearity::Derivation;
        }
        TensorParts {
            delta,
            h,
            d: slot_sum(small, 1, &ds, None),
            tau: tensor_op(small, big, factors.iter().map(|c| c.small.tau.clone()).collect()),
            sigma: tensor_op(big, small, factors.iter().map(|c| c.small.sigma.clone()).collect()),
        }
    }
}

/// Contraction on `Lambda^k W`, the graded-antisymmetric part of the k-fold
/// tensor power: `D_Lambda = D^k` and `H_Lambda = Alt H^k`.
pub fn exterior_contraction<F: Scalar>(c: &Contraction<F>, k: usize) -> Contraction<F> {
    let shape = c.big.module.shape();
    match k {
        0 => return Contraction::unit(shape, c.ring_diff.clone()),
        1 => return c.clone(),
        _ => {}
    }
    assert!(c.big.proj.is_none() && c.small.space.proj.is_none(), "exterior power of a projected space is not supported");
    let big = Arc::new(FreeModule::tensor(shape, &vec![c.big.module.clone(); k]));
    let small = Arc::new(FreeModule::tensor(shape, &vec![c.small.space.module.clone(); k]));
    let factors = vec![c.clone(); k];
    let parts = TensorParts::new(&big, &small, &factors);
    let alt_w = alt_operator::<F>(&big);
    let alt_v = alt_operator::<F>(&small);
    let mut h = alt_w.compose(&parts.h);
    h.linearity = parts.h.linearity;
    Contraction {
        name: format!("Lambda^{} {}", k, c.name),
        big: Space { module: big, proj: Some(alt_w) },
        delta: parts.delta,
        h,
        small: SmallModel { space: Space { module: small, proj: Some(alt_v) }, d: parts.d, tau: parts.tau, sigma: parts.sigma },
        ring_diff: c.ring_diff.clone(),
        test_xdeg: 0,
    }
}

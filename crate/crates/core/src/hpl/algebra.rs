//! Evaluation of `Hom` elements, tensor products of elements and maps, and
//! the graded antisymmetrizer. Every Koszul sign in the crate comes from
//! here.

use std::sync::Arc;

use super::module::{FreeModule, ModElem};
use super::operator::{Linearity, Operator};
use crate::exactalg::CochainElem;
use crate::scalar::Scalar;

fn odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

/// `f(x)` for `f` in `Hom(src, dst)`, using
/// `f(s w_i) = (-1)^{|s||f|} s f(w_i)` on each homogeneous part of `f`.
pub fn hom_eval<F: Scalar>(hom: &FreeModule, f: &ModElem<F>, x: &ModElem<F>) -> ModElem<F> {
    let (_, dst) = hom.hom_parts().expect("Hom module");
    let mut out = ModElem::zero(dst);
    for (i, s) in x.coeffs.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let (even, oddp) = s.parity_split();
        for j in 0..dst.rank() {
            let c = &f.coeffs[i * dst.rank() + j];
            if c.is_zero() {
                continue;
            }
            if !even.is_zero() {
                out.coeffs[j].add_assign_ref(&even.mul(c));
            }
            if !oddp.is_zero() {
                // (-1)^{|u| + deg phi_ij} on each term u of c
                let mut tw = c.twist(1);
                if odd(hom.degree(i * dst.rank() + j)) {
                    tw = tw.neg();
                }
                out.coeffs[j].add_assign_ref(&oddp.mul(&tw));
            }
        }
    }
    out
}

/// Values `f(w_i)` on the source generators.
pub fn hom_values<F: Scalar>(hom: &FreeModule, f: &ModElem<F>) -> Vec<ModElem<F>> {
    let (src, dst) = hom.hom_parts().expect("Hom module");
    (0..src.rank()).map(|i| ModElem::from_coeffs(f.coeffs[i * dst.rank()..(i + 1) * dst.rank()].to_vec())).collect()
}

/// The element of `Hom(src, dst)` with the given values on generators.
pub fn hom_from_values<F: Scalar>(hom: &FreeModule, values: &[ModElem<F>]) -> ModElem<F> {
    let (src, _) = hom.hom_parts().expect("Hom module");
    assert_eq!(values.len(), src.rank());
    ModElem::from_coeffs(values.iter().flat_map(|v| v.coeffs.iter().cloned()).collect())
}

/// Wrap a homogeneous Hom element as an R-linear operator.
pub fn hom_as_operator<F: Scalar>(hom: &Arc<FreeModule>, f: &ModElem<F>) -> Operator<F> {
    let deg = f.degree(hom).unwrap_or(0);
    let (hom, f) = (hom.clone(), f.clone());
    Operator::new(deg, Linearity::RLinear, move |x| hom_eval(&hom, &f, x))
}

/// `x_1 (x) ... (x) x_k` in `tmod`, moving each coefficient to the front
/// past the generators before it.
pub fn tensor_elems<F: Scalar>(tmod: &FreeModule, xs: &[&ModElem<F>]) -> ModElem<F> {
    let factors = tmod.tensor_factors().expect("tensor module");
    assert_eq!(factors.len(), xs.len());
    let nv = tmod.shape().nvars;
    let mut out = ModElem::zero(tmod);
    // (accumulated coefficient, flat index, parity of generator degrees so far)
    let mut acc: Vec<(CochainElem<F>, usize, bool)> = vec![(CochainElem::one(nv), 0, false)];
    for (f, x) in factors.iter().zip(xs) {
        let mut next = Vec::new();
        for (coef, idx, par) in &acc {
            for (i, c) in x.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let moved = if *par { c.twist(1) } else { c.clone() };
                let nc = coef.mul(&moved);
                if nc.is_zero() {
                    continue;
                }
                next.push((nc, idx * f.rank() + i, *par ^ odd(f.degree(i))));
            }
        }
        acc = next;
        if acc.is_empty() {
            return out;
        }
    }
    for (c, idx, _) in acc {
        out.coeffs[idx].add_assign_ref(&c);
    }
    out
}

/// `(f_1 (x) ... (x) f_k)(v_1 (x) ... (x) v_k) =
/// (-1)^{sum_{a<b} |v_a||f_b|} f_1(v_1) (x) ... (x) f_k(v_k)`, applied to
/// each term written as `(c w_{i1}) (x) w_{i2} (x) ...`.
pub fn tensor_apply<F: Scalar>(tmod: &FreeModule, out_mod: &FreeModule, ops: &[&Operator<F>], x: &ModElem<F>) -> ModElem<F> {
    let factors = tmod.tensor_factors().expect("tensor module");
    assert_eq!(factors.len(), ops.len());
    let mut out = ModElem::zero(out_mod);
    if factors.is_empty() {
        out.add_assign_ref(x);
        return out;
    }
    for (t, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let tuple = tmod.index_tuple(t);
        // parity of sum_{2<=a<b} |w_a||f_b| and of sum_{b>=2} |f_b|
        let mut tail_sign = false;
        let mut tail_op_par = false;
        for b in 1..ops.len() {
            let fb = odd(ops[b].degree);
            tail_op_par ^= fb;
            if fb {
                for a in 1..b {
                    tail_sign ^= odd(factors[a].degree(tuple[a]));
                }
            }
        }
        let rest: Vec<ModElem<F>> = (1..ops.len()).map(|a| ops[a].apply(&factors[a].gen(tuple[a]))).collect();
        if rest.iter().any(|r| r.is_zero()) {
            continue;
        }
        let (even, oddp) = c.parity_split();
        for (part, part_odd) in [(even, false), (oddp, true)] {
            if part.is_zero() {
                continue;
            }
            let mut v1 = ModElem::zero(&factors[0]);
            v1.coeffs[tuple[0]] = part;
            let v1_odd = part_odd ^ odd(factors[0].degree(tuple[0]));
            let fv1 = ops[0].apply(&v1);
            if fv1.is_zero() {
                continue;
            }
            let mut xs: Vec<&ModElem<F>> = vec![&fv1];
            xs.extend(rest.iter());
            let term = tensor_elems(out_mod, &xs);
            let neg = tail_sign ^ (v1_odd && tail_op_par);
            if neg {
                out.add_assign_ref(&term.neg());
            } else {
                out.add_assign_ref(&term);
            }
        }
    }
    out
}

/// Operator form of [`tensor_apply`].
pub fn tensor_op<F: Scalar>(tmod: &Arc<FreeModule>, out_mod: &Arc<FreeModule>, ops: Vec<Operator<F>>) -> Operator<F> {
    let degree = ops.iter().map(|o| o.degree).sum();
    let lin = if ops.iter().all(|o| o.linearity == Linearity::RLinear) { Linearity::RLinear } else { Linearity::Scalar };
    let (tmod, out_mod) = (tmod.clone(), out_mod.clone());
    Operator::new(degree, lin, move |x| {
        let refs: Vec<&Operator<F>> = ops.iter().collect();
        tensor_apply(&tmod, &out_mod, &refs, x)
    })
}

/// All permutations of `0..k`.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Sign `chi` of rearranging generators of the given degrees into the
/// order `perm` (new slot `s` holds old slot `perm[s]`), where an adjacent
/// swap of degrees `a, b` contributes `-(-1)^{ab}`.
pub fn chi(degrees: &[i32], perm: &[usize]) -> bool {
    let mut cur: Vec<usize> = (0..perm.len()).collect();
    let pos_in_target: Vec<usize> = {
        let mut v = vec![0; perm.len()];
        for (s, &o) in perm.iter().enumerate() {
            v[o] = s;
        }
        v
    };
    let mut neg = false;
    for i in 0..cur.len() {
        for j in 0..cur.len().saturating_sub(1 + i) {
            if pos_in_target[cur[j]] > pos_in_target[cur[j + 1]] {
                let (a, b) = (degrees[cur[j]], degrees[cur[j + 1]]);
                // -(-1)^{ab}: negative unless both odd
                if !(odd(a) && odd(b)) {
                    neg = !neg;
                }
                cur.swap(j, j + 1);
            }
        }
    }
    neg
}

/// Graded antisymmetrizer `(1/k!) sum_sigma chi_sigma sigma` on a k-fold
/// tensor power.
pub fn alt_operator<F: Scalar>(tmod: &Arc<FreeModule>) -> Operator<F> {
    let k = tmod.tensor_factors().expect("tensor module").len();
    alt_slots(tmod, k)
}

/// Antisymmetrizer over the first `k` tensor slots only; later slots are
/// left in place.
pub fn alt_slots<F: Scalar>(tmod: &Arc<FreeModule>, k: usize) -> Operator<F> {
    let perms = permutations(k);
    let mut fact = F::one();
    for i in 2..=k {
        fact = fact * F::from_int(i as i64);
    }
    let inv = F::one() / fact;
    let tmod = tmod.clone();
    Operator::new(0, Linearity::RLinear, move |x| {
        let factors = tmod.tensor_factors().expect("tensor module");
        let mut out = ModElem::zero(&tmod);
        for (t, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let tuple = tmod.index_tuple(t);
            let degs: Vec<i32> = tuple[..k].iter().zip(factors).map(|(&i, f)| f.degree(i)).collect();
            let v = c.scale(&inv);
            for p in &perms {
                let mut nt = tuple.clone();
                for (s, &o) in p.iter().enumerate() {
                    nt[s] = tuple[o];
                }
                let idx = tmod.tuple_index(&nt);
                if chi(&degs, p) {
                    out.coeffs[idx].add_assign_ref(&v.neg());
                } else {
                    out.coeffs[idx].add_assign_ref(&v);
                }
            }
        }
        out
    })
}

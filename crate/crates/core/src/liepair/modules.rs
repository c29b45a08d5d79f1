use std::fmt;

use super::model::LiePairModel;
use crate::exactalg::{CochainElem, Polynomial};
use crate::scalar::Scalar;

/// Modules of `A` induced by the Bott representation on `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleTag {
    B,
    BDualEndB,
    /// `Lambda^k B^*`; `k = 0` is the trivial module.
    LambdaBDual(usize),
}

impl fmt::Display for ModuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleTag::B => write!(f, "B"),
            ModuleTag::BDualEndB => write!(f, "B*(x)End(B)"),
            ModuleTag::LambdaBDual(k) => write!(f, "Lambda^{} B*", k),
        }
    }
}

/// Flat `A`-module with a polynomial frame `eps_J`, described by
/// `nabla_{e_i} eps_J = sum_K conn[i][J][K] eps_K`.
#[derive(Clone, Debug)]
pub struct BottModule<F> {
    pub tag: ModuleTag,
    pub labels: Vec<String>,
    conn: Vec<Vec<Vec<Polynomial<F>>>>,
}

/// Strictly increasing `k`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

impl<F: Scalar> BottModule<F> {
    pub fn new(model: &LiePairModel<F>, tag: ModuleTag) -> Self {
        let (n, r, rp) = (model.n(), model.r(), model.rprime());
        // Bott matrix on B and its dual: nabla_i b_l = sum_k bott[i][l][k] b_k.
        let bott: Vec<Vec<Vec<Polynomial<F>>>> = (0..r)
            .map(|i| (0..rp).map(|l| (0..rp).map(|k| model.c(i, r + l, r + k).clone()).collect()).collect())
            .collect();
        let dual = |i: usize, l: usize, k: usize| bott[i][k][l].neg();
        let zero = Polynomial::zero(n);
        match tag {
            ModuleTag::B => BottModule { tag, labels: (0..rp).map(|l| format!("b{}", r + l + 1)).collect(), conn: bott.clone() },
            ModuleTag::BDualEndB => {
                let idx = |a: usize, b: usize, k: usize| (a * rp + b) * rp + k;
                let dim = rp * rp * rp;
                let mut conn = vec![vec![vec![zero.clone(); dim]; dim]; r];
                for i in 0..r {
                    for a in 0..rp {
                        for b in 0..rp {
                            for k in 0..rp {
                                let row = idx(a, b, k);
                                for t in 0..rp {
                                    conn[i][row][idx(t, b, k)].add_assign_ref(&dual(i, a, t));
                                    conn[i][row][idx(a, t, k)].add_assign_ref(&dual(i, b, t));
                                    conn[i][row][idx(a, b, t)].add_assign_ref(&bott[i][k][t]);
                                }
                            }
                        }
                    }
                }
                let mut labels = Vec::with_capacity(dim);
                for a in 0..rp {
                    for b in 0..rp {
                        for k in 0..rp {
                            labels.push(format!("b{}*(x)b{}*(x)b{}", r + a + 1, r + b + 1, r + k + 1));
                        }
                    }
                }
                BottModule { tag, labels, conn }
            }
            ModuleTag::LambdaBDual(k) => {
                let basis = subsets(rp, k);
                let dim = basis.len();
                let mut conn = vec![vec![vec![zero.clone(); dim]; dim]; r];
                for i in 0..r {
                    for (row, set) in basis.iter().enumerate() {
                        for slot in 0..k {
                            for t in 0..rp {
                                let coef = dual(i, set[slot], t);
                                if coef.is_zero() {
                                    continue;
                                }
                                let mut s2 = set.clone();
                                s2[slot] = t;
                                if let Some((neg, sorted)) = sort_signed(&s2) {
                                    let col = basis.iter().position(|b| *b == sorted).expect("subset present");
                                    conn[i][row][col].add_assign_ref(&if neg { coef.neg() } else { coef });
                                }
                            }
                        }
                    }
                }
                let labels = basis
                    .iter()
                    .map(|s| if s.is_empty() { "1".to_string() } else { s.iter().map(|l| format!("b{}*", r + l + 1)).collect::<Vec<_>>().join("^") })
                    .collect();
                BottModule { tag, labels, conn }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// `nabla_{e_i} eps_J` as coefficients on the frame.
    pub fn connection(&self, i: usize, j: usize) -> &[Polynomial<F>] {
        &self.conn[i][j]
    }

    /// `d(f eps_J) = d_A(f) eps_J + sum_i eta^i f nabla_{e_i} eps_J`.
    pub fn covariant_derivative(&self, model: &LiePairModel<F>, omega: &[CochainElem<F>]) -> Vec<CochainElem<F>> {
        let n = model.n();
        let mut out = vec![CochainElem::zero(n); self.rank()];
        for (j, f) in omega.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            out[j].add_assign_ref(&model.ce_differential(f));
            for i in 0..model.r() {
                let ef = CochainElem::eta(n, i).mul(f);
                if ef.is_zero() {
                    continue;
                }
                for (k, c) in self.conn[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k].add_assign_ref(&ef.scale_poly(c));
                    }
                }
            }
        }
        out
    }
}

/// Sort a list of distinct indices, reporting the permutation parity; `None`
/// if an index repeats.
pub fn sort_signed(v: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut s = v.to_vec();
    let mut neg = false;
    for i in 0..s.len() {
        for j in 0..s.len().saturating_sub(1 + i) {
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                neg = !neg;
            }
        }
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((neg, s))
}

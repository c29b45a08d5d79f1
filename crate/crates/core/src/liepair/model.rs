use crate::error::{Error, Result};
use crate::exactalg::{CochainElem, Polynomial, RingShape};
use crate::scalar::Scalar;

/// A Lie pair `(L, A)` on a polynomial chart in a frame adapted to `A`.
///
/// Frame indices are zero-based here: `0..r` spans `A` and `r..r+r'` is the
/// chosen complement, identified with `B = L/A`. `rho[i][j]` is the `x_j`
/// component of the anchor of `e_i`; `c(i, j, k)` is the `e_k` component of
/// `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiePairModel<F> {
    pub name: String,
    n: usize,
    r: usize,
    rprime: usize,
    rho: Vec<Vec<Polynomial<F>>>,
    c: Vec<Polynomial<F>>,
}

/// Outcome of one invariant check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub invariant: &'static str,
    pub witness: Option<String>,
}

pub const INVARIANTS: [&str; 4] = ["antisymmetry", "subalgebroid closure", "anchor compatibility", "Jacobi identity"];

impl<F: Scalar> LiePairModel<F> {
    /// Build a model from the anchor matrix and sparse structure functions
    /// `(i, j, k, c_ij^k)`. Only shapes are checked; see [`Self::validate`].
    pub fn new(
        name: impl Into<String>,
        n: usize,
        r: usize,
        rprime: usize,
        rho: Vec<Vec<Polynomial<F>>>,
        c: Vec<(usize, usize, usize, Polynomial<F>)>,
    ) -> Result<Self> {
        let m = r + rprime;
        if rho.len() != m {
            return Err(Error::ShapeMismatch(format!("anchor has {} rows, expected r + r' = {}", rho.len(), m)));
        }
        for (i, row) in rho.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!("anchor row {} has {} entries, expected n = {}", i + 1, row.len(), n)));
            }
            if let Some(p) = row.iter().find(|p| p.nvars() != n) {
                return Err(Error::ShapeMismatch(format!("anchor entry {} uses {} variables, expected {}", p, p.nvars(), n)));
            }
        }
        let mut dense = vec![Polynomial::zero(n); m * m * m];
        for (i, j, k, p) in c {
            for (idx, what) in [(i, "bracket index i"), (j, "bracket index j"), (k, "bracket index k")] {
                if idx >= m {
                    return Err(Error::IndexOutOfRange { what, index: idx + 1, bound: m });
                }
            }
            if p.nvars() != n {
                return Err(Error::ShapeMismatch(format!("structure function {} uses {} variables, expected {}", p, p.nvars(), n)));
            }
            dense[(i * m + j) * m + k].add_assign_ref(&p);
        }
        Ok(LiePairModel { name: name.into(), n, r, rprime, rho, c: dense })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rprime(&self) -> usize {
        self.rprime
    }

    /// Rank of `L`.
    pub fn m(&self) -> usize {
        self.r + self.rprime
    }

    pub fn shape(&self) -> RingShape {
        RingShape::new(self.n, self.r)
    }

    pub fn is_point(&self) -> bool {
        self.n == 0
    }

    pub fn rho(&self, i: usize) -> &[Polynomial<F>] {
        &self.rho[i]
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Polynomial<F> {
        let m = self.m();
        &self.c[(i * m + j) * m + k]
    }

    /// Nonzero structure functions `(i, j, k, c_ij^k)`.
    pub fn structure(&self) -> Vec<(usize, usize, usize, Polynomial<F>)> {
        let m = self.m();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let p = self.c(i, j, k);
                    if !p.is_zero() {
                        out.push((i, j, k, p.clone()));
                    }
                }
            }
        }
        out
    }

    /// Anchor of `e_i` acting on a function.
    pub fn anchor_apply(&self, i: usize, f: &Polynomial<F>) -> Polynomial<F> {
        f.apply_field(&self.rho[i])
    }

    /// `omega(e_i)` applied coefficientwise to a cochain; this is the
    /// horizontal lift used on `A[1]`.
    pub fn anchor_apply_cochain(&self, i: usize, f: &CochainElem<F>) -> CochainElem<F> {
        f.apply_field(&self.rho[i])
    }

    /// `rho_i(rho_j^s) - rho_j(rho_i^s)`.
    fn anchored_bracket_lhs(&self, i: usize, j: usize, s: usize) -> Polynomial<F> {
        self.anchor_apply(i, &self.rho[j][s]).sub(&self.anchor_apply(j, &self.rho[i][s]))
    }

    /// Run all four invariant checks.
    pub fn check_all(&self) -> Vec<InvariantCheck> {
        let m = self.m();
        let r = self.r;
        let mut anti = None;
        let mut closure = None;
        let mut anchor = None;
        let mut jacobi = None;
        'outer: for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let s = self.c(i, j, k).add(self.c(j, i, k));
                    if !s.is_zero() {
                        anti = Some(format!("c_{}{}^{} + c_{}{}^{} = {}", i + 1, j + 1, k + 1, j + 1, i + 1, k + 1, s));
                        break 'outer;
                    }
                }
            }
        }
        'outer: for i in 0..r {
            for j in 0..r {
                for k in r..m {
                    let p = self.c(i, j, k);
                    if !p.is_zero() {
                        closure = Some(format!("[e{}, e{}] has component {} along e{} outside A", i + 1, j + 1, p, k + 1));
                        break 'outer;
                    }
                }
            }
        }
        'outer: for i in 0..m {
            for j in 0..m {
                for s in 0..self.n {
                    let lhs = self.anchored_bracket_lhs(i, j, s);
                    let mut rhs = Polynomial::zero(self.n);
                    for k in 0..m {
                        rhs.add_assign_ref(&self.c(i, j, k).mul(&self.rho[k][s]));
                    }
                    let diff = lhs.sub(&rhs);
                    if !diff.is_zero() {
                        anchor = Some(format!("[rho(e{}), rho(e{})] - rho([e{}, e{}]) has x{} component {}", i + 1, j + 1, i + 1, j + 1, s + 1, diff));
                        break 'outer;
                    }
                }
            }
        }
        'outer: for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for t in 0..m {
                        let mut total = Polynomial::zero(self.n);
                        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                            total.add_assign_ref(&self.anchor_apply(a, self.c(b, c, t)));
                            for l in 0..m {
                                total.add_assign_ref(&self.c(b, c, l).mul(self.c(a, l, t)));
                            }
                        }
                        if !total.is_zero() {
                            jacobi = Some(format!("cyclic sum over (e{}, e{}, e{}) has e{} component {}", i + 1, j + 1, k + 1, t + 1, total));
                            break 'outer;
                        }
                    }
                }
            }
        }
        INVARIANTS.iter().zip([anti, closure, anchor, jacobi]).map(|(inv, w)| InvariantCheck { invariant: inv, witness: w }).collect()
    }

    /// First failing invariant, if any.
    pub fn validate(&self) -> Result<()> {
        for chk in self.check_all() {
            if let Some(w) = chk.witness {
                return Err(Error::InvalidModel { invariant: chk.invariant, witness: w });
            }
        }
        Ok(())
    }

    /// Chevalley–Eilenberg differential of `A` on `Poly (x) Lambda A^*`:
    /// `d f = sum rho_i^j eta^i df/dx_j - 1/2 sum c_ij^k eta^i eta^j d f/d eta^k`.
    pub fn ce_differential(&self, f: &CochainElem<F>) -> CochainElem<F> {
        let n = self.n;
        let mut out = CochainElem::zero(n);
        for i in 0..self.r {
            let horiz = self.anchor_apply_cochain(i, f);
            if !horiz.is_zero() {
                out.add_assign_ref(&CochainElem::eta(n, i).mul(&horiz));
            }
        }
        let half = F::frac(1, 2);
        for k in 0..self.r {
            let df = f.contract(k);
            if df.is_zero() {
                continue;
            }
            for i in 0..self.r {
                for j in 0..self.r {
                    let c = self.c(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let coef = CochainElem::eta(n, i).mul(&CochainElem::eta(n, j)).scale_poly(&c.scale(&half));
                    out = out.sub(&coef.mul(&df));
                }
            }
        }
        out
    }

    /// Bott connection `nabla_{e_i} e_l = sum_{k >= r} c_il^k e_k` on the
    /// complement, for `i < r <= l`.
    pub fn bott_coefficient(&self, i: usize, l: usize, k: usize) -> &Polynomial<F> {
        debug_assert!(i < self.r && l >= self.r && k >= self.r);
        self.c(i, l, k)
    }

    /// Copy with a single structure function replaced; used to build
    /// deliberately broken models.
    pub fn with_structure(&self, i: usize, j: usize, k: usize, p: Polynomial<F>) -> Self {
        let mut out = self.clone();
        let m = self.m();
        out.c[(i * m + j) * m + k] = p;
        out
    }

    pub fn with_anchor(&self, i: usize, j: usize, p: Polynomial<F>) -> Self {
        let mut out = self.clone();
        out.rho[i][j] = p;
        out
    }
}

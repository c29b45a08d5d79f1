use num_rational::BigRational;

use super::model::LiePairModel;
use crate::error::{Error, Result};
use crate::exactalg::Polynomial;
use crate::scalar::Scalar;

fn validated<F: Scalar>(m: LiePairModel<F>) -> Result<LiePairModel<F>> {
    m.validate()?;
    Ok(m)
}

/// Lie algebra pair on a point: `g` with structure constants `(i, j, k, c)`
/// and `A` spanned by the first `r` basis vectors. Antisymmetric partners
/// are filled in.
pub fn make_point_pair<F: Scalar>(name: &str, dim: usize, r: usize, brackets: &[(usize, usize, usize, F)]) -> Result<LiePairModel<F>> {
    if r > dim {
        return Err(Error::ShapeMismatch(format!("r = {} exceeds dim = {}", r, dim)));
    }
    let mut c = Vec::new();
    for (i, j, k, v) in brackets {
        c.push((*i, *j, *k, Polynomial::constant(0, v.clone())));
        c.push((*j, *i, *k, Polynomial::constant(0, -v.clone())));
    }
    validated(LiePairModel::new(name, 0, r, dim - r, vec![vec![]; dim], c)?)
}

/// Action Lie algebroid `g x M` paired with `M`'s tangent bundle, so that
/// `L = g + TM` and `A = g`. `fields[i]` is the infinitesimal action of the
/// `i`-th basis vector; the derived structure functions are
/// `[a_i, d/dx_s] = -sum_t d(field_i^t)/dx_s d/dx_t`.
pub fn make_action<F: Scalar>(
    name: &str,
    n: usize,
    brackets: &[(usize, usize, usize, F)],
    fields: Vec<Vec<Polynomial<F>>>,
) -> Result<LiePairModel<F>> {
    let r = fields.len();
    let mut rho = fields.clone();
    for s in 0..n {
        let mut row = vec![Polynomial::zero(n); n];
        row[s] = Polynomial::one(n);
        rho.push(row);
    }
    let mut c = Vec::new();
    for (i, j, k, v) in brackets {
        c.push((*i, *j, *k, Polynomial::constant(n, v.clone())));
        c.push((*j, *i, *k, Polynomial::constant(n, -v.clone())));
    }
    for (i, f) in fields.iter().enumerate() {
        for s in 0..n {
            for t in 0..n {
                let d = f[t].derive(s)?;
                if !d.is_zero() {
                    c.push((i, r + s, r + t, d.neg()));
                    c.push((r + s, i, r + t, d));
                }
            }
        }
    }
    validated(LiePairModel::new(name, n, r, n, rho, c)?)
}

fn det<F: Scalar>(m: &[Vec<Polynomial<F>>], nvars: usize) -> Polynomial<F> {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut acc = Polynomial::zero(nvars);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<F>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, p)| p.clone()).collect()).collect();
        let term = m[0][col].mul(&det(&minor, nvars));
        acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Regular foliation on a chart. `frame[i]` are the components of the
/// `i`-th frame field of `TM`; the first `k` span the leaves. The frame
/// matrix must have constant nonzero determinant so that brackets have
/// polynomial frame components.
pub fn make_foliation<F: Scalar>(name: &str, n: usize, k: usize, frame: Vec<Vec<Polynomial<F>>>) -> Result<LiePairModel<F>> {
    if frame.len() != n || frame.iter().any(|f| f.len() != n) || k > n {
        return Err(Error::ShapeMismatch(format!("foliation frame must be {} fields of {} components, k <= n", n, n)));
    }
    let d = det(&frame, n);
    let dinv = match d.as_constant() {
        Some(c) if !c.is_zero() => F::one() / c,
        _ => return Err(Error::ShapeMismatch(format!("frame determinant {} is not a nonzero constant", d))),
    };
    // inv[s][k]: component of d/dx_s along e_k.
    let mut inv = vec![vec![Polynomial::zero(n); n]; n];
    for s in 0..n {
        for kk in 0..n {
            let minor: Vec<Vec<Polynomial<F>>> = frame
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != kk)
                .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != s).map(|(_, p)| p.clone()).collect())
                .collect();
            let cof = det(&minor, n).scale(&dinv);
            inv[s][kk] = if (s + kk) % 2 == 0 { cof } else { cof.neg() };
        }
    }
    let mut c = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // [e_i, e_j]^s = e_i(e_j^s) - e_j(e_i^s)
            let v: Vec<Polynomial<F>> = (0..n).map(|s| frame[j][s].apply_field(&frame[i]).sub(&frame[i][s].apply_field(&frame[j]))).collect();
            for kk in 0..n {
                let mut comp = Polynomial::zero(n);
                for s in 0..n {
                    comp.add_assign_ref(&v[s].mul(&inv[s][kk]));
                }
                if !comp.is_zero() {
                    c.push((i, j, kk, comp));
                }
            }
        }
    }
    validated(LiePairModel::new(name, n, k, n - k, frame, c)?)
}

pub const BUNDLED: [&str; 5] = ["abelian", "dim2-nonabelian", "sl2-borel", "foliation-chart", "gl1-action"];

fn q(v: i64) -> BigRational {
    BigRational::from_int(v)
}

fn p(n: usize, s: &str) -> Polynomial<BigRational> {
    crate::exactalg::parse::parse_poly(s, n).expect("bundled polynomial parses")
}

/// The reference models shipped with the tool.
pub fn bundled(name: &str) -> Option<LiePairModel<BigRational>> {
    let m = match name {
        "abelian" => make_point_pair(name, 2, 1, &[]),
        "dim2-nonabelian" => make_point_pair(name, 2, 1, &[(0, 1, 1, q(1))]),
        // Basis (h, e, f) with A the Borel span{h, e}.
        "sl2-borel" => make_point_pair(name, 3, 2, &[(0, 1, 1, q(2)), (0, 2, 2, q(-2)), (1, 2, 0, q(1))]),
        // Leaves span{d1 + x2 x3 d2 + x1 x3 d3, d2} in R^3, complement d3.
        "foliation-chart" => make_foliation(
            name,
            3,
            2,
            vec![vec![p(3, "1"), p(3, "x2*x3"), p(3, "x1*x3")], vec![p(3, "0"), p(3, "1"), p(3, "0")], vec![p(3, "0"), p(3, "0"), p(3, "1")]],
        ),
        // gl(1) acting on the line by x d/dx.
        "gl1-action" => make_action(name, 1, &[], vec![vec![p(1, "x1")]]),
        _ => return None,
    };
    Some(m.expect("bundled model is well formed"))
}

/// `sl(2)` acting on the line by `d/dx, -2x d/dx, -x^2 d/dx` (basis `e, h, f`).
pub fn sl2_on_line() -> LiePairModel<BigRational> {
    // [h, e] = 2e, [h, f] = -2f, [e, f] = h with indices e = 0, h = 1, f = 2.
    make_action(
        "sl2-line",
        1,
        &[(1, 0, 0, q(2)), (1, 2, 2, q(-2)), (0, 2, 1, q(1))],
        vec![vec![p(1, "1")], vec![p(1, "-2*x1")], vec![p(1, "-x1^2")]],
    )
    .expect("well formed")
}

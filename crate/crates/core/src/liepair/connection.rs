use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::LiePairModel;
use crate::error::{Error, Result};
use crate::exactalg::Polynomial;
use crate::scalar::Scalar;

/// Christoffel symbols of an `L`-connection on the frame, together with the
/// two vertical tables used on `pi^! L`.
///
/// * `gamma(i, j, k)`: `nabla_{e_i} e_j = sum_k gamma(i, j, k) e_k`.
/// * `al(i, j, k)`: `nabla_{d eta_i} e_j = sum_k al(i, j, k) d eta_k`.
/// * `la(i, j, k)`: `nabla_{e_i} d eta_j = sum_k la(i, j, k) d eta_k`.
///
/// The table `nabla_{d eta_i} d eta_j` is identically zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionTable<F> {
    m: usize,
    r: usize,
    gamma: Vec<Polynomial<F>>,
    al: Vec<Polynomial<F>>,
    la: Vec<Polynomial<F>>,
}

impl<F: Scalar> ConnectionTable<F> {
    fn zero_for(model: &LiePairModel<F>) -> Self {
        let (m, r, n) = (model.m(), model.r(), model.n());
        ConnectionTable {
            m,
            r,
            gamma: vec![Polynomial::zero(n); m * m * m],
            al: vec![Polynomial::zero(n); r * m * r],
            la: vec![Polynomial::zero(n); m * r * r],
        }
    }

    /// Bott extension on the complement and zero elsewhere.
    pub fn default_for(model: &LiePairModel<F>) -> Self {
        let mut t = Self::zero_for(model);
        let (m, r) = (model.m(), model.r());
        for i in 0..m {
            for j in r..m {
                for k in r..m {
                    t.gamma[(i * m + j) * m + k] = model.c(i, j, k).clone();
                }
            }
        }
        t
    }

    /// Explicit table; checked against both admissibility constraints.
    pub fn from_gamma(model: &LiePairModel<F>, entries: Vec<(usize, usize, usize, Polynomial<F>)>) -> Result<Self> {
        let mut t = Self::zero_for(model);
        let m = model.m();
        for (i, j, k, p) in entries {
            if i >= m || j >= m || k >= m {
                return Err(Error::IndexOutOfRange { what: "connection index", index: i.max(j).max(k) + 1, bound: m });
            }
            t.gamma[(i * m + j) * m + k].add_assign_ref(&p);
        }
        t.validate(model)?;
        Ok(t)
    }

    /// Random admissible connection with small integer coefficients, affine
    /// in the coordinates. Deterministic in `seed`.
    pub fn random_for(model: &LiePairModel<F>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = Self::default_for(model);
        let (m, r, n) = (model.m(), model.r(), model.n());
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let free = j < r || (i >= r && k >= r);
                    if free {
                        t.gamma[(i * m + j) * m + k] = random_poly(&mut rng, n);
                    }
                }
            }
        }
        t
    }

    /// The same table with random vertical parts `al` and `la`.
    pub fn with_random_vertical(mut self, seed: u64, n: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        for p in self.al.iter_mut().chain(self.la.iter_mut()) {
            *p = random_poly(&mut rng, n);
        }
        self
    }

    pub fn validate(&self, model: &LiePairModel<F>) -> Result<()> {
        let (m, r) = (model.m(), model.r());
        for i in 0..m {
            for j in r..m {
                for k in 0..r {
                    if !self.gamma(i, j, k).is_zero() {
                        return Err(Error::ConnectionConstraint { constraint: "splitting compatibility", i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        for i in 0..r {
            for j in r..m {
                for k in r..m {
                    if self.gamma(i, j, k) != model.c(i, j, k) {
                        return Err(Error::ConnectionConstraint { constraint: "Bott extension", i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Polynomial<F> {
        &self.gamma[(i * self.m + j) * self.m + k]
    }

    pub fn al(&self, i: usize, j: usize, k: usize) -> &Polynomial<F> {
        &self.al[(i * self.m + j) * self.r + k]
    }

    pub fn la(&self, i: usize, j: usize, k: usize) -> &Polynomial<F> {
        &self.la[(i * self.r + j) * self.r + k]
    }

    pub fn set_gamma(&mut self, i: usize, j: usize, k: usize, p: Polynomial<F>) {
        self.gamma[(i * self.m + j) * self.m + k] = p;
    }
}

fn random_poly<F: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Polynomial<F> {
    let mut p = Polynomial::from_int(n, rng.gen_range(-2..=2));
    for j in 0..n {
        let a: i64 = rng.gen_range(-1..=1);
        if a != 0 {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, F::from_int(a));
        }
    }
    p
}

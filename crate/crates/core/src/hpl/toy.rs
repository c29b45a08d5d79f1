//! Seeded finite-dimensional contractions over the scalars with nilpotent
//! perturbations, for exercising the perturbation engine.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::contraction::{Contraction, SmallModel, Space};
use super::module::FreeModule;
use super::operator::Operator;
use crate::exactalg::RingShape;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A toy contraction with the matrices it was built from.
#[derive(Clone, Debug)]
pub struct Toy<F> {
    pub contraction: Contraction<F>,
    pub pert: Operator<F>,
    pub delta: Matrix<F>,
    pub h: Matrix<F>,
    pub tau: Matrix<F>,
    pub sigma: Matrix<F>,
    pub pert_matrix: Matrix<F>,
    /// `(degree, weight)` of each generator.
    pub grading: Vec<(i32, u32)>,
}

fn small_int<F: Scalar>(rng: &mut ChaCha8Rng) -> F {
    F::from_int(rng.gen_range(-2..=2))
}

/// Random toy: harmonic generators plus acyclic pairs `p -> q`, conjugated
/// by a unitriangular change of basis within each `(degree, weight)` block.
/// The perturbation is `phi delta phi^{-1} - delta` for `phi = 1 + N` with
/// `N` strictly raising the weight, so `pert h` is nilpotent.
///
/// `max_weight = 1` makes `(pert h)^2 = 0`.
pub fn random_toy<F: Scalar>(seed: u64, max_weight: u32) -> Toy<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grading = Vec::new();
    let mut pairs = Vec::new();
    let mut harmonic = Vec::new();
    let nh = rng.gen_range(1..=3);
    let np = rng.gen_range(1..=3);
    for _ in 0..nh {
        harmonic.push(grading.len());
        grading.push((rng.gen_range(0..=2), rng.gen_range(0..=max_weight)));
    }
    for _ in 0..np {
        let d = rng.gen_range(0..=1);
        let w = rng.gen_range(0..=max_weight);
        pairs.push((grading.len(), grading.len() + 1));
        grading.push((d, w));
        grading.push((d + 1, w));
    }
    // weight 0 first keeps every weight present in small seeds
    if grading.iter().all(|g| g.1 > 0) {
        grading[0].1 = 0;
    }
    let n = grading.len();
    let nv = harmonic.len();

    let mut delta = Matrix::zeros(n, n);
    let mut h = Matrix::zeros(n, n);
    for &(p, q) in &pairs {
        delta.set(q, p, F::one());
        h.set(p, q, F::one());
    }
    let mut tau = Matrix::zeros(n, nv);
    let mut sigma = Matrix::zeros(nv, n);
    for (k, &i) in harmonic.iter().enumerate() {
        tau.set(i, k, F::one());
        sigma.set(k, i, F::one());
    }

    let mut g = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            if grading[i] == grading[j] {
                g.set(i, j, small_int(&mut rng));
            }
        }
    }
    let gi = g.inverse().expect("unitriangular");
    let delta = g.mul(&delta).mul(&gi);
    let h = g.mul(&h).mul(&gi);
    let tau = g.mul(&tau);
    let sigma = sigma.mul(&gi);

    let mut phi = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if grading[i].0 == grading[j].0 && grading[i].1 > grading[j].1 {
                phi.set(i, j, small_int(&mut rng));
            }
        }
    }
    let phi_inv = phi.inverse().expect("unipotent");
    let pert_matrix = phi.mul(&delta).mul(&phi_inv).sub(&delta);

    let shape = RingShape::point();
    let labels = (0..n).map(|i| format!("w{}", i + 1)).collect();
    let w = Arc::new(FreeModule::new(shape, grading.iter().map(|g| g.0).collect(), labels));
    let v = Arc::new(FreeModule::new(
        shape,
        harmonic.iter().map(|&i| grading[i].0).collect(),
        (0..nv).map(|k| format!("v{}", k + 1)).collect(),
    ));
    let contraction = Contraction {
        name: format!("toy#{}", seed),
        big: Space::free(w.clone()),
        delta: Operator::from_matrix(&w, 1, &delta),
        h: Operator::from_matrix(&w, -1, &h),
        small: SmallModel {
            space: Space::free(v.clone()),
            d: Operator::zero(&v, 1),
            tau: Operator::from_matrix(&w, 0, &tau),
            sigma: Operator::from_matrix(&v, 0, &sigma),
        },
        ring_diff: None,
        test_xdeg: 0,
    };
    let pert = Operator::from_matrix(&w, 1, &pert_matrix);
    Toy { contraction, pert, delta, h, tau, sigma, pert_matrix, grading }
}

use crate::scalar::Scalar;

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`, from
/// `sum_{j<=n} C(n+1, j) B_j = 0`.
pub fn bernoulli<F: Scalar>(n: usize) -> Vec<F> {
    let mut b: Vec<F> = vec![F::one()];
    for k in 1..=n {
        // binom(k+1, j) built incrementally
        let mut binom = F::one();
        let mut acc = F::zero();
        for (j, bj) in b.iter().enumerate() {
            acc = acc + binom.clone() * bj.clone();
            binom = binom * F::from_int((k + 1 - j) as i64) / F::from_int(j as i64 + 1);
        }
        b.push(-acc / F::from_int(k as i64 + 1));
    }
    b
}

/// Coefficients `t_0..=t_K` of `log(x / (1 - e^{-x})) = x/2 - sum_j B_{2j} x^{2j} / (2j (2j)!)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCoeffs<F> {
    pub t: Vec<F>,
}

impl<F: Scalar> SeriesCoeffs<F> {
    pub fn new(order: usize) -> Self {
        let b = bernoulli::<F>(order);
        let mut t = vec![F::zero(); order + 1];
        if order >= 1 {
            t[1] = F::one() / F::from_int(2);
        }
        let mut fact = F::one();
        for m in 1..=order {
            fact = fact * F::from_int(m as i64);
            if m % 2 == 0 {
                t[m] = -b[m].clone() / (F::from_int(m as i64) * fact.clone());
            }
        }
        SeriesCoeffs { t }
    }

    pub fn order(&self) -> usize {
        self.t.len() - 1
    }
}

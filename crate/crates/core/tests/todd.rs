use liepair_core::exactalg::CochainElem;
use liepair_core::hpl::algebra::{hom_eval, hom_from_values};
use liepair_core::hpl::ModElem;
use liepair_core::liepair::examples::{bundled, sl2_on_line, BUNDLED};
use liepair_core::liepair::{ConnectionTable, ModuleTag};
use liepair_core::todd::{bernoulli, ce_cohomology_dims, constant_form, exactness_solve, Exactness, SeriesCoeffs, Side, ToddSetup};
use liepair_core::{Error, Model, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn models() -> Vec<Model> {
    let mut v: Vec<Model> = BUNDLED.iter().map(|n| bundled(n).unwrap()).collect();
    v.push(sl2_on_line());
    v
}

fn setup(name: &str) -> ToddSetup<Rational> {
    ToddSetup::new(&bundled(name).unwrap()).unwrap()
}

// Power series helpers for the oracle: truncated at `n` terms.
fn mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

fn reciprocal(a: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    out[0] = Rational::one() / &a[0];
    for k in 1..n {
        let mut s = Rational::zero();
        for j in 1..=k {
            s += &a[j] * &out[k - j];
        }
        out[k] = -s / &a[0];
    }
    out
}

fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * Rational::from_integer((i as i64).into()))
}

/// x / (1 - e^{-x}) by dividing by (1 - e^{-x}) / x.
fn todd_series(n: usize) -> Vec<Rational> {
    let g: Vec<Rational> = (0..n).map(|j| if j % 2 == 0 { Rational::one() } else { -Rational::one() } / factorial(j + 1)).collect();
    reciprocal(&g, n)
}

/// log(1 + u) for u without constant term, by composition.
fn log1p(u: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    let mut p = u.to_vec();
    for k in 1..n {
        let c = Rational::from_integer((k as i64).into());
        for i in 0..n {
            let t = &p[i] / &c;
            if k % 2 == 1 {
                out[i] += t;
            } else {
                out[i] -= t;
            }
        }
        p = mul(&p, u, n);
    }
    out
}

fn exp(u: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    let mut p = vec![Rational::zero(); n];
    p[0] = Rational::one();
    for k in 0..n {
        for i in 0..n {
            out[i] += &p[i] / factorial(k);
        }
        p = mul(&p, u, n);
    }
    out
}

#[test]
fn series_coefficients_match_division_oracle() {
    let n = 10;
    let mut f = todd_series(n);
    f[0] -= Rational::one();
    let oracle = log1p(&f, n);
    let t = SeriesCoeffs::<Rational>::new(n - 1);
    assert_eq!(t.t, oracle);
    assert_eq!(t.t[1], q(1, 2));
    assert_eq!(t.t[2], q(-1, 24));
    assert!(t.t[3].is_zero() && t.t[5].is_zero());
    // exp round trip: 1 + x/2 + x^2/12 + ...
    let back = exp(&t.t, n);
    assert_eq!(back, todd_series(n));
    assert_eq!(back[2], q(1, 12));
    let b = bernoulli::<Rational>(6);
    assert_eq!((b[1].clone(), b[2].clone(), b[4].clone(), b[6].clone()), (q(-1, 2), q(1, 6), q(-1, 30), q(1, 42)));
}

#[test]
fn wedge_end_power_edge_cases() {
    let s = setup("dim2-nonabelian");
    let t = ConnectionTable::default_for(s.model());
    for side in [Side::Pair, Side::Dgla] {
        let sp = s.spaces(side);
        let theta = s.cocycle(&t, side);
        assert_eq!(sp.wedge_end_power(&theta, 0), sp.identity_end());
        assert_eq!(sp.wedge_end_power(&theta, 1), theta);
    }
    // random Gamma: the pair cocycle squares to zero because Lambda^2 A* = 0
    let t = ConnectionTable::random_for(s.model(), 3);
    let theta = s.cocycle(&t, Side::Pair);
    assert!(s.small.wedge_end_power(&theta, 2).is_zero());
}

#[test]
fn supertrace_values() {
    for m in models() {
        let s = ToddSetup::new(&m).unwrap();
        let rp = Rational::from_integer((m.rprime() as i64).into());
        let sdim = constant_form(&s.big, rp.clone());
        assert_eq!(s.big.supertrace(0, &s.big.identity_end()), sdim, "{}", m.name);
        assert_eq!(s.small.supertrace(0, &s.small.identity_end()), constant_form(&s.small, rp));
        // strictly triangular splitting maps have zero supertrace
        let pi = &s.atiyah.pi;
        for op in [pi.p_tilde(), pi.i_tilde()] {
            let e = hom_from_values(&s.big.end, &op.table(&pi.sections));
            assert!(s.big.supertrace(0, &e).is_zero());
        }
    }
}

#[test]
fn from_hom_matches_evaluation_rule() {
    // (omega (x) Phi)(x (x) y) = (-1)^{|Phi||x|} omega(x) Phi(y)
    let s = setup("sl2-borel");
    let big = s.atiyah.big();
    let w = &s.big.base;
    let n = w.rank();
    for i in 0..n {
        for k in 0..n {
            for l in 0..n {
                let mut f = ModElem::<Rational>::zero(big);
                f.coeffs[(i * n + k) * n + l] = CochainElem::one(0);
                let x = s.big.from_hom(&f);
                let coeff = &x.coeffs[(i * n + k) * n + l];
                for a in 0..n {
                    for b in 0..n {
                        let v = hom_eval(big, &f, &s.atiyah.tensor().gen(a * n + b));
                        let phi_deg = w.degree(l) - w.degree(k);
                        let mut expected = ModElem::zero(w);
                        if a == i && b == k {
                            let c = if (phi_deg * w.degree(a)).rem_euclid(2) == 1 { coeff.neg() } else { coeff.clone() };
                            expected.coeffs[l] = c;
                        }
                        assert_eq!(v, expected);
                    }
                }
            }
        }
    }
}

#[test]
fn scalar_class_edge_cases() {
    let ab = setup("abelian");
    let t = ConnectionTable::default_for(ab.model());
    for side in [Side::Pair, Side::Dgla] {
        let cls = ab.scalar_classes(&t, side, 1).unwrap();
        assert_eq!(cls[0], constant_form(ab.spaces(side), Rational::one()));
        assert!(cls[1].is_zero());
        assert!(matches!(ab.scalar_class(&t, side, 2), Err(Error::KOutOfRange { k: 2, max: 1 })));
        let td = ab.todd_cocycle(&t, side, 1).unwrap();
        assert_eq!(td[0], constant_form(ab.spaces(side), Rational::one()));
        assert!(td[1].is_zero());
    }
}

#[test]
fn dim2_degree_one_todd_is_half_the_class() {
    let s = setup("dim2-nonabelian");
    for seed in 0..3 {
        let t = ConnectionTable::random_for(s.model(), seed);
        for side in [Side::Pair, Side::Dgla] {
            let td = s.todd_cocycle(&t, side, 1).unwrap();
            let c1 = s.scalar_class(&t, side, 1).unwrap();
            assert_eq!(td[1], c1.scale(&q(1, 2)));
        }
        // Pi_Lambda of the dgla class against the pair class: exact on B
        let maps = s.lambda_maps(1);
        let z = maps.pi().apply(&s.scalar_class(&t, Side::Dgla, 1).unwrap()).sub(&s.scalar_class(&t, Side::Pair, 1).unwrap());
        let module = s.small.forms(1);
        let span = liepair_core::todd::of_degree(module, module.basis_elements(0), 0);
        let res = exactness_solve(module, &s.form_differential(Side::Pair, 1), &span, &z).unwrap();
        assert!(res.is_exact());
    }
}

#[test]
fn todd_components_closed_on_all_models() {
    for m in models() {
        let s = ToddSetup::new(&m).unwrap();
        for t in [ConnectionTable::default_for(&m), ConnectionTable::random_for(&m, 1)] {
            for side in [Side::Pair, Side::Dgla] {
                let td = s.todd_cocycle(&t, side, m.r()).unwrap_or_else(|e| panic!("{} {}: {}", m.name, side, e));
                assert_eq!(td.len(), m.r() + 1);
            }
        }
    }
}

#[test]
fn lambda_maps_basic_properties() {
    for m in models() {
        let s = ToddSetup::new(&m).unwrap();
        for k in 0..=m.r() {
            let maps = s.lambda_maps(k);
            for x in maps.forms.small_tests() {
                assert_eq!(maps.pi().apply(&maps.t().apply(&x)), x, "{} k={}", m.name, k);
            }
        }
        let m0 = s.lambda_maps(0);
        let one = constant_form(&s.small, Rational::one());
        assert_eq!(m0.pi().apply(&one), one);
        // T relabels b_j* as e_j*
        let m1 = s.lambda_maps(1);
        let pi = &s.atiyah.pi;
        for l in 0..m.rprime() {
            let img = m1.t().apply(&s.small.dual.gen(l));
            assert_eq!(img, s.big.dual.gen(pi.e(m.r() + l)));
        }
    }
}

#[test]
fn supertrace_identity_and_multiplicativity() {
    for m in models() {
        let s = ToddSetup::new(&m).unwrap();
        for c in s.supertrace_identity_check().into_iter().chain(s.multiplicativity_check(0)) {
            assert!(c.ok, "{}: {} {:?}", m.name, c.name, c.witness);
        }
    }
}

#[test]
fn supertrace_identity_on_unit_pair() {
    // omega = 1, Phi = id_B: both sides give r'
    let s = setup("sl2-borel");
    let maps = s.lambda_maps(0);
    let lhs = s.big.supertrace(0, &maps.t_hat().apply(&s.small.identity_end()));
    assert_eq!(lhs, constant_form(&s.big, Rational::one()));
}

#[test]
fn class_level_todd_in_point_case() {
    for name in ["sl2-borel", "dim2-nonabelian", "abelian"] {
        let s = setup(name);
        let m = s.model().clone();
        for t in [ConnectionTable::default_for(&m), ConnectionTable::random_for(&m, 5)] {
            for k in 0..=m.r() {
                let res = s.class_comparison(&t, k).unwrap();
                let Exactness::Exact { witness } = res else { panic!("{} k={}: not exact", name, k) };
                let maps = s.lambda_maps(k);
                assert_eq!(maps.forms.delta.apply(&witness), s.class_difference(&t, k).unwrap());
            }
        }
    }
}

#[test]
fn exactness_solve_cases() {
    let s = setup("sl2-borel");
    let module = s.atiyah.small().clone();
    let d = liepair_core::todd::bott_operator(s.model(), ModuleTag::BDualEndB);
    let span = liepair_core::todd::of_degree(&module, module.basis_elements(0), 0);
    let zero = ModElem::zero(&module);
    assert_eq!(exactness_solve(&module, &d, &span, &zero).unwrap(), Exactness::Exact { witness: zero.clone() });
    // constructed exact input
    let z = d.apply(&span[0].scale(&q(3, 2)));
    assert!(exactness_solve(&module, &d, &span, &z).unwrap().is_exact());
    // a non-closed target is rejected
    let bad = span[0].clone();
    if !d.apply(&bad).is_zero() {
        assert!(matches!(exactness_solve(&module, &d, &span, &bad), Err(Error::NotClosed(_))));
    }
    // connection independence
    let m = s.model().clone();
    for seed in 0..3 {
        let res = s.connection_independence(&ConnectionTable::default_for(&m), &ConnectionTable::random_for(&m, seed)).unwrap();
        assert!(res.is_exact());
    }
    let g = ToddSetup::new(&bundled("gl1-action").unwrap()).unwrap();
    let gm = g.model().clone();
    let t = ConnectionTable::default_for(&gm);
    assert!(matches!(g.connection_independence(&t, &t), Err(Error::NotPointCase(1))));
}

#[test]
fn nonexact_certificate() {
    // on the abelian pair the cochain eta^1 in trivial coefficients is closed, not exact
    let s = setup("abelian");
    let d = liepair_core::todd::bott_operator(s.model(), ModuleTag::LambdaBDual(0));
    let module = s.small.forms(0).clone();
    let span = liepair_core::todd::of_degree(&module, module.basis_elements(0), 0);
    let mut z = ModElem::zero(&module);
    z.coeffs[0] = CochainElem::eta(0, 0);
    match exactness_solve(&module, &d, &span, &z).unwrap() {
        Exactness::NotExact { functional } => assert!(!functional.iter().all(|v| v.is_zero())),
        other => panic!("unexpected {:?}", other),
    }
}

#[test]
fn cohomology_dimensions() {
    let ab = bundled("abelian").unwrap();
    assert_eq!(ce_cohomology_dims(&ab, ModuleTag::LambdaBDual(0), 0..=1).unwrap(), vec![1, 1]);
    let h3 = liepair_core::liepair::examples::make_point_pair::<Rational>("h3", 4, 3, &[]).unwrap();
    assert_eq!(ce_cohomology_dims(&h3, ModuleTag::LambdaBDual(0), 0..=3).unwrap(), vec![1, 3, 3, 1]);
    let d2 = bundled("dim2-nonabelian").unwrap();
    assert_eq!(ce_cohomology_dims(&d2, ModuleTag::BDualEndB, 0..=1).unwrap(), vec![0, 0]);
    // the pair Atiyah cocycle of the 2-dim pair is exact, consistently
    let s = ToddSetup::new(&d2).unwrap();
    let t = ConnectionTable::random_for(&d2, 2);
    let zero = ConnectionTable::default_for(&d2);
    assert!(s.connection_independence(&t, &zero).unwrap().is_exact());
    let gl = bundled("gl1-action").unwrap();
    assert!(matches!(ce_cohomology_dims(&gl, ModuleTag::B, 0..=1), Err(Error::NotPointCase(1))));
}

#[test]
fn form_end_cocycle_is_closed_and_product_is_leibniz() {
    for name in ["sl2-borel", "dim2-nonabelian"] {
        let s = setup(name);
        let t = ConnectionTable::random_for(s.model(), 7);
        let theta = s.cocycle(&t, Side::Dgla);
        let m1 = s.lambda_maps(1);
        assert!(m1.form_end.delta.apply(&theta).is_zero(), "{}", name);
        let xs = s.form_end_spanning(Side::Dgla, 0, 0);
        let ys = s.form_end_spanning(Side::Dgla, 1, 0);
        let d0 = s.lambda_maps(0).form_end.delta;
        let d1 = m1.form_end.delta.clone();
        for x in xs.iter().step_by(7) {
            let dx = x.degree(s.big.form_end(0)).unwrap_or(0);
            for y in ys.iter().step_by(11) {
                let lhs = d1.apply(&s.big.product(0, x, 1, y));
                let a = s.big.product(0, &d0.apply(x), 1, y);
                let b = s.big.product(0, x, 1, &d1.apply(y));
                let rhs = if dx.rem_euclid(2) == 1 { a.sub(&b) } else { a.add(&b) };
                assert_eq!(lhs, rhs);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn t_hat_is_multiplicative_on_random_elements(
        cx in proptest::collection::vec(-2i64..=2, 4),
        cy in proptest::collection::vec(-2i64..=2, 4),
    ) {
        let s = setup("sl2-borel");
        let xs = s.form_end_spanning(Side::Pair, 1, 0);
        let ys = s.form_end_spanning(Side::Pair, 0, 0);
        let comb = |v: &[ModElem<Rational>], c: &[i64]| {
            let mut acc = ModElem::from_coeffs(vec![CochainElem::zero(0); v[0].coeffs.len()]);
            for (e, k) in v.iter().zip(c) {
                acc.add_assign_ref(&e.scale(&Rational::from_integer((*k).into())));
            }
            acc
        };
        let x = comb(&xs, &cx);
        let y = comb(&ys, &cy);
        let m = [s.lambda_maps(0), s.lambda_maps(1)];
        let lhs = m[1].t_hat().apply(&s.small.product(1, &x, 0, &y));
        let rhs = s.big.product(1, &m[1].t_hat().apply(&x), 0, &m[0].t_hat().apply(&y));
        prop_assert_eq!(lhs, rhs);
    }
}

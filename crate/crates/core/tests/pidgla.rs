use liepair_core::exactalg::parse::parse_poly;
use liepair_core::exactalg::{CochainElem, ExtMonomial};
use liepair_core::hpl::ModElem;
use liepair_core::liepair::examples::{bundled, sl2_on_line, BUNDLED};
use liepair_core::pidgla::{PairSection, PullbackAlgebroid, VectorFieldA1};
use liepair_core::{Error, Model, Rational};
use proptest::prelude::*;

fn models() -> Vec<Model> {
    let mut v: Vec<Model> = BUNDLED.iter().map(|n| bundled(n).unwrap()).collect();
    v.push(sl2_on_line());
    v
}

fn pi(name: &str) -> PullbackAlgebroid<Rational> {
    PullbackAlgebroid::new(&bundled(name).unwrap())
}

fn elem(p: &PullbackAlgebroid<Rational>, terms: &[(usize, CochainElem<Rational>)]) -> ModElem<Rational> {
    let mut v = p.zero();
    for (g, c) in terms {
        v.coeffs[*g].add_assign_ref(c);
    }
    v
}

#[test]
fn q_squares_to_zero() {
    for m in models() {
        let p = PullbackAlgebroid::new(&m);
        let q = p.q();
        for x in p.sections.basis_elements::<Rational>(1) {
            assert!(q.apply(&q.apply(&x)).is_zero(), "{}: Q^2 on {}", m.name, x.display(&p.sections));
        }
    }
}

#[test]
fn q_matches_bracket_oracle() {
    for m in models() {
        let p = PullbackAlgebroid::new(&m);
        let q = p.q();
        for x in p.sections.basis_elements::<Rational>(1) {
            assert_eq!(q.apply(&x), p.q_by_bracket(&x).unwrap(), "{} on {}", m.name, x.display(&p.sections));
        }
    }
}

#[test]
fn s_ia_is_self_commuting() {
    for m in models() {
        let p = PullbackAlgebroid::new(&m);
        let s = p.s_ia();
        let ss = p.bracket_oracle(&s, &s).unwrap();
        assert!(ss.field.vertical.iter().chain(&ss.field.horizontal).chain(&ss.l_part).all(|c| c.is_zero()), "{}", m.name);
    }
}

#[test]
fn q_examples_on_dim2() {
    let p = pi("dim2-nonabelian");
    let q = p.q();
    assert_eq!(q.apply(&p.gen(p.deta(0))), p.gen(p.e(0)));
    let eta1 = CochainElem::eta(0, 0);
    assert_eq!(q.apply(&p.gen(p.e(1))), elem(&p, &[(p.e(1), eta1)]));
}

#[test]
fn q_on_abelian() {
    let p = pi("abelian");
    let q = p.q();
    assert_eq!(q.apply(&p.gen(p.deta(0))), p.gen(p.e(0)));
    for a in 0..2 {
        assert!(q.apply(&p.gen(p.e(a))).is_zero());
    }
}

#[test]
fn pointwise_bracket_of_constant_l_parts() {
    let p = pi("sl2-borel");
    let zero_field = VectorFieldA1 { vertical: vec![CochainElem::zero(0); 2], horizontal: vec![] };
    let l = |a: usize| {
        let mut v = vec![CochainElem::zero(0); 3];
        v[a] = CochainElem::one(0);
        PairSection { degree: 0, field: zero_field.clone(), l_part: v }
    };
    // [e, f] = h
    let b = p.bracket_oracle(&l(1), &l(2)).unwrap();
    assert_eq!(b.l_part, vec![CochainElem::one(0), CochainElem::zero(0), CochainElem::zero(0)]);
}

#[test]
fn bracket_oracle_rejects_anchor_violations() {
    let p = pi("gl1-action");
    let mut bad = p.to_pair(&p.gen(p.e(1)), 0);
    bad.field.horizontal[0] = CochainElem::zero(1);
    assert!(matches!(p.bracket_oracle(&p.s_ia(), &bad), Err(Error::ConstraintViolation(_))));
}

#[test]
fn splitting_maps() {
    for m in models() {
        let p = PullbackAlgebroid::new(&m);
        for c in p.check_maps(1) {
            assert!(c.ok, "{}: {} {:?}", m.name, c.name, c.witness);
        }
        let mp = p.maps();
        let r = p.r();
        for j in 0..p.m() {
            let expected = if j < r { p.gen(p.deta(j)) } else { p.zero() };
            assert_eq!(mp.p_tilde.apply(&p.gen(p.e(j))), expected);
        }
        for j in 0..r {
            assert_eq!(mp.i_tilde.apply(&p.gen(p.deta(j))), p.gen(p.e(j)));
        }
    }
}

#[test]
fn basic_contraction_verifies() {
    for m in models() {
        let p = PullbackAlgebroid::new(&m);
        let c = p.basic_contraction();
        let rep = c.verify();
        assert!(rep.all_ok(), "{}", rep.summary());
        // projector = i_B p_B on generators
        let ip = p.i_b().compose(&p.p_b());
        let varpi = c.varpi();
        for g in 0..p.sections.rank() {
            assert_eq!(varpi.apply(&p.gen(g)), ip.apply(&p.gen(g)));
        }
    }
}

#[test]
fn filtration_is_one_step() {
    for m in models() {
        let p = PullbackAlgebroid::new(&m);
        assert!(p.check_filtration(1).ok, "{}", m.name);
    }
}

#[test]
fn perturbed_contraction_closed_forms() {
    for m in models() {
        let p = PullbackAlgebroid::new(&m);
        let pert = p.perturbed_pi_contraction().unwrap_or_else(|e| panic!("{}: {}", m.name, e));
        assert!(pert.report.all_ok(), "{}", pert.report.summary());
    }
}

#[test]
fn abelian_tau_is_inclusion() {
    let p = pi("abelian");
    let pert = p.perturbed_pi_contraction().unwrap();
    for l in 0..p.b.rank() {
        assert_eq!(pert.tau().apply(&p.b.gen(l)), p.i_b().apply(&p.b.gen(l)));
    }
}

#[test]
fn dim2_bott_differential() {
    let p = pi("dim2-nonabelian");
    let pert = p.perturbed_pi_contraction().unwrap();
    let mut expected = ModElem::zero(&p.b);
    expected.coeffs[0] = CochainElem::eta(0, 0);
    assert_eq!(pert.d().apply(&p.b.gen(0)), expected);
}

#[test]
fn g_manifold_b_subspace_is_q_stable() {
    for m in [bundled("gl1-action").unwrap(), sl2_on_line()] {
        let p = PullbackAlgebroid::new(&m);
        let q = p.q();
        let r = p.r();
        for l in r..p.m() {
            let y = q.apply(&p.gen(p.e(l)));
            for g in 0..p.sections.rank() {
                if g < p.e(r) {
                    assert!(y.coeffs[g].is_zero(), "{}: Q(e{}) leaves B-span", m.name, l + 1);
                }
            }
        }
        let pert = p.perturbed_pi_contraction().unwrap();
        for l in 0..p.b.rank() {
            assert_eq!(pert.tau().apply(&p.b.gen(l)), p.i_b().apply(&p.b.gen(l)), "{}", m.name);
        }
    }
}

fn coefficient(n: usize, r: usize) -> impl Strategy<Value = CochainElem<Rational>> {
    let mono = (0u32..(1 << r), proptest::collection::vec(0u32..3, n), -3i64..=3);
    proptest::collection::vec(mono, 1..4).prop_map(move |terms| {
        let mut c = CochainElem::zero(n);
        for (bits, exps, v) in terms {
            let p = liepair_core::exactalg::Polynomial::monomial(exps, Rational::from_integer(v.into()));
            c.add_term(ExtMonomial::from_bits(bits), p);
        }
        c
    })
}

proptest! {
    #[test]
    fn q_is_a_derivation_over_d_a(f in coefficient(3, 2), g in 0usize..5) {
        let p = pi("foliation-chart");
        let q = p.q();
        let fw = p.gen(g).lmul(&f);
        let lhs = q.apply(&fw);
        let rhs = p.gen(g).lmul(&p.model.ce_differential(&f)).add(&q.apply(&p.gen(g)).lmul(&f.twist(1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_squares_to_zero_on_random_sections(f in coefficient(1, 1), g in 0usize..3) {
        let p = pi("gl1-action");
        let q = p.q();
        let x = p.gen(g).lmul(&f);
        prop_assert!(q.apply(&q.apply(&x)).is_zero());
        prop_assert_eq!(q.apply(&x), p.q_by_bracket(&x).unwrap());
    }
}

#[test]
fn foliation_d_a_is_leafwise_de_rham() {
    // d_A x = sum_i eta^i rho_i(x) for each coordinate
    let m = bundled("foliation-chart").unwrap();
    let x3 = CochainElem::from_poly(parse_poly("x3", 3).unwrap());
    let d = m.ce_differential(&x3);
    let expected = CochainElem::eta(3, 0).scale_poly(&parse_poly("x1*x3", 3).unwrap());
    assert_eq!(d, expected);
}

use liepair_core::atiyah::{AtiyahSetup, SectionConnection};
use liepair_core::exactalg::CochainElem;
use liepair_core::hpl::ModElem;
use liepair_core::liepair::examples::{bundled, sl2_on_line, BUNDLED};
use liepair_core::liepair::ConnectionTable;
use liepair_core::{Model, Rational};

fn models() -> Vec<Model> {
    let mut v: Vec<Model> = BUNDLED.iter().map(|n| bundled(n).unwrap()).collect();
    v.push(sl2_on_line());
    v
}

fn tables(m: &Model) -> Vec<ConnectionTable<Rational>> {
    let mut v = vec![ConnectionTable::default_for(m)];
    v.extend((0..3).map(|s| ConnectionTable::random_for(m, s)));
    v
}

#[test]
fn projection_matches_default_and_random() {
    for m in models() {
        let setup = AtiyahSetup::new(&m).unwrap();
        for (k, t) in tables(&m).iter().enumerate() {
            let cmp = setup.compare_projection(t);
            assert!(cmp.equal, "{} table {}: residual {}", m.name, k, cmp.residual_display);
        }
    }
}

#[test]
fn cocycles_are_closed() {
    for m in models() {
        let setup = AtiyahSetup::new(&m).unwrap();
        for t in tables(&m) {
            let at = setup.dgla_atiyah(&t);
            let q = setup.q_closedness(&at);
            assert!(q.ok, "{}: {:?}", m.name, q.witness);
            let p = setup.pair_closedness(&setup.pair_atiyah(&t));
            assert!(p.ok, "{}: {:?}", m.name, p.witness);
        }
    }
}

#[test]
fn atiyah_is_tensorial() {
    for m in models() {
        let setup = AtiyahSetup::new(&m).unwrap();
        for t in tables(&m).iter().take(2) {
            let at = setup.dgla_atiyah(t);
            let c = setup.tensoriality(t, &at, 1);
            assert!(c.ok, "{}: {:?}", m.name, c.witness);
        }
    }
}

#[test]
fn connection_properties_hold() {
    for m in models() {
        let setup = AtiyahSetup::new(&m).unwrap();
        for t in tables(&m) {
            for c in setup.connection_properties(&t) {
                assert!(c.ok, "{}: {} {:?}", m.name, c.name, c.witness);
            }
        }
    }
}

#[test]
fn abelian_and_dim2_values() {
    let ab = AtiyahSetup::new(&bundled("abelian").unwrap()).unwrap();
    let t = ConnectionTable::default_for(&ab.pi.model);
    assert!(ab.dgla_atiyah(&t).is_zero());
    assert!(ab.pair_atiyah(&t).is_zero());

    let d2 = AtiyahSetup::new(&bundled("dim2-nonabelian").unwrap()).unwrap();
    let t = ConnectionTable::default_for(&d2.pi.model);
    assert!(d2.pair_atiyah(&t).is_zero());
    // p_B At(deta_1, e_j) = 0
    let conn = SectionConnection::new(&d2.pi, &t);
    let q = d2.pi.q();
    let pb = d2.pi.p_b();
    for j in 0..2 {
        let v = d2.atiyah_pair_value(&conn, &q, &d2.pi.gen(d2.pi.deta(0)), &d2.pi.gen(d2.pi.e(j)));
        assert!(pb.apply(&v).is_zero());
    }
}

#[test]
fn sl2_borel_pair_atiyah_is_nonzero_and_closed() {
    let s = AtiyahSetup::new(&bundled("sl2-borel").unwrap()).unwrap();
    let t = ConnectionTable::default_for(&s.pi.model);
    let at = s.pair_atiyah(&t);
    assert!(!at.is_zero());
    assert!(s.pair_closedness(&at).ok);
}

#[test]
fn leibniz_expansion_of_connection() {
    let m = bundled("sl2-borel").unwrap();
    let s = AtiyahSetup::new(&m).unwrap();
    let t = ConnectionTable::random_for(&m, 4);
    let conn = SectionConnection::new(&s.pi, &t);
    let eta1 = CochainElem::eta(0, 0);
    for i in 0..3 {
        for j in 0..3 {
            let lhs = conn.nabla(&s.pi.gen(s.pi.e(i)), &s.pi.gen(s.pi.e(j)).lmul(&eta1));
            // e_i has no anchor on a point, so only the signed tensorial term remains
            let rhs = conn.nabla(&s.pi.gen(s.pi.e(i)), &s.pi.gen(s.pi.e(j))).lmul(&eta1);
            assert_eq!(lhs, rhs);
            let lhs = conn.nabla(&s.pi.gen(s.pi.deta(0)), &s.pi.gen(s.pi.e(j)).lmul(&eta1));
            let rhs = s.pi.gen(s.pi.e(j)).add(&conn.nabla(&s.pi.gen(s.pi.deta(0)), &s.pi.gen(s.pi.e(j))).lmul(&eta1.neg()));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn h12_matches_constructed_homotopy() {
    let s = AtiyahSetup::new(&bundled("dim2-nonabelian").unwrap()).unwrap();
    let samples = s.hom.big_tests();
    let c = s.check_h12(&samples);
    assert!(c.ok, "{:?}", c.witness);
    let t = ConnectionTable::default_for(&s.pi.model);
    // H of an image of T vanishes
    let img = s.incl_t12(&s.pair_atiyah(&t));
    assert!(s.homotopy_h12(&img).is_zero());
    assert!(s.homotopy_h12(&ModElem::zero(s.big())).is_zero());
    assert!(s.proj_pi12(&ModElem::zero(s.big())).is_zero());
}

#[test]
fn atiyah_contraction_axioms() {
    for name in ["dim2-nonabelian", "abelian"] {
        let s = AtiyahSetup::new(&bundled(name).unwrap()).unwrap();
        let rep = s.hom.verify();
        assert!(rep.all_ok(), "{}", rep.summary());
    }
}

#[test]
fn vertical_christoffel_tables() {
    // nonzero al/la tables: tested, not assumed
    for m in models() {
        let setup = AtiyahSetup::new(&m).unwrap();
        for seed in 0..2 {
            let t = ConnectionTable::random_for(&m, seed).with_random_vertical(seed, m.n());
            let cmp = setup.compare_projection(&t);
            assert!(cmp.equal, "{} seed {}: {}", m.name, seed, cmp.residual_display);
        }
    }
}

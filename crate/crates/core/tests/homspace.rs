use proptest::prelude::*;
use quante2::catalog::get_preset;
use quante2::exprio::{format_poly, parse_poly};
use quante2::homspace::*;
use quante2::hopf::HopfStructure;
use quante2::ncalg::NCPoly;
use quante2::poisson::AlgebraMorphism;
use quante2::report::Status;
use quante2::scalars::Scalar;

fn qe2() -> HopfStructure {
    get_preset("qe2-nonstd").unwrap().hopf.clone().unwrap()
}

fn cylinder() -> Subalgebra {
    Subalgebra::from_embedding(get_preset("quantum-cylinder").unwrap().morphism.as_ref().unwrap()).unwrap()
}

fn pi() -> AlgebraMorphism {
    get_preset("quotient-I").unwrap().morphism.clone().unwrap()
}

fn p(s: &str) -> NCPoly {
    parse_poly(s, &qe2().tower).unwrap()
}

#[test]
fn membership_examples() {
    let b = cylinder();
    let x = p("v^2*(v^-1*nb - v*n)");
    let d = subalgebra_membership(&x, &b).unwrap();
    assert_eq!(d.terms, vec![(vec![2, 1], Scalar::one())]);
    assert!(subalgebra_membership(&p("n"), &b).is_none());
    let d = subalgebra_membership(&p("w"), &b).unwrap();
    assert_eq!(d.terms, vec![(vec![0, 0], Scalar::param("w"))]);
}

#[test]
fn cylinder_is_star_invariant_right_coideal() {
    let h = qe2();
    let b = cylinder();
    let rep = coideal_report("cyl", &b, &h).unwrap();
    assert!(rep.all_pass(), "{:?}", rep.first_failure());
    let dm = h.coproduct(&b.gens[1]).unwrap();
    let want = quante2::hopf::parse_square("1 (x) m + v^-1*nb (x) v^-1 - v*n (x) v", &h);
    // m is not a generator name in qe2; compare against the expanded form instead
    assert!(want.is_err());
    let want = quante2::hopf::parse_square("1 (x) v^-1*nb - 1 (x) v*n + v^-1*nb (x) v^-1 - v*n (x) v", &h).unwrap();
    assert_eq!(dm, want);
}

#[test]
fn subalgebra_of_n_fails_via_star() {
    let h = qe2();
    let b = Subalgebra::new(h.tower.clone(), vec![("n".into(), p("n"))]);
    let rep = coideal_report("n", &b, &h).unwrap();
    let f = rep.first_failure().unwrap();
    assert!(f.id.ends_with("/star"));
    assert!(f.witness.is_some());
}

#[test]
fn quotients() {
    assert!(quotient_check(&pi()).all_pass());
    let circle = get_preset("quotient-circle").unwrap();
    assert!(quotient_check(circle.morphism.as_ref().unwrap()).all_pass());
    let h = qe2();
    let bad = AlgebraMorphism::parse("bad", h.tower.clone(), vec![pi().targets[0].clone()], &[("v", "t"), ("n", "t"), ("nb", "t")]);
    assert!(bad.is_err());
}

#[test]
fn ideal_membership() {
    let pi = pi();
    assert!(ideal_member(&p("v - 1"), &pi));
    assert!(ideal_member(&p("v - v^-1"), &pi));
    assert!(!ideal_member(&p("n"), &pi));
}

#[test]
fn hopf_star_ideal() {
    let h = qe2();
    let pre = get_preset("quotient-I").unwrap();
    let rep = hopf_star_ideal_report("I", &pre.ideal, &pi(), &h).unwrap();
    assert!(rep.all_pass(), "{:?}", rep.first_failure());
    assert_eq!(rep.records.len(), 8);
}

#[test]
fn ideal_of_n_in_standard_functions_is_not_a_coideal() {
    let f = get_preset("fun-e2").unwrap();
    let h = f.hopf.clone().unwrap();
    let t = get_preset("quotient-circle").unwrap().morphism.clone().unwrap().targets[0].clone();
    // pi: v -> u, n -> 0, nb -> t-like: kill only n
    let line = quante2::exprio::build_tower(
        "u-line",
        vec![],
        &[
            quante2::exprio::LevelSpec { gen: "u".into(), invertible: true, sigma: vec![], delta: vec![] },
            quante2::exprio::LevelSpec { gen: "s".into(), invertible: false, sigma: vec![], delta: vec![] },
        ],
    )
    .unwrap();
    let _ = t;
    let pi = AlgebraMorphism::parse("kill-n", h.tower.clone(), vec![std::sync::Arc::new(line)], &[("v", "u"), ("n", "0"), ("nb", "s")]).unwrap();
    let n = parse_poly("n", &h.tower).unwrap();
    let rep = hopf_star_ideal_report("n", &[n], &pi, &h).unwrap();
    assert!(!rep.all_pass());
    let star = rep.records.iter().find(|r| r.id.ends_with("/star")).unwrap();
    assert_eq!(star.status, Status::Fail);
}

#[test]
fn coinvariance() {
    let h = qe2();
    let pi = pi();
    assert!(coinvariance_check(&p("v"), &pi, &h, Side::Left).unwrap());
    assert!(coinvariance_check(&p("v^-1"), &pi, &h, Side::Left).unwrap());
    assert!(!coinvariance_check(&p("n"), &pi, &h, Side::Left).unwrap());
    let m = p("v^-1*nb - v*n");
    // the printed grouping drops vb*n (x) (v - vb); left coinvariance of m fails
    assert!(!coinvariance_check(&m, &pi, &h, Side::Left).unwrap());
    let r = coinvariance_record("m", &m, &pi, &h, Side::Left).unwrap();
    assert_eq!(r.lhs_canonical, "-t (x) v + t (x) v^-1");
    assert!(coinvariance_check(&m, &pi, &h, Side::Right).unwrap());
}

#[test]
fn sigma_images() {
    let h = qe2();
    let b = Subalgebra::new(h.tower.clone(), vec![("vb".into(), p("v^-1")), ("m".into(), p("v^-1*nb - v*n")), ("1".into(), p("1"))]);
    let out = sigma_generators(&b, &h, 2).unwrap();
    let pi = pi();
    for (_, _, x) in &out {
        assert!(ideal_member(x, &pi));
    }
    assert_eq!(out[0].2, p("v - 1"));
    assert_eq!(format_poly(&out[2].2, &h.tower), "-nb + n - w*v + w*v^-1");
    assert!(out[4].2.is_zero());
}

#[test]
fn bounded_cylinder_monomials_are_coinvariant() {
    let h = qe2();
    let b = cylinder();
    let pi = pi();
    for r in -2..=2 {
        for s in 0..=2 {
            let x = b.product(&[r, s]);
            assert!(coinvariance_check(&x, &pi, &h, Side::Right).unwrap(), "v^{} m^{}", r, s);
        }
    }
    for s in ["n", "nb", "n^2*nb", "v*n"] {
        assert!(!coinvariance_check(&p(s), &pi, &h, Side::Right).unwrap(), "{}", s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn kernel_is_two_sided(a in 0usize..6, r in -2i32..3, s in 0u32..3) {
        let h = qe2();
        let t = &h.tower;
        let gens = ["v - 1", "n - nb", "v - v^-1", "(v - 1)*n", "nb*(n - nb)", "w*(v - 1)^2"];
        let x = p(gens[a]);
        let mut y = t.one();
        y = t.mul(&y, &t.pow(&if r < 0 { p("v^-1") } else { p("v") }, r.unsigned_abs()));
        y = t.mul(&y, &t.pow(&p("n + 2*nb"), s));
        let pi = pi();
        prop_assert!(ideal_member(&x, &pi));
        prop_assert!(ideal_member(&t.mul(&x, &y), &pi));
        prop_assert!(ideal_member(&t.mul(&y, &x), &pi));
    }

    #[test]
    fn coideal_report_is_order_independent(swap in any::<bool>()) {
        let h = qe2();
        let mut b = cylinder();
        if swap {
            b.names.reverse();
            b.gens.reverse();
        }
        let rep = coideal_report("c", &b, &h).unwrap();
        prop_assert!(rep.all_pass());
    }
}

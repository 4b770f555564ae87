use proptest::prelude::*;
use quante2::catalog::get_preset;
use quante2::liebialg::*;
use quante2::scalars::Scalar;

fn basis() -> Vec<String> {
    ["J", "X", "Y"].iter().map(|s| s.to_string()).collect()
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn e2() -> LieAlgebra {
    let g = get_preset("fun-e2").unwrap();
    lie_from_group(g.hopf.as_ref().unwrap(), &basis()).unwrap()
}

fn delta_of(id: &str) -> Cocommutator {
    linearize_poisson(get_preset(id).unwrap().poisson.as_ref().unwrap()).unwrap()
}

#[test]
fn e2_structure_constants() {
    let g = e2();
    assert_eq!(g.bracket(0, 1), &[s(0), s(-1), s(0)]);
    assert_eq!(g.bracket(0, 2), &[s(0), s(0), s(1)]);
    assert_eq!(g.bracket(1, 2), &[s(0), s(0), s(0)]);
    assert_eq!(g.bracket(1, 0), &[s(0), s(1), s(0)]);
}

#[test]
fn standard_cocommutator() {
    let d = delta_of("std-poisson");
    assert!(d.values[0].is_zero());
    // the sign follows the bracket convention; see the ledger
    assert_eq!(d.values[1].coeff(0, 1), s(-1));
    assert_eq!(d.values[2].coeff(0, 2), s(-1));
    assert!(cocycle_cojacobi_report("std", &e2(), &d).all_pass());
    assert!(coboundary_solve(&e2(), &d).is_none());
}

#[test]
fn nonstandard_cocommutator_is_coboundary() {
    let g = e2();
    let d = delta_of("nonstd-poisson");
    let w = Scalar::param("w");
    // delta(P1) = 0, delta(P2) = -w P2^P1
    let p1 = [s(0), s(1), s(1)];
    let p2 = [s(0), s(1), s(-1)];
    assert!(d.apply(&p1).is_zero());
    assert_eq!(d.apply(&p2), WedgeBivector::wedge(&p2, &p1).scale(&w.neg()));
    assert!(cocycle_cojacobi_report("nonstd", &g, &d).all_pass());
    let sol = coboundary_solve(&g, &d).expect("coboundary");
    assert_eq!(sol.dimension(), 1);
    assert_eq!(coboundary(&g, &sol.particular), d);
    for dir in &sol.directions {
        assert_eq!(coboundary(&g, &sol.particular.add(dir)), d);
    }
    // r = w J^P2 is a solution
    let r = WedgeBivector::wedge(&[s(1), s(0), s(0)], &p2).scale(&w);
    assert_eq!(coboundary(&g, &r), d);
}

#[test]
fn trivial_cases() {
    let ab = LieAlgebra::abelian(basis());
    let zero = Cocommutator::zero(3);
    assert_eq!(coboundary_solve(&ab, &zero).unwrap().dimension(), 3);
    let mut d = Cocommutator::zero(3);
    d.values[1].add_pair(1, 2, &s(1));
    assert!(cocycle_cojacobi_report("ab", &ab, &d).all_pass());
}

#[test]
fn plane_rotation_invariance() {
    let rot = vec![vec![s(0), s(-1)], vec![s(1), s(0)]];
    let rho = WedgeBivector::wedge(&[s(1), s(0)], &[s(0), s(1)]).scale(&Scalar::param("k"));
    let push = vec![vec![s(0); 3]; 2];
    let r = stabilizer_invariance_check("plane", &push, &rot, &WedgeBivector::zero(3), &rho).unwrap();
    assert_eq!(r.status, quante2::report::Status::Pass);
    // derived from the coaction: J fixes the origin
    let alpha = get_preset("coaction-plane").unwrap();
    let (push, act) = isotropy_data(alpha.morphism.as_ref().unwrap(), &[s(1), s(0), s(0)], &[s(0), s(0)]).unwrap();
    let r = stabilizer_invariance_check("plane-J", &push, &act, &WedgeBivector::zero(3), &rho).unwrap();
    assert_eq!(r.status, quante2::report::Status::Pass);
}

#[test]
fn cylinder_p1_invariance() {
    let d = delta_of("nonstd-poisson");
    let p1 = [s(0), s(1), s(1)];
    let alpha = get_preset("coaction-cylinder").unwrap();
    let (push, act) = isotropy_data(alpha.morphism.as_ref().unwrap(), &p1, &[s(1), s(0)]).unwrap();
    // P1 fixes (v, m) = (1, 0)
    let fixed: Vec<Scalar> = push.iter().map(|row| row[1].add(&row[2])).collect();
    assert!(fixed.iter().all(|c| c.is_zero()));
    let rho = WedgeBivector::wedge(&[s(1), s(0)], &[s(0), s(1)]).scale(&Scalar::param("k"));
    let r = stabilizer_invariance_check("cyl", &push, &act, &d.apply(&p1), &rho).unwrap();
    assert_eq!(r.status, quante2::report::Status::Pass);
}

#[test]
fn shear_negative_control() {
    let shear = vec![vec![s(0), s(1)], vec![s(0), s(0)]];
    let push = vec![vec![s(0), s(1), s(0)], vec![s(0), s(0), s(1)]];
    let mut d = WedgeBivector::zero(3);
    d.add_pair(1, 2, &s(1));
    let rho = WedgeBivector::wedge(&[s(1), s(0)], &[s(0), s(1)]);
    let r = stabilizer_invariance_check("shear", &push, &shear, &d, &rho).unwrap();
    assert_eq!(r.status, quante2::report::Status::Fail);
    assert!(r.witness.is_some());
}

proptest! {
    #[test]
    fn coboundaries_are_cocycles(a in -5i64..5, b in -5i64..5, c in -5i64..5) {
        let g = e2();
        let mut r = WedgeBivector::zero(3);
        r.add_pair(0, 1, &s(a));
        r.add_pair(0, 2, &s(b));
        r.add_pair(1, 2, &s(c));
        let d = coboundary(&g, &r);
        prop_assert!(cocycle_cojacobi_report("r", &g, &d).all_pass());
        let sol = coboundary_solve(&g, &d).unwrap();
        prop_assert_eq!(coboundary(&g, &sol.particular), d);
    }
}

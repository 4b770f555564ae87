use quante2::catalog::{get_preset, list_presets, list_variants, load_preset_str, CatalogError};
use quante2::ncalg::diamond_check;
use quante2::poisson::jacobi_report;

#[test]
fn every_catalog_preset_loads() {
    let list = list_presets();
    assert!(list.len() >= 15);
    for info in &list {
        let p = get_preset(&info.id).unwrap_or_else(|e| panic!("{}: {}", info.id, e));
        assert_eq!(p.digest.len(), 64);
    }
    assert!(list.iter().any(|p| p.id == "quantum-cylinder"));
}

#[test]
fn every_variant_loads() {
    for id in list_variants() {
        get_preset(id).unwrap_or_else(|e| panic!("{}: {}", id, e));
    }
}

#[test]
fn unknown_id() {
    assert_eq!(get_preset("nope").unwrap_err(), CatalogError::Unknown("nope".into()));
}

#[test]
fn poisson_presets_satisfy_jacobi() {
    for id in ["std-poisson", "nonstd-poisson", "plane-poisson", "cylinder-poisson"] {
        let p = get_preset(id).unwrap();
        let r = jacobi_report(p.poisson.as_ref().unwrap());
        assert!(r.all_pass(), "{}: {:?}", id, r.first_failure());
    }
}

#[test]
fn corrupted_tower_is_not_confluent() {
    let p = get_preset("qe2-corrupted").unwrap();
    let r = diamond_check(p.tower.as_ref().unwrap(), 3);
    assert!(!r.all_pass());
    let good = get_preset("qe2-nonstd").unwrap();
    assert!(diamond_check(good.tower.as_ref().unwrap(), 4).all_pass());
}

#[test]
fn digest_ignores_whitespace() {
    let a = quante2::catalog::canonicalize("x", r#"{"b":1,"a":2}"#).unwrap();
    let b = quante2::catalog::canonicalize("x", "{ \"a\" : 2,\n \"b\": 1 }").unwrap();
    assert_eq!(a, b);
}

#[test]
fn unknown_field_rejected() {
    let e = load_preset_str(r#"{"name":"x","description":"","anchor":"","bogus":1}"#).unwrap_err();
    assert!(matches!(e, CatalogError::Json { .. }));
}

#[test]
fn file_preset_extends_shipped() {
    let p = load_preset_str(
        r#"{"name":"mine","description":"d","anchor":"a","extends":"fun-e2",
            "poisson":{"v,n":"0","v,nb":"0","n,nb":"1"}}"#,
    )
    .unwrap();
    assert!(p.hopf.is_some());
    assert!(jacobi_report(p.poisson.as_ref().unwrap()).all_pass());
}

use proptest::prelude::*;

use quante2::catalog::get_preset;
use quante2::exprio::*;
use quante2::ncalg::{NCPoly, OreTower};
use quante2::scalars::Scalar;

fn qe2() -> std::sync::Arc<OreTower> {
    get_preset("qe2-nonstd").unwrap().tower.clone().unwrap()
}

#[test]
fn grammar_shapes() {
    let ast = parse_expr("2*v^-1 - (n + 1/3)").unwrap();
    match ast {
        ExprAst::Sum(ts) => {
            assert_eq!(ts.len(), 2);
            assert!(ts[1].0);
        }
        other => panic!("{:?}", other),
    }
    assert_eq!(parse_expr("a (x) b (x) c").unwrap().arity(), 3);
    assert_eq!(parse_expr("(a + b) (x) c").unwrap().arity(), 2);
}

#[test]
fn syntax_errors_carry_offsets() {
    for bad in ["", "v +", "v ^ x", "(v", "v)", "2 ** v", "v^99999999999999999999"] {
        assert!(matches!(parse_expr(bad), Err(ExprError::Syntax { .. })), "{:?}", bad);
    }
    let t = qe2();
    assert_eq!(parse_poly("q", &t), Err(ExprError::UnknownSymbol("q".into())));
    assert_eq!(parse_poly("n^-1", &t), Err(ExprError::NegativePower("n".into())));
    assert!(matches!(parse_poly("v (x) v", &t), Err(ExprError::ArityMismatch { .. })));
}

#[test]
fn normal_form_examples() {
    let t = qe2();
    let f = |s: &str| format_poly(&parse_poly(s, &t).unwrap(), &t);
    assert_eq!(f("nb*n"), "n*nb - w*nb + w*n");
    assert_eq!(f("v*v^-1"), "1");
    assert_eq!(f("v*n - n*v"), f("w*(1 - v)"));
    assert_eq!(f("(1 + i)*(1 - i)"), "2");
    assert_eq!(f("0*n"), "0");
}

#[test]
fn tensor_format_parses_back() {
    let t = qe2();
    let towers = [t.as_ref(), t.as_ref()];
    let x = parse_tensor("v^-1 (x) n + n (x) 1 - w*nb (x) v^2", &towers).unwrap();
    let s = format_tensor(&x, &towers);
    assert_eq!(parse_tensor(&s, &towers).unwrap(), x);
    assert_eq!(format_canonical(&x, &towers), format_canonical(&parse_tensor(&s, &towers).unwrap(), &towers));
}

fn laurent(t: &OreTower, terms: &[(i64, i32, u32, u32, u32)]) -> NCPoly {
    let mut x = NCPoly::zero();
    for &(c, r, a, b, wp) in terms {
        let v = if r < 0 { t.inverse_of_term(&t.gen_poly(0)).unwrap() } else { t.gen_poly(0) };
        let mono = t.mul(&t.mul(&t.pow(&v, r.unsigned_abs()), &t.pow(&t.gen_poly(1), a)), &t.pow(&t.gen_poly(2), b));
        let w = parse_poly("w", t).unwrap().as_scalar().unwrap();
        let mut coeff = Scalar::from_int(c);
        for _ in 0..wp {
            coeff = coeff.mul(&w);
        }
        x.add_scaled(&mono, &coeff);
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn format_parse_round_trip(terms in prop::collection::vec((-9i64..=9, -3i32..=3, 0u32..=2, 0u32..=2, 0u32..=2), 0..5)) {
        let t = qe2();
        let x = laurent(&t, &terms);
        let s = format_poly(&x, &t);
        prop_assert_eq!(parse_poly(&s, &t).unwrap(), x);
        prop_assert_eq!(format_poly(&parse_poly(&s, &t).unwrap(), &t), s);
    }

    #[test]
    fn parser_never_panics(s in "[vnbw0-9ix() +*^/-]{0,24}") {
        let _ = parse_expr(&s);
    }
}

//! Acceptance harness: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.
//!
//! Criteria that cannot hold on the printed reference data are listed in
//! `KNOWN_RED`; the harness asserts they still fail (so a change in verdict is
//! noticed) and that every other criterion passes.

use std::sync::Arc;
use std::time::{Duration, Instant};

use quante2::catalog::{digests, get_preset, Preset};
use quante2::exprio::{format_poly, parse_poly};
use quante2::homspace::{coinvariance_check, hopf_star_ideal_report, ideal_member, sigma_generators, Side, Subalgebra};
use quante2::hopf::{hopf_axioms_report, parse_square, respects_relations_report, HopfStructure};
use quante2::liebialg::{coboundary_solve, cocycle_cojacobi_report, lie_from_group, linearize_poisson};
use quante2::ncalg::{diamond_check, graded_degree, independent, NCPoly};
use quante2::poisson::*;
use quante2::report::{CheckReport, Status};
use quante2::scalars::GaussRational;
use quante2::suites::{run_suite, Params, DEFAULT_DEGREE_BOUND};

const KNOWN_RED: &[u32] = &[5, 11];

struct Outcome {
    ok: bool,
    detail: String,
}

fn p(id: &str) -> Arc<Preset> {
    get_preset(id).unwrap()
}

fn poly(pre: &Preset, s: &str) -> NCPoly {
    pre.parse(s).unwrap()
}

fn bracket(pre: &Arc<Preset>) -> &PoissonStructure {
    pre.poisson.as_ref().unwrap()
}

fn hopf(pre: &Arc<Preset>) -> &HopfStructure {
    pre.hopf.as_ref().unwrap()
}

fn gr(s: &str) -> GaussRational {
    quante2::suites::parse_value(s).unwrap()
}

fn rank(ps: &PoissonStructure, gens: &[(&str, &str)], params: &[(&str, &str)]) -> Result<usize, PoissonError> {
    let g: Vec<_> = gens.iter().map(|(k, v)| (*k, gr(v))).collect();
    let q: Vec<_> = params.iter().map(|(k, v)| (*k, gr(v))).collect();
    poisson_matrix_rank(ps, &PoissonMatrixPoint::new(&g, &q))
}

fn c1() -> Outcome {
    let reps: Vec<CheckReport> = ["std-poisson", "nonstd-poisson"].iter().map(|id| jacobi_report(bracket(&p(id)))).collect();
    Outcome { ok: reps.iter().all(|r| r.all_pass()), detail: format!("{} triples", reps.iter().map(|r| r.records.len()).sum::<usize>()) }
}

fn c2() -> Outcome {
    let mut ok = true;
    for id in ["std-poisson", "nonstd-poisson"] {
        let pre = p(id);
        let ps = bracket(&pre);
        ok &= poisson_morphism_report(hopf(&pre).delta.as_ref().unwrap(), ps, &[ps, ps]).all_pass();
    }
    Outcome { ok, detail: "Delta is a Poisson map".into() }
}

fn family(id: &str) -> (Arc<Preset>, CovariantFamily) {
    let pre = p(id);
    let cov = pre.covariance.clone().unwrap();
    let fam = covariant_family_solve(pre.morphism.as_ref().unwrap(), bracket(&p(&cov.group)), &cov.ansatz).unwrap();
    (pre, fam)
}

fn c3() -> Outcome {
    let (pre, fam) = family("coaction-plane");
    let t = &pre.morphism.as_ref().unwrap().source;
    let has = |s: &str| fam.contains(&parse_poly(s, t).unwrap());
    let ok = fam.dimension() == Some(1) && has("z*zb") && has("z*zb + k") && !has("2*z*zb");
    Outcome { ok, detail: format!("dimension {:?}", fam.dimension()) }
}

fn c4() -> Outcome {
    let (pre, fam) = family("coaction-cylinder");
    let t = &pre.morphism.as_ref().unwrap().source;
    let printed_in = fam.contains(&parse_poly("-w*(v^2 - 1) + k", t).unwrap());
    let rep = run_suite("families", &Params::new(), DEFAULT_DEGREE_BOUND).unwrap();
    let rec = rep.get("families/cylinder/printed").unwrap();
    let want = if printed_in { Status::Pass } else { Status::Discrepancy };
    let ok = fam.dimension() == Some(1) && rec.status == want && rep.passed();
    let particular = fam.particular().map(|x| format_poly(&x, t)).unwrap_or_default();
    Outcome { ok, detail: format!("family {} + c*v; printed value recorded as {}", particular, rec.status) }
}

fn c5() -> Outcome {
    let std = p("std-poisson");
    let printed = field_relation_check(bracket(&std), "std", &[("v*n*nb", "v"), ("nb", "n"), ("n", "nb")]).unwrap();
    let npp = p("nonstd-poisson-printed");
    let nonstd = field_relation_check(bracket(&npp), "nonstd", &[("v - v^2", "n"), ("v - 1", "nb"), ("nb - n", "v")]).unwrap();
    Outcome {
        ok: printed.status == Status::Pass && nonstd.status == Status::Pass,
        detail: format!("standard identity: {} (witness {}); nonstandard identity: {}", printed.status, printed.witness.unwrap_or_default(), nonstd.status),
    }
}

fn c6() -> Outcome {
    let std = p("std-poisson");
    let ns = p("nonstd-poisson");
    let cyl = p("cylinder-poisson");
    let mut ok = true;
    for v0 in ["1", "i", "3/5 + 4/5*i"] {
        ok &= rank(bracket(&std), &[("v", v0), ("n", "0"), ("nb", "0")], &[]).ok() == Some(0);
    }
    for t in ["0", "1"] {
        ok &= rank(bracket(&ns), &[("v", "1"), ("n", t), ("nb", t)], &[("w", "1")]).ok() == Some(0);
    }
    ok &= rank(bracket(&ns), &[("v", "i"), ("n", "0"), ("nb", "0")], &[("w", "1")]).ok() == Some(2);
    let wk = [("w", "1"), ("k", "-2")];
    for v0 in ["i", "-i"] {
        ok &= rank(bracket(&cyl), &[("v", v0), ("m", "0")], &wk).ok() == Some(0);
    }
    let at_one = rank(bracket(&cyl), &[("v", "1"), ("m", "0")], &wk).ok();
    ok &= at_one == Some(2);
    Outcome { ok, detail: format!("cylinder rank at v=1: {:?}", at_one) }
}

fn c7() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for id in ["std-bialg", "nonstd-bialg"] {
        let spec = p(id).bialgebra.clone().unwrap();
        let g = lie_from_group(hopf(&p(&spec.group)), &spec.basis).unwrap();
        let d = linearize_poisson(bracket(&p(&spec.poisson))).unwrap();
        ok &= cocycle_cojacobi_report(id, &g, &d).all_pass();
        let sol = coboundary_solve(&g, &d);
        detail.push(format!("{}: coboundary {}", id, sol.is_some()));
        ok &= sol.is_some() == (id == "nonstd-bialg");
    }
    Outcome { ok, detail: detail.join(", ") }
}

fn c8() -> Outcome {
    let mut ok = true;
    for id in ["qe2-nonstd", "quantum-cylinder", "quantum-plane"] {
        ok &= diamond_check(p(id).tower().unwrap(), DEFAULT_DEGREE_BOUND).all_pass();
    }
    let bad = diamond_check(p("qe2-corrupted").tower().unwrap(), 3);
    let witness = bad.first_failure().and_then(|r| r.witness.clone());
    ok &= witness.is_some();
    Outcome { ok, detail: format!("corrupted tower witness: {}", witness.unwrap_or_default()) }
}

fn c9() -> Outcome {
    let mut ok = true;
    let mut n = 0;
    for id in ["fun-e2", "qe2-nonstd"] {
        let pre = p(id);
        let h = hopf(&pre);
        for r in [hopf_axioms_report(h).unwrap(), respects_relations_report(h).unwrap()] {
            n += r.records.len();
            ok &= r.all_pass();
        }
    }
    Outcome { ok, detail: format!("{} records", n) }
}

fn cylinder_in_qe2() -> (Arc<Preset>, Subalgebra) {
    let qc = p("quantum-cylinder");
    (p("qe2-nonstd"), Subalgebra::from_embedding(qc.morphism.as_ref().unwrap()).unwrap())
}

fn c10() -> Outcome {
    let (q, b) = cylinder_in_qe2();
    let h = hopf(&q);
    let mut basis = Vec::new();
    for r in -3..=3 {
        for s in 0..=3 {
            basis.push(b.product(&[r, s]));
        }
    }
    let ind = independent(&basis);
    let qc = p("quantum-cylinder");
    let t = qc.tower().unwrap();
    // deterministic pseudo-random pairs of Laurent-polynomial elements
    let mut seed = 0x2545_f491_4f6c_dd1du64;
    let mut next = |m: u64| {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed % m
    };
    let mut random = || {
        let mut s = String::new();
        for i in 0..=next(3) {
            let sign = if i > 0 || next(2) == 0 { if next(2) == 0 { " + " } else { " - " } } else { "" };
            s.push_str(&format!("{}{}*v^{}*m^{}", sign, 1 + next(5), next(5) as i64 - 2, next(3)));
        }
        parse_poly(s.trim_start_matches(" + "), t).unwrap()
    };
    let mut additive = 0;
    for _ in 0..100 {
        let (x, y) = (random(), random());
        if graded_degree(&x, 1).unwrap() + graded_degree(&y, 1).unwrap() == graded_degree(&t.mul(&x, &y), 1).unwrap() {
            additive += 1;
        }
    }
    let coideal = quante2::homspace::coideal_report("quantum-cylinder", &b, h).unwrap();
    let dm = h.coproduct(&b.gens[1]).unwrap();
    let want = parse_square("1 (x) v^-1*nb - 1 (x) v*n + v^-1*nb (x) v^-1 - v*n (x) v", h).unwrap();
    Outcome {
        ok: ind && additive == 100 && coideal.all_pass() && dm == want,
        detail: format!("{} basis elements independent: {}; {}/100 additive", basis.len(), ind, additive),
    }
}

fn c11() -> Outcome {
    let (q, b) = cylinder_in_qe2();
    let h = hopf(&q);
    let qi = p("quotient-I");
    let pi = qi.morphism.as_ref().unwrap();
    let ideal = hopf_star_ideal_report("I", &qi.ideal, pi, h).unwrap().all_pass();
    let left = |x: &NCPoly| coinvariance_check(x, pi, h, Side::Left).unwrap();
    let (lv, lvb, lm, ln) = (left(&poly(&q, "v")), left(&poly(&q, "v^-1")), left(&b.gens[1]), left(&poly(&q, "n")));
    let sb = Subalgebra::new(q.tower().unwrap().clone(), vec![("vb".into(), poly(&q, "v^-1")), ("m".into(), b.gens[1].clone())]);
    let sig = sigma_generators(&sb, h, 2).unwrap();
    let members = sig.iter().all(|(_, _, x)| ideal_member(x, pi));
    let svb = &sig.iter().find(|(g, k, _)| g == "vb" && *k == 1).unwrap().2;
    let svb_ok = *svb == poly(&q, "v - 1");
    Outcome {
        ok: ideal && lv && lvb && lm && !ln && members && svb_ok,
        detail: format!(
            "ideal {}; left-coinvariant v {} vb {} m {} n {}; sigma images in I {}; (S - eps)(vb) = v - 1 {}",
            ideal, lv, lvb, lm, ln, members, svb_ok
        ),
    }
}

fn c12(all: &CheckReport) -> Outcome {
    let classified = |id: &str| all.get(id).map(|r| r.status).filter(|s| *s != Status::Fail);
    let vm = classified("foliation/nonstd/bracket/v,m");
    let rel = classified("relations/quantum-cylinder/commutator/vb,m");
    let code = all.exit_code();
    Outcome {
        ok: vm.is_some() && rel.is_some() && (code == 0 || code == 2),
        detail: format!("exit code {}; {{v,m}}: {:?}; vb,m relation: {:?}; {} discrepancies", code, vm, rel, all.summary().discrepancy),
    }
}

fn c13(first: &str, elapsed: Duration) -> Outcome {
    let t = Instant::now();
    let second = run_suite("all", &Params::new(), DEFAULT_DEGREE_BOUND).unwrap().to_canonical_json(&digests());
    let total = elapsed + t.elapsed();
    Outcome { ok: first == second && total < Duration::from_secs(60), detail: format!("{} bytes, two runs in {:.1?}", first.len(), total) }
}

fn main() {
    let mut results: Vec<(u32, Outcome, Duration)> = Vec::new();
    let simple: [(u32, fn() -> Outcome); 11] = [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9), (10, c10), (11, c11)];
    for (n, f) in simple {
        let t = Instant::now();
        let o = f();
        results.push((n, o, t.elapsed()));
    }
    let t = Instant::now();
    let all = run_suite("all", &Params::new(), DEFAULT_DEGREE_BOUND).unwrap();
    let first = all.to_canonical_json(&digests());
    let elapsed = t.elapsed();
    results.push((12, c12(&all), elapsed));
    let t = Instant::now();
    let o = c13(&first, elapsed);
    results.push((13, o, t.elapsed() + elapsed));

    let mut unexpected = Vec::new();
    for (n, o, d) in &results {
        let red = KNOWN_RED.contains(n);
        let tag = if red && !o.ok { " (known red)" } else { "" };
        println!("criterion {:>2}: {}{} [{:.2?}] {}", n, if o.ok { "PASS" } else { "FAIL" }, tag, d, o.detail);
        if o.ok == red {
            unexpected.push(*n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with an unexpected verdict: {:?}", unexpected);
        std::process::exit(1);
    }
}

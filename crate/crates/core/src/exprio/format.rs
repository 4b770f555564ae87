use std::cmp::Ordering;

use crate::ncalg::{Monomial, NCPoly, OreTower, TensorElement};
use crate::scalars::Scalar;

pub fn format_monomial(m: &Monomial, tower: &OreTower) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(l, &e)| {
            let name = &tower.gens()[l].name;
            if e == 1 {
                name.clone()
            } else {
                format!("{}^{}", name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Renders `c * body` as (negated?, text), with `body` already formatted
/// (`None` for the unit).
fn signed_term(c: &Scalar, body: Option<String>) -> (bool, String) {
    let single = c.laurent_terms().map(|t| t.len() == 1).unwrap_or(false);
    if single {
        let neg = c.is_negative_lead();
        let a = if neg { c.neg() } else { c.clone() };
        let text = match body {
            None => a.to_string(),
            Some(b) if a.is_one() => b,
            Some(b) => format!("{}*{}", a, b),
        };
        (neg, text)
    } else {
        let text = match body {
            None => format!("({})", c),
            Some(b) => format!("({})*{}", c, b),
        };
        (false, text)
    }
}

fn join(terms: impl Iterator<Item = (bool, String)>) -> String {
    let mut s = String::new();
    for (idx, (neg, t)) in terms.enumerate() {
        match (idx, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&t);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// Canonical text: monomials in descending tower order.
pub fn format_poly(p: &NCPoly, tower: &OreTower) -> String {
    join(p.terms().rev().map(|(m, c)| {
        let body = (!m.is_unit()).then(|| format_monomial(m, tower));
        signed_term(c, body)
    }))
}

fn leg_order(a: &[Monomial], b: &[Monomial]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Canonical text of a tensor; leg `i` is printed with `towers[i]` (last reused).
pub fn format_tensor(t: &TensorElement, towers: &[&OreTower]) -> String {
    if t.arity() == 1 {
        return format_poly(&t.to_poly().expect("arity 1"), towers[0]);
    }
    let mut terms: Vec<_> = t.terms().collect();
    terms.sort_by(|(a, _), (b, _)| leg_order(b, a));
    join(terms.into_iter().map(|(ms, c)| {
        let legs: Vec<String> = ms
            .iter()
            .enumerate()
            .map(|(i, m)| format_monomial(m, towers[i.min(towers.len() - 1)]))
            .collect();
        let (neg, text) = signed_term(c, Some(legs.join(" (x) ")));
        (neg, text)
    }))
}

/// Canonical form of either kind of value.
pub fn format_canonical(t: &TensorElement, towers: &[&OreTower]) -> String {
    format_tensor(t, towers)
}

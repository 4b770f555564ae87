//! Quantum homogeneous spaces: subalgebra membership, coideal checks, quotient
//! maps, Hopf-*-ideals, coinvariants and the antipode-power assignment.
//!
//! A quotient map is an [`AlgebraMorphism`] with a single target leg. Ideal
//! membership is kernel membership: `ker pi = I` is a property of the preset,
//! not something re-proved here.

use std::sync::Arc;

use crate::exprio::{format_poly, format_tensor};
use crate::hopf::{HopfError, HopfStructure};
use crate::ncalg::{span_solve, NCPoly, OreTower, TensorElement};
use crate::poisson::AlgebraMorphism;
use crate::report::{CheckRecord, CheckReport};
use crate::scalars::Scalar;

/// Subalgebra of a presented algebra given by named generators (1 implicit).
/// Generators that are invertible monomials contribute their inverses too.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub tower: Arc<OreTower>,
    pub names: Vec<String>,
    pub gens: Vec<NCPoly>,
}

/// `x = sum c * prod gen_i^{e_i}` (ordered product in generator order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: Vec<(Vec<i32>, Scalar)>,
}

impl Subalgebra {
    pub fn new(tower: Arc<OreTower>, gens: Vec<(String, NCPoly)>) -> Self {
        let (names, gens) = gens.into_iter().unzip();
        Subalgebra { tower, names, gens }
    }

    /// The image of an embedding `source -> ambient`, generated by the images of
    /// the source generators.
    pub fn from_embedding(phi: &AlgebraMorphism) -> Option<Self> {
        if phi.arity() != 1 {
            return None;
        }
        let gens = phi
            .source
            .gens()
            .iter()
            .enumerate()
            .map(|(l, g)| Some((g.name.clone(), phi.image(l).to_poly()?)))
            .collect::<Option<Vec<_>>>()?;
        Some(Subalgebra::new(phi.targets[0].clone(), gens))
    }

    fn unit_like(&self, i: usize) -> bool {
        self.gens[i]
            .as_term()
            .map(|(m, _)| m.exps().iter().enumerate().all(|(l, &e)| e == 0 || self.tower.gens()[l].invertible))
            .unwrap_or(false)
    }

    pub fn label(&self, exps: &[i32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| **e != 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{}^{}", n, e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Ordered product `prod gen_i^{e_i}`.
    pub fn product(&self, exps: &[i32]) -> NCPoly {
        let t = &self.tower;
        let mut acc = t.one();
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if e < 0 {
                t.inverse_of_term(&self.gens[i]).expect("unit-like generator")
            } else {
                self.gens[i].clone()
            };
            acc = t.mul(&acc, &t.pow(&base, e.unsigned_abs()));
        }
        acc
    }

    /// Candidate exponent vectors under the bound policy: non-invertible ambient
    /// degree caps the total power `s` of the other generators; the invertible
    /// degree of `x` plus `s` times the generators' invertible spread caps `|r|`.
    ///
    /// Sufficiency for the cylinder (`v`, `m = vb*nb - v*n`): `v^r m^s` has
    /// (n, nb)-degree exactly `s` with top part `(vb*nb - v*n)^s v^r`, whose
    /// v-exponents lie in `[r - s, r + s]`, so any decomposition of `x` uses
    /// `s <= deg(x)` and `|r| <= maxexp_v(x) + s`.
    pub fn candidates(&self, x: &NCPoly) -> Vec<Vec<i32>> {
        let inv_levels: Vec<bool> = self.tower.gens().iter().map(|g| g.invertible).collect();
        let split = |p: &NCPoly| -> (u32, u32) {
            let mut a = 0;
            let mut b = 0;
            for (m, _) in p.terms() {
                let (mut da, mut db) = (0, 0);
                for (l, &e) in m.exps().iter().enumerate() {
                    if inv_levels[l] {
                        db += e.unsigned_abs();
                    } else {
                        da += e.unsigned_abs();
                    }
                }
                a = a.max(da);
                b = b.max(db);
            }
            (a, b)
        };
        let (s_max, r0) = split(x);
        let spread = (0..self.gens.len())
            .filter(|&i| !self.unit_like(i))
            .map(|i| split(&self.gens[i]).1)
            .max()
            .unwrap_or(0);
        let mut out = vec![Vec::new()];
        let n = self.gens.len();
        for i in 0..n {
            let mut next = Vec::new();
            for v in &out {
                let v: &Vec<i32> = v;
                let s_used: u32 = (0..i).filter(|&j| !self.unit_like(j)).map(|j| v[j] as u32).sum();
                if self.unit_like(i) {
                    let r = (r0 + spread * s_max) as i32;
                    for e in -r..=r {
                        let mut w = v.clone();
                        w.push(e);
                        next.push(w);
                    }
                } else {
                    let zero_degree = split(&self.gens[i]).0 == 0;
                    let cap = if zero_degree { 0 } else { s_max - s_used.min(s_max) };
                    for e in 0..=cap as i32 {
                        let mut w = v.clone();
                        w.push(e);
                        next.push(w);
                    }
                }
            }
            out = next;
        }
        // keep |r| within the policy bound relative to the s actually used
        out.retain(|v| {
            let s: u32 = (0..n).filter(|&j| !self.unit_like(j)).map(|j| v[j] as u32).sum();
            let r: u32 = (0..n).filter(|&j| self.unit_like(j)).map(|j| v[j].unsigned_abs()).sum();
            r <= r0 + spread * s
        });
        out
    }
}

/// Exact coefficients of `x` over the bounded candidate products, or `None`.
pub fn subalgebra_membership(x: &NCPoly, b: &Subalgebra) -> Option<Decomposition> {
    let cands = b.candidates(x);
    let basis: Vec<NCPoly> = cands.iter().map(|e| b.product(e)).collect();
    let coeffs = span_solve(x, &basis)?;
    let terms = cands.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect();
    Some(Decomposition { terms })
}

/// Right coideal and star invariance: for each generator, every right leg of its
/// coproduct (grouped by left-leg monomial) and its star image lie in `B`.
pub fn coideal_report(name: &str, b: &Subalgebra, h: &HopfStructure) -> Result<CheckReport, HopfError> {
    let mut rep = CheckReport::new(format!("coideal/{}", name));
    let t = &b.tower;
    for (g, x) in b.names.iter().zip(&b.gens) {
        let d = h.coproduct(x)?;
        for (left, rest) in d.group_by_leg(0) {
            let right = rest.to_poly().expect("one leg remains");
            let id = format!("coideal/{}/{}/{}", name, g, crate::exprio::format_monomial(&left, t));
            let mem = subalgebra_membership(&right, b);
            let mut r = CheckRecord::new(id, "Delta(B) in A (x) B")
                .sides(format_poly(&right, t), mem.as_ref().map(|d| render_decomp(b, d)).unwrap_or_else(|| "not in B".into()))
                .verdict(mem.is_some());
            if mem.is_none() {
                r = r.witness(format_poly(&right, t));
            }
            rep.push(r);
        }
        if h.star.is_some() {
            let s = h.star(x)?;
            let mem = subalgebra_membership(&s, b);
            let mut r = CheckRecord::new(format!("coideal/{}/{}/star", name, g), "B* = B")
                .sides(format_poly(&s, t), mem.as_ref().map(|d| render_decomp(b, d)).unwrap_or_else(|| "not in B".into()))
                .verdict(mem.is_some());
            if mem.is_none() {
                r = r.witness(format_poly(&s, t));
            }
            rep.push(r);
        }
    }
    rep.sort();
    Ok(rep)
}

pub fn render_decomp(b: &Subalgebra, d: &Decomposition) -> String {
    if d.terms.is_empty() {
        return "0".into();
    }
    d.terms
        .iter()
        .map(|(e, c)| if c.is_one() { b.label(e) } else { format!("({})*{}", c, b.label(e)) })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Every derived rewrite rule of the source holds after substitution.
pub fn quotient_check(pi: &AlgebraMorphism) -> CheckReport {
    pi.relations_report()
}

/// `pi(x) = 0`.
pub fn ideal_member(x: &NCPoly, pi: &AlgebraMorphism) -> bool {
    pi.apply(x).is_zero()
}

/// `(pi (x) pi) Delta`, as a tensor over the quotient.
fn pi_pi(pi: &AlgebraMorphism, d: &TensorElement) -> TensorElement {
    d.map_legs(|_, m| pi.apply_monomial(m))
}

/// `(pi (x) id)` or `(id (x) pi)` applied to a two-leg tensor.
fn pi_side(pi: &AlgebraMorphism, d: &TensorElement, leg: usize) -> TensorElement {
    d.map_legs(|i, m| {
        if i == leg {
            pi.apply_monomial(m)
        } else {
            TensorElement::from_poly(&NCPoly::monomial(m.clone()))
        }
    })
}

/// Bilateral coideal, counit, antipode and star conditions on each stated generator.
pub fn hopf_star_ideal_report(
    name: &str,
    ideal_gens: &[NCPoly],
    pi: &AlgebraMorphism,
    h: &HopfStructure,
) -> Result<CheckReport, HopfError> {
    let mut rep = CheckReport::new(format!("hopf-ideal/{}", name));
    let t = &h.tower;
    let q = &pi.targets[0];
    for g in ideal_gens {
        let gname = format_poly(g, t);
        let id = |part: &str| format!("hopf-ideal/{}/{}/{}", name, gname, part);
        let d = pi_pi(pi, &h.coproduct(g)?);
        let mut r = CheckRecord::new(id("coideal"), "Delta(I) in I (x) A + A (x) I")
            .sides(format_tensor(&d, &[q, q]), "0")
            .verdict(d.is_zero());
        if !d.is_zero() {
            r = r.witness(format_tensor(&d, &[q, q]));
        }
        rep.push(r);
        let e = h.counit(g)?;
        rep.push(CheckRecord::new(id("counit"), "eps(I) = 0").sides(e.to_string(), "0").verdict(e.is_zero()));
        let s = pi.apply_poly(&h.antipode(g)?);
        let mut r = CheckRecord::new(id("antipode"), "S(I) in I").sides(format_poly(&s, q), "0").verdict(s.is_zero());
        if !s.is_zero() {
            r = r.witness(format_poly(&h.antipode(g)?, t));
        }
        rep.push(r);
        let s = pi.apply_poly(&h.star(g)?);
        let mut r = CheckRecord::new(id("star"), "I* in I").sides(format_poly(&s, q), "0").verdict(s.is_zero());
        if !s.is_zero() {
            r = r.witness(format_poly(&h.star(g)?, t));
        }
        rep.push(r);
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Left: `(pi (x) id) Delta x = 1 (x) x`. Right: `(id (x) pi) Delta x = x (x) 1`.
pub fn coinvariance_residual(x: &NCPoly, pi: &AlgebraMorphism, h: &HopfStructure, side: Side) -> Result<TensorElement, HopfError> {
    let d = h.coproduct(x)?;
    let q = &pi.targets[0];
    Ok(match side {
        Side::Left => pi_side(pi, &d, 0).sub(&TensorElement::pure(&[q.one(), x.clone()])),
        Side::Right => pi_side(pi, &d, 1).sub(&TensorElement::pure(&[x.clone(), q.one()])),
    })
}

pub fn coinvariance_check(x: &NCPoly, pi: &AlgebraMorphism, h: &HopfStructure, side: Side) -> Result<bool, HopfError> {
    Ok(coinvariance_residual(x, pi, h, side)?.is_zero())
}

pub fn coinvariance_record(
    id: &str,
    x: &NCPoly,
    pi: &AlgebraMorphism,
    h: &HopfStructure,
    side: Side,
) -> Result<CheckRecord, HopfError> {
    let res = coinvariance_residual(x, pi, h, side)?;
    let q: &OreTower = &pi.targets[0];
    let t: &OreTower = &h.tower;
    let towers: [&OreTower; 2] = match side {
        Side::Left => [q, t],
        Side::Right => [t, q],
    };
    let anchor = match side {
        Side::Left => "(pi (x) id)Delta(b) = 1 (x) b",
        Side::Right => "(id (x) pi)Delta(b) = b (x) 1",
    };
    let mut r = CheckRecord::new(id, anchor).sides(format_tensor(&res, &towers), "0").verdict(res.is_zero());
    if !res.is_zero() {
        r = r.witness(format_tensor(&res, &towers));
    }
    Ok(r)
}

/// `(S^n - eps(b) 1)(b)` for each generator and `1 <= n <= max_power`.
pub fn sigma_generators(b: &Subalgebra, h: &HopfStructure, max_power: u32) -> Result<Vec<(String, u32, NCPoly)>, HopfError> {
    let mut out = Vec::new();
    for (name, g) in b.names.iter().zip(&b.gens) {
        let e = h.counit(g)?;
        let one = NCPoly::constant(h.tower.len(), e);
        let mut s = g.clone();
        for n in 1..=max_power.max(1) {
            s = h.antipode(&s)?;
            out.push((name.clone(), n, s.sub(&one)));
        }
    }
    Ok(out)
}

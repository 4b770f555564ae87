//! Coproduct, counit, antipode and star on presented algebras, with axiom and
//! well-definedness checks.

use std::sync::Arc;

use thiserror::Error;

use crate::exprio::{format_poly, format_tensor, parse_poly, parse_tensor, ExprError};
use crate::ncalg::{derived_relations, Letter, Monomial, NCPoly, OreTower, TensorElement};
use crate::poisson::{AlgebraMorphism, PoissonError};
use crate::report::{CheckRecord, CheckReport};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("no {0} table")]
    Absent(&'static str),
    #[error("no {table} entry for `{gen}`")]
    MissingEntry { table: &'static str, gen: String },
    #[error("{table} image of invertible `{gen}` is not invertible")]
    NotInvertible { table: &'static str, gen: String },
    #[error("counit of `{0}` is not a scalar")]
    NonScalarCounit(String),
    #[error("in `{0}`: {1}")]
    Expr(String, ExprError),
    #[error(transparent)]
    Morphism(#[from] PoissonError),
}

/// Structure maps given on generators. Any part may be absent (a bare star
/// algebra carries only `star`).
#[derive(Clone, Debug)]
pub struct HopfStructure {
    pub name: String,
    pub tower: Arc<OreTower>,
    pub delta: Option<AlgebraMorphism>,
    pub counit: Option<Vec<Scalar>>,
    pub antipode: Option<Vec<NCPoly>>,
    pub star: Option<Vec<NCPoly>>,
}

/// Textual tables, `(generator, expression)` pairs.
#[derive(Clone, Debug, Default)]
pub struct HopfTables<'a> {
    pub delta: Option<&'a [(&'a str, &'a str)]>,
    pub counit: Option<&'a [(&'a str, &'a str)]>,
    pub antipode: Option<&'a [(&'a str, &'a str)]>,
    pub star: Option<&'a [(&'a str, &'a str)]>,
}

fn lookup<'a>(table: &'a [(&'a str, &'a str)], gen: &str, name: &'static str) -> Result<&'a str, HopfError> {
    table
        .iter()
        .find(|(g, _)| *g == gen)
        .map(|(_, e)| *e)
        .ok_or_else(|| HopfError::MissingEntry { table: name, gen: gen.to_string() })
}

impl HopfStructure {
    pub fn parse(name: impl Into<String>, tower: Arc<OreTower>, tables: &HopfTables<'_>) -> Result<Self, HopfError> {
        let name = name.into();
        let delta = match tables.delta {
            None => None,
            Some(t) => Some(AlgebraMorphism::parse(format!("{}-delta", name), tower.clone(), vec![tower.clone(), tower.clone()], t)?),
        };
        let polys = |t: Option<&[(&str, &str)]>, label: &'static str| -> Result<Option<Vec<NCPoly>>, HopfError> {
            let Some(t) = t else { return Ok(None) };
            let mut out = Vec::new();
            for g in tower.gens() {
                let text = lookup(t, &g.name, label)?;
                let p = parse_poly(text, &tower).map_err(|e| HopfError::Expr(g.name.clone(), e))?;
                if g.invertible && tower.inverse_of_term(&p).is_none() {
                    return Err(HopfError::NotInvertible { table: label, gen: g.name.clone() });
                }
                out.push(p);
            }
            Ok(Some(out))
        };
        let counit = match polys(tables.counit, "counit")? {
            None => None,
            Some(ps) => Some(
                ps.iter()
                    .zip(tower.gens())
                    .map(|(p, g)| {
                        let c = p.as_scalar().ok_or_else(|| HopfError::NonScalarCounit(g.name.clone()))?;
                        if g.invertible && c.is_zero() {
                            return Err(HopfError::NotInvertible { table: "counit", gen: g.name.clone() });
                        }
                        Ok(c)
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let antipode = polys(tables.antipode, "antipode")?;
        let star = polys(tables.star, "star")?;
        Ok(HopfStructure { name, tower, delta, counit, antipode, star })
    }

    fn towers2(&self) -> [&OreTower; 2] {
        [&self.tower, &self.tower]
    }

    pub fn fmt(&self, p: &NCPoly) -> String {
        format_poly(p, &self.tower)
    }

    pub fn fmt_tensor(&self, t: &TensorElement) -> String {
        format_tensor(t, &[&self.tower])
    }

    pub fn coproduct(&self, x: &NCPoly) -> Result<TensorElement, HopfError> {
        Ok(self.delta.as_ref().ok_or(HopfError::Absent("coproduct"))?.apply(x))
    }

    fn counit_mono(&self, m: &Monomial, table: &[Scalar]) -> Scalar {
        let mut acc = Scalar::one();
        for (l, &e) in m.exps().iter().enumerate() {
            if e != 0 {
                acc = acc.mul(&table[l].pow(e as i64).expect("counit of invertible generator is nonzero"));
            }
        }
        acc
    }

    pub fn counit(&self, x: &NCPoly) -> Result<Scalar, HopfError> {
        let table = self.counit.as_ref().ok_or(HopfError::Absent("counit"))?;
        let mut acc = Scalar::zero();
        for (m, c) in x.terms() {
            acc = acc.add(&c.mul(&self.counit_mono(m, table)));
        }
        Ok(acc)
    }

    /// Image of a single letter under an antimultiplicative table.
    fn letter_image(&self, table: &[NCPoly], l: Letter) -> NCPoly {
        let img = &table[l.level];
        if l.inverse {
            self.tower.inverse_of_term(img).expect("validated invertible image")
        } else {
            img.clone()
        }
    }

    /// Extends `table` antimultiplicatively over a word, optionally conjugating coefficients.
    fn anti_word(&self, table: &[NCPoly], w: &[Letter]) -> NCPoly {
        let mut acc = self.tower.one();
        for &l in w.iter().rev() {
            acc = self.tower.mul(&acc, &self.letter_image(table, l));
        }
        acc
    }

    fn anti_apply(&self, table: &[NCPoly], x: &NCPoly, conjugate: bool) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in x.terms() {
            let img = self.anti_word(table, &crate::ncalg::mono_word(m));
            let c = if conjugate { c.conjugate(self.tower.rules()) } else { c.clone() };
            out.add_scaled(&img, &c);
        }
        out
    }

    pub fn antipode(&self, x: &NCPoly) -> Result<NCPoly, HopfError> {
        let t = self.antipode.as_ref().ok_or(HopfError::Absent("antipode"))?;
        Ok(self.anti_apply(t, x, false))
    }

    pub fn star(&self, x: &NCPoly) -> Result<NCPoly, HopfError> {
        let t = self.star.as_ref().ok_or(HopfError::Absent("star"))?;
        Ok(self.anti_apply(t, x, true))
    }

    /// Applies `f` to the given leg of a two-leg tensor.
    fn on_leg(&self, t: &TensorElement, leg: usize, f: impl Fn(&NCPoly) -> NCPoly) -> TensorElement {
        t.map_legs(|i, m| {
            let p = NCPoly::monomial(m.clone());
            TensorElement::from_poly(&if i == leg { f(&p) } else { p })
        })
    }

    fn check(&self, rep: &mut CheckReport, id: String, anchor: String, lhs: String, rhs: String, diff: Option<String>) {
        let mut r = CheckRecord::new(id, anchor).sides(lhs, rhs).verdict(diff.is_none());
        if let Some(d) = diff {
            r = r.witness(d);
        }
        rep.push(r);
    }

    /// The elements on which the axioms are checked: generators and inverses of invertible ones.
    fn axiom_points(&self) -> Vec<(String, NCPoly)> {
        let mut out = Vec::new();
        for g in self.tower.gens() {
            out.push((g.name.clone(), self.tower.gen_poly(g.level)));
            if g.invertible {
                out.push((format!("{}^-1", g.name), NCPoly::generator(self.tower.len(), g.level, -1)));
            }
        }
        out
    }
}

fn diff_t(a: &TensorElement, b: &TensorElement, f: impl Fn(&TensorElement) -> String) -> Option<String> {
    (a != b).then(|| f(&a.sub(b)))
}

pub fn coproduct_apply(x: &NCPoly, h: &HopfStructure) -> Result<TensorElement, HopfError> {
    h.coproduct(x)
}

pub fn antipode_apply(x: &NCPoly, h: &HopfStructure) -> Result<NCPoly, HopfError> {
    h.antipode(x)
}

pub fn counit_apply(x: &NCPoly, h: &HopfStructure) -> Result<Scalar, HopfError> {
    h.counit(x)
}

pub fn star_apply(x: &NCPoly, h: &HopfStructure) -> Result<NCPoly, HopfError> {
    h.star(x)
}

/// Coassociativity, counit, antipode, star-coproduct compatibility and star
/// involution on every generator (and inverse).
pub fn hopf_axioms_report(h: &HopfStructure) -> Result<CheckReport, HopfError> {
    let mut rep = CheckReport::new(format!("hopf-axioms/{}", h.name));
    let delta = h.delta.as_ref().ok_or(HopfError::Absent("coproduct"))?;
    let towers = h.towers2();
    let t3 = [&*h.tower, &*h.tower, &*h.tower];
    let f3 = |t: &TensorElement| format_tensor(t, &t3);
    let f2 = |t: &TensorElement| format_tensor(t, &towers);
    let id = |x: &str, what: &str| format!("hopf-axioms/{}/{}/{}", h.name, what, x);
    for (name, g) in h.axiom_points() {
        let d = delta.apply(&g);
        // coassociativity
        let left = d.map_legs(|i, m| {
            let p = NCPoly::monomial(m.clone());
            if i == 0 { delta.apply(&p) } else { TensorElement::from_poly(&p) }
        });
        let right = d.map_legs(|i, m| {
            let p = NCPoly::monomial(m.clone());
            if i == 1 { delta.apply(&p) } else { TensorElement::from_poly(&p) }
        });
        h.check(&mut rep, id(&name, "coassociativity"), "(D(x)id)D = (id(x)D)D".into(), f3(&left), f3(&right), diff_t(&left, &right, f3));
        // counit
        let gt = TensorElement::from_poly(&g);
        for (leg, label) in [(0usize, "counit-left"), (1, "counit-right")] {
            let mut out = NCPoly::zero();
            for (ms, c) in d.terms() {
                let e = h.counit(&NCPoly::monomial(ms[leg].clone()))?;
                out.add_scaled(&NCPoly::monomial(ms[1 - leg].clone()), &c.mul(&e));
            }
            let ot = TensorElement::from_poly(&out);
            h.check(&mut rep, id(&name, label), "(e(x)id)D = id = (id(x)e)D".into(), h.fmt(&out), h.fmt(&g), diff_t(&ot, &gt, f2));
        }
        // antipode
        let unit = h.tower.scalar(h.counit(&g)?);
        for (leg, label) in [(0usize, "antipode-left"), (1, "antipode-right")] {
            let mapped = h.on_leg(&d, leg, |p| h.antipode(p).expect("antipode present"));
            let prod = mapped.multiply_out(&h.tower);
            let diff = (prod != unit).then(|| h.fmt(&prod.sub(&unit)));
            h.check(&mut rep, id(&name, label), "m(S(x)id)D = e = m(id(x)S)D".into(), h.fmt(&prod), h.fmt(&unit), diff);
        }
        if h.star.is_some() {
            let lhs = delta.apply(&h.star(&g)?);
            // (*(x)*) conjugates each coefficient once
            let mut rhs = TensorElement::zero(2);
            for (ms, c) in d.terms() {
                let legs: Vec<NCPoly> = ms.iter().map(|m| h.star(&NCPoly::monomial(m.clone())).expect("star")).collect();
                rhs.add_scaled(&TensorElement::pure(&legs), &c.conjugate(h.tower.rules()));
            }
            h.check(&mut rep, id(&name, "star-coproduct"), "D(x*) = (*(x)*)D(x)".into(), f2(&lhs), f2(&rhs), diff_t(&lhs, &rhs, f2));
            let twice = h.star(&h.star(&g)?)?;
            let diff = (twice != g).then(|| h.fmt(&twice.sub(&g)));
            h.check(&mut rep, id(&name, "star-involution"), "(x*)* = x".into(), h.fmt(&twice), h.fmt(&g), diff);
        }
    }
    Ok(rep)
}

/// Every derived rewrite rule `lhs = rhs` is respected by each structure map
/// present (antimultiplicative maps reverse the word).
pub fn respects_relations_report(h: &HopfStructure) -> Result<CheckReport, HopfError> {
    let mut rep = CheckReport::new(format!("relations/{}", h.name));
    let rels = derived_relations(&h.tower).map_err(|e| HopfError::Expr(h.name.clone(), ExprError::UnknownSymbol(e.to_string())))?;
    let towers = h.towers2();
    let f2 = |t: &TensorElement| format_tensor(t, &towers);
    for rel in &rels {
        let word = crate::ncalg::word_name(&h.tower, &rel.lhs);
        let anchor = format!("{} = {}", word, h.fmt(&rel.rhs));
        let id = |what: &str| format!("relations/{}/{}/{}", h.name, what, word);
        if let Some(delta) = &h.delta {
            let mut lhs = TensorElement::one(&towers);
            for l in &rel.lhs {
                let p = NCPoly::generator(h.tower.len(), l.level, if l.inverse { -1 } else { 1 });
                lhs = lhs.mul(&delta.apply(&p), &towers);
            }
            let rhs = delta.apply(&rel.rhs);
            h.check(&mut rep, id("coproduct"), anchor.clone(), f2(&lhs), f2(&rhs), diff_t(&lhs, &rhs, f2));
        }
        if let Some(table) = &h.counit {
            let mut lhs = Scalar::one();
            for l in &rel.lhs {
                let m = Monomial::generator(h.tower.len(), l.level, if l.inverse { -1 } else { 1 });
                lhs = lhs.mul(&h.counit_mono(&m, table));
            }
            let rhs = h.counit(&rel.rhs)?;
            let diff = (lhs != rhs).then(|| lhs.sub(&rhs).to_string());
            h.check(&mut rep, id("counit"), anchor.clone(), lhs.to_string(), rhs.to_string(), diff);
        }
        for (label, table, conj) in [("antipode", &h.antipode, false), ("star", &h.star, true)] {
            let Some(table) = table else { continue };
            let lhs = h.anti_word(table, &rel.lhs);
            let rhs = h.anti_apply(table, &rel.rhs, conj);
            let diff = (lhs != rhs).then(|| h.fmt(&lhs.sub(&rhs)));
            h.check(&mut rep, id(label), anchor.clone(), h.fmt(&lhs), h.fmt(&rhs), diff);
        }
    }
    Ok(rep)
}

/// Parses a tensor in the Hopf algebra's square, for tests and the CLI.
pub fn parse_square(text: &str, h: &HopfStructure) -> Result<TensorElement, HopfError> {
    parse_tensor(text, &h.towers2()).map_err(|e| HopfError::Expr(text.to_string(), e))
}

use std::sync::Arc;

use crate::exprio::{format_tensor, parse_tensor};
use crate::ncalg::{derived_relations, Monomial, NCPoly, OreTower, TensorElement};
use crate::report::{CheckRecord, CheckReport};


use super::PoissonError;

/// Unital algebra map given on generators, extended multiplicatively. The target
/// is a tensor product of one or more towers.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub name: String,
    pub source: Arc<OreTower>,
    pub targets: Vec<Arc<OreTower>>,
    images: Vec<TensorElement>,
    inverses: Vec<Option<TensorElement>>,
}

impl AlgebraMorphism {
    /// Builds from generator images. Invertible generators must go to invertible
    /// monomial tensors.
    pub fn new(
        name: impl Into<String>,
        source: Arc<OreTower>,
        targets: Vec<Arc<OreTower>>,
        images: Vec<TensorElement>,
    ) -> Result<Self, PoissonError> {
        let name = name.into();
        if images.len() != source.len() {
            return Err(PoissonError::ImageCount { expected: source.len(), found: images.len() });
        }
        let mut inverses = Vec::new();
        for (g, img) in source.gens().iter().zip(&images) {
            if !img.is_zero() && img.arity() != targets.len() {
                return Err(PoissonError::ImageArity(g.name.clone()));
            }
            if g.invertible {
                let inv = invert_monomial_tensor(img, &targets).ok_or_else(|| PoissonError::NotInvertible(g.name.clone()))?;
                inverses.push(Some(inv));
            } else {
                inverses.push(None);
            }
        }
        Ok(AlgebraMorphism { name, source, targets, images, inverses })
    }

    /// Parses images given as `(generator, expression)` pairs; missing generators are an error.
    pub fn parse(
        name: impl Into<String>,
        source: Arc<OreTower>,
        targets: Vec<Arc<OreTower>>,
        images: &[(&str, &str)],
    ) -> Result<Self, PoissonError> {
        let refs: Vec<&OreTower> = targets.iter().map(|t| t.as_ref()).collect();
        let mut imgs = Vec::new();
        for g in source.gens() {
            let text = images
                .iter()
                .find(|(n, _)| *n == g.name)
                .map(|(_, e)| *e)
                .ok_or_else(|| PoissonError::MissingImage(g.name.clone()))?;
            let t = parse_tensor(text, &refs).map_err(|e| PoissonError::Expr(g.name.clone(), e))?;
            imgs.push(t);
        }
        AlgebraMorphism::new(name, source, targets, imgs)
    }

    pub fn arity(&self) -> usize {
        self.targets.len()
    }

    pub fn target_refs(&self) -> Vec<&OreTower> {
        self.targets.iter().map(|t| t.as_ref()).collect()
    }

    pub fn image(&self, level: usize) -> &TensorElement {
        &self.images[level]
    }

    fn one(&self) -> TensorElement {
        TensorElement::one(&self.target_refs())
    }

    pub fn apply_monomial(&self, m: &Monomial) -> TensorElement {
        let towers = self.target_refs();
        let mut acc = self.one();
        for (l, &e) in m.exps().iter().enumerate() {
            let base = if e < 0 {
                self.inverses[l].as_ref().expect("negative exponent on invertible generator")
            } else {
                &self.images[l]
            };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(base, &towers);
            }
        }
        acc
    }

    pub fn apply(&self, x: &NCPoly) -> TensorElement {
        let mut out = TensorElement::zero(self.arity());
        for (m, c) in x.terms() {
            out.add_scaled(&self.apply_monomial(m), c);
        }
        out
    }

    /// Applies to a single-leg target, returning a plain element.
    pub fn apply_poly(&self, x: &NCPoly) -> NCPoly {
        let t = self.apply(x);
        t.to_poly().unwrap_or_default()
    }

    pub fn format(&self, t: &TensorElement) -> String {
        format_tensor(t, &self.target_refs())
    }

    /// Checks every derived rewrite rule of the source holds on the images.
    pub fn relations_report(&self) -> CheckReport {
        let mut rep = CheckReport::new(format!("quotient/{}", self.name));
        let rels = match derived_relations(&self.source) {
            Ok(r) => r,
            Err(e) => {
                rep.push(CheckRecord::new(format!("quotient/{}/relations", self.name), "").verdict(false).witness(e.to_string()));
                return rep;
            }
        };
        let towers = self.target_refs();
        for rel in rels {
            let mut lhs = self.one();
            for l in &rel.lhs {
                let img = if l.inverse { self.inverses[l.level].as_ref().unwrap() } else { &self.images[l.level] };
                lhs = lhs.mul(img, &towers);
            }
            let rhs = self.apply(&rel.rhs);
            let word = crate::ncalg::word_name(&self.source, &rel.lhs);
            let anchor = format!("{} = {}", word, crate::exprio::format_poly(&rel.rhs, &self.source));
            let ok = lhs == rhs;
            let mut r = CheckRecord::new(format!("quotient/{}/{}", self.name, word), anchor)
                .sides(self.format(&lhs), self.format(&rhs))
                .verdict(ok);
            if !ok {
                r = r.witness(self.format(&lhs.sub(&rhs)));
            }
            rep.push(r);
        }
        rep
    }
}

fn invert_monomial_tensor(t: &TensorElement, targets: &[Arc<OreTower>]) -> Option<TensorElement> {
    let mut it = t.terms();
    let (ms, c) = it.next()?;
    if it.next().is_some() {
        return None;
    }
    let mut legs = Vec::new();
    for (m, tower) in ms.iter().zip(targets) {
        for (l, &e) in m.exps().iter().enumerate() {
            if e != 0 && !tower.gens()[l].invertible {
                return None;
            }
        }
        // only level-0 exponents can be negative, and they commute with themselves
        legs.push(NCPoly::monomial(Monomial::from_exps(m.exps().iter().map(|e| -e).collect())));
    }
    let inv = c.inv().ok()?;
    Some(TensorElement::pure(&legs).scale(&inv))
}

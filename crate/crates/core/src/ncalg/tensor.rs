use std::collections::BTreeMap;

use crate::scalars::Scalar;

use super::poly::{Monomial, NCPoly};
use super::tower::OreTower;

/// Element of a tensor product of presented algebras. Legs may live in different
/// towers; the towers are supplied to the operations that need them.
#[derive(Clone, Debug, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, Scalar>,
}

impl PartialEq for TensorElement {
    /// Zero elements compare equal regardless of arity.
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && (self.arity == o.arity || self.terms.is_empty())
    }
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement { arity, terms: BTreeMap::new() }
    }

    pub fn one(towers: &[&OreTower]) -> Self {
        TensorElement::pure(&towers.iter().map(|t| t.one()).collect::<Vec<_>>())
    }

    /// `p_1 (x) p_2 (x) ...`
    pub fn pure(legs: &[NCPoly]) -> Self {
        let mut acc: Vec<(Vec<Monomial>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for leg in legs {
            let mut next = Vec::new();
            for (ms, c) in &acc {
                for (m, d) in leg.terms() {
                    let mut ms = ms.clone();
                    ms.push(m.clone());
                    next.push((ms, c.mul(d)));
                }
            }
            acc = next;
        }
        let mut out = TensorElement::zero(legs.len());
        for (ms, c) in acc {
            out.add_term(ms, c);
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<Monomial>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, legs: Vec<Monomial>, c: Scalar) {
        debug_assert_eq!(legs.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(legs.clone()).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&legs);
        }
    }

    pub fn add_scaled(&mut self, o: &TensorElement, c: &Scalar) {
        for (ms, d) in &o.terms {
            self.add_term(ms.clone(), d.mul(c));
        }
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::one());
        r
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::from_int(-1));
        r
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut r = TensorElement::zero(self.arity);
        r.add_scaled(self, c);
        r
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> TensorElement {
        let mut r = TensorElement::zero(self.arity);
        for (ms, c) in &self.terms {
            r.add_term(ms.clone(), f(c));
        }
        r
    }

    /// Legwise product.
    pub fn mul(&self, o: &TensorElement, towers: &[&OreTower]) -> TensorElement {
        assert_eq!(self.arity, o.arity);
        let mut out = TensorElement::zero(self.arity);
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let legs: Vec<NCPoly> = a
                    .iter()
                    .zip(b)
                    .zip(towers)
                    .map(|((x, y), t)| t.mul_mono(x, y))
                    .collect();
                out.add_scaled(&TensorElement::pure(&legs), &c.mul(d));
            }
        }
        out
    }

    /// Applies `f` to every leg monomial (an arbitrary linear map per leg,
    /// possibly changing arity by returning another tensor).
    pub fn map_legs(&self, f: impl Fn(usize, &Monomial) -> TensorElement) -> TensorElement {
        let mut out: Option<TensorElement> = None;
        for (ms, c) in &self.terms {
            let mut acc: Option<TensorElement> = None;
            for (i, m) in ms.iter().enumerate() {
                let img = f(i, m);
                acc = Some(match acc {
                    None => img,
                    Some(a) => a.concat(&img),
                });
            }
            let acc = acc.expect("nonzero arity").scale(c);
            match &mut out {
                None => out = Some(acc),
                Some(o) => o.add_scaled(&acc, &Scalar::one()),
            }
        }
        out.unwrap_or_else(|| TensorElement::zero(self.arity))
    }

    /// `self (x) o`, concatenating legs.
    pub fn concat(&self, o: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.arity + o.arity);
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let mut legs = a.clone();
                legs.extend(b.iter().cloned());
                out.add_term(legs, c.mul(d));
            }
        }
        out
    }

    /// Pure tensor with a single leg, for uniform handling of plain elements.
    pub fn from_poly(p: &NCPoly) -> TensorElement {
        TensorElement::pure(std::slice::from_ref(p))
    }

    /// Inverse of `from_poly` for arity 1.
    pub fn to_poly(&self) -> Option<NCPoly> {
        if self.arity != 1 {
            return None;
        }
        let mut out = NCPoly::zero();
        for (ms, c) in &self.terms {
            out.add_term(ms[0].clone(), c.clone());
        }
        Some(out)
    }

    /// Groups terms by the monomial in leg `i`; returns the remaining legs per group.
    pub fn group_by_leg(&self, i: usize) -> BTreeMap<Monomial, TensorElement> {
        let mut out: BTreeMap<Monomial, TensorElement> = BTreeMap::new();
        for (ms, c) in &self.terms {
            let mut rest = ms.clone();
            let key = rest.remove(i);
            out.entry(key)
                .or_insert_with(|| TensorElement::zero(self.arity - 1))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Multiplies all legs together in one tower (the multiplication map).
    pub fn multiply_out(&self, tower: &OreTower) -> NCPoly {
        let mut out = NCPoly::zero();
        for (ms, c) in &self.terms {
            let mut acc = tower.one();
            for m in ms {
                acc = tower.mul(&acc, &NCPoly::monomial(m.clone()));
            }
            out.add_scaled(&acc, c);
        }
        out
    }
}

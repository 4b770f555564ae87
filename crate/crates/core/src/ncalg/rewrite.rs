//! Word-level rewriting: the second, independent route to normal forms.
//!
//! Elements are linear combinations of raw words in the letters `g` and `g^-1`.
//! One rewrite step either cancels an adjacent `x x^-1` pair or swaps an
//! out-of-order pair `g x -> sigma(x) g + delta(x)`, with the inverse-letter rules
//! derived from the sandwich identities. No product of normal forms is used.

use std::collections::BTreeMap;

use crate::scalars::Scalar;

use super::poly::{Monomial, NCPoly};
use super::tower::OreTower;
use super::NcError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub level: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(level: usize, inverse: bool) -> Self {
        Letter { level, inverse }
    }
}

pub type Word = Vec<Letter>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Linear combination of raw words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl WordPoly {
    pub fn zero() -> Self {
        WordPoly::default()
    }

    pub fn word(w: Word) -> Self {
        let mut p = WordPoly::zero();
        p.add_term(w, Scalar::one());
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    /// Spells out a normal-form element as words in ascending level order.
    pub fn from_poly(p: &NCPoly) -> WordPoly {
        let mut out = WordPoly::zero();
        for (m, c) in p.terms() {
            out.add_term(mono_word(m), c.clone());
        }
        out
    }
}

pub fn mono_word(m: &Monomial) -> Word {
    let mut w = Vec::new();
    for (l, &e) in m.exps().iter().enumerate() {
        for _ in 0..e.unsigned_abs() {
            w.push(Letter::new(l, e < 0));
        }
    }
    w
}

fn reducible(a: Letter, b: Letter) -> bool {
    a.level > b.level || (a.level == b.level && a.inverse != b.inverse)
}

/// Position of the first (or last) reducible adjacent pair.
fn redex(w: &[Letter], strategy: Strategy) -> Option<usize> {
    let mut it = (0..w.len().saturating_sub(1)).filter(|&i| reducible(w[i], w[i + 1]));
    match strategy {
        Strategy::Leftmost => it.next(),
        Strategy::Rightmost => it.next_back(),
    }
}

/// Rewriting system derived from a tower.
pub struct Rewriter<'a> {
    tower: &'a OreTower,
    /// (level, lower letter) -> (sigma image, delta image) as word polynomials
    rules: BTreeMap<(usize, Letter), (WordPoly, WordPoly)>,
    pub step_limit: usize,
}

impl<'a> Rewriter<'a> {
    pub fn new(tower: &'a OreTower) -> Self {
        let mut rules = BTreeMap::new();
        let n = tower.len();
        for l in 1..n {
            let lvl = tower.level(l);
            for j in 0..l {
                let s = &lvl.sigma[j];
                let d = &lvl.delta[j];
                rules.insert((l, Letter::new(j, false)), (WordPoly::from_poly(s), WordPoly::from_poly(d)));
                if tower.gens()[j].invertible {
                    // sigma(x^-1) = sigma(x)^-1 ; delta(x^-1) = -sigma(x)^-1 delta(x) x^-1
                    let (m, c) = s.as_term().expect("validated invertible sigma image");
                    let inv_m = Monomial::from_exps(m.exps().iter().map(|e| -e).collect());
                    let c_inv = c.inv().expect("nonzero sigma coefficient");
                    let mut s_inv = WordPoly::zero();
                    s_inv.add_term(mono_word(&inv_m), c_inv.clone());
                    let mut d_inv = WordPoly::zero();
                    for (dm, dc) in d.terms() {
                        let mut w = mono_word(&inv_m);
                        w.extend(mono_word(dm));
                        w.push(Letter::new(j, true));
                        d_inv.add_term(w, dc.mul(&c_inv).neg());
                    }
                    rules.insert((l, Letter::new(j, true)), (s_inv, d_inv));
                }
            }
        }
        Rewriter { tower, rules, step_limit: 200_000 }
    }

    pub fn tower(&self) -> &OreTower {
        self.tower
    }

    /// Result of one rewrite at position `i` of `w` (which must be a redex).
    pub fn step_at(&self, w: &[Letter], i: usize) -> WordPoly {
        let (a, b) = (w[i], w[i + 1]);
        let prefix = &w[..i];
        let suffix = &w[i + 2..];
        let mut out = WordPoly::zero();
        if a.level == b.level {
            let mut nw = prefix.to_vec();
            nw.extend_from_slice(suffix);
            out.add_term(nw, Scalar::one());
            return out;
        }
        let (s, d) = &self.rules[&(a.level, b)];
        for (sw, c) in s.terms() {
            let mut nw = prefix.to_vec();
            nw.extend_from_slice(sw);
            nw.push(a);
            nw.extend_from_slice(suffix);
            out.add_term(nw, c.clone());
        }
        for (dw, c) in d.terms() {
            let mut nw = prefix.to_vec();
            nw.extend_from_slice(dw);
            nw.extend_from_slice(suffix);
            out.add_term(nw, c.clone());
        }
        out
    }

    /// Rewrites until no redex remains, returning the normal-form element.
    pub fn normalize(&self, p: &WordPoly, strategy: Strategy) -> Result<NCPoly, NcError> {
        let n = self.tower.len();
        let mut pending: Vec<(Word, Scalar)> = p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut done: BTreeMap<Word, Scalar> = BTreeMap::new();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop() {
            match redex(&w, strategy) {
                None => {
                    let e = done.entry(w).or_default();
                    *e = e.add(&c);
                }
                Some(i) => {
                    steps += 1;
                    if steps > self.step_limit {
                        return Err(NcError::RewriteLimit(self.step_limit));
                    }
                    for (nw, nc) in self.step_at(&w, i).terms() {
                        pending.push((nw.clone(), nc.mul(&c)));
                    }
                }
            }
        }
        let mut out = NCPoly::zero();
        for (w, c) in done {
            let mut exps = vec![0i32; n];
            for l in w {
                exps[l.level] += if l.inverse { -1 } else { 1 };
            }
            out.add_term(Monomial::from_exps(exps), c);
        }
        Ok(out)
    }

    pub fn normalize_word(&self, w: &[Letter], strategy: Strategy) -> Result<NCPoly, NcError> {
        self.normalize(&WordPoly::word(w.to_vec()), strategy)
    }
}

/// One derived commutation rule: the out-of-order word `lhs` equals `rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: NCPoly,
}

/// Every derived rule of the tower: swaps `g x^(+-1)` for each pair of levels, plus
/// the cancellations `x x^-1 = 1 = x^-1 x` of invertible generators.
pub fn derived_relations(tower: &OreTower) -> Result<Vec<Relation>, NcError> {
    let rw = Rewriter::new(tower);
    let n = tower.len();
    let mut out = Vec::new();
    for (j, g) in tower.gens().iter().enumerate() {
        if g.invertible {
            for inv in [false, true] {
                let lhs = vec![Letter::new(j, inv), Letter::new(j, !inv)];
                out.push(Relation { lhs, rhs: NCPoly::one(n) });
            }
        }
    }
    for l in 1..n {
        for j in 0..l {
            let variants: &[bool] = if tower.gens()[j].invertible { &[false, true] } else { &[false] };
            for &inv in variants {
                let lhs = vec![Letter::new(l, false), Letter::new(j, inv)];
                let rhs = rw.normalize_word(&lhs, Strategy::Leftmost)?;
                out.push(Relation { lhs, rhs });
            }
        }
    }
    Ok(out)
}

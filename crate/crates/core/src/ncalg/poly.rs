use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::scalars::Scalar;

/// Exponent sequence indexed by level, in the fixed ascending-level normal order.
/// Exponents may be negative only on invertible generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<i32>);

impl Monomial {
    pub fn unit(levels: usize) -> Self {
        Monomial(vec![0; levels])
    }

    pub fn from_exps(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn generator(levels: usize, level: usize, exp: i32) -> Self {
        let mut m = Monomial::unit(levels);
        m.0[level] = exp;
        m
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, level: usize) -> i32 {
        self.0.get(level).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Highest level with a nonzero exponent.
    pub fn top(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e != 0)
    }

    /// Sum of absolute exponents.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }

    pub fn with_exp(&self, level: usize, e: i32) -> Monomial {
        let mut m = self.clone();
        m.0[level] = e;
        m
    }

    /// Pads or truncates to `levels` entries. Truncation requires the dropped exponents to be zero.
    pub fn resized(&self, levels: usize) -> Monomial {
        let mut v = self.0.clone();
        v.resize(levels, 0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    /// Degree first, then higher levels compared first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Normal-form element: finite map from monomials to nonzero scalars.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one(levels: usize) -> Self {
        NCPoly::constant(levels, Scalar::one())
    }

    pub fn constant(levels: usize, c: Scalar) -> Self {
        NCPoly::term(Monomial::unit(levels), c)
    }

    pub fn monomial(m: Monomial) -> Self {
        NCPoly::term(m, Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn generator(levels: usize, level: usize, exp: i32) -> Self {
        NCPoly::monomial(Monomial::generator(levels, level, exp))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The scalar value when the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term, when there is exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NCPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), if c.is_one() { d.clone() } else { d.mul(c) });
        }
    }

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::one());
        r
    }

    pub fn sub(&self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::from_int(-1));
        r
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        let mut r = NCPoly::zero();
        r.add_scaled(self, c);
        r
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> NCPoly {
        let mut r = NCPoly::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    /// Highest level with a nonzero exponent anywhere in the support.
    pub fn top_level(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.top()).max()
    }

    pub fn resized(&self, levels: usize) -> NCPoly {
        let mut r = NCPoly::zero();
        for (m, c) in &self.terms {
            r.add_term(m.resized(levels), c.clone());
        }
        r
    }

    /// Largest exponent of `level` over the support.
    pub fn max_exp(&self, level: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(level)).max()
    }
}

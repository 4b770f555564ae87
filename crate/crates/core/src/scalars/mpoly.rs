//! Multivariate polynomials over `Q(i)` in named parameters.
//!
//! Only what the rational-function field needs: ring operations, exact division,
//! and a recursive primitive-PRS gcd.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::gauss::GaussRational;

pub type Var = Arc<str>;

/// Power product of parameters, sorted by name, all exponents positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PMono(pub(crate) Vec<(Var, u32)>);

impl PMono {
    pub fn one() -> Self {
        PMono(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        PMono(vec![(Arc::from(name), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, v: &str) -> u32 {
        self.0
            .iter()
            .find(|(n, _)| &**n == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.iter().map(|(v, _)| v)
    }

    pub fn mul(&self, other: &PMono) -> PMono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        PMono(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &PMono) -> Option<PMono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v.clone(), e - f)),
                }
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(PMono(out))
    }

    /// Greatest common divisor of two power products.
    pub fn gcd(&self, other: &PMono) -> PMono {
        let mut out = Vec::new();
        for (v, e) in &self.0 {
            let f = other.exp(v);
            if f > 0 {
                out.push((v.clone(), (*e).min(f)));
            }
        }
        PMono(out)
    }

    fn without(&self, v: &str) -> (u32, PMono) {
        let e = self.exp(v);
        let rest = self.0.iter().filter(|(n, _)| &**n != v).cloned().collect();
        (e, PMono(rest))
    }
}

impl Ord for PMono {
    /// Graded lexicographic, variables compared by name (earlier name is heavier).
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match self.0[i].1.cmp(&other.0[j].1) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    o => return o,
                },
            }
        }
        (self.0.len() - i).cmp(&(other.0.len() - j))
    }
}

impl PartialOrd for PMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    pub(crate) terms: BTreeMap<PMono, GaussRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: GaussRational) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(PMono::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        MPoly::constant(GaussRational::one())
    }

    pub fn var(name: &str) -> Self {
        MPoly::monomial(PMono::var(name), GaussRational::one())
    }

    pub fn monomial(m: PMono, c: GaussRational) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn as_constant(&self) -> Option<GaussRational> {
        match self.terms.len() {
            0 => Some(GaussRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<(&PMono, &GaussRational)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars().cloned()).collect()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PMono, &GaussRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: PMono, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
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

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &GaussRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &PMono) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides out the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading()?;
        let dinv = dc.inv()?;
        let mut q = MPoly::zero();
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading() {
            let m = rm.div(dm)?;
            let c = rc * &dinv;
            let t = MPoly::monomial(m.clone(), c.clone());
            r = r.sub(&d.mul(&t));
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Gcd of the monomial supports and constants: the largest monomial dividing every term.
    pub fn monomial_content(&self) -> PMono {
        let mut it = self.terms.keys();
        match it.next() {
            None => PMono::one(),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn deg_in(&self, v: &str) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// View as a univariate polynomial in `v` with coefficients free of `v`.
    pub fn coeffs_in(&self, v: &str) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn lc_in(&self, v: &str) -> MPoly {
        let d = self.deg_in(v);
        self.coeffs_in(v).remove(&d).unwrap_or_default()
    }

    pub fn eval(&self, assign: &dyn Fn(&str) -> Option<GaussRational>) -> Result<GaussRational, String> {
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                let x = assign(v).ok_or_else(|| v.to_string())?;
                t = &t * &x.pow(*e);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Applies `c -> conj(c)` and `x -> sign(x) * x` per variable.
    pub fn conjugate(&self, negated: &dyn Fn(&str) -> bool) -> MPoly {
        let mut r = MPoly::zero();
        for (m, c) in &self.terms {
            let flips: u32 = m.0.iter().filter(|(v, _)| negated(v)).map(|(_, e)| *e).sum();
            let c = c.conj();
            r.add_term(m.clone(), if flips % 2 == 1 { -c } else { c });
        }
        r
    }

    /// Substitutes `v := value` for each listed variable.
    pub fn substitute(&self, v: &str, value: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (e, c) in self.coeffs_in(v) {
            r = r.add(&c.mul(&value.pow(e)));
        }
        r
    }
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn prem(a: &MPoly, b: &MPoly, v: &str) -> MPoly {
    let db = b.deg_in(v);
    let lb = b.lc_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.deg_in(v) >= db {
        let dr = r.deg_in(v);
        let lr = r.lc_in(v);
        let shift = MPoly::monomial(
            if dr - db > 0 {
                PMono(vec![(Arc::from(v), dr - db)])
            } else {
                PMono::one()
            },
            GaussRational::one(),
        );
        r = lb.mul(&r).sub(&lr.mul(&shift).mul(b));
    }
    r
}

fn content_in(p: &MPoly, v: &str) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coeffs_in(v).values() {
        g = gcd(&g, c);
        if g.as_constant().is_some() {
            return MPoly::one();
        }
    }
    g
}

/// Monic gcd over `Q(i)[params]`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return MPoly::one();
    }
    if a.is_monomial() || b.is_monomial() {
        let ma = a.monomial_content();
        let mb = b.monomial_content();
        return MPoly::monomial(ma.gcd(&mb), GaussRational::one());
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(x) = va.symmetric_difference(&vb).next().cloned() {
        // x occurs in only one side; the gcd divides that side's content in x.
        return if va.contains(&x) {
            gcd(&content_in(a, &x), b)
        } else {
            gcd(a, &content_in(b, &x))
        };
    }
    let x = va.iter().next().expect("nonconstant").clone();
    let ca = content_in(a, &x);
    let cb = content_in(b, &x);
    let g_content = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.deg_in(&x) < q.deg_in(&x) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = prem(&p, &q, &x);
        p = q;
        q = if r.is_zero() {
            r
        } else {
            let c = content_in(&r, &x);
            r.div_exact(&c).expect("content divides")
        };
    }
    let pp = p.div_exact(&content_in(&p, &x)).expect("content divides");
    pp.mul(&g_content).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> MPoly {
        MPoly::var("w")
    }
    fn k() -> MPoly {
        MPoly::var("k")
    }
    fn c(n: i64) -> MPoly {
        MPoly::constant(GaussRational::from_int(n))
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = w().add(&k()).mul(&w().sub(&c(1)));
        let q = a.div_exact(&w().sub(&c(1))).unwrap();
        assert_eq!(q, w().add(&k()));
        assert!(a.div_exact(&w().add(&c(2))).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let f = w().add(&k());
        let a = f.mul(&w().sub(&c(1)));
        let b = f.mul(&k().add(&c(3)));
        assert_eq!(gcd(&a, &b), f.monic());
        assert_eq!(gcd(&w(), &k()), MPoly::one());
        assert_eq!(gcd(&w().mul(&k()).add(&w()), &w()), w());
    }

    #[test]
    fn gcd_univariate_quadratics() {
        // (w^2 - 1) and (w^2 + 2w + 1) share w + 1
        let a = w().mul(&w()).sub(&c(1));
        let b = w().mul(&w()).add(&w().scale(&GaussRational::from_int(2))).add(&c(1));
        assert_eq!(gcd(&a, &b), w().add(&c(1)));
    }

    #[test]
    fn grlex_order() {
        let a = PMono::var("k").mul(&PMono::var("w"));
        let b = PMono::var("w").mul(&PMono::var("w"));
        assert!(a > PMono::var("w"));
        // equal degree: k appears in a but not b, k < w by name so a is heavier
        assert!(a > b);
    }
}

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::gauss::GaussRational;
use super::mpoly::{gcd, MPoly};
use super::ScalarError;

/// How a parameter behaves under the star involution.
/// `(parameter exponents, coefficient)`.
pub(crate) type LaurentTerm = (Vec<(String, i64)>, GaussRational);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StarRule {
    /// `p* = p` (real parameter).
    Fixed,
    /// `p* = -p` (purely imaginary parameter).
    Negated,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Parameter {
    pub name: String,
    #[serde(rename = "star")]
    pub star_rule: StarRule,
}

/// Star rules for every parameter in scope. Unlisted parameters are treated as fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamRules(BTreeMap<String, StarRule>);

impl ParamRules {
    pub fn new() -> Self {
        ParamRules::default()
    }

    pub fn declare(&mut self, p: &Parameter) -> Result<(), ScalarError> {
        match self.0.get(&p.name) {
            Some(r) if *r != p.star_rule => Err(ScalarError::ConflictingStarRule(p.name.clone())),
            _ => {
                self.0.insert(p.name.clone(), p.star_rule);
                Ok(())
            }
        }
    }

    pub fn from_params<'a>(ps: impl IntoIterator<Item = &'a Parameter>) -> Result<Self, ScalarError> {
        let mut r = ParamRules::new();
        for p in ps {
            r.declare(p)?;
        }
        Ok(r)
    }

    pub fn merge(&mut self, other: &ParamRules) -> Result<(), ScalarError> {
        for (name, rule) in &other.0 {
            self.declare(&Parameter { name: name.clone(), star_rule: *rule })?;
        }
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn rule(&self, name: &str) -> StarRule {
        self.0.get(name).copied().unwrap_or(StarRule::Fixed)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(|s| s.as_str())
    }
}

/// Element of `Q(i)(params)`, kept as a reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: MPoly,
    den: MPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_gauss(GaussRational::one())
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRational::i())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussRational::from_int(n))
    }

    pub fn from_gauss(c: GaussRational) -> Self {
        Scalar { num: MPoly::constant(c), den: MPoly::one() }
    }

    pub fn param(name: &str) -> Self {
        Scalar { num: MPoly::var(name), den: MPoly::one() }
    }

    pub fn from_poly(num: MPoly) -> Self {
        Scalar { num, den: MPoly::one() }
    }

    /// Builds `num/den` in canonical form.
    pub fn from_fraction(num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DegenerateScalar);
        }
        Ok(Scalar::normalize(num, den))
    }

    fn normalize(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            if c.is_one() {
                return Scalar { num, den };
            }
            let inv = c.inv().expect("nonzero denominator");
            return Scalar { num: num.scale(&inv), den: MPoly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The value when no parameter occurs.
    pub fn as_gauss(&self) -> Option<GaussRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::normalize(self.num.add(&o.num), self.den.clone());
        }
        Scalar::normalize(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: MPoly::one() };
        }
        Scalar::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DegenerateScalar);
        }
        Ok(Scalar::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &GaussRational) -> Scalar {
        Scalar::normalize(self.num.scale(c), self.den.clone())
    }

    /// Antilinear involution: `i -> -i`, parameters per their star rule.
    pub fn conjugate(&self, rules: &ParamRules) -> Scalar {
        let neg = |v: &str| rules.rule(v) == StarRule::Negated;
        Scalar::normalize(self.num.conjugate(&neg), self.den.conjugate(&neg))
    }

    /// Evaluates at a point. Every parameter occurring must be assigned.
    pub fn eval(&self, assign: &BTreeMap<String, GaussRational>) -> Result<GaussRational, ScalarError> {
        let lookup = |v: &str| assign.get(v).cloned();
        let n = self.num.eval(&lookup).map_err(ScalarError::UnboundParameter)?;
        let d = self.den.eval(&lookup).map_err(ScalarError::UnboundParameter)?;
        n.checked_div(&d).ok_or(ScalarError::PoleAtPoint)
    }

    /// Substitutes some parameters by scalars; the others stay symbolic.
    pub fn substitute(&self, assign: &BTreeMap<String, Scalar>) -> Result<Scalar, ScalarError> {
        let sub = |p: &MPoly| -> Scalar {
            let mut acc = Scalar::zero();
            for (m, c) in p.terms() {
                let mut t = Scalar::from_gauss(c.clone());
                for (v, e) in &m.0 {
                    let factor = match assign.get(&**v) {
                        Some(val) => val.pow(*e as i64).expect("nonnegative power"),
                        None => Scalar::param(v).pow(*e as i64).expect("nonnegative power"),
                    };
                    t = t.mul(&factor);
                }
                acc = acc.add(&t);
            }
            acc
        };
        sub(&self.num).div(&sub(&self.den)).map_err(|_| ScalarError::PoleAtPoint)
    }

    /// Parameters occurring in the value.
    pub fn params(&self) -> Vec<String> {
        let mut vs: Vec<String> = self
            .num
            .vars()
            .into_iter()
            .chain(self.den.vars())
            .map(|v| v.to_string())
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Terms `(exponents, coefficient)` of the value written as a Laurent polynomial,
    /// available when the denominator is a single power product.
    pub(crate) fn laurent_terms(&self) -> Option<Vec<LaurentTerm>> {
        if !self.den.is_monomial() {
            return None;
        }
        let (dm, _) = self.den.leading()?;
        let mut out = Vec::new();
        for (m, c) in self.num.terms().rev() {
            let mut exps: BTreeMap<String, i64> = BTreeMap::new();
            for (v, e) in &m.0 {
                *exps.entry(v.to_string()).or_default() += *e as i64;
            }
            for (v, e) in &dm.0 {
                *exps.entry(v.to_string()).or_default() -= *e as i64;
            }
            exps.retain(|_, e| *e != 0);
            out.push((exps.into_iter().collect(), c.clone()));
        }
        Some(out)
    }
}

fn fmt_poly_terms(terms: &[(Vec<(String, i64)>, GaussRational)]) -> String {
    let mut s = String::new();
    for (idx, (exps, c)) in terms.iter().enumerate() {
        let (neg, c) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&fmt_term(&c, exps));
    }
    s
}

fn fmt_term(c: &GaussRational, exps: &[(String, i64)]) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !c.is_one() || exps.is_empty() {
        factors.push(c.to_string());
    }
    for (v, e) in exps {
        if *e == 1 {
            factors.push(v.clone());
        } else {
            factors.push(format!("{}^{}", v, e));
        }
    }
    factors.join("*")
}

impl Scalar {
    /// Rendering plus whether it is a single signed factor (needs no parentheses
    /// when used as a coefficient).
    pub(crate) fn render(&self) -> (String, bool) {
        match self.laurent_terms() {
            Some(terms) => {
                let single = terms.len() == 1
                    && (terms[0].1.is_single_part() || terms[0].1.is_negative() && (-&terms[0].1).is_single_part());
                (fmt_poly_terms(&terms), single)
            }
            None => {
                let n = Scalar::from_poly(self.num.clone()).render().0;
                let d = Scalar::from_poly(self.den.clone()).render().0;
                (format!("({})*({})^-1", n, d), false)
            }
        }
    }

    /// Whether printing should pull a leading minus out of this coefficient.
    pub(crate) fn is_negative_lead(&self) -> bool {
        match self.laurent_terms() {
            Some(terms) if terms.len() == 1 => terms[0].1.is_negative(),
            _ => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render().0)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    /// Arbitrary but deterministic total order, used only for stable sorting.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Scalar {
        Scalar::param("w")
    }
    fn k() -> Scalar {
        Scalar::param("k")
    }

    #[test]
    fn gaussian_integer_norm() {
        let a = Scalar::one().add(&Scalar::i());
        let b = Scalar::one().sub(&Scalar::i());
        assert_eq!(a.mul(&b), Scalar::from_int(2));
    }

    #[test]
    fn self_division_is_one() {
        assert_eq!(w().div(&w()).unwrap(), Scalar::one());
    }

    #[test]
    fn cancels_common_factor() {
        let x = w().mul(&k()).add(&w());
        assert_eq!(x.div(&w()).unwrap(), k().add(&Scalar::one()));
    }

    #[test]
    fn division_by_zero_is_degenerate() {
        assert_eq!(w().div(&Scalar::zero()), Err(ScalarError::DegenerateScalar));
    }

    #[test]
    fn conjugation_rules() {
        let mut rules = ParamRules::new();
        rules.declare(&Parameter { name: "w".into(), star_rule: StarRule::Negated }).unwrap();
        rules.declare(&Parameter { name: "k".into(), star_rule: StarRule::Fixed }).unwrap();
        let a = Scalar::one().add(&Scalar::i());
        assert_eq!(a.conjugate(&rules), Scalar::one().sub(&Scalar::i()));
        assert_eq!(w().conjugate(&rules), w().neg());
        assert_eq!(k().conjugate(&rules).conjugate(&rules), k());
    }

    #[test]
    fn evaluation() {
        let mut at = BTreeMap::new();
        at.insert("w".to_string(), GaussRational::i());
        assert_eq!(w().eval(&at).unwrap(), GaussRational::i());

        let x = Scalar::one().add(&k().div(&w()).unwrap());
        let mut at = BTreeMap::new();
        at.insert("w".to_string(), GaussRational::one());
        at.insert("k".to_string(), GaussRational::from_int(-2));
        assert_eq!(x.eval(&at).unwrap(), GaussRational::from_int(-1));

        let pole = k().div(&w().add(&Scalar::one())).unwrap();
        let mut at = BTreeMap::new();
        at.insert("w".to_string(), GaussRational::from_int(-1));
        at.insert("k".to_string(), GaussRational::one());
        assert_eq!(pole.eval(&at), Err(ScalarError::PoleAtPoint));
        assert_eq!(w().eval(&BTreeMap::new()), Err(ScalarError::UnboundParameter("w".into())));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let x = Scalar::one().div(&w().scale(&GaussRational::from_int(3)).add(&Scalar::from_int(6))).unwrap();
        let y = Scalar::from_gauss(GaussRational::from_ratio(1, 3))
            .div(&w().add(&Scalar::from_int(2)))
            .unwrap();
        assert_eq!(x, y);
        assert!(x.denom().leading().unwrap().1.is_one());
    }

    #[test]
    fn display_laurent() {
        let x = k().div(&w()).unwrap().add(&Scalar::one());
        assert_eq!(x.to_string(), "k*w^-1 + 1");
        assert_eq!(w().neg().to_string(), "-w");
    }
}

use std::collections::HashMap;
use std::sync::Mutex;

use crate::scalars::{ParamRules, Parameter, Scalar};

use super::poly::{Monomial, NCPoly};
use super::NcError;

/// (sigma image, delta image) of a generator power.
type PowerImages = (NCPoly, NCPoly);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub level: usize,
    pub invertible: bool,
}

/// Commutation data of one level `g`: `g x = sigma(x) g + delta(x)` for each lower generator `x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OreLevel {
    pub sigma: Vec<NCPoly>,
    pub delta: Vec<NCPoly>,
}

/// An iterated skew-polynomial algebra over a Laurent (or polynomial) base.
///
/// Generator `level` 0 is the base; each later level adjoins one generator with a
/// twist `sigma` and twisted derivation `delta` defined on all lower generators.
/// Only the base generator may be invertible.
pub struct OreTower {
    name: String,
    params: Vec<Parameter>,
    rules: ParamRules,
    gens: Vec<Generator>,
    levels: Vec<OreLevel>,
    commutative: bool,
    // (level, lower level, exponent) -> (sigma image, delta image) of the power
    cache: Mutex<HashMap<(usize, usize, i32), PowerImages>>,
}

impl Clone for OreTower {
    fn clone(&self) -> Self {
        OreTower {
            name: self.name.clone(),
            params: self.params.clone(),
            rules: self.rules.clone(),
            gens: self.gens.clone(),
            levels: self.levels.clone(),
            commutative: self.commutative,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for OreTower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OreTower")
            .field("name", &self.name)
            .field("gens", &self.gens)
            .finish()
    }
}

impl OreTower {
    /// Assembles a tower from already-elaborated level data. Validates shapes and
    /// sigma images of invertible generators; confluence is checked separately.
    pub fn from_parts(
        name: impl Into<String>,
        params: Vec<Parameter>,
        gens: Vec<Generator>,
        mut levels: Vec<OreLevel>,
    ) -> Result<Self, NcError> {
        let n = gens.len();
        if n == 0 {
            return Err(NcError::EmptyTower);
        }
        let rules = ParamRules::from_params(&params)?;
        for (i, g) in gens.iter().enumerate() {
            if g.level != i {
                return Err(NcError::BadLevel(g.name.clone()));
            }
            if g.invertible && i > 0 {
                return Err(NcError::InvertibleAboveBase(g.name.clone()));
            }
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(NcError::DuplicateGenerator(g.name.clone()));
            }
        }
        levels.resize_with(n, OreLevel::default);
        for (l, lvl) in levels.iter_mut().enumerate() {
            if l == 0 {
                *lvl = OreLevel::default();
                continue;
            }
            lvl.sigma.resize_with(l, NCPoly::zero);
            lvl.delta.resize_with(l, NCPoly::zero);
            for j in 0..l {
                if lvl.sigma[j].is_zero() {
                    lvl.sigma[j] = NCPoly::generator(l, j, 1);
                }
                for p in [&lvl.sigma[j], &lvl.delta[j]] {
                    if let Some(t) = p.top_level() {
                        if t >= l {
                            return Err(NcError::ForwardReference {
                                level: gens[l].name.clone(),
                                generator: gens[t].name.clone(),
                            });
                        }
                    }
                }
                lvl.sigma[j] = lvl.sigma[j].resized(n);
                lvl.delta[j] = lvl.delta[j].resized(n);
            }
            if gens[0].invertible {
                let s = &lvl.sigma[0];
                let ok = s
                    .as_term()
                    .map(|(m, _)| m.exps()[1..].iter().all(|&e| e == 0))
                    .unwrap_or(false);
                if !ok {
                    return Err(NcError::NonInvertibleSigma {
                        level: gens[l].name.clone(),
                        generator: gens[0].name.clone(),
                    });
                }
            }
        }
        let commutative = levels.iter().enumerate().skip(1).all(|(l, lvl)| {
            (0..l).all(|j| lvl.delta[j].is_zero() && lvl.sigma[j] == NCPoly::generator(n, j, 1))
        });
        Ok(OreTower {
            name: name.into(),
            params,
            rules,
            gens,
            levels,
            commutative,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Commutative Laurent/polynomial algebra on the given generators.
    pub fn commutative(
        name: impl Into<String>,
        params: Vec<Parameter>,
        gens: &[(&str, bool)],
    ) -> Result<Self, NcError> {
        let gens = gens
            .iter()
            .enumerate()
            .map(|(i, (n, inv))| Generator { name: n.to_string(), level: i, invertible: *inv })
            .collect();
        OreTower::from_parts(name, params, gens, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[Parameter] {
        &self.params
    }

    pub fn rules(&self) -> &ParamRules {
        &self.rules
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn level(&self, l: usize) -> &OreLevel {
        &self.levels[l]
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.gens.iter().find(|g| g.name == name)
    }

    pub fn gen_poly(&self, level: usize) -> NCPoly {
        NCPoly::generator(self.len(), level, 1)
    }

    /// Element for a generator name (or `<name>b` alias of an invertible generator's inverse).
    pub fn named(&self, name: &str) -> Option<NCPoly> {
        if let Some(g) = self.generator(name) {
            return Some(self.gen_poly(g.level));
        }
        let base = name.strip_suffix('b')?;
        let g = self.generator(base)?;
        g.invertible.then(|| NCPoly::generator(self.len(), g.level, -1))
    }

    pub fn one(&self) -> NCPoly {
        NCPoly::one(self.len())
    }

    pub fn scalar(&self, c: Scalar) -> NCPoly {
        NCPoly::constant(self.len(), c)
    }

    pub fn mul(&self, p: &NCPoly, q: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, c) in p.terms() {
            for (b, d) in q.terms() {
                out.add_scaled(&self.mul_mono(a, b), &c.mul(d));
            }
        }
        out
    }

    pub fn mul_mono(&self, a: &Monomial, b: &Monomial) -> NCPoly {
        match (a.top(), b.top()) {
            (None, _) => NCPoly::monomial(b.clone()),
            (_, None) => NCPoly::monomial(a.clone()),
            (Some(x), Some(y)) => self.mul_upto(a, b, x.max(y)),
        }
    }

    /// Product of two monomials supported on levels `<= top`.
    fn mul_upto(&self, a: &Monomial, b: &Monomial, top: usize) -> NCPoly {
        if top == 0 || self.commutative {
            let exps = a.exps().iter().zip(b.exps()).map(|(x, y)| x + y).collect();
            return NCPoly::monomial(Monomial::from_exps(exps));
        }
        let ea = a.exp(top);
        let eb = b.exp(top);
        let a_low = a.with_exp(top, 0);
        let b_low = b.with_exp(top, 0);
        if b_low.is_unit() {
            return NCPoly::monomial(a.with_exp(top, ea + eb));
        }
        if ea == 0 {
            let mut out = NCPoly::zero();
            for (m, c) in self.mul_upto(&a_low, &b_low, top - 1).terms() {
                out.add_term(m.with_exp(top, eb), c.clone());
            }
            return out;
        }
        let mut out = NCPoly::zero();
        for (i, q) in self.commute_power(top, ea, &b_low).into_iter().enumerate() {
            for (qm, qc) in q.terms() {
                let prod = if a_low.is_unit() {
                    NCPoly::monomial(qm.clone())
                } else {
                    self.mul_upto(&a_low, qm, top - 1)
                };
                for (m, c) in prod.terms() {
                    out.add_term(m.with_exp(top, i as i32 + eb), c.mul(qc));
                }
            }
        }
        out
    }

    /// `g^e x = sum_i Q_i g^i` for `g` at `level`, `x` supported below it.
    fn commute_power(&self, level: usize, e: i32, x: &Monomial) -> Vec<NCPoly> {
        debug_assert!(e > 0);
        let mut list = vec![NCPoly::monomial(x.clone())];
        for _ in 0..e {
            let mut next = vec![NCPoly::zero(); list.len() + 1];
            for (i, q) in list.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                next[i + 1] = next[i + 1].add(&self.apply_sigma(level, q));
                next[i] = next[i].add(&self.apply_delta(level, q));
            }
            list = next;
        }
        list
    }

    /// Extends the level's sigma multiplicatively to lower elements.
    pub fn apply_sigma(&self, level: usize, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.sigma_mono(level, m), c);
        }
        out
    }

    /// Extends the level's delta by the twisted Leibniz rule `d(xy) = s(x) d(y) + d(x) y`.
    pub fn apply_delta(&self, level: usize, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.delta_mono(level, m), c);
        }
        out
    }

    fn sigma_mono(&self, level: usize, m: &Monomial) -> NCPoly {
        let mut acc = self.one();
        for j in 0..level {
            let e = m.exp(j);
            if e != 0 {
                acc = self.mul(&acc, &self.power_images(level, j, e).0);
            }
        }
        acc
    }

    fn delta_mono(&self, level: usize, m: &Monomial) -> NCPoly {
        let Some(j) = (0..level).find(|&j| m.exp(j) != 0) else {
            return NCPoly::zero();
        };
        let e = m.exp(j);
        let rest = m.with_exp(j, 0);
        let (s_head, d_head) = self.power_images(level, j, e);
        let rest_poly = NCPoly::monomial(rest.clone());
        let d_rest = self.delta_mono(level, &rest);
        self.mul(&s_head, &d_rest).add(&self.mul(&d_head, &rest_poly))
    }

    /// `(sigma(g^e), delta(g^e))` for the generator at `lower`, memoized.
    fn power_images(&self, level: usize, lower: usize, e: i32) -> (NCPoly, NCPoly) {
        if let Some(hit) = self.cache.lock().unwrap().get(&(level, lower, e)) {
            return hit.clone();
        }
        let lvl = &self.levels[level];
        let n = self.len();
        let (s1, d1, g1) = if e > 0 {
            (lvl.sigma[lower].clone(), lvl.delta[lower].clone(), NCPoly::generator(n, lower, 1))
        } else {
            // sigma(g^-1) = sigma(g)^-1, delta(g^-1) = -sigma(g)^-1 delta(g) g^-1
            let (m, c) = lvl.sigma[lower].as_term().expect("validated invertible sigma image");
            let inv_exps = m.exps().iter().map(|x| -x).collect();
            let s_inv = NCPoly::term(
                Monomial::from_exps(inv_exps),
                c.inv().expect("nonzero sigma coefficient"),
            );
            let g_inv = NCPoly::generator(n, lower, -1);
            let d_inv = self.mul(&self.mul(&s_inv, &lvl.delta[lower]), &g_inv).neg();
            (s_inv, d_inv, g_inv)
        };
        let k = e.unsigned_abs();
        // sigma(h^k) = sigma(h)^k, delta(h^k) = sum_t sigma(h)^t delta(h) h^(k-1-t)
        let mut s_pows = vec![self.one()];
        let mut g_pows = vec![self.one()];
        for t in 1..=k as usize {
            s_pows.push(self.mul(&s_pows[t - 1], &s1));
            g_pows.push(self.mul(&g_pows[t - 1], &g1));
        }
        let mut d = NCPoly::zero();
        for t in 0..k as usize {
            let term = self.mul(&self.mul(&s_pows[t], &d1), &g_pows[k as usize - 1 - t]);
            d = d.add(&term);
        }
        let out = (s_pows[k as usize].clone(), d);
        self.cache.lock().unwrap().insert((level, lower, e), out.clone());
        out
    }

    pub fn pow(&self, p: &NCPoly, e: u32) -> NCPoly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, p);
        }
        acc
    }

    /// Inverse of a single invertible term `c * v^k`.
    pub fn inverse_of_term(&self, p: &NCPoly) -> Option<NCPoly> {
        let (m, c) = p.as_term()?;
        let invertible = m
            .exps()
            .iter()
            .enumerate()
            .all(|(l, &e)| e == 0 || self.gens[l].invertible);
        if !invertible {
            return None;
        }
        let exps = m.exps().iter().map(|e| -e).collect();
        Some(NCPoly::term(Monomial::from_exps(exps), c.inv().ok()?))
    }

    /// Truncation to the first `levels` generators.
    pub fn prefix(&self, levels: usize) -> Result<OreTower, NcError> {
        let gens = self.gens[..levels].to_vec();
        let lv = self.levels[..levels]
            .iter()
            .map(|l| OreLevel {
                sigma: l.sigma.iter().map(|p| p.resized(levels)).collect(),
                delta: l.delta.iter().map(|p| p.resized(levels)).collect(),
            })
            .collect();
        OreTower::from_parts(self.name.clone(), self.params.clone(), gens, lv)
    }

    /// Same presentation with extra parameters in scope.
    pub fn with_params(&self, extra: &[Parameter]) -> Result<OreTower, NcError> {
        let mut params = self.params.clone();
        for p in extra {
            if !params.iter().any(|q| q.name == p.name) {
                params.push(p.clone());
            }
        }
        OreTower::from_parts(self.name.clone(), params, self.gens.clone(), self.levels.clone())
    }

    /// Replaces one level's data; used to build negative controls.
    pub fn with_level(&self, level: usize, data: OreLevel) -> Result<OreTower, NcError> {
        let mut levels = self.levels.clone();
        levels[level] = data;
        OreTower::from_parts(self.name.clone(), self.params.clone(), self.gens.clone(), levels)
    }
}

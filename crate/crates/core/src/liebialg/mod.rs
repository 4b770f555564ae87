//! Lie bialgebra layer: tangent Lie algebra from a coproduct, cocommutator from a
//! multiplicative bracket, cocycle/co-Jacobi checks, coboundary solve, and
//! stabilizer invariance of bivectors.
//!
//! Coordinates are centered at the identity: `u = g - 1` for an invertible
//! generator, the generator itself otherwise. Basis vector `e_a` is dual to the
//! `a`-th coordinate.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::hopf::HopfStructure;
use crate::linalg::solve_affine;
use crate::ncalg::{Monomial, NCPoly, OreTower};
use crate::poisson::{AlgebraMorphism, PoissonStructure};
use crate::report::{CheckRecord, CheckReport};
use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("`{0}` is not commutative")]
    Noncommutative(String),
    #[error("`{0}` carries no coproduct")]
    NoCoproduct(String),
    #[error("basis has {found} names, presentation has {expected} generators")]
    BasisSize { expected: usize, found: usize },
    #[error("coproduct of `{0}` is not primitive to first order at the identity")]
    NotGroupLike(String),
    #[error("bracket {{{0}}} does not vanish at the identity")]
    NotVanishing(String),
    #[error("derived constants violate Jacobi at {0}")]
    Jacobi(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Value and first derivatives at the identity of a commutative monomial.
fn jet1(m: &Monomial, tower: &OreTower) -> (Scalar, Vec<Scalar>) {
    let n = tower.len();
    let noninv: Vec<usize> = (0..n).filter(|&l| !tower.gens()[l].invertible && m.exp(l) != 0).collect();
    let mut lin = vec![Scalar::zero(); n];
    match noninv.as_slice() {
        [] => {
            for (l, g) in tower.gens().iter().enumerate() {
                if g.invertible {
                    lin[l] = Scalar::from_int(m.exp(l) as i64);
                }
            }
            (Scalar::one(), lin)
        }
        [l] if m.exp(*l) == 1 => {
            lin[*l] = Scalar::one();
            (Scalar::zero(), lin)
        }
        _ => (Scalar::zero(), lin),
    }
}

fn poly_jet1(p: &NCPoly, tower: &OreTower) -> (Scalar, Vec<Scalar>) {
    let mut c0 = Scalar::zero();
    let mut lin = vec![Scalar::zero(); tower.len()];
    for (m, c) in p.terms() {
        let (a, l) = jet1(m, tower);
        c0 = c0.add(&a.mul(c));
        for (x, y) in lin.iter_mut().zip(l) {
            *x = x.add(&y.mul(c));
        }
    }
    (c0, lin)
}

/// Antisymmetric element of the wedge square, stored on `i < j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WedgeBivector {
    pub dim: usize,
    coeffs: BTreeMap<(usize, usize), Scalar>,
}

impl WedgeBivector {
    pub fn zero(dim: usize) -> Self {
        WedgeBivector { dim, coeffs: BTreeMap::new() }
    }

    /// `c * e_i ^ e_j`, any order.
    pub fn add_pair(&mut self, i: usize, j: usize, c: &Scalar) {
        if i == j || c.is_zero() {
            return;
        }
        let (key, c) = if i < j { ((i, j), c.clone()) } else { ((j, i), c.neg()) };
        let e = self.coeffs.entry(key).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self.coeff(j, i).neg(),
            std::cmp::Ordering::Equal => Scalar::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.coeffs.iter()
    }

    /// `a ^ b` for vectors given in coordinates.
    pub fn wedge(a: &[Scalar], b: &[Scalar]) -> Self {
        let mut w = WedgeBivector::zero(a.len());
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                w.add_pair(i, j, &x.mul(y));
            }
        }
        w
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for ((i, j), c) in &o.coeffs {
            r.add_pair(*i, *j, c);
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut r = WedgeBivector::zero(self.dim);
        for ((i, j), d) in &self.coeffs {
            r.add_pair(*i, *j, &d.mul(c));
        }
        r
    }

    /// Image under the linear map `m` (rows: target coordinates).
    pub fn push(&self, m: &[Vec<Scalar>]) -> Self {
        let mut r = WedgeBivector::zero(m.len());
        for ((i, j), c) in &self.coeffs {
            let a: Vec<Scalar> = m.iter().map(|row| row[*i].clone()).collect();
            let b: Vec<Scalar> = m.iter().map(|row| row[*j].clone()).collect();
            r = r.add(&WedgeBivector::wedge(&a, &b).scale(c));
        }
        r
    }

    pub fn render(&self, basis: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|((i, j), c)| {
                let pair = format!("{}^{}", basis[*i], basis[*j]);
                if c.is_one() {
                    pair
                } else {
                    format!("({})*{}", c, pair)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Structure constants `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub basis: Vec<String>,
    pub consts: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebra {
    pub fn new(basis: Vec<String>, consts: Vec<Vec<Vec<Scalar>>>) -> Result<Self, LieError> {
        let n = basis.len();
        if consts.len() != n || consts.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(LieError::Dimension("structure constants".into()));
        }
        let g = LieAlgebra { basis, consts };
        if let Some(w) = g.jacobi_violation() {
            return Err(LieError::Jacobi(w));
        }
        Ok(g)
    }

    pub fn abelian(basis: Vec<String>) -> Self {
        let n = basis.len();
        LieAlgebra { basis, consts: vec![vec![vec![Scalar::zero(); n]; n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.consts[i][j]
    }

    /// Bracket of coordinate vectors.
    pub fn bracket_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let ab = a[i].mul(&b[j]);
                if ab.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = o.add(&ab.mul(&self.consts[i][j][k]));
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    fn jacobi_violation(&self) -> Option<String> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let (a, b, c) = (self.unit(i), self.unit(j), self.unit(l));
                    let t1 = self.bracket_vec(&self.bracket_vec(&a, &b), &c);
                    let t2 = self.bracket_vec(&self.bracket_vec(&b, &c), &a);
                    let t3 = self.bracket_vec(&self.bracket_vec(&c, &a), &b);
                    if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !x.add(y).add(z).is_zero()) {
                        return Some(format!("{},{},{}", self.basis[i], self.basis[j], self.basis[l]));
                    }
                }
            }
        }
        None
    }

    /// Adjoint action on the wedge square, extended as a derivation.
    pub fn ad_wedge(&self, x: &[Scalar], w: &WedgeBivector) -> WedgeBivector {
        let mut out = WedgeBivector::zero(self.dim());
        for ((i, j), c) in w.terms() {
            let (a, b) = (self.unit(*i), self.unit(*j));
            out = out.add(&WedgeBivector::wedge(&self.bracket_vec(x, &a), &b).scale(c));
            out = out.add(&WedgeBivector::wedge(&a, &self.bracket_vec(x, &b)).scale(c));
        }
        out
    }

    pub fn render_vec(&self, v: &[Scalar]) -> String {
        let parts: Vec<String> = v
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, b)| if c.is_one() { b.clone() } else { format!("({})*{}", c, b) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `delta(e_k)` for each basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocommutator {
    pub values: Vec<WedgeBivector>,
}

impl Cocommutator {
    pub fn zero(dim: usize) -> Self {
        Cocommutator { values: vec![WedgeBivector::zero(dim); dim] }
    }

    /// Value on a coordinate vector.
    pub fn apply(&self, x: &[Scalar]) -> WedgeBivector {
        let mut out = WedgeBivector::zero(self.values.len());
        for (c, v) in x.iter().zip(&self.values) {
            out = out.add(&v.scale(c));
        }
        out
    }
}

fn check_basis(tower: &OreTower, basis: &[String]) -> Result<(), LieError> {
    if basis.len() != tower.len() {
        return Err(LieError::BasisSize { expected: tower.len(), found: basis.len() });
    }
    if !tower.is_commutative() {
        return Err(LieError::Noncommutative(tower.name().to_string()));
    }
    Ok(())
}

/// Tangent Lie algebra from the second-order term of the group law read off the
/// coproduct: `[e_a, e_b]^k = B^k(a,b) - B^k(b,a)` where `B^k(a,b)` is the
/// coefficient of `x_a (x) x_b` in the coproduct of the `k`-th coordinate.
pub fn lie_from_group(h: &HopfStructure, basis: &[String]) -> Result<LieAlgebra, LieError> {
    let tower = &h.tower;
    check_basis(tower, basis)?;
    let delta = h.delta.as_ref().ok_or_else(|| LieError::NoCoproduct(h.name.clone()))?;
    let n = tower.len();
    let mut consts = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for k in 0..n {
        let mut first_l = vec![Scalar::zero(); n];
        let mut first_r = vec![Scalar::zero(); n];
        let mut b = vec![vec![Scalar::zero(); n]; n];
        for (legs, c) in delta.image(k).terms() {
            let (c0, l0) = jet1(&legs[0], tower);
            let (c1, l1) = jet1(&legs[1], tower);
            for a in 0..n {
                first_l[a] = first_l[a].add(&c.mul(&l0[a]).mul(&c1));
                first_r[a] = first_r[a].add(&c.mul(&c0).mul(&l1[a]));
                for bb in 0..n {
                    b[a][bb] = b[a][bb].add(&c.mul(&l0[a]).mul(&l1[bb]));
                }
            }
        }
        for a in 0..n {
            let want = if a == k { Scalar::one() } else { Scalar::zero() };
            if first_l[a] != want || first_r[a] != want {
                return Err(LieError::NotGroupLike(tower.gens()[k].name.clone()));
            }
        }
        for a in 0..n {
            for bb in 0..n {
                consts[a][bb][k] = b[a][bb].sub(&b[bb][a]);
            }
        }
    }
    LieAlgebra::new(basis.to_vec(), consts)
}

/// Linear part at the identity of a multiplicative bracket: the coefficient of
/// `e_i ^ e_j` in `delta(e_k)` is the linear coefficient of `x_k` in `{x_i, x_j}`.
pub fn linearize_poisson(p: &PoissonStructure) -> Result<Cocommutator, LieError> {
    let tower = &p.tower;
    if !tower.is_commutative() {
        return Err(LieError::Noncommutative(tower.name().to_string()));
    }
    let n = tower.len();
    let mut out = Cocommutator::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let (c0, lin) = poly_jet1(p.entry(i, j), tower);
            if !c0.is_zero() {
                return Err(LieError::NotVanishing(format!(
                    "{},{}",
                    tower.gens()[i].name,
                    tower.gens()[j].name
                )));
            }
            for (k, c) in lin.iter().enumerate() {
                out.values[k].add_pair(i, j, c);
            }
        }
    }
    Ok(out)
}

/// Cocycle condition `delta([x,y]) = ad_x delta(y) - ad_y delta(x)` on basis pairs,
/// and the Jacobi identity of the dual bracket defined by `delta`.
pub fn cocycle_cojacobi_report(name: &str, g: &LieAlgebra, d: &Cocommutator) -> CheckReport {
    let n = g.dim();
    let mut rep = CheckReport::new(format!("bialgebra/{}", name));
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (g.unit(i), g.unit(j));
            let lhs = d.apply(&g.bracket_vec(&x, &y));
            let rhs = g.ad_wedge(&x, &d.values[j]).add(&g.ad_wedge(&y, &d.values[i]).scale(&Scalar::from_int(-1)));
            let ok = lhs == rhs;
            let mut r = CheckRecord::new(
                format!("cocycle/{}/{},{}", name, g.basis[i], g.basis[j]),
                "delta([x,y]) = ad_x delta(y) - ad_y delta(x)",
            )
            .sides(lhs.render(&g.basis), rhs.render(&g.basis))
            .verdict(ok);
            if !ok {
                r = r.witness(format!("{},{}", g.basis[i], g.basis[j]));
            }
            rep.push(r);
        }
    }
    // dual bracket [e^i, e^j] = sum_k f^{ij}_k e^k
    let f = |i: usize, j: usize, k: usize| d.values[k].coeff(i, j);
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let mut bad = None;
                for m in 0..n {
                    let mut s = Scalar::zero();
                    for k in 0..n {
                        s = s.add(&f(i, j, k).mul(&f(k, l, m)));
                        s = s.add(&f(j, l, k).mul(&f(k, i, m)));
                        s = s.add(&f(l, i, k).mul(&f(k, j, m)));
                    }
                    if !s.is_zero() {
                        bad = Some((m, s));
                        break;
                    }
                }
                let id = format!("cojacobi/{}/{},{},{}", name, g.basis[i], g.basis[j], g.basis[l]);
                let mut r = CheckRecord::new(id, "dual bracket satisfies Jacobi");
                r = match bad {
                    None => r.sides("0", "0").verdict(true),
                    Some((m, s)) => r.sides(format!("({})*{}", s, g.basis[m]), "0").verdict(false).witness(g.basis[m].clone()),
                };
                rep.push(r);
            }
        }
    }
    rep
}

/// The coboundary cocommutator `x -> ad_x r`.
pub fn coboundary(g: &LieAlgebra, r: &WedgeBivector) -> Cocommutator {
    Cocommutator { values: (0..g.dim()).map(|i| g.ad_wedge(&g.unit(i), r)).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundarySolution {
    pub particular: WedgeBivector,
    pub directions: Vec<WedgeBivector>,
}

impl CoboundarySolution {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// All `r` with `delta(x) = ad_x r`; `None` when `delta` is not a coboundary.
pub fn coboundary_solve(g: &LieAlgebra, d: &Cocommutator) -> Option<CoboundarySolution> {
    let n = g.dim();
    let ps = pairs(n);
    let cols: Vec<Cocommutator> = ps
        .iter()
        .map(|&(i, j)| {
            let mut e = WedgeBivector::zero(n);
            e.add_pair(i, j, &Scalar::one());
            coboundary(g, &e)
        })
        .collect();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for x in 0..n {
        for &(i, j) in &ps {
            a.push(cols.iter().map(|c| c.values[x].coeff(i, j)).collect::<Vec<_>>());
            b.push(d.values[x].coeff(i, j));
        }
    }
    let sol = solve_affine(&a, &b, ps.len())?;
    let to_wedge = |v: &[Scalar]| {
        let mut w = WedgeBivector::zero(n);
        for (c, &(i, j)) in v.iter().zip(&ps) {
            w.add_pair(i, j, c);
        }
        w
    };
    Some(CoboundarySolution {
        particular: to_wedge(&sol.particular),
        directions: sol.directions.iter().map(|v| to_wedge(v)).collect(),
    })
}

/// `(A . rho)^{ij} = A^i_k rho^{kj} + A^j_k rho^{ik}`.
pub fn act_on_bivector(a: &[Vec<Scalar>], rho: &WedgeBivector) -> WedgeBivector {
    let n = rho.dim;
    let mut out = WedgeBivector::zero(n);
    for (i, j) in pairs(n) {
        let mut s = Scalar::zero();
        for k in 0..n {
            s = s.add(&a[i][k].mul(&rho.coeff(k, j)));
            s = s.add(&a[j][k].mul(&rho.coeff(i, k)));
        }
        out.add_pair(i, j, &s);
    }
    out
}

/// Evaluates `pushforward(delta_stab) + A . rho = 0`.
pub fn stabilizer_invariance_check(
    id: &str,
    pushforward: &[Vec<Scalar>],
    action: &[Vec<Scalar>],
    delta_stab: &WedgeBivector,
    rho: &WedgeBivector,
) -> Result<CheckRecord, LieError> {
    let t = rho.dim;
    if pushforward.len() != t || pushforward.iter().any(|r| r.len() != delta_stab.dim) {
        return Err(LieError::Dimension(format!("pushforward is not {}x{}", t, delta_stab.dim)));
    }
    if action.len() != t || action.iter().any(|r| r.len() != t) {
        return Err(LieError::Dimension(format!("action is not {}x{}", t, t)));
    }
    let lhs = delta_stab.push(pushforward).add(&act_on_bivector(action, rho));
    let names: Vec<String> = (1..=t).map(|i| format!("d{}", i)).collect();
    let ok = lhs.is_zero();
    let mut r = CheckRecord::new(id, "pushforward of delta plus action on rho vanishes")
        .sides(lhs.render(&names), "0")
        .verdict(ok);
    if !ok {
        r = r.witness(lhs.render(&names));
    }
    Ok(r)
}

fn eval_comm(p: &NCPoly, point: &[Scalar]) -> Result<Scalar, ScalarError> {
    let mut s = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (l, &e) in m.exps().iter().enumerate() {
            if e != 0 {
                t = t.mul(&point[l].pow(e as i64)?);
            }
        }
        s = s.add(&t);
    }
    Ok(s)
}

fn derivative(p: &NCPoly, level: usize) -> NCPoly {
    let mut out = NCPoly::zero();
    for (m, c) in p.terms() {
        let e = m.exp(level);
        if e != 0 {
            out.add_term(m.with_exp(level, e - 1), c.mul(&Scalar::from_int(e as i64)));
        }
    }
    out
}

/// Infinitesimal action read off a left coaction `A -> Fun(G) (x) A`: the vector
/// field of `e_a` has components `xi_a^i = sum c * lin_a(left) * right` on the
/// coordinate functions of the space.
pub fn fundamental_fields(alpha: &AlgebraMorphism) -> Result<Vec<Vec<NCPoly>>, LieError> {
    if alpha.arity() != 2 {
        return Err(LieError::Dimension("coaction must have two legs".into()));
    }
    let group = &alpha.targets[0];
    if !group.is_commutative() || !alpha.source.is_commutative() {
        return Err(LieError::Noncommutative(group.name().to_string()));
    }
    let dim_g = group.len();
    let dim_t = alpha.source.len();
    let mut fields = vec![vec![NCPoly::zero(); dim_t]; dim_g];
    for i in 0..dim_t {
        for (legs, c) in alpha.image(i).terms() {
            let (_, lin) = jet1(&legs[0], group);
            for (a, l) in lin.iter().enumerate() {
                if !l.is_zero() {
                    fields[a][i].add_term(legs[1].clone(), c.mul(l));
                }
            }
        }
    }
    Ok(fields)
}

/// Square matrix over the scalars, row-major.
pub type Matrix = Vec<Vec<Scalar>>;

/// Pushforward `g -> T_x` at `point`, and the linearized action of the Lie algebra
/// element `x` on `T_x` (meaningful when `x` stabilizes the point).
pub fn isotropy_data(
    alpha: &AlgebraMorphism,
    x: &[Scalar],
    point: &[Scalar],
) -> Result<(Matrix, Matrix), LieError> {
    let fields = fundamental_fields(alpha)?;
    let dim_t = alpha.source.len();
    if point.len() != dim_t || x.len() != fields.len() {
        return Err(LieError::Dimension("point or Lie element".into()));
    }
    let mut push = vec![vec![Scalar::zero(); fields.len()]; dim_t];
    for (a, f) in fields.iter().enumerate() {
        for i in 0..dim_t {
            push[i][a] = eval_comm(&f[i], point)?;
        }
    }
    let mut xi = vec![NCPoly::zero(); dim_t];
    for (c, f) in x.iter().zip(&fields) {
        for i in 0..dim_t {
            xi[i].add_scaled(&f[i], c);
        }
    }
    let mut act = vec![vec![Scalar::zero(); dim_t]; dim_t];
    for i in 0..dim_t {
        for k in 0..dim_t {
            act[i][k] = eval_comm(&derivative(&xi[i], k), point)?;
        }
    }
    Ok((push, act))
}

impl fmt::Display for WedgeBivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim).map(|i| format!("e{}", i)).collect();
        write!(f, "{}", self.render(&names))
    }
}

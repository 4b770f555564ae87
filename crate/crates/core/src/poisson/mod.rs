//! Poisson brackets on commutative presentations: Jacobi, morphism and covariance
//! checks, covariant families, symplectic rank, Hamiltonian fields, Poisson ideals.

mod morphism;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::exprio::{format_poly, parse_poly, ExprError};
use crate::linalg::{rank, solve_affine, AffineSolution};
use crate::ncalg::{Monomial, NCPoly, OreTower, TensorElement};
use crate::report::{CheckRecord, CheckReport};
use crate::scalars::{GaussRational, Scalar, ScalarError};

pub use morphism::AlgebraMorphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("Poisson brackets need a commutative presentation, `{0}` is not")]
    Noncommutative(String),
    #[error("bracket table refers to unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bracket {{{0},{0}}} must vanish")]
    DiagonalEntry(String),
    #[error("expected {expected} generator images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image of `{0}` has the wrong number of tensor legs")]
    ImageArity(String),
    #[error("image of invertible `{0}` is not an invertible monomial")]
    NotInvertible(String),
    #[error("no image given for `{0}`")]
    MissingImage(String),
    #[error("in `{0}`: {1}")]
    Expr(String, ExprError),
    #[error("empty ansatz")]
    EmptyAnsatz,
    #[error("covariant families need a two-generator space")]
    NotTwoGenerators,
    #[error("generator `{0}` has no assigned value")]
    UnassignedGenerator(String),
    #[error("invertible generator `{0}` assigned zero")]
    ZeroInvertible(String),
    #[error("stated ideal generator `{0}` does not vanish under the restriction map")]
    NotInKernel(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Antisymmetric bracket table on the generators of a commutative tower.
#[derive(Clone, Debug)]
pub struct PoissonStructure {
    pub name: String,
    pub tower: Arc<OreTower>,
    table: Vec<Vec<NCPoly>>,
}

impl PoissonStructure {
    /// Entries are `{g_i, g_j}` for the listed pairs; the rest follow by antisymmetry or are zero.
    pub fn new(name: impl Into<String>, tower: Arc<OreTower>, entries: &[(usize, usize, NCPoly)]) -> Result<Self, PoissonError> {
        if !tower.is_commutative() {
            return Err(PoissonError::Noncommutative(tower.name().to_string()));
        }
        let n = tower.len();
        let mut table = vec![vec![NCPoly::zero(); n]; n];
        for (i, j, p) in entries {
            if i == j {
                if p.is_zero() {
                    continue;
                }
                return Err(PoissonError::DiagonalEntry(tower.gens()[*i].name.clone()));
            }
            table[*i][*j] = p.clone();
            table[*j][*i] = p.neg();
        }
        Ok(PoissonStructure { name: name.into(), tower, table })
    }

    /// Parses entries given as `("a,b", expr)`.
    pub fn parse(name: impl Into<String>, tower: Arc<OreTower>, entries: &[(&str, &str)]) -> Result<Self, PoissonError> {
        let mut parsed = Vec::new();
        for (pair, text) in entries {
            let (a, b) = pair.split_once(',').ok_or_else(|| PoissonError::UnknownGenerator(pair.to_string()))?;
            let idx = |s: &str| {
                tower
                    .generator(s.trim())
                    .map(|g| g.level)
                    .ok_or_else(|| PoissonError::UnknownGenerator(s.trim().to_string()))
            };
            let p = parse_poly(text, &tower).map_err(|e| PoissonError::Expr(pair.to_string(), e))?;
            parsed.push((idx(a)?, idx(b)?, p));
        }
        PoissonStructure::new(name, tower, &parsed)
    }

    /// The zero bracket.
    pub fn zero(tower: Arc<OreTower>) -> Result<Self, PoissonError> {
        let name = format!("{}-zero", tower.name());
        PoissonStructure::new(name, tower, &[])
    }

    pub fn entry(&self, i: usize, j: usize) -> &NCPoly {
        &self.table[i][j]
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn fmt(&self, p: &NCPoly) -> String {
        format_poly(p, &self.tower)
    }

    pub fn gen(&self, i: usize) -> NCPoly {
        self.tower.gen_poly(i)
    }

    fn bracket_mono(&self, a: &Monomial, b: &Monomial) -> NCPoly {
        let n = self.len();
        let mut out = NCPoly::zero();
        for i in 0..n {
            let ai = a.exp(i);
            if ai == 0 {
                continue;
            }
            for j in 0..n {
                let bj = b.exp(j);
                if bj == 0 || self.table[i][j].is_zero() {
                    continue;
                }
                let mut exps: Vec<i32> = a.exps().iter().zip(b.exps()).map(|(x, y)| x + y).collect();
                exps[i] -= 1;
                exps[j] -= 1;
                let shift = Monomial::from_exps(exps);
                let c = Scalar::from_int(ai as i64 * bj as i64);
                for (m, d) in self.table[i][j].terms() {
                    let e = m.exps().iter().zip(shift.exps()).map(|(x, y)| x + y).collect();
                    out.add_term(Monomial::from_exps(e), d.mul(&c));
                }
            }
        }
        out
    }

    /// Leibniz extension of the table; Laurent generators use `{v^-1, f} = -v^-2 {v, f}`.
    pub fn bracket(&self, f: &NCPoly, g: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, c) in f.terms() {
            for (b, d) in g.terms() {
                out.add_scaled(&self.bracket_mono(a, b), &c.mul(d));
            }
        }
        out
    }
}

pub fn pbracket(f: &NCPoly, g: &NCPoly, p: &PoissonStructure) -> NCPoly {
    p.bracket(f, g)
}

/// Cyclic Jacobi sums on every generator triple.
pub fn jacobi_report(p: &PoissonStructure) -> CheckReport {
    let mut rep = CheckReport::new(format!("jacobi/{}", p.name));
    let n = p.len();
    let names: Vec<&str> = p.tower.gens().iter().map(|g| g.name.as_str()).collect();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (p.gen(i), p.gen(j), p.gen(k));
                let s = p
                    .bracket(&a, &p.bracket(&b, &c))
                    .add(&p.bracket(&b, &p.bracket(&c, &a)))
                    .add(&p.bracket(&c, &p.bracket(&a, &b)));
                let id = format!("jacobi/{}/{},{},{}", p.name, names[i], names[j], names[k]);
                let anchor = format!("{{{a},{{{b},{c}}}}} + cyclic = 0", a = names[i], b = names[j], c = names[k]);
                let mut r = CheckRecord::new(id, anchor).sides(p.fmt(&s), "0").verdict(s.is_zero());
                if !s.is_zero() {
                    r = r.witness(format!("{},{},{}", names[i], names[j], names[k]));
                }
                rep.push(r);
            }
        }
    }
    rep
}

/// Product bracket on a tensor product: legwise Leibniz, one structure per leg.
pub fn tensor_bracket(x: &TensorElement, y: &TensorElement, legs: &[&PoissonStructure]) -> TensorElement {
    let towers: Vec<&OreTower> = legs.iter().map(|p| p.tower.as_ref()).collect();
    let mut out = TensorElement::zero(legs.len());
    for (a, c) in x.terms() {
        for (b, d) in y.terms() {
            let coeff = c.mul(d);
            for (l, ps) in legs.iter().enumerate() {
                let br = ps.bracket_mono(&a[l], &b[l]);
                if br.is_zero() {
                    continue;
                }
                let polys: Vec<NCPoly> = (0..legs.len())
                    .map(|k| if k == l { br.clone() } else { towers[k].mul_mono(&a[k], &b[k]) })
                    .collect();
                out.add_scaled(&TensorElement::pure(&polys), &coeff);
            }
        }
    }
    out
}

/// `phi({x,y}) = {phi x, phi y}` on all generator pairs of the source.
pub fn poisson_morphism_report(phi: &AlgebraMorphism, src: &PoissonStructure, tgt: &[&PoissonStructure]) -> CheckReport {
    let mut rep = CheckReport::new(format!("morphism/{}", phi.name));
    let n = src.len();
    let names: Vec<&str> = src.tower.gens().iter().map(|g| g.name.as_str()).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = phi.apply(src.entry(i, j));
            let rhs = tensor_bracket(phi.image(i), phi.image(j), tgt);
            let ok = lhs == rhs;
            let id = format!("morphism/{}/{}/{},{}", phi.name, src.name, names[i], names[j]);
            let anchor = format!("phi({{{a},{b}}}) = {{phi({a}),phi({b})}}", a = names[i], b = names[j]);
            let mut r = CheckRecord::new(id, anchor).sides(phi.format(&lhs), phi.format(&rhs)).verdict(ok);
            if !ok {
                r = r.witness(phi.format(&lhs.sub(&rhs)));
            }
            rep.push(r);
        }
    }
    rep
}

/// Affine family of brackets `{x,y} = sum c_a A_a` on a two-generator space.
#[derive(Clone, Debug)]
pub struct CovariantFamily {
    pub ansatz: Vec<NCPoly>,
    pub solution: Option<AffineSolution<Scalar>>,
}

impl CovariantFamily {
    pub fn dimension(&self) -> Option<usize> {
        self.solution.as_ref().map(|s| s.dimension())
    }

    pub fn particular(&self) -> Option<NCPoly> {
        self.solution.as_ref().map(|s| combine(&self.ansatz, &s.particular))
    }

    pub fn directions(&self) -> Vec<NCPoly> {
        self.solution
            .as_ref()
            .map(|s| s.directions.iter().map(|d| combine(&self.ansatz, d)).collect())
            .unwrap_or_default()
    }

    /// Whether `value` (a bracket value) belongs to the family.
    pub fn contains(&self, value: &NCPoly) -> bool {
        let Some(sol) = &self.solution else { return false };
        let diff = value.sub(&combine(&self.ansatz, &sol.particular));
        let dirs = self.directions();
        if diff.is_zero() {
            return true;
        }
        crate::ncalg::span_solve(&diff, &dirs).is_some()
    }
}

fn combine(ansatz: &[NCPoly], c: &[Scalar]) -> NCPoly {
    let mut out = NCPoly::zero();
    for (a, x) in ansatz.iter().zip(c) {
        out.add_scaled(a, x);
    }
    out
}

/// Solves for all bracket values in the ansatz span that make the coaction
/// `alpha: M -> G (x) M` a Poisson map for the product structure.
pub fn covariant_family_solve(
    alpha: &AlgebraMorphism,
    p_g: &PoissonStructure,
    ansatz: &[NCPoly],
) -> Result<CovariantFamily, PoissonError> {
    if ansatz.is_empty() {
        return Err(PoissonError::EmptyAnsatz);
    }
    let space = alpha.source.clone();
    if space.len() != 2 {
        return Err(PoissonError::NotTwoGenerators);
    }
    let (x, y) = (space.gen_poly(0), space.gen_poly(1));
    let zero_m = PoissonStructure::zero(space.clone())?;
    let zero_g = PoissonStructure::zero(p_g.tower.clone())?;
    let (ax, ay) = (alpha.apply(&x), alpha.apply(&y));
    let g_part = tensor_bracket(&ax, &ay, &[p_g, &zero_m]);
    let mut columns = Vec::new();
    for a in ansatz {
        let pm = PoissonStructure::new("ansatz", space.clone(), &[(0, 1, a.clone())])?;
        let m_part = tensor_bracket(&ax, &ay, &[&zero_g, &pm]);
        columns.push(alpha.apply(a).sub(&m_part));
    }
    let mut keys: Vec<Vec<Monomial>> = g_part.terms().map(|(k, _)| k.clone()).collect();
    for c in &columns {
        keys.extend(c.terms().map(|(k, _)| k.clone()));
    }
    keys.sort();
    keys.dedup();
    let coeff = |t: &TensorElement, k: &Vec<Monomial>| t.terms().find(|(m, _)| *m == k).map(|(_, c)| c.clone()).unwrap_or_default();
    let a: Vec<Vec<Scalar>> = keys.iter().map(|k| columns.iter().map(|c| coeff(c, k)).collect()).collect();
    let b: Vec<Scalar> = keys.iter().map(|k| coeff(&g_part, k)).collect();
    Ok(CovariantFamily { ansatz: ansatz.to_vec(), solution: solve_affine(&a, &b, ansatz.len()) })
}

/// Evaluation point for a Poisson matrix.
#[derive(Clone, Debug, Default)]
pub struct PoissonMatrixPoint {
    pub generators: BTreeMap<String, GaussRational>,
    pub params: BTreeMap<String, GaussRational>,
}

impl PoissonMatrixPoint {
    pub fn new(gens: &[(&str, GaussRational)], params: &[(&str, GaussRational)]) -> Self {
        PoissonMatrixPoint {
            generators: gens.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }
}

/// Exact value of an element at a point.
pub fn eval_at(x: &NCPoly, tower: &OreTower, point: &PoissonMatrixPoint) -> Result<GaussRational, PoissonError> {
    let mut vals = Vec::new();
    for g in tower.gens() {
        let v = point
            .generators
            .get(&g.name)
            .cloned()
            .ok_or_else(|| PoissonError::UnassignedGenerator(g.name.clone()))?;
        if g.invertible && v.is_zero() {
            return Err(PoissonError::ZeroInvertible(g.name.clone()));
        }
        vals.push(v);
    }
    let mut out = GaussRational::zero();
    for (m, c) in x.terms() {
        let mut t = c.eval(&point.params)?;
        for (l, &e) in m.exps().iter().enumerate() {
            let p = vals[l].pow(e.unsigned_abs());
            t = if e < 0 { t.checked_div(&p).ok_or(ScalarError::PoleAtPoint)? } else { &t * &p };
        }
        out = &out + &t;
    }
    Ok(out)
}

pub fn poisson_matrix(p: &PoissonStructure, point: &PoissonMatrixPoint) -> Result<Vec<Vec<GaussRational>>, PoissonError> {
    let n = p.len();
    let mut m = vec![vec![GaussRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = eval_at(p.entry(i, j), &p.tower, point)?;
        }
    }
    Ok(m)
}

/// Rank of the evaluated bracket matrix: the symplectic leaf dimension at the point.
pub fn poisson_matrix_rank(p: &PoissonStructure, point: &PoissonMatrixPoint) -> Result<usize, PoissonError> {
    Ok(rank(&poisson_matrix(p, point)?))
}

/// `X_f` has `j`-th component `{f, g_j}`.
pub fn hamiltonian_field(p: &PoissonStructure, f: &NCPoly) -> Vec<NCPoly> {
    (0..p.len()).map(|j| p.bracket(f, &p.gen(j))).collect()
}

/// Fields of all generators.
pub fn hamiltonian_fields(p: &PoissonStructure) -> Vec<Vec<NCPoly>> {
    (0..p.len()).map(|i| hamiltonian_field(p, &p.gen(i))).collect()
}

/// Checks `sum c_i X_{f_i} = 0`, with coefficient and function given as expressions.
pub fn field_relation_check(p: &PoissonStructure, id: &str, terms: &[(&str, &str)]) -> Result<CheckRecord, PoissonError> {
    let n = p.len();
    let mut total = vec![NCPoly::zero(); n];
    let mut anchor = Vec::new();
    for (coef, f) in terms {
        let c = parse_poly(coef, &p.tower).map_err(|e| PoissonError::Expr(coef.to_string(), e))?;
        let fx = parse_poly(f, &p.tower).map_err(|e| PoissonError::Expr(f.to_string(), e))?;
        for (j, comp) in hamiltonian_field(p, &fx).iter().enumerate() {
            total[j] = total[j].add(&p.tower.mul(&c, comp));
        }
        anchor.push(format!("({})*X[{}]", coef, f));
    }
    let ok = total.iter().all(|t| t.is_zero());
    let lhs = total
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.is_zero())
        .map(|(j, t)| format!("d/d{}: {}", p.tower.gens()[j].name, p.fmt(t)))
        .collect::<Vec<_>>()
        .join("; ");
    let mut r = CheckRecord::new(id, format!("{} = 0", anchor.join(" + ")))
        .sides(if ok { "0".to_string() } else { lhs.clone() }, "0")
        .verdict(ok);
    if !ok {
        r = r.witness(lhs);
    }
    Ok(r)
}

/// `vanish({g, a}) = 0` for every ideal generator `g` and algebra generator `a`.
pub fn poisson_ideal_check(
    p: &PoissonStructure,
    ideal_gens: &[NCPoly],
    vanish: &AlgebraMorphism,
) -> Result<CheckReport, PoissonError> {
    let mut rep = CheckReport::new(format!("poisson-ideal/{}/{}", p.name, vanish.name));
    for g in ideal_gens {
        if !vanish.apply(g).is_zero() {
            return Err(PoissonError::NotInKernel(p.fmt(g)));
        }
    }
    for g in ideal_gens {
        for a in 0..p.len() {
            let br = p.bracket(g, &p.gen(a));
            let img = vanish.apply(&br);
            let aname = &p.tower.gens()[a].name;
            let id = format!("poisson-ideal/{}/{}/{}", p.name, p.fmt(g), aname);
            let anchor = format!("{{{}, {}}} vanishes on the subgroup", p.fmt(g), aname);
            let ok = img.is_zero();
            let mut r = CheckRecord::new(id, anchor).sides(vanish.format(&img), "0").verdict(ok);
            if !ok {
                r = r.witness(format!("{{{}, {}}} = {} -> {}", p.fmt(g), aname, p.fmt(&br), vanish.format(&img)));
            }
            rep.push(r);
        }
    }
    Ok(rep)
}

use crate::ncalg::{NCPoly, OreTower, TensorElement};
use crate::scalars::{GaussRational, Scalar};

use super::ast::ExprAst;
use super::ExprError;

/// Elaborates into a tensor whose leg `i` lives in `towers[i]` (the last tower
/// is reused for any further legs). Plain elements come back with arity 1.
pub fn elaborate_expr(ast: &ExprAst, towers: &[&OreTower]) -> Result<TensorElement, ExprError> {
    assert!(!towers.is_empty(), "at least one tower");
    Elab { towers }.node(ast, 0)
}

/// Elaborates a plain (non-tensor) element.
pub fn elaborate_poly(ast: &ExprAst, tower: &OreTower) -> Result<NCPoly, ExprError> {
    let t = elaborate_expr(ast, &[tower])?;
    match t.to_poly() {
        Some(p) => Ok(p),
        None if t.is_zero() => Ok(NCPoly::zero()),
        None => Err(ExprError::ArityMismatch { expected: 1, found: t.arity() }),
    }
}

struct Elab<'a> {
    towers: &'a [&'a OreTower],
}

impl Elab<'_> {
    fn tower(&self, leg: usize) -> &OreTower {
        self.towers[leg.min(self.towers.len() - 1)]
    }

    fn scalar(&self, leg: usize, c: Scalar) -> TensorElement {
        TensorElement::from_poly(&self.tower(leg).scalar(c))
    }

    fn is_param(&self, name: &str) -> bool {
        self.towers.iter().any(|t| t.rules().contains(name))
    }

    fn node(&self, ast: &ExprAst, leg: usize) -> Result<TensorElement, ExprError> {
        match ast {
            ExprAst::Literal(r) => Ok(self.scalar(leg, Scalar::from_gauss(GaussRational::from_rational(r.clone())))),
            ExprAst::Imag => Ok(self.scalar(leg, Scalar::i())),
            ExprAst::Symbol(s) => self.symbol(s, 1, leg),
            ExprAst::Power(base, e) => {
                if let ExprAst::Symbol(s) = base.as_ref() {
                    return self.symbol(s, *e, leg);
                }
                debug_assert!(*e >= 0);
                let b = self.node(base, leg)?;
                let mut acc = self.one_like(&b, leg);
                for _ in 0..*e {
                    acc = self.mul(&acc, &b, leg)?;
                }
                Ok(acc)
            }
            ExprAst::Product(fs) => {
                let mut acc = self.node(&fs[0], leg)?;
                for f in &fs[1..] {
                    let x = self.node(f, leg)?;
                    acc = self.mul(&acc, &x, leg)?;
                }
                Ok(acc)
            }
            ExprAst::Sum(ts) => {
                let mut acc: Option<TensorElement> = None;
                for (neg, t) in ts {
                    let mut x = self.node(t, leg)?;
                    if *neg {
                        x = x.neg();
                    }
                    acc = Some(match acc {
                        None => x,
                        Some(a) => {
                            if a.arity() != x.arity() && !a.is_zero() && !x.is_zero() {
                                return Err(ExprError::ArityMismatch { expected: a.arity(), found: x.arity() });
                            }
                            let (a, x) = if a.is_zero() { (TensorElement::zero(x.arity()), x) } else { (a, x) };
                            a.add(&x)
                        }
                    });
                }
                Ok(acc.expect("nonempty sum"))
            }
            ExprAst::TensorProduct(legs) => {
                let mut acc: Option<TensorElement> = None;
                let mut at = leg;
                for l in legs {
                    let x = self.node(l, at)?;
                    at += x.arity();
                    acc = Some(match acc {
                        None => x,
                        Some(a) => a.concat(&x),
                    });
                }
                Ok(acc.expect("nonempty tensor"))
            }
        }
    }

    fn one_like(&self, x: &TensorElement, leg: usize) -> TensorElement {
        let towers: Vec<&OreTower> = (leg..leg + x.arity()).map(|l| self.tower(l)).collect();
        TensorElement::one(&towers)
    }

    fn mul(&self, a: &TensorElement, b: &TensorElement, leg: usize) -> Result<TensorElement, ExprError> {
        // a plain scalar multiplies a tensor of any arity
        if a.arity() != b.arity() {
            if let Some(c) = as_scalar(a) {
                return Ok(b.scale(&c));
            }
            if let Some(c) = as_scalar(b) {
                return Ok(a.scale(&c));
            }
            return Err(ExprError::ArityMismatch { expected: a.arity(), found: b.arity() });
        }
        let towers: Vec<&OreTower> = (leg..leg + a.arity()).map(|l| self.tower(l)).collect();
        Ok(a.mul(b, &towers))
    }

    fn symbol(&self, name: &str, e: i64, leg: usize) -> Result<TensorElement, ExprError> {
        let tower = self.tower(leg);
        if let Some(g) = tower.generator(name) {
            if e < 0 && !g.invertible {
                return Err(ExprError::NegativePower(name.to_string()));
            }
            let p = NCPoly::generator(tower.len(), g.level, e as i32);
            return Ok(TensorElement::from_poly(&p));
        }
        if let Some(p) = tower.named(name) {
            // alias of an inverse: `vb^e` = v^-e
            let (m, _) = p.as_term().expect("alias is a monomial");
            let level = m.top().expect("generator");
            let p = NCPoly::generator(tower.len(), level, -(e as i32));
            return Ok(TensorElement::from_poly(&p));
        }
        if self.is_param(name) {
            let c = Scalar::param(name).pow(e).map_err(ExprError::Scalar)?;
            return Ok(self.scalar(leg, c));
        }
        Err(ExprError::UnknownSymbol(name.to_string()))
    }
}

fn as_scalar(x: &TensorElement) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    let mut it = x.terms();
    let (ms, c) = it.next()?;
    (it.next().is_none() && ms.iter().all(|m| m.is_unit())).then(|| c.clone())
}

//! Text in, text out. The grammar:
//!
//! ```text
//! expr   := tterm (('+'|'-') tterm)*
//! tterm  := term ('(x)' term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' int)?
//! atom   := ident | rational | 'i' | '(' expr ')'
//! ```

mod ast;
mod elaborate;
mod format;
mod parser;

use thiserror::Error;

use crate::ncalg::{NCPoly, OreTower, TensorElement};
use crate::scalars::ScalarError;

pub use ast::ExprAst;
pub use elaborate::{elaborate_expr, elaborate_poly};
pub use format::{format_canonical, format_monomial, format_poly, format_tensor};
pub use parser::{parse_expr, MAX_EXPONENT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("negative power of non-invertible generator `{0}`")]
    NegativePower(String),
    #[error("expected a {expected}-leg value, found {found} legs")]
    ArityMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Parses and elaborates a plain element.
pub fn parse_poly(text: &str, tower: &OreTower) -> Result<NCPoly, ExprError> {
    elaborate_poly(&parse_expr(text)?, tower)
}

/// Parses and elaborates a tensor with the given per-leg towers.
pub fn parse_tensor(text: &str, towers: &[&OreTower]) -> Result<TensorElement, ExprError> {
    elaborate_expr(&parse_expr(text)?, towers)
}

/// Textual description of one tower level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelSpec {
    pub gen: String,
    pub invertible: bool,
    /// (lower generator, expression) pairs; omitted sigma entries default to identity.
    pub sigma: Vec<(String, String)>,
    pub delta: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("level `{level}`: {source}")]
    Expr { level: String, source: ExprError },
    #[error("level `{level}` has rule for `{lower}`, which is not a lower generator")]
    NotLower { level: String, lower: String },
    #[error(transparent)]
    Nc(#[from] crate::ncalg::NcError),
}

/// Builds a tower level by level; each level's rules are elaborated in the
/// tower of the generators below it, so forward references are unknown symbols.
pub fn build_tower(
    name: &str,
    params: Vec<crate::scalars::Parameter>,
    levels: &[LevelSpec],
) -> Result<OreTower, TowerError> {
    use crate::ncalg::{Generator, OreLevel};
    let gens: Vec<Generator> = levels
        .iter()
        .enumerate()
        .map(|(i, l)| Generator { name: l.gen.clone(), level: i, invertible: l.invertible })
        .collect();
    let n = gens.len();
    let mut data: Vec<OreLevel> = Vec::new();
    for (l, spec) in levels.iter().enumerate() {
        let mut lvl = OreLevel { sigma: vec![NCPoly::zero(); l], delta: vec![NCPoly::zero(); l] };
        if l > 0 {
            let below = OreTower::from_parts(name, params.clone(), gens[..l].to_vec(), data.clone())?;
            for (rules, target) in [(&spec.sigma, &mut lvl.sigma), (&spec.delta, &mut lvl.delta)] {
                for (lower, text) in rules {
                    let j = gens[..l].iter().position(|g| &g.name == lower).ok_or_else(|| TowerError::NotLower {
                        level: spec.gen.clone(),
                        lower: lower.clone(),
                    })?;
                    let p = parse_poly(text, &below)
                        .map_err(|source| TowerError::Expr { level: spec.gen.clone(), source })?;
                    target[j] = p;
                }
            }
        } else if !spec.sigma.is_empty() || !spec.delta.is_empty() {
            let lower = spec.sigma.iter().chain(&spec.delta).next().unwrap().0.clone();
            return Err(TowerError::NotLower { level: spec.gen.clone(), lower });
        }
        data.push(lvl);
    }
    let data = data
        .into_iter()
        .map(|l| OreLevel {
            sigma: l.sigma.iter().map(|p| p.resized(n)).collect(),
            delta: l.delta.iter().map(|p| p.resized(n)).collect(),
        })
        .collect();
    Ok(OreTower::from_parts(name, params, gens, data)?)
}

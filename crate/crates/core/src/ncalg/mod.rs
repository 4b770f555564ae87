//! Iterated skew-polynomial algebras: normal forms, products, confluence,
//! graded degrees and linear-span solving.

mod diamond;
mod poly;
mod rewrite;
mod tensor;
mod tower;

use thiserror::Error;

use crate::linalg::solve_affine;
use crate::scalars::{Scalar, ScalarError};

pub use diamond::{diamond_check, overlap_words, word_name};
pub use poly::{Monomial, NCPoly};
pub use rewrite::{derived_relations, mono_word, Letter, Relation, Rewriter, Strategy, Word, WordPoly};
pub use tensor::TensorElement;
pub use tower::{Generator, OreLevel, OreTower};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    #[error("presentation has no generators")]
    EmptyTower,
    #[error("generator `{0}` is out of level order")]
    BadLevel(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` is invertible but not at level 0")]
    InvertibleAboveBase(String),
    #[error("level `{level}` refers to `{generator}`, which is not below it")]
    ForwardReference { level: String, generator: String },
    #[error("sigma of invertible `{generator}` at level `{level}` is not an invertible monomial")]
    NonInvertibleSigma { level: String, generator: String },
    #[error("tower is not confluent: word `{word}` reduces to `{left}` and `{right}`")]
    NotConfluent { word: String, left: String, right: String },
    #[error("rewriting exceeded {0} steps")]
    RewriteLimit(usize),
    #[error("graded degree of the zero element is undefined")]
    ZeroDegree,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub fn nc_mul(tower: &OreTower, p: &NCPoly, q: &NCPoly) -> NCPoly {
    tower.mul(p, q)
}

pub fn commutator(tower: &OreTower, p: &NCPoly, q: &NCPoly) -> NCPoly {
    tower.mul(p, q).sub(&tower.mul(q, p))
}

/// Normal form of a raw word product, by rewriting.
pub fn normal_form(tower: &OreTower, w: &WordPoly) -> Result<NCPoly, NcError> {
    Rewriter::new(tower).normalize(w, Strategy::Leftmost)
}

/// Maximal exponent of the generator at `level` over the support.
pub fn graded_degree(x: &NCPoly, level: usize) -> Result<u32, NcError> {
    x.max_exp(level).map(|e| e.max(0) as u32).ok_or(NcError::ZeroDegree)
}

/// Coefficients expressing `x` in the span of `basis`, or `None` when outside it.
/// When the basis is dependent the particular solution with free coordinates zero is returned.
pub fn span_solve(x: &NCPoly, basis: &[NCPoly]) -> Option<Vec<Scalar>> {
    let mut monos: Vec<&Monomial> = x.terms().map(|(m, _)| m).collect();
    for b in basis {
        monos.extend(b.terms().map(|(m, _)| m));
    }
    monos.sort();
    monos.dedup();
    let a: Vec<Vec<Scalar>> = monos.iter().map(|m| basis.iter().map(|b| b.coeff(m)).collect()).collect();
    let rhs: Vec<Scalar> = monos.iter().map(|m| x.coeff(m)).collect();
    solve_affine(&a, &rhs, basis.len()).map(|s| s.particular)
}

/// Whether the list is linearly independent over the scalars.
pub fn independent(basis: &[NCPoly]) -> bool {
    let mut monos: Vec<&Monomial> = basis.iter().flat_map(|b| b.terms().map(|(m, _)| m)).collect();
    monos.sort();
    monos.dedup();
    let a: Vec<Vec<Scalar>> = monos.iter().map(|m| basis.iter().map(|b| b.coeff(m)).collect()).collect();
    crate::linalg::rank(&a) == basis.len() && basis.iter().all(|b| !b.is_zero())
}

/// Runs the diamond check and turns the first failure into an error.
pub fn assert_confluent(tower: &OreTower) -> Result<(), NcError> {
    let rep = diamond_check(tower, 3);
    match rep.first_failure() {
        None => Ok(()),
        Some(r) => Err(NcError::NotConfluent {
            word: r.witness.clone().unwrap_or_default(),
            left: r.lhs_canonical.clone(),
            right: r.rhs_canonical.clone(),
        }),
    }
}


use num_rational::BigRational;

/// Parse tree of the expression grammar. Products keep their order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    /// Signed summands; `true` marks a subtracted term.
    Sum(Vec<(bool, ExprAst)>),
    Product(Vec<ExprAst>),
    Power(Box<ExprAst>, i64),
    TensorProduct(Vec<ExprAst>),
    Symbol(String),
    Literal(BigRational),
    /// The imaginary unit.
    Imag,
}

impl ExprAst {
    pub fn symbol(name: &str) -> Self {
        ExprAst::Symbol(name.to_string())
    }

    /// Number of tensor legs at the top of the tree.
    pub fn arity(&self) -> usize {
        match self {
            ExprAst::TensorProduct(legs) => legs.iter().map(|l| l.arity()).sum(),
            ExprAst::Sum(ts) => ts.first().map(|(_, t)| t.arity()).unwrap_or(1),
            ExprAst::Product(fs) => fs.iter().map(|f| f.arity()).max().unwrap_or(1),
            ExprAst::Power(b, _) => b.arity(),
            _ => 1,
        }
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero operator")]
    ZeroOperator,
    #[error("operator of order {0} where order >= 1 is required")]
    OrderTooSmall(i64),
    #[error("order cap k = {k} is below the operator order {r}")]
    CapBelowOrder { k: usize, r: usize },
    #[error("trailing coefficient is zero; normalize the operator first")]
    ZeroTrailing,
    #[error("polynomial vanishes at x = 0")]
    VanishesAtZero,
    #[error("polynomial has no positive x-degree")]
    ConstantInX,
    #[error("expected a polynomial with coefficients in Q[q, x]")]
    NotPolynomial,
    #[error("coefficient {index} vanishes at n = {n}")]
    SingularAt { index: i64, n: i64 },
    #[error("missing initial value for n = {0}")]
    MissingInitial(i64),
    #[error("{0}")]
    Precondition(String),
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

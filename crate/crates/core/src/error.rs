use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of two zero forms is undefined")]
    GcdOfZeroForms,
    #[error("{0}: the zero form is not allowed here")]
    ZeroForm(&'static str),
    #[error("a linear form needs a nonzero coefficient")]
    ZeroLinearForm,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("monomial {monomial} has weighted degree {degree}, expected 10")]
    WrongDegree { monomial: String, degree: usize },
    #[error("invalid input document: {0}")]
    Document(String),
    #[error("the z^5 coefficient vanishes; the equation is not of the expected form")]
    DegenerateLeading,
    #[error("input is not in normal form (needs q4 = 0 and q5 = 1)")]
    NotNormalForm,
    #[error("{0} requires exact coefficients")]
    ExactRequired(&'static str),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::exactalg::AlgebraError;
use crate::odeanalysis::Place;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("an operator needs order at least 1")]
    EmptyOperator,
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("operator is not Fuchsian at {0}")]
    NotFuchsianAt(Place),
    #[error("operator is not Fuchsian at {0}")]
    NotFuchsian(Place),
    #[error("fewer than {order} rational exponents at {place}")]
    NonRationalExponent { place: Place, order: usize },
    #[error("map is constant")]
    DegenerateMap,
    #[error("operator orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("expected an operator of order {expected}, got order {got}")]
    WrongOrder { expected: usize, got: usize },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("operator is not of the form y'' - f y")]
    NotInReducedForm,
    #[error("potential f is zero")]
    ZeroPotential,
    #[error("basis is empty")]
    EmptyBasis,
    #[error("no rational solutions of the degree-{degree} symmetric power ({which})")]
    NoInvariants { which: &'static str, degree: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("group order must be positive")]
    ZeroGroupOrder,
    #[error("the delta identity needs order at least 2")]
    OrderOne,
}

pub type Result<T> = std::result::Result<T, Error>;

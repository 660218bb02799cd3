use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("car {car} prefers spot {pref}, outside the street 1..={spots}")]
    PreferenceOutOfRange {
        car: usize,
        pref: usize,
        spots: usize,
    },

    #[error("preference list is not a parking function")]
    NotAParkingFunction,

    #[error("restriction set is empty")]
    EmptyRestriction,

    #[error("invalid restriction set: {0}")]
    InvalidRestriction(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("intermediate value {0} is not an integer")]
    NonIntegerIntermediate(String),

    #[error("restriction set must contain 1")]
    MissingOne,

    #[error("preference list is not a prime parking function")]
    NotPrime,

    #[error("prime parking function on {0} cars has {0} in its image")]
    ImageContainsN(usize),

    #[error("preference list is not a parking function restricted to T")]
    NotInT,

    #[error("preference list is not a parking function restricted to the given set")]
    NotRestricted,

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("car {car} prefers spot {pref}, which is not 1 mod g")]
    BadModularPreference { car: usize, pref: usize },

    #[error("circular segment of length {0} is not a multiple of the row size")]
    NotBlockAligned(usize),

    #[error("search space of {required} lists exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

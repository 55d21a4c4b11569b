use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid route: {0}")]
    InvalidRoute(String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex iteration limit reached")]
    IterationLimit,
    #[error("pricing refinement exceeded its bound of {0} rounds")]
    RefinementBound(usize),
    #[error("bound ordering broken: lower bound {lb} exceeds upper bound {ub}")]
    BoundOrder { lb: f64, ub: f64 },
    #[error("enumeration too large: about {0} states")]
    EnumerationTooLarge(u64),
    #[error("no feasible route found for extant robot {0}")]
    ExtantUnroutable(usize),
    #[error("{0} items exceed the supported maximum of 128")]
    TooManyItems(usize),
}

//! Independent checks: a solution validator, exhaustive route enumeration
//! for tiny instances, and the exact LP and ILP optima over that enumeration.

mod enumerate;
mod exact;
mod lp;
mod validate;

pub use enumerate::{count_walk_states, enumerate_routes, EnumerationCaps, STATE_GUARD};
pub use exact::{solve_exact, solve_exact_over, ExactSolution};
pub use lp::{full_lp, min_reduced_cost, oracle_reduced_cost};
pub use validate::{validate_solution, ValidationReport, Violation, ViolationKind};

//! Lie–Poisson phase space of residues and the integrable-system checks on it.
//!
//! Coordinates are the entries of the residues `A_1, ..., A_k`; entry
//! `(A_i)_{ab}` is variable `i*n*n + a*n + b`. The constant term of `hhat`
//! is a fixed parameter.

pub mod bracket;
pub mod darboux;
pub mod flow;
pub mod hamiltonians;
pub mod invariants;
pub mod phase;

pub use bracket::{lie_poisson_bracket, lie_poisson_numeric};
pub use darboux::{darboux_check, DarbouxReport};
pub use flow::{hamiltonian_flow, observed_order, FlowReport};
pub use hamiltonians::{hamiltonians, hamiltonians_with, HamiltonianSet};
pub use invariants::{casimirs, involution_check, leaf_and_casimir_check, BracketEntry, BracketReport};
pub use phase::{Layout, PhasePoint};

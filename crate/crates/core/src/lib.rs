pub mod error;
pub mod harness;
pub mod oscillator;
pub mod quadrature;
pub mod resummation;
pub mod square_well;
pub mod zeta;

use serde::{Deserialize, Serialize};

/// Which regulated kernel a distributional action integrates against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Operator {
    Identity,
    Hamiltonian,
}

//! Compile multiplicative proof nets to stabilizer codes, eliminate cuts,
//! and certify each reduction step as a correction between codes.

pub mod cli;
pub mod compiler;
pub mod correction;
pub mod fock;
pub mod formula;
pub mod generate;
pub mod linalg;
pub mod majorana;
pub mod net;
pub mod pauli;
pub mod sparse;

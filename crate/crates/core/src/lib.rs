//! Deterministic coefficient-flow engine plus Monte-Carlo harness for three
//! exactly solvable dissipative models: the classical Ornstein-Uhlenbeck
//! velocity process, a damped oscillator with phase-invariant (rotating-wave)
//! system-bath coupling, and a position-coupled oscillator with commutative
//! noise. The quantum models live in a thermo-field doubled representation
//! where every operator identity of the stochastic calculus — canonical
//! commutator preservation, fluctuation-dissipation relations, martingale
//! non-commutativity, input/output field consistency — becomes a
//! machine-checkable computation on finitely supported coefficient vectors.

pub mod error;
pub mod expectation;
pub mod grid;
pub mod hamiltonian;
pub mod labels;
pub mod linear;
pub mod noise;
pub mod quadratic;

pub use error::{Error, Result};
pub use grid::TimeGrid;
pub use labels::{Model, NoiseKind, NoiseLabel, SystemLabel};
pub use linear::{commutator_linear, LinearOp};
pub use noise::NoiseTables;
pub use quadratic::{multiply_contract, MixedBilinearOp, NoiseSide, QuadraticOp};

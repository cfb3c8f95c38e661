//! FQErgo: feedback-based ergotropy estimation on small qubit registers.
//!
//! The crate simulates a Lyapunov-control loop that drives a density matrix
//! toward its passive state while reading every control amplitude and energy
//! either exactly or through an ancilla-probe interferometric circuit. The
//! energy released on the way down is the ergotropy estimate; an exact
//! spectral oracle provides ground truth for validation.
//!
//! Modules, bottom up:
//! - [`linalg`]: dense complex matrices, Hermitian eigensolver, matrix
//!   exponentials of Hermitian generators.
//! - [`states`]: density-matrix construction, validation, partial trace,
//!   fidelity, entropy, and a text serialization format.
//! - [`hamiltonians`]: the one- and two-qubit system Hamiltonians, drive
//!   sets, and the tilted phase gate.
//! - [`oracle`]: exact passive states, ergotropy, local ergotropy (two
//!   definitions), and the ergotropy gap.
//! - [`probe`]: ancilla-probe expectation-value circuits with optional shot
//!   noise.
//! - [`feedback`]: the iterative feedback engine and trajectory recording.
//! - [`experiments`]: scripted suites (single-qubit, two-qubit, entangled
//!   family, step-size sweep) with reproducible seeding.
//!
//! Conventions used throughout: qubit 0 is the leftmost tensor factor (the
//! most significant bit of a basis-state index), Pauli operators have
//! eigenvalues ±1, ħ = 1, and ω₀ = 1 sets the energy scale unless stated
//! otherwise. Entropies are in bits (log base 2).

pub mod experiments;
pub mod feedback;
pub mod hamiltonians;
pub mod linalg;
pub mod oracle;
pub mod probe;
pub mod rng;
pub mod states;

pub use linalg::{adjoint_action, hermitian_eig, kron, unitary_from_generator, ComplexMatrix, HermitianEig};
pub use states::DensityMatrix;

//! Dense complex linear algebra on labeled multi-qubit registers.

mod density;
mod eigen;
mod entropy;
mod operator;
mod register;

pub use density::{DensityMatrix, Projection};
pub use eigen::{eig_hermitian, spectrum, EigenDecomposition};
pub use entropy::{entropy_of_spectrum, von_neumann_entropy, EntropyBase};
pub use operator::{kron, ComplexOperator, C64};
pub use register::{Register, Role, Subsystem};

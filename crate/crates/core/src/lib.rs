//! Exact computations with Brauer algebras acting on symplectic tensor space.

pub mod bmw;
pub mod characters;
pub mod diagrams;
pub mod experiments;
pub mod hyperalg;
pub mod linalg;
pub mod scalars;
pub mod tensor;

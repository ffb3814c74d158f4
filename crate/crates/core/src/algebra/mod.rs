//! Real matrix substrate: commutators, scalar embeddings, structure
//! constants and Gram matrices.

pub mod embed;
pub mod gram;
pub mod matrix;
pub mod structure;

pub use embed::{embed_complex, embed_quaternion, embed_quaternion_at, ComplexMatrix, Quaternion, ScalarField, ScalarUnit};
pub use gram::{gram_matrix, AmbientKilling, BilinearForm};
pub use matrix::{bracket, skew_unit, sym_unit, RealMatrix};
pub use structure::{extract_structure_constants, BasisSet, StructureTensor, CLOSURE_TOL};

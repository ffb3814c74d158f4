//! Metric solvable Lie algebras of noncompact symmetric spaces.
//!
//! The crate builds the solvable part `s = a ⊕ n` of an Iwasawa
//! decomposition from explicit matrix bases for five families
//! (`so(p,q)`, `su(p,q)`, `sp(p,q)`, `so*(2n)`, `sl(n,ℍ)`), transforms it by
//! attaching (restricting to a parabolic grading) and associating (twisting
//! bracket signs by √−1), and computes the Levi-Civita connection, sectional
//! and Ricci curvature of the resulting left-invariant metrics.
//!
//! ```
//! use solvcurv::{build_symmetric, curvature::einstein_check, Family};
//!
//! let (s, _) = build_symmetric(Family::Orthogonal { p: 3, q: 5 }).unwrap();
//! let check = einstein_check(&s, 1e-9);
//! assert!(check.pass && check.constant < 0.0);
//! ```

pub mod algebra;
pub mod builders;
pub mod curvature;
pub mod error;
pub mod format;
pub mod io;
pub mod pipeline;
pub mod roots;
pub mod solv;
pub mod transforms;

pub use builders::{association_flags, build_symmetric, count_constructions, AmbientRealization, FlagChoice, SignFlagAssignment};
pub use error::{Error, Result};
pub use roots::{CharacteristicElement, Family, RootSystem};
pub use solv::MetricSolvLieAlgebra;
pub use transforms::{associate, attach, commute_check};

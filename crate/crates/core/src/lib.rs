//! Exact Cech cohomology of torus-equivariant twisted D-modules on the
//! projective line.
//!
//! The crate is organised bottom-up:
//!
//! * [`weylops`]: one-variable Weyl algebra arithmetic in normal order, formal
//!   adjoints, the coordinate inversion `x ↦ 1/x`, and reduction of operators
//!   against the two kinds of cyclic presentations used for chart modules.
//! * [`charts`]: for each extension kind, its presentation on `C_x`, `C_z` and
//!   `C^×`, the restriction maps into `C^×` and the `λ`-twisted `sl₂` operators.
//! * [`cech`]: the weight-graded two-term Cech complex and its cohomology as
//!   [`WeightModule`]s.
//! * [`sl2cat`]: catalog constructors (Verma, dual Verma, finite-dimensional
//!   simples, relaxed modules `R(λ,α)`), the functors `(·)⁻` and `(·)^∨`, and
//!   identification by ladder signature.
//! * [`verify`] and [`cli`]: the verification table and the command-line
//!   front end.
//!
//! All arithmetic is over exact rationals.

pub mod cech;
pub mod charts;
pub mod cli;
pub mod linalg;
pub mod scalar;
pub mod sl2cat;
pub mod verify;
pub mod weights;
pub mod weylops;

pub use cech::{build_complex, cohomology, verify_chain_map, CechComplex};
pub use charts::{ChartId, ExtensionKind};
pub use scalar::Q;
pub use sl2cat::CatalogName;
pub use weights::{WeightModule, WeightWindow};
pub use weylops::{Coord, CyclicPresentation, DiffOp};

//! Exact-arithmetic toolkit for the linear algebra of one-parameter
//! degenerations: monodromy weight filtrations of nilpotent operators,
//! (polarized) mixed Hodge structure validation, Deligne splittings and
//! sl(2) data, graded cohomology rings with Schubert products, Weyl
//! dimension counts, Clemens-Schmid rank bookkeeping, and the Severi
//! catalogue tying all of it to the secant-cubic degenerations.
//!
//! Everything runs over the rationals or the Gaussian rationals; no
//! floating point is used anywhere. Each `examples/` program exercises one
//! capability end to end, and the `hodge-limits` binary exposes the same
//! operations as subcommands over JSON files.

pub mod bilinear;
pub mod boundary;
pub mod cli;
pub mod degeneration;
pub mod error;
pub mod hodge;
pub mod io;
pub mod matrix;
pub mod report;
pub mod rings;
pub mod scalar;
pub mod schubert;
pub mod severi;
pub mod sl2;
pub mod subspace;
pub mod weight;
pub mod weyl;

pub use bilinear::{BilinearForm, Symmetry};
pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use report::{Check, Verdict};
pub use scalar::Scalar;
pub use subspace::Subspace;

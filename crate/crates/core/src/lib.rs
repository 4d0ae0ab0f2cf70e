//! Hermitian self-dual generalized Reed–Solomon codes over `F_{q²}`.
//!
//! The crate is layered bottom-up:
//!
//! * [`gf`] builds the field tower `F_p ⊂ F_q ⊂ F_{q²}` with table-driven arithmetic.
//! * [`poly`] and [`matrix`] provide dense polynomials and linear algebra over it.
//! * [`grs`] models `GRS_{n,k}(α, v)` codes, their Hermitian Gram matrix and an
//!   exhaustive minimum-distance oracle.
//! * [`construct`] implements the two explicit families of self-dual codes
//!   (evaluation points on an affine `F_q`-line, or on a norm circle) and the
//!   degree criterion over `F_{q²}[x]/(G)`.
//! * [`search`] is an independent brute-force layer: solvability of the
//!   Hermitian orthogonality system over `F_q*`, Δ-sequence recurrences and the
//!   classification of admissible evaluation sets.
//! * [`cli`] holds the JSON documents and the command-line front end.

pub mod cli;
pub mod construct;
mod error;
pub mod gf;
pub mod grs;
mod limits;
pub mod matrix;
pub mod poly;
pub mod search;

pub use error::{Error, Result};
pub use gf::{Elt, FieldTower};
pub use grs::{Certificate, GrsCode, Witness};
pub use limits::Limits;
pub use matrix::Mat;
pub use poly::Poly;

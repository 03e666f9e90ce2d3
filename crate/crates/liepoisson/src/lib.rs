//! Homogeneous Poisson structures on Hermitian symmetric spaces and their
//! compact duals, for the families `SU(p,q)/S(U(p)xU(q))` (GRASS) and the
//! group case `SL(n,C)/SU(n)` (GROUP).
//!
//! All algebra lives in block-diagonal complex matrices: a GRASS(p,q)
//! element is one `(p+q)x(p+q)` block, a GROUP(n) pair `(Z1, Z2)` is stored
//! as `diag(Z1, Z2)`.

pub mod error;
pub mod linalg;
pub mod lie_core;
pub mod json;
pub mod factorization;
pub mod weyl;
pub mod hamiltonian;
pub mod noncompact;
pub mod compact;
pub mod group_case;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
pub use lie_core::{Kind, SpaceInstance};
pub use linalg::{Mat, C64};

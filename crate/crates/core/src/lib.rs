//! Exact characters of (parabolic, higher-order) Verma modules over sums of
//! type-A Lie algebras, restricted Kostant partition functions, flow-polytope
//! volumes and Lorentzian / log-concavity certificates.

pub mod cert;
pub mod characters;
pub mod error;
pub mod flow;
pub mod kpf;
pub mod lie;
pub mod matrix;
pub mod poly;
pub mod symfun;

pub use error::{Error, Result};
pub use poly::{Rational, SparsePoly};

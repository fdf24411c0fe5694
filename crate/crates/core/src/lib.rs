//! Generic regular decompositions of parametric polynomial systems.
//!
//! A parametric system `P` in variables `X` with parameters `U` is split into
//! finitely many regular systems `[T, H]` together with a polynomial `B` in the
//! parameters alone. The decomposition describes the solutions of `P` over
//! the algebraic closure of `Q(U)`, and stays valid, with every regular
//! system keeping its shape, after substituting any parameter value at which
//! `B` does not vanish.
//!
//! The [`verify`] module is an independent oracle that checks these claims by
//! enumerating points over small prime fields.

pub mod error;
pub mod grd;
pub mod io;
pub mod poly;
pub mod regchain;
pub mod regularize;
pub mod triset;
pub mod verify;

pub use error::{Error, Result};
pub use grd::{rdu, tstors, GrdResult};
pub use poly::{parse_polynomial, Context, Polynomial, Var};
pub use regchain::RegularSystem;
pub use triset::{AscendingChain, WuDecomposition};

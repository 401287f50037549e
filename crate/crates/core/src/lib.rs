//! Exact symbolic engine for the Takiff algebra `sl2 ⊗ C[t]/(t^2)`: its
//! `U(hb)`-free module families, highest-weight modules, tensor products and
//! induced-module realizations, with verification routines for each.

pub mod error;
pub mod family;
pub mod highest_weight;
pub mod induced;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod skew;
pub mod suite;
pub mod tensor;
pub mod uea;

pub use error::{Error, Result};
pub use family::{Family, FamilyParams};
pub use poly::{BiPoly, UniPoly};
pub use report::{Report, Status};
pub use scalar::Scalar;
pub use skew::SkewOperator;
pub use uea::{GenSymbol, UeaElement};

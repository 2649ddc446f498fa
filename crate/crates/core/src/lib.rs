//! Divisor-sum functions on polynomials over F_p and F_{p^2}, and searches
//! for bi-unitary perfect splitting polynomials.

pub mod bup;
pub mod cli;
pub mod divfun;
pub mod error;
pub mod field;
pub mod omega;
pub mod poly;
pub mod search;
pub mod syntax;

pub use bup::{classify_bup, is_bup, is_perfect, translate, BupClass, BupKind};
pub use divfun::{gcd_u, sigma_map, DivisorSum, FactoredPoly, SplittingPoly};
pub use error::{Error, Result};
pub use field::{Ext, FieldCtx, FieldElem};
pub use omega::{omega_sets, split_class, OmegaSets, SplitClass};
pub use poly::Poly;

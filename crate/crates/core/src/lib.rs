//! Exact computations with proper polynomial maps between unit balls,
//! carried out on the Hermitian coefficient forms of their squared norms.
//!
//! Everything here uses exact rational or Gaussian-rational arithmetic; the
//! crate needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod catalog;
pub mod error;
pub mod family;
pub mod form;
pub mod index;
pub mod jets;
pub mod linalg;
pub mod map;
pub mod num;
pub mod poly;
pub mod quadruple;
pub mod rational_map;
pub mod real_form;
pub mod roots;
pub mod zeros;

pub use error::{Error, Result};
pub use form::{HermForm, PsdCertificate, Verdict};
pub use index::MultiIndex;
pub use map::PolyMap;
pub use num::{Cq, Q};
pub use poly::Poly;
pub use real_form::RealForm;

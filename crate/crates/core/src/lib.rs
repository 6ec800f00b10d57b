//! Renormalized singular integrals of cubic and quartic binary forms, with
//! exact checks of the operator identities their discriminants satisfy.
//!
//! * [`poly`]: univariate polynomials, discriminants by two routes, the
//!   quartic quantity `E = c² − 3bd + 12ae`, real-root isolation.
//! * [`symbolic`]: exact polynomials in `a..e` and the identity checker.
//! * [`special`]: Gamma and Beta, plus the cubic closed-form constants.
//! * [`quadrature`]: DE quadrature, renormalized integrals, box integrals.
//! * [`experiments`]: the verification and refutation studies.
//! * [`cli`]: command-line front end and report serialization.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod experiments;
pub mod poly;
pub mod quadrature;
pub mod special;
pub mod symbolic;

pub use error::{Error, Result};

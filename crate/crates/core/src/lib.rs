//! Exact lattice and glue-code computations for order-3 orbifolds of
//! Niemeier lattice VOAs.
//!
//! Layering, bottom up: [`exactmat`] → [`lattice`] → [`roots`] and
//! [`terncode`] → [`catalog`] → [`orbifold`], with [`liealg`] holding the
//! Lie-theoretic tables used for candidate types and Schellekens matching.
#![allow(clippy::needless_range_loop)]

pub mod exactmat;
pub mod json;
pub mod lattice;
pub mod roots;
pub mod terncode;
pub mod catalog;
pub mod liealg;
pub mod orbifold;

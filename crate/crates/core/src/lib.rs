//! Binary sequential locally repairable codes.
//!
//! An `[n, k]` binary code is an `(n, k, r, t)`-SLRC when every erasure
//! pattern of at most `t` coordinates can be repaired one coordinate at a
//! time, each repair reading at most `r` symbols that are either intact or
//! already repaired. This crate provides:
//!
//! - [`gf2`]: packed GF(2) matrices, row reduction and low-weight dual
//!   codeword enumeration;
//! - [`engine`]: recovering sets, exhaustive sequential/parallel
//!   recoverability checks, repair planning and erasure decoding;
//! - [`product`]: the punctured product-code family indexed by base-`(r+1)`
//!   digit strings;
//! - [`config`]: codes built from resolvable configurations;
//! - [`graph`]: repair graphs, source minimisation and rate bounds.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! multi-threaded scans live in the companion `slrc` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bits;
pub mod budget;
pub mod code;
pub mod combin;
pub mod config;
pub mod engine;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod product;

pub use budget::Budget;
pub use code::LinearCode;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, SupportSet};

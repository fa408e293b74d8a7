//! Gilbert-Varshamov type existence bounds for asymmetric quantum codes.
//!
//! An `[[n, k, dx, dz]]_q` code detects every bit error of weight at most
//! `dx - 1` and every phase error of weight at most `dz - 1`. This crate
//!
//! * evaluates the finite-length existence conditions for CSS and stabilizer
//!   codes in exact rational arithmetic ([`bounds`]),
//! * evaluates their asymptotic rate/distance regions ([`asymptotic`]),
//! * checks the underlying counting identities by exhaustive enumeration and
//!   finds witness codes by random sampling with brute-force verification
//!   ([`codesearch`]), on top of dense prime-field linear algebra ([`galois`]).
//!
//! The `asymgv` binary wraps everything in [`cli`].

pub mod asymptotic;
pub mod bounds;
pub mod cli;
pub mod codefile;
pub mod codesearch;
pub mod error;
pub mod galois;

pub use error::{Error, Result};

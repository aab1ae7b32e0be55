//! Exact arithmetic for imaginary quadratic fields of the shape
//! `Q(sqrt(q^2 - p^n))` and the Diophantine machinery needed to check
//! class-number divisibility claims about them at desk scale.
//!
//! Everything here is exact: integer arithmetic either uses checked
//! fixed-width operations that fail hard on overflow or arbitrary
//! precision, never silent wraparound. All public functions are pure,
//! so values can be shared freely across threads.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI
//! live in the companion `classnum-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diokit;
pub mod fieldcase;
pub mod intarith;
pub mod quadforms;

use alloc::string::String;
use core::fmt;

/// Errors shared by the arithmetic modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside an operation's domain (zero where nonzero
    /// is required, an even number where an odd one is required, ...).
    InvalidArgument(String),
    /// `q^2 >= p^n`, so the field `Q(sqrt(q^2 - p^n))` is not imaginary.
    SizeViolation { p: u64, q: u64, n: u32 },
    /// Checked fixed-width arithmetic overflowed.
    Overflow(&'static str),
    /// The prime `p` is inert in `Q(sqrt(D))`: no form of norm `p` exists.
    Inert { d: i64, p: u64 },
    /// Two forms with different discriminants cannot be composed.
    DiscriminantMismatch { left: i64, right: i64 },
    /// An internal invariant was violated; this indicates a bug.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::SizeViolation { p, q, n } => {
                write!(f, "size violation: q^2 >= p^n for (p, q, n) = ({p}, {q}, {n})")
            }
            Error::Overflow(what) => write!(f, "integer overflow in {what}"),
            Error::Inert { d, p } => write!(f, "prime {p} is inert in Q(sqrt({d}))"),
            Error::DiscriminantMismatch { left, right } => {
                write!(f, "discriminant mismatch: {left} vs {right}")
            }
            Error::Internal(what) => write!(f, "internal consistency failure: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

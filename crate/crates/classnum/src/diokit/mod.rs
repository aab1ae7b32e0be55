//! Desk-scale Diophantine machinery: Fibonacci/Lucas sequences, the
//! exceptional sets attached to the Ramanujan–Nagell-type equation
//! `D1 x^2 + D2 = lambda^2 p^y` with a bounded solution counter, the
//! Lucas-square and repunit-square scans, and the exact power tests
//! used to rule out `alpha` being an `ell`-th power in a quadratic
//! integer ring.
//!
//! Everything that can grow past 64 bits runs on arbitrary-precision
//! integers, so the scans are exact at any bound.

mod bugeaud_shorey;
mod roots;
mod sequences;

pub use bugeaud_shorey::{
    bs_consistency, count_bs_solutions, in_set_e, in_set_f, in_set_g, in_set_h, BSInstance,
    BSSolutionSet, BsSolution, BsVerdict, HMembership, DEFAULT_R_MAX, DEFAULT_S_MAX,
};
pub use roots::{prop1_member, prop2_find_root, RootCandidate};
pub use sequences::{cohn_scan, f_triples, fibonacci, ljunggren_scan, lucas};

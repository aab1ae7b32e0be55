//! The exceptional families outside which `D1 x^2 + D2 = lambda^2 p^y`
//! has at most one positive solution `(x, y)`, and an exhaustive bounded
//! counter for that equation.
//!
//! `lambda` ranges over `{1, sqrt(2), 2}` and is stored as
//! `lambda^2 in {1, 2, 4}` so that all arithmetic stays integral. The
//! four families:
//!
//! * `E`: seven explicit sporadic tuples `(lambda, D1, D2, p)`;
//! * `F`: triples `(F_{k-2e}, L_{k+e}, F_k)` of Fibonacci/Lucas numbers;
//! * `G`: triples `(1, 4p^r - 1, p)`;
//! * `H`: triples `(D1, D2, p)` of mutually coprime positive integers
//!   admitting `r, s >= 1` with `D1 s^2 + D2 = lambda^2 p^r` and
//!   `3 D1 s^2 - D2 = +-lambda^2`.
//!
//! The prime `p` must be odd except when `lambda = 2`, where `p = 2` is
//! allowed. `H` membership looks unbounded but is decidable: the second
//! equation pins `s^2 = (D2 +- lambda^2) / (3 D1)`, leaving at most two
//! candidate `s`, and the first equation then fixes `r` by stripping
//! powers of `p`. The search-bound parameters only cap which witnesses
//! may be *reported*; a tuple whose pinned witness exceeds them comes
//! back as undetermined rather than absent.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::intarith::{gcd_u64, is_prime, is_square, isqrt};
use crate::{Error, Result};

use super::sequences::{fibonacci, lucas};

/// Default cap on the reported exponent witness `r` of an `H` tuple.
pub const DEFAULT_R_MAX: u32 = 40;
/// Default cap on the reported base witness `s` of an `H` tuple.
pub const DEFAULT_S_MAX: u64 = 1_000_000;

/// The seven sporadic tuples, with `lambda` encoded as `lambda^2`.
const SET_E: [(u8, u64, u64, u64); 7] = [
    (4, 13, 3, 2),
    (2, 7, 11, 3),
    (1, 2, 1, 3),
    (4, 7, 1, 2),
    (2, 1, 1, 5),
    (2, 1, 1, 13),
    (4, 1, 3, 7),
];

/// Membership in the sporadic set `E`.
pub fn in_set_e(lambda_sq: u8, d1: u64, d2: u64, p: u64) -> bool {
    SET_E.contains(&(lambda_sq, d1, d2, p))
}

/// Membership in `F`: is `(d1, d2, p)` of the form `(F_{k-2e}, L_{k+e}, F_k)`?
pub fn in_set_f(d1: u64, d2: u64, p: u64) -> bool {
    let (d1, d2, p) = (BigUint::from(d1), BigUint::from(d2), BigUint::from(p));
    let mut k = 2u32;
    loop {
        for (first, second) in [
            (fibonacci(k - 2), lucas(k + 1)),
            (fibonacci(k + 2), lucas(k - 1)),
        ] {
            if first == d1 && second == d2 && fibonacci(k) == p {
                return true;
            }
        }
        // All coordinates are nondecreasing in k from here on.
        if k >= 4 && fibonacci(k - 2) > d1 && lucas(k - 1) > d2 && fibonacci(k) > p {
            return false;
        }
        k += 1;
    }
}

/// Membership in `G`: `d1 = 1` and `d2 = 4 p^r - 1` for some `r >= 1`,
/// with `p` prime (odd unless `lambda = 2`). Returns the witness `r`.
pub fn in_set_g(lambda_sq: u8, d1: u64, d2: u64, p: u64) -> Option<u32> {
    if d1 != 1 || !is_prime(p) || (p == 2 && lambda_sq != 4) {
        return None;
    }
    let mut power: u128 = 1;
    let mut r = 0u32;
    loop {
        power *= p as u128;
        r += 1;
        let value = 4 * power - 1;
        if value == d2 as u128 {
            return Some(r);
        }
        if value > d2 as u128 {
            return None;
        }
    }
}

/// Outcome of an `H` membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HMembership {
    /// A witness pair `(r, s)` within the reporting bounds.
    Member { r: u32, s: u64 },
    /// Proven absent: no `s` satisfies the pinned second equation, or
    /// the pinned `s` fails the first equation.
    NotMember,
    /// A pinned witness exists but exceeds `r_max`/`s_max`.
    Undetermined,
}

impl HMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, HMembership::Member { .. })
    }
}

fn mutually_coprime(d1: u64, d2: u64, p: u64) -> bool {
    gcd_u64(d1, d2) == 1 && gcd_u64(d1, p) == 1 && gcd_u64(d2, p) == 1
}

/// Membership in `H`. The second defining equation pins `s` exactly, so
/// a `NotMember` answer is a proof; `Undetermined` appears only when the
/// pinned witness lies beyond the reporting bounds.
pub fn in_set_h(
    lambda_sq: u8,
    d1: u64,
    d2: u64,
    p: u64,
    r_max: u32,
    s_max: u64,
) -> HMembership {
    if d1 == 0
        || d2 == 0
        || !is_prime(p)
        || (p == 2 && lambda_sq != 4)
        || !mutually_coprime(d1, d2, p)
    {
        return HMembership::NotMember;
    }
    let mut out_of_bounds = false;
    let three_d1 = 3 * d1 as u128;
    // 3 D1 s^2 = D2 + lambda^2 or D2 - lambda^2
    for target in [
        d2 as u128 + lambda_sq as u128,
        (d2 as u128).wrapping_sub(lambda_sq as u128),
    ] {
        if target == 0 || target > d2 as u128 + lambda_sq as u128 {
            continue; // underflow marker from the subtraction branch
        }
        if target % three_d1 != 0 {
            continue;
        }
        let s_sq = target / three_d1;
        if s_sq > u64::MAX as u128 || !is_square(s_sq as u64) {
            continue;
        }
        let s = isqrt(s_sq as u64);
        if s == 0 {
            continue;
        }
        // First equation: D1 s^2 + D2 = lambda^2 p^r for some r >= 1.
        let total = d1 as u128 * s as u128 * s as u128 + d2 as u128;
        if !total.is_multiple_of(lambda_sq as u128) {
            continue;
        }
        let mut rest = total / lambda_sq as u128;
        let mut r = 0u32;
        while rest.is_multiple_of(p as u128) {
            rest /= p as u128;
            r += 1;
        }
        if rest != 1 || r == 0 {
            continue;
        }
        if r <= r_max && s <= s_max {
            return HMembership::Member { r, s };
        }
        out_of_bounds = true;
    }
    if out_of_bounds {
        HMembership::Undetermined
    } else {
        HMembership::NotMember
    }
}

/// One instance of the equation `D1 x^2 + D2 = lambda^2 p^y` with its
/// enumeration bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BSInstance {
    pub lambda_sq: u8,
    pub d1: u64,
    pub d2: u64,
    pub p: u64,
    pub y_max: u32,
}

impl BSInstance {
    pub fn new(lambda_sq: u8, d1: u64, d2: u64, p: u64, y_max: u32) -> Result<Self> {
        if !matches!(lambda_sq, 1 | 2 | 4) {
            return Err(Error::InvalidArgument("lambda^2 must be 1, 2 or 4".into()));
        }
        if d1 == 0 || d2 == 0 {
            return Err(Error::InvalidArgument("D1 and D2 must be positive".into()));
        }
        if gcd_u64(d1, d2) != 1 {
            return Err(Error::InvalidArgument("D1 and D2 must be coprime".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument("p must be prime".into()));
        }
        // The two-solution bound assumes p coprime to D1 D2; with p | D1 D2
        // the equation reduces to a smaller instance after dividing out p.
        if d1.is_multiple_of(p) || d2.is_multiple_of(p) {
            return Err(Error::InvalidArgument(
                "p must not divide D1 or D2".into(),
            ));
        }
        if p == 2 && lambda_sq != 4 {
            return Err(Error::InvalidArgument(
                "p = 2 is only allowed for lambda = 2".into(),
            ));
        }
        if y_max == 0 {
            return Err(Error::InvalidArgument("y_max must be at least 1".into()));
        }
        Ok(BSInstance { lambda_sq, d1, d2, p, y_max })
    }
}

/// One solution `(x, y)` of an instance. `x` is arbitrary precision:
/// at `y_max = 40` with `p = 13` it already exceeds 64 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsSolution {
    pub x: BigUint,
    pub y: u32,
}

/// The solution list of an instance together with its exceptional-set
/// memberships.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSSolutionSet {
    pub instance: BSInstance,
    /// Sorted by `y` ascending; exact and duplicate-free.
    pub solutions: Vec<BsSolution>,
    pub in_e: bool,
    pub in_f: bool,
    pub in_g: Option<u32>,
    pub in_h: HMembership,
}

impl BSSolutionSet {
    pub fn any_membership(&self) -> bool {
        self.in_e || self.in_f || self.in_g.is_some() || self.in_h.is_member()
    }
}

/// Enumerate every solution with `1 <= y <= y_max` by testing whether
/// `(lambda^2 p^y - D2) / D1` is a positive perfect square, and fill in
/// the membership flags.
pub fn count_bs_solutions(inst: &BSInstance) -> BSSolutionSet {
    let d1 = BigUint::from(inst.d1);
    let d2 = BigUint::from(inst.d2);
    let p = BigUint::from(inst.p);
    let mut rhs = BigUint::from(inst.lambda_sq);
    let mut solutions = Vec::new();
    for y in 1..=inst.y_max {
        rhs *= &p;
        if rhs <= d2 {
            continue;
        }
        let num = &rhs - &d2;
        if (&num % &d1) != BigUint::ZERO {
            continue;
        }
        let x_sq = num / &d1;
        let x = x_sq.sqrt();
        if &x * &x == x_sq && x != BigUint::ZERO {
            solutions.push(BsSolution { x, y });
        }
    }
    BSSolutionSet {
        instance: *inst,
        solutions,
        in_e: in_set_e(inst.lambda_sq, inst.d1, inst.d2, inst.p),
        in_f: in_set_f(inst.d1, inst.d2, inst.p),
        in_g: in_set_g(inst.lambda_sq, inst.d1, inst.d2, inst.p),
        in_h: in_set_h(inst.lambda_sq, inst.d1, inst.d2, inst.p, DEFAULT_R_MAX, DEFAULT_S_MAX),
    }
}

/// Consistency verdict: multiple solutions demand an exceptional-set
/// membership. A violation at desk scale means an implementation bug,
/// not a new mathematical fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsVerdict {
    Ok,
    Violation,
}

pub fn bs_consistency(set: &BSSolutionSet) -> BsVerdict {
    if set.solutions.len() <= 1 || set.any_membership() {
        BsVerdict::Ok
    } else {
        BsVerdict::Violation
    }
}

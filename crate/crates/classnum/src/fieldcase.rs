//! Construction of the fields `K = Q(sqrt(q^2 - p^n))` for distinct odd
//! primes `p`, `q` and odd `n >= 3`, evaluation of the hypotheses under
//! which `n` is known to divide the class number, and the verification
//! of that divisibility together with the order of the prime class
//! above `p`.
//!
//! The hypotheses checked per case:
//! * size: `q^2 < p^n` (otherwise the field is not imaginary);
//! * star condition: `q != +-1 (mod |d|)`, where `d` is the square-free
//!   part of `q^2 - p^n`; `|d| <= 2` fails it automatically, since every
//!   odd `q` is `+-1` both mod 1 and mod 2;
//! * cube conditions, only when `d = 1 (mod 4)` and `3 | n`:
//!   `p^(n/3) != (2q+1)/3` and `p^(n/3) != (q^2+2)/3` (checked as exact
//!   integer equalities, so a non-divisible numerator cannot fail them).
//!
//! A starred marker `*` records a star-condition failure, `**` records a
//! cube-condition failure without a star failure; unmarked rows are the
//! ones the divisibility statement applies to.

use alloc::vec::Vec;

use crate::intarith::{self, is_prime, squarefree_part};
use crate::quadforms::{class_number, form_order, fundamental_discriminant, prime_form};
use crate::{Error, Result};

/// One field instance `(n, p, q)` with the derived data
/// `v = q^2 - p^n = m^2 d` and the fundamental discriminant of `d`.
/// The element `alpha = q + m sqrt(d)` has norm `q^2 - m^2 d = p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldCase {
    pub n: u32,
    pub p: u64,
    pub q: u64,
    pub v: i64,
    pub m: u64,
    pub d: i64,
    pub disc: i64,
}

/// Verdict of the hypothesis check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Table marker: `*` for a star-condition failure, `**` for a cube
/// condition failure on an unstarred row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    None,
    Star,
    DoubleStar,
}

impl Marker {
    pub fn as_str(&self) -> &'static str {
        match self {
            Marker::None => "",
            Marker::Star => "*",
            Marker::DoubleStar => "**",
        }
    }
}

impl core::fmt::Display for Marker {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of every hypothesis, plus the verdict and marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionReport {
    pub size_ok: bool,
    pub star_fail: bool,
    pub cube_path: bool,
    pub pcube_fail_a: bool,
    pub pcube_fail_b: bool,
    pub verdict: Verdict,
    pub marker: Marker,
}

/// Class-number facts for a case: `h`, whether `n | h`, and (for cases
/// whose hypotheses all hold) the order of the prime class above `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerificationResult {
    pub h: u64,
    pub divisible: bool,
    pub order_p: Option<u64>,
    pub order_matches: Option<bool>,
}

fn checked_pow_u64(base: u64, exp: u32, what: &'static str) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow(what))
}

fn build_with_q(p: u64, q: u64, n: u32) -> Result<FieldCase> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::InvalidArgument("p must be an odd prime".into()));
    }
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument("n must be an odd integer >= 3".into()));
    }
    let pn = checked_pow_u64(p, n, "p^n")?;
    if pn > i64::MAX as u64 {
        return Err(Error::Overflow("p^n"));
    }
    let q_sq = q.checked_mul(q).ok_or(Error::Overflow("q^2"))?;
    if q_sq >= pn {
        return Err(Error::SizeViolation { p, q, n });
    }
    let v = q_sq as i64 - pn as i64;
    let (m, d) = squarefree_part(v)?;
    let disc = fundamental_discriminant(d)?;
    Ok(FieldCase { n, p, q, v, m, d, disc })
}

/// Build the case for distinct odd primes `p`, `q` and odd `n >= 3`.
/// Fails with a size violation when `q^2 >= p^n`.
pub fn build_case(p: u64, q: u64, n: u32) -> Result<FieldCase> {
    if q.is_multiple_of(2) || !is_prime(q) {
        return Err(Error::InvalidArgument("q must be an odd prime".into()));
    }
    if p == q {
        return Err(Error::InvalidArgument("p and q must be distinct".into()));
    }
    build_with_q(p, q, n)
}

/// Evaluate every hypothesis of the divisibility statement on a case.
pub fn check_conditions(case: &FieldCase) -> ConditionReport {
    let size_ok = case.v < 0;
    let abs_d = case.d.unsigned_abs();
    let star_fail = abs_d <= 2 || {
        let r = case.q % abs_d;
        r == 1 || r == abs_d - 1
    };
    let cube_path = case.d.rem_euclid(4) == 1 && case.n.is_multiple_of(3);
    let (pcube_fail_a, pcube_fail_b) = if cube_path {
        // n/3 is integral here; both right-hand sides must be integers
        // for the equalities to be meaningful.
        let root = case.p.pow(case.n / 3);
        let lin = 2 * case.q + 1;
        let quad = case.q * case.q + 2;
        (
            lin.is_multiple_of(3) && root == lin / 3,
            quad.is_multiple_of(3) && root == quad / 3,
        )
    } else {
        (false, false)
    };
    let pass = size_ok && !star_fail && !(cube_path && (pcube_fail_a || pcube_fail_b));
    let marker = if star_fail {
        Marker::Star
    } else if pcube_fail_a || pcube_fail_b {
        Marker::DoubleStar
    } else {
        Marker::None
    };
    ConditionReport {
        size_ok,
        star_fail,
        cube_path,
        pcube_fail_a,
        pcube_fail_b,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        marker,
    }
}

/// Compute the class number and check `n | h`; for a passing case also
/// compute the order of the prime class above `p`, which the theory
/// predicts to be exactly `n`.
pub fn verify(case: &FieldCase, report: &ConditionReport) -> Result<VerificationResult> {
    let group = class_number(case.disc)?;
    let divisible = group.h % (case.n as u64) == 0;
    let (order_p, order_matches) = if report.verdict == Verdict::Pass {
        // A passing case has d < -3: |d| <= 2 fails the star condition
        // outright, d = -3 forces q = 3 = p, and d = -4 is not square-free.
        if case.d >= -3 {
            return Err(Error::Internal("passing case with d >= -3"));
        }
        // p divides the norm of alpha, so it cannot be inert; an inert
        // error here means the case data is inconsistent.
        let form = prime_form(case.disc, case.p)
            .map_err(|_| Error::Internal("prime above p inert in a valid case"))?;
        let order = form_order(&form)?;
        (Some(order), Some(order == case.n as u64))
    } else {
        (None, None)
    };
    Ok(VerificationResult { h: group.h, divisible, order_p, order_matches })
}

/// The `q = 1` family `Q(sqrt(1 - p^n))`: divisibility of `h` by `n`
/// holds for every odd prime `p` and odd `n >= 3` except `(p, n) = (3, 5)`.
/// `q` is not prime here, so this constructor relaxes that one check.
pub fn theorem4_case(p: u64, n: u32) -> Result<(FieldCase, VerificationResult)> {
    let case = build_with_q(p, 1, n)?;
    let group = class_number(case.disc)?;
    let divisible = group.h % (n as u64) == 0;
    Ok((
        case,
        VerificationResult { h: group.h, divisible, order_p: None, order_matches: None },
    ))
}

/// One star-condition failure seen by [`scan_theorem2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarFailure {
    pub p: u64,
    pub d: i64,
}

/// Report of a scan over `p` for fixed `q`, `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem2Scan {
    pub q: u64,
    pub n: u32,
    pub p_max: u64,
    /// Cases actually built (odd primes `p != q` with `q^2 < p^n`).
    pub checked: u64,
    /// Primes skipped because `q^2 >= p^n`.
    pub skipped: Vec<u64>,
    /// Cases failing the star condition, sorted by `p`.
    pub failing: Vec<StarFailure>,
    /// Distinct square-free parts seen across the scanned cases.
    pub distinct_d: u64,
}

/// For every odd prime `p <= p_max`, `p != q`, evaluate only the star
/// condition of the case `(p, q, n)`. No class numbers are computed, so
/// the scan stays cheap even when `p^n` approaches 10^15. Requires odd
/// `n >= 5` not divisible by 3 and odd prime `q`.
pub fn scan_theorem2(q: u64, n: u32, p_max: u64) -> Result<Theorem2Scan> {
    if q.is_multiple_of(2) || !is_prime(q) {
        return Err(Error::InvalidArgument("q must be an odd prime".into()));
    }
    if n < 5 || n.is_multiple_of(2) || n.is_multiple_of(3) {
        return Err(Error::InvalidArgument(
            "n must be an odd integer >= 5 not divisible by 3".into(),
        ));
    }
    let mut failing = Vec::new();
    let mut skipped = Vec::new();
    let mut seen_d: Vec<i64> = Vec::new();
    let mut checked = 0u64;
    for p in (3..=p_max).step_by(2).filter(|&p| p != q && is_prime(p)) {
        let case = match build_with_q(p, q, n) {
            Ok(case) => case,
            Err(Error::SizeViolation { .. }) => {
                skipped.push(p);
                continue;
            }
            Err(e) => return Err(e),
        };
        checked += 1;
        if !seen_d.contains(&case.d) {
            seen_d.push(case.d);
        }
        let report = check_conditions(&case);
        if report.star_fail {
            failing.push(StarFailure { p, d: case.d });
        }
    }
    Ok(Theorem2Scan {
        q,
        n,
        p_max,
        checked,
        skipped,
        failing,
        distinct_d: seen_d.len() as u64,
    })
}

/// Odd primes up to `max`, ascending. Shared by the sweep drivers.
pub fn odd_primes_up_to(max: u64) -> Vec<u64> {
    (3..=max).step_by(2).filter(|&p| intarith::is_prime(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_case_fixtures() {
        let c = build_case(5, 3, 3).unwrap();
        assert_eq!((c.v, c.m, c.d, c.disc), (-116, 2, -29, -116));

        let c = build_case(17, 7, 3).unwrap();
        assert_eq!((c.v, c.m, c.d, c.disc), (-4864, 16, -19, -19));

        assert_eq!(
            build_case(11, 37, 3),
            Err(Error::SizeViolation { p: 11, q: 37, n: 3 })
        );
        assert_eq!(
            build_case(13, 47, 3),
            Err(Error::SizeViolation { p: 13, q: 47, n: 3 })
        );
    }

    #[test]
    fn build_case_validates_arguments() {
        assert!(build_case(5, 5, 3).is_err());
        assert!(build_case(5, 9, 3).is_err()); // q composite
        assert!(build_case(9, 5, 3).is_err()); // p composite
        assert!(build_case(5, 3, 4).is_err()); // n even
        assert!(build_case(5, 3, 1).is_err()); // n too small
        assert!(build_case(2, 3, 3).is_err()); // p even
    }

    #[test]
    fn alpha_norm_identity() {
        for (p, q, n) in [(5u64, 3u64, 3u32), (17, 7, 3), (7, 127, 5), (19, 79, 3)] {
            let c = build_case(p, q, n).unwrap();
            // N(alpha) = q^2 - m^2 d = p^n
            let norm = (c.q as i128) * (c.q as i128) - (c.m as i128) * (c.m as i128) * (c.d as i128);
            assert_eq!(norm, (c.p as i128).pow(c.n));
        }
    }

    #[test]
    fn conditions_pass_row() {
        let c = build_case(5, 3, 3).unwrap();
        let r = check_conditions(&c);
        assert!(!r.star_fail);
        assert!(!r.cube_path);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.marker, Marker::None);
    }

    #[test]
    fn conditions_star_rows() {
        // d = -2: every odd q is 1 mod 2.
        let c = build_case(3, 5, 3).unwrap();
        assert_eq!(c.d, -2);
        let r = check_conditions(&c);
        assert!(r.star_fail);
        assert_eq!(r.marker, Marker::Star);
        assert_eq!(r.verdict, Verdict::Fail);

        // d = -6, q = 17 = -1 mod 6.
        let c = build_case(7, 17, 3).unwrap();
        assert_eq!(c.d, -6);
        assert!(check_conditions(&c).star_fail);

        // d = -1 from (17, 47): |d| = 1 fails automatically.
        let c = build_case(17, 47, 3).unwrap();
        assert_eq!((c.v, c.d), (-2704, -1));
        let r = check_conditions(&c);
        assert!(r.star_fail);
        assert_eq!(r.marker, Marker::Star);
    }

    #[test]
    fn conditions_double_star_rows() {
        // p^(n/3) = 5 = (2*7+1)/3.
        let c = build_case(5, 7, 3).unwrap();
        assert_eq!(c.d, -19);
        let r = check_conditions(&c);
        assert!(!r.star_fail);
        assert!(r.cube_path);
        assert!(r.pcube_fail_a);
        assert!(!r.pcube_fail_b);
        assert_eq!(r.marker, Marker::DoubleStar);
        assert_eq!(r.verdict, Verdict::Fail);

        // p^(n/3) = 17 = (7^2+2)/3.
        let c = build_case(17, 7, 3).unwrap();
        let r = check_conditions(&c);
        assert!(r.pcube_fail_b);
        assert!(!r.pcube_fail_a);
        assert_eq!(r.marker, Marker::DoubleStar);

        // p^(n/3) = 13 = (2*19+1)/3.
        let c = build_case(13, 19, 3).unwrap();
        assert_eq!(c.d, -51);
        let r = check_conditions(&c);
        assert!(r.pcube_fail_a);
        assert_eq!(r.marker, Marker::DoubleStar);
    }

    #[test]
    fn verify_pass_row() {
        let c = build_case(5, 3, 3).unwrap();
        let r = check_conditions(&c);
        let v = verify(&c, &r).unwrap();
        assert_eq!(v.h, 6);
        assert!(v.divisible);
        assert_eq!(v.order_p, Some(3));
        assert_eq!(v.order_matches, Some(true));
    }

    #[test]
    fn verify_marked_rows_skip_order() {
        let c = build_case(5, 7, 3).unwrap();
        let r = check_conditions(&c);
        let v = verify(&c, &r).unwrap();
        assert_eq!(v.h, 1);
        assert!(!v.divisible);
        assert_eq!(v.order_p, None);
        assert_eq!(v.order_matches, None);

        let c = build_case(19, 53, 3).unwrap();
        assert_eq!(c.d, -2);
        let r = check_conditions(&c);
        assert_eq!(r.marker, Marker::Star);
        let v = verify(&c, &r).unwrap();
        assert_eq!(v.h, 1);
        assert!(!v.divisible);
    }

    #[test]
    fn theorem4_fixtures() {
        let (c, v) = theorem4_case(3, 5).unwrap();
        assert_eq!((c.v, c.d, v.h), (-242, -2, 1));
        assert!(!v.divisible);

        let (c, v) = theorem4_case(5, 3).unwrap();
        assert_eq!((c.v, c.d, v.h), (-124, -31, 3));
        assert!(v.divisible);

        let (c, v) = theorem4_case(3, 3).unwrap();
        assert_eq!((c.v, c.d, v.h), (-26, -26, 6));
        assert!(v.divisible);
    }

    #[test]
    fn scan_theorem2_small_q() {
        let scan = scan_theorem2(3, 5, 50).unwrap();
        for f in &scan.failing {
            assert!(f.d.unsigned_abs() <= 4, "q=3 failing p={} has |d|={}", f.p, f.d.unsigned_abs());
        }

        let scan = scan_theorem2(5, 5, 50).unwrap();
        for f in &scan.failing {
            assert!(f.d.unsigned_abs() <= 6);
        }
    }

    #[test]
    fn scan_theorem2_q41_includes_p5() {
        let scan = scan_theorem2(41, 5, 5).unwrap();
        assert!(scan.failing.contains(&StarFailure { p: 5, d: -1 }));
        assert!(scan.skipped.contains(&3)); // 41^2 > 3^5
    }

    #[test]
    fn scan_theorem2_validates() {
        assert!(scan_theorem2(3, 9, 50).is_err()); // 3 | n
        assert!(scan_theorem2(3, 4, 50).is_err()); // even
        assert!(scan_theorem2(9, 5, 50).is_err()); // q composite
    }
}

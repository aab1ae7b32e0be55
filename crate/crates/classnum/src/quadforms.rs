//! Class groups of imaginary quadratic fields, represented by reduced
//! primitive binary quadratic forms.
//!
//! A form `(a, b, c)` stands for `a x^2 + b x y + c y^2` with
//! discriminant `D = b^2 - 4ac < 0` and `a > 0`. Each ideal class of
//! the maximal order of discriminant `D` contains exactly one reduced
//! form (`|b| <= a <= c`, with `b >= 0` on the boundary), so reduced
//! forms are the canonical proxies for ideal classes here. Composition
//! is classical Dirichlet composition with immediate reduction; at the
//! discriminant sizes this crate targets nothing faster is needed.

use alloc::vec::Vec;

use crate::intarith::{self, gcd_u64};
use crate::{Error, Result};

/// A primitive, positive definite binary quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadForm {
    a: i64,
    b: i64,
    c: i64,
}

impl core::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn gcd3(a: i64, b: i64, c: i64) -> u64 {
    gcd_u64(gcd_u64(a.unsigned_abs(), b.unsigned_abs()), c.unsigned_abs())
}

impl QuadForm {
    /// Validates positivity, definiteness and primitivity.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 || c <= 0 {
            return Err(Error::InvalidArgument(
                "form must be positive definite (a > 0, c > 0)".into(),
            ));
        }
        let disc = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
        if disc >= 0 {
            return Err(Error::InvalidArgument(
                "form must have negative discriminant".into(),
            ));
        }
        if disc < i64::MIN as i128 {
            return Err(Error::Overflow("form discriminant"));
        }
        if gcd3(a, b, c) != 1 {
            return Err(Error::InvalidArgument("form must be primitive".into()));
        }
        Ok(QuadForm { a, b, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn discriminant(&self) -> i64 {
        // Representability is validated at construction and preserved by
        // the group operations.
        let disc = (self.b as i128) * (self.b as i128)
            - 4 * (self.a as i128) * (self.c as i128);
        i64::try_from(disc).expect("discriminant fits i64 by construction")
    }

    /// The principal form of discriminant `D`: `(1, 0, -D/4)` or
    /// `(1, 1, (1-D)/4)` according to the parity of `D`.
    pub fn principal(disc: i64) -> Result<Self> {
        if disc >= 0 || disc.rem_euclid(4) > 1 {
            return Err(Error::InvalidArgument(
                "discriminant must be negative and 0 or 1 mod 4".into(),
            ));
        }
        let b = disc.rem_euclid(2);
        let c = if b == 0 { -disc / 4 } else { (1 - disc) / 4 };
        Ok(QuadForm { a: 1, b, c })
    }

    /// True iff `|b| <= a <= c` with `b >= 0` whenever `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        if b.abs() > a || a > c {
            return false;
        }
        if (b.abs() == a || a == c) && b < 0 {
            return false;
        }
        true
    }

    /// The class inverse `(a, -b, c)`, reduced.
    pub fn inverse(&self) -> QuadForm {
        QuadForm { a: self.a, b: -self.b, c: self.c }.reduced()
    }

    fn reduced(self) -> QuadForm {
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            // Translate b into (-a, a].
            let r = b.rem_euclid(2 * a);
            let r = if r > a { r - 2 * a } else { r };
            if r != b {
                let disc = b * b - 4 * a * c;
                b = r;
                c = (b * b - disc) / (4 * a);
            }
            if a > c {
                core::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                b = -b;
            }
            break;
        }
        debug_assert!(a <= i64::MAX as i128 && c <= i64::MAX as i128);
        QuadForm { a: a as i64, b: b as i64, c: c as i64 }
    }
}

/// Reduce a form to the unique reduced representative of its class.
/// Idempotent and discriminant-preserving.
pub fn reduce(f: &QuadForm) -> QuadForm {
    f.reduced()
}

/// The discriminant of the maximal order of `Q(sqrt(d))`:
/// `d` itself when `d = 1 mod 4`, else `4d`. Requires square-free `d < 0`.
pub fn fundamental_discriminant(d: i64) -> Result<i64> {
    if d >= 0 {
        return Err(Error::InvalidArgument("d must be negative".into()));
    }
    if !intarith::is_squarefree(d)? {
        return Err(Error::InvalidArgument("d must be square-free".into()));
    }
    if d.rem_euclid(4) == 1 {
        Ok(d)
    } else {
        d.checked_mul(4).ok_or(Error::Overflow("fundamental discriminant"))
    }
}

fn is_fundamental(disc: i64) -> Result<bool> {
    if disc >= 0 {
        return Ok(false);
    }
    match disc.rem_euclid(4) {
        1 => intarith::is_squarefree(disc),
        0 => {
            let q = disc / 4;
            Ok(matches!(q.rem_euclid(4), 2 | 3) && intarith::is_squarefree(q)?)
        }
        _ => Ok(false),
    }
}

/// Extended gcd over i128: returns `(g, u, v)` with `u*x + v*y = g >= 0`.
fn ext_gcd(x: i128, y: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (x, y);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Dirichlet composition of two forms of the same discriminant; returns
/// the reduced representative of the product class. The principal form
/// is the identity and `f.inverse()` gives inverses.
pub fn compose(f: &QuadForm, g: &QuadForm) -> Result<QuadForm> {
    let disc = f.discriminant();
    if disc != g.discriminant() {
        return Err(Error::DiscriminantMismatch { left: disc, right: g.discriminant() });
    }
    // Reduced operands keep every intermediate well inside i128.
    let f = f.reduced();
    let g = g.reduced();
    let (f, g) = if f.a <= g.a { (f, g) } else { (g, f) };
    let (a1, b1, _c1) = (f.a as i128, f.b as i128, f.c as i128);
    let (a2, b2, c2) = (g.a as i128, g.b as i128, g.c as i128);
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    // d = gcd(a2, a1) with Bezout y1*a2 = d mod a1 (y1 = 0 when a1 | a2).
    let (d, y1) = if a2 % a1 == 0 {
        (a1, 0)
    } else {
        let (d, u, _v) = ext_gcd(a2, a1);
        (d, u)
    };
    // d1 = gcd(s, d) with x2*s + (-y2)*d = d1.
    let (d1, x2, y2) = if s % d == 0 {
        (d, 0, -1)
    } else {
        let (d1, u, v) = ext_gcd(s, d);
        (d1, u, -v)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let a3 = v1 * v2;
    let b3 = b2 + 2 * v2 * r;
    let c3_num = c2 * d1 + r * (b2 + v2 * r);
    debug_assert_eq!(c3_num % v1, 0, "composition c-coefficient must be integral");
    let c3 = c3_num / v1;
    debug_assert_eq!(b3 * b3 - 4 * a3 * c3, disc as i128);
    let out = QuadForm { a: i128_to_i64(a3)?, b: i128_to_i64(b3)?, c: i128_to_i64(c3)? };
    Ok(out.reduced())
}

fn i128_to_i64(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("form coefficient"))
}

/// `f` composed with itself `k` times (k >= 1 uses square-and-multiply).
pub fn power(f: &QuadForm, k: u64) -> Result<QuadForm> {
    let mut acc = QuadForm::principal(f.discriminant())?;
    let mut base = f.reduced();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = compose(&acc, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = compose(&base, &base)?;
        }
    }
    Ok(acc)
}

/// The full class group of a fundamental discriminant: every reduced
/// primitive form, sorted, plus the class number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    pub disc: i64,
    pub forms: Vec<QuadForm>,
    pub h: u64,
}

/// Practical ceiling on `|D|` for reduced-form enumeration; above this
/// the quadratic sweep stops being a desk-scale computation.
const ENUMERATION_LIMIT: i64 = 1_000_000_000;

/// Enumerate all reduced primitive forms of a fundamental discriminant
/// `D < 0` and count them. The sweep runs `a` up to `sqrt(|D|/3)` and
/// `|b| <= a`, reading `c` off the discriminant equation.
pub fn class_number(disc: i64) -> Result<ClassGroup> {
    if disc >= 0 {
        return Err(Error::InvalidArgument("discriminant must be negative".into()));
    }
    if !is_fundamental(disc)? {
        return Err(Error::InvalidArgument("discriminant must be fundamental".into()));
    }
    if -disc > ENUMERATION_LIMIT {
        return Err(Error::InvalidArgument(
            "discriminant too large for reduced-form enumeration".into(),
        ));
    }
    let abs_d = -disc;
    let parity = disc.rem_euclid(2);
    let a_max = intarith::isqrt((abs_d / 3) as u64) as i64;
    let mut forms = Vec::new();
    for a in 1..=a_max {
        let four_a = 4 * a;
        for b in (-a..=a).filter(|b| b.rem_euclid(2) == parity) {
            let num = b * b + abs_d;
            if num % four_a != 0 {
                continue;
            }
            let c = num / four_a;
            if c < a {
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                continue;
            }
            if gcd3(a, b, c) != 1 {
                continue;
            }
            forms.push(QuadForm { a, b, c });
        }
    }
    forms.sort_unstable();
    let h = forms.len() as u64;
    debug_assert!(forms.contains(&QuadForm::principal(disc)?));
    Ok(ClassGroup { disc, forms, h })
}

impl ClassGroup {
    pub fn principal(&self) -> QuadForm {
        QuadForm::principal(self.disc).expect("class group holds a valid discriminant")
    }
}

/// The reduced class of a form `(p, b, (b^2 - D)/4p)` of norm `p`,
/// taking the smallest root `0 <= b < 2p` of `b^2 = D mod 4p`. Such a
/// form exists iff `p` is not inert in `Q(sqrt(D))`; the two conjugate
/// choices of root give mutually inverse classes of equal order, so
/// fixing the smallest is harmless.
pub fn prime_form(disc: i64, p: u64) -> Result<QuadForm> {
    if disc >= 0 || !is_fundamental(disc)? {
        return Err(Error::InvalidArgument("discriminant must be fundamental".into()));
    }
    if p == 2 || !intarith::is_prime(p) {
        return Err(Error::InvalidArgument("p must be an odd prime".into()));
    }
    let p_i = p as i128;
    let d_i = disc as i128;
    let modulus = 4 * p_i;
    let b = (0..2 * p_i).find(|&b| (b * b - d_i).rem_euclid(modulus) == 0);
    let b = match b {
        Some(b) => b,
        None => return Err(Error::Inert { d: disc, p }),
    };
    let c = (b * b - d_i) / modulus;
    let form = QuadForm {
        a: i128_to_i64(p_i)?,
        b: i128_to_i64(b)?,
        c: i128_to_i64(c)?,
    };
    debug_assert_eq!(gcd3(form.a, form.b, form.c), 1);
    Ok(form.reduced())
}

/// Guard against a runaway order loop; Lagrange bounds the true order
/// by h, which is far below this at enumeration scale.
const ORDER_CAP: u64 = 1 << 24;

/// The order of the class of `f`: the least `k >= 1` with `f^k` principal.
pub fn form_order(f: &QuadForm) -> Result<u64> {
    let identity = QuadForm::principal(f.discriminant())?;
    let base = f.reduced();
    let mut acc = base;
    let mut k: u64 = 1;
    while acc != identity {
        acc = compose(&acc, &base)?;
        k += 1;
        if k > ORDER_CAP {
            return Err(Error::Internal("order iteration exceeded cap"));
        }
    }
    Ok(k)
}

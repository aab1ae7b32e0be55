//! Fibonacci and Lucas sequences plus the two classical square scans:
//! the only perfect squares in the Lucas sequence are `L_1 = 1` and
//! `L_3 = 4` (Cohn), and the only odd-exponent repunit square with
//! `x > 1` is `(3^5 - 1)/2 = 11^2` (Ljunggren). The scans recompute
//! both facts exhaustively up to a caller-chosen bound.

use alloc::vec::Vec;

use num_bigint::BigUint;

/// `F_k` with `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(k: u32) -> BigUint {
    let mut a = BigUint::ZERO;
    let mut b = BigUint::from(1u32);
    for _ in 0..k {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// `L_k` with `L_0 = 2`, `L_1 = 1`.
pub fn lucas(k: u32) -> BigUint {
    let mut a = BigUint::from(2u32);
    let mut b = BigUint::from(1u32);
    for _ in 0..k {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// All triples `(F_{k-2e}, L_{k+e}, F_k)` for `2 <= k <= k_max` and
/// `e = +-1` (with `k - 2e >= 0`), in `(k, e)` order. The `k = 2, e = 1`
/// triple starts with `F_0 = 0`; it is emitted as defined even though a
/// zero first coordinate can never match a valid equation instance.
pub fn f_triples(k_max: u32) -> Vec<(BigUint, BigUint, BigUint)> {
    let mut out = Vec::new();
    for k in 2..=k_max {
        out.push((fibonacci(k - 2), lucas(k + 1), fibonacci(k)));
        out.push((fibonacci(k + 2), lucas(k - 1), fibonacci(k)));
    }
    out
}

fn is_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Perfect squares among `L_0 .. L_{k_max}`, as `(k, L_k)` pairs.
/// For any `k_max >= 3` the result is exactly `[(1, 1), (3, 4)]`.
pub fn cohn_scan(k_max: u32) -> Vec<(u32, BigUint)> {
    let mut out = Vec::new();
    let mut a = BigUint::from(2u32);
    let mut b = BigUint::from(1u32);
    for k in 0..=k_max {
        if is_square(&a) {
            out.push((k, a.clone()));
        }
        let next = &a + &b;
        a = b;
        b = next;
    }
    out
}

/// Solutions of `(x^n - 1)/(x - 1) = y^2` over `2 <= x <= x_max` and odd
/// `3 <= n <= n_max`, as `(x, n, y)` triples sorted by `(x, n)`. For any
/// bounds covering it the result is exactly `[(3, 5, 11)]`.
pub fn ljunggren_scan(x_max: u64, n_max: u32) -> Vec<(u64, u32, BigUint)> {
    let mut out = Vec::new();
    for x in 2..=x_max {
        let big_x = BigUint::from(x);
        // repunit = 1 + x + ... + x^(n-1), extended two terms at a time
        let mut power = &big_x * &big_x;
        let mut repunit = BigUint::from(1u32) + &big_x + &power;
        let mut n = 3u32;
        while n <= n_max {
            if is_square(&repunit) {
                out.push((x, n, repunit.sqrt()));
            }
            power *= &big_x;
            repunit += &power;
            power *= &big_x;
            repunit += &power;
            n += 2;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn sequence_values() {
        assert_eq!(fibonacci(0), big(0));
        assert_eq!(fibonacci(1), big(1));
        assert_eq!(fibonacci(10), big(55));
        assert_eq!(lucas(0), big(2));
        assert_eq!(lucas(1), big(1));
        assert_eq!(lucas(3), big(4));
        assert_eq!(lucas(10), big(123));
        // No silent width limits: L_100 has 21 digits.
        assert_eq!(
            lucas(100).to_string(),
            "792070839848372253127"
        );
    }

    #[test]
    fn f_triples_fixtures() {
        let triples = f_triples(5);
        assert!(triples.contains(&(big(1), big(7), big(2)))); // k=3, e=+1
        assert!(triples.contains(&(big(3), big(1), big(1)))); // k=2, e=-1
        assert!(triples.contains(&(big(2), big(18), big(5)))); // k=5, e=+1
        assert!(triples.contains(&(big(0), big(4), big(1)))); // k=2, e=+1
        assert_eq!(triples.len(), 8);
    }

    #[test]
    fn cohn_scan_finds_only_the_two_squares() {
        assert_eq!(cohn_scan(10), vec![(1, big(1)), (3, big(4))]);
        assert_eq!(cohn_scan(60), vec![(1, big(1)), (3, big(4))]);
        assert_eq!(cohn_scan(2), vec![(1, big(1))]);
    }

    #[test]
    fn ljunggren_scan_finds_only_the_known_solution() {
        assert_eq!(ljunggren_scan(200, 15), vec![(3, 5, big(11))]);
        assert_eq!(ljunggren_scan(2, 3), vec![]);
        // (3^5 - 1) / 2 = 121
        assert_eq!((3u64.pow(5) - 1) / 2, 121);
    }

    #[test]
    fn ljunggren_scan_wider_range_still_unique() {
        assert_eq!(ljunggren_scan(300, 9), vec![(3, 5, big(11))]);
    }
}

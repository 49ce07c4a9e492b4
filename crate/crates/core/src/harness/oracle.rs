//! Reference answers computed without the evaluator.

use num_bigint::BigUint;
use num_traits::Zero;

/// Euclid's algorithm on the remainder, with `gcd(0, y) = y`.
pub fn gcd(x: &BigUint, y: &BigUint) -> BigUint {
    let (mut a, mut b) = (x.clone(), y.clone());
    while !a.is_zero() {
        let r = &b % &a;
        b = a;
        a = r;
    }
    b
}

/// `fib(0) = 0`, `fib(1) = 1`, by iteration.
pub fn fib(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::from(1u32));
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// The gcd cost bound read as arithmetic: 5 at `x = 0`, else `8 + 8x`.
pub fn gcd_measure(x: &BigUint) -> BigUint {
    if x.is_zero() {
        BigUint::from(5u32)
    } else {
        8u32 + x * 8u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u64) -> BigUint {
        BigUint::from(k)
    }

    #[test]
    fn small_values() {
        assert_eq!(gcd(&n(0), &n(7)), n(7));
        assert_eq!(gcd(&n(7), &n(0)), n(7));
        assert_eq!(gcd(&n(12), &n(18)), n(6));
        let fibs: Vec<BigUint> = (0..11).map(fib).collect();
        assert_eq!(fibs, [0u32, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55].map(BigUint::from));
        assert_eq!(gcd_measure(&n(0)), n(5));
        assert_eq!(gcd_measure(&n(3)), n(32));
    }
}

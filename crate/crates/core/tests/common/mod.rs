//! Reference answers written independently of the library, including its
//! own `harness::oracle`.

#![allow(dead_code)]

/// Euclid by repeated subtraction.
pub fn gcd(mut x: u64, mut y: u64) -> u64 {
    if x == 0 {
        return y;
    }
    while y != 0 {
        if x > y {
            x -= y;
        } else {
            y -= x;
        }
    }
    x
}

/// Fibonacci from the recurrence, memoized.
pub fn fib(n: usize) -> u64 {
    let mut memo = vec![0u64, 1];
    while memo.len() <= n {
        let k = memo.len();
        memo.push(memo[k - 1] + memo[k - 2]);
    }
    memo[n]
}

/// Every pair of naturals below `w`.
pub fn word_pairs(w: u64) -> Vec<(u64, u64)> {
    (0..w).flat_map(|x| (0..w).map(move |y| (x, y))).collect()
}

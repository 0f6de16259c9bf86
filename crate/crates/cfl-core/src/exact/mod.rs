//! Exact arithmetic: rationals, cyclotomic numbers, polynomials, matrices.

pub mod cyclotomic;
pub mod linalg;
pub mod poly;
pub mod ratlin;

use num::BigRational;
use num::bigint::BigInt;

/// Arbitrary-precision rational, the base scalar for everything here.
pub type Rat = BigRational;

/// `p/q` as a [`Rat`]. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a [`Rat`].
pub fn rint(p: i64) -> Rat {
    Rat::from(BigInt::from(p))
}

pub(crate) fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd_u32(b, a % b) }
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// Distinct prime divisors, ascending.
pub(crate) fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler phi.
pub(crate) fn euler_phi(n: u32) -> u32 {
    let mut out = n;
    for p in prime_divisors(n) {
        out = out / p * (p - 1);
    }
    out
}

/// All divisors, ascending.
pub(crate) fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_number_theory() {
        assert_eq!(prime_divisors(120), vec![2, 3, 5]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(120), 32);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(lcm_u32(4, 6), 12);
    }
}

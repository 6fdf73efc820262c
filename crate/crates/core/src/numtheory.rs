//! Small integer helpers: primality, exact square roots, squarefree parts.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| is_prime(n)).collect()
}

/// Exact square root of a non-negative integer, or `None` when it is not a
/// perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// Multiplicative order of `u` modulo `m`, if `gcd(u, m) = 1`.
pub fn multiplicative_order(u: u64, m: u64) -> Option<u64> {
    if m < 2 || u.gcd(&m) != 1 {
        return None;
    }
    let mut x = u % m;
    let mut k = 1;
    while x != 1 {
        x = x * u % m;
        k += 1;
    }
    Some(k)
}

/// Factors of a squarefree part below this bound are found by trial division.
const TRIAL_BOUND: u64 = 1_000_000;

/// Writes a positive integer as `s^2 * d` with `d` squarefree.
///
/// Trial division runs up to 10^6; the cofactor left over is then either 1,
/// a prime, a perfect square of a prime, or a product of two large primes,
/// all of which are settled exactly as long as the input is below 10^18.
/// Larger inputs with an unresolved cofactor return `None`.
pub fn squarefree_decompose(n: &BigInt) -> Option<(BigInt, BigInt)> {
    if !n.is_positive() {
        return None;
    }
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            square *= bp.pow(e / 2);
            if e % 2 == 1 {
                free *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Some((square, free));
    }
    let bound = BigInt::from(TRIAL_BOUND);
    if &bound * &bound > rest {
        // every prime factor below the bound was removed, so `rest` is prime
        return Some((square, free * rest));
    }
    if let Some(r) = exact_sqrt(&rest) {
        return Some((square * r, free));
    }
    if rest.to_u64().map_or(false, |v| v < 1_000_000_000_000_000_000) {
        // at most two prime factors above 10^6, and not a square: squarefree
        return Some((square, free * rest));
    }
    None
}

pub fn fibonacci(k: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..k {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

pub fn lucas(k: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..k {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(1));
    }

    #[test]
    fn order_mod_p() {
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(6, 7), Some(2));
        assert_eq!(multiplicative_order(2, 4), None);
    }

    #[test]
    fn squarefree() {
        let c = |n: i64| {
            let (s, d) = squarefree_decompose(&BigInt::from(n)).unwrap();
            (s.to_i64().unwrap(), d.to_i64().unwrap())
        };
        assert_eq!(c(28), (2, 7));
        assert_eq!(c(36), (6, 1));
        assert_eq!(c(106848), (12, 742));
        assert_eq!(c(1), (1, 1));
        // large prime squared
        let p = 1_000_003i64;
        assert_eq!(c(p * p * 3), (p, 3));
    }

    #[test]
    fn fib_lucas_small() {
        let f: Vec<u64> = (0..10).map(|k| fibonacci(k).to_u64().unwrap()).collect();
        assert_eq!(f, vec![0, 1, 1, 2, 3, 5, 8, 13, 21, 34]);
        let l: Vec<u64> = (0..6).map(|k| lucas(k).to_u64().unwrap()).collect();
        assert_eq!(l, vec![2, 1, 3, 4, 7, 11]);
    }
}

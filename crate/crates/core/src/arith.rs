//! Integer helpers shared across the crate: p-adic orders of integers,
//! binomials, Euler phi, multiplicative orders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact p-adic order of a nonzero integer. Returns `None` for zero.
pub fn ord_p_int(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut x = x.abs();
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        v += 1;
        x = q;
    }
}

/// Exact p-adic order of a machine integer (`None` for zero).
pub fn ord_p_u64(mut x: u64, p: u64) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let mut v = 0;
    while x % p == 0 {
        v += 1;
        x /= p;
    }
    Some(v)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            ds.push(i);
            if i != n / i {
                ds.push(n / i);
            }
        }
        i += 1;
    }
    ds.sort_unstable();
    ds
}

/// Multiplicative order of `a` modulo `n`. Requires gcd(a, n) = 1.
pub fn mult_order(a: u64, n: u64) -> u64 {
    assert!(n >= 1);
    if n == 1 {
        return 1;
    }
    assert_eq!(gcd(a % n, n), 1, "mult_order requires gcd(a, n) = 1");
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    k
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// p^e as a BigInt.
pub fn pow_big(p: u64, e: u64) -> BigInt {
    BigInt::from(p).pow(e as u32)
}

/// n!, from a growing memoized table shared across the process.
pub fn factorial(n: usize) -> BigInt {
    use std::sync::{Mutex, OnceLock};
    static TABLE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![BigInt::one()]));
    let mut t = table.lock().unwrap();
    while t.len() <= n {
        let next = t.last().unwrap() * BigInt::from(t.len());
        t.push(next);
    }
    t[n].clone()
}

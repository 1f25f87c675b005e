//! Exact integer helpers shared across the crate.

use num_bigint::BigUint;
use std::cmp::Ordering;

/// Deterministic Miller-Rabin, valid for all u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set is deterministic for n < 3.3e24, which covers u64.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// base^exp, or None on u64 overflow.
pub fn checked_pow_u64(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn big_pow(base: u64, exp: u32) -> BigUint {
    BigUint::from(base).pow(exp)
}

/// Decomposes a finite positive f64 as m * 2^t with m an odd-or-even integer.
/// The pair is exact: x == m as f64 * 2f64.powi(t).
pub fn decompose_f64(x: f64) -> (BigUint, i64) {
    assert!(x.is_finite() && x > 0.0);
    let bits = x.to_bits();
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let fraction = bits & 0x000f_ffff_ffff_ffff;
    let (mantissa, t) = if exponent == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1 << 52), exponent - 1075)
    };
    (BigUint::from(mantissa), t)
}

/// Exact comparison of p^k against x^e for a positive real x given as f64.
/// f64 values are rationals, so the comparison has a definite answer.
pub fn cmp_pow_vs_real_pow(p: u64, k: u32, x: f64, e: u32) -> Ordering {
    let (m, t) = decompose_f64(x);
    // x^e = m^e * 2^(t*e); compare p^k * 2^max(0,-te) vs m^e * 2^max(0,te)
    let te = t * e as i64;
    let mut lhs = big_pow(p, k);
    let mut rhs = m.pow(e);
    if te >= 0 {
        rhs <<= te as u64;
    } else {
        lhs <<= (-te) as u64;
    }
    lhs.cmp(&rhs)
}

/// Largest k >= 0 with p^k <= x^e, for real x > 1. Exact.
pub fn pow_floor_index(p: u64, x: f64, e: u32) -> u32 {
    debug_assert!(p >= 2 && x > 1.0);
    let guess = (e as f64 * x.ln() / (p as f64).ln()).floor();
    let mut k = if guess.is_finite() && guess > 0.0 {
        guess as u32
    } else {
        0
    };
    while cmp_pow_vs_real_pow(p, k + 1, x, e) != Ordering::Greater {
        k += 1;
    }
    while k > 0 && cmp_pow_vs_real_pow(p, k, x, e) == Ordering::Greater {
        k -= 1;
    }
    k
}

/// p-adic valuation of n (n > 0).
pub fn valuation(mut n: BigUint, p: u64) -> u32 {
    let p = BigUint::from(p);
    let zero = BigUint::from(0u32);
    let mut v = 0;
    while &n % &p == zero && n != zero {
        n /= &p;
        v += 1;
    }
    v
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

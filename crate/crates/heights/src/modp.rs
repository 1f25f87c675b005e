//! Polynomial arithmetic over the prime fields F_p, up to distinct-degree
//! splitting. Only factor *degrees* are ever needed — by the splitting
//! tests and by the irreducibility certificate — so no full factorization
//! is implemented.

use crate::arith::{is_prime_u64, mul_mod, pow_mod};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense polynomial over F_p, coefficients ascending and reduced mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn trim(mut coeffs: Vec<u64>) -> Vec<u64> {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    coeffs
}

impl ModPoly {
    fn new(p: u64, coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p));
        ModPoly {
            p,
            coeffs: trim(coeffs),
        }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    /// The polynomial x.
    pub fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            out.push((a + p - b) % p);
        }
        ModPoly::new(p, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        ModPoly::new(p, out)
    }

    pub fn mul_scalar(&self, c: u64) -> Self {
        let p = self.p;
        ModPoly::new(p, self.coeffs.iter().map(|&a| mul_mod(a, c % p, p)).collect())
    }

    pub fn make_monic(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lc = self.leading();
        if lc == 1 {
            return Some(self.clone());
        }
        let inv = pow_mod(lc, self.p - 2, self.p);
        Some(self.mul_scalar(inv))
    }

    /// Remainder of self modulo g (g nonzero).
    pub fn rem(&self, g: &Self) -> Self {
        debug_assert_eq!(self.p, g.p);
        assert!(!g.is_zero());
        let p = self.p;
        let dg = g.degree();
        if self.degree() < dg || self.is_zero() {
            return self.clone();
        }
        let inv_lc = pow_mod(g.leading(), p - 2, p);
        let mut rem = self.coeffs.clone();
        for k in (dg..rem.len()).rev() {
            let top = rem[k];
            if top == 0 {
                continue;
            }
            let factor = mul_mod(top, inv_lc, p);
            let shift = k - dg;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                let sub = mul_mod(factor, gc, p);
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
        }
        rem.truncate(dg);
        ModPoly::new(p, rem)
    }

    /// Exact division: self = q * g with zero remainder.
    fn div_exact(&self, g: &Self) -> Self {
        debug_assert_eq!(self.p, g.p);
        assert!(!g.is_zero());
        let p = self.p;
        let dg = g.degree();
        if self.is_zero() {
            return ModPoly::zero(p);
        }
        assert!(self.degree() >= dg);
        let inv_lc = pow_mod(g.leading(), p - 2, p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.degree() - dg + 1];
        for k in (dg..rem.len()).rev() {
            let top = rem[k];
            if top == 0 {
                continue;
            }
            let factor = mul_mod(top, inv_lc, p);
            let shift = k - dg;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                let sub = mul_mod(factor, gc, p);
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
            quot[shift] = factor;
        }
        assert!(
            rem.iter().take(dg).all(|&c| c == 0),
            "inexact division over F_p"
        );
        ModPoly::new(p, quot)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(p);
        }
        ModPoly::new(
            p,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| mul_mod(c, (i as u64 + 1) % p, p))
                .collect(),
        )
    }

    /// self^e mod g by square-and-multiply.
    pub fn powmod(&self, e: u64, g: &Self) -> Self {
        let p = self.p;
        let mut result = ModPoly::new(p, vec![1]).rem(g);
        let mut base = self.rem(g);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(g);
            }
            base = base.mul(&base).rem(g);
            e >>= 1;
        }
        result
    }
}

/// Monic gcd over F_p.
pub fn mod_gcd(a: &ModPoly, b: &ModPoly) -> ModPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.make_monic().unwrap_or(a)
}

/// Reduce an integer polynomial mod the prime p.
pub fn reduce(f: &IntPoly, p: u64) -> ModPoly {
    assert!(is_prime_u64(p));
    let pb = BigInt::from(p);
    ModPoly::new(
        p,
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced residue fits"))
            .collect(),
    )
}

/// Multiset of irreducible-factor degrees of f over F_p (ascending), via
/// distinct-degree splitting. Requires f squarefree mod p: returns None
/// when gcd(f, f') is nonconstant (which also covers f' = 0), or f = 0.
pub fn factor_degrees(f0: &ModPoly) -> Option<Vec<usize>> {
    let mut f = f0.make_monic()?;
    if f.degree() == 0 {
        return Some(Vec::new());
    }
    let der = f.derivative();
    if der.is_zero() || mod_gcd(&f, &der).degree() != 0 {
        return None;
    }
    let p = f.p;
    let x = ModPoly::x(p);
    let mut h = x.rem(&f);
    let mut degrees = Vec::new();
    let mut k = 0usize;
    while f.degree() >= 2 * (k + 1) {
        k += 1;
        h = h.powmod(p, &f); // h = x^(p^k) mod f
        let g = mod_gcd(&f, &h.sub(&x));
        if g.degree() > 0 {
            debug_assert_eq!(g.degree() % k, 0);
            for _ in 0..g.degree() / k {
                degrees.push(k);
            }
            f = f.div_exact(&g);
            if f.degree() == 0 {
                break;
            }
            h = h.rem(&f);
        }
    }
    if f.degree() > 0 {
        degrees.push(f.degree());
    }
    degrees.sort_unstable();
    Some(degrees)
}

/// Outcome of the desk-scale irreducibility certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// Consistent with both answers at this certificate's strength; callers
    /// skip such polynomials rather than guess.
    Unknown,
}

const CERT_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Divisors of |n|, when |n| fits u64 and is small enough to enumerate.
fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let m = n.abs().to_u64()?;
    if m == 0 || m > 1_000_000_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            divs.push(d);
            if d != m / d {
                divs.push(m / d);
            }
        }
        d += 1;
    }
    Some(divs)
}

/// Whether f has a rational root, by the complete r/s divisor test.
/// None when the constant or leading coefficient is too large to enumerate.
fn rational_root_exists(f: &IntPoly) -> Option<bool> {
    let a0 = f.constant_term();
    if a0.is_zero() {
        return Some(true);
    }
    let nums = small_divisors(&a0)?;
    let dens = small_divisors(&f.leading())?;
    for &s in &dens {
        let den = BigInt::from(s);
        for &r in &nums {
            if r.gcd(&s) != 1 {
                continue;
            }
            let num = BigInt::from(r);
            if f.eval_homogeneous(&num, &den).is_zero()
                || f.eval_homogeneous(&(-&num), &den).is_zero()
            {
                return Some(true);
            }
        }
    }
    Some(false)
}

/// Bitmask of all subset sums of a degree multiset.
fn subset_sums(degrees: &[usize]) -> u128 {
    let mut mask: u128 = 1;
    for &d in degrees {
        if d < 128 {
            mask |= mask << d;
        }
    }
    mask
}

/// Sound, incomplete irreducibility test over Q for content-1 polynomials:
/// rational-root test (complete for degrees 2 and 3), then factor-degree
/// consistency across up to five good primes (p coprime to the leading
/// coefficient with f squarefree mod p). A polynomial is declared
/// irreducible only when some reduction is irreducible or the degree sets
/// rule out every proper factor degree; reducible only on an exhibited
/// rational root, a zero constant term, or content > 1. Everything else is
/// Unknown.
pub fn certify_irreducible(f: &IntPoly) -> Irreducibility {
    use Irreducibility::*;
    if f.is_zero() || f.degree() == 0 {
        return Reducible;
    }
    if !f.content().is_one() {
        return Reducible;
    }
    let d = f.degree();
    if d == 1 {
        return Irreducible;
    }
    match rational_root_exists(f) {
        Some(true) => return Reducible,
        Some(false) if d <= 3 => return Irreducible,
        None if d <= 3 => return Unknown,
        _ => {}
    }
    if d > 64 {
        return Unknown;
    }
    // Bits 1..d-1: the proper factor degrees to be ruled out.
    let proper: u128 = (1u128 << d) - 2;
    let mut possible: u128 = !0;
    let mut used = 0;
    for &p in CERT_PRIMES.iter() {
        if used == 5 {
            break;
        }
        if f.leading().mod_floor(&BigInt::from(p)).is_zero() {
            continue;
        }
        let Some(degs) = factor_degrees(&reduce(f, p)) else {
            continue;
        };
        if degs.len() == 1 {
            return Irreducible;
        }
        used += 1;
        possible &= subset_sums(&degs);
        if possible & proper == 0 {
            return Irreducible;
        }
    }
    Unknown
}

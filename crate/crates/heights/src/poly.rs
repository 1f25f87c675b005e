//! Exact integer polynomials: content and primitive parts, subresultant
//! resultants and discriminants, Sturm-sequence real root counts, and the
//! cyclotomic table used to recognize height-zero minimal polynomials.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::sync::OnceLock;

/// Dense integer polynomial, coefficients ascending (`coeffs[i]` multiplies
/// x^i). The zero polynomial is the empty vector; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

fn trim(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        IntPoly {
            coeffs: trim(coeffs),
        }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::new(vec![BigInt::from(c)])
    }

    /// x^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    /// Coefficients in ascending order of degree.
    pub fn from_ascending(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients leading-first, the way polynomials are written:
    /// `[1, -1, -1]` is x^2 - x - 1.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants and (by convention) for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient; zero only for the zero polynomial.
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: out }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
        )
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the (positive) content; signs are untouched.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Divide every coefficient by `c`, which must divide each one exactly.
    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        assert!(!c.is_zero());
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division in polynomial code");
                    q
                })
                .collect(),
        }
    }

    /// Flip the sign so the leading coefficient is positive.
    pub fn sign_normalized(&self) -> Self {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// den^degree * f(num/den), exact: the homogenized evaluation used by
    /// rational-root tests.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        // One den_pow too many was built; acc already has den^deg folded in.
        acc
    }

    /// Coefficients as f64, ascending, for floating-point root finding.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Long division by a monic divisor: returns (quotient, remainder),
    /// both over the integers.
    pub fn divrem_monic(&self, g: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(g.is_monic(), "divrem_monic needs a monic divisor");
        let dg = g.degree();
        if self.degree() < dg || self.is_zero() {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dg + 1];
        for k in (dg..rem.len()).rev() {
            let top = std::mem::replace(&mut rem[k], BigInt::zero());
            if top.is_zero() {
                continue;
            }
            let shift = k - dg;
            for (i, gc) in g.coeffs.iter().take(dg).enumerate() {
                let delta = gc * &top;
                rem[shift + i] -= delta;
            }
            quot[shift] = top;
        }
        rem.truncate(dg);
        (IntPoly::new(quot), IntPoly::new(rem))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(out, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            if i == 0 {
                write!(out, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(out, "{mag}")?;
                }
                if i == 1 {
                    write!(out, "x")?;
                } else {
                    write!(out, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Pseudo-remainder: the unique R with lc(b)^(deg a - deg b + 1) * a = q*b + R
/// and deg R < deg b. Requires deg a >= deg b >= 0, b nonzero.
pub fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    assert!(!b.is_zero());
    let da = a.degree();
    let db = b.degree();
    assert!(da >= db);
    let lcb = b.leading();
    let mut r = a.clone();
    let mut applied = 0usize;
    while !r.is_zero() && r.degree() >= db && !(r.degree() == 0 && db == 0) {
        let k = r.degree() - db;
        let lr = r.leading();
        r = r.mul_scalar(&lcb).sub(&b.shift(k).mul_scalar(&lr));
        applied += 1;
        if db == 0 {
            break;
        }
    }
    // Normalize to exactly the (da - db + 1)-th power multiplier.
    let needed = da - db + 1;
    for _ in applied..needed {
        r = r.mul_scalar(&lcb);
    }
    r
}

fn pow_big(x: &BigInt, k: usize) -> BigInt {
    x.pow(k as u32)
}

fn div_big_exact(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "inexact division in resultant chain");
    q
}

/// Resultant of two integer polynomials by the subresultant remainder
/// sequence: exact, fraction-free. Conventions: Res(c, g) = c^(deg g) for
/// constants, and the resultant is 0 whenever either input is the zero
/// polynomial or the inputs share a factor.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    if f.degree() == 0 {
        return pow_big(&f.leading(), g.degree());
    }
    if g.degree() == 0 {
        return pow_big(&g.leading(), f.degree());
    }
    // Arrange deg a >= deg b; a swap multiplies by (-1)^(deg f * deg g).
    let mut swap_flip = false;
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (f.clone(), g.clone())
    } else {
        swap_flip = (f.degree() & 1 == 1) && (g.degree() & 1 == 1);
        (g.clone(), f.clone())
    };
    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let t = pow_big(&ca, b.degree()) * pow_big(&cb, a.degree());
    let mut sign_flip = swap_flip;
    let mut g_coef = BigInt::one();
    let mut h_coef = BigInt::one();
    loop {
        let da = a.degree();
        let db = b.degree();
        let delta = da - db;
        if (da & 1 == 1) && (db & 1 == 1) {
            sign_flip = !sign_flip;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        if r.is_zero() {
            // Nonconstant common factor: since the loop only runs while
            // deg b >= 1, a zero remainder forces resultant zero.
            return BigInt::zero();
        }
        let denom = &g_coef * pow_big(&h_coef, delta);
        b = r.div_scalar_exact(&denom);
        g_coef = a.leading();
        if delta >= 1 {
            h_coef = div_big_exact(pow_big(&g_coef, delta), &pow_big(&h_coef, delta - 1));
        }
        if b.degree() == 0 {
            let da = a.degree();
            let fin = div_big_exact(pow_big(&b.leading(), da), &pow_big(&h_coef, da - 1));
            let res = t * fin;
            return if sign_flip { -res } else { res };
        }
    }
}

/// Discriminant: (-1)^(d(d-1)/2) Res(f, f') / lc(f), exact. By the empty
/// product convention the discriminant of a degree-1 polynomial is 1.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::Domain(
            "discriminants are defined for polynomials of degree at least 1".into(),
        ));
    }
    let d = f.degree();
    if d == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(f, &f.derivative());
    let signed = if (d * (d - 1) / 2) % 2 == 1 { -res } else { res };
    Ok(div_big_exact(signed, &f.leading()))
}

/// Polynomial gcd over Z (primitive remainder sequence), sign-normalized to
/// a positive leading coefficient; content is carried along.
pub fn poly_gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    if f.is_zero() {
        return g.sign_normalized();
    }
    if g.is_zero() {
        return f.sign_normalized();
    }
    let cont = f.content().gcd(&g.content());
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (f.primitive_part(), g.primitive_part())
    } else {
        (g.primitive_part(), f.primitive_part())
    };
    while !b.is_zero() {
        if b.degree() == 0 {
            return IntPoly::new(vec![cont]);
        }
        let r = pseudo_rem(&a, &b).primitive_part();
        a = b;
        b = r;
    }
    a.sign_normalized().mul_scalar(&cont)
}

/// True when gcd(f, f') is constant, i.e. f has no repeated roots.
pub fn is_squarefree(f: &IntPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    if f.degree() <= 1 {
        return true;
    }
    poly_gcd(f, &f.derivative()).degree() == 0
}

/// Pseudo-remainder scaled by a *positive* multiple of a, so that the sign
/// pattern matches the true Euclidean remainder.
fn signed_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let delta = a.degree() - b.degree();
    let r = pseudo_rem(a, b);
    // The multiplier is lc(b)^(delta+1); flip when that is negative.
    if b.leading().is_negative() && (delta + 1) % 2 == 1 {
        r.neg()
    } else {
        r
    }
}

fn sign_at_plus_inf(p: &IntPoly) -> i32 {
    match p.leading().sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn sign_at_minus_inf(p: &IntPoly) -> i32 {
    let s = sign_at_plus_inf(p);
    if p.degree() % 2 == 1 {
        -s
    } else {
        s
    }
}

fn variations(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut last = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots, by exact Sturm sign variations at the two
/// infinities. Requires a squarefree input.
pub fn real_root_count(f: &IntPoly) -> usize {
    if f.is_zero() || f.degree() == 0 {
        return 0;
    }
    if f.degree() == 1 {
        return 1;
    }
    debug_assert!(is_squarefree(f));
    let mut chain = vec![f.primitive_part(), f.derivative().primitive_part()];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.is_zero() || b.degree() == 0 {
            break;
        }
        let next = signed_rem(a, b).neg().primitive_part();
        if next.is_zero() {
            break;
        }
        chain.push(next);
    }
    let at_minus: Vec<i32> = chain.iter().map(sign_at_minus_inf).collect();
    let at_plus: Vec<i32> = chain.iter().map(sign_at_plus_inf).collect();
    variations(&at_minus) - variations(&at_plus)
}

/// Orders up to this bound have their cyclotomic polynomials tabulated;
/// every n with phi(n) <= 96 lies at or below it, so root-of-unity
/// detection is complete for degrees up to 96.
pub const CYCLOTOMIC_ORDER_MAX: u32 = 420;

fn cyclotomic_table() -> &'static Vec<IntPoly> {
    static TABLE: OnceLock<Vec<IntPoly>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = CYCLOTOMIC_ORDER_MAX as usize;
        let mut table: Vec<IntPoly> = Vec::with_capacity(n_max + 1);
        table.push(IntPoly::zero()); // index 0 unused
        for n in 1..=n_max {
            // x^n - 1 divided by every lower-order cyclotomic factor.
            let mut num = IntPoly::monomial(n).sub(&IntPoly::constant(1));
            for d in 1..n {
                if n % d == 0 {
                    let (q, r) = num.divrem_monic(&table[d]);
                    assert!(r.is_zero(), "cyclotomic division must be exact");
                    num = q;
                }
            }
            table.push(num);
        }
        table
    })
}

/// The n-th cyclotomic polynomial, 1 <= n <= `CYCLOTOMIC_ORDER_MAX`.
pub fn cyclotomic(n: u32) -> &'static IntPoly {
    assert!(
        n >= 1 && n <= CYCLOTOMIC_ORDER_MAX,
        "cyclotomic order {n} outside the tabulated range"
    );
    &cyclotomic_table()[n as usize]
}

/// If f is exactly a tabulated cyclotomic polynomial, its order.
pub fn cyclotomic_order(f: &IntPoly) -> Option<u32> {
    if !f.is_monic() || f.degree() == 0 {
        return None;
    }
    let d = f.degree();
    (1..=CYCLOTOMIC_ORDER_MAX).find(|&n| {
        let c = cyclotomic(n);
        c.degree() == d && c == f
    })
}

/// Whether f is (up to sign) the minimal polynomial of 0 or of a root of
/// unity — exactly the irreducible integer polynomials of height zero.
pub fn is_kronecker(f: &IntPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    let g = f.sign_normalized();
    if g == IntPoly::monomial(1) {
        return true;
    }
    cyclotomic_order(&g).is_some()
}

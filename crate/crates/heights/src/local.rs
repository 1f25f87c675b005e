//! Local splitting data: the completions an algebraic number is required to
//! land in, and the coarse arithmetic class of the number itself.

use crate::arith::{big_pow, checked_pow_u64, cmp_pow_vs_real_pow, is_prime_u64};
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// A finite extension of Q_p, described by residue characteristic p,
/// ramification index e, and inertia degree f. The residue field has
/// order q = p^f.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalFieldData {
    p: u64,
    e: u32,
    f: u32,
    q: u64,
}

impl LocalFieldData {
    pub fn new(p: u64, e: u32, f: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || f == 0 {
            return Err(Error::InvalidInput(format!(
                "ramification index and inertia degree must be positive (got e={e}, f={f})"
            )));
        }
        // Inclusion cutoffs and neighborhood depths compare p^k against d^e
        // exactly, so d^e must stay a tractable integer.
        if e > 100_000 {
            return Err(Error::InvalidInput(format!(
                "ramification index {e} is beyond the supported range (max 100000)"
            )));
        }
        let q = checked_pow_u64(p, f)
            .ok_or_else(|| Error::Overflow(format!("residue field order {p}^{f} exceeds u64")))?;
        Ok(LocalFieldData { p, e, f, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// Residue field order q = p^f.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// -log|pi| = (log p)/e, the log absolute value of a uniformizer,
    /// with the absolute value normalized so |p| = 1/p.
    pub fn uniformizer_log(&self) -> f64 {
        (self.p as f64).ln() / self.e as f64
    }

    /// Largest k >= 0 with p^k <= d^e, for d >= 2. This is the depth of the
    /// uniformizer-power neighborhood used by the degree-d bounds.
    pub fn neighborhood_index(&self, d: u64) -> u32 {
        debug_assert!(d >= 2);
        let de = big_pow(d, self.e);
        // Float guess, then exact adjustment in both directions.
        let guess = (self.e as f64 * (d as f64).ln() / (self.p as f64).ln()).floor();
        let mut k = if guess.is_finite() && guess > 0.0 {
            guess as u32
        } else {
            0
        };
        while k > 0 && big_pow(self.p, k) > de {
            k -= 1;
        }
        while big_pow(self.p, k + 1) <= de {
            k += 1;
        }
        k
    }

    /// Same depth for a real cutoff x > 1: largest k >= 0 with p^k <= x^e,
    /// decided by exact rational-power comparison.
    pub fn neighborhood_index_real(&self, x: f64) -> u32 {
        crate::arith::pow_floor_index(self.p, x, self.e)
    }

    /// Whether the place contributes to the degree-d bound: p < d^e, exact.
    pub fn included_for_degree(&self, d: u64) -> bool {
        big_pow(self.p, 1) < big_pow(d, self.e)
    }

    /// Strict inclusion cutoff against a real x: p^(1/e) < x, i.e. p < x^e.
    pub fn included_below(&self, x: f64) -> bool {
        cmp_pow_vs_real_pow(self.p, 1, x, self.e) == Ordering::Less
    }

    /// Non-strict membership cutoff used when trimming a place set at a
    /// search witness y: p^(1/e) <= y, i.e. p <= y^e.
    pub fn included_at_or_below(&self, x: f64) -> bool {
        cmp_pow_vs_real_pow(self.p, 1, x, self.e) != Ordering::Greater
    }
}

impl fmt::Display for LocalFieldData {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}:{}:{}", self.p, self.e, self.f)
    }
}

/// The set of completions every conjugate is required to lie in: optionally
/// the real place, plus finitely many p-adic fields with distinct p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingSpec {
    pub has_real_place: bool,
    places: Vec<LocalFieldData>,
}

impl SplittingSpec {
    /// An empty spec (no real place, no finite places) is allowed: it imposes
    /// no splitting condition, and only the bare Mahler floor applies.
    pub fn new(has_real_place: bool, places: Vec<LocalFieldData>) -> Result<Self> {
        let mut primes: Vec<u64> = places.iter().map(|pl| pl.p()).collect();
        primes.sort_unstable();
        primes.dedup();
        if primes.len() != places.len() {
            return Err(Error::InvalidInput(
                "finite places must have pairwise distinct residue characteristics".into(),
            ));
        }
        Ok(SplittingSpec {
            has_real_place,
            places,
        })
    }

    pub fn real_only() -> Self {
        SplittingSpec {
            has_real_place: true,
            places: Vec::new(),
        }
    }

    pub fn places(&self) -> &[LocalFieldData] {
        &self.places
    }

    /// The finite part as its own spec, if nonempty.
    pub fn finite_part(&self) -> Option<SplittingSpec> {
        if self.places.is_empty() {
            None
        } else {
            Some(SplittingSpec {
                has_real_place: false,
                places: self.places.clone(),
            })
        }
    }
}

impl fmt::Display for SplittingSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.has_real_place {
            write!(out, "real")?;
            first = false;
        }
        for place in &self.places {
            if !first {
                write!(out, ",")?;
            }
            write!(out, "{place}")?;
            first = false;
        }
        Ok(())
    }
}

/// Coarse arithmetic class of the number being bounded. Sharper classes get
/// sharper local contributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraicClass {
    General,
    Integer,
    Unit,
}

impl AlgebraicClass {
    pub fn label(&self) -> &'static str {
        match self {
            AlgebraicClass::General => "general",
            AlgebraicClass::Integer => "integer",
            AlgebraicClass::Unit => "unit",
        }
    }
}

impl fmt::Display for AlgebraicClass {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.label())
    }
}

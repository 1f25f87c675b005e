//! Closed-form Robin constants at a finite place: the ring of integers, its
//! unit group, and the full projective line over the local field, together
//! with the lower bounds for their radius-p^{-n/e} neighborhoods.
//!
//! Everything is expressed through the local data (p, e, f): the uniformizer
//! satisfies -log|pi| = (log p)/e and the residue field has order q = p^f.

use crate::error::{Error, Result};
use crate::local::LocalFieldData;

/// Robin constant of the ring of integers: (log p) / (e (q - 1)).
pub fn robin_integers(field: &LocalFieldData) -> f64 {
    field.uniformizer_log() / (field.q() - 1) as f64
}

/// Robin constant of the unit group: q (log p) / (e (q - 1)^2).
pub fn robin_units(field: &LocalFieldData) -> f64 {
    let q = field.q() as f64;
    q * field.uniformizer_log() / ((q - 1.0) * (q - 1.0))
}

/// Robin constant of the projective line over the local field:
/// q (log p) / (e (q^2 - 1)).
pub fn robin_line(field: &LocalFieldData) -> f64 {
    let q = field.q() as f64;
    q * field.uniformizer_log() / (q * q - 1.0)
}

fn check_index(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain(
            "neighborhood index must be at least 1 (radius at most |pi|)".into(),
        ));
    }
    Ok(())
}

// (q - 2) / q^n, exactly zero for q = 2 (not a rounded tiny float).
fn integer_style_correction(q: u64, n: u32) -> f64 {
    if q == 2 {
        return 0.0;
    }
    (q - 2) as f64 / (q as f64).powi(n as i32)
}

/// Lower bound for the Robin constant of the radius-p^{-n/e} neighborhood of
/// the ring of integers: (1 - (q-2)/q^n) * robin_integers.
pub fn robin_integers_nbhd(field: &LocalFieldData, n: u32) -> Result<f64> {
    check_index(n)?;
    Ok((1.0 - integer_style_correction(field.q(), n)) * robin_integers(field))
}

/// Neighborhood lower bound for the unit group: (1 - (q-2)/q^n) * robin_units.
pub fn robin_units_nbhd(field: &LocalFieldData, n: u32) -> Result<f64> {
    check_index(n)?;
    Ok((1.0 - integer_style_correction(field.q(), n)) * robin_units(field))
}

/// Neighborhood lower bound for the projective line: (1 - q^{-n}) * robin_line.
pub fn robin_line_nbhd(field: &LocalFieldData, n: u32) -> Result<f64> {
    check_index(n)?;
    let q = field.q() as f64;
    Ok((1.0 - q.powi(-(n as i32))) * robin_line(field))
}

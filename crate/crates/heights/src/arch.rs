//! The archimedean equilibrium measure on the real line and everything
//! computed from it: integration against it, the Robin constant of R, the
//! two strip constants, the strip lower bound, and the potential function.
//!
//! The measure has density w(z) = (1/(pi^2 z)) * log|(z+1)/(z-1)| with
//! integrable log blow-ups at z = +-1, a removable point at 0, and ~2/(pi^2 z^2)
//! tails. All quadrature below splits at {-1, 0, 1}, so the singular points
//! are only ever panel endpoints (which the nested rule never samples), and
//! maps |z| > 4 through z = tan(theta) to compress the tails.

use crate::error::{Error, Result};
use crate::quad::{adaptive, QuadratureResult};
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

/// Evaluation budget for a single measure integral. Generous: the log
/// singularities cost a few thousand points at tol 1e-9.
const MU_MAX_EVALS: u64 = 20_000_000;

/// log^+ t = max{log t, 0} for a modulus t >= 0.
pub fn log_plus(t: f64) -> f64 {
    if t > 1.0 {
        t.ln()
    } else {
        0.0
    }
}

/// Apery's constant by direct series summation, smallest terms first.
/// N is the first integer with tail bound 1/(2N^2) < 1e-14.
pub fn zeta3() -> f64 {
    static Z: OnceLock<f64> = OnceLock::new();
    *Z.get_or_init(|| {
        let n: u64 = 7_071_068;
        let mut s = 0.0;
        for k in (1..=n).rev() {
            let x = k as f64;
            s += 1.0 / (x * x * x);
        }
        s
    })
}

/// Robin constant of the real line for the spherical kernel: 7 zeta(3) / (2 pi^2).
pub fn robin_real() -> f64 {
    7.0 * zeta3() / (2.0 * PI * PI)
}

// Stable density evaluation. For |z| < 1 the log simplifies to 2 atanh(z)/z,
// for |z| > 1 to 2 atanh(1/z)/z; both forms are even in z and avoid the
// cancellation of the raw log quotient near 0 and infinity.
fn density(z: f64) -> f64 {
    let a = z.abs();
    let pi2 = PI * PI;
    if a == 0.0 {
        return 2.0 / pi2;
    }
    if a < 1.0 {
        2.0 * a.atanh() / (pi2 * a)
    } else {
        2.0 * (1.0 / a).atanh() / (pi2 * a)
    }
}

/// Density of the equilibrium measure at z. The removable point z = 0 gets
/// its limit 2/pi^2; z = +-1 is a genuine (integrable) singularity.
pub fn mu_density(z: f64) -> Result<f64> {
    if z == 1.0 || z == -1.0 {
        return Err(Error::Singular(z));
    }
    if !z.is_finite() {
        return Err(Error::Domain(format!("density argument must be finite, got {z}")));
    }
    Ok(density(z))
}

/// Integrate g against the equilibrium measure, splitting additionally at
/// `extra_breaks` (needed when g itself has kinks or singular points, e.g.
/// indicator edges or the log kernel's center).
pub fn mu_integral_split(
    g: impl Fn(f64) -> f64,
    extra_breaks: &[f64],
    tol: f64,
) -> Result<QuadratureResult> {
    for &b in extra_breaks {
        if !b.is_finite() {
            return Err(Error::Domain(format!("breakpoints must be finite, got {b}")));
        }
    }
    let mut breaks = vec![-4.0, -1.0, 0.0, 1.0, 4.0];
    breaks.extend_from_slice(extra_breaks);
    breaks.sort_unstable_by(f64::total_cmp);
    breaks.dedup();

    let direct = |z: f64| g(z) * density(z);
    let tail = |theta: f64| {
        let z = theta.tan();
        let c = theta.cos();
        g(z) * density(z) / (c * c)
    };
    let fns: [&dyn Fn(f64) -> f64; 2] = [&direct, &tail];

    let mut panels = Vec::with_capacity(breaks.len() + 1);
    panels.push((1usize, -FRAC_PI_2, breaks[0].atan()));
    for w in breaks.windows(2) {
        panels.push((0, w[0], w[1]));
    }
    panels.push((1, breaks[breaks.len() - 1].atan(), FRAC_PI_2));
    adaptive(&fns, &panels, tol, MU_MAX_EVALS)
}

/// Integrate g against the equilibrium measure over all of R.
pub fn mu_integral(g: impl Fn(f64) -> f64, tol: f64) -> Result<QuadratureResult> {
    mu_integral_split(g, &[], tol)
}

/// Measure of the interval [a, b].
pub fn mu_mass(a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::Domain(format!("invalid interval [{a}, {b}]")));
    }
    let mut breaks = vec![a, b];
    for s in [-1.0, 0.0, 1.0] {
        if a < s && s < b {
            breaks.push(s);
        }
    }
    breaks.sort_unstable_by(f64::total_cmp);
    breaks.dedup();
    let direct = |z: f64| density(z);
    let fns: [&dyn Fn(f64) -> f64; 1] = [&direct];
    let panels: Vec<(usize, f64, f64)> =
        breaks.windows(2).map(|w| (0, w[0], w[1])).collect();
    adaptive(&fns, &panels, tol, MU_MAX_EVALS)
}

// The strip-constant integrand log(1 + 1/(1-z)^2), written with ln_1p so the
// quadratic tail decay survives in floating point.
fn strip_integrand(z: f64) -> f64 {
    let t = 1.0 - z;
    (1.0 / (t * t)).ln_1p()
}

/// L^1 strip constant: (1/2) * || log(1 + 1/(1-z)^2) ||_{L^1(mu)}.
pub fn strip_l1_constant(tol: f64) -> Result<f64> {
    Ok(0.5 * mu_integral(strip_integrand, tol)?.value)
}

/// L^2 strip constant: || log(1 + 1/(1-z)^2) ||_{L^2(mu)}.
pub fn strip_l2_constant(tol: f64) -> Result<f64> {
    let sq = mu_integral(|z| strip_integrand(z) * strip_integrand(z), tol)?;
    Ok(sq.value.sqrt())
}

/// Both strip constants at tolerance 1e-9, computed once and reused by every
/// bound formula so a whole run is deterministic.
pub fn strip_constants() -> (f64, f64) {
    static CACHE: OnceLock<(f64, f64)> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let c1 = strip_l1_constant(1e-9).expect("strip L1 quadrature at fixed tolerance");
        let c2 = strip_l2_constant(1e-9).expect("strip L2 quadrature at fixed tolerance");
        (c1, c2)
    })
}

/// Lower bound for the Robin constant of the strip of half-height eps:
/// robin_real() - c1*eps - c2*eps^{1/8}. May be negative (vacuous) for
/// large eps; clamping is the caller's business.
pub fn robin_strip_lower(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!(
            "strip half-height must lie in (0,1), got {eps}"
        )));
    }
    let (c1, c2) = strip_constants();
    Ok(robin_real() - c1 * eps - c2 * eps.powf(0.125))
}

/// Potential of the equilibrium measure at x + iy:
/// log^+|x+iy| + robin_real() - integral of log|x+iy - z| d mu(z).
/// Constant (= robin_real()) on the real line.
pub fn mu_potential(x: f64, y: f64, tol: f64) -> Result<f64> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::Domain(format!("potential point must be finite, got ({x}, {y})")));
    }
    if y == 0.0 && (x == 1.0 || x == -1.0) {
        return Err(Error::Domain(
            "potential at the density's singular points +-1 is not defined here".into(),
        ));
    }
    let kernel = |z: f64| (x - z).hypot(y).ln();
    let q = mu_integral_split(kernel, &[x], tol)?;
    Ok(log_plus(x.hypot(y)) + robin_real() - q.value)
}

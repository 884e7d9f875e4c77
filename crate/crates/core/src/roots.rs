//! Bracketing and bisection on scalar functions.
//!
//! The dispersion inversion and the collinear phase-matching solver both
//! reduce to "scan a band for a sign change, then bisect". Objective
//! functions are fallible because evaluating a dispersion model can fail.

use crate::Result;

/// Samples `f` at `n` evenly spaced points on `[lo, hi]` (both ends included).
pub fn scan<F>(mut f: F, lo: f64, hi: f64, n: usize) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    assert!(n >= 2, "a scan needs at least two points");
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            // pin the last sample to `hi` exactly
            let x = if i == n - 1 { hi } else { lo + step * i as f64 };
            f(x).map(|y| (x, y))
        })
        .collect()
}

/// Index `i` of the first adjacent pair `(samples[i], samples[i + 1])` whose
/// values straddle zero. A sample that is exactly zero counts as a bracket.
pub fn first_sign_change(samples: &[(f64, f64)]) -> Option<usize> {
    samples
        .windows(2)
        .position(|w| w[0].1 == 0.0 || w[1].1 == 0.0 || (w[0].1 < 0.0) != (w[1].1 < 0.0))
}

/// Stopping rule for [`bisect`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Stop once `|f(x)| <= f_abs`.
    pub f_abs: f64,
    /// Upper bound on iterations; 200 halvings exhaust any f64 interval.
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            f_abs: 0.0,
            max_iter: 200,
        }
    }
}

/// Bisects `f` on `[a, b]`, where `f(a)` and `f(b)` do not share a strict sign.
///
/// Runs until `|f| <= tol.f_abs`, or until the interval can no longer be
/// split in floating point; returns the endpoint or midpoint with the
/// smallest `|f|` seen.
pub fn bisect<F>(mut f: F, mut a: f64, mut b: f64, tol: Tolerance) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    debug_assert!((fa < 0.0) != (fb < 0.0), "bisect called without a bracket");
    let (mut best, mut best_f) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    for _ in 0..tol.max_iter {
        if best_f.abs() <= tol.f_abs {
            break;
        }
        let mid = a + 0.5 * (b - a);
        if mid <= a.min(b) || mid >= a.max(b) {
            break;
        }
        let fm = f(mid)?;
        if fm.abs() < best_f.abs() {
            best = mid;
            best_f = fm;
        }
        if fm == 0.0 {
            break;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(best)
}

/// Golden-section search for the minimum of `f` on `[a, b]`.
pub fn golden_min<F>(mut f: F, mut a: f64, mut b: f64, iters: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

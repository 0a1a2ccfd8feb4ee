//! Kubelka-Munk scattering/absorption constants and their recovery from a
//! measured slab.
//!
//! A homogeneous material is characterized per Hankel frequency by a
//! scattering rate S(q) and an absorption rate K(q) (both 1/mm). Given the
//! spectral pair (R_D, T_D) of one slab of known thickness D, the constants
//! follow from the thin-slab limits
//!
//!   S = lim_{d->0} R_d / d,   K = lim_{d->0} (1 - R_d - T_d) / d,
//!
//! reached by repeatedly solving for the half-thickness slab: the pair
//! (R_h, T_h) that composes with itself back into the current slab.

use serde::{Deserialize, Serialize};

use super::profile::MaterialSample;
use super::slab::SpectralSlab;
use super::{hankel_transform, ScatterError};

/// Per-frequency Kubelka-Munk rates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KmConstants {
    freqs: Vec<f64>,
    scattering: Vec<f64>,
    absorption: Vec<f64>,
}

impl KmConstants {
    pub fn new(
        freqs: Vec<f64>,
        scattering: Vec<f64>,
        absorption: Vec<f64>,
    ) -> Result<Self, ScatterError> {
        if freqs.len() < 2 || freqs.len() != scattering.len() || freqs.len() != absorption.len() {
            return Err(ScatterError::GridMismatch(freqs.len(), scattering.len()));
        }
        for i in 0..freqs.len() {
            let (s, k) = (scattering[i], absorption[i]);
            if !s.is_finite() || !k.is_finite() || s < 0.0 || k < 0.0 {
                return Err(ScatterError::BadValue {
                    at: freqs[i],
                    value: if s.is_finite() && s >= 0.0 { k } else { s },
                });
            }
        }
        Ok(Self {
            freqs,
            scattering,
            absorption,
        })
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    /// S(q), 1/mm.
    pub fn scattering(&self) -> &[f64] {
        &self.scattering
    }

    /// K(q), 1/mm.
    pub fn absorption(&self) -> &[f64] {
        &self.absorption
    }
}

/// Estimate (S, K) per frequency from a measured sample.
///
/// The sample's profiles are Hankel-transformed onto `freqs`, then each
/// frequency runs the halving recursion until successive (S, K) estimates
/// agree to 1e-6 relative, or errors out after `MAX_HALVINGS`.
pub fn estimate_km_constants(
    sample: &MaterialSample,
    freqs: &[f64],
) -> Result<KmConstants, ScatterError> {
    let refl = hankel_transform(&sample.reflection, freqs)?;
    let trans = hankel_transform(&sample.transmission, freqs)?;
    let slab = SpectralSlab::new(freqs.to_vec(), clamp_unit(refl), clamp_unit(trans))?;
    estimate_from_slab(&slab, sample.thickness_mm)
}

/// Same inversion, starting from an already-spectral slab of thickness `d`.
pub fn estimate_from_slab(slab: &SpectralSlab, d: f64) -> Result<KmConstants, ScatterError> {
    let n = slab.len();
    let mut scattering = Vec::with_capacity(n);
    let mut absorption = Vec::with_capacity(n);
    for i in 0..n {
        let (s, k) = invert_frequency(slab.refl()[i], slab.trans()[i], d)
            .ok_or(ScatterError::KmNoConvergence {
                freq: slab.freqs()[i],
                halvings: MAX_HALVINGS,
            })?;
        scattering.push(s);
        absorption.push(k);
    }
    KmConstants::new(slab.freqs().to_vec(), scattering, absorption)
}

const MAX_HALVINGS: usize = 30;
const REL_TOL: f64 = 1e-6;

fn clamp_unit(v: Vec<f64>) -> Vec<f64> {
    // Quadrature ringing can leave tiny negative spectral values; they are
    // not physical and would poison the root-find.
    v.into_iter().map(|x| x.clamp(0.0, 1.0)).collect()
}

fn invert_frequency(mut r: f64, mut t: f64, d: f64) -> Option<(f64, f64)> {
    let mut depth = d;
    let mut prev: Option<(f64, f64)> = None;
    for _ in 0..MAX_HALVINGS {
        depth *= 0.5;
        let (rh, th) = half_slab(r, t)?;
        r = rh;
        t = th;
        let s_est = r / depth;
        let k_est = ((1.0 - r - t) / depth).max(0.0);
        if let Some((s0, k0)) = prev {
            let s_ok = (s_est - s0).abs() <= REL_TOL * s_est.abs().max(1e-12);
            let k_ok = (k_est - k0).abs() <= REL_TOL * k_est.abs().max(1e-12);
            if s_ok && k_ok {
                return Some((s_est, k_est));
            }
        }
        prev = Some((s_est, k_est));
    }
    None
}

/// Solve for the half slab (x, y) = (R_h, T_h) such that composing it with
/// itself reproduces (R, T):
///
///   F1 = x + y^2 x / (1 - x^2) - R = 0,
///   F2 = y^2 / (1 - x^2) - T = 0.
///
/// Damped Newton from the seed (R/2, sqrt(T)), clamped to the physical box
/// 0 <= x < 1, 0 < y <= 1, to tolerance 1e-12.
fn half_slab(r: f64, t: f64) -> Option<(f64, f64)> {
    if r == 0.0 {
        // No reflection at all: purely absorbing/transparent layer.
        return Some((0.0, t.sqrt()));
    }
    let mut x = (0.5 * r).clamp(0.0, 0.999_999);
    let mut y = t.sqrt().clamp(1e-300, 1.0);
    for _ in 0..100 {
        let one_mx2 = 1.0 - x * x;
        let f1 = x + y * y * x / one_mx2 - r;
        let f2 = y * y / one_mx2 - t;
        if f1.abs() < 1e-12 && f2.abs() < 1e-12 {
            return Some((x, y));
        }
        // Jacobian of (F1, F2) in (x, y).
        let j11 = 1.0 + y * y * (1.0 + x * x) / (one_mx2 * one_mx2);
        let j12 = 2.0 * x * y / one_mx2;
        let j21 = 2.0 * x * y * y / (one_mx2 * one_mx2);
        let j22 = 2.0 * y / one_mx2;
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-300 {
            return None;
        }
        let dx = (f1 * j22 - f2 * j12) / det;
        let dy = (f2 * j11 - f1 * j21) / det;
        // Damping: keep the iterate strictly inside the physical box.
        let mut step = 1.0;
        loop {
            let nx = x - step * dx;
            let ny = y - step * dy;
            if nx >= 0.0 && nx < 1.0 && ny > 0.0 && ny <= 1.0 {
                x = nx;
                y = ny;
                break;
            }
            step *= 0.5;
            if step < 1e-8 {
                // Jammed against the boundary.
                x = (x - step * dx).clamp(0.0, 0.999_999_999);
                y = (y - step * dy).clamp(1e-300, 1.0);
                break;
            }
        }
    }
    let one_mx2 = 1.0 - x * x;
    let f1 = x + y * y * x / one_mx2 - r;
    let f2 = y * y / one_mx2 - t;
    if f1.abs() < 1e-10 && f2.abs() < 1e-10 {
        Some((x, y))
    } else {
        None
    }
}

//! Built-in synthetic reference material.
//!
//! A white, weakly absorbing scatterer modeled after opaque 3D-printing
//! resins. Lateral transport enters as a q^2 term on the absorption rate, so
//! deeper slabs blur more. The zero-frequency scattering rate is calibrated
//! by bisection so the transmissive albedo at 3 mm is exactly 20%, which
//! puts the recommended maximum pocket depth at 3 mm.

use super::hankel::default_freq_grid;
use super::km::KmConstants;
use super::profile::MaterialSample;
use super::slab::{slab_profiles, slab_rt};
use super::{inverse_hankel, ScatterError};

/// Absorption-to-scattering ratio at q = 0.
const ABSORPTION_RATIO: f64 = 0.01;
/// Lateral-transport coefficient on K(q) (mm, multiplies q^2).
const DIFFUSION_COEFF: f64 = 0.25;
/// Calibration point: transmissive albedo at this depth equals the target.
const CALIBRATION_DEPTH: f64 = 3.0;
const CALIBRATION_ALBEDO: f64 = 0.20;

/// The reference material on the default frequency grid.
pub fn fixture_material() -> KmConstants {
    let s0 = calibrated_s0();
    let freqs = default_freq_grid();
    let scattering: Vec<f64> = freqs.iter().map(|_| s0).collect();
    let absorption: Vec<f64> = freqs
        .iter()
        .map(|&q| ABSORPTION_RATIO * s0 + DIFFUSION_COEFF * q * q)
        .collect();
    KmConstants::new(freqs, scattering, absorption).expect("fixture constants are valid")
}

/// Zero-frequency scattering rate that hits the calibration albedo.
fn calibrated_s0() -> f64 {
    let albedo = |s: f64| slab_rt(s, ABSORPTION_RATIO * s, CALIBRATION_DEPTH).1;
    let (mut lo, mut hi) = (1e-3, 100.0);
    debug_assert!(albedo(lo) > CALIBRATION_ALBEDO && albedo(hi) < CALIBRATION_ALBEDO);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if albedo(mid) > CALIBRATION_ALBEDO {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A measured-style sample of the fixture: spatial profiles of one slab of
/// the given thickness, as a physical measurement would produce them.
pub fn fixture_sample(thickness_mm: f64) -> Result<MaterialSample, ScatterError> {
    let km = fixture_material();
    let slab = slab_profiles(&km, thickness_mm)?;
    let radii = super::hankel::default_radius_grid();
    let refl = inverse_hankel(slab.freqs(), slab.refl(), &radii)?;
    let trans = inverse_hankel(slab.freqs(), slab.trans(), &radii)?;
    MaterialSample::new("fixture", thickness_mm, refl, trans)
}

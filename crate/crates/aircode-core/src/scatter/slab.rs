//! Hankel-domain slab algebra.
//!
//! A laterally infinite layer is fully described by its spectral reflection
//! and transmission pair (R(q), T(q)). Attaching layers becomes per-frequency
//! algebra: for two stacked slabs,
//!
//!   R12 = R1 + T1 R2 T1 / (1 - R1 R2),
//!   T12 = T1 T2 / (1 - R1 R2),
//!
//! the geometric series over inter-layer bounces. An air gap of thickness h
//! never reflects and spreads transmitted light as (1/2pi) h/(h^2+r^2)^{3/2},
//! whose transform is exactly exp(-h q).

use serde::{Deserialize, Serialize};

use super::km::KmConstants;
use super::ScatterError;

/// Spectral reflection/transmission pair of one layer on a shared
/// ascending frequency grid starting at q = 0.
///
/// `refl` is the reflectance seen from above. Stacking two different layers
/// produces a composite whose underside reflects differently, and the
/// inter-layer bounce series needs exactly that underside value, so the
/// composite's bottom reflectance is carried along too. Tracking both sides
/// is what makes composition associative for arbitrary stacks; symmetric
/// layers (a homogeneous slab, an air gap) have both sides equal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSlab {
    freqs: Vec<f64>,
    refl: Vec<f64>,
    refl_bottom: Vec<f64>,
    trans: Vec<f64>,
}

impl SpectralSlab {
    /// A symmetric layer: both faces share the same reflectance.
    pub fn new(freqs: Vec<f64>, refl: Vec<f64>, trans: Vec<f64>) -> Result<Self, ScatterError> {
        let refl_bottom = refl.clone();
        Self::asymmetric(freqs, refl, refl_bottom, trans)
    }

    pub fn asymmetric(
        freqs: Vec<f64>,
        refl: Vec<f64>,
        refl_bottom: Vec<f64>,
        trans: Vec<f64>,
    ) -> Result<Self, ScatterError> {
        if freqs.len() < 2
            || freqs.len() != refl.len()
            || freqs.len() != trans.len()
            || freqs.len() != refl_bottom.len()
        {
            return Err(ScatterError::GridMismatch(freqs.len(), refl.len().max(trans.len())));
        }
        if freqs[0] != 0.0 {
            return Err(ScatterError::BadGrid("frequency grid must start at 0".into()));
        }
        for w in freqs.windows(2) {
            if !(w[1] > w[0]) {
                return Err(ScatterError::BadGrid(
                    "frequency grid not strictly ascending".into(),
                ));
            }
        }
        for i in 0..freqs.len() {
            for v in [refl[i], refl_bottom[i], trans[i]] {
                if !v.is_finite() || v < 0.0 {
                    return Err(ScatterError::BadValue {
                        at: freqs[i],
                        value: v,
                    });
                }
            }
        }
        if refl[0] + trans[0] > 1.0 + 1e-6 {
            return Err(ScatterError::EnergyViolation(refl[0] + trans[0]));
        }
        Ok(Self {
            freqs,
            refl,
            refl_bottom,
            trans,
        })
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    /// Reflectance seen from above.
    pub fn refl(&self) -> &[f64] {
        &self.refl
    }

    /// Reflectance seen from below.
    pub fn refl_bottom(&self) -> &[f64] {
        &self.refl_bottom
    }

    pub fn trans(&self) -> &[f64] {
        &self.trans
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// Zero-frequency transmission, i.e. the transmissive albedo.
    pub fn trans_dc(&self) -> f64 {
        self.trans[0]
    }

    /// Zero-frequency reflection, i.e. the reflective albedo.
    pub fn refl_dc(&self) -> f64 {
        self.refl[0]
    }

    fn same_grid(&self, other: &Self) -> bool {
        self.freqs.len() == other.freqs.len()
            && self
                .freqs
                .iter()
                .zip(&other.freqs)
                .all(|(a, b)| a == b)
    }
}

/// Air layer of thickness `h` mm: R(q) = 0, T(q) = exp(-h q).
///
/// The spatial profile (1/A) h/(h^2+r^2)^{3/2} integrates to exactly 1 with
/// A = 2 pi, reflecting that air absorbs nothing; at q = 0 the transmission
/// stays 1 regardless of h.
pub fn air_layer(h: f64, freqs: &[f64]) -> Result<SpectralSlab, ScatterError> {
    if !(h > 0.0) {
        return Err(ScatterError::BadGrid(format!("air thickness must be > 0, got {h}")));
    }
    let refl = vec![0.0; freqs.len()];
    let trans = freqs.iter().map(|&q| (-h * q).exp()).collect();
    SpectralSlab::new(freqs.to_vec(), refl, trans)
}

/// Attach `bottom` underneath `top`.
///
/// The bounce series between the layers sees the top layer's underside and
/// the bottom layer's topside:
///
///   R12      = R1  + T1^2 R2 / (1 - R1b R2),
///   R12(bot) = R2b + T2^2 R1b / (1 - R1b R2),
///   T12      = T1 T2 / (1 - R1b R2).
pub fn compose_layers(top: &SpectralSlab, bottom: &SpectralSlab) -> Result<SpectralSlab, ScatterError> {
    if !top.same_grid(bottom) {
        return Err(ScatterError::GridMismatch(top.len(), bottom.len()));
    }
    let n = top.len();
    let mut refl = Vec::with_capacity(n);
    let mut refl_bottom = Vec::with_capacity(n);
    let mut trans = Vec::with_capacity(n);
    for i in 0..n {
        let (r1, r1b, t1) = (top.refl[i], top.refl_bottom[i], top.trans[i]);
        let (r2, r2b, t2) = (bottom.refl[i], bottom.refl_bottom[i], bottom.trans[i]);
        let product = r1b * r2;
        if product >= 1.0 {
            return Err(ScatterError::NonPhysicalComposition {
                freq: top.freqs[i],
                product,
            });
        }
        let denom = 1.0 - product;
        refl.push(r1 + t1 * r2 * t1 / denom);
        refl_bottom.push(r2b + t2 * r1b * t2 / denom);
        trans.push(t1 * t2 / denom);
    }
    SpectralSlab::asymmetric(top.freqs.clone(), refl, refl_bottom, trans)
}

/// Kubelka-Munk closed form for a homogeneous slab of thickness `d`:
///
///   R_d = sinh(g d) / (a sinh(g d) + b cosh(g d)),
///   T_d = b / (a sinh(g d) + b cosh(g d)),
///
/// with a = 1 + K/S, b = sqrt(a^2 - 1), g = sqrt(K (K + 2 S)) per frequency.
/// Where S = 0 the scattering-free limit R = 0, T = exp(-K d) applies, and
/// where K = 0 the absorption-free limit R = S d / (1 + S d) applies.
pub fn slab_profiles(km: &KmConstants, d: f64) -> Result<SpectralSlab, ScatterError> {
    if !(d >= 0.0) {
        return Err(ScatterError::BadGrid(format!("slab thickness must be >= 0, got {d}")));
    }
    let n = km.freqs().len();
    let mut refl = Vec::with_capacity(n);
    let mut trans = Vec::with_capacity(n);
    for i in 0..n {
        let (r, t) = slab_rt(km.scattering()[i], km.absorption()[i], d);
        refl.push(r);
        trans.push(t);
    }
    SpectralSlab::new(km.freqs().to_vec(), refl, trans)
}

/// Single-frequency Kubelka-Munk evaluation; shared with the constants
/// estimator's tests and the fixture calibration.
pub(crate) fn slab_rt(s: f64, k: f64, d: f64) -> (f64, f64) {
    if d == 0.0 {
        return (0.0, 1.0);
    }
    if s <= 0.0 {
        // No scattering: Beer-Lambert absorption only.
        return (0.0, (-k * d).exp());
    }
    if k <= 0.0 {
        // No absorption: R = S d / (1 + S d), T = 1 / (1 + S d).
        let sd = s * d;
        return (sd / (1.0 + sd), 1.0 / (1.0 + sd));
    }
    let a = 1.0 + k / s;
    let b = (a * a - 1.0).sqrt();
    let g = (k * (k + 2.0 * s)).sqrt();
    let x = g * d;
    // Overflow-safe form: divide numerator and denominator by cosh(x) via
    // e = exp(-2x): sinh/cosh -> (1-e)/(1+e), 1/cosh -> 2 exp(-x)/(1+e).
    let e = (-2.0 * x).exp();
    let tanh_x = (1.0 - e) / (1.0 + e);
    let sech_x = 2.0 * (-x).exp() / (1.0 + e);
    let denom = a * tanh_x + b;
    ((tanh_x / denom), (b * sech_x / denom))
}

/// Reflectance of the three-layer stack: top slab of thickness `d`, air gap
/// of thickness `h`, and a thick substrate slab of thickness `substrate_d`.
///
/// The substrate must be effectively semi-infinite (T(0) < 1e-4).
pub fn three_layer_reflectance(
    km: &KmConstants,
    d: f64,
    h: f64,
    substrate_d: f64,
) -> Result<SpectralSlab, ScatterError> {
    if !(d > 0.0 && h > 0.0 && substrate_d > 0.0) {
        return Err(ScatterError::BadGrid(
            "three-layer thicknesses must all be > 0".into(),
        ));
    }
    let substrate = slab_profiles(km, substrate_d)?;
    let albedo = substrate.trans_dc();
    if albedo >= 1e-4 {
        return Err(ScatterError::SubstrateTooThin { albedo });
    }
    let top = slab_profiles(km, d)?;
    let air = air_layer(h, km.freqs())?;
    compose_layers(&top, &compose_layers(&air, &substrate)?)
}

/// Total fraction of light transmitted through a slab of thickness `d`:
/// the zero-frequency Hankel value of T_d.
pub fn transmissive_albedo(km: &KmConstants, d: f64) -> Result<f64, ScatterError> {
    Ok(slab_profiles(km, d)?.trans_dc())
}

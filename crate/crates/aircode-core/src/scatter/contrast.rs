//! Surface contrast above a buried air pocket, and the design search that
//! picks pocket depth and thickness.
//!
//! Radiosity under near-uniform illumination is proportional to the surface
//! integral of the local reflection profile. A pocket redistributes
//! backscattered light sideways, so a disc integral centered above the
//! pocket comes up short of the solid-material albedo; that deficit, as a
//! fraction of the albedo, is the visible contrast. The design search holds
//! it at the perceptual threshold.

use serde::{Deserialize, Serialize};

use super::hankel::{default_radius_grid, inverse_hankel};
use super::km::KmConstants;
use super::profile::RadialProfile;
use super::slab::{slab_profiles, three_layer_reflectance, transmissive_albedo};
use super::ScatterError;

/// Geometric parameters of one air pocket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AirPocketParams {
    /// Top-layer thickness above the pocket (mm).
    pub depth_d: f64,
    /// Pocket thickness (mm).
    pub thickness_h: f64,
    /// Pocket lateral size (mm).
    pub lateral_s: f64,
}

impl AirPocketParams {
    pub fn new(depth_d: f64, thickness_h: f64, lateral_s: f64) -> Result<Self, ScatterError> {
        if !(depth_d > 0.0 && thickness_h > 0.0 && lateral_s > 0.0) {
            return Err(ScatterError::BadGrid(
                "air pocket parameters must be strictly positive".into(),
            ));
        }
        Ok(Self {
            depth_d,
            thickness_h,
            lateral_s,
        })
    }
}

/// Perceptual and mechanical design targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignTargets {
    /// Target |contrast| at the surface (fraction).
    pub contrast_target: f64,
    /// Minimum acceptable transmissive albedo of the top layer (fraction).
    pub albedo_floor_tau: f64,
    /// Minimum top-layer thickness for mechanical strength (mm).
    pub d_min: f64,
}

impl Default for DesignTargets {
    fn default() -> Self {
        Self {
            contrast_target: 0.05,
            albedo_floor_tau: 0.20,
            d_min: 1.0,
        }
    }
}

impl DesignTargets {
    pub fn validate(&self) -> Result<(), ScatterError> {
        if !(self.contrast_target > 0.0 && self.contrast_target < 1.0) {
            return Err(ScatterError::DesignInfeasible(format!(
                "contrast target {} outside (0, 1)",
                self.contrast_target
            )));
        }
        if !(self.albedo_floor_tau > 0.0 && self.albedo_floor_tau < 1.0) {
            return Err(ScatterError::DesignInfeasible(format!(
                "albedo floor {} outside (0, 1)",
                self.albedo_floor_tau
            )));
        }
        if !(self.d_min > 0.0) {
            return Err(ScatterError::DesignInfeasible("d_min must be > 0".into()));
        }
        Ok(())
    }
}

/// Result of a contrast evaluation above one pocket.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ContrastResult {
    /// Disc-integrated radiosity above the pocket center.
    pub c_over_pocket: f64,
    /// Reflective albedo of the solid thick material.
    pub c_solid: f64,
    /// Signed contrast (c - c0) / c0; negative for pockets.
    pub contrast: f64,
}

impl ContrastResult {
    pub fn magnitude(&self) -> f64 {
        self.contrast.abs()
    }
}

/// Local pair profile across a finite pocket: the reflection between a point
/// above the pocket and a point in the solid is the geometric mean of the
/// two local profiles; matched endpoints keep their own profile.
pub fn finite_pocket_reflection(
    r0: &RadialProfile,
    rc: &RadialProfile,
    xi_in_solid: bool,
    xo_in_solid: bool,
) -> Result<RadialProfile, ScatterError> {
    if r0.len() != rc.len() || r0.radii() != rc.radii() {
        return Err(ScatterError::GridMismatch(r0.len(), rc.len()));
    }
    match (xi_in_solid, xo_in_solid) {
        (true, true) => Ok(r0.clone()),
        (false, false) => Ok(rc.clone()),
        _ => {
            let values: Vec<f64> = r0
                .values()
                .iter()
                .zip(rc.values())
                .map(|(&a, &b)| (a * b).sqrt())
                .collect();
            RadialProfile::new(r0.radii().to_vec(), values)
        }
    }
}

/// Spatial-domain profile bundle for one (material, d, h) design point.
pub(crate) struct PocketProfiles {
    pub solid: RadialProfile,
    pub layered: RadialProfile,
    pub blend: RadialProfile,
    pub solid_albedo: f64,
}

pub(crate) fn pocket_profiles(km: &KmConstants, d: f64, h: f64) -> Result<PocketProfiles, ScatterError> {
    let thick = semi_infinite_depth(km)?;
    let solid_spec = slab_profiles(km, thick)?;
    let layered_spec = three_layer_reflectance(km, d, h, thick)?;
    let radii = default_radius_grid();
    let solid = inverse_hankel(solid_spec.freqs(), solid_spec.refl(), &radii)?;
    let layered = inverse_hankel(layered_spec.freqs(), layered_spec.refl(), &radii)?;
    let blend = finite_pocket_reflection(&solid, &layered, true, false)?;
    Ok(PocketProfiles {
        solid,
        layered,
        blend,
        solid_albedo: solid_spec.refl_dc(),
    })
}

/// Thickness at which the material is effectively semi-infinite
/// (transmissive albedo below 1e-5).
pub(crate) fn semi_infinite_depth(km: &KmConstants) -> Result<f64, ScatterError> {
    let mut d = 8.0;
    for _ in 0..24 {
        if transmissive_albedo(km, d)? < 1e-5 {
            return Ok(d);
        }
        d *= 2.0;
    }
    Err(ScatterError::DesignInfeasible(
        "material never becomes opaque; cannot build a thick substrate".into(),
    ))
}

/// Integration disc radius: 5x the pocket size, clipped to the profile grid.
fn disc_radius(lateral_s: f64, r_max: f64) -> f64 {
    (5.0 * lateral_s).min(r_max)
}

/// Radiosity contrast directly above the center of a square pocket.
///
/// c(x_o) integrates the pair profile over a disc: the geometric-mean blend
/// everywhere, plus the (layered - blend) correction over the pocket square
/// itself. The blend part is a radial integral; the correction integrand is
/// bounded, so a Cartesian sum over the pocket square suffices.
pub fn surface_contrast(km: &KmConstants, p: &AirPocketParams) -> Result<ContrastResult, ScatterError> {
    let profiles = pocket_profiles(km, p.depth_d, p.thickness_h)?;
    contrast_from_profiles(&profiles, p.lateral_s)
}

pub(crate) fn contrast_from_profiles(
    profiles: &PocketProfiles,
    lateral_s: f64,
) -> Result<ContrastResult, ScatterError> {
    let blend = &profiles.blend;
    let radii = blend.radii();
    let spacing = radii[1] - radii[0];
    if lateral_s < 2.0 * spacing {
        return Err(ScatterError::LateralTooSmall {
            lateral: lateral_s,
            spacing,
        });
    }
    let rho = disc_radius(lateral_s, blend.r_max());

    // Radial part: 2 pi int_0^rho blend(r) r dr.
    let mut disc = 0.0;
    for i in 1..radii.len() {
        if radii[i] > rho {
            // Partial last interval up to rho.
            let r0 = radii[i - 1];
            let t = (rho - r0) / (radii[i] - r0);
            let v_rho = blend.values()[i - 1] * (1.0 - t) + blend.values()[i] * t;
            disc += 0.5 * (blend.values()[i - 1] * r0 + v_rho * rho) * (rho - r0);
            break;
        }
        disc += 0.5
            * (blend.values()[i - 1] * radii[i - 1] + blend.values()[i] * radii[i])
            * (radii[i] - radii[i - 1]);
    }
    disc *= 2.0 * std::f64::consts::PI;

    // Pocket-square correction: sum of (layered - blend) over |x|,|y| <= s/2.
    let half = 0.5 * lateral_s;
    let n = ((lateral_s / spacing).ceil() as usize).max(2);
    let delta = lateral_s / n as f64;
    let mut corr = 0.0;
    for iy in 0..n {
        let y = -half + (iy as f64 + 0.5) * delta;
        for ix in 0..n {
            let x = -half + (ix as f64 + 0.5) * delta;
            let r = (x * x + y * y).sqrt();
            if r <= rho {
                corr += profiles.layered.sample(r) - blend.sample(r);
            }
        }
    }
    corr *= delta * delta;

    let c = disc + corr;
    let c0 = profiles.solid_albedo;
    if !(c0 > 0.0) {
        return Err(ScatterError::DesignInfeasible(
            "solid material has zero reflective albedo".into(),
        ));
    }
    let contrast = (c - c0) / c0;
    if contrast <= -1.0 {
        return Err(ScatterError::DesignInfeasible(format!(
            "contrast {contrast} out of range"
        )));
    }
    Ok(ContrastResult {
        c_over_pocket: c,
        c_solid: c0,
        contrast,
    })
}

/// Recommend pocket parameters for a material: depth from the transmissive
/// albedo bound, thickness from the contrast target.
pub fn recommend_parameters(
    km: &KmConstants,
    targets: &DesignTargets,
    lateral_s: f64,
) -> Result<AirPocketParams, ScatterError> {
    targets.validate()?;

    // d_max: largest depth whose transmissive albedo still clears the floor.
    let tau = targets.albedo_floor_tau;
    if transmissive_albedo(km, targets.d_min)? < tau {
        return Err(ScatterError::DesignInfeasible(format!(
            "albedo at d_min = {} mm is already below tau = {tau}",
            targets.d_min
        )));
    }
    let mut hi = targets.d_min;
    while transmissive_albedo(km, hi)? >= tau {
        hi *= 2.0;
        if hi > 1e4 {
            return Err(ScatterError::DesignInfeasible(
                "transmissive albedo never drops below tau".into(),
            ));
        }
    }
    let mut lo = targets.d_min;
    while hi - lo > 0.01 {
        let mid = 0.5 * (lo + hi);
        if transmissive_albedo(km, mid)? >= tau {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let d_max = 0.5 * (lo + hi);
    if targets.d_min > d_max {
        return Err(ScatterError::DesignInfeasible(format!(
            "d_min = {} mm exceeds d_max = {d_max:.3} mm",
            targets.d_min
        )));
    }
    let depth = 0.5 * (targets.d_min + d_max);

    // h: bisect the (monotone) |contrast| to the target.
    let profiles_at = |h: f64| pocket_profiles(km, depth, h);
    let magnitude = |h: f64| -> Result<f64, ScatterError> {
        Ok(contrast_from_profiles(&profiles_at(h)?, lateral_s)?.magnitude())
    };
    let (mut h_lo, mut h_hi) = (0.01, 10.0);
    let target = targets.contrast_target;
    if magnitude(h_lo)? > target {
        return Err(ScatterError::DesignInfeasible(format!(
            "contrast at h = {h_lo} mm already exceeds the target {target}"
        )));
    }
    if magnitude(h_hi)? < target {
        return Err(ScatterError::DesignInfeasible(format!(
            "no pocket thickness in [{h_lo}, {h_hi}] mm reaches contrast {target}"
        )));
    }
    for _ in 0..60 {
        let mid = 0.5 * (h_lo + h_hi);
        let m = magnitude(mid)?;
        if (m - target).abs() < 1e-4 {
            h_lo = mid;
            h_hi = mid;
            break;
        }
        if m < target {
            h_lo = mid;
        } else {
            h_hi = mid;
        }
        if h_hi - h_lo < 1e-5 {
            break;
        }
    }
    let h = 0.5 * (h_lo + h_hi);
    AirPocketParams::new(depth, h, lateral_s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scatter::fixture_material;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn blend_degenerate_cases() {
        let grid: Vec<f64> = (0..32).map(|i| i as f64 * 0.1).collect();
        let vals: Vec<f64> = grid.iter().map(|&r| (1.0 + r).recip()).collect();
        let p = RadialProfile::new(grid.clone(), vals).unwrap();
        let zero = RadialProfile::new(grid.clone(), vec![0.0; 32]).unwrap();

        // Same profile on both sides: the blend is that profile.
        let same = finite_pocket_reflection(&p, &p, true, false).unwrap();
        for (a, b) in same.values().iter().zip(p.values()) {
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
        // Zero layered profile: blend vanishes.
        let z = finite_pocket_reflection(&p, &zero, true, false).unwrap();
        assert!(z.values().iter().all(|&v| v == 0.0));
        // Matched endpoints pick their own profile.
        let solid = finite_pocket_reflection(&p, &zero, true, true).unwrap();
        assert_eq!(solid.values(), p.values());
        let pocket = finite_pocket_reflection(&p, &zero, false, false).unwrap();
        assert_eq!(pocket.values(), zero.values());
    }

    #[test]
    fn blend_bounded_by_min_max_of_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let grid: Vec<f64> = (0..64).map(|i| i as f64 * 0.05).collect();
        for _ in 0..50 {
            let a: Vec<f64> = (0..64).map(|_| rng.gen::<f64>()).collect();
            let b: Vec<f64> = (0..64).map(|_| rng.gen::<f64>()).collect();
            let pa = RadialProfile::new(grid.clone(), a.clone()).unwrap();
            let pb = RadialProfile::new(grid.clone(), b.clone()).unwrap();
            let blend = finite_pocket_reflection(&pa, &pb, false, true).unwrap();
            for i in 0..64 {
                let lo = a[i].min(b[i]);
                let hi = a[i].max(b[i]);
                assert!(blend.values()[i] >= lo - 1e-12 && blend.values()[i] <= hi + 1e-12);
            }
        }
    }

    #[test]
    fn contrast_vanishes_with_pocket_thickness() {
        let km = fixture_material();
        let p = AirPocketParams::new(2.0, 1e-4, 1.5).unwrap();
        let c = surface_contrast(&km, &p).unwrap();
        assert!(c.magnitude() < 2e-3, "contrast {} for vanishing pocket", c.contrast);
        assert!(c.c_solid > 0.0);
    }

    #[test]
    fn contrast_monotone_in_thickness_and_depth() {
        let km = fixture_material();
        // |contrast| grows with h at fixed d.
        let mut last = -1.0;
        for i in 1..=10 {
            let h = 0.2 * i as f64;
            let c = surface_contrast(&km, &AirPocketParams::new(2.0, h, 1.5).unwrap()).unwrap();
            assert!(c.contrast <= 0.0, "pocket must darken, got {}", c.contrast);
            assert!(
                c.magnitude() > last,
                "contrast magnitude fell at h = {h}: {} <= {last}",
                c.magnitude()
            );
            last = c.magnitude();
        }
        // |contrast| falls with d at fixed h.
        let mut last = f64::INFINITY;
        for i in 1..=6 {
            let d = 0.5 * i as f64;
            let c = surface_contrast(&km, &AirPocketParams::new(d, 1.0, 1.5).unwrap()).unwrap();
            assert!(
                c.magnitude() < last,
                "contrast magnitude rose at d = {d}: {} >= {last}",
                c.magnitude()
            );
            last = c.magnitude();
        }
    }

    #[test]
    fn rejects_tiny_pockets() {
        let km = fixture_material();
        let p = AirPocketParams::new(2.0, 0.5, 0.05).unwrap();
        match surface_contrast(&km, &p) {
            Err(ScatterError::LateralTooSmall { .. }) => {}
            other => panic!("expected lateral-size rejection, got {other:?}"),
        }
    }

    #[test]
    fn recommendation_meets_targets() {
        let km = fixture_material();
        let targets = DesignTargets::default();
        let p = recommend_parameters(&km, &targets, 1.5).unwrap();
        // Fixture is calibrated so the albedo floor sits at 3.0 mm.
        assert!(p.depth_d >= targets.d_min);
        assert_relative_eq!(p.depth_d, 2.0, epsilon = 0.05);
        // Returned h reproduces the contrast target.
        let c = surface_contrast(&km, &p).unwrap();
        assert!(
            (c.magnitude() - targets.contrast_target).abs() < 1e-3,
            "re-evaluated contrast {} vs target {}",
            c.magnitude(),
            targets.contrast_target
        );
    }

    #[test]
    fn doubling_contrast_target_deepens_pockets() {
        let km = fixture_material();
        let mut t1 = DesignTargets::default();
        t1.contrast_target = 0.03;
        let mut t2 = DesignTargets::default();
        t2.contrast_target = 0.06;
        let p1 = recommend_parameters(&km, &t1, 1.5).unwrap();
        let p2 = recommend_parameters(&km, &t2, 1.5).unwrap();
        assert!(
            p2.thickness_h > p1.thickness_h,
            "h must grow with the target: {} vs {}",
            p2.thickness_h,
            p1.thickness_h
        );
    }

    #[test]
    fn infeasible_targets_are_reported() {
        let km = fixture_material();
        let mut targets = DesignTargets::default();
        targets.d_min = 50.0; // far past d_max for the fixture
        match recommend_parameters(&km, &targets, 1.5) {
            Err(ScatterError::DesignInfeasible(msg)) => {
                assert!(msg.contains("d_min") || msg.contains("tau"), "msg: {msg}");
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }
}

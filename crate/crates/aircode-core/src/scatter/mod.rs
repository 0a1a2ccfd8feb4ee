//! Radiometric layer math for subsurface air-pocket design.
//!
//! Everything here operates on radially symmetric scattering profiles and
//! their Hankel transforms. In the Hankel domain, attaching layers becomes
//! per-frequency algebra, which is what makes the air-pocket contrast model
//! cheap enough to drive a design search.
//!
//! All operations are pure functions of their inputs: no globals, no interior
//! mutability, deterministic results, safe to call from any number of threads.

mod bessel;
mod contrast;
mod fixture;
mod hankel;
mod km;
mod profile;
mod slab;

pub use bessel::bessel_j0;
pub use contrast::{
    finite_pocket_reflection, recommend_parameters, surface_contrast, AirPocketParams,
    ContrastResult, DesignTargets,
};
pub use fixture::{fixture_material, fixture_sample};
pub use hankel::{default_freq_grid, default_radius_grid, hankel_transform, inverse_hankel};
pub use km::{estimate_km_constants, KmConstants};
pub use profile::{profiles_from_csv, profiles_to_csv, MaterialSample, RadialProfile};
pub use slab::{
    air_layer, compose_layers, slab_profiles, three_layer_reflectance, transmissive_albedo,
    SpectralSlab,
};

/// Errors from profile handling, transforms, and the design search.
#[derive(Debug, thiserror::Error)]
pub enum ScatterError {
    #[error("profile is empty or sample counts mismatch")]
    EmptyProfile,
    #[error("bad sample grid: {0}")]
    BadGrid(String),
    #[error("non-finite or negative profile value {value} at r = {at}")]
    BadValue { at: f64, value: f64 },
    #[error("profile energy {0} exceeds 1 (non-physical)")]
    EnergyViolation(f64),
    #[error("frequency grid too coarse for r_max = {r_max} mm (dq = {dq}, need <= {limit})")]
    FrequencyGridTooCoarse { dq: f64, limit: f64, r_max: f64 },
    #[error("layer composition is non-physical: R1*R2 = {product} >= 1 at q = {freq}")]
    NonPhysicalComposition { freq: f64, product: f64 },
    #[error("slab grids differ (lengths {0} vs {1} or unequal frequencies)")]
    GridMismatch(usize, usize),
    #[error("Kubelka-Munk halving did not converge at q = {freq} after {halvings} halvings")]
    KmNoConvergence { freq: f64, halvings: usize },
    #[error("substrate too thin: transmissive albedo {albedo} >= 1e-4")]
    SubstrateTooThin { albedo: f64 },
    #[error("pocket lateral size {lateral} mm below twice the sample spacing {spacing} mm")]
    LateralTooSmall { lateral: f64, spacing: f64 },
    #[error("design infeasible: {0}")]
    DesignInfeasible(String),
    #[error("csv row {row}: {message}")]
    Csv { row: usize, message: String },
}

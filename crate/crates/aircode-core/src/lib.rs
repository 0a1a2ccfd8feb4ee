//! AirCode core — design, simulation, and decoding of subsurface air-pocket
//! optical tags.
//!
//! A tag is a grid of small air pockets buried a millimeter or two under the
//! surface of a scattering material. The pockets barely change the surface
//! appearance under ordinary light, but they reshape the subsurface (global)
//! light transport, so a structured-light imaging pass reveals them.
//!
//! The crate is organized along the pipeline:
//!
//! 1. [`scatter`] — radiometric layer math: radial scattering profiles,
//!    Hankel transforms, Kubelka-Munk slab constants, layer composition,
//!    contrast prediction, and pocket design-parameter recommendation.
//! 2. [`codec`] — payload ↔ tag layout: Reed-Solomon coding, the marker /
//!    known-bit / data-bit grid, and printable pocket geometry export.
//! 3. [`imager`] — forward simulation: radiosity rendering of the global
//!    component, perspective camera warps, imaging degradations, structured
//!    illumination capture, and direct/global separation.
//! 4. [`decoder`] — payload and pose recovery from a captured global image:
//!    intensity flattening, multi-scale ellipse detection, marker quad
//!    search, rectification, on-the-fly SVM bit classification, and planar
//!    pose estimation.
//! 5. [`sim`] and [`cli`] — reproducible end-to-end harnesses.

pub mod scatter;

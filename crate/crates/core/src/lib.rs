//! Rosette harmonic mappings of the unit disk.
//!
//! `f_beta = e^{i beta/2} h_n + e^{-i beta/2} conj(g_n)` where `h_n` and `g_n`
//! are built from two specialised Gauss hypergeometric functions. The crate
//! evaluates the mappings, analyses their boundary curves (cusps, nodes,
//! curvature) and numerically certifies their global properties.

pub mod angle;
pub mod boundary;
mod error;
pub mod mapping;
pub mod special_fns;
pub mod verification;

pub use boundary::{
    boundary_derivative, boundary_point, detect_arg_nonmonotonicity, extract_features,
    halfspeed_reparam, separation_angle, total_curvature, BoundaryFeature, CurveSample,
    FeatureKind, FeatureReport, SeparationSign,
};
pub use error::{Result, RosetteError};
pub use mapping::{
    canonical_rotation, hypocycloid, reduce_beta, MapValue, RosetteMap, RosetteParams,
};
pub use special_fns::{
    coeff, endpoint_values, eval_series, gamma_real, CoeffTriple, EndpointValues, SeriesKind,
    SeriesSpec, TruncationPolicy,
};

//! Analysis, parameter design and Monte Carlo simulation of random-access
//! peer discovery in Poisson networks.
//!
//! The analytical layers are generic over [`Real`] (`f32` or `f64`); the
//! simulator works in `f64`. Type aliases for both precisions are provided
//! at the crate root.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Coefficient tables and reference values keep their published digits.
#![allow(clippy::excessive_precision)]

pub mod analysis;
pub mod design;
pub mod numerics;
pub mod simulator;

mod error;
mod scalar;

pub use error::{Error, Result};
pub use scalar::{db_to_linear, linear_to_db, Real};

pub type ChannelModelF64 = analysis::ChannelModel<f64>;
pub type DiscoveryParamsF64 = analysis::DiscoveryParams<f64>;
pub type NetworkModelF64 = analysis::NetworkModel<f64>;
pub type EsBoundsF64 = analysis::EsBounds<f64>;
pub type RateModelF64 = design::RateModel<f64>;
pub type PowerDesignF64 = design::PowerDesign<f64>;

pub type ChannelModelF32 = analysis::ChannelModel<f32>;
pub type DiscoveryParamsF32 = analysis::DiscoveryParams<f32>;
pub type NetworkModelF32 = analysis::NetworkModel<f32>;
pub type EsBoundsF32 = analysis::EsBounds<f32>;
pub type RateModelF32 = design::RateModel<f32>;
pub type PowerDesignF32 = design::PowerDesign<f32>;

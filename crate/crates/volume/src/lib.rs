//! Synthetic volume images of filaments and foam cells, the multi-separator
//! instances built from them, and a seeded watershed baseline.

pub mod builder;
pub mod edt;
pub mod error;
pub mod rng;
pub mod synth;
pub mod volume;
pub mod watershed;

pub use error::VolumeError;
pub use volume::{BinaryVolume, DistanceField, GrayVolume, Volume};

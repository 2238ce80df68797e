//! Classical and number-theoretic discrete Hilbert transforms.
//!
//! The crate is organised bottom-up:
//!
//! * [`modmath`]: residues and inverses modulo a power of two.
//! * [`exactlin`]: exact rational/integer dense matrices, determinants and
//!   inversion over Q and over Z/2^t.
//! * [`classic_dht`]: the classical discrete Hilbert transform on finite
//!   windows and its real-valued matrix.
//! * [`ntdht`]: construction and structural analysis of the
//!   number-theoretic DHT matrix, including the published 16-point tables.
//! * [`pipeline`]: forward/inverse transforms on integer signals, exact
//!   round trips and the mod-M inverse search.
//! * [`analysis`]: figure presets, transition counting, peak detection and
//!   CSV/SVG emission used by the command-line tool.

pub mod analysis;
pub mod classic_dht;
mod error;
pub mod exactlin;
pub mod modmath;
pub mod ntdht;
pub mod pipeline;
mod serde_display;

pub use error::{Error, Result};

pub use classic_dht::{DhtMatrix, DhtWindowSpec, Signal};
pub use exactlin::{BigFraction, IntMatrix, Matrix, RationalMatrix};
pub use modmath::{PowerOfTwoModulus, Residue};
pub use ntdht::{NtMatrixSpec, Variant};
pub use pipeline::ReductionMode;

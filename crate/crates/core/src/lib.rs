//! Box-ball system on rectangular-tableau crystals `B^{k,l}` of affine type A.
//!
//! The crate covers tableau combinatorics and Schensted insertion, the
//! signature rule for Kashiwara operators, the combinatorial R with its
//! energy function, carrier time evolution with conserved quantities, and
//! soliton scattering.

pub mod bbs;
pub mod checks;
pub mod cli;
pub mod crystal;
pub mod error;
pub mod insertion;
pub mod rmatrix;
pub mod soliton;
pub mod tableau;

pub use bbs::{BbsState, CarrierTrace};
pub use crystal::CrystalTensor;
pub use error::{Error, Result};
pub use rmatrix::{apply_r, energy_h, oracle_r, RResult};
pub use soliton::{Soliton, SolitonConfig};
pub use tableau::{Letter, Shape, Tableau, Word};

//! Odd and even involutive FL_e-chains built from bunches of layer groups.
//!
//! A [`bunch::Bunch`] describes a chain by a finite skeleton of layers, each
//! carrying a totally ordered abelian group; [`chain::Chain`] realises the
//! chain and its operations. The remaining modules go the other way
//! (decomposing finite tables), compare bunches ([`embed`]), fill gaps
//! ([`densify`]) and map chains into the rationals ([`standardize`]).

pub mod bunch;
pub mod chain;
pub mod cli;
pub mod decompose;
pub mod densify;
pub mod embed;
pub mod error;
pub mod fixtures;
pub mod ogroup;
pub mod oracle;
pub mod standardize;
pub mod table;

pub use bunch::{Bunch, BunchType, Layer, LayerClass};
pub use chain::{Chain, ChainElement};
pub use error::{Error, Result};
pub use ogroup::{GElem, Hom, HomExpr, OGroup, Subgroup, SubgroupKind};
pub use table::CayleyTable;

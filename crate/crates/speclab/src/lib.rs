//! A workbench for cardinality spectra, decision procedures, and
//! quantifier-free combination of parametric first-order theories.

pub mod cc;
pub mod cli;
pub mod combine;
pub mod contracts;
pub mod error;
pub mod gen;
pub mod interp;
pub mod logic;
pub mod member;
pub mod minmod;
pub mod oracle;
pub mod params;
pub mod parse;
pub mod purify;
pub mod recover;
pub mod search;
pub mod spectra;
pub mod theories;
pub mod theory;

pub use error::{Error, Result};

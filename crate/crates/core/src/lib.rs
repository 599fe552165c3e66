//! Explicit quantum-design constructions and verifiers.
//!
//! The crate builds the named configurations (standard and iso-entangled
//! MUBs in dimension four, a qutrit SIC, Platonic mixed-state designs,
//! interval and simplex designs), decides design membership of arbitrary
//! ensembles against the mixed-state / projective / unitary / simplicial
//! criteria, and runs the measure-transport pipelines: partial trace,
//! decoherence and Cartesian products, plus linear tomography on verified
//! two-designs. A seeded Monte-Carlo oracle provides ground truth for every
//! analytic formula used.

pub mod constructions;
pub mod error;
pub mod moments;
pub mod perm;
pub mod pinned;
pub mod reference;
pub mod sampling;
pub mod simplex;
pub mod state;
pub mod tomography;

pub use error::{Error, Result};

//! Computable core of the bimonoid structure on permutohedral space.
//!
//! The crate covers set compositions and the Tits monoid, preposets and the
//! pointed bimonoid `O•`, coroot cones, Boolean functions and plates, lattice
//! point bialgebras, an exact torus-orbit model of permutohedral space, opens
//! indexed by preposets, and a generic law-checking harness.

pub mod axioms;
pub mod boolfun;
pub mod cli;
pub mod cones;
pub mod error;
pub mod json;
pub mod label;
pub mod opens;
pub mod plates;
pub mod points;
pub mod preposet;
pub mod random;
pub mod sections;
pub mod setcomp;
pub mod vector;

pub use boolfun::BooleanFunction;
pub use cones::{CoweightVector, LatticeBox};
pub use error::{Error, Result};
pub use label::{GroundSet, Label};
pub use opens::ToricOpen;
pub use plates::{FlatSpec, Plate};
pub use points::PermPoint;
pub use preposet::{AugPreposet, Preposet};
pub use sections::{Monomial, SectionBasis, TensorWord};
pub use setcomp::{Bijection, Composition, Perm};
pub use vector::AffinePoint;

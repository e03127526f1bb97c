//! Exact alcove geometry for the affine Weyl group of type A2: Bruhat
//! hexagons, the Carrell-Peterson statistic, equivariant multiplicities,
//! and the rationally smooth and smooth loci of Schubert varieties.

pub mod alcove;
pub mod bruhat;
pub mod error;
pub mod kumar;
pub mod loci;
pub mod qstat;
pub mod verify;

pub use alcove::{AffineElement, ChamberId, FiniteRoot, Orientation, Parity, Point, Reflection, Region};
pub use bruhat::{DegenerateHull, Hexagon, Hull};
pub use error::{Error, Result};

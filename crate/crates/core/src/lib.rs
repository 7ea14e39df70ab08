//! Census of embedded multigraphs on the sphere and in the plane.
//!
//! A graph embedded in an oriented surface is stored as a combinatorial map:
//! darts with a pairing involution `alpha` and a vertex rotation `sigma`.
//! Face cycles fall out as orbits of `sigma ∘ alpha`, which pins down the
//! genus, so "spherical" and "planar" are checkable properties rather than
//! drawings. On top of that sit canonical codes (isomorphism keys), an
//! exhaustive census by edge count, and a reading of each plane graph as the
//! separatrix diagram of a Morse flow on the disk.

pub mod canon;
pub mod census;
pub mod format;
pub mod map;
pub mod morse;
pub mod verify;

//! Finite groups given by generators, their Cayley graphs and balls, and
//! the search for graphical regular representations.

pub mod autos;
pub mod cayley;
pub mod classify;
pub mod coverings;
pub mod enlarge;
pub mod error;
pub mod genset;
pub mod group;
pub mod instances;
pub mod triangles;

pub use error::{Error, Result};
pub use genset::{ball_elements, GenSet};
pub use group::{make_group, Element, Group, GroupSpec};

/// Resource limits shared by the search routines.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Largest ball `S^{<=n}` that may be materialized.
    pub ball_elements: usize,
    /// Largest group that may be enumerated element by element.
    pub enumerate: usize,
    /// Vertex limit for automorphism search with a fixed vertex.
    pub vertices_fixed: usize,
    /// Vertex limit for automorphism search without a fixed vertex.
    pub vertices_free: usize,
    /// Automorphisms listed before giving up.
    pub automorphisms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            ball_elements: 200_000,
            enumerate: 100_000,
            vertices_fixed: 5000,
            vertices_free: 512,
            automorphisms: 1_000_000,
        }
    }
}

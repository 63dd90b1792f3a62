//! Homological stabilizer codes on graphs embedded in orientable surfaces.
//!
//! The crate builds combinatorial maps for common lattices, transforms and
//! analyzes them (dual, medial, face colorings, Z2 homology), decides which
//! maps admit a homological code, constructs those codes and checks their
//! parameters with exact GF(2) linear algebra and exhaustive distance search.

pub mod features;
pub mod gf2;
pub mod hsc;
pub mod lattices;
pub mod map;
pub mod pauli;
pub mod stabilizer;

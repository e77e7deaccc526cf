//! Numerical model of U acting on hyperbolic space.

pub mod axes;
pub mod dodecahedron;
pub mod eisenstein;
pub mod generators;
pub mod lorentz;
pub mod polyhedra;
pub mod tessellation;

pub use dodecahedron::{right_angled_dodecahedron, KleinDodecahedron};
pub use eisenstein::{label_axis, EisensteinInt};
pub use generators::{generators_u, word_matrix};
pub use lorentz::{rotation_about_chord, LorentzMatrix};
pub use polyhedra::dihedral_table;
pub use tessellation::{tessellate, TessellationPatch};

/// Largest supported tessellation depth.
pub const MAX_DEPTH: usize = 4;

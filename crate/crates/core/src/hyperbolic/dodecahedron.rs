//! The right-angled regular dodecahedron D₀ in the Klein ball.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::lorentz::Vec3;
use super::polyhedra::{dodecahedron, face_adjacency, klein_dihedral, Face, GOLDEN};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KleinDodecahedron {
    /// Radius of the Klein ball.
    pub r: f64,
    pub vertices: Vec<Vec3>,
    pub faces: Vec<Face>,
    /// Endpoints (in increasing coordinate order) of the edges (t,0,φ), (φ,t,0), (0,φ,t),
    /// the rotation axes of a, b and c.
    pub edge_axes: [[Vec3; 2]; 3],
}

/// Regular dodecahedron whose dihedral angles in the Klein ball are right angles.
///
/// For faces `n·x = d` with unit normals meeting at an edge with `n₁·n₂ = c`, the interior
/// angle satisfies cos θ = (d² − R²c)/(R² − d²), so θ = 90° exactly when R = d/√c.
pub fn right_angled_dodecahedron() -> KleinDodecahedron {
    let solid = dodecahedron();
    let (i, j, _) = solid.edges()[0];
    let (f, g) = (&solid.faces[i], &solid.faces[j]);
    let c = Vector3::from(f.normal).dot(&Vector3::from(g.normal));
    let r = f.offset / c.sqrt();
    let (p, q) = (GOLDEN, 1.0 / GOLDEN);
    KleinDodecahedron {
        r,
        vertices: solid.vertices,
        faces: solid.faces,
        edge_axes: [
            [[-q, 0.0, p], [q, 0.0, p]],
            [[p, -q, 0.0], [p, q, 0.0]],
            [[0.0, p, -q], [0.0, p, q]],
        ],
    }
}

impl KleinDodecahedron {
    /// Distance from the centre to the face planes.
    pub fn inradius(&self) -> f64 {
        self.faces[0].offset
    }

    pub fn circumradius(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| Vector3::from(*v).norm())
            .fold(0.0, f64::max)
    }

    /// Interior hyperbolic dihedral angle at every edge, in radians.
    pub fn edge_dihedral_angles(&self) -> Vec<f64> {
        face_adjacency(&self.faces)
            .into_iter()
            .map(|(i, j, _)| {
                let (f, g) = (&self.faces[i], &self.faces[j]);
                klein_dihedral(f.normal, f.offset, g.normal, g.offset, self.r)
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        face_adjacency(&self.faces).len()
    }
}

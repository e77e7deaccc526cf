//! Convex polyhedra from vertex lists, dihedral angles in Euclidean space and in the Klein
//! model, and the table of the five regular solids.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::lorentz::Vec3;

pub const GOLDEN: f64 = 1.618_033_988_749_895;

/// A face plane `normal · x = offset` with unit outward normal and its vertex cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Face {
    pub normal: Vec3,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

/// Faces of the convex hull of points in general enough position that every face plane
/// contains at least three of them.
pub fn convex_faces(points: &[Vec3]) -> Vec<Face> {
    let pts: Vec<Vector3<f64>> = points.iter().map(|p| Vector3::from(*p)).collect();
    let scale = pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let eps = 1e-9 * scale.max(1.0);
    let mut faces: Vec<Face> = Vec::new();
    let n = pts.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let normal = (pts[j] - pts[i]).cross(&(pts[k] - pts[i]));
                if normal.norm() < eps {
                    continue;
                }
                let mut normal = normal.normalize();
                let mut offset = normal.dot(&pts[i]);
                let side: Vec<f64> = pts.iter().map(|p| normal.dot(p) - offset).collect();
                let above = side.iter().any(|s| *s > eps);
                let below = side.iter().any(|s| *s < -eps);
                if above && below {
                    continue;
                }
                if above {
                    normal = -normal;
                    offset = -offset;
                }
                let on: Vec<usize> = (0..n).filter(|&v| side[v].abs() <= eps).collect();
                if faces.iter().any(|f| f.vertices.contains(&on[0]) && sorted(&f.vertices) == on) {
                    continue;
                }
                let centre: Vector3<f64> = on.iter().map(|&v| pts[v]).sum::<Vector3<f64>>() / on.len() as f64;
                let u = (pts[on[0]] - centre).normalize();
                let w = normal.cross(&u);
                let mut cycle = on.clone();
                cycle.sort_by(|&a, &b| {
                    let ang = |v: usize| {
                        let d = pts[v] - centre;
                        d.dot(&w).atan2(d.dot(&u))
                    };
                    ang(a).total_cmp(&ang(b))
                });
                faces.push(Face {
                    normal: normal.into(),
                    offset,
                    vertices: cycle,
                });
            }
        }
    }
    faces
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// Pairs of faces sharing an edge, with the edge's two vertices.
pub fn face_adjacency(faces: &[Face]) -> Vec<(usize, usize, [usize; 2])> {
    let mut out = Vec::new();
    for i in 0..faces.len() {
        for j in (i + 1)..faces.len() {
            let shared: Vec<usize> = faces[i]
                .vertices
                .iter()
                .copied()
                .filter(|v| faces[j].vertices.contains(v))
                .collect();
            if shared.len() == 2 {
                out.push((i, j, [shared[0], shared[1]]));
            }
        }
    }
    out
}

/// Interior Euclidean dihedral angle between two faces with outward unit normals.
pub fn euclidean_dihedral(n1: Vec3, n2: Vec3) -> f64 {
    let c = Vector3::from(n1).dot(&Vector3::from(n2)).clamp(-1.0, 1.0);
    std::f64::consts::PI - c.acos()
}

/// Interior dihedral angle in the Klein ball of radius `r` between the face planes
/// `n1·x = d1` and `n2·x = d2`; `r = ∞` gives the Euclidean angle.
///
/// The plane `n·x = d` is the Minkowski-orthogonal complement of (d, r·n).
pub fn klein_dihedral(n1: Vec3, d1: f64, n2: Vec3, d2: f64, r: f64) -> f64 {
    let (a, b) = (Vector3::from(n1), Vector3::from(n2));
    let ip = -d1 * d2 + r * r * a.dot(&b);
    let norm1 = (r * r * a.norm_squared() - d1 * d1).sqrt();
    let norm2 = (r * r * b.norm_squared() - d2 * d2).sqrt();
    (-ip / (norm1 * norm2)).clamp(-1.0, 1.0).acos()
}

/// Angle between the circles cut on the sphere of radius `r` by two planes, measured at a
/// common point `p` of both circles, on the side containing the polyhedron.
pub fn circle_angle_at(n1: Vec3, n2: Vec3, p: Vec3) -> f64 {
    let p = Vector3::from(p);
    let t1 = Vector3::from(n1).cross(&p);
    let t2 = Vector3::from(n2).cross(&p);
    // tangents pointing into the opposite half-spaces give the interior angle
    let c = -(t1.dot(&t2)) / (t1.norm() * t2.norm());
    c.clamp(-1.0, 1.0).acos()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Polyhedron {
    pub name: String,
    pub vertices: Vec<Vec3>,
    pub faces: Vec<Face>,
}

impl Polyhedron {
    pub fn from_vertices(name: &str, vertices: Vec<Vec3>) -> Self {
        let faces = convex_faces(&vertices);
        Polyhedron {
            name: name.to_string(),
            vertices,
            faces,
        }
    }

    pub fn circumradius(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| Vector3::from(*v).norm())
            .fold(0.0, f64::max)
    }

    pub fn edges(&self) -> Vec<(usize, usize, [usize; 2])> {
        face_adjacency(&self.faces)
    }

    /// Dihedral angle at the first edge, in degrees, in the ball of radius `r`.
    fn first_edge_angle(&self, r: Option<f64>) -> f64 {
        let (i, j, _) = self.edges()[0];
        let (f, g) = (&self.faces[i], &self.faces[j]);
        let rad = match r {
            None => euclidean_dihedral(f.normal, g.normal),
            Some(r) => klein_dihedral(f.normal, f.offset, g.normal, g.offset, r),
        };
        rad.to_degrees()
    }
}

fn cyclic(v: Vec3) -> [Vec3; 3] {
    [v, [v[2], v[0], v[1]], [v[1], v[2], v[0]]]
}

fn sign_variants(v: Vec3) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::new();
    for mask in 0..8 {
        let w: Vec3 = [0, 1, 2].map(|i| if mask >> i & 1 == 1 { -v[i] } else { v[i] });
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

fn cyclic_signed(v: Vec3) -> Vec<Vec3> {
    cyclic(v).into_iter().flat_map(sign_variants).collect()
}

pub fn tetrahedron() -> Polyhedron {
    Polyhedron::from_vertices(
        "tetrahedron",
        vec![[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]],
    )
}

pub fn cube() -> Polyhedron {
    Polyhedron::from_vertices("cube", sign_variants([1.0, 1.0, 1.0]))
}

pub fn octahedron() -> Polyhedron {
    Polyhedron::from_vertices("octahedron", cyclic_signed([1.0, 0.0, 0.0]))
}

/// Cube vertices together with the cyclic permutations of (0, ±φ, ±1/φ). Its edges in the
/// coordinate planes are (t,0,φ), (φ,t,0) and (0,φ,t): the axes of the cube tessellation
/// scaled by φ.
pub fn dodecahedron() -> Polyhedron {
    let mut v = sign_variants([1.0, 1.0, 1.0]);
    v.extend(cyclic_signed([0.0, GOLDEN, 1.0 / GOLDEN]));
    Polyhedron::from_vertices("dodecahedron", v)
}

pub fn icosahedron() -> Polyhedron {
    Polyhedron::from_vertices("icosahedron", cyclic_signed([0.0, 1.0, GOLDEN]))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DihedralRow {
    pub solid: String,
    pub euclidean_degrees: f64,
    pub ideal_degrees: f64,
}

/// Euclidean dihedral angle and the dihedral angle of the ideal hyperbolic version (all
/// vertices on the sphere at infinity) of each regular solid.
pub fn dihedral_table() -> Vec<DihedralRow> {
    [tetrahedron(), cube(), octahedron(), dodecahedron(), icosahedron()]
        .into_iter()
        .map(|p| DihedralRow {
            solid: p.name.clone(),
            euclidean_degrees: p.first_edge_angle(None),
            ideal_degrees: p.first_edge_angle(Some(p.circumradius())),
        })
        .collect()
}

pub fn format_table(rows: &[DihedralRow]) -> String {
    let mut s = format!("{:<14}{:>12}{:>12}\n", "solid", "euclidean", "ideal");
    for r in rows {
        s.push_str(&format!(
            "{:<14}{:>12.4}{:>12.4}\n",
            r.solid, r.euclidean_degrees, r.ideal_degrees
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_counts() {
        let counts: Vec<(usize, usize)> = [tetrahedron(), cube(), octahedron(), dodecahedron(), icosahedron()]
            .iter()
            .map(|p| (p.faces.len(), p.edges().len()))
            .collect();
        assert_eq!(counts, vec![(4, 6), (6, 12), (8, 12), (12, 30), (20, 30)]);
        for f in &dodecahedron().faces {
            assert_eq!(f.vertices.len(), 5);
        }
    }

    #[test]
    fn euclidean_cube_and_octahedron() {
        let t = dihedral_table();
        assert!((t[1].euclidean_degrees - 90.0).abs() < 1e-9);
        assert!((t[2].euclidean_degrees - (-1.0f64 / 3.0).acos().to_degrees()).abs() < 1e-9);
    }

    #[test]
    fn circle_angle_agrees_with_minkowski_formula() {
        let d = dodecahedron();
        let (i, j, [v, _]) = d.edges()[0];
        let (f, g) = (&d.faces[i], &d.faces[j]);
        // ball through the edge's vertices: the vertex lies on both circles
        let r = Vector3::from(d.vertices[v]).norm();
        let p = d.vertices[v];
        let a = circle_angle_at(f.normal, g.normal, p);
        let b = klein_dihedral(f.normal, f.offset, g.normal, g.offset, r);
        assert!((a - b).abs() < 1e-9, "{a} {b}");
    }
}

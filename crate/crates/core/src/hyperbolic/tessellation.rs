//! Patches of the tessellation of H³ by copies of D₀, each cell tagged with the cube of the
//! Euclidean tessellation it covers.

use std::collections::HashMap;
use std::fmt::Write as _;

use nalgebra::Vector4;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::IVec3;
use crate::word::{eval_phi, Word};

use super::generators::{face_pairing_words, generators_u};
use super::lorentz::{distance, hyperboloid_to_klein, Vec3};
use super::MAX_DEPTH;

pub const DEDUP_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub word: Word,
    /// Image of the centre of D₀ in the Klein ball.
    pub center: Vec3,
    /// φ(word) applied to the origin: centre of the covered cube.
    pub cube_center: IVec3,
    /// Number of face crossings from D₀.
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TessellationPatch {
    pub r: f64,
    pub cells: Vec<Cell>,
    /// Pairs of cells sharing a face.
    pub adjacency: Vec<(usize, usize)>,
}

struct CenterIndex {
    buckets: HashMap<[i64; 4], Vec<usize>>,
    points: Vec<Vector4<f64>>,
}

impl CenterIndex {
    const CELL: f64 = 1e-3;

    fn key(x: &Vector4<f64>) -> [i64; 4] {
        [0, 1, 2, 3].map(|i| (x[i] / Self::CELL).floor() as i64)
    }

    fn find(&self, x: &Vector4<f64>) -> Option<usize> {
        let k = Self::key(x);
        for d in 0..81 {
            let off = [d % 3, d / 3 % 3, d / 9 % 3, d / 27].map(|o| o as i64 - 1);
            let kk = [0, 1, 2, 3].map(|i| k[i] + off[i]);
            if let Some(ids) = self.buckets.get(&kk) {
                if let Some(i) = ids
                    .iter()
                    .find(|&&i| distance(&self.points[i], x) < DEDUP_TOLERANCE)
                {
                    return Some(*i);
                }
            }
        }
        None
    }

    fn insert(&mut self, x: Vector4<f64>) -> usize {
        let id = self.points.len();
        self.buckets.entry(Self::key(&x)).or_default().push(id);
        self.points.push(x);
        id
    }
}

/// Cells within `depth` face crossings of D₀.
pub fn tessellate(depth: usize) -> Result<TessellationPatch> {
    if depth > MAX_DEPTH {
        return Err(Error::DepthTooLarge(depth));
    }
    let gens = generators_u();
    let r = gens.r();
    let origin = Vector4::new(1.0, 0.0, 0.0, 0.0);
    let pairings = face_pairing_words();
    let mut index = CenterIndex {
        buckets: HashMap::new(),
        points: Vec::new(),
    };
    let mut cells = Vec::new();
    let add = |word: Word, depth: usize, index: &mut CenterIndex, cells: &mut Vec<Cell>| {
        let x = gens.word_matrix(&word).apply(&origin);
        let id = index.insert(x);
        cells.push(Cell {
            center: hyperboloid_to_klein(&x, r),
            cube_center: eval_phi(&word).apply([0, 0, 0]),
            word,
            depth,
        });
        id
    };
    add(Word::empty(), 0, &mut index, &mut cells);
    let mut frontier = vec![0usize];
    let mut adjacency = Vec::new();
    for level in 1..=depth + 1 {
        let mut next = Vec::new();
        for &c in &frontier {
            for f in &pairings {
                let word = &cells[c].word * f;
                let x = gens.word_matrix(&word).apply(&origin);
                let n = match index.find(&x) {
                    Some(n) => n,
                    None if level <= depth => {
                        let n = add(word, level, &mut index, &mut cells);
                        next.push(n);
                        n
                    }
                    None => continue,
                };
                adjacency.push((c.min(n), c.max(n)));
            }
        }
        frontier = next;
    }
    adjacency.sort_unstable();
    adjacency.dedup();
    log::info!("depth {depth}: {} cells, {} adjacencies", cells.len(), adjacency.len());
    Ok(TessellationPatch {
        r,
        cells,
        adjacency,
    })
}

#[derive(Serialize)]
struct MeshCell<'a> {
    word: &'a Word,
    center: Vec3,
    cube_center: IVec3,
    vertices: Vec<Vec3>,
}

#[derive(Serialize)]
struct Mesh<'a> {
    r: f64,
    faces: Vec<Vec<usize>>,
    cells: Vec<MeshCell<'a>>,
    adjacency: &'a [(usize, usize)],
}

impl TessellationPatch {
    /// Klein-model vertices of a cell, in the order of the vertices of D₀.
    pub fn cell_vertices(&self, cell: &Cell) -> Vec<Vec3> {
        let gens = generators_u();
        let m = gens.word_matrix(&cell.word);
        gens.dodecahedron
            .vertices
            .iter()
            .map(|v| m.apply_klein(*v, self.r))
            .collect()
    }

    /// JSON with cells, their Klein vertices, the face cycles shared by all cells, adjacency
    /// and cube assignment.
    pub fn to_mesh_json(&self) -> serde_json::Value {
        let gens = generators_u();
        let mesh = Mesh {
            r: self.r,
            faces: gens.dodecahedron.faces.iter().map(|f| f.vertices.clone()).collect(),
            cells: self
                .cells
                .iter()
                .map(|c| MeshCell {
                    word: &c.word,
                    center: c.center,
                    cube_center: c.cube_center,
                    vertices: self.cell_vertices(c),
                })
                .collect(),
            adjacency: &self.adjacency,
        };
        serde_json::to_value(mesh).expect("mesh serializes")
    }

    /// Wavefront OBJ text: one object per cell, pentagonal faces.
    pub fn to_obj(&self) -> String {
        let gens = generators_u();
        let mut s = String::from("# dodecahedral tessellation patch, Klein model\n");
        let per_cell = gens.dodecahedron.vertices.len();
        for (k, cell) in self.cells.iter().enumerate() {
            let _ = writeln!(s, "o cell{k}_{}", if cell.word.is_empty() { "e".into() } else { cell.word.to_string() });
            for v in self.cell_vertices(cell) {
                let _ = writeln!(s, "v {:.9} {:.9} {:.9}", v[0], v[1], v[2]);
            }
            for f in &gens.dodecahedron.faces {
                let idx: Vec<String> = f
                    .vertices
                    .iter()
                    .map(|i| (k * per_cell + i + 1).to_string())
                    .collect();
                let _ = writeln!(s, "f {}", idx.join(" "));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_patches() {
        let p0 = tessellate(0).unwrap();
        assert_eq!(p0.cells.len(), 1);
        assert_eq!(p0.cells[0].cube_center, [0, 0, 0]);
        let p1 = tessellate(1).unwrap();
        assert_eq!(p1.cells.len(), 13);
        assert!(matches!(tessellate(5), Err(Error::DepthTooLarge(5))));
    }

    #[test]
    fn neighbours_are_face_reflections() {
        let p = tessellate(1).unwrap();
        let d = &generators_u().dodecahedron;
        for cell in &p.cells[1..] {
            // the neighbour's centre is the reflection of the origin in one face plane
            let c = nalgebra::Vector3::from(cell.center);
            let dir = c.normalize();
            assert!(d.faces.iter().any(|f| (nalgebra::Vector3::from(f.normal) - dir).norm() < 1e-9));
        }
        assert_eq!(p.adjacency.iter().filter(|(a, _)| *a == 0).count(), 12);
    }

    #[test]
    fn obj_export_shape() {
        let p = tessellate(1).unwrap();
        let obj = p.to_obj();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 13 * 20);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 13 * 12);
        let json = p.to_mesh_json();
        assert_eq!(json["cells"].as_array().unwrap().len(), 13);
    }
}

//! Rotation axes of U as hyperbolic lines, identified by their endpoints at infinity.

use nalgebra::{Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::word::{eval_phi, Generator, Letter, Word};

use super::eisenstein::{label_axis, EisensteinInt};
use super::generators::{axis_edges, generators_u};
use super::lorentz::{LorentzMatrix, Vec3};
use super::tessellation::TessellationPatch;

pub const ENDPOINT_TOLERANCE: f64 = 1e-6;

/// The axis of u·x·u⁻¹.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisLine {
    pub word: Word,
    pub base: Generator,
    /// Endpoints on the sphere at infinity (radius R), in the Klein ball.
    pub ends: [Vec3; 2],
}

fn close(a: &Vec3, b: &Vec3) -> bool {
    (Vector3::from(*a) - Vector3::from(*b)).norm() < ENDPOINT_TOLERANCE
}

impl AxisLine {
    pub fn new(word: Word, base: Generator) -> Self {
        let gens = generators_u();
        let [p, q] = gens.dodecahedron.edge_axes[base.index()];
        let ends = ideal_endpoints(p, q, gens.r());
        let m = gens.word_matrix(&word);
        AxisLine {
            ends: ends.map(|e| map_ideal(&m, e, gens.r())),
            word,
            base,
        }
    }

    pub fn same_line(&self, ends: &[Vec3; 2]) -> bool {
        (close(&self.ends[0], &ends[0]) && close(&self.ends[1], &ends[1]))
            || (close(&self.ends[0], &ends[1]) && close(&self.ends[1], &ends[0]))
    }

    pub fn image(&self, m: &LorentzMatrix) -> [Vec3; 2] {
        let r = generators_u().r();
        self.ends.map(|e| map_ideal(m, e, r))
    }

    pub fn label(&self) -> Result<EisensteinInt> {
        label_axis(&self.word, self.base)
    }
}

/// Points where the line through `p` and `q` meets the sphere of radius `r`.
pub fn ideal_endpoints(p: Vec3, q: Vec3, r: f64) -> [Vec3; 2] {
    let (p, d) = (Vector3::from(p), Vector3::from(q) - Vector3::from(p));
    let (a, b, c) = (d.dot(&d), 2.0 * p.dot(&d), p.dot(&p) - r * r);
    let disc = (b * b - 4.0 * a * c).sqrt();
    [(-b - disc) / (2.0 * a), (-b + disc) / (2.0 * a)].map(|t| (p + d * t).into())
}

/// Image of a point at infinity under a Lorentz matrix.
pub fn map_ideal(m: &LorentzMatrix, e: Vec3, r: f64) -> Vec3 {
    let v = m.apply(&Vector4::new(1.0, e[0] / r, e[1] / r, e[2] / r));
    [r * v[1] / v[0], r * v[2] / v[0], r * v[3] / v[0]]
}

/// Distinct axis edges of the cells of a patch.
pub fn patch_axes(patch: &TessellationPatch) -> Vec<AxisLine> {
    let mut out: Vec<AxisLine> = Vec::new();
    for cell in &patch.cells {
        for (u, x) in axis_edges() {
            let line = AxisLine::new(&cell.word * &u, x);
            if !out.iter().any(|l| l.same_line(&line.ends)) {
                out.push(line);
            }
        }
    }
    out
}

/// Freely reduced words of length at most `max_len` in the kernel of φ, shortest first.
pub fn kernel_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in Letter::all() {
                if w.letters().last() == Some(&l.inv()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                if eval_phi(&v).is_identity() {
                    out.push(v.clone());
                }
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

/// A kernel element of length at most `max_len` carrying one axis onto another.
pub fn find_kernel_element(from: &AxisLine, to: &AxisLine, max_len: usize) -> Option<Word> {
    let gens = generators_u();
    kernel_words(max_len)
        .into_iter()
        .find(|k| to.same_line(&from.image(&gens.word_matrix(k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::tessellate;

    #[test]
    fn axis_edges_are_edges_of_the_dodecahedron() {
        let gens = generators_u();
        let r = gens.r();
        let d = &gens.dodecahedron;
        for (u, x) in axis_edges() {
            let line = AxisLine::new(u, x);
            // both ends lie on the chord through two vertices of D₀
            let found = d.vertices.iter().any(|p| {
                d.vertices.iter().any(|q| p != q && line.same_line(&ideal_endpoints(*p, *q, r)))
            });
            assert!(found, "{} {:?}", line.word, line.base);
        }
    }

    #[test]
    fn kernel_words_are_short() {
        let k = kernel_words(2);
        let names: Vec<String> = k.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, vec!["aa", "AA", "bb", "BB", "cc", "CC"]);
    }

    #[test]
    fn patch_axes_depth_one() {
        let p = tessellate(1).unwrap();
        let axes = patch_axes(&p);
        assert!(axes.len() > 6);
        let r = generators_u().r();
        for a in &axes {
            for e in a.ends {
                assert!((Vector3::from(e).norm() - r).abs() < 1e-9);
            }
        }
    }
}

//! WebAssembly bindings for the demo page. Every entry point returns a JSON string; the
//! `*_json` functions hold the logic and also run natively.

use borromean::classify::{admissible_planes, verify_rectangle_in, Plane, RotationGroup, Window};
use borromean::families::{group_g, group_h, CanonicalSubgroup};
use borromean::hyperbolic::{label_axis, tessellate, MAX_DEPTH};
use borromean::isometry::{Direction, RotationAxis};
use borromean::word::{Generator, Word};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn family(name: &str, p: [i64; 3]) -> Result<CanonicalSubgroup, String> {
    let r = match name {
        "G" | "g" => group_g(p[0], p[1], p[2]),
        "H" | "h" => group_h(p[0], p[1], p[2]),
        other => return Err(format!("unknown family {other:?}")),
    };
    r.map_err(|e| e.to_string())
}

fn direction(c: &str) -> Result<Direction, String> {
    match c {
        "x" | "X" => Ok(Direction::X),
        "y" | "Y" => Ok(Direction::Y),
        "z" | "Z" => Ok(Direction::Z),
        other => Err(format!("plane normal must be x, y or z, got {other:?}")),
    }
}

/// Axis points of a family group in an axis-parallel plane, the axes lying in the plane, and
/// the rectangle check, over the square window of the given radius.
pub fn rectangle_view_json(
    fam: &str,
    params: [i64; 3],
    normal: &str,
    offset: i64,
    radius: i64,
) -> Result<String, String> {
    let radius = radius.clamp(2, 40);
    let h = family(fam, params)?;
    let group = RotationGroup::new(&h.canonical_generators()).map_err(|e| e.to_string())?;
    let plane = Plane { normal: direction(normal)?, offset };
    let report = verify_rectangle_in(&group, plane, Window::square(radius)).map_err(|e| e.to_string())?;
    let (i, j) = plane.normal.cross_indices();
    let mut points = Vec::new();
    for u in -radius..=radius {
        for v in -radius..=radius {
            if group.has_axis(&RotationAxis::new(plane.normal, u, v)) {
                points.push([u, v]);
            }
        }
    }
    // lines in the plane: along coordinate j with the i-coordinate fixed, and vice versa
    let mut lines = Vec::new();
    for (fixed, along) in [(0usize, j), (1usize, i)] {
        let dir = Direction::from_index(along);
        for value in -radius..=radius {
            let mut p = [0i64; 3];
            p[plane.normal.index()] = offset;
            p[if fixed == 0 { i } else { j }] = value;
            let (ci, cj) = dir.cross_indices();
            if group.has_axis(&RotationAxis::new(dir, p[ci], p[cj])) {
                lines.push(json!({ "fixed": fixed, "value": value }));
            }
        }
    }
    let planes: Vec<String> = admissible_planes(&group, radius)
        .iter()
        .filter(|p| p.normal == plane.normal)
        .map(|p| p.offset.to_string())
        .collect();
    Ok(json!({
        "group": h.to_string(),
        "radius": radius,
        "points": points,
        "lines": lines,
        "report": report,
        "admissible_offsets": planes,
    })
    .to_string())
}

/// Cells of the tessellation patch with their Klein-model vertices.
pub fn tessellation_json(depth: usize) -> Result<String, String> {
    if depth > MAX_DEPTH {
        return Err(format!("depth at most {MAX_DEPTH}"));
    }
    let patch = tessellate(depth).map_err(|e| e.to_string())?;
    Ok(patch.to_mesh_json().to_string())
}

pub fn label_json(word: &str, base: &str) -> Result<String, String> {
    let u: Word = if word.is_empty() || word == "e" {
        Word::empty()
    } else {
        word.parse().map_err(|e: borromean::error::Error| e.to_string())?
    };
    let g = base
        .chars()
        .next()
        .and_then(|c| Generator::from_char(c.to_ascii_lowercase()))
        .ok_or_else(|| format!("base must be a, b or c, got {base:?}"))?;
    let l = label_axis(&u, g).map_err(|e| e.to_string())?;
    let (re, im) = l.to_complex();
    Ok(json!({ "label": l.to_string(), "u": l.u, "v": l.v, "complex": [re, im] }).to_string())
}

// i32 rather than i64 so that JS passes plain numbers instead of BigInt.
#[wasm_bindgen]
pub fn rectangle_view(fam: &str, p: i32, q: i32, r: i32, normal: &str, offset: i32, radius: i32) -> Result<String, JsError> {
    rectangle_view_json(fam, [p, q, r].map(i64::from), normal, offset.into(), radius.into())
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tessellation(depth: u32) -> Result<String, JsError> {
    tessellation_json(depth as usize).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn axis_label(word: &str, base: &str) -> Result<String, JsError> {
    label_json(word, base).map_err(|e| JsError::new(&e))
}

//! Classification of subgroups of Û generated by half-turns, axis point sets in
//! axis-parallel planes, and the rectangle check.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, InfiniteIndexReason, Result};
use crate::families::{group_g, group_h, h_ordering_valid, CanonicalSubgroup, Family};
use crate::isometry::{
    generators_uhat, in_uhat, in_uhat_lattice, rotation_d, Direction, IVec3, IntIsometry,
    RotationAxis,
};
use crate::lattice::IntegerLattice;

pub const DEFAULT_BFS_DEPTH: usize = 14;

/// Covolume of the translation lattice of Û.
const UHAT_LATTICE_DET: i64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    #[serde(flatten)]
    canonical: CanonicalSubgroup,
    index: i64,
    verified_depth: usize,
}

impl ClassificationResult {
    /// The family member, with the conjugator that maps the input group onto it.
    pub fn canonical(&self) -> &CanonicalSubgroup {
        &self.canonical
    }

    pub fn conjugator(&self) -> IntIsometry {
        self.canonical.conjugator()
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn verified_depth(&self) -> usize {
        self.verified_depth
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub bfs_depth: usize,
    /// ∞-norm bound on translations kept by the BFS check; `None` uses 4·max(params)+8.
    pub window: Option<i64>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            bfs_depth: DEFAULT_BFS_DEPTH,
            window: None,
        }
    }
}

/// The subgroup of Û generated by a list of half-turns, as coset representatives over its
/// translation lattice.
#[derive(Debug, Clone)]
pub struct RotationGroup {
    gens: Vec<IntIsometry>,
    reps: BTreeMap<[i64; 3], IntIsometry>,
    lattice: IntegerLattice,
}

impl RotationGroup {
    pub fn new(gens: &[IntIsometry]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::NoGenerators);
        }
        for (index, g) in gens.iter().enumerate() {
            if !in_uhat(g) || g.rotation_axis().is_none() {
                return Err(Error::NotARotation { index });
            }
        }
        let key = |g: &IntIsometry| g.diagonal().expect("elements of the group are diagonal");
        let mut reps = BTreeMap::new();
        reps.insert(key(&IntIsometry::identity()), IntIsometry::identity());
        let mut queue = VecDeque::from([IntIsometry::identity()]);
        while let Some(r) = queue.pop_front() {
            for g in gens {
                let h = r.compose(g);
                if let std::collections::btree_map::Entry::Vacant(e) = reps.entry(key(&h)) {
                    e.insert(h);
                    queue.push_back(h);
                }
            }
        }
        // Schreier generators of the kernel of the linear-part map
        let mut translations = Vec::new();
        for r in reps.values() {
            for g in gens {
                let h = r.compose(g);
                let s = h.compose(&reps[&key(&h)].inverse());
                debug_assert!(s.is_translation());
                translations.push(s.translation());
            }
        }
        Ok(RotationGroup {
            gens: gens.to_vec(),
            reps,
            lattice: IntegerLattice::from_generators(translations),
        })
    }

    pub fn generators(&self) -> &[IntIsometry] {
        &self.gens
    }

    pub fn translation_lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    /// Number of distinct linear parts.
    pub fn point_group_order(&self) -> usize {
        self.reps.len()
    }

    /// Directions of the generating axes.
    pub fn directions(&self) -> BTreeSet<Direction> {
        self.gens
            .iter()
            .filter_map(|g| g.rotation_axis())
            .map(|a| a.direction)
            .collect()
    }

    pub fn contains(&self, g: &IntIsometry) -> bool {
        let Some(rep) = g.diagonal().and_then(|d| self.reps.get(&d)) else {
            return false;
        };
        let t = rep.inverse().compose(g);
        t.is_translation() && self.lattice.contains(t.translation())
    }

    pub fn has_axis(&self, axis: &RotationAxis) -> bool {
        self.contains(&axis.half_turn())
    }

    /// Whether some half-turn of the group has the given direction. Elements with that
    /// linear part are r·t with t in the lattice; they are half-turns exactly when the
    /// translation component along the direction vanishes.
    pub fn has_axes_of(&self, dir: Direction) -> bool {
        let diag = RotationAxis::new(dir, 0, 0).half_turn().diagonal().expect("diagonal");
        let Some(rep) = self.reps.get(&diag) else {
            return false;
        };
        let d = dir.index();
        let g = self.lattice.basis().iter().fold(0i64, |g, row| gcd(g, row[d]));
        let need = rep.translation()[d];
        if g == 0 {
            need == 0
        } else {
            need % g == 0
        }
    }

    /// Index in Û when finite.
    pub fn index(&self) -> std::result::Result<i64, InfiniteIndexReason> {
        if self.directions().len() < 2 {
            return Err(InfiniteIndexReason::SingleDirection);
        }
        let det = self
            .lattice
            .determinant()
            .ok_or(InfiniteIndexReason::LatticeRank(self.lattice.rank()))?;
        Ok(det.abs() * 4 / (UHAT_LATTICE_DET * self.point_group_order() as i64))
    }
}

/// All products of at most `max_len` generators whose translation has ∞-norm at most
/// `window` (no bound when `None`). Intermediate products are never pruned.
pub fn bfs_elements(
    gens: &[IntIsometry],
    max_len: usize,
    window: Option<i64>,
) -> BTreeSet<IntIsometry> {
    let mut seen: HashSet<IntIsometry> = HashSet::from([IntIsometry::identity()]);
    let mut frontier = vec![IntIsometry::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = x.compose(g);
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen.into_iter()
        .filter(|g| window.is_none_or(|w| g.max_abs_translation() <= w))
        .collect()
}

/// Classify with default options.
pub fn classify(gens: &[IntIsometry]) -> Result<ClassificationResult> {
    classify_with(gens, ClassifyOptions::default())
}

pub fn classify_with(gens: &[IntIsometry], opts: ClassifyOptions) -> Result<ClassificationResult> {
    let group = RotationGroup::new(gens)?;
    let index = group.index().map_err(Error::InfiniteIndex)?;
    let dirs = group.directions();
    log::debug!(
        "lattice {:?}, {} directions, index {index}",
        group.lattice.basis(),
        dirs.len()
    );

    let d = rotation_d();
    let candidates: Vec<(i64, CanonicalSubgroup)> = if dirs.len() == 2 {
        let k = if !dirs.contains(&Direction::Z) {
            0
        } else if !dirs.contains(&Direction::Y) {
            1
        } else {
            2
        };
        let lat = group.lattice.map(|v| d.pow(k).apply_linear(v));
        vec![(k, g_params_from_lattice(&lat)?)]
    } else {
        let mut out = Vec::new();
        for k in 0..3 {
            let lat = group.lattice.map(|v| d.pow(k).apply_linear(v));
            if let Some(h) = h_params_from_lattice(&lat)? {
                out.push((k, h));
            }
        }
        if out.is_empty() {
            return Err(inconclusive("no cyclic ordering of the lattice periods is admissible"));
        }
        out
    };

    let mut found = None;
    for (k, canonical) in candidates {
        let dk = d.pow(k);
        let rotated: Vec<IntIsometry> = gens.iter().map(|g| g.conjugate_by(&dk)).collect();
        if let Some(u) = find_translation_conjugator(&canonical, &rotated) {
            found = Some(canonical.with_conjugator(u.compose(&dk))?);
            break;
        }
    }
    let Some(canonical) = found else {
        return Err(inconclusive("no conjugator into canonical position found"));
    };
    if canonical.index() != index {
        return Err(inconclusive(&format!(
            "lattice index {index} disagrees with {canonical} of index {}",
            canonical.index()
        )));
    }

    let c = canonical.conjugator();
    let conjugated: Vec<IntIsometry> = gens.iter().map(|g| g.conjugate_by(&c)).collect();
    for g in &conjugated {
        if !canonical.contains_canonical(g) {
            return Err(inconclusive(&format!("conjugated generator {g} is not in {canonical}")));
        }
    }
    let window = opts
        .window
        .unwrap_or_else(|| 4 * canonical.params().into_iter().max().unwrap_or(1) + 8);
    let result = ClassificationResult {
        canonical: canonical.clone(),
        index,
        verified_depth: opts.bfs_depth,
    };
    let reached = bfs_reach(&conjugated, opts.bfs_depth, window, &canonical.canonical_generators());
    if let Err(missing) = reached {
        return Err(Error::VerificationInconclusive {
            reason: format!(
                "generator {missing} of {canonical} not reached within {} steps",
                opts.bfs_depth
            ),
            partial: Some(Box::new(result)),
        });
    }
    Ok(result)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Shortest length (up to `max_len`) by which every target is a product of generators,
/// expanding only elements whose translation stays within `window`.
fn bfs_reach(
    gens: &[IntIsometry],
    max_len: usize,
    window: i64,
    targets: &[IntIsometry],
) -> std::result::Result<usize, IntIsometry> {
    let mut missing: BTreeSet<IntIsometry> = targets.iter().copied().collect();
    missing.remove(&IntIsometry::identity());
    let mut seen: HashSet<IntIsometry> = HashSet::from([IntIsometry::identity()]);
    let mut frontier = vec![IntIsometry::identity()];
    let mut depth = 0;
    while !missing.is_empty() && depth < max_len {
        depth += 1;
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = x.compose(g);
                if y.max_abs_translation() <= window && seen.insert(y) {
                    missing.remove(&y);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    match missing.into_iter().next() {
        None => Ok(depth),
        Some(g) => Err(g),
    }
}

fn inconclusive(reason: &str) -> Error {
    Error::VerificationInconclusive {
        reason: reason.to_string(),
        partial: None,
    }
}

fn axis_periods(lat: &IntegerLattice) -> Result<[i64; 3]> {
    let mut out = [0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let min = lat
            .axis_minimum(i)
            .ok_or(Error::InfiniteIndex(InfiniteIndexReason::LatticeRank(lat.rank())))?;
        if min % 4 != 0 {
            return Err(inconclusive(&format!("axis period {min} is not a multiple of four")));
        }
        *slot = min / 4;
    }
    Ok(out)
}

fn g_params_from_lattice(lat: &IntegerLattice) -> Result<CanonicalSubgroup> {
    let [m, n, o] = axis_periods(lat)?;
    let h = group_g(m, n, o).map_err(|e| inconclusive(&e.to_string()))?;
    if h.translation_lattice() != *lat {
        return Err(inconclusive("translation lattice is not rectangular"));
    }
    Ok(h)
}

fn h_params_from_lattice(lat: &IntegerLattice) -> Result<Option<CanonicalSubgroup>> {
    let [p, q, r] = axis_periods(lat)?;
    if [p, q, r].iter().any(|v| v % 2 == 0) {
        return Err(inconclusive("even axis period for a three-direction group"));
    }
    if !h_ordering_valid(p, q, r) {
        return Ok(None);
    }
    let h = group_h(p, q, r)?;
    if h.translation_lattice() != *lat {
        return Err(inconclusive("translation lattice is not body-centred"));
    }
    Ok(Some(h))
}

/// Canonical axis set of one direction: cross-coordinates `base + periods·Z²`.
fn canonical_axis_class(h: &CanonicalSubgroup, dir: Direction) -> Option<([i64; 2], [i64; 2])> {
    let [x, y, z] = h.params();
    match (h.family(), dir) {
        (Family::G, Direction::X) => Some(([0, z], [2 * y, 2 * z])),
        (Family::G, Direction::Y) => Some(([1, 0], [2 * x, 2 * z])),
        (Family::G, Direction::Z) => None,
        (Family::H, Direction::X) => Some(([0, z], [2 * y, 2 * z])),
        (Family::H, Direction::Y) => Some(([x, 0], [2 * x, 2 * z])),
        (Family::H, Direction::Z) => Some(([0, y], [2 * x, 2 * y])),
    }
}

/// u = translation(v)·s with s ∈ {1, â, b̂, ĉ} such that every generator conjugated by u
/// lies in the canonical group. Among the candidates, the one leaving the conjugated
/// generators nearest the origin is returned.
fn find_translation_conjugator(
    canonical: &CanonicalSubgroup,
    gens: &[IntIsometry],
) -> Option<IntIsometry> {
    let (a, b, c) = generators_uhat();
    let mut best: Option<(i64, IntIsometry)> = None;
    for s in [IntIsometry::identity(), a, b, c] {
        // (exact shift for the first constraining generator, modulus)
        let mut residue: [Option<(i64, i64)>; 3] = [None; 3];
        let mut consistent = true;
        for g in gens {
            let axis = g.conjugate_by(&s).rotation_axis()?;
            let Some((base, periods)) = canonical_axis_class(canonical, axis.direction) else {
                consistent = false;
                break;
            };
            let (i, j) = axis.direction.cross_indices();
            for (coord, have, want, modulus) in
                [(i, axis.c1, base[0], periods[0]), (j, axis.c2, base[1], periods[1])]
            {
                let shift = want - have;
                match residue[coord] {
                    None => residue[coord] = Some((shift, modulus)),
                    Some((s0, m0)) if m0 == modulus && (s0 - shift) % modulus == 0 => {}
                    Some(_) => consistent = false,
                }
            }
        }
        if !consistent {
            continue;
        }
        let base: [(i64, i64); 3] = residue.map(|r| r.unwrap_or((0, 2)));
        for steps in 0..125 {
            let v: IVec3 = [0, 1, 2].map(|i| {
                let step = (steps / 5i64.pow(i as u32)) % 5 - 2;
                base[i].0 + step * base[i].1
            });
            if !in_uhat_lattice(v) {
                continue;
            }
            let u = IntIsometry::translation_by(v).compose(&s);
            let conjugated: Vec<IntIsometry> = gens.iter().map(|g| g.conjugate_by(&u)).collect();
            if !conjugated.iter().all(|g| canonical.contains_canonical(g)) {
                continue;
            }
            let cost = conjugated.iter().map(|g| g.max_abs_translation()).sum::<i64>();
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, u));
            }
        }
    }
    best.map(|(_, u)| u)
}

/// Axis-parallel plane `x_normal = offset`. Points in the plane use the two remaining
/// coordinates in increasing index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plane {
    pub normal: Direction,
    pub offset: i64,
}

/// Closed rectangle of plane points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: [i64; 2],
    pub hi: [i64; 2],
}

impl Window {
    pub fn square(radius: i64) -> Self {
        Window {
            lo: [-radius; 2],
            hi: [radius; 2],
        }
    }

    pub fn contains(&self, p: [i64; 2]) -> bool {
        (0..2).all(|i| self.lo[i] <= p[i] && p[i] <= self.hi[i])
    }

    fn grow(&self, by: [i64; 2]) -> Window {
        Window {
            lo: [self.lo[0] - by[0], self.lo[1] - by[1]],
            hi: [self.hi[0] + by[0], self.hi[1] + by[1]],
        }
    }

    fn points(&self) -> impl Iterator<Item = [i64; 2]> + '_ {
        (self.lo[0]..=self.hi[0]).flat_map(move |u| (self.lo[1]..=self.hi[1]).map(move |v| [u, v]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisPointSet {
    pub plane: Plane,
    pub points: BTreeSet<[i64; 2]>,
    pub window: Window,
}

/// An axis lying in a plane, as a line `coord[fixed] = value` in plane coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InPlaneLine {
    pub fixed: usize,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleReport {
    pub plane: Plane,
    pub pass: bool,
    /// Side lengths of the rectangles.
    pub dimensions: Option<[i64; 2]>,
    pub points: usize,
    pub rectangles_checked: usize,
    pub offending_point: Option<[i64; 2]>,
    pub message: String,
}

fn plane_axis(plane: &Plane, p: [i64; 2]) -> RotationAxis {
    RotationAxis::new(plane.normal, p[0], p[1])
}

fn axes_perpendicular(group: &RotationGroup, plane: &Plane, window: &Window) -> BTreeSet<[i64; 2]> {
    window
        .points()
        .filter(|p| group.has_axis(&plane_axis(plane, *p)))
        .collect()
}

/// Axes of the group lying in the plane with free coordinate inside `range`.
fn in_plane_axes(group: &RotationGroup, plane: &Plane, range: [(i64, i64); 2]) -> Vec<InPlaneLine> {
    let (pi, pj) = plane.normal.cross_indices();
    let mut out = Vec::new();
    for dir in Direction::ALL {
        if dir == plane.normal {
            continue;
        }
        // the line runs along `dir`; its other plane coordinate is fixed
        let (fixed, coord) = if dir.index() == pi { (1, pj) } else { (0, pi) };
        let (lo, hi) = range[fixed];
        for value in lo..=hi {
            let mut point = [0i64; 3];
            point[plane.normal.index()] = plane.offset;
            point[coord] = value;
            let (ci, cj) = dir.cross_indices();
            let axis = RotationAxis::new(dir, point[ci], point[cj]);
            if group.has_axis(&axis) {
                out.push(InPlaneLine { fixed, value });
            }
        }
    }
    out
}

/// Largest axis period of the lattice: every set of parallel axes repeats within it.
fn lattice_search_bound(group: &RotationGroup) -> i64 {
    (0..3)
        .filter_map(|i| group.lattice.axis_minimum(i))
        .max()
        .unwrap_or(64)
}

/// Whether the plane has axes of the group crossing it perpendicularly and axes lying in it.
pub fn plane_is_admissible(group: &RotationGroup, plane: &Plane) -> bool {
    let bound = lattice_search_bound(group);
    group.has_axes_of(plane.normal)
        && !in_plane_axes(group, plane, [(-bound, bound); 2]).is_empty()
}

/// Admissible planes with offset in `[-radius, radius]`.
pub fn admissible_planes(group: &RotationGroup, radius: i64) -> Vec<Plane> {
    let mut out = Vec::new();
    for normal in Direction::ALL {
        for offset in -radius..=radius {
            let plane = Plane { normal, offset };
            if plane_is_admissible(group, &plane) {
                out.push(plane);
            }
        }
    }
    out
}

/// Points where axes of the group perpendicular to `plane` cross it, within `window`.
pub fn axis_points(gens: &[IntIsometry], plane: Plane, window: Window) -> Result<AxisPointSet> {
    let group = RotationGroup::new(gens)?;
    axis_points_in(&group, plane, window)
}

pub fn axis_points_in(group: &RotationGroup, plane: Plane, window: Window) -> Result<AxisPointSet> {
    if !plane_is_admissible(group, &plane) {
        return Err(Error::EmptyPlane);
    }
    Ok(AxisPointSet {
        plane,
        points: axes_perpendicular(group, &plane, &window),
        window,
    })
}

pub fn verify_rectangle(gens: &[IntIsometry], plane: Plane, window: Window) -> Result<RectangleReport> {
    let group = RotationGroup::new(gens)?;
    verify_rectangle_in(&group, plane, window)
}

pub fn verify_rectangle_in(
    group: &RotationGroup,
    plane: Plane,
    window: Window,
) -> Result<RectangleReport> {
    let set = axis_points_in(group, plane, window)?;
    let (pi, pj) = plane.normal.cross_indices();
    let spacing = [pi, pj].map(|i| group.lattice.axis_minimum(i).map(|m| m / 2));
    let [Some(s0), Some(s1)] = spacing else {
        return Err(Error::InfiniteIndex(InfiniteIndexReason::LatticeRank(
            group.lattice.rank(),
        )));
    };
    // anchor from a neighbourhood large enough to contain a full period
    let wide = window.grow([s0, s1]);
    let anchor = wide
        .points()
        .find(|p| group.has_axis(&plane_axis(&plane, *p)));
    let range = [
        (window.lo[0] - s0, window.hi[0] + s0),
        (window.lo[1] - s1, window.hi[1] + s1),
    ];
    let lines = in_plane_axes(group, &plane, range);
    Ok(check_rectangle(&set, anchor, [s0, s1], &lines))
}

/// Checks that `set.points` is exactly the vertex set `anchor + spacing·Z²` inside the
/// window, and that every rectangle with all four corners in the window is cut in half by
/// one of `lines`.
pub fn check_rectangle(
    set: &AxisPointSet,
    anchor: Option<[i64; 2]>,
    spacing: [i64; 2],
    lines: &[InPlaneLine],
) -> RectangleReport {
    let mut report = RectangleReport {
        plane: set.plane,
        pass: true,
        dimensions: Some(spacing),
        points: set.points.len(),
        rectangles_checked: 0,
        offending_point: None,
        message: String::new(),
    };
    let fail = |mut r: RectangleReport, p: [i64; 2], msg: String| {
        r.pass = false;
        r.offending_point = Some(p);
        r.message = msg;
        r
    };
    let Some(anchor) = anchor else {
        if let Some(p) = set.points.iter().next() {
            return fail(report, *p, "axis point without an anchor".into());
        }
        report.message = "no axis points".into();
        return report;
    };
    let on_grid = |p: [i64; 2]| (0..2).all(|i| (p[i] - anchor[i]).rem_euclid(spacing[i]) == 0);
    for p in &set.points {
        if !on_grid(*p) {
            return fail(report, *p, format!("axis point {p:?} is not a rectangle vertex"));
        }
    }
    for p in set.window.points() {
        if on_grid(p) && !set.points.contains(&p) {
            return fail(report, p, format!("rectangle vertex {p:?} carries no axis"));
        }
    }
    let halves = [spacing[0] / 2, spacing[1] / 2];
    for p in &set.points {
        let corners = [
            [p[0] + spacing[0], p[1]],
            [p[0], p[1] + spacing[1]],
            [p[0] + spacing[0], p[1] + spacing[1]],
        ];
        if !corners.iter().all(|c| set.window.contains(*c)) {
            continue;
        }
        report.rectangles_checked += 1;
        let bisected = spacing.iter().all(|s| s % 2 == 0)
            && lines.iter().any(|l| l.value == p[l.fixed] + halves[l.fixed]);
        if !bisected {
            return fail(report, *p, format!("rectangle at {p:?} is not bisected by an axis"));
        }
    }
    report.message = format!(
        "{} points, {} rectangles of size {}x{}",
        report.points, report.rectangles_checked, spacing[0], spacing[1]
    );
    report
}

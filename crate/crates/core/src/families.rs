//! The two canonical families of rotation-generated finite-index subgroups of Û:
//! Ĝ(m,n,o) of index 2mno and Ĥ(p,q,r) of index pqr, together with their lifts to U.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::{in_shat, in_uhat, Direction, IVec3, IntIsometry, RotationAxis};
use crate::lattice::IntegerLattice;
use crate::word::{eval_phi, translation_words, Generator, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    G,
    H,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::G => f.write_str("G"),
            Family::H => f.write_str("H"),
        }
    }
}

/// A member of one of the two families, together with an element `conjugator` of Ŝ such
/// that `conjugator · (described group) · conjugator⁻¹` is the family member in canonical
/// position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSubgroup", into = "RawSubgroup")]
pub struct CanonicalSubgroup {
    family: Family,
    params: [i64; 3],
    conjugator: IntIsometry,
}

#[derive(Serialize, Deserialize)]
struct RawSubgroup {
    family: Family,
    params: [i64; 3],
    #[serde(default = "IntIsometry::identity")]
    conjugator: IntIsometry,
}

impl TryFrom<RawSubgroup> for CanonicalSubgroup {
    type Error = Error;

    fn try_from(raw: RawSubgroup) -> Result<Self> {
        let [x, y, z] = raw.params;
        let h = match raw.family {
            Family::G => group_g(x, y, z)?,
            Family::H => group_h(x, y, z)?,
        };
        h.with_conjugator(raw.conjugator)
    }
}

impl From<CanonicalSubgroup> for RawSubgroup {
    fn from(h: CanonicalSubgroup) -> Self {
        RawSubgroup {
            family: h.family,
            params: h.params,
            conjugator: h.conjugator,
        }
    }
}

/// Axis-aligned box with integer corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Box3 {
    pub lo: IVec3,
    pub hi: IVec3,
}

impl Box3 {
    pub fn volume(&self) -> i64 {
        (0..3).map(|i| self.hi[i] - self.lo[i]).product()
    }
}

/// Element of the abelianization U/[U,U] ≅ (Z/4)³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianClass(pub [u8; 3]);

impl std::ops::Add for AbelianClass {
    type Output = AbelianClass;

    fn add(self, other: AbelianClass) -> AbelianClass {
        AbelianClass([0, 1, 2].map(|i| (self.0[i] + other.0[i]) % 4))
    }
}

/// Result of counting subgroup orbits on the cubes of the tessellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitCount {
    /// Number of orbits of cubes under the subgroup.
    pub orbits: usize,
    /// Number of distinct orbits represented by cubes meeting the interior of the box.
    pub orbits_meeting_box: usize,
    /// Box volume divided by the volume 8 of a cube, when that is an integer.
    pub box_volume_in_cubes: Option<i64>,
}

pub fn h_ordering_valid(p: i64, q: i64, r: i64) -> bool {
    let distinct = p != q && q != r && p != r;
    p <= q && p <= r && (distinct || q <= r)
}

/// Ĝ(m,n,o), generated by half-turns about (t,−2n,o), (t,0,o), (−2m+1,t,0) and (1,t,0).
pub fn group_g(m: i64, n: i64, o: i64) -> Result<CanonicalSubgroup> {
    if m < 1 || n < 1 || o < 1 {
        return Err(Error::BadParams(format!(
            "G({m},{n},{o}): parameters must be positive"
        )));
    }
    if o % 2 == 0 {
        return Err(Error::BadParams(format!("G({m},{n},{o}): o must be odd")));
    }
    Ok(CanonicalSubgroup {
        family: Family::G,
        params: [m, n, o],
        conjugator: IntIsometry::identity(),
    })
}

/// Ĥ(p,q,r), generated by half-turns about (t,0,r), (p,t,0) and (0,q,t).
pub fn group_h(p: i64, q: i64, r: i64) -> Result<CanonicalSubgroup> {
    if [p, q, r].iter().any(|v| *v < 1 || v % 2 == 0) {
        return Err(Error::BadParams(format!(
            "H({p},{q},{r}): parameters must be odd and positive"
        )));
    }
    if !h_ordering_valid(p, q, r) {
        return Err(Error::BadParams(format!(
            "H({p},{q},{r}): need p <= q, p <= r, and p <= q <= r unless all distinct"
        )));
    }
    Ok(CanonicalSubgroup {
        family: Family::H,
        params: [p, q, r],
        conjugator: IntIsometry::identity(),
    })
}

/// Rotation-generated subgroup of index `n`: Ĝ(n/2,1,1) for even n, Ĥ(1,1,n) for odd n.
pub fn construct_index(n: i64) -> Result<CanonicalSubgroup> {
    if n < 1 {
        return Err(Error::BadParams(format!("index must be positive, got {n}")));
    }
    if n % 2 == 0 {
        group_g(n / 2, 1, 1)
    } else {
        group_h(1, 1, n)
    }
}

/// Exponent sums modulo 4: a ↦ (1,0,0), b ↦ (0,1,0), c ↦ (0,0,1).
pub fn abelianize(w: &Word) -> AbelianClass {
    AbelianClass(w.exponent_sums().map(|s| s.rem_euclid(4) as u8))
}

impl CanonicalSubgroup {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> [i64; 3] {
        self.params
    }

    pub fn conjugator(&self) -> IntIsometry {
        self.conjugator
    }

    /// Same family member, described through a different conjugator (which must lie in Ŝ).
    pub fn with_conjugator(mut self, conjugator: IntIsometry) -> Result<Self> {
        if !in_shat(&conjugator) {
            return Err(Error::BadParams(format!(
                "conjugator {conjugator} is not in the extended group"
            )));
        }
        self.conjugator = conjugator;
        Ok(self)
    }

    /// The same subgroup in canonical position.
    pub fn canonical(&self) -> CanonicalSubgroup {
        CanonicalSubgroup {
            conjugator: IntIsometry::identity(),
            ..self.clone()
        }
    }

    pub fn index(&self) -> i64 {
        let [x, y, z] = self.params;
        match self.family {
            Family::G => 2 * x * y * z,
            Family::H => x * y * z,
        }
    }

    /// Generating axes in canonical position: a₀, a₁, b₀, b₁ for G; a, b, c for H.
    pub fn canonical_axes(&self) -> Vec<RotationAxis> {
        let [x, y, z] = self.params;
        match self.family {
            Family::G => {
                let (m, n, o) = (x, y, z);
                vec![
                    RotationAxis::new(Direction::X, -2 * n, o),
                    RotationAxis::new(Direction::X, 0, o),
                    RotationAxis::new(Direction::Y, -2 * m + 1, 0),
                    RotationAxis::new(Direction::Y, 1, 0),
                ]
            }
            Family::H => {
                let (p, q, r) = (x, y, z);
                vec![
                    RotationAxis::new(Direction::X, 0, r),
                    RotationAxis::new(Direction::Y, p, 0),
                    RotationAxis::new(Direction::Z, 0, q),
                ]
            }
        }
    }

    /// Generating half-turns in canonical position.
    pub fn canonical_generators(&self) -> Vec<IntIsometry> {
        self.canonical_axes().iter().map(|a| a.half_turn()).collect()
    }

    /// Generating half-turns of the described (conjugated) subgroup.
    pub fn generators(&self) -> Vec<IntIsometry> {
        let back = self.conjugator.inverse();
        self.canonical_generators()
            .iter()
            .map(|g| g.conjugate_by(&back))
            .collect()
    }

    /// Translation subgroup in canonical position.
    pub fn translation_lattice(&self) -> IntegerLattice {
        let [x, y, z] = self.params;
        match self.family {
            Family::G => IntegerLattice::from_generators([[4 * x, 0, 0], [0, 4 * y, 0], [0, 0, 4 * z]]),
            Family::H => IntegerLattice::from_generators([
                [4 * x, 0, 0],
                [0, 4 * y, 0],
                [2 * x, 2 * y, 2 * z],
            ]),
        }
    }

    /// Coset representative in canonical position with the given diagonal linear part.
    fn coset_rep(&self, diag: [i64; 3]) -> Option<IntIsometry> {
        let gens = self.canonical_generators();
        match self.family {
            Family::G => {
                let (a1, b1) = (gens[1], gens[3]);
                match diag {
                    [1, 1, 1] => Some(IntIsometry::identity()),
                    [1, -1, -1] => Some(a1),
                    [-1, 1, -1] => Some(b1),
                    [-1, -1, 1] => Some(a1.compose(&b1)),
                    _ => None,
                }
            }
            Family::H => match diag {
                [1, 1, 1] => Some(IntIsometry::identity()),
                [1, -1, -1] => Some(gens[0]),
                [-1, 1, -1] => Some(gens[1]),
                [-1, -1, 1] => Some(gens[2]),
                _ => None,
            },
        }
    }

    /// Exact membership of an element of Û in the canonical-position subgroup.
    pub fn contains_canonical(&self, g: &IntIsometry) -> bool {
        let Some(rep) = g.diagonal().and_then(|d| self.coset_rep(d)) else {
            return false;
        };
        let t = rep.inverse().compose(g);
        t.is_translation() && self.translation_lattice().contains(t.translation())
    }

    /// Exact membership in the described subgroup.
    pub fn member(&self, g: &IntIsometry) -> Result<bool> {
        if !in_uhat(g) {
            return Err(Error::NotInUhat);
        }
        Ok(self.contains_canonical(&g.conjugate_by(&self.conjugator)))
    }

    /// Fundamental parallelepiped in canonical position.
    pub fn fundamental_box(&self) -> Box3 {
        let [x, y, z] = self.params;
        match self.family {
            Family::G => Box3 {
                lo: [-2 * x + 1, -2 * y, 0],
                hi: [2 * x + 1, 2 * y, z],
            },
            Family::H => Box3 {
                lo: [-x, -y, -z],
                hi: [x, y, z],
            },
        }
    }

    /// Distances between adjacent parallel axes in the x, y and z directions.
    pub fn triple(&self) -> [Option<i64>; 3] {
        let [x, y, z] = self.params;
        match self.family {
            Family::G => [Some(2 * y), Some(2 * x), None],
            Family::H => [Some(2 * z), Some(2 * x), Some(2 * y)],
        }
    }

    /// Words in U whose φ-images are the generating half-turns of the described subgroup.
    /// Each word is a conjugate u·x·u⁻¹ of a generator x, hence a 90° rotation of U.
    pub fn lift_generators(&self) -> Vec<Word> {
        self.generators()
            .iter()
            .map(|g| {
                let axis = g.rotation_axis().expect("family generators are half-turns");
                lift_rotation(&axis).expect("every axis of the crystallographic group lifts")
            })
            .collect()
    }

    /// Nine rotations u·x^e·u⁻¹ (x ∈ {a,b,c}, e ∈ {1,2,3}) of U whose φ-images lie in the
    /// described subgroup, one in each conjugacy class of rotations. Odd index only.
    pub fn witness_rotations(&self) -> Result<Vec<Word>> {
        if self.family != Family::H {
            return Err(Error::FamilyMismatch { expected: "H" });
        }
        let mut by_letter: Vec<(Generator, Word, Word)> = self
            .generators()
            .iter()
            .map(|g| {
                let axis = g.rotation_axis().expect("family generators are half-turns");
                let base = Generator::from_direction(axis.direction);
                let u = conjugating_word(base, &axis).expect("every axis is reachable");
                (base, u, Word::generator(base))
            })
            .collect();
        by_letter.sort_by_key(|(g, _, _)| *g);
        let mut out = Vec::with_capacity(9);
        for (_, u, x) in &by_letter {
            for e in 1..=3 {
                out.push(x.pow(e).conjugate_by(u));
            }
        }
        Ok(out)
    }

    /// Orbits of the subgroup (canonical position) on the cubes of the tessellation.
    ///
    /// Cube centres are the points with even coordinates. Work on the torus Z³/N with
    /// N = 4x·Z × 4y·Z × 4z·Z for parameters (x,y,z): N is a normal subgroup of Û contained
    /// in the family member, and Û/N acts simply transitively on the cube centres of the
    /// torus, so the generator orbits there are in bijection with the cosets.
    pub fn cube_orbit_count(&self) -> OrbitCount {
        let [x, y, z] = self.params;
        let modulus = [4 * x, 4 * y, 4 * z];
        let half = modulus.map(|v| (v / 2) as usize);
        let n_cells = half[0] * half[1] * half[2];
        let encode = |p: IVec3| -> usize {
            let c: Vec<usize> = (0..3)
                .map(|i| (p[i].rem_euclid(modulus[i]) / 2) as usize)
                .collect();
            (c[0] * half[1] + c[1]) * half[2] + c[2]
        };
        let mut uf = UnionFind::new(n_cells);
        let gens = self.canonical_generators();
        for i in 0..half[0] {
            for j in 0..half[1] {
                for k in 0..half[2] {
                    let p = [2 * i as i64, 2 * j as i64, 2 * k as i64];
                    let a = encode(p);
                    for g in &gens {
                        uf.union(a, encode(g.apply(p)));
                    }
                }
            }
        }
        let roots: BTreeSet<usize> = (0..n_cells).map(|c| uf.find(c)).collect();

        let b = self.fundamental_box();
        let mut hit = BTreeSet::new();
        let even_range = |lo: i64, hi: i64| {
            // cube [c-1, c+1] meets the open interval (lo, hi)
            let start = lo - 1 + (lo - 1).rem_euclid(2);
            (start..=hi + 1)
                .step_by(2)
                .filter(move |c| c + 1 > lo && c - 1 < hi)
        };
        for cx in even_range(b.lo[0], b.hi[0]) {
            for cy in even_range(b.lo[1], b.hi[1]) {
                for cz in even_range(b.lo[2], b.hi[2]) {
                    hit.insert(uf.find(encode([cx, cy, cz])));
                }
            }
        }
        let vol = b.volume();
        OrbitCount {
            orbits: roots.len(),
            orbits_meeting_box: hit.len(),
            box_volume_in_cubes: (vol % 8 == 0).then_some(vol / 8),
        }
    }
}

impl fmt::Display for CanonicalSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.params;
        write!(f, "{}({x},{y},{z})", self.family)
    }
}

/// Word u of U with φ(u) mapping the axis of `base` onto `target`.
///
/// Tries u = T·s for s among the short positive words and T a product of the three
/// translation words, which move axes by multiples of four.
pub fn conjugating_word(base: Generator, target: &RotationAxis) -> Option<Word> {
    let base_axis = eval_phi(&Word::generator(base))
        .rotation_axis()
        .expect("generator image is a half-turn");
    let steps = translation_words();
    let step_vectors: Vec<IVec3> = steps.iter().map(|w| eval_phi(w).translation()).collect();
    let positive = [Generator::A, Generator::B, Generator::C].map(|g| Letter::new(g, false));
    let mut prefixes = vec![Word::empty()];
    for l1 in positive {
        prefixes.push(Word::from_letters([l1]));
    }
    for l1 in positive {
        for l2 in positive {
            if l1 != l2 {
                prefixes.push(Word::from_letters([l1, l2]));
            }
        }
    }
    for s in prefixes {
        let image = eval_phi(&s).map_axis(&base_axis);
        if image.direction != target.direction {
            continue;
        }
        let (i, j) = target.direction.cross_indices();
        let delta = [(i, target.c1 - image.c1), (j, target.c2 - image.c2)];
        if delta.iter().any(|(_, d)| d.rem_euclid(4) != 0) {
            continue;
        }
        let mut u = Word::empty();
        for (coord, d) in delta {
            let step = step_vectors[coord][coord];
            u = &u * &steps[coord].pow(d / step);
        }
        let u = &u * &s;
        debug_assert_eq!(eval_phi(&u).map_axis(&base_axis), *target);
        return Some(u);
    }
    None
}

/// A 90° rotation of U whose φ-image is the half-turn about `axis`.
pub fn lift_rotation(axis: &RotationAxis) -> Option<Word> {
    let base = Generator::from_direction(axis.direction);
    conjugating_word(base, axis).map(|u| Word::generator(base).conjugate_by(&u))
}

/// Family members with parameters drawn from the given ranges.
pub fn g_family_members(ms: &[i64], ns: &[i64], os: &[i64]) -> Vec<CanonicalSubgroup> {
    let mut out = Vec::new();
    for &m in ms {
        for &n in ns {
            for &o in os {
                if let Ok(h) = group_g(m, n, o) {
                    out.push(h);
                }
            }
        }
    }
    out
}

/// Ordering-valid Ĥ(p,q,r) with p, q, r drawn from `values`.
pub fn h_family_members(values: &[i64]) -> Vec<CanonicalSubgroup> {
    let mut out = Vec::new();
    for &p in values {
        for &q in values {
            for &r in values {
                if let Ok(h) = group_h(p, q, r) {
                    out.push(h);
                }
            }
        }
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::{generators_uhat, rotation_d};

    #[test]
    fn g_examples() {
        let g = group_g(1, 1, 1).unwrap();
        let (a, _, c) = generators_uhat();
        assert!(g.canonical_generators().contains(&a));
        assert_eq!(group_g(2, 3, 5).unwrap().index(), 60);
        let g2 = group_g(2, 1, 1).unwrap().canonical_generators();
        assert_eq!(g2[3].compose(&g2[2]), IntIsometry::translation_by([8, 0, 0]));
        assert!(!g.member(&c).unwrap());
        assert!(matches!(group_g(1, 1, 2), Err(Error::BadParams(_))));
        assert!(matches!(group_g(0, 1, 1), Err(Error::BadParams(_))));
        assert_eq!(group_g(2, 3, 1).unwrap().triple(), [Some(6), Some(4), None]);
    }

    #[test]
    fn g_translations() {
        let gens = group_g(2, 3, 5).unwrap().canonical_generators();
        let (a0, a1, b1) = (gens[0], gens[1], gens[3]);
        assert_eq!(a1.compose(&a0), IntIsometry::translation_by([0, 12, 0]));
        let s = a0.compose(&b1);
        assert_eq!(s.compose(&s), IntIsometry::translation_by([0, 0, 20]));
    }

    #[test]
    fn h_examples() {
        let (a, b, c) = generators_uhat();
        assert_eq!(group_h(1, 1, 1).unwrap().canonical_generators(), vec![a, b, c]);
        assert_eq!(group_h(3, 3, 5).unwrap().index(), 45);
        assert_eq!(group_h(1, 1, 1).unwrap().index(), 1);
        let g = group_h(1, 1, 3).unwrap().canonical_generators();
        assert_eq!(
            g[2].compose(&g[0]).compose(&g[1]),
            IntIsometry::translation_by([-2, 2, 6])
        );
        assert_eq!(
            group_h(1, 1, 3).unwrap().fundamental_box(),
            Box3 { lo: [-1, -1, -3], hi: [1, 1, 3] }
        );
        assert!(group_h(3, 1, 1).is_err());
        assert!(group_h(1, 3, 1).is_err());
        assert!(group_h(1, 5, 3).is_ok());
        assert!(group_h(2, 3, 5).is_err());
        for (p, q, r) in [(1, 3, 5), (3, 5, 7), (1, 1, 9)] {
            let h = group_h(p, q, r).unwrap();
            let t = IntIsometry::translation_by([-2 * p, 2 * q, 2 * r]);
            assert!(h.member(&t).unwrap());
            assert_eq!(h.triple(), [Some(2 * r), Some(2 * p), Some(2 * q)]);
        }
    }

    #[test]
    fn member_rejects_outside_uhat() {
        let h = group_h(1, 1, 1).unwrap();
        assert!(matches!(
            h.member(&IntIsometry::translation_by([2, 0, 0])),
            Err(Error::NotInUhat)
        ));
        assert!(h.member(&IntIsometry::translation_by([2, 2, 2])).unwrap());
    }

    #[test]
    fn generators_are_members() {
        for h in g_family_members(&[1, 2, 3], &[1, 2], &[1, 3])
            .into_iter()
            .chain(h_family_members(&[1, 3, 5]))
        {
            for g in h.canonical_generators() {
                assert!(h.member(&g).unwrap(), "{h}: {g}");
                assert!(g.rotation_axis().unwrap().has_uhat_parity());
            }
        }
    }

    #[test]
    fn conjugated_description() {
        let d = rotation_d();
        let h = group_h(1, 3, 5).unwrap().with_conjugator(d).unwrap();
        for g in h.generators() {
            assert!(h.member(&g).unwrap());
        }
        assert!(group_h(1, 1, 1)
            .unwrap()
            .with_conjugator(IntIsometry::translation_by([1, 0, 0]))
            .is_err());
    }

    #[test]
    fn index_constructions() {
        assert_eq!(construct_index(6).unwrap().params(), [3, 1, 1]);
        assert_eq!(construct_index(6).unwrap().family(), Family::G);
        assert_eq!(construct_index(1).unwrap(), group_h(1, 1, 1).unwrap());
        let h = construct_index(15).unwrap();
        assert_eq!((h.family(), h.index()), (Family::H, 15));
        for n in 1..=64 {
            let h = construct_index(n).unwrap();
            assert_eq!(h.index(), n);
            assert_eq!(h.index() % 2 == 0, h.family() == Family::G);
        }
        assert!(construct_index(0).is_err());
    }

    #[test]
    fn abelianization_examples() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(abelianize(&w("a")), AbelianClass([1, 0, 0]));
        assert_eq!(abelianize(&w("aaaa")), AbelianClass([0, 0, 0]));
        assert_eq!(abelianize(&w("abAB")), AbelianClass([0, 0, 0]));
        assert_eq!(abelianize(&w("AbCC")), AbelianClass([3, 1, 2]));
        assert_eq!(
            abelianize(&w("ab")),
            abelianize(&w("a")) + abelianize(&w("b"))
        );
    }

    #[test]
    fn lift_examples() {
        let h = group_h(1, 1, 1).unwrap();
        let lifts: Vec<String> = h.lift_generators().iter().map(|w| w.to_string()).collect();
        assert_eq!(lifts, vec!["a", "b", "c"]);

        let h = group_h(1, 1, 3).unwrap();
        let lift_a = &h.lift_generators()[0];
        assert_eq!(
            eval_phi(lift_a).rotation_axis(),
            Some(RotationAxis::new(Direction::X, 0, 3))
        );

        let g = group_g(1, 1, 1).unwrap();
        let lift_b0 = &g.lift_generators()[2];
        assert_eq!(
            eval_phi(lift_b0).rotation_axis(),
            Some(RotationAxis::new(Direction::Y, -1, 0))
        );
    }

    #[test]
    fn every_axis_in_a_window_lifts() {
        for c1 in -9..=9 {
            for c2 in -9..=9 {
                for dir in Direction::ALL {
                    let axis = RotationAxis::new(dir, c1, c2);
                    if !axis.has_uhat_parity() {
                        continue;
                    }
                    let w = lift_rotation(&axis).unwrap();
                    assert_eq!(eval_phi(&w).rotation_axis(), Some(axis));
                    assert_eq!(abelianize(&w), abelianize(&Word::generator(Generator::from_direction(dir))));
                }
            }
        }
    }

    #[test]
    fn witnesses() {
        let h = group_h(1, 1, 1).unwrap();
        let ws: Vec<String> = h.witness_rotations().unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(ws, vec!["a", "aa", "aaa", "b", "bb", "bbb", "c", "cc", "ccc"]);
        assert!(matches!(
            group_g(1, 1, 1).unwrap().witness_rotations(),
            Err(Error::FamilyMismatch { .. })
        ));
        let h = group_h(1, 1, 3).unwrap();
        let ws = h.witness_rotations().unwrap();
        let classes: BTreeSet<AbelianClass> = ws.iter().map(abelianize).collect();
        assert_eq!(classes.len(), 9);
        for w in &ws {
            assert!(h.member(&eval_phi(w)).unwrap());
        }
    }

    #[test]
    fn orbit_counts_small() {
        for (h, idx) in [
            (group_g(1, 1, 1).unwrap(), 2),
            (group_g(2, 1, 3).unwrap(), 12),
            (group_h(1, 1, 1).unwrap(), 1),
            (group_h(1, 3, 5).unwrap(), 15),
        ] {
            let c = h.cube_orbit_count();
            assert_eq!(c.orbits, idx, "{h}");
            assert_eq!(c.orbits_meeting_box, idx, "{h}");
            assert_eq!(c.box_volume_in_cubes, Some(idx as i64), "{h}");
        }
    }

    #[test]
    fn json_round_trip() {
        let h = group_h(1, 3, 5).unwrap().with_conjugator(rotation_d()).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.starts_with(r#"{"family":"H","params":[1,3,5],"conjugator":"#));
        let back: CanonicalSubgroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<CanonicalSubgroup>(r#"{"family":"G","params":[1,1,2]}"#).is_err());
    }
}

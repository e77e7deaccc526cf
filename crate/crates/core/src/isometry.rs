//! Exact affine isometries of E³ with signed-permutation linear part and integer translation.
//!
//! These are the elements of the crystallographic group Û (generated by the three
//! half-turns â, b̂, ĉ) and of its extension Ŝ by the 120° diagonal rotation D. All
//! arithmetic is exact; there are no tolerances anywhere in this module.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IVec3 = [i64; 3];
pub type IMat3 = [[i64; 3]; 3];

const IDENTITY_LINEAR: IMat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// Coordinate direction of an axis-parallel line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    X,
    Y,
    Z,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::X, Direction::Y, Direction::Z];

    pub fn index(self) -> usize {
        match self {
            Direction::X => 0,
            Direction::Y => 1,
            Direction::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Direction {
        Direction::ALL[i]
    }

    /// The two coordinates that stay fixed along a line of this direction, in the order
    /// `(t, c1, c2)`, `(c1, t, c2)`, `(c1, c2, t)`.
    pub fn cross_indices(self) -> (usize, usize) {
        match self {
            Direction::X => (1, 2),
            Direction::Y => (0, 2),
            Direction::Z => (0, 1),
        }
    }

    /// Image under D: (x,y,z) ↦ (z,x,y) sends the x-axis to the y-axis, y to z and z to x.
    pub fn next(self) -> Direction {
        Direction::from_index((self.index() + 1) % 3)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::X => "x",
            Direction::Y => "y",
            Direction::Z => "z",
        };
        f.write_str(s)
    }
}

/// An axis-parallel line with integer cross-coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RotationAxis {
    pub direction: Direction,
    pub c1: i64,
    pub c2: i64,
}

impl RotationAxis {
    pub fn new(direction: Direction, c1: i64, c2: i64) -> Self {
        RotationAxis { direction, c1, c2 }
    }

    /// The point of the line with parameter `t`.
    pub fn point(&self, t: i64) -> IVec3 {
        let (i, j) = self.direction.cross_indices();
        let mut p = [0; 3];
        p[self.direction.index()] = t;
        p[i] = self.c1;
        p[j] = self.c2;
        p
    }

    /// The half-turn about this line.
    pub fn half_turn(&self) -> IntIsometry {
        let d = self.direction.index();
        let mut linear = [[0; 3]; 3];
        for (k, row) in linear.iter_mut().enumerate() {
            row[k] = if k == d { 1 } else { -1 };
        }
        let (i, j) = self.direction.cross_indices();
        let mut translation = [0; 3];
        translation[i] = 2 * self.c1;
        translation[j] = 2 * self.c2;
        IntIsometry { linear, translation }
    }

    /// Parity pattern of the rotation axes of Û: (t, even, odd), (odd, t, even), (even, odd, t).
    pub fn has_uhat_parity(&self) -> bool {
        let even = |v: i64| v.rem_euclid(2) == 0;
        match self.direction {
            Direction::X => even(self.c1) && !even(self.c2),
            Direction::Y => !even(self.c1) && even(self.c2),
            Direction::Z => even(self.c1) && !even(self.c2),
        }
    }
}

impl fmt::Display for RotationAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::X => write!(f, "(t,{},{})", self.c1, self.c2),
            Direction::Y => write!(f, "({},t,{})", self.c1, self.c2),
            Direction::Z => write!(f, "({},{},t)", self.c1, self.c2),
        }
    }
}

/// A screw motion: half-turn about `line` followed by a translation along it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScrewReport {
    pub line: RotationAxis,
    pub displacement: i64,
}

/// Geometric type of a non-identity element with diagonal linear part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisKind {
    Rotation(RotationAxis),
    Screw(ScrewReport),
}

/// Affine map p ↦ linear·p + translation with `linear` a signed permutation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawIsometry", into = "RawIsometry")]
pub struct IntIsometry {
    linear: IMat3,
    translation: IVec3,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIsometry {
    linear: IMat3,
    translation: IVec3,
}

impl TryFrom<RawIsometry> for IntIsometry {
    type Error = Error;

    fn try_from(raw: RawIsometry) -> Result<Self> {
        IntIsometry::new(raw.linear, raw.translation)
    }
}

impl From<IntIsometry> for RawIsometry {
    fn from(g: IntIsometry) -> Self {
        RawIsometry {
            linear: g.linear,
            translation: g.translation,
        }
    }
}

impl IntIsometry {
    /// Checks that `linear` is a signed permutation matrix.
    pub fn new(linear: IMat3, translation: IVec3) -> Result<Self> {
        for (r, row) in linear.iter().enumerate() {
            if row.iter().any(|v| !(-1..=1).contains(v)) {
                return Err(Error::MalformedIsometry(format!(
                    "row {r} has an entry outside {{-1,0,1}}"
                )));
            }
            if row.iter().filter(|v| **v != 0).count() != 1 {
                return Err(Error::MalformedIsometry(format!(
                    "row {r} must have exactly one nonzero entry"
                )));
            }
        }
        for c in 0..3 {
            if (0..3).filter(|&r| linear[r][c] != 0).count() != 1 {
                return Err(Error::MalformedIsometry(format!(
                    "column {c} must have exactly one nonzero entry"
                )));
            }
        }
        Ok(IntIsometry {
            linear,
            translation,
        })
    }

    pub const fn identity() -> Self {
        IntIsometry {
            linear: IDENTITY_LINEAR,
            translation: [0, 0, 0],
        }
    }

    pub const fn translation_by(v: IVec3) -> Self {
        IntIsometry {
            linear: IDENTITY_LINEAR,
            translation: v,
        }
    }

    pub fn linear(&self) -> &IMat3 {
        &self.linear
    }

    pub fn translation(&self) -> IVec3 {
        self.translation
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_translation(&self) -> bool {
        self.linear == IDENTITY_LINEAR
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|i| self.linear[i][i] != 0)
    }

    /// Diagonal signs, if the linear part is diagonal.
    pub fn diagonal(&self) -> Option<[i64; 3]> {
        self.is_diagonal()
            .then(|| [self.linear[0][0], self.linear[1][1], self.linear[2][2]])
    }

    pub fn det(&self) -> i64 {
        let m = &self.linear;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn apply_linear(&self, v: IVec3) -> IVec3 {
        let m = &self.linear;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn apply(&self, p: IVec3) -> IVec3 {
        let l = self.apply_linear(p);
        [
            l[0] + self.translation[0],
            l[1] + self.translation[1],
            l[2] + self.translation[2],
        ]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &IntIsometry) -> IntIsometry {
        let mut linear = [[0; 3]; 3];
        for (i, row) in linear.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|k| self.linear[i][k] * other.linear[k][j]).sum();
            }
        }
        IntIsometry {
            linear,
            translation: self.apply(other.translation),
        }
    }

    pub fn inverse(&self) -> IntIsometry {
        let mut linear = [[0; 3]; 3];
        for (i, row) in linear.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.linear[j][i];
            }
        }
        let t = IntIsometry {
            linear,
            translation: [0; 3],
        }
        .apply_linear(self.translation);
        IntIsometry {
            linear,
            translation: [-t[0], -t[1], -t[2]],
        }
    }

    /// `s ∘ self ∘ s⁻¹`.
    pub fn conjugate_by(&self, s: &IntIsometry) -> IntIsometry {
        s.compose(self).compose(&s.inverse())
    }

    pub fn pow(&self, mut e: i64) -> IntIsometry {
        let mut base = if e < 0 { self.inverse() } else { *self };
        e = e.abs();
        let mut acc = IntIsometry::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Image of an axis-parallel line.
    pub fn map_axis(&self, axis: &RotationAxis) -> RotationAxis {
        let d = self.apply_linear(unit(axis.direction.index()));
        let dir = Direction::from_index(d.iter().position(|v| *v != 0).expect("nonzero column"));
        let p = self.apply(axis.point(0));
        let (i, j) = dir.cross_indices();
        RotationAxis::new(dir, p[i], p[j])
    }

    pub fn max_abs_translation(&self) -> i64 {
        self.translation.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Rotation axis or screw line of a non-identity element with diagonal linear part.
    ///
    /// Returns `Ok(None)` for pure translations.
    pub fn axis(&self) -> Result<Option<AxisKind>> {
        if self.is_identity() {
            return Err(Error::IdentityElement);
        }
        let diag = self.diagonal().ok_or(Error::NotDiagonal)?;
        if self.is_translation() {
            return Ok(None);
        }
        let plus: Vec<usize> = (0..3).filter(|&i| diag[i] == 1).collect();
        if plus.len() != 1 {
            // det = -1: a reflection-type element, outside every group handled here
            return Err(Error::MalformedIsometry(
                "linear part is not a half-turn".into(),
            ));
        }
        let dir = Direction::from_index(plus[0]);
        let (i, j) = dir.cross_indices();
        let (ti, tj) = (self.translation[i], self.translation[j]);
        if ti.rem_euclid(2) != 0 || tj.rem_euclid(2) != 0 {
            return Err(Error::NotInUhat);
        }
        let line = RotationAxis::new(dir, ti / 2, tj / 2);
        let along = self.translation[dir.index()];
        Ok(Some(if along == 0 {
            AxisKind::Rotation(line)
        } else {
            AxisKind::Screw(ScrewReport {
                line,
                displacement: along,
            })
        }))
    }

    /// The axis if this element is a pure half-turn.
    pub fn rotation_axis(&self) -> Option<RotationAxis> {
        match self.axis() {
            Ok(Some(AxisKind::Rotation(a))) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for IntIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y", "z"];
        let mut parts = Vec::with_capacity(3);
        for i in 0..3 {
            let j = (0..3).find(|&j| self.linear[i][j] != 0).unwrap_or(i);
            let sign = if self.linear[i][j] < 0 { "-" } else { "" };
            let t = self.translation[i];
            let s = match t.cmp(&0) {
                std::cmp::Ordering::Equal => format!("{sign}{}", names[j]),
                std::cmp::Ordering::Greater => format!("{sign}{}+{t}", names[j]),
                std::cmp::Ordering::Less => format!("{sign}{}{t}", names[j]),
            };
            parts.push(s);
        }
        write!(f, "({})", parts.join(","))
    }
}

fn unit(i: usize) -> IVec3 {
    let mut v = [0; 3];
    v[i] = 1;
    v
}

/// â: (x,y,z) ↦ (x,−y,−z+2), b̂: (x,y,z) ↦ (−x+2,y,−z), ĉ: (x,y,z) ↦ (−x,−y+2,z).
pub fn generators_uhat() -> (IntIsometry, IntIsometry, IntIsometry) {
    (
        RotationAxis::new(Direction::X, 0, 1).half_turn(),
        RotationAxis::new(Direction::Y, 1, 0).half_turn(),
        RotationAxis::new(Direction::Z, 0, 1).half_turn(),
    )
}

pub fn compose(g: &IntIsometry, h: &IntIsometry) -> IntIsometry {
    g.compose(h)
}

pub fn invert(g: &IntIsometry) -> IntIsometry {
    g.inverse()
}

/// `s ∘ g ∘ s⁻¹`.
pub fn conjugate(g: &IntIsometry, s: &IntIsometry) -> IntIsometry {
    g.conjugate_by(s)
}

pub fn axis_of(g: &IntIsometry) -> Result<Option<AxisKind>> {
    g.axis()
}

/// D: (x,y,z) ↦ (z,x,y), the 120° rotation about the main diagonal (t,t,t).
pub fn rotation_d() -> IntIsometry {
    IntIsometry {
        linear: [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
        translation: [0; 3],
    }
}

/// Translation part of the coset representative (identity, â, b̂ or ĉ) with the given
/// diagonal linear part.
fn uhat_coset_offset(diag: [i64; 3]) -> Option<IVec3> {
    match diag {
        [1, 1, 1] => Some([0, 0, 0]),
        [1, -1, -1] => Some([0, 0, 2]),
        [-1, 1, -1] => Some([2, 0, 0]),
        [-1, -1, 1] => Some([0, 2, 0]),
        _ => None,
    }
}

/// Membership in the translation lattice {(2α,2β,2γ) : α ≡ β ≡ γ (mod 2)} of Û.
pub fn in_uhat_lattice(v: IVec3) -> bool {
    if v.iter().any(|c| c.rem_euclid(2) != 0) {
        return false;
    }
    let p: Vec<i64> = v.iter().map(|c| (c / 2).rem_euclid(2)).collect();
    p[0] == p[1] && p[1] == p[2]
}

/// Exact membership in Û = ⟨â, b̂, ĉ⟩.
pub fn in_uhat(g: &IntIsometry) -> bool {
    let Some(diag) = g.diagonal() else {
        return false;
    };
    let Some(offset) = uhat_coset_offset(diag) else {
        return false;
    };
    let t = g.translation();
    in_uhat_lattice([t[0] - offset[0], t[1] - offset[1], t[2] - offset[2]])
}

/// Power k of D such that `g ∘ D⁻ᵏ` has diagonal linear part, if any.
pub fn d_power_of(g: &IntIsometry) -> Option<u8> {
    let d = rotation_d();
    let mut h = *g;
    for k in 0..3u8 {
        if h.is_diagonal() {
            return Some(k);
        }
        h = h.compose(&d.inverse());
    }
    None
}

/// Membership in Ŝ = ⟨Û, D⟩ = Û ⋊ ⟨D⟩.
pub fn in_shat(g: &IntIsometry) -> bool {
    match d_power_of(g) {
        Some(k) => in_uhat(&g.compose(&rotation_d().pow(-(k as i64)))),
        None => false,
    }
}

/// The twelve linear parts of Ŝ: sign-diagonal matrices of determinant one times powers of D.
pub fn shat_point_group() -> Vec<IntIsometry> {
    let d = rotation_d();
    let mut out = Vec::with_capacity(12);
    for diag in [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]] {
        let s = IntIsometry {
            linear: [[diag[0], 0, 0], [0, diag[1], 0], [0, 0, diag[2]]],
            translation: [0; 3],
        };
        for k in 0..3 {
            out.push(s.compose(&d.pow(k)));
        }
    }
    out
}

/// Random element of Ŝ: a point-group element of Ŝ followed by a translation, adjusted so the
/// result lies in Ŝ, with translation coordinates roughly within `radius`.
pub fn random_shat<R: rand::Rng + ?Sized>(rng: &mut R, radius: i64) -> IntIsometry {
    let point = shat_point_group();
    let lin = point[rng.random_range(0..point.len())];
    let k = d_power_of(&lin).expect("point group element") as i64;
    let diag = lin.compose(&rotation_d().pow(-k)).diagonal().expect("diagonal part");
    let offset = uhat_coset_offset(diag).expect("rotation diagonal");
    let half = (radius / 4).max(1);
    let parity = rng.random_range(0..2i64);
    let v: IVec3 = [0; 3].map(|_| 2 * (2 * rng.random_range(-half..=half) + parity));
    let t = [v[0] + offset[0], v[1] + offset[1], v[2] + offset[2]];
    let u = IntIsometry {
        linear: *lin.compose(&rotation_d().pow(-k)).linear(),
        translation: t,
    };
    u.compose(&rotation_d().pow(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_elements_lie_in_the_extension() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = random_shat(&mut rng, 12);
            assert!(in_shat(&g), "{g}");
        }
    }

    #[test]
    fn generator_formulas() {
        let (a, b, c) = generators_uhat();
        assert_eq!(a.apply([0, 0, 0]), [0, 0, 2]);
        assert_eq!(a.apply([3, 4, 5]), [3, -4, -3]);
        assert_eq!(b.apply([3, 4, 5]), [-1, 4, -5]);
        assert_eq!(c.apply([3, 4, 5]), [-3, -2, 5]);
        assert_eq!(b.apply([1, 5, 0]), [1, 5, 0]);
        for g in [a, b, c] {
            assert!(g.compose(&g).is_identity());
            assert_eq!(g.det(), 1);
        }
    }

    #[test]
    fn translations_by_four() {
        let (a, b, c) = generators_uhat();
        let tx = b.compose(&c.compose(&b).compose(&c.inverse()));
        assert_eq!(tx, IntIsometry::translation_by([4, 0, 0]));
        // distance four; the sign is fixed by composition
        let ty = a.compose(&c.compose(&a).compose(&c.inverse()));
        assert_eq!(ty, IntIsometry::translation_by([0, -4, 0]));
        let tz = a.compose(&b.compose(&a).compose(&b.inverse()));
        assert_eq!(tz, IntIsometry::translation_by([0, 0, 4]));
        assert_eq!(
            c.compose(&a).compose(&b),
            IntIsometry::translation_by([-2, 2, 2])
        );
    }

    #[test]
    fn inverse_examples() {
        let (a, _, _) = generators_uhat();
        assert_eq!(invert(&a), a);
        assert_eq!(
            invert(&IntIsometry::translation_by([4, 0, 0])),
            IntIsometry::translation_by([-4, 0, 0])
        );
        let d = rotation_d();
        assert_eq!(invert(&d), d.compose(&d));
        assert!(d.pow(3).is_identity());
    }

    #[test]
    fn membership_examples() {
        let (a, b, c) = generators_uhat();
        assert!(in_uhat(&IntIsometry::translation_by([-2, 2, 2])));
        assert!(!in_uhat(&IntIsometry::translation_by([2, 0, 0])));
        assert!(in_uhat(&a) && in_uhat(&b) && in_uhat(&c));
        assert!(!in_uhat(&rotation_d()));
        assert!(in_shat(&rotation_d()));
        assert!(in_shat(&a.compose(&rotation_d())));
        assert!(!in_shat(&IntIsometry::translation_by([2, 0, 0])));
    }

    #[test]
    fn axis_examples() {
        let (a, b, _) = generators_uhat();
        assert_eq!(
            axis_of(&a).unwrap(),
            Some(AxisKind::Rotation(RotationAxis::new(Direction::X, 0, 1)))
        );
        let ab = a.compose(&b);
        assert_eq!(ab.apply([0, 0, 0]), [2, 0, 2]);
        match axis_of(&ab).unwrap() {
            Some(AxisKind::Screw(s)) => {
                assert_eq!(s.line.direction, Direction::Z);
                assert_eq!(s.displacement, 2);
                assert_eq!((s.line.c1, s.line.c2), (1, 0));
            }
            other => panic!("expected screw, got {other:?}"),
        }
        assert_eq!(
            axis_of(&IntIsometry::translation_by([4, 0, 0])).unwrap(),
            None
        );
        assert!(matches!(
            axis_of(&IntIsometry::identity()),
            Err(Error::IdentityElement)
        ));
        assert!(matches!(axis_of(&rotation_d()), Err(Error::NotDiagonal)));
    }

    #[test]
    fn d_permutes_generators() {
        let (a, b, c) = generators_uhat();
        let d = rotation_d();
        assert_eq!(d.apply([1, 2, 3]), [3, 1, 2]);
        assert_eq!(conjugate(&a, &d), b);
        assert_eq!(conjugate(&b, &d), c);
        assert_eq!(conjugate(&c, &d), a);
        assert_eq!(
            d.map_axis(&RotationAxis::new(Direction::X, 0, 1)),
            RotationAxis::new(Direction::Y, 1, 0)
        );
        assert_eq!(
            conjugate(&IntIsometry::translation_by([4, 0, 0]), &d),
            IntIsometry::translation_by([0, 4, 0])
        );
    }

    #[test]
    fn no_point_group_element_transposes_two_axes() {
        let group = shat_point_group();
        assert_eq!(group.len(), 12);
        for g in &group {
            assert_eq!(g.det(), 1);
            for fixed in 0..3 {
                let image = g.apply_linear(unit(fixed));
                let fixes = image[fixed] != 0;
                let others: Vec<usize> = (0..3).filter(|&i| i != fixed).collect();
                let swaps = g.apply_linear(unit(others[0]))[others[1]] != 0;
                assert!(!(fixes && swaps), "{g} transposes two axes");
            }
        }
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(IntIsometry::new([[1, 1, 0], [0, 1, 0], [0, 0, 1]], [0; 3]).is_err());
        assert!(IntIsometry::new([[2, 0, 0], [0, 1, 0], [0, 0, 1]], [0; 3]).is_err());
        assert!(IntIsometry::new([[1, 0, 0], [1, 0, 0], [0, 0, 1]], [0; 3]).is_err());
    }

    #[test]
    fn json_shape() {
        let (a, _, _) = generators_uhat();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"linear":[[1,0,0],[0,-1,0],[0,0,-1]],"translation":[0,0,2]}"#);
        let back: IntIsometry = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<IntIsometry>(
            r#"{"linear":[[1,1,0],[0,1,0],[0,0,1]],"translation":[0,0,0]}"#
        )
        .is_err());
    }
}

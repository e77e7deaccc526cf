//! Eisenstein integers u + v·ω and the labelling of rotation axes by the point where their
//! image in the cube tessellation crosses the plane x + y + z = 0.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::isometry::{IVec3, RotationAxis};
use crate::word::{eval_phi, Generator, Word};

/// u + v·ω with ω = e^{2πi/3}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub u: i64,
    pub v: i64,
}

impl EisensteinInt {
    pub const ZERO: EisensteinInt = EisensteinInt { u: 0, v: 0 };
    pub const ONE: EisensteinInt = EisensteinInt { u: 1, v: 0 };
    pub const OMEGA: EisensteinInt = EisensteinInt { u: 0, v: 1 };

    pub fn new(u: i64, v: i64) -> Self {
        EisensteinInt { u, v }
    }

    /// |u + vω|² = u² − uv + v².
    pub fn norm(&self) -> i64 {
        self.u * self.u - self.u * self.v + self.v * self.v
    }

    pub fn conj(&self) -> Self {
        // conj(ω) = ω² = −1 − ω
        EisensteinInt::new(self.u - self.v, -self.v)
    }

    /// The six units ±1, ±ω, ±ω², in order of argument starting at 1.
    pub fn units() -> [EisensteinInt; 6] {
        [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)].map(|(u, v)| EisensteinInt::new(u, v))
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let (u, v) = (self.u as f64, self.v as f64);
        (u - v / 2.0, v * 3f64.sqrt() / 2.0)
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        EisensteinInt::new(self.u + o.u, self.v + o.v)
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        EisensteinInt::new(self.u - o.u, self.v - o.v)
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        EisensteinInt::new(-self.u, -self.v)
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // ω² = −1 − ω
        let (a, b, c, d) = (self.u, self.v, o.u, o.v);
        EisensteinInt::new(a * c - b * d, a * d + b * c - b * d)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}*w", self.u, self.v)
    }
}

/// Complex coordinate of an integer point of the plane x + y + z = 0, normalised so that the
/// hexagon vertex (1,−1,0) goes to 1 and (0,1,−1) to ω.
pub fn plane_coordinate(p: IVec3) -> Result<EisensteinInt> {
    let [x, y, z] = p;
    if x + y + z != 0 {
        return Err(Error::NonIntegralLabel(p));
    }
    let (u3, v3) = (2 * x - y - z, x + y - 2 * z);
    if u3 % 3 != 0 || v3 % 3 != 0 {
        return Err(Error::NonIntegralLabel(p));
    }
    Ok(EisensteinInt::new(u3 / 3, v3 / 3))
}

/// Label of an axis of the cube tessellation.
pub fn label_of(axis: &RotationAxis) -> Result<EisensteinInt> {
    let (i, j) = axis.direction.cross_indices();
    let mut p = [0; 3];
    p[i] = axis.c1;
    p[j] = axis.c2;
    p[axis.direction.index()] = -axis.c1 - axis.c2;
    plane_coordinate(p)
}

/// Label of the axis of u·x·u⁻¹, read off from φ(u) applied to the axis of x.
pub fn label_axis(u: &Word, base: Generator) -> Result<EisensteinInt> {
    let base_axis = eval_phi(&Word::generator(base))
        .rotation_axis()
        .expect("generator image is a half-turn");
    label_of(&eval_phi(u).map_axis(&base_axis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_labels() {
        let e = Word::empty();
        assert_eq!(label_axis(&e, Generator::B).unwrap(), EisensteinInt::ONE);
        assert_eq!(label_axis(&e, Generator::C).unwrap(), EisensteinInt::OMEGA);
        assert_eq!(
            label_axis(&e, Generator::A).unwrap(),
            EisensteinInt::OMEGA * EisensteinInt::OMEGA
        );
        assert_eq!(EisensteinInt::ONE.to_string(), "1+0*w");
    }

    #[test]
    fn ring_arithmetic() {
        let w = EisensteinInt::OMEGA;
        assert_eq!(w * w * w, EisensteinInt::ONE);
        assert_eq!(EisensteinInt::ONE + w + w * w, EisensteinInt::ZERO);
        for u in EisensteinInt::units() {
            assert_eq!(u.norm(), 1);
            assert_eq!(u * u.conj(), EisensteinInt::ONE);
        }
        let z = EisensteinInt::new(3, -2);
        assert_eq!(z.norm(), (z * z.conj()).u);
    }

    #[test]
    fn hexagon_vertices_are_units() {
        let hex = [[1, -1, 0], [1, 0, -1], [0, 1, -1], [-1, 1, 0], [-1, 0, 1], [0, -1, 1]];
        let labels: Vec<EisensteinInt> = hex.iter().map(|p| plane_coordinate(*p).unwrap()).collect();
        let mut units = EisensteinInt::units().to_vec();
        let mut got = labels.clone();
        units.sort();
        got.sort();
        assert_eq!(got, units);
        assert!(plane_coordinate([1, 1, 1]).is_err());
    }

    #[test]
    fn kernel_does_not_change_labels() {
        let u: Word = "abC".parse().unwrap();
        let k: Word = "bb".parse().unwrap();
        assert_eq!(
            label_axis(&(&k * &u), Generator::A).unwrap(),
            label_axis(&u, Generator::A).unwrap()
        );
    }
}

//! Isometries of H³ as 4×4 matrices preserving the form diag(−1,1,1,1), time first.

use std::ops::Mul;

use nalgebra::{Matrix4, Vector3, Vector4};

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

fn minkowski() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

pub fn inner(u: &Vector4<f64>, v: &Vector4<f64>) -> f64 {
    -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]
}

/// Point of the Klein ball of radius `r` lifted to the upper sheet of the hyperboloid.
pub fn klein_to_hyperboloid(p: Vec3, r: f64) -> Vector4<f64> {
    let q = Vector3::from(p) / r;
    let s = 1.0 / (1.0 - q.norm_squared()).sqrt();
    Vector4::new(s, s * q[0], s * q[1], s * q[2])
}

pub fn hyperboloid_to_klein(x: &Vector4<f64>, r: f64) -> Vec3 {
    [r * x[1] / x[0], r * x[2] / x[0], r * x[3] / x[0]]
}

/// Hyperbolic distance between two points of the hyperboloid.
pub fn distance(x: &Vector4<f64>, y: &Vector4<f64>) -> f64 {
    (-inner(x, y)).max(1.0).acosh()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(Matrix4<f64>);

impl LorentzMatrix {
    pub fn identity() -> Self {
        LorentzMatrix(Matrix4::identity())
    }

    pub fn from_matrix(m: Matrix4<f64>) -> Self {
        LorentzMatrix(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// ‖MᵀJM − J‖∞.
    pub fn lorentz_defect(&self) -> f64 {
        let j = minkowski();
        (self.0.transpose() * j * self.0 - j).amax()
    }

    /// Defect scaled by ‖M‖∞², meaningful for long products whose entries grow
    /// exponentially with word length.
    pub fn relative_lorentz_defect(&self) -> f64 {
        let n = self.0.amax().max(1.0);
        self.lorentz_defect() / (n * n)
    }

    pub fn preserves_upper_sheet(&self) -> bool {
        self.0[(0, 0)] > 0.0
    }

    /// J Mᵀ J, exact for Lorentz matrices.
    pub fn inverse(&self) -> Self {
        let j = minkowski();
        LorentzMatrix(j * self.0.transpose() * j)
    }

    pub fn apply(&self, x: &Vector4<f64>) -> Vector4<f64> {
        self.0 * x
    }

    pub fn apply_klein(&self, p: Vec3, r: f64) -> Vec3 {
        hyperboloid_to_klein(&self.apply(&klein_to_hyperboloid(p, r)), r)
    }

    /// Largest entry of M − N.
    pub fn max_abs_diff(&self, other: &LorentzMatrix) -> f64 {
        (self.0 - other.0).amax()
    }

    pub fn distance_to_identity(&self) -> f64 {
        self.max_abs_diff(&LorentzMatrix::identity())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(LorentzMatrix::identity(), |acc, _| acc * *self)
    }

    /// Gram–Schmidt of the columns with respect to the Minkowski form, removing drift.
    pub fn reorthonormalize(&self) -> Self {
        let mut cols: Vec<Vector4<f64>> = (0..4).map(|i| self.0.column(i).into_owned()).collect();
        for i in 0..4 {
            for k in 0..i {
                let sign = if k == 0 { -1.0 } else { 1.0 };
                let c = inner(&cols[i], &cols[k]) * sign;
                let ck = cols[k];
                cols[i] -= ck * c;
            }
            let n = inner(&cols[i], &cols[i]).abs().sqrt();
            cols[i] /= n;
        }
        LorentzMatrix(Matrix4::from_columns(&cols))
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;

    fn mul(self, rhs: LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * rhs.0)
    }
}

/// Rotation by `angle` about the geodesic through the Klein points `p1`, `p2`, right-handed
/// with respect to the direction from `p1` to `p2`.
pub fn rotation_about_chord(p1: Vec3, p2: Vec3, angle: f64, r: f64) -> Result<LorentzMatrix> {
    let inside = |p: &Vec3| Vector3::from(*p).norm() < r;
    if !inside(&p1) || !inside(&p2) || (Vector3::from(p1) - Vector3::from(p2)).norm() < 1e-12 {
        return Err(Error::DegenerateAxis);
    }
    let e0 = klein_to_hyperboloid(p1, r);
    let x2 = klein_to_hyperboloid(p2, r);
    let mut e1 = x2 + e0 * inner(&x2, &e0);
    e1 /= inner(&e1, &e1).sqrt();

    let mut complement: Vec<Vector4<f64>> = Vec::new();
    let mut candidates: Vec<Vector4<f64>> = (1..4)
        .map(|i| {
            let mut v = Vector4::zeros();
            v[i] = 1.0;
            v
        })
        .collect();
    // project every candidate, then keep the two best-conditioned ones
    for v in candidates.iter_mut() {
        *v += e0 * inner(v, &e0);
        *v -= e1 * inner(v, &e1);
    }
    candidates.sort_by(|a, b| inner(b, b).total_cmp(&inner(a, a)));
    for v in candidates {
        let mut w = v;
        for c in &complement {
            w -= c * inner(&w, c);
        }
        let n = inner(&w, &w);
        if n > 1e-12 {
            complement.push(w / n.sqrt());
        }
        if complement.len() == 2 {
            break;
        }
    }
    let (e2, mut e3) = (complement[0], complement[1]);
    if Matrix4::from_columns(&[e0, e1, e2, e3]).determinant() < 0.0 {
        e3 = -e3;
    }
    let j = minkowski();
    let p2m = e2 * e2.transpose() * j + e3 * e3.transpose() * j;
    let q = e3 * e2.transpose() * j - e2 * e3.transpose() * j;
    Ok(LorentzMatrix(
        Matrix4::identity() + p2m * (angle.cos() - 1.0) + q * angle.sin(),
    ))
}

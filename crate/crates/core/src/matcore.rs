//! Fixed-size linear algebra for task-space quantities.
//!
//! Axis order for every 6-vector and 6×6 matrix is `(x, y, z, rx, ry, rz)`:
//! three translations followed by three rotations.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Translational axes first, rotational axes second.
pub const AXIS_NAMES: [&str; 6] = ["x", "y", "z", "rx", "ry", "rz"];

/// Relative pivot threshold used by [`Mat6::invert`].
pub const SINGULAR_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Vec3 {
        Vec3(self.0.map(|v| v * s))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self.scale(-1.0)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec3 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

/// Stacked translational/rotational 6-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec6(pub [f64; 6]);

impl Vec6 {
    pub const ZERO: Vec6 = Vec6([0.0; 6]);

    pub fn from_parts(linear: Vec3, angular: Vec3) -> Self {
        let mut v = [0.0; 6];
        v[..3].copy_from_slice(&linear.0);
        v[3..].copy_from_slice(&angular.0);
        Vec6(v)
    }

    pub fn splat(value: f64) -> Self {
        Vec6([value; 6])
    }

    pub fn linear(&self) -> Vec3 {
        Vec3([self.0[0], self.0[1], self.0[2]])
    }

    pub fn angular(&self) -> Vec3 {
        Vec3([self.0[3], self.0[4], self.0[5]])
    }

    pub fn dot(&self, other: &Vec6) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, s: f64) -> Vec6 {
        Vec6(self.0.map(|v| v * s))
    }

    pub fn hadamard(&self, other: &Vec6) -> Vec6 {
        let mut out = [0.0; 6];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i] * other.0[i];
        }
        Vec6(out)
    }

    pub fn abs(&self) -> Vec6 {
        Vec6(self.0.map(f64::abs))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Add for Vec6 {
    type Output = Vec6;
    fn add(self, o: Vec6) -> Vec6 {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        Vec6(out)
    }
}

impl Sub for Vec6 {
    type Output = Vec6;
    fn sub(self, o: Vec6) -> Vec6 {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(o.0.iter()) {
            *a -= b;
        }
        Vec6(out)
    }
}

impl Neg for Vec6 {
    type Output = Vec6;
    fn neg(self) -> Vec6 {
        self.scale(-1.0)
    }
}

impl AddAssign for Vec6 {
    fn add_assign(&mut self, o: Vec6) {
        *self = *self + o;
    }
}

impl SubAssign for Vec6 {
    fn sub_assign(&mut self, o: Vec6) {
        *self = *self - o;
    }
}

impl Index<usize> for Vec6 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec6 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

/// Row-major 6×6 matrix in `(x, y, z, rx, ry, rz)` order.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat6(pub [[f64; 6]; 6]);

impl Default for Mat6 {
    fn default() -> Self {
        Mat6::zeros()
    }
}

impl fmt::Debug for Mat6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat6 [")?;
        for row in &self.0 {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl Mat6 {
    pub const fn zeros() -> Self {
        Mat6([[0.0; 6]; 6])
    }

    pub fn identity() -> Self {
        Mat6::from_diagonal(&Vec6::splat(1.0))
    }

    pub fn from_diagonal(d: &Vec6) -> Self {
        let mut m = Mat6::zeros();
        for i in 0..6 {
            m.0[i][i] = d.0[i];
        }
        m
    }

    pub fn from_rows(rows: [[f64; 6]; 6]) -> Self {
        Mat6(rows)
    }

    /// Identity with a 2×2 block written onto axes `(i, j)`.
    pub fn with_block(i: usize, j: usize, block: [[f64; 2]; 2]) -> Self {
        let mut m = Mat6::identity();
        m.set_block(i, j, block);
        m
    }

    pub fn set_block(&mut self, i: usize, j: usize, block: [[f64; 2]; 2]) {
        self.0[i][i] = block[0][0];
        self.0[i][j] = block[0][1];
        self.0[j][i] = block[1][0];
        self.0[j][j] = block[1][1];
    }

    pub fn diagonal(&self) -> Vec6 {
        let mut d = [0.0; 6];
        for (i, v) in d.iter_mut().enumerate() {
            *v = self.0[i][i];
        }
        Vec6(d)
    }

    pub fn transpose(&self) -> Mat6 {
        let mut t = Mat6::zeros();
        for i in 0..6 {
            for j in 0..6 {
                t.0[j][i] = self.0[i][j];
            }
        }
        t
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        self.0
            .iter()
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flat_map(|r| r.iter()).all(|v| v.is_finite())
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..6 {
            for j in (i + 1)..6 {
                worst = worst.max((self.0[i][j] - self.0[j][i]).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.max_asymmetry() <= tol
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..6).all(|i| (0..6).all(|j| i == j || self.0[i][j].abs() <= tol))
    }

    /// All entries strictly below the diagonal vanish.
    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        (1..6).all(|i| (0..i).all(|j| self.0[i][j].abs() <= tol))
    }

    pub fn is_lower_triangular(&self, tol: f64) -> bool {
        (0..6).all(|i| ((i + 1)..6).all(|j| self.0[i][j].abs() <= tol))
    }

    pub fn mul_vec(&self, v: &Vec6) -> Vec6 {
        let mut out = [0.0; 6];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].iter().zip(v.0.iter()).map(|(a, b)| a * b).sum();
        }
        Vec6(out)
    }

    pub fn scale(&self, s: f64) -> Mat6 {
        Mat6(self.0.map(|r| r.map(|v| v * s)))
    }

    /// Inverse by LU factorisation with partial pivoting.
    ///
    /// Fails with [`Error::SingularMatrix`] when a pivot falls below
    /// `SINGULAR_RTOL * max|entry|`.
    pub fn invert(&self) -> Result<Mat6> {
        let scale = self.max_abs();
        let threshold = SINGULAR_RTOL * scale;
        if scale == 0.0 {
            return Err(Error::SingularMatrix {
                pivot: 0.0,
                threshold,
            });
        }
        let mut a = self.0;
        let mut inv = Mat6::identity().0;
        for col in 0..6 {
            let pivot_row = (col..6)
                .max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))
                .unwrap_or(col);
            let pivot = a[pivot_row][col];
            if pivot.abs() <= threshold {
                return Err(Error::SingularMatrix {
                    pivot: pivot.abs(),
                    threshold,
                });
            }
            a.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            for row in (col + 1)..6 {
                let factor = a[row][col] / a[col][col];
                if factor == 0.0 {
                    continue;
                }
                for k in col..6 {
                    a[row][k] -= factor * a[col][k];
                }
                for k in 0..6 {
                    inv[row][k] -= factor * inv[col][k];
                }
            }
        }
        // back substitution on the upper factor
        for col in (0..6).rev() {
            let pivot = a[col][col];
            for k in 0..6 {
                inv[col][k] /= pivot;
            }
            for k in col..6 {
                a[col][k] /= pivot;
            }
            for row in 0..col {
                let factor = a[row][col];
                if factor == 0.0 {
                    continue;
                }
                a[row][col] = 0.0;
                for k in 0..6 {
                    inv[row][k] -= factor * inv[col][k];
                }
            }
        }
        Ok(Mat6(inv))
    }

    pub fn determinant(&self) -> f64 {
        let mut a = self.0;
        let mut det = 1.0;
        for col in 0..6 {
            let pivot_row = (col..6)
                .max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))
                .unwrap_or(col);
            if a[pivot_row][col] == 0.0 {
                return 0.0;
            }
            if pivot_row != col {
                a.swap(col, pivot_row);
                det = -det;
            }
            det *= a[col][col];
            for row in (col + 1)..6 {
                let factor = a[row][col] / a[col][col];
                for k in col..6 {
                    a[row][k] -= factor * a[col][k];
                }
            }
        }
        det
    }

    /// Determinants of the leading `k×k` principal submatrices, `k = 1..=6`.
    pub fn leading_minors(&self) -> [f64; 6] {
        let mut minors = [0.0; 6];
        for (k, minor) in minors.iter_mut().enumerate() {
            let n = k + 1;
            let mut sub = Mat6::identity();
            for i in 0..n {
                for j in 0..n {
                    sub.0[i][j] = self.0[i][j];
                }
            }
            *minor = sub.determinant();
        }
        minors
    }

    /// Ascending real spectrum of a symmetric matrix.
    pub fn eigenvalues_symmetric(&self) -> Result<[f64; 6]> {
        Ok(self.symmetric_eigen()?.values)
    }

    /// Symmetric eigen-decomposition by cyclic Jacobi rotations.
    pub fn symmetric_eigen(&self) -> Result<SymmetricEigen> {
        let asymmetry = self.max_asymmetry();
        if asymmetry > SYMMETRY_TOL * self.max_abs().max(1.0) {
            return Err(Error::NotSymmetric { asymmetry });
        }
        let mut a = self.0;
        // average out representational asymmetry before rotating
        for i in 0..6 {
            for j in (i + 1)..6 {
                let m = 0.5 * (a[i][j] + a[j][i]);
                a[i][j] = m;
                a[j][i] = m;
            }
        }
        let mut v = Mat6::identity().0;
        let scale = self.max_abs();
        for _sweep in 0..100 {
            let off: f64 = (0..6)
                .flat_map(|i| ((i + 1)..6).map(move |j| (i, j)))
                .map(|(i, j)| a[i][j] * a[i][j])
                .sum();
            if off.sqrt() <= 1e-15 * scale.max(f64::MIN_POSITIVE) {
                break;
            }
            for p in 0..6 {
                for q in (p + 1)..6 {
                    let apq = a[p][q];
                    if apq.abs() <= f64::MIN_POSITIVE {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..6 {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..6 {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                    for row in v.iter_mut() {
                        let vkp = row[p];
                        let vkq = row[q];
                        row[p] = c * vkp - s * vkq;
                        row[q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..6).collect();
        order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
        let mut values = [0.0; 6];
        let mut vectors = Mat6::zeros();
        for (col, &src) in order.iter().enumerate() {
            values[col] = a[src][src];
            for row in 0..6 {
                vectors.0[row][col] = v[row][src];
            }
        }
        Ok(SymmetricEigen { values, vectors })
    }

    /// Spectrum of a triangular matrix: its diagonal, in axis order.
    pub fn eigenvalues_triangular(&self) -> Result<[f64; 6]> {
        if !(self.is_upper_triangular(TRIANGULAR_TOL) || self.is_lower_triangular(TRIANGULAR_TOL)) {
            return Err(Error::NotTriangular);
        }
        Ok(self.diagonal().0)
    }
}

/// Absolute tolerance (scaled by `max(1, max|entry|)`) for symmetry checks.
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Absolute tolerance on the vanishing triangle of a triangular matrix.
pub const TRIANGULAR_TOL: f64 = 1e-12;

/// Eigenvalues (ascending) with the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigen {
    pub values: [f64; 6],
    pub vectors: Mat6,
}

impl SymmetricEigen {
    /// `Q Λ Qᵀ`.
    pub fn reconstruct(&self) -> Mat6 {
        let lambda = Mat6::from_diagonal(&Vec6(self.values));
        self.vectors * lambda * self.vectors.transpose()
    }
}

impl Mul for Mat6 {
    type Output = Mat6;
    fn mul(self, o: Mat6) -> Mat6 {
        let mut out = Mat6::zeros();
        for i in 0..6 {
            for j in 0..6 {
                out.0[i][j] = (0..6).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        out
    }
}

impl Mul<Vec6> for Mat6 {
    type Output = Vec6;
    fn mul(self, v: Vec6) -> Vec6 {
        self.mul_vec(&v)
    }
}

impl Add for Mat6 {
    type Output = Mat6;
    fn add(self, o: Mat6) -> Mat6 {
        let mut out = self;
        for i in 0..6 {
            for j in 0..6 {
                out.0[i][j] += o.0[i][j];
            }
        }
        out
    }
}

impl Sub for Mat6 {
    type Output = Mat6;
    fn sub(self, o: Mat6) -> Mat6 {
        self + o.scale(-1.0)
    }
}

impl Index<(usize, usize)> for Mat6 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat6 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

/// Rotation matrix for `XYZ` Euler increments, `R = Rz · Ry · Rx`.
pub fn rotation_xyz(angles: &Vec3) -> [[f64; 3]; 3] {
    let (sx, cx) = angles.0[0].sin_cos();
    let (sy, cy) = angles.0[1].sin_cos();
    let (sz, cz) = angles.0[2].sin_cos();
    [
        [cz * cy, cz * sy * sx - sz * cx, cz * sy * cx + sz * sx],
        [sz * cy, sz * sy * sx + cz * cx, sz * sy * cx - cz * sx],
        [-sy, cy * sx, cy * cx],
    ]
}

pub fn rotate(r: &[[f64; 3]; 3], v: &Vec3) -> Vec3 {
    Vec3([
        r[0][0] * v.0[0] + r[0][1] * v.0[1] + r[0][2] * v.0[2],
        r[1][0] * v.0[0] + r[1][1] * v.0[1] + r[1][2] * v.0[2],
        r[2][0] * v.0[0] + r[2][1] * v.0[1] + r[2][2] * v.0[2],
    ])
}

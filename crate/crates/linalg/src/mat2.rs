use crate::{assert_finite, singularity_floor, LinalgError, Vec2};

/// Dense real 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2([f64; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([1.0, 0.0, 0.0, 1.0]);
    pub const ZERO: Mat2 = Mat2([0.0; 4]);

    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        let e = [a11, a12, a21, a22];
        assert_finite(&e);
        Mat2(e)
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Self {
        Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.0[0], self.0[1]], [self.0[2], self.0[3]]]
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.0[2 * i + j]
    }

    pub fn col(&self, j: usize) -> Vec2 {
        Vec2::new(self.0[j], self.0[2 + j])
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &other.0;
        Mat2([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &other.0;
        Mat2([a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]])
    }

    pub fn scale(&self, c: f64) -> Mat2 {
        let a = &self.0;
        Mat2([c * a[0], c * a[1], c * a[2], c * a[3]])
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &other.0;
        Mat2([
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ])
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let a = &self.0;
        Vec2::new(a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1])
    }

    pub fn trace(&self) -> f64 {
        self.0[0] + self.0[3]
    }

    pub fn det(&self) -> f64 {
        self.0[0] * self.0[3] - self.0[1] * self.0[2]
    }

    /// Adjugate-over-determinant inverse.
    pub fn invert(&self) -> Result<Mat2, LinalgError> {
        let d = self.det();
        if d.abs() <= singularity_floor(self.max_abs(), 2) {
            return Err(LinalgError::Singular { det: d });
        }
        let a = &self.0;
        Ok(Mat2([a[3] / d, -a[1] / d, -a[2] / d, a[0] / d]))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn transpose(&self) -> Mat2 {
        let a = &self.0;
        Mat2([a[0], a[2], a[1], a[3]])
    }

    /// Matrix with the given columns.
    pub fn from_cols(c1: &Vec2, c2: &Vec2) -> Mat2 {
        Mat2::new(c1[0], c2[0], c1[1], c2[1])
    }
}

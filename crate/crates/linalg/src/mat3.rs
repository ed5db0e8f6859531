use crate::{assert_finite, singularity_floor, LinalgError, Vec3};

/// Dense real 3x3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3([f64; 9]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
    pub const ZERO: Mat3 = Mat3([0.0; 9]);

    pub fn new(entries: [f64; 9]) -> Self {
        assert_finite(&entries);
        Mat3(entries)
    }

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        Mat3::new([
            rows[0][0], rows[0][1], rows[0][2], rows[1][0], rows[1][1], rows[1][2], rows[2][0],
            rows[2][1], rows[2][2],
        ])
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let a = &self.0;
        [[a[0], a[1], a[2]], [a[3], a[4], a[5]], [a[6], a[7], a[8]]]
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.0[3 * i + j]
    }

    pub fn col(&self, j: usize) -> Vec3 {
        Vec3::new(self.0[j], self.0[3 + j], self.0[6 + j])
    }

    pub fn add(&self, other: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|k| self.0[k] + other.0[k]))
    }

    pub fn sub(&self, other: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|k| self.0[k] - other.0[k]))
    }

    pub fn scale(&self, c: f64) -> Mat3 {
        Mat3(std::array::from_fn(|k| c * self.0[k]))
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let a = &self.0;
        let b = &other.0;
        let mut e = [0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                e[3 * i + j] =
                    a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j];
            }
        }
        Mat3(e)
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let a = &self.0;
        Vec3::new(
            a[0] * v[0] + a[1] * v[1] + a[2] * v[2],
            a[3] * v[0] + a[4] * v[1] + a[5] * v[2],
            a[6] * v[0] + a[7] * v[1] + a[8] * v[2],
        )
    }

    pub fn trace(&self) -> f64 {
        self.0[0] + self.0[4] + self.0[8]
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let a = &self.0;
        a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
            + a[2] * (a[3] * a[7] - a[4] * a[6])
    }

    /// Sum of the three principal 2x2 minors: the linear coefficient of the
    /// monic characteristic polynomial l^3 - tr*l^2 + minor_sum*l - det.
    pub fn minor_sum(&self) -> f64 {
        let a = &self.0;
        (a[4] * a[8] - a[5] * a[7]) + (a[0] * a[8] - a[2] * a[6]) + (a[0] * a[4] - a[1] * a[3])
    }

    /// Adjugate-over-determinant inverse.
    pub fn invert(&self) -> Result<Mat3, LinalgError> {
        let d = self.det();
        if d.abs() <= singularity_floor(self.max_abs(), 3) {
            return Err(LinalgError::Singular { det: d });
        }
        let a = &self.0;
        let adj = [
            a[4] * a[8] - a[5] * a[7],
            a[2] * a[7] - a[1] * a[8],
            a[1] * a[5] - a[2] * a[4],
            a[5] * a[6] - a[3] * a[8],
            a[0] * a[8] - a[2] * a[6],
            a[2] * a[3] - a[0] * a[5],
            a[3] * a[7] - a[4] * a[6],
            a[1] * a[6] - a[0] * a[7],
            a[0] * a[4] - a[1] * a[3],
        ];
        let mut e = [0.0; 9];
        for k in 0..9 {
            e[k] = adj[k] / d;
        }
        Ok(Mat3(e))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn transpose(&self) -> Mat3 {
        let a = &self.0;
        Mat3([a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8]])
    }

    /// Matrix with the given columns.
    pub fn from_cols(c1: &Vec3, c2: &Vec3, c3: &Vec3) -> Mat3 {
        Mat3::new([
            c1[0], c2[0], c3[0], c1[1], c2[1], c3[1], c1[2], c2[2], c3[2],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_invariants() {
        let i = Mat3::IDENTITY;
        assert_eq!(i.det(), 1.0);
        assert_eq!(i.trace(), 3.0);
        assert_eq!(i.minor_sum(), 3.0);
    }

    #[test]
    fn minor_sum_triple_root_matrix() {
        // char poly must be (l+1)^3 = l^3 + 3l^2 + 3l + 1, so the monic
        // convention gives tr = -3, minor_sum = 3, det = -1.
        let a = Mat3::from_rows([[2.0, -1.0, 2.0], [5.0, -3.0, 3.0], [-1.0, 0.0, -2.0]]);
        assert_eq!(a.trace(), -3.0);
        assert_eq!(a.minor_sum(), 3.0);
        assert_eq!(a.det(), -1.0);
    }

    #[test]
    fn invert_round_trip() {
        let a = Mat3::from_rows([[2.0, -1.0, 0.5], [1.0, 3.0, -2.0], [0.0, 1.0, 4.0]]);
        let ai = a.invert().unwrap();
        assert!(a.mul(&ai).sub(&Mat3::IDENTITY).max_abs() < 1e-14);
    }

    #[test]
    fn singular_rejected() {
        let a = Mat3::from_rows([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 1.0, 1.0]]);
        assert!(matches!(a.invert(), Err(LinalgError::Singular { .. })));
    }

    #[test]
    fn scale_zero_is_zero() {
        let a = Mat3::from_rows([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]);
        assert_eq!(a.scale(0.0), Mat3::ZERO);
    }
}

use crate::assert_finite;

/// A real 2-vector with finite components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2([f64; 2]);

/// A real 3-vector with finite components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3([f64; 3]);

impl Vec2 {
    pub const ZERO: Vec2 = Vec2([0.0; 2]);
    pub const E1: Vec2 = Vec2([1.0, 0.0]);
    pub const E2: Vec2 = Vec2([0.0, 1.0]);

    pub fn new(x: f64, y: f64) -> Self {
        assert_finite(&[x, y]);
        Vec2([x, y])
    }

    pub fn basis(i: usize) -> Self {
        [Self::E1, Self::E2][i]
    }

    pub fn components(&self) -> [f64; 2] {
        self.0
    }

    pub fn add(&self, other: &Vec2) -> Vec2 {
        Vec2([self.0[0] + other.0[0], self.0[1] + other.0[1]])
    }

    pub fn sub(&self, other: &Vec2) -> Vec2 {
        Vec2([self.0[0] - other.0[0], self.0[1] - other.0[1]])
    }

    pub fn scale(&self, c: f64) -> Vec2 {
        Vec2([c * self.0[0], c * self.0[1]])
    }

    pub fn dot(&self, other: &Vec2) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1]
    }

    pub fn max_abs(&self) -> f64 {
        self.0[0].abs().max(self.0[1].abs())
    }
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);
    pub const E1: Vec3 = Vec3([1.0, 0.0, 0.0]);
    pub const E2: Vec3 = Vec3([0.0, 1.0, 0.0]);
    pub const E3: Vec3 = Vec3([0.0, 0.0, 1.0]);

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        assert_finite(&[x, y, z]);
        Vec3([x, y, z])
    }

    pub fn basis(i: usize) -> Self {
        [Self::E1, Self::E2, Self::E3][i]
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn add(&self, other: &Vec3) -> Vec3 {
        Vec3([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn sub(&self, other: &Vec3) -> Vec3 {
        Vec3([
            self.0[0] - other.0[0],
            self.0[1] - other.0[1],
            self.0[2] - other.0[2],
        ])
    }

    pub fn scale(&self, c: f64) -> Vec3 {
        Vec3([c * self.0[0], c * self.0[1], c * self.0[2]])
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        let a = &self.0;
        let b = &other.0;
        Vec3([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    pub fn max_abs(&self) -> f64 {
        self.0[0].abs().max(self.0[1].abs()).max(self.0[2].abs())
    }
}

impl std::ops::Index<usize> for Vec2 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl std::ops::Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

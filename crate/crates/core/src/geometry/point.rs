use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// Sense of rotation about `O`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rotation {
    Clockwise,
    CounterClockwise,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of `self × o`.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Quarter turn in the given sense.
    pub fn perp(self, sense: Rotation) -> Point2 {
        match sense {
            Rotation::CounterClockwise => Point2::new(-self.y, self.x),
            Rotation::Clockwise => Point2::new(self.y, -self.x),
        }
    }

    /// Rotation by the angle whose cosine and sine are given.
    pub fn rotate_by(self, cos: f64, sin: f64) -> Point2 {
        Point2::new(cos * self.x - sin * self.y, sin * self.x + cos * self.y)
    }

    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        self.rotate_by(c, s)
    }

    /// Unsigned angle in `[0, pi]` between two vectors.
    pub fn angle_to(self, o: Point2) -> f64 {
        self.cross(o).abs().atan2(self.dot(o))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

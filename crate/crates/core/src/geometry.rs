//! Points, vectors, the tolerance contract and the three-valued verdict.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::GeometryError;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vector2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vector3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_vector(self) -> Vector2 {
        Vector2::new(self.x, self.y)
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    pub fn midpoint(self, other: Self) -> Self {
        Self::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Vector2 {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; positive when `other` turns counterclockwise.
    #[inline]
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Counterclockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    pub fn is_zero(self) -> bool {
        self.x == 0.0 && self.y == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Point3 {
    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_vector(self) -> Vector3 {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }
}

impl Vector3 {
    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    pub fn is_zero(self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

macro_rules! impl_affine_ops {
    ($point:ident, $vector:ident, $($c:ident),+) => {
        impl Sub for $point {
            type Output = $vector;
            #[inline]
            fn sub(self, rhs: Self) -> $vector {
                $vector { $($c: self.$c - rhs.$c),+ }
            }
        }
        impl Add<$vector> for $point {
            type Output = $point;
            #[inline]
            fn add(self, rhs: $vector) -> $point {
                $point { $($c: self.$c + rhs.$c),+ }
            }
        }
        impl Sub<$vector> for $point {
            type Output = $point;
            #[inline]
            fn sub(self, rhs: $vector) -> $point {
                $point { $($c: self.$c - rhs.$c),+ }
            }
        }
        impl Add for $vector {
            type Output = $vector;
            #[inline]
            fn add(self, rhs: Self) -> $vector {
                $vector { $($c: self.$c + rhs.$c),+ }
            }
        }
        impl Sub for $vector {
            type Output = $vector;
            #[inline]
            fn sub(self, rhs: Self) -> $vector {
                $vector { $($c: self.$c - rhs.$c),+ }
            }
        }
        impl Mul<f64> for $vector {
            type Output = $vector;
            #[inline]
            fn mul(self, rhs: f64) -> $vector {
                $vector { $($c: self.$c * rhs),+ }
            }
        }
        impl Neg for $vector {
            type Output = $vector;
            #[inline]
            fn neg(self) -> $vector {
                $vector { $($c: -self.$c),+ }
            }
        }
    };
}

impl_affine_ops!(Point2, Vector2, x, y);
impl_affine_ops!(Point3, Vector3, x, y, z);

/// Query verdict shared by every containment algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

impl Containment {
    pub fn as_str(self) -> &'static str {
        match self {
            Containment::Inside => "inside",
            Containment::Boundary => "boundary",
            Containment::Outside => "outside",
        }
    }
}

impl std::fmt::Display for Containment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Relative tolerance; every predicate uses `eps_rel * diameter` as its absolute band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps_rel: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS_REL: f64 = 1e-12;

    pub fn new(eps_rel: f64) -> Result<Self, GeometryError> {
        if eps_rel.is_finite() && eps_rel > 0.0 {
            Ok(Self { eps_rel })
        } else {
            Err(GeometryError::InvalidTolerance(eps_rel))
        }
    }

    pub fn eps_rel(self) -> f64 {
        self.eps_rel
    }

    /// Absolute band for a shape of the given diameter.
    pub fn band(self, diameter: f64) -> f64 {
        self.eps_rel * diameter
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps_rel: Self::DEFAULT_EPS_REL }
    }
}

/// Folds signed side values into a verdict.
///
/// Each item is `(value, band)` where positive values are on the inner side.
/// Stops at the first value beyond `-band`.
#[inline]
pub(crate) fn fold_sides(sides: impl IntoIterator<Item = (f64, f64)>) -> Containment {
    let mut on_boundary = false;
    for (value, band) in sides {
        if value < -band {
            return Containment::Outside;
        }
        if value <= band {
            on_boundary = true;
        }
    }
    if on_boundary {
        Containment::Boundary
    } else {
        Containment::Inside
    }
}

pub(crate) fn ensure_finite2(p: Point2) -> Result<Point2, GeometryError> {
    if p.is_finite() {
        Ok(p)
    } else {
        Err(GeometryError::NonFinite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_sign_is_counterclockwise_positive() {
        let a = Vector2::new(1.0, 0.0);
        let b = Vector2::new(0.0, 1.0);
        assert!(a.cross(b) > 0.0);
        assert!(b.cross(a) < 0.0);
        assert_eq!(a.perp(), b);
    }

    #[test]
    fn tolerance_rejects_non_positive() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(-1e-9).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
        assert_eq!(Tolerance::default().band(2.0), 2e-12);
    }

    #[test]
    fn fold_sides_verdicts() {
        assert_eq!(fold_sides([(1.0, 0.1), (0.5, 0.1)]), Containment::Inside);
        assert_eq!(fold_sides([(1.0, 0.1), (0.05, 0.1)]), Containment::Boundary);
        assert_eq!(fold_sides([(0.0, 0.1), (-0.5, 0.1)]), Containment::Outside);
        assert_eq!(fold_sides([(-0.1, 0.1)]), Containment::Boundary);
    }
}

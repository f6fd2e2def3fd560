//! Exact polar and spherical coordinates.
//!
//! These use `atan2`/`acos` and are only used as independent oracles for the
//! tan-spaced sector and cube-cell indices.

use std::f64::consts::TAU;

use crate::error::GeometryError;
use crate::geometry::{Vector2, Vector3};

/// `(r, phi)` with `phi` in `[0, 2pi)` counterclockwise from +x.
pub fn polar_exact(v: Vector2) -> Result<(f64, f64), GeometryError> {
    if v.is_zero() {
        return Err(GeometryError::ZeroVector);
    }
    Ok((v.norm(), normalize_angle(v.y.atan2(v.x))))
}

/// `(r, theta, phi)`: `theta = acos(z / r)` in `[0, pi]`, `phi` as in [`polar_exact`],
/// with `phi = 0` on the z axis.
pub fn spherical_exact(v: Vector3) -> Result<(f64, f64, f64), GeometryError> {
    if v.is_zero() {
        return Err(GeometryError::ZeroVector);
    }
    let r = v.norm();
    let theta = (v.z / r).clamp(-1.0, 1.0).acos();
    let phi = if v.x == 0.0 && v.y == 0.0 {
        0.0
    } else {
        normalize_angle(v.y.atan2(v.x))
    };
    Ok((r, theta, phi))
}

fn normalize_angle(a: f64) -> f64 {
    let a = if a < 0.0 { a + TAU } else { a };
    // -tiny + 2pi rounds to 2pi
    if a >= TAU {
        0.0
    } else {
        a
    }
}

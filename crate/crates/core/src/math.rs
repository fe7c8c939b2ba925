//! Float helpers that `core` does not provide.

use core::f64::consts::{FRAC_PI_2, PI, TAU};

pub const EPS: f64 = 1e-9;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

/// `(cos, sin)` of `yaw`, exact at multiples of a quarter turn.
pub fn rotation(yaw: f64) -> (f64, f64) {
    let quarters = yaw / FRAC_PI_2;
    let nearest = libm::round(quarters);
    if (quarters - nearest).abs() < 1e-12 {
        match (nearest as i64).rem_euclid(4) {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    } else {
        (libm::cos(yaw), libm::sin(yaw))
    }
}

/// Normalizes an angle into `[0, 2π)`.
pub fn normalize_yaw(yaw: f64) -> f64 {
    let mut r = yaw - TAU * floor(yaw / TAU);
    if !(0.0..TAU).contains(&r) {
        r = 0.0;
    }
    // Snap values that are a rounding error away from a full turn.
    if TAU - r < 1e-12 {
        0.0
    } else {
        r
    }
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(angle: f64) -> f64 {
    let mut r = angle - TAU * floor((angle + PI) / TAU);
    if r <= -PI {
        r += TAU;
    }
    r
}

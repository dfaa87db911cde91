//! Measurement directions on the unit sphere and the configurations that feed
//! the Bell functionals.
//!
//! Sphere sampling uses the inverse-CDF construction `u = cos(polar) ~ U[-1, 1]`,
//! `azimuth ~ U[0, 2pi)`, i.e. exactly two uniform draws per direction. A CHSH
//! configuration therefore consumes six draws and a 3322 configuration ten.
//! The first direction of each configuration is pinned to the z axis: every
//! model here is rotation invariant, so fixing it loses no generality.

mod stream;

use serde::Serialize;

pub use stream::{mix64, RandomStream};

use crate::scalar::Real;

/// Unit vector on the 2-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Direction<T> {
    x: T,
    y: T,
    z: T,
}

impl<T: Real> Direction<T> {
    pub fn z_axis() -> Self {
        Self { x: T::zero(), y: T::zero(), z: T::one() }
    }

    /// Normalizes `(x, y, z)`; `None` for the zero or a non-finite vector.
    pub fn new(x: T, y: T, z: T) -> Option<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm == T::zero() {
            return None;
        }
        Some(Self { x: x / norm, y: y / norm, z: z / norm })
    }

    /// From polar angle (measured from +z) and azimuth.
    pub fn from_spherical(polar: T, azimuth: T) -> Self {
        let (sp, cp) = polar.sin_cos();
        let (sa, ca) = azimuth.sin_cos();
        Self { x: sp * ca, y: sp * sa, z: cp }
    }

    /// Direction in the x-z plane at polar angle `alpha`.
    pub fn in_xz_plane(alpha: T) -> Self {
        let (s, c) = alpha.sin_cos();
        Self { x: s, y: T::zero(), z: c }
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn y(&self) -> T {
        self.y
    }

    pub fn z(&self) -> T {
        self.z
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }
}

/// Angle in `[0, pi]` between two directions.
#[inline]
pub fn angle_between<T: Real>(u: &Direction<T>, v: &Direction<T>) -> T {
    u.dot(v).max(-T::one()).min(T::one()).acos()
}

/// Uniformly distributed direction; takes two draws from `stream`.
#[inline]
pub fn sample_direction<T: Real>(stream: &mut RandomStream) -> Direction<T> {
    let u = T::lit(2.0 * stream.next_f64() - 1.0);
    let azimuth = T::lit(std::f64::consts::TAU * stream.next_f64());
    let s = (T::one() - u * u).max(T::zero()).sqrt();
    let (sa, ca) = azimuth.sin_cos();
    Direction { x: s * ca, y: s * sa, z: u }
}

/// Uniform direction within the spherical cap of angular `radius` around
/// `center`; takes two draws.
pub fn sample_in_cap<T: Real>(center: &Direction<T>, radius: T, stream: &mut RandomStream) -> Direction<T> {
    let radius = radius.max(T::zero()).min(T::PI());
    let lo = radius.cos();
    let cos_t = T::one() - T::lit(stream.next_f64()) * (T::one() - lo);
    let azimuth = T::lit(std::f64::consts::TAU * stream.next_f64());
    let sin_t = (T::one() - cos_t * cos_t).max(T::zero()).sqrt();
    let (e1, e2) = orthonormal_complement(center);
    let (sa, ca) = azimuth.sin_cos();
    let w = |c: T, a: T, b: T| c * cos_t + (a * ca + b * sa) * sin_t;
    Direction::new(
        w(center.x, e1[0], e2[0]),
        w(center.y, e1[1], e2[1]),
        w(center.z, e1[2], e2[2]),
    )
    .unwrap_or(*center)
}

fn orthonormal_complement<T: Real>(d: &Direction<T>) -> ([T; 3], [T; 3]) {
    // cross with the axis least aligned to d
    let [x, y, z] = d.to_array();
    let helper = if x.abs() <= y.abs() && x.abs() <= z.abs() {
        [T::one(), T::zero(), T::zero()]
    } else if y.abs() <= z.abs() {
        [T::zero(), T::one(), T::zero()]
    } else {
        [T::zero(), T::zero(), T::one()]
    };
    let e1 = cross([x, y, z], helper);
    let n = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    let e1 = [e1[0] / n, e1[1] / n, e1[2] / n];
    let e2 = cross([x, y, z], e1);
    (e1, e2)
}

fn cross<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Directions `a, a'` (Alice) and `b, b'` (Bob) of a CHSH test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChshConfig<T> {
    pub a: Direction<T>,
    pub b: Direction<T>,
    pub a_p: Direction<T>,
    pub b_p: Direction<T>,
}

impl<T: Real> ChshConfig<T> {
    /// Pair angles in functional order: `(ab, ab', a'b, a'b')`.
    #[inline]
    pub fn angles(&self) -> [T; 4] {
        [
            angle_between(&self.a, &self.b),
            angle_between(&self.a, &self.b_p),
            angle_between(&self.a_p, &self.b),
            angle_between(&self.a_p, &self.b_p),
        ]
    }

    pub fn free_directions_mut(&mut self) -> [&mut Direction<T>; 3] {
        [&mut self.b, &mut self.a_p, &mut self.b_p]
    }
}

/// Three directions per party for the 3322 test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct I3322Config<T> {
    pub a: Direction<T>,
    pub a_p: Direction<T>,
    pub a_pp: Direction<T>,
    pub b: Direction<T>,
    pub b_p: Direction<T>,
    pub b_pp: Direction<T>,
}

impl<T: Real> I3322Config<T> {
    /// Pair angles of the eight two-party terms:
    /// `(ab, ab', ab'', a'b, a'b', a'b'', a''b, a''b')`.
    #[inline]
    pub fn angles(&self) -> [T; 8] {
        [
            angle_between(&self.a, &self.b),
            angle_between(&self.a, &self.b_p),
            angle_between(&self.a, &self.b_pp),
            angle_between(&self.a_p, &self.b),
            angle_between(&self.a_p, &self.b_p),
            angle_between(&self.a_p, &self.b_pp),
            angle_between(&self.a_pp, &self.b),
            angle_between(&self.a_pp, &self.b_p),
        ]
    }

    pub fn free_directions_mut(&mut self) -> [&mut Direction<T>; 5] {
        [&mut self.a_p, &mut self.a_pp, &mut self.b, &mut self.b_p, &mut self.b_pp]
    }
}

/// `a` on the z axis; `b`, `a'`, `b'` drawn in that order.
#[inline]
pub fn sample_chsh_config<T: Real>(stream: &mut RandomStream) -> ChshConfig<T> {
    let b = sample_direction(stream);
    let a_p = sample_direction(stream);
    let b_p = sample_direction(stream);
    ChshConfig { a: Direction::z_axis(), b, a_p, b_p }
}

/// `a` on the z axis; `a'`, `a''`, `b`, `b'`, `b''` drawn in that order.
#[inline]
pub fn sample_i3322_config<T: Real>(stream: &mut RandomStream) -> I3322Config<T> {
    let a_p = sample_direction(stream);
    let a_pp = sample_direction(stream);
    let b = sample_direction(stream);
    let b_p = sample_direction(stream);
    let b_pp = sample_direction(stream);
    I3322Config { a: Direction::z_axis(), a_p, a_pp, b, b_p, b_pp }
}

/// All four directions in the x-z plane at the given polar angles.
pub fn coplanar_chsh_config<T: Real>(alpha_a: T, alpha_b: T, alpha_a_p: T, alpha_b_p: T) -> ChshConfig<T> {
    ChshConfig {
        a: Direction::in_xz_plane(alpha_a),
        b: Direction::in_xz_plane(alpha_b),
        a_p: Direction::in_xz_plane(alpha_a_p),
        b_p: Direction::in_xz_plane(alpha_b_p),
    }
}

/// Coplanar configuration with `a` at angle 0 and the other three in-plane
/// angles uniform on `[0, 2pi)`; takes three draws.
pub fn sample_coplanar_chsh_config<T: Real>(stream: &mut RandomStream) -> ChshConfig<T> {
    let mut alpha = || T::lit(std::f64::consts::TAU * stream.next_f64());
    let (b, a_p, b_p) = (alpha(), alpha(), alpha());
    coplanar_chsh_config(T::zero(), b, a_p, b_p)
}

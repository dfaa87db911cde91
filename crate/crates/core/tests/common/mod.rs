//! Test-only oracles, written from the slope/intercept branch tables and
//! independent of the node-list implementation.
#![allow(dead_code)]

use std::f64::consts::PI;

/// PR box by branches, half-open intervals as tabulated.
pub fn pr_branch(theta: f64) -> f64 {
    if theta < PI / 6.0 {
        1.0
    } else if theta < PI / 4.0 {
        -24.0 / PI * theta + 5.0
    } else if theta < PI / 3.0 {
        -1.0
    } else if theta < 2.0 * PI / 3.0 {
        6.0 / PI * theta - 3.0
    } else if theta < 3.0 * PI / 4.0 {
        1.0
    } else if theta < 5.0 * PI / 6.0 {
        -24.0 / PI * theta + 19.0
    } else {
        -1.0
    }
}

/// Lambda box by branches.
pub fn lambda_branch(lambda: f64, theta: f64) -> f64 {
    if theta < PI / 18.0 {
        1.0
    } else if theta < PI / 6.0 {
        -18.0 / PI * theta + 2.0
    } else if theta < lambda {
        -1.0
    } else if theta < lambda + PI / 18.0 {
        18.0 / PI * (theta - lambda) - 1.0
    } else if theta < 17.0 * PI / 18.0 - lambda {
        0.0
    } else if theta < PI - lambda {
        18.0 / PI * (theta + lambda) - 17.0
    } else if theta < 5.0 * PI / 6.0 {
        1.0
    } else if theta < 17.0 * PI / 18.0 {
        -18.0 / PI * theta + 16.0
    } else {
        -1.0
    }
}

pub fn singlet_closed(theta: f64) -> f64 {
    -theta.cos()
}

/// Angle between in-plane directions at polar angles `x` and `y`.
pub fn planar_angle(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(2.0 * PI);
    if d > PI {
        2.0 * PI - d
    } else {
        d
    }
}

/// Violating fraction of coplanar CHSH configurations (`a` at 0, the other
/// three angles over `[0, 2pi)`) by midpoint quadrature on `n^3` cells.
pub fn coplanar_grid_fraction(e: impl Fn(f64) -> f64, n: usize) -> f64 {
    let h = 2.0 * PI / n as f64;
    let mid: Vec<f64> = (0..n).map(|k| (k as f64 + 0.5) * h).collect();
    // E(ab) and E(ab') depend on one angle each
    let e_a: Vec<f64> = mid.iter().map(|&x| e(planar_angle(0.0, x))).collect();
    let mut hits = 0u64;
    for (ib, &b) in mid.iter().enumerate() {
        for &ap in &mid {
            let e_apb = e(planar_angle(ap, b));
            for (ibp, &bp) in mid.iter().enumerate() {
                let s = e_a[ib] + e_a[ibp] + e_apb - e(planar_angle(ap, bp));
                hits += (s.abs() > 2.0) as u64;
            }
        }
    }
    hits as f64 / (n * n * n) as f64
}

/// One-sample Kolmogorov-Smirnov statistic against a CDF.
pub fn ks_statistic(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Rotation matrix about unit `axis` by `angle` (Rodrigues).
pub fn rotation(axis: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let [x, y, z] = axis;
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

pub fn apply(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|r| m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2])
}

//! The toric moment image of the disk cotangent bundle over a sphere of
//! revolution: action integrals, sampled boundary curve, Zoll defect,
//! convexity classification, inscribed triangle and area.
//!
//! The angular momentum `j` in `[-u(z0), u(z0)]` is the canonical
//! parameter everywhere; the first action coordinate is `2 pi j`, so the
//! boundary curve is
//!
//! ```text
//! rho(j) = (I(j) + Theta_1(j), I(j) + Theta_2(j)),
//! I(j)   = 2 ∫_{z_-}^{z_+} sqrt((1 - j^2/u^2)(1 + u'^2)) dz,
//! ```
//!
//! with `Theta_2 - Theta_1 = 2 pi j` splitting the rotation between the
//! two branches. Sampling uses a Chebyshev grid clustered at the endpoints
//! `j = +-u(z0)` where the curve has square-root behavior.

use crate::error::{Error, Result};
use crate::numerics::quad::{integrate_de, DEFAULT_QUAD_TOL};
use crate::numerics::root::golden_min;
use crate::spheroid;
use crate::surface::{turning_points, SurfaceProfile};
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // shadowed by the inherent f64 methods under cfg(test)
use num_traits::Float;

/// One boundary sample `(j, rho_1(j), rho_2(j))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub j: f64,
    pub rho1: f64,
    pub rho2: f64,
}

/// Where a [`ToricProfile`] came from; lets downstream refinement re-evaluate
/// the exact boundary when a closed form is available.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSource {
    Spheroid(f64),
    Sampled(String),
}

/// Sampled boundary curve of the toric moment image, ordered by
/// increasing `j` from `(equator_length, 0)` to `(0, equator_length)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToricProfile {
    pub samples: Vec<ProfileSample>,
    /// `2 pi u(z0)`.
    pub equator_length: f64,
    /// `rho_1(0) = rho_2(0)`.
    pub meridian_length: f64,
    pub source: ProfileSource,
}

/// How the moment image sits among toric domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Boundary curve is the graph of a convex function.
    Concave,
    /// The region (closed up along the axes) is convex.
    WeaklyConvex,
    Neither,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Concave => "concave",
            Classification::WeaklyConvex => "weakly_convex",
            Classification::Neither => "neither",
        }
    }
}

impl core::fmt::Display for Classification {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rotation contribution `Theta_i(j)` of branch `i` (1 or 2):
/// `2 pi j` on branch 2 for `j > 0`, `-2 pi j` on branch 1 for `j < 0`,
/// zero otherwise.
pub fn theta_correction(i: usize, j: f64) -> f64 {
    assert!(i == 1 || i == 2, "theta_correction: branch index is 1 or 2");
    if i == 2 && j > 0.0 {
        2.0 * PI * j
    } else if i == 1 && j < 0.0 {
        -2.0 * PI * j
    } else {
        0.0
    }
}

/// Radial action `I(h, j) = 2 ∫ sqrt((h - j^2/u^2)(1 + u'^2)) dz` between
/// the turning points; zero at the tangency `|j| = u(z0) sqrt(h)`.
pub fn action_i2(p: &SurfaceProfile, h: f64, j: f64) -> Result<f64> {
    action_i2_tol(p, h, j, DEFAULT_QUAD_TOL)
}

/// [`action_i2`] with an explicit absolute quadrature tolerance.
pub fn action_i2_tol(p: &SurfaceProfile, h: f64, j: f64, tol: f64) -> Result<f64> {
    let tp = turning_points(p, h, j)?;
    if tp.z_plus <= tp.z_minus {
        return Ok(0.0);
    }
    if let Some(c) = p.spheroid_c() {
        return spheroid_action(c, h, j.abs(), tp.z_minus, tp.z_plus, tol);
    }
    let ja = j.abs();
    let f = |z: f64, _: f64, _: f64| {
        let u = p.u(z);
        if !(u > 0.0) {
            return 0.0;
        }
        let du = p.du(z);
        let radicand = (h - ja * ja / (u * u)).max(0.0) * (1.0 + du * du);
        if radicand.is_finite() {
            radicand.sqrt()
        } else {
            0.0
        }
    };
    Ok(2.0 * integrate_de(f, tp.z_minus, tp.z_plus, tol)?)
}

/// Spheroid specialization with all cancellation-prone factors computed
/// from exact endpoint distances:
///
/// ```text
/// sqrt((h - j^2/u^2)(1 + u'^2)) = sqrt(h (z+ - z)(z - z-) (c^4 - (c^2-1) z^2))
///                                 / (c (c - z)(c + z)).
/// ```
fn spheroid_action(c: f64, h: f64, ja: f64, z_minus: f64, z_plus: f64, tol: f64) -> Result<f64> {
    let c2 = c * c;
    // distance from the turning point to the pole, stable as j -> 0
    let ratio = ja * ja / h;
    let gap = c * ratio / (1.0 + (1.0 - ratio).sqrt());
    let f = move |z: f64, da: f64, db: f64| {
        let vanish = h * da * db;
        let poly = c2 * c2 - (c2 - 1.0) * z * z;
        let hi = gap + db; // c - z
        let lo = gap + da; // c + z  (turning points are symmetric)
        (vanish.max(0.0) * poly).sqrt() / (c * hi * lo)
    };
    Ok(2.0 * integrate_de(f, z_minus, z_plus, tol)?)
}

/// Samples the boundary curve on a Chebyshev `j`-grid of `n` points
/// (`n >= 16`); the endpoint samples `(0, L_eq)` and `(L_eq, 0)` are exact.
///
/// Spheroid profiles evaluate the integrand from exact endpoint
/// distances and reach the quadrature tolerance everywhere. Profiles
/// given by plain closures lose precision where the integrand is
/// pole-singular (the samples nearest `j = 0` are good to about 1e-6,
/// limited by evaluating `u` in double precision next to the poles).
pub fn boundary_curve(p: &SurfaceProfile, n: usize) -> Result<ToricProfile> {
    boundary_curve_tol(p, n, DEFAULT_QUAD_TOL)
}

/// [`boundary_curve`] with an explicit quadrature tolerance.
pub fn boundary_curve_tol(p: &SurfaceProfile, n: usize, tol: f64) -> Result<ToricProfile> {
    if n < 16 {
        return Err(Error::Domain {
            op: "boundary_curve",
            msg: "requires at least 16 samples",
        });
    }
    let u0 = p.equator_radius();
    let equator_length = 2.0 * PI * u0;
    let meridian_length = action_i2_tol(p, 1.0, 0.0, tol)?;
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let theta = PI * i as f64 / (n - 1) as f64;
        let mut j = -u0 * theta.cos();
        if j.abs() < 1e-14 * u0 {
            j = 0.0;
        }
        let (rho1, rho2) = if i == 0 {
            (equator_length, 0.0)
        } else if i == n - 1 {
            (0.0, equator_length)
        } else {
            let iv = action_i2_tol(p, 1.0, j, tol)?;
            (iv + theta_correction(1, j), iv + theta_correction(2, j))
        };
        samples.push(ProfileSample { j, rho1, rho2 });
    }
    let source = match p.spheroid_c() {
        Some(c) => ProfileSource::Spheroid(c),
        None => ProfileSource::Sampled(String::from(p.label())),
    };
    Ok(ToricProfile {
        samples,
        equator_length,
        meridian_length,
        source,
    })
}

/// Closed-form boundary samples for a spheroid, same grid layout as
/// [`boundary_curve`] but through `rho` instead of quadrature.
pub fn spheroid_profile_samples(c: f64, n: usize) -> Result<ToricProfile> {
    if n < 16 {
        return Err(Error::Domain {
            op: "spheroid_profile_samples",
            msg: "requires at least 16 samples",
        });
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain {
            op: "spheroid_profile_samples",
            msg: "requires c > 0",
        });
    }
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let theta = PI * i as f64 / (n - 1) as f64;
        let mut j = -theta.cos();
        if j.abs() < 1e-14 {
            j = 0.0;
        }
        let (rho1, rho2) = if i == 0 {
            (2.0 * PI, 0.0)
        } else if i == n - 1 {
            (0.0, 2.0 * PI)
        } else {
            spheroid::rho(c, j)
        };
        samples.push(ProfileSample { j, rho1, rho2 });
    }
    Ok(ToricProfile {
        samples,
        equator_length: 2.0 * PI,
        meridian_length: spheroid::beta(c),
        source: ProfileSource::Spheroid(c),
    })
}

/// Sup-deviation of the `j >= 0` branch from the linear profile of a Zoll
/// sphere, `rho_1(j) = L (1 - j / u(z0))`; zero characterizes Zoll.
pub fn zoll_defect(t: &ToricProfile) -> f64 {
    let ell = t.meridian_length;
    let u0 = t.equator_length / (2.0 * PI);
    let mut worst = 0.0f64;
    for s in &t.samples {
        if s.j < 0.0 {
            continue;
        }
        let linear = ell * (1.0 - s.j / u0);
        worst = worst.max((s.rho1 - linear).abs());
    }
    worst
}

/// Discrete turn (cross product of consecutive unit edge vectors) along a
/// polyline, with edges shorter than `floor` merged away so quadrature
/// noise cannot flip the sign of a near-degenerate turn.
fn turns(points: &[(f64, f64)], floor: f64) -> Vec<f64> {
    let mut kept = Vec::with_capacity(points.len());
    kept.push(points[0]);
    for &p in &points[1..] {
        let last = *kept.last().unwrap();
        if ((p.0 - last.0).powi(2) + (p.1 - last.1).powi(2)).sqrt() >= floor {
            kept.push(p);
        }
    }
    let mut out = Vec::new();
    for w in kept.windows(3) {
        let (ax, ay) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let (bx, by) = (w[2].0 - w[1].0, w[2].1 - w[1].1);
        let na = (ax * ax + ay * ay).sqrt();
        let nb = (bx * bx + by * by).sqrt();
        out.push((ax * by - ay * bx) / (na * nb));
    }
    out
}

const CURVATURE_TOL: f64 = 1e-7;

/// Classifies the moment image from the sampled boundary.
///
/// Weakly convex means the closed polygon (curve plus the two axis
/// segments through the origin) turns consistently counterclockwise;
/// concave means the curve alone is the graph of a convex function over
/// the first coordinate. Branch curvature of mixed sign (beyond the
/// noise tolerance) is reported as indeterminate.
pub fn classify(t: &ToricProfile) -> Result<Classification> {
    let scale = t.equator_length.max(t.meridian_length);
    let floor = 1e-3 * scale;
    let curve: Vec<(f64, f64)> = t.samples.iter().map(|s| (s.rho1, s.rho2)).collect();
    let n = curve.len();

    // closed region: curve, then down the rho2-axis to the origin and back
    let mut closed = curve.clone();
    closed.push((0.0, 0.0));
    closed.push(curve[0]);
    closed.push(curve[1]);
    let region_turns = turns(&closed, floor);
    if region_turns.iter().all(|&x| x >= -CURVATURE_TOL) {
        return Ok(Classification::WeaklyConvex);
    }

    // branch curvature, junction excluded: split at j = 0
    let split = t.samples.iter().position(|s| s.j >= 0.0).unwrap_or(n / 2);
    let neg = &curve[..split.min(n)];
    let pos = &curve[split.min(n)..];
    let mut branch = Vec::new();
    if neg.len() >= 3 {
        branch.extend(turns(neg, floor));
    }
    if pos.len() >= 3 {
        branch.extend(turns(pos, floor));
    }
    let has_pos = branch.iter().any(|&x| x > CURVATURE_TOL);
    let has_neg = branch.iter().any(|&x| x < -CURVATURE_TOL);
    if has_pos && has_neg {
        return Err(Error::Indeterminate(
            "discrete curvature changes sign within a branch",
        ));
    }

    // concave requires the whole curve (junction included) to turn
    // clockwise and the first coordinate to be monotone
    let curve_turns = turns(&curve, floor);
    let monotone_x = curve
        .windows(2)
        .all(|w| w[1].0 <= w[0].0 + floor * 1e-6);
    if monotone_x && curve_turns.iter().all(|&x| x <= CURVATURE_TOL) {
        return Ok(Classification::Concave);
    }
    Ok(Classification::Neither)
}

/// Largest `m` such that the open triangle `{x + y < m}` sits inside the
/// region: the minimum of `rho_1 + rho_2` over the boundary.
///
/// The sample minimum is refined by golden-section on the closed form when
/// the profile is a spheroid, otherwise by a parabola through the three
/// nearest samples.
pub fn max_inscribed_triangle(t: &ToricProfile) -> f64 {
    let sums: Vec<f64> = t.samples.iter().map(|s| s.rho1 + s.rho2).collect();
    let mut best = 0usize;
    for (i, &v) in sums.iter().enumerate() {
        if v < sums[best] {
            best = i;
        }
    }
    if best == 0 || best == sums.len() - 1 {
        return sums[best];
    }
    if let ProfileSource::Spheroid(c) = t.source {
        let lo = t.samples[best - 1].j.abs().min(t.samples[best + 1].j.abs());
        let hi = t.samples[best - 1].j.abs().max(t.samples[best + 1].j.abs());
        let f = |j: f64| {
            let (x, y) = spheroid::rho(c, j);
            x + y
        };
        let (_, v) = golden_min(f, lo.min(hi), hi.max(lo), 1e-12);
        return v.min(sums[best]);
    }
    // parabolic refinement through the neighbors of the best sample
    let (f0, f1, f2) = (sums[best - 1], sums[best], sums[best + 1]);
    let denom = f0 - 2.0 * f1 + f2;
    if denom > 0.0 {
        let delta = 0.5 * (f0 - f2) / denom;
        if delta.abs() <= 1.0 {
            return f1 - 0.25 * (f0 - f2) * delta;
        }
    }
    f1
}

/// Area of the region enclosed by the axes and the sampled boundary, by
/// trapezoidal (shoelace) integration of the closed polygon.
pub fn profile_area(t: &ToricProfile) -> f64 {
    let mut twice = 0.0;
    let mut push = |a: (f64, f64), b: (f64, f64)| {
        twice += a.0 * b.1 - b.0 * a.1;
    };
    for w in t.samples.windows(2) {
        push((w[0].rho1, w[0].rho2), (w[1].rho1, w[1].rho2));
    }
    let last = t.samples.last().unwrap();
    let first = t.samples.first().unwrap();
    push((last.rho1, last.rho2), (0.0, 0.0));
    push((0.0, 0.0), (first.rho1, first.rho2));
    0.5 * twice.abs()
}

/// Closed-form surface area of the spheroid with equator radius 1 and
/// polar half-height `c` (oblate: `2 pi (1 + c^2 atanh(e)/e)` with
/// `e^2 = 1 - c^2`; prolate: `2 pi (1 + c asin(e)/e)` with
/// `e^2 = 1 - 1/c^2`).
pub fn spheroid_surface_area(c: f64) -> f64 {
    assert!(c > 0.0, "spheroid_surface_area: requires c > 0");
    if (c - 1.0).abs() < 1e-12 {
        return 4.0 * PI;
    }
    if c < 1.0 {
        let e = (1.0 - c * c).sqrt();
        2.0 * PI * (1.0 + c * c * e.atanh() / e)
    } else {
        let e = (1.0 - 1.0 / (c * c)).sqrt();
        2.0 * PI * (1.0 + c * e.asin() / e)
    }
}

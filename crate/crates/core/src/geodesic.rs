//! Cogeodesic flow on a sphere of revolution, used as an independent
//! dynamical oracle for the action-profile machinery.
//!
//! In cotangent coordinates `(z, theta, p_z, p_theta)` the energy and
//! angular momentum are
//!
//! ```text
//! H = p_z^2 / (u'(z)^2 + 1) + p_theta^2 / u(z)^2,     J = p_theta,
//! ```
//!
//! both conserved along the flow. Trajectories are integrated with a
//! fixed-step classical Runge-Kutta scheme (4th order, so invariant drift
//! shrinks by 16 per step halving); geodesics through the poles
//! (`p_theta = 0`) are measured by quadrature instead, the chart being
//! singular there.

use crate::error::{Error, Result};
use crate::numerics::quad::{integrate_de, DEFAULT_QUAD_TOL};
use crate::spheroid;
use crate::surface::{turning_points, SurfaceProfile};
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // shadowed by the inherent f64 methods under cfg(test)
use num_traits::Float;

/// A point of phase space. `theta` is stored unwrapped (accumulated), so
/// winding counts can be read off directly; reduce mod `2 pi` as needed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub z: f64,
    pub theta: f64,
    pub p_z: f64,
    pub p_theta: f64,
}

/// A time-stamped trajectory with its accumulated geodesic arc length
/// (`∫ 2 sqrt(H) dt`, the flow of `H = |p|^2` moving at speed `2 |p|`).
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub states: Vec<(f64, PhaseState)>,
    pub dt: f64,
    pub length: f64,
}

const POLE_RADIUS: f64 = 1e-6;

/// Energy `H(z, theta, p_z, p_theta)`; errors at the poles where the
/// chart degenerates.
pub fn hamiltonian(p: &SurfaceProfile, s: &PhaseState) -> Result<f64> {
    let u = p.u(s.z);
    if !(s.z > p.pole_south() && s.z < p.pole_north()) || u <= 0.0 {
        return Err(Error::PoleApproach { z: s.z });
    }
    let du = p.du(s.z);
    Ok(s.p_z * s.p_z / (du * du + 1.0) + s.p_theta * s.p_theta / (u * u))
}

/// Angular momentum `J = p_theta`.
pub fn angular_momentum(s: &PhaseState) -> f64 {
    s.p_theta
}

fn derivs(p: &SurfaceProfile, s: &PhaseState) -> [f64; 4] {
    let u = p.u(s.z);
    let du = p.du(s.z);
    let d2u = p.d2u(s.z);
    let a = du * du + 1.0;
    [
        2.0 * s.p_z / a,
        2.0 * s.p_theta / (u * u),
        2.0 * s.p_z * s.p_z * du * d2u / (a * a) + 2.0 * s.p_theta * s.p_theta * du / (u * u * u),
        0.0,
    ]
}

fn rk4_step(p: &SurfaceProfile, s: &PhaseState, dt: f64) -> PhaseState {
    let add = |s: &PhaseState, k: &[f64; 4], f: f64| PhaseState {
        z: s.z + f * k[0],
        theta: s.theta + f * k[1],
        p_z: s.p_z + f * k[2],
        p_theta: s.p_theta + f * k[3],
    };
    let k1 = derivs(p, s);
    let k2 = derivs(p, &add(s, &k1, dt / 2.0));
    let k3 = derivs(p, &add(s, &k2, dt / 2.0));
    let k4 = derivs(p, &add(s, &k3, dt));
    PhaseState {
        z: s.z + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        theta: s.theta + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        p_z: s.p_z + dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        p_theta: s.p_theta,
    }
}

/// Integrates Hamilton's equations from `s0` up to `t_max` with fixed step
/// `dt`, recording every step. Aborts if the trajectory approaches a pole
/// (`u < 1e-6`), which can only happen when `p_theta = 0`.
pub fn flow(p: &SurfaceProfile, s0: &PhaseState, t_max: f64, dt: f64) -> Result<Trajectory> {
    let h0 = hamiltonian(p, s0)?;
    if !(h0 > 0.0 && h0 <= 1.0 + 1e-12) {
        return Err(Error::Domain {
            op: "flow",
            msg: "initial energy must lie in (0, 1]",
        });
    }
    if !(dt > 0.0 && t_max > 0.0) {
        return Err(Error::Domain {
            op: "flow",
            msg: "requires dt > 0 and t_max > 0",
        });
    }
    let steps = (t_max / dt).ceil() as usize;
    let mut states = Vec::with_capacity(steps + 1);
    let mut s = *s0;
    let mut t = 0.0;
    let mut length = 0.0;
    let mut speed_prev = 2.0 * h0.sqrt();
    states.push((t, s));
    for _ in 0..steps {
        s = rk4_step(p, &s, dt);
        t += dt;
        if p.u(s.z) < POLE_RADIUS {
            return Err(Error::PoleApproach { z: s.z });
        }
        let h = hamiltonian(p, &s)?;
        let speed = 2.0 * h.sqrt();
        length += 0.5 * (speed + speed_prev) * dt;
        speed_prev = speed;
        states.push((t, s));
    }
    Ok(Trajectory { states, dt, length })
}

/// Largest deviations `(max |H - H(0)|, max |J - J(0)|)` along a
/// trajectory.
pub fn invariant_drift(p: &SurfaceProfile, tr: &Trajectory) -> Result<(f64, f64)> {
    let (_, s0) = tr.states[0];
    let h0 = hamiltonian(p, &s0)?;
    let j0 = s0.p_theta;
    let mut dh = 0.0f64;
    let mut dj = 0.0f64;
    for (_, s) in &tr.states {
        dh = dh.max((hamiltonian(p, s)? - h0).abs());
        dj = dj.max((s.p_theta - j0).abs());
    }
    Ok((dh, dj))
}

/// Meridian length `2 ∫_a^b sqrt(1 + u'(z)^2) dz` by singular quadrature
/// (the pole chart makes the ODE unusable for `p_theta = 0`).
pub fn meridian_length(p: &SurfaceProfile) -> Result<f64> {
    meridian_length_tol(p, DEFAULT_QUAD_TOL)
}

/// [`meridian_length`] with an explicit quadrature tolerance.
pub fn meridian_length_tol(p: &SurfaceProfile, tol: f64) -> Result<f64> {
    if let Some(c) = p.spheroid_c() {
        // sqrt(1 + u'^2) = sqrt(c^4 - (c^2-1) z^2) / (c sqrt((c-z)(c+z)))
        let c2 = c * c;
        let f = move |z: f64, da: f64, db: f64| {
            let poly = c2 * c2 - (c2 - 1.0) * z * z;
            (poly / (da * db)).sqrt() / c
        };
        return Ok(2.0 * integrate_de(f, -c, c, tol)?);
    }
    let f = |z: f64, _: f64, _: f64| {
        // nodes that have rounded onto a pole contribute nothing
        if !(p.u(z) > 0.0) {
            return 0.0;
        }
        let du = p.du(z);
        let v = (1.0 + du * du).sqrt();
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    Ok(2.0 * integrate_de(f, p.pole_south(), p.pole_north(), tol)?)
}

/// Angular advance between consecutive equator crossings of the unit-speed
/// geodesic with angular momentum `j` (one traverse between the turning
/// points):
///
/// ```text
/// ∫_{z_-}^{z_+} j sqrt(1 + u'^2) / (u^2 sqrt(1 - j^2/u^2)) dz,
/// ```
///
/// `pi` for every geodesic of the round sphere.
pub fn first_return_angle(p: &SurfaceProfile, j: f64) -> Result<f64> {
    let u0 = p.equator_radius();
    let ja = j.abs();
    if !(ja > 0.0 && ja < u0) {
        return Err(Error::Domain {
            op: "first_return_angle",
            msg: "requires 0 < |j| < u(z0)",
        });
    }
    let tp = turning_points(p, 1.0, ja)?;
    let v = if let Some(c) = p.spheroid_c() {
        // j c sqrt(c^4 - (c^2-1) z^2) / ((c^2 - z^2) sqrt((z_+ - z)(z - z_-)))
        let c2 = c * c;
        let gap = c * ja * ja / (1.0 + (1.0 - ja * ja).sqrt());
        let f = move |z: f64, da: f64, db: f64| {
            let poly = c2 * c2 - (c2 - 1.0) * z * z;
            let hi = gap + db;
            let lo = gap + da;
            ja * c * poly.sqrt() / (hi * lo * (da * db).sqrt())
        };
        integrate_de(f, tp.z_minus, tp.z_plus, DEFAULT_QUAD_TOL)?
    } else {
        let f = |z: f64, _: f64, _: f64| {
            let u = p.u(z);
            let du = p.du(z);
            let radicand = (1.0 - ja * ja / (u * u)).max(0.0);
            if radicand == 0.0 {
                return 0.0;
            }
            let v = ja * (1.0 + du * du).sqrt() / (u * u * radicand.sqrt());
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        integrate_de(f, tp.z_minus, tp.z_plus, DEFAULT_QUAD_TOL)?
    };
    Ok(v)
}

/// Result of shooting the short closed geodesic of an oblate spheroid.
#[derive(Debug, Clone, Copy)]
pub struct AlphaGeodesic {
    /// Arc length of the closed orbit.
    pub length: f64,
    /// Transverse equator crossings over one period (expected: 4).
    pub equator_crossings: usize,
    /// Phase-space distance between the endpoints after closure.
    pub closure_gap: f64,
}

/// Integrates the simple closed geodesic of length `alpha(c)` on the
/// oblate spheroid with `0 < c < 1/2`.
///
/// Launches the unit-speed geodesic with `p_theta = j0(c)` from its upper
/// turning point and follows two radial oscillations, after which `theta`
/// has advanced by `2 pi` (the boundary tangent of slope -1 pairs one
/// rotation with two oscillations). The momentum is then refined by a
/// secant iteration on the residual `theta(T) - 2 pi` and the run is
/// rejected if the closure gap stays above 1e-4.
pub fn closed_geodesic_alpha(c: f64) -> Result<AlphaGeodesic> {
    if !(c > 0.0 && c < 0.5) {
        return Err(Error::Domain {
            op: "closed_geodesic_alpha",
            msg: "the four-crossing geodesic exists only for 0 < c < 1/2",
        });
    }
    let p = SurfaceProfile::spheroid(c)?;
    let mut j = spheroid::j0(c)?;
    let dt = 1e-4;

    let shoot = |j: f64| -> Result<(f64, f64, usize, f64)> {
        // returns (theta residual, arc length, crossings, |z - z_+| at closure)
        let z_plus = c * (1.0 - j * j).sqrt();
        let s0 = PhaseState {
            z: z_plus,
            theta: 0.0,
            p_z: 0.0,
            p_theta: j,
        };
        let mut s = s0;
        let mut length = 0.0;
        let mut crossings = 0usize;
        let mut returns = 0usize;
        let max_steps = (200.0 / dt) as usize;
        for step in 0..max_steps {
            let prev = s;
            s = rk4_step(&p, &s, dt);
            let h = hamiltonian(&p, &s)?;
            length += 2.0 * h.sqrt() * dt;
            if prev.z > 0.0 && s.z <= 0.0 || prev.z < 0.0 && s.z >= 0.0 {
                crossings += 1;
            }
            // a visit to the upper turning point is a downward zero of p_z
            if step > 0 && prev.p_z > 0.0 && s.p_z <= 0.0 {
                returns += 1;
                if returns == 2 {
                    // linear interpolation to the event
                    let frac = prev.p_z / (prev.p_z - s.p_z);
                    let theta_end = prev.theta + frac * (s.theta - prev.theta);
                    let z_end = prev.z + frac * (s.z - prev.z);
                    let overshoot = (1.0 - frac) * dt;
                    let h_end = hamiltonian(&p, &s)?;
                    let len = length - 2.0 * h_end.sqrt() * overshoot;
                    return Ok((
                        theta_end - 2.0 * PI,
                        len,
                        crossings,
                        (z_end - z_plus).abs(),
                    ));
                }
            }
        }
        Err(Error::NonClosure { gap: f64::INFINITY })
    };

    let (mut resid, mut length, mut crossings, mut z_gap) = shoot(j)?;
    if resid.abs() > 1e-9 {
        // one secant pass: d(theta residual)/dj = -2 g''(j) to leading order
        let jb = j + 1e-6;
        let (resid_b, ..) = shoot(jb)?;
        let slope = (resid_b - resid) / (jb - j);
        if slope.abs() > 1e-9 {
            let refined = j - resid / slope;
            if refined > 0.0 && refined < 1.0 {
                let (r2, l2, c2, zg2) = shoot(refined)?;
                if r2.abs() < resid.abs() {
                    j = refined;
                    resid = r2;
                    length = l2;
                    crossings = c2;
                    z_gap = zg2;
                }
            }
        }
    }
    let _ = j;
    let gap = (resid * resid + z_gap * z_gap).sqrt();
    if gap > 1e-4 {
        return Err(Error::NonClosure { gap });
    }
    Ok(AlphaGeodesic {
        length,
        equator_crossings: crossings,
        closure_gap: gap,
    })
}

//! Spheres of revolution described by a radial profile.
//!
//! A surface `{(u(z) cos θ, u(z) sin θ, z)}` with `u(a) = u(b) = 0`,
//! `u > 0` in between and a single interior critical point `z0` (the
//! equator). Spheroids `x^2 + y^2 + z^2/c^2 = 1` carry `u(z) =
//! sqrt(1 - z^2/c^2)` and get closed-form turning points; arbitrary
//! profiles fall back to the bracketed root finder.

use crate::error::{Error, Result};
use crate::numerics::{find_root, DEFAULT_ROOT_TOL};
use alloc::boxed::Box;
use alloc::string::String;
#[allow(unused_imports)] // shadowed by the inherent f64 methods under cfg(test)
use num_traits::Float;

type ProfileFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

enum Kind {
    Spheroid { c: f64 },
    Custom { u: ProfileFn, du: ProfileFn, d2u: ProfileFn },
}

/// An immutable sphere-of-revolution profile.
///
/// Derivatives are supplied analytically, never differenced numerically:
/// the action integrands involve `u'` explicitly and must stay accurate
/// near the poles where `u'` blows up. The second derivative is carried as
/// well because Hamilton's equations for the cogeodesic flow need it.
pub struct SurfaceProfile {
    kind: Kind,
    a: f64,
    b: f64,
    z0: f64,
    u_max: f64,
    label: String,
}

impl SurfaceProfile {
    /// The spheroid with equator radius 1 and polar half-height `c`.
    pub fn spheroid(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::Domain {
                op: "spheroid",
                msg: "requires c > 0",
            });
        }
        let label = if c == 1.0 {
            String::from("round sphere")
        } else {
            String::from("spheroid")
        };
        Ok(SurfaceProfile {
            kind: Kind::Spheroid { c },
            a: -c,
            b: c,
            z0: 0.0,
            u_max: 1.0,
            label,
        })
    }

    /// A profile given by closures for `u`, `u'` and `u''`.
    ///
    /// Validates `u(a) = u(b) = 0`, positivity inside, and a single sign
    /// change of `u'` (profiles with more than one equator are rejected).
    pub fn custom(
        label: &str,
        a: f64,
        b: f64,
        u: impl Fn(f64) -> f64 + Send + Sync + 'static,
        du: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2u: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(a < b) {
            return Err(Error::Domain {
                op: "custom profile",
                msg: "requires a < b",
            });
        }
        let scale = (b - a).max(1.0);
        if u(a).abs() > 1e-9 * scale || u(b).abs() > 1e-9 * scale {
            return Err(Error::Domain {
                op: "custom profile",
                msg: "u must vanish at both poles",
            });
        }
        // Sample the derivative; exactly one + -> - sign change is allowed.
        let n = 512;
        let h = (b - a) / (n + 1) as f64;
        let mut sign_changes = 0usize;
        let mut bracket = (a, b);
        let mut prev = du(a + h);
        if !(prev > 0.0) {
            return Err(Error::Domain {
                op: "custom profile",
                msg: "u' must be positive near the south pole",
            });
        }
        for i in 2..=n {
            let z = a + i as f64 * h;
            let v = du(z);
            if u(z) <= 0.0 {
                return Err(Error::Domain {
                    op: "custom profile",
                    msg: "u must be positive between the poles",
                });
            }
            if prev > 0.0 && v < 0.0 {
                sign_changes += 1;
                bracket = (z - h, z);
            } else if prev < 0.0 && v > 0.0 {
                sign_changes += 1;
            }
            if v != 0.0 {
                prev = v;
            }
        }
        if sign_changes != 1 {
            return Err(Error::Domain {
                op: "custom profile",
                msg: "profile must have exactly one equator",
            });
        }
        let z0 = find_root(&du, bracket.0, bracket.1, DEFAULT_ROOT_TOL)?;
        let u_max = u(z0);
        Ok(SurfaceProfile {
            kind: Kind::Custom {
                u: Box::new(u),
                du: Box::new(du),
                d2u: Box::new(d2u),
            },
            a,
            b,
            z0,
            u_max,
            label: String::from(label),
        })
    }

    /// Radius `u(z)`.
    pub fn u(&self, z: f64) -> f64 {
        match &self.kind {
            Kind::Spheroid { c } => (1.0 - (z / c) * (z / c)).max(0.0).sqrt(),
            Kind::Custom { u, .. } => u(z),
        }
    }

    /// Derivative `u'(z)`; diverges at the poles.
    pub fn du(&self, z: f64) -> f64 {
        match &self.kind {
            Kind::Spheroid { c } => {
                let u = self.u(z);
                -z / (c * c * u)
            }
            Kind::Custom { du, .. } => du(z),
        }
    }

    /// Second derivative `u''(z)`; for spheroids `u'' = -1/(c^2 u^3)`.
    pub fn d2u(&self, z: f64) -> f64 {
        match &self.kind {
            Kind::Spheroid { c } => {
                let u = self.u(z);
                -1.0 / (c * c * u * u * u)
            }
            Kind::Custom { d2u, .. } => d2u(z),
        }
    }

    /// South pole height.
    pub fn pole_south(&self) -> f64 {
        self.a
    }

    /// North pole height.
    pub fn pole_north(&self) -> f64 {
        self.b
    }

    /// Equator height (the unique critical point of `u`).
    pub fn z0(&self) -> f64 {
        self.z0
    }

    /// Equator radius `u(z0) = max u`.
    pub fn equator_radius(&self) -> f64 {
        self.u_max
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The spheroid parameter, when this profile is one.
    pub fn spheroid_c(&self) -> Option<f64> {
        match self.kind {
            Kind::Spheroid { c } => Some(c),
            Kind::Custom { .. } => None,
        }
    }
}

/// The two turning points of the radial motion at energy `h` and angular
/// momentum `j`: the solutions of `u(z)^2 h = j^2` bracketing the equator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPair {
    pub z_minus: f64,
    pub z_plus: f64,
}

/// Solves `u(z)^2 h = j^2` on either side of the equator.
///
/// Requires `0 < h <= 1` and `|j| <= u(z0) sqrt(h)`; at equality the pair
/// degenerates to the equator itself.
pub fn turning_points(p: &SurfaceProfile, h: f64, j: f64) -> Result<TurningPair> {
    if !(h > 0.0 && h <= 1.0) {
        return Err(Error::Domain {
            op: "turning_points",
            msg: "requires 0 < h <= 1",
        });
    }
    let j_max = p.equator_radius() * h.sqrt();
    let ja = j.abs();
    if ja > j_max * (1.0 + 1e-14) {
        return Err(Error::Domain {
            op: "turning_points",
            msg: "requires |j| <= u(z0) sqrt(h)",
        });
    }
    if ja >= j_max {
        return Ok(TurningPair {
            z_minus: p.z0(),
            z_plus: p.z0(),
        });
    }
    if let Some(c) = p.spheroid_c() {
        let zt = c * (1.0 - (ja * ja) / h).sqrt();
        return Ok(TurningPair {
            z_minus: -zt,
            z_plus: zt,
        });
    }
    let f = |z: f64| p.u(z) * p.u(z) * h - ja * ja;
    let z_minus = if ja == 0.0 {
        p.pole_south()
    } else {
        find_root(f, p.pole_south(), p.z0(), DEFAULT_ROOT_TOL)?
    };
    let z_plus = if ja == 0.0 {
        p.pole_north()
    } else {
        find_root(f, p.z0(), p.pole_north(), DEFAULT_ROOT_TOL)?
    };
    Ok(TurningPair { z_minus, z_plus })
}

//! Closed-form layer for spheroids.
//!
//! For the spheroid with equator radius 1 and polar half-height `c`, the
//! boundary of the toric moment image is parametrized on the `j >= 0`
//! branch by `(g_c(j), g_c(j) + 2 pi j)`, where
//!
//! ```text
//! g_c(j) = -4 j^2 c K(k_c(j)) + 4 c E(k_c(j))
//!          + (4 j^2 / c) Pi((c^2-1)/c^2, k_c(j)) - 2 pi j,
//! k_c(j) = (c^2 - 1)(1 - j^2) / c^2.
//! ```
//!
//! This form of `g_c` stays regular at both `j = 0` and `j = 1`; the naive
//! reduction of the underlying action integral produces `Pi(1 - j^2, .)`,
//! whose characteristic degenerates as `j -> 0`. The direct integral
//! [`g_quad`] is kept as an independent quadrature oracle.
//!
//! From `g_c` come the meridian length `beta(c) = 4 E(1 - c^2)`, the
//! critical angular momentum `j0(c)` where the boundary has a supporting
//! line of slope -1, the short simple geodesic length `alpha(c)`, the
//! crossover parameter `c0` with `beta(c0) = 4 pi`, and the Gromov width
//!
//! ```text
//! w(c) = alpha(c)  (0 < c < 1/2)   | 2 pi  (1/2 <= c <= 1)
//!      | beta(c)   (1 < c < c0)    | 4 pi  (c >= c0)
//! ```

use crate::ech;
use crate::error::{Error, Result};
use crate::numerics::elliptic::{ellip_e, ellip_k, ellip_pi};
use crate::numerics::quad::integrate_de;
use crate::numerics::root::{find_root, DEFAULT_ROOT_TOL};
use core::f64::consts::PI;
use core::sync::atomic::{AtomicU64, Ordering};
#[allow(unused_imports)] // shadowed by the inherent f64 methods under cfg(test)
use num_traits::Float;

/// Elliptic parameter `k_c(j) = (c^2 - 1)(1 - j^2) / c^2`.
///
/// Negative for oblate spheroids (`c < 1`), in `[0, 1)` for prolate ones.
pub fn k_mod(c: f64, j: f64) -> f64 {
    debug_assert!(c > 0.0);
    (c * c - 1.0) * (1.0 - j * j) / (c * c)
}

fn assert_cj(op: &'static str, c: f64, j: f64) {
    assert!(c > 0.0 && c.is_finite(), "{op}: requires c > 0");
    assert!((0.0..=1.0).contains(&j), "{op}: requires j in [0, 1]");
}

/// Boundary function `g_c(j)` of the toric image, `j` in `[0, 1]`.
pub fn g(c: f64, j: f64) -> f64 {
    assert_cj("g", c, j);
    let k = k_mod(c, j);
    let n = (c * c - 1.0) / (c * c);
    let big_k = ellip_k(k).expect("k_c(j) < 1 for c > 0");
    let big_e = ellip_e(k).expect("k_c(j) < 1 for c > 0");
    let big_pi = ellip_pi(n, k).expect("(c^2-1)/c^2 < 1 for c > 0");
    -4.0 * j * j * c * big_k + 4.0 * c * big_e + (4.0 * j * j / c) * big_pi - 2.0 * PI * j
}

/// Direct quadrature of the action integral defining `g_c(j)`:
///
/// ```text
/// g_c(j) = 4 ∫_0^{c sqrt(1-j^2)} sqrt((c^2(1-j^2) - z^2)(c^4 + (1-c^2) z^2))
///                                / (c (c^2 - z^2)) dz
/// ```
///
/// Independent oracle for [`g`]; never used on the closed-form path.
pub fn g_quad(c: f64, j: f64) -> Result<f64> {
    g_quad_tol(c, j, 1e-11)
}

/// [`g_quad`] with an explicit absolute quadrature tolerance.
pub fn g_quad_tol(c: f64, j: f64, tol: f64) -> Result<f64> {
    assert_cj("g_quad", c, j);
    if j >= 1.0 {
        return Ok(0.0);
    }
    let zt = c * (1.0 - j * j).sqrt();
    // distance from the upper integration limit to the pole z = c,
    // written to avoid cancellation as j -> 0
    let gap = c * j * j / (1.0 + (1.0 - j * j).sqrt());
    let c2 = c * c;
    let f = move |z: f64, _da: f64, db: f64| {
        // c^2(1-j^2) - z^2 = (zt - z)(zt + z) with zt - z = db exact;
        // c - z = gap + db stays exact as z -> c when j -> 0.
        let vanish = db * (zt + z);
        let poly = c2 * c2 + (1.0 - c2) * z * z;
        let denom_hi = gap + db;
        let denom_lo = c + z;
        (vanish.max(0.0) * poly).sqrt() / (c * denom_hi * denom_lo)
    };
    Ok(4.0 * integrate_de(f, 0.0, zt, tol)?)
}

/// First derivative `g_c'(j)`.
///
/// Evaluated through the reduction that replaces `Pi(1 - j^2, k)` by
/// `Pi((c^2-1)/c^2, k)`, which is regular on all of `[0, 1]` and produces
/// the exact limits `g_c'(0) = -2 pi` and `g_c'(1) = -2 pi c`.
pub fn g_d1(c: f64, j: f64) -> f64 {
    assert_cj("g_d1", c, j);
    if j == 0.0 {
        return -2.0 * PI;
    }
    let k = k_mod(c, j);
    let n = (c * c - 1.0) / (c * c);
    let big_k = ellip_k(k).expect("k_c(j) < 1 for c > 0");
    let big_pi = ellip_pi(n, k).expect("(c^2-1)/c^2 < 1 for c > 0");
    -4.0 * j * c * big_k + (4.0 * j / c) * big_pi - 2.0 * PI
}

/// Second derivative `g_c''(j) = -4c (K(k_c(j)) - E(k_c(j))) / (1 - j^2)`.
///
/// Positive for `c < 1`, negative for `c > 1`, zero for the round sphere.
/// Undefined at `j = 1`.
pub fn g_d2(c: f64, j: f64) -> Result<f64> {
    assert!(c > 0.0, "g_d2: requires c > 0");
    if !(0.0..1.0).contains(&j) {
        return Err(Error::Domain {
            op: "g_d2",
            msg: "requires j in [0, 1)",
        });
    }
    let k = k_mod(c, j);
    let big_k = ellip_k(k)?;
    let big_e = ellip_e(k)?;
    Ok(-4.0 * c / (1.0 - j * j) * (big_k - big_e))
}

/// Meridian length `beta(c) = 4 E(1 - c^2)`.
pub fn beta(c: f64) -> f64 {
    assert!(c > 0.0 && c.is_finite(), "beta: requires c > 0");
    4.0 * ellip_e(1.0 - c * c).expect("1 - c^2 < 1 for c > 0")
}

/// The angular momentum `j0(c)` in `[0, 1]` at which `g_c'(j0) = -pi`,
/// i.e. where the boundary curve is tangent to a line of slope -1.
///
/// Unique for `0 < c < 1/2` because `g_c'' > 0` there; approaches 1 as
/// `c -> 1/2` (the short geodesic collapses into the equator).
pub fn j0(c: f64) -> Result<f64> {
    if !(c > 0.0 && c < 0.5) {
        return Err(Error::Domain {
            op: "j0",
            msg: "requires 0 < c < 1/2",
        });
    }
    // g'(0) + pi = -pi < 0 and g'(1) + pi = pi (1 - 2c) > 0: [0, 1] brackets.
    find_root(|j| g_d1(c, j) + PI, 0.0, 1.0, DEFAULT_ROOT_TOL)
}

/// Length `alpha(c) = 8 c E(k_c(j0(c)))` of the simple closed geodesic that
/// crosses the equator four times; equals `2 g_c(j0) + 2 pi j0`. Exists
/// only for `0 < c < 1/2`.
pub fn alpha(c: f64) -> Result<f64> {
    let j = j0(c)?;
    Ok(8.0 * c * ellip_e(k_mod(c, j)).expect("k_c(j) < 1"))
}

/// The parameter `c0` in `(2, 3)` at which `beta(c0) = 4 pi`, cached after
/// the first computation (concurrent initializers converge to the same
/// root, so racing stores are idempotent).
pub fn c0() -> f64 {
    static C0_BITS: AtomicU64 = AtomicU64::new(0);
    let bits = C0_BITS.load(Ordering::Relaxed);
    if bits != 0 {
        return f64::from_bits(bits);
    }
    let v = find_root(|c| beta(c) - 4.0 * PI, 2.0, 3.0, DEFAULT_ROOT_TOL)
        .expect("beta(2) < 4 pi < beta(3)");
    C0_BITS.store(v.to_bits(), Ordering::Relaxed);
    v
}

/// Width regime of a spheroid parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `c < 1/2`: width is the short-geodesic length `alpha(c)`.
    OblateSteep,
    /// `1/2 <= c <= 1`: width is `2 pi`.
    Middle,
    /// `1 < c < c0`: width is the meridian length `beta(c)`.
    Prolate,
    /// `c >= c0`: width saturates at `4 pi`.
    ProlateCapped,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::OblateSteep => "oblate_steep",
            Regime::Middle => "middle",
            Regime::Prolate => "prolate",
            Regime::ProlateCapped => "prolate_capped",
        }
    }
}

impl core::fmt::Display for Regime {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Gromov width of the disk cotangent bundle over the spheroid, together
/// with the quantities entering its formula.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthReport {
    pub c: f64,
    pub regime: Regime,
    /// Present exactly in the `oblate_steep` regime.
    pub j0: Option<f64>,
    /// Present exactly in the `oblate_steep` regime.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub width: f64,
    /// First ECH capacity, `4 pi`; known for `c >= 1` only.
    pub c1: Option<f64>,
    /// Third ECH capacity, `2 width`; known for `c < c0` only.
    pub c3: Option<f64>,
}

/// The width value `w(c)` alone.
pub fn width_value(c: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain {
            op: "width",
            msg: "requires c > 0",
        });
    }
    Ok(if c < 0.5 {
        alpha(c)?
    } else if c <= 1.0 {
        2.0 * PI
    } else if c < c0() {
        beta(c)
    } else {
        4.0 * PI
    })
}

/// Full width report for a spheroid parameter.
pub fn width(c: f64) -> Result<WidthReport> {
    let w = width_value(c)?;
    let regime = if c < 0.5 {
        Regime::OblateSteep
    } else if c <= 1.0 {
        Regime::Middle
    } else if c < c0() {
        Regime::Prolate
    } else {
        Regime::ProlateCapped
    };
    let (j0_v, alpha_v) = if regime == Regime::OblateSteep {
        (Some(j0(c)?), Some(w))
    } else {
        (None, None)
    };
    let c1 = if c >= 1.0 {
        Some(ech::spheroid_capacity(c, 1)?)
    } else {
        None
    };
    let c3 = if c < c0() {
        Some(ech::spheroid_capacity(c, 3)?)
    } else {
        None
    };
    Ok(WidthReport {
        c,
        regime,
        j0: j0_v,
        alpha: alpha_v,
        beta: beta(c),
        width: w,
        c1,
        c3,
    })
}

/// Boundary parametrization of the toric image over `j` in `[-1, 1]`:
/// `(g_c(j), g_c(j) + 2 pi j)` for `j >= 0` and its reflection for `j < 0`.
pub fn rho(c: f64, j: f64) -> (f64, f64) {
    assert!(
        (-1.0..=1.0).contains(&j),
        "rho: requires j in [-1, 1]"
    );
    if j >= 0.0 {
        let gv = g(c, j);
        (gv, gv + 2.0 * PI * j)
    } else {
        let gv = g(c, -j);
        (gv - 2.0 * PI * j, gv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAU: f64 = 2.0 * PI;

    #[test]
    fn k_mod_values() {
        assert_eq!(k_mod(1.0, 0.3), 0.0);
        assert_eq!(k_mod(7.0, 1.0), 0.0);
        assert_eq!(k_mod(0.5, 0.0), -3.0);
    }

    #[test]
    fn g_round_sphere_is_linear() {
        for i in 0..=10 {
            let j = i as f64 / 10.0;
            let v = g(1.0, j);
            assert!((v - TAU * (1.0 - j)).abs() < 1e-12, "g(1,{j}) = {v}");
        }
    }

    #[test]
    fn g_vanishes_at_equator_momentum() {
        for &c in &[0.2, 0.5, 1.0, 1.7, 2.9] {
            assert!(g(c, 1.0).abs() < 1e-12, "g({c},1) = {}", g(c, 1.0));
        }
    }

    #[test]
    fn g_at_zero_is_meridian_length() {
        for &c in &[0.2, 0.5, 0.999, 1.5, 2.786] {
            let diff = g(c, 0.0) - beta(c);
            assert!(diff.abs() < 1e-12 * beta(c), "c={c}: {diff}");
        }
    }

    #[test]
    fn g_quad_reductions() {
        let v = g_quad(1.0, 0.5).unwrap();
        assert!((v - PI).abs() < 1e-11, "got {v}");
        assert_eq!(g_quad(1.7, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn g_matches_quadrature_oracle() {
        // sub-grid of the acceptance sweep
        for ci in 0..10 {
            let c = 0.2 + 2.8 * ci as f64 / 9.0;
            for ji in 0..=8 {
                let j = ji as f64 / 8.0;
                let a = g(c, j);
                let b = g_quad(c, j).unwrap();
                assert!((a - b).abs() < 1e-8, "c={c} j={j}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn derivative_boundary_values() {
        for &c in &[0.1, 0.45, 1.0, 2.0, 2.786] {
            assert!((g_d1(c, 0.0) + TAU).abs() < 1e-10, "c={c}");
            assert!((g_d1(c, 1.0) + TAU * c).abs() < 1e-10, "c={c}");
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for &(c, j) in &[(0.4, 0.5), (0.8, 0.3), (1.3, 0.6), (2.5, 0.4)] {
            let fd1 = (g(c, j + h) - g(c, j - h)) / (2.0 * h);
            let d1 = g_d1(c, j);
            assert!(
                (fd1 - d1).abs() <= 1e-6 * d1.abs(),
                "g' at ({c},{j}): {d1} vs fd {fd1}"
            );
            let fd2 = (g_d1(c, j + h) - g_d1(c, j - h)) / (2.0 * h);
            let d2 = g_d2(c, j).unwrap();
            assert!(
                (fd2 - d2).abs() <= 1e-6 * d2.abs().max(1.0),
                "g'' at ({c},{j}): {d2} vs fd {fd2}"
            );
        }
    }

    #[test]
    fn g_d2_sign_laws() {
        for ji in 1..10 {
            let j = ji as f64 / 10.0;
            for &c in &[0.2, 0.6, 0.95] {
                assert!(g_d2(c, j).unwrap() > 0.0, "c={c} j={j}");
            }
            for &c in &[1.05, 1.8, 2.9] {
                assert!(g_d2(c, j).unwrap() < 0.0, "c={c} j={j}");
            }
        }
        assert!(g_d2(0.7, 1.0).is_err());
    }

    #[test]
    fn g_monotone_in_c() {
        for ji in 0..10 {
            let j = ji as f64 / 10.0;
            let mut prev = g(0.2, j);
            for ci in 1..=12 {
                let c = 0.2 + ci as f64 * 0.3;
                let v = g(c, j);
                assert!(v > prev, "g not increasing in c at j={j}, c={c}");
                prev = v;
            }
        }
    }

    #[test]
    fn j0_defining_equation() {
        for &c in &[0.1, 0.3, 0.45] {
            let j = j0(c).unwrap();
            assert!((g_d1(c, j) + PI).abs() < 1e-10, "c={c}");
        }
        assert!(j0(0.5).is_err());
        assert!(j0(0.7).is_err());
    }

    #[test]
    fn j0_recast_equation() {
        // -j c K(k_c(j)) + (j/c) Pi((c^2-1)/c^2, k_c(j)) = pi/4 at j = j0(c)
        for &c in &[0.1, 0.3, 0.45] {
            let j = j0(c).unwrap();
            let k = k_mod(c, j);
            let lhs = -j * c * ellip_k(k).unwrap()
                + (j / c) * ellip_pi((c * c - 1.0) / (c * c), k).unwrap();
            assert!((lhs - PI / 4.0).abs() < 1e-9, "c={c}: lhs = {lhs}");
        }
    }

    #[test]
    fn j0_unique_sign_change() {
        // dense-grid oracle: g'(j) + pi changes sign exactly once on [0,1]
        let c = 0.25;
        let mut changes = 0;
        let mut prev = g_d1(c, 0.0) + PI;
        for i in 1..=400 {
            let v = g_d1(c, i as f64 / 400.0) + PI;
            if prev < 0.0 && v >= 0.0 || prev > 0.0 && v <= 0.0 {
                changes += 1;
            }
            prev = v;
        }
        assert_eq!(changes, 1);
        let j = j0(c).unwrap();
        assert!((j - 0.7797809029817285).abs() < 1e-9, "j0(0.25) = {j}");
    }

    #[test]
    fn alpha_identity_and_limit() {
        // alpha(c) = 2 g_c(j0) + 2 pi j0 (supporting-line identity)
        for &c in &[0.1, 0.25, 0.3, 0.45] {
            let a = alpha(c).unwrap();
            let j = j0(c).unwrap();
            let ident = 2.0 * g(c, j) + TAU * j;
            assert!((a - ident).abs() < 1e-10, "c={c}: {a} vs {ident}");
        }
        assert!((alpha(0.3).unwrap() - 6.067064143291122).abs() < 1e-9);
        // alpha -> 2 pi as c -> 1/2 from below
        assert!((alpha(0.4999).unwrap() - TAU).abs() < 1e-3);
        assert!(alpha(0.5).is_err());
    }

    #[test]
    fn tangent_slope_at_j0() {
        // (g' + 2 pi)/g' = -1 at j0: the supporting line has slope -1
        for &c in &[0.2, 0.35, 0.45] {
            let j = j0(c).unwrap();
            let d = g_d1(c, j);
            assert!(((d + TAU) / d + 1.0).abs() < 1e-9, "c={c}");
        }
    }

    #[test]
    fn beta_values() {
        assert!((beta(1.0) - TAU).abs() < 1e-12);
        assert!(beta(0.5) < TAU);
        // beta(0.5) = 4 E(3/4), against the quadrature oracle
        let oracle = 4.0
            * integrate_de(
                |t: f64, _, _| (1.0 - 0.75 * t.sin().powi(2)).sqrt(),
                0.0,
                PI / 2.0,
                1e-13,
            )
            .unwrap();
        assert!((beta(0.5) - oracle).abs() < 1e-12);
    }

    #[test]
    fn c0_bracket_and_residual() {
        let v = c0();
        assert!(v > 2.0 && v < 3.0, "c0 = {v}");
        assert!((beta(v) - 4.0 * PI).abs() < 1e-10);
        assert!((v - 2.786219856841787).abs() < 1e-10);
        // stable under tolerance refinement
        let refined = find_root(|c| beta(c) - 4.0 * PI, 2.0, 3.0, 1e-9).unwrap();
        let refined12 = find_root(|c| beta(c) - 4.0 * PI, 2.0, 3.0, 1e-12).unwrap();
        assert!((refined - refined12).abs() < 1e-9);
        assert!((v - refined12).abs() < 1e-12);
    }

    #[test]
    fn extreme_oblate_chain() {
        // strongly flattened spheroid: the elliptic arguments get large
        // and negative but the chain stays well conditioned
        let c = 0.05;
        let j = j0(c).unwrap();
        assert!((g_d1(c, j) + PI).abs() < 1e-9);
        let a = alpha(c).unwrap();
        assert!(a > 0.0 && a < TAU);
        assert!((a - (2.0 * g(c, j) + TAU * j)).abs() < 1e-9);
        let w = width_value(c).unwrap();
        assert_eq!(w, a);
    }

    #[test]
    fn width_regimes() {
        assert!((width(0.75).unwrap().width - TAU).abs() < 1e-15);
        assert!((width(5.0).unwrap().width - 4.0 * PI).abs() < 1e-15);
        assert!((width(1.5).unwrap().width - beta(1.5)).abs() < 1e-15);
        assert_eq!(width(0.3).unwrap().regime, Regime::OblateSteep);
        assert_eq!(width(0.5).unwrap().regime, Regime::Middle);
        assert_eq!(width(1.0).unwrap().regime, Regime::Middle);
        assert_eq!(width(2.0).unwrap().regime, Regime::Prolate);
        assert_eq!(width(c0()).unwrap().regime, Regime::ProlateCapped);
        assert!(width(-1.0).is_err());
        assert!(width(0.0).is_err());
    }

    #[test]
    fn width_report_fields() {
        let r = width(0.3).unwrap();
        assert!(r.j0.is_some() && r.alpha.is_some());
        assert_eq!(r.c1, None);
        assert!((r.c3.unwrap() - 2.0 * r.width).abs() < 1e-15);
        let r = width(2.0).unwrap();
        assert_eq!(r.j0, None);
        assert!((r.c1.unwrap() - 4.0 * PI).abs() < 1e-15);
        assert!((r.c3.unwrap() - 2.0 * beta(2.0)).abs() < 1e-15);
        let r = width(4.0).unwrap();
        assert_eq!(r.c3, None);
        assert!((r.c1.unwrap() - 4.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn width_nondecreasing_sweep() {
        let mut prev = 0.0;
        for i in 0..200 {
            let c = 0.05 + i as f64 * (4.0 - 0.05) / 199.0;
            let w = width_value(c).unwrap();
            assert!(
                w >= prev - 1e-9,
                "width not nondecreasing at c={c}: {w} < {prev}"
            );
            prev = w;
        }
    }

    #[test]
    fn rho_endpoints_and_diagonal() {
        for &c in &[0.4, 1.0, 2.2] {
            let (x, y) = rho(c, 1.0);
            assert!(x.abs() < 1e-12 && (y - TAU).abs() < 1e-12, "c={c}");
            let (x, y) = rho(c, -1.0);
            assert!((x - TAU).abs() < 1e-12 && y.abs() < 1e-12, "c={c}");
            let (x, y) = rho(c, 0.0);
            assert!((x - beta(c)).abs() < 1e-12 && (y - beta(c)).abs() < 1e-12);
        }
        // round sphere traces the square of side 2 pi
        for i in 0..=20 {
            let j = -1.0 + i as f64 / 10.0;
            let (x, y) = rho(1.0, j);
            assert!(
                (x - TAU).abs() < 1e-11 || (y - TAU).abs() < 1e-11,
                "square corner property at j={j}: ({x},{y})"
            );
        }
    }
}

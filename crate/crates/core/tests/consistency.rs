//! Cross-module consistency: the same geometric quantities computed along
//! independent routes must agree.

use core::f64::consts::PI;
use spherocap::geodesic;
use spherocap::spheroid;
use spherocap::surface::SurfaceProfile;
use spherocap::toric;

/// The round sphere built through the generic-closure path, so nothing
/// downstream can take the spheroid shortcut.
fn round_as_custom() -> SurfaceProfile {
    SurfaceProfile::custom(
        "round (generic path)",
        -1.0,
        1.0,
        |z| (1.0 - z * z).max(0.0).sqrt(),
        |z| -z / (1.0 - z * z).sqrt(),
        |z| {
            let u2 = 1.0 - z * z;
            -1.0 / (u2 * u2.sqrt())
        },
    )
    .unwrap()
}

#[test]
fn meridian_two_routes() {
    // radial action at j = 0 versus the geodesic module's arc-length
    // quadrature, on both the closed-form and the generic path
    let p = SurfaceProfile::spheroid(1.7).unwrap();
    let via_action = toric::action_i2(&p, 1.0, 0.0).unwrap();
    let via_geodesic = geodesic::meridian_length(&p).unwrap();
    assert!(
        (via_action - via_geodesic).abs() < 1e-10,
        "{via_action} vs {via_geodesic}"
    );

    // the generic path evaluates u through a plain closure, which costs
    // accuracy where the integrand is pole-singular
    let generic = round_as_custom();
    let via_action = toric::action_i2(&generic, 1.0, 0.0).unwrap();
    let via_geodesic = geodesic::meridian_length(&generic).unwrap();
    assert!((via_action - 2.0 * PI).abs() < 1e-5, "{via_action}");
    assert!((via_geodesic - 2.0 * PI).abs() < 1e-5, "{via_geodesic}");
    assert!((via_action - via_geodesic).abs() < 1e-5);
}

#[test]
fn generic_boundary_matches_closed_form() {
    let generic = round_as_custom();
    let t = toric::boundary_curve(&generic, 65).unwrap();
    for s in &t.samples {
        let (x, y) = spheroid::rho(1.0, s.j);
        // the pole-singular samples near j = 0 carry the larger tolerance
        let tol = if s.j.abs() > 0.05 { 1e-7 } else { 5e-6 };
        assert!(
            (s.rho1 - x).abs() < tol && (s.rho2 - y).abs() < tol,
            "j = {}: ({}, {}) vs ({x}, {y})",
            s.j,
            s.rho1,
            s.rho2
        );
    }
    assert!((t.meridian_length - 2.0 * PI).abs() < 1e-5);
}

#[test]
fn profile_endpoints_reach_axes() {
    for &c in &[0.6, 1.0, 2.4] {
        let p = SurfaceProfile::spheroid(c).unwrap();
        let t = toric::boundary_curve(&p, 33).unwrap();
        let last = t.samples.last().unwrap();
        assert_eq!((last.rho1, last.rho2), (0.0, t.equator_length));
        let first = t.samples.first().unwrap();
        assert_eq!((first.rho1, first.rho2), (t.equator_length, 0.0));
    }
}

#[test]
fn alpha_geodesic_length_matches_action_identity() {
    // arc length of the shot orbit versus 2 g_c(j0) + 2 pi j0
    for &c in &[0.2, 0.3, 0.4] {
        let orbit = geodesic::closed_geodesic_alpha(c).unwrap();
        let j0 = spheroid::j0(c).unwrap();
        let expect = 2.0 * spheroid::g(c, j0) + 2.0 * PI * j0;
        assert!(
            (orbit.length - expect).abs() < 1e-5,
            "c={c}: {} vs {expect}",
            orbit.length
        );
        assert_eq!(orbit.equator_crossings, 4, "c={c}");
    }
}

#[test]
fn first_return_agrees_with_boundary_slope() {
    // the equatorial return angle is half the radial-action derivative,
    // and at j0 the supporting line has slope -1
    for &c in &[0.2, 0.35, 0.45] {
        let p = SurfaceProfile::spheroid(c).unwrap();
        let j0 = spheroid::j0(c).unwrap();
        let angle = geodesic::first_return_angle(&p, j0).unwrap();
        assert!((angle - PI / 2.0).abs() < 1e-9, "c={c}: {angle}");
        let d = spheroid::g_d1(c, j0);
        assert!(((d + 2.0 * PI) / d + 1.0).abs() < 1e-9, "c={c}");
    }
}

//! Numerical core for symplectic invariants of disk cotangent bundles of
//! spheres of revolution.
//!
//! A sphere of revolution is described by a profile `u(z)` on `[a, b]` with
//! `u(a) = u(b) = 0` and a unique equator at the interior maximum of `u`.
//! Removing the fiber over the north pole, the disk cotangent bundle is
//! symplectomorphic to a toric domain whose moment image is bounded by the
//! coordinate axes and the curve
//!
//! ```text
//! rho_i(j) = 2 ∫ sqrt((1 - j^2/u(z)^2)(1 + u'(z)^2)) dz + Theta_i(j)
//! ```
//!
//! integrated between the turning points of the radial motion. This crate
//! computes that boundary curve (by quadrature for arbitrary profiles, in
//! closed form for spheroids), classifies the resulting domain, evaluates
//! Gromov widths and ECH capacities of spheroids, builds and verifies the
//! ball packings behind the width lower bounds, and integrates the geodesic
//! flow as an independent dynamical cross-check.
//!
//! The crate is `no_std` (with `alloc`); all floating-point math goes
//! through `num_traits::Float`. IO, file formats and the command-line front
//! end live in the companion `spherocap-cli` crate.

#![no_std]
// guards of the form `!(x < y)` reject NaN along with the out-of-domain side
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod ech;
pub mod error;
pub mod geodesic;
pub mod numerics;
pub mod packing;
pub mod spheroid;
pub mod surface;
pub mod toric;

pub use error::{Error, Result};

//! Special functions and numerical kernels: complete elliptic integrals in
//! the parameter convention used throughout this crate (parameter `k < 1`,
//! possibly negative, entering as `1 - k sin^2`), double-exponential
//! quadrature robust to square-root endpoint singularities, and bracketed
//! root finding.

pub mod elliptic;
pub mod quad;
pub mod root;

pub use elliptic::{ellip_e, ellip_k, ellip_pi};
pub use quad::{integrate_de, integrate_sqrt_singular, DEFAULT_QUAD_TOL};
pub use root::{find_root, find_root_bisection, golden_min, DEFAULT_ROOT_TOL};

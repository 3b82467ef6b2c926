//! Complete elliptic integrals of the first, second and third kinds,
//!
//! ```text
//! K(k)    = ∫_0^{pi/2} dθ / sqrt(1 - k sin^2 θ)
//! E(k)    = ∫_0^{pi/2} sqrt(1 - k sin^2 θ) dθ
//! Pi(n,k) = ∫_0^{pi/2} dθ / ((1 - n sin^2 θ) sqrt(1 - k sin^2 θ))
//! ```
//!
//! Note the convention: the *parameter* `k` multiplies `sin^2 θ` directly
//! (where much of the literature would write `k^2` or `m`), and both `k`
//! and the characteristic `n` may be negative. `K` and `E` use the
//! arithmetic-geometric mean, which converges for every `k < 1`; `Pi` is
//! evaluated by the double-exponential kernel on its defining integrand,
//! one code path for all admissible `(n, k)`.

use crate::error::{Error, Result};
use crate::numerics::quad::integrate_de_rel;
#[allow(unused_imports)] // shadowed by the inherent f64 methods under cfg(test)
use num_traits::Float;

const FRAC_PI_2: f64 = core::f64::consts::FRAC_PI_2;
const AGM_EPS: f64 = 1e-17;
const REL_TOL: f64 = 1e-13;

/// Complete elliptic integral of the first kind, `k < 1`.
pub fn ellip_k(k: f64) -> Result<f64> {
    if !(k < 1.0) {
        return Err(Error::Domain {
            op: "ellip_k",
            msg: "requires k < 1",
        });
    }
    // K(k) = pi / (2 agm(1, sqrt(1 - k))).
    let mut a = 1.0f64;
    let mut b = (1.0 - k).sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= AGM_EPS * a.abs() {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
    }
    Ok(FRAC_PI_2 / a)
}

/// Complete elliptic integral of the second kind, `k <= 1`.
pub fn ellip_e(k: f64) -> Result<f64> {
    if !(k <= 1.0) {
        return Err(Error::Domain {
            op: "ellip_e",
            msg: "requires k <= 1",
        });
    }
    if k == 1.0 {
        return Ok(1.0);
    }
    // E(k) = K(k) (1 - sum_{n>=0} 2^{n-1} c_n^2), c_0^2 = k,
    // c_{n+1} = (a_n - b_n)/2 along the AGM iteration.
    let mut a = 1.0f64;
    let mut b = (1.0 - k).sqrt();
    let mut sum = 0.5 * k;
    let mut pow = 0.5f64;
    for _ in 0..64 {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
        pow *= 2.0;
        sum += pow * c * c;
        if c.abs() <= AGM_EPS * a.abs() {
            break;
        }
    }
    Ok(FRAC_PI_2 / a * (1.0 - sum))
}

/// Complete elliptic integral of the third kind, `n < 1`, `k < 1`.
pub fn ellip_pi(n: f64, k: f64) -> Result<f64> {
    if !(n < 1.0) {
        return Err(Error::Domain {
            op: "ellip_pi",
            msg: "requires n < 1",
        });
    }
    if !(k < 1.0) {
        return Err(Error::Domain {
            op: "ellip_pi",
            msg: "requires k < 1",
        });
    }
    integrate_de_rel(
        |theta: f64, _, _| {
            let s2 = theta.sin().powi(2);
            1.0 / ((1.0 - n * s2) * (1.0 - k * s2).sqrt())
        },
        0.0,
        FRAC_PI_2,
        REL_TOL,
    )
}

//! Bracketed root finding and one-dimensional minimization.

use crate::error::{Error, Result};

/// Default bracket-width tolerance.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

const MAX_ITER: usize = 200;

/// Finds a root of `f` on `[lo, hi]`, which must bracket a sign change.
///
/// Bisection interleaved with secant steps: the bracket width halves at
/// least every other iteration, and the secant step is taken only when it
/// lands strictly inside the current bracket. Returns once the bracket
/// width is at most `tol`.
pub fn find_root<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    solve(f, lo, hi, tol, true)
}

/// Bisection-only variant with the same contract as [`find_root`].
pub fn find_root_bisection<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    solve(f, lo, hi, tol, false)
}

fn solve<F>(f: F, lo: f64, hi: f64, tol: f64, secant: bool) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::Domain {
            op: "find_root",
            msg: "requires lo < hi",
        });
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Bracket { lo, hi });
    }

    for iter in 0..MAX_ITER {
        if b - a <= tol {
            break;
        }
        let mid = 0.5 * (a + b);
        let x = if secant && iter % 2 == 0 && fb != fa {
            let xs = b - fb * (b - a) / (fb - fa);
            if xs > a && xs < b {
                xs
            } else {
                mid
            }
        } else {
            mid
        };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fa * fx < 0.0 {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(x_min, f(x_min))` once the bracket width is at most `tol`.
pub fn golden_min<F>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn linear_root() {
        let x = find_root(|x| x - 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_root() {
        let x = find_root(|x: f64| x.cos(), 1.0, 2.0, 1e-13).unwrap();
        assert!((x - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn bad_bracket() {
        assert!(matches!(
            find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::Bracket { .. })
        ));
    }

    #[test]
    fn bisection_agrees_with_hybrid() {
        type Case = (fn(f64) -> f64, f64, f64);
        let cases: [Case; 3] = [
            (|x| x.cos(), 1.0, 2.0),
            (|x| x * x * x - 2.0, 0.0, 2.0),
            (|x| x.exp() - 3.0, 0.0, 2.0),
        ];
        for (f, lo, hi) in cases {
            let a = find_root(f, lo, hi, 1e-13).unwrap();
            let b = find_root_bisection(f, lo, hi, 1e-13).unwrap();
            assert!((a - b).abs() <= 2e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn golden_finds_parabola_vertex() {
        // x is sqrt(eps)-limited near a quadratic minimum; the value is not
        let (x, fx) = golden_min(|x| (x - 0.3) * (x - 0.3) + 2.0, -1.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-13);
    }
}

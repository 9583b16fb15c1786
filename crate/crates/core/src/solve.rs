//! Scalar root finding on a bracketing interval.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("root not bracketed: f({a}) = {fa}, f({b}) = {fb}")]
    NotBracketed { a: f64, b: f64, fa: f64, fb: f64 },
    #[error("function returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
}

/// Brent's method for `f(x) = 0` on `[a, b]`.
///
/// Terminates when the bracket shrinks below `rel_tol * |x| + abs_tol`
/// or `f` evaluates to exactly zero.
pub fn brent<F>(mut f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<f64, RootError>
where
    F: FnMut(f64) -> f64,
{
    const MAX_ITER: usize = 200;

    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if !fa.is_finite() {
        return Err(RootError::NonFinite { x: a });
    }
    if !fb.is_finite() {
        return Err(RootError::NonFinite { x: b });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NotBracketed { a, b, fa, fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * (rel_tol * b.abs() + abs_tol);
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, secant when only two points
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(RootError::NonFinite { x: b });
        }
    }
    Err(RootError::NoConvergence { iterations: MAX_ITER })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt2() {
        let x = brent(|x| x * x - 2.0, 0.0, 2.0, 1e-15, 0.0).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn reports_unbracketed() {
        assert!(matches!(
            brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 0.0),
            Err(RootError::NotBracketed { .. })
        ));
    }

    #[test]
    fn tiny_roots_to_relative_precision() {
        let root: f64 = 1.234e-9;
        let x = brent(|x| x.ln() - root.ln(), 1e-12, 1.0, 1e-13, 0.0).unwrap();
        assert!(((x - root) / root).abs() < 1e-12);
    }

    #[test]
    fn endpoint_root() {
        assert_eq!(brent(|x| x - 1.0, 1.0, 3.0, 1e-12, 0.0).unwrap(), 1.0);
    }
}

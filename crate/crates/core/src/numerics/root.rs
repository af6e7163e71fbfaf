use crate::error::{QsdError, Result};

/// A sign-changing interval `[lo, hi]` with the function values at its ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Checks `lo < hi` and a strict sign change.
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let ok = lo < hi && f_lo.is_finite() && f_hi.is_finite() && (f_lo * f_hi < 0.0);
        if ok {
            Ok(Bracket { lo, hi, f_lo, f_hi })
        } else {
            Err(QsdError::InvalidBracket { lo, hi, f_lo, f_hi })
        }
    }

    /// Evaluates `f` at both ends and validates.
    pub fn evaluate<F: FnMut(f64) -> f64>(lo: f64, hi: f64, mut f: F) -> Result<Self> {
        let f_lo = f(lo);
        let f_hi = f(hi);
        Bracket::new(lo, hi, f_lo, f_hi)
    }
}

/// Brent's method. Returns a point inside the bracket once the enclosing
/// interval is narrower than `tol` (or `f` hits zero exactly).
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    let Bracket { lo, hi, f_lo, f_hi } =
        Bracket::new(bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi)?;
    let tol = tol.max(0.0);
    let (mut a, mut b, mut fa, mut fb) = (lo, hi, f_lo, f_hi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..500 {
        if (fb > 0.0) == (fc > 0.0) {
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
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let m = 0.5 * (c - b);
        if fb == 0.0 || m.abs() <= tol1 {
            return Ok(b.clamp(lo, hi));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
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
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
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
        b += if d.abs() > tol1 { d } else { tol1.copysign(m) };
        fb = f(b);
    }
    Ok(b.clamp(lo, hi))
}

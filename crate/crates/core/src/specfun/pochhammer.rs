use num_complex::Complex64;

use crate::complex::is_nonpositive_integer;

/// Rising factorial `(z)_n`.
///
/// A nonpositive-integer base `-k` uses the closed form
/// `(-1)^n k! / (k - n)!` for `n <= k` and `0` beyond, so the terminating
/// case is exact.
pub fn pochhammer(z: Complex64, n: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if is_nonpositive_integer(z) {
        let k = (-z.re) as usize;
        if n > k {
            return Complex64::new(0.0, 0.0);
        }
        // k! / (k - n)! = k (k - 1) ... (k - n + 1)
        let mut falling = 1.0;
        for j in 0..n {
            falling *= (k - j) as f64;
        }
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        return Complex64::new(sign * falling, 0.0);
    }
    let mut acc = z;
    for j in 1..n {
        acc *= z + j as f64;
    }
    acc
}

pub fn pochhammer_real(x: f64, n: usize) -> f64 {
    pochhammer(Complex64::new(x, 0.0), n).re
}

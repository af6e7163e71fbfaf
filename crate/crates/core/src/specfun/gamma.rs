//! Gamma function for complex arguments of moderate size.
//!
//! Lanczos approximation (g = 607/128, 15 terms) on `Re z >= 1/2`, completed
//! by reflection on the left half-plane.

use num_complex::Complex64;

use crate::complex::is_nonpositive_integer;
use crate::error::{QsdError, Result};
use crate::math::PI;

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// `ln Γ(z)` on `Re z >= 1/2` (principal branch of the Lanczos form).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + HALF_LN_TWO_PI + series.ln()
}

fn sin_pi(z: Complex64) -> Complex64 {
    (z * PI).sin()
}

/// `Γ(z)`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(QsdError::Pole { re: z.re, im: z.im });
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z).exp())
    } else {
        // Γ(z) Γ(1 - z) = π / sin(π z)
        Ok(PI / (sin_pi(z) * ln_gamma_right(1.0 - z).exp()))
    }
}

/// `1 / Γ(z)`, entire; exactly zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        (-ln_gamma_right(z)).exp()
    } else {
        sin_pi(z) * ln_gamma_right(1.0 - z).exp() / PI
    }
}

pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

pub fn rgamma_real(x: f64) -> f64 {
    rgamma(Complex64::new(x, 0.0)).re
}

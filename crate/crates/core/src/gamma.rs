//! Complex Gamma function (Lanczos, g = 7) with reflection for Re z < 1/2.

use std::f64::consts::PI;

use num_complex::Complex64;

const G: f64 = 7.0;
const P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-branch log Gamma, valid for Re z >= 1/2.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(P[0], 0.0);
    for (i, &p) in P.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

fn nonpos_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        if nonpos_integer(z) {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        PI / ((PI * z).sin() * gamma(1.0 - z))
    } else {
        ln_gamma_right(z).exp()
    }
}

/// `1 / Gamma(z)`, which is entire; exactly zero at the poles.
pub fn rgamma(z: Complex64) -> Complex64 {
    if nonpos_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (PI * z).sin() * gamma(1.0 - z) / PI
    } else {
        (-ln_gamma_right(z)).exp()
    }
}

//! Reference answers computed from first principles, without the library's
//! phase or spectrum code.

use num_complex::Complex64;
use std::f64::consts::PI;

/// A rational `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy)]
pub struct Q {
    pub num: i64,
    pub den: i64,
}

impl Q {
    pub fn new(num: i64, den: i64) -> Self {
        Q { num, den }
    }

    pub fn is_integer(self) -> bool {
        self.num % self.den == 0
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn parity(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `R·e^{iπλ} = (−1)^{2σ}`: only possible for integer `λ`.
pub fn ssc_planar(lambda: Q, twice_sigma: i64, r: i64) -> bool {
    lambda.is_integer() && r * parity(lambda.num / lambda.den) == parity(twice_sigma)
}

/// The lattices `θ/π + λ + 2ℤ` and `2σ + 2ℤ` coincide.
pub fn lattices_coincide(theta_over_pi: i64, lambda: Q, twice_sigma: i64) -> bool {
    // θ/π + λ − 2σ ∈ 2ℤ, in units of 1/den
    let total = (theta_over_pi - twice_sigma) * lambda.den + lambda.num;
    total.rem_euclid(2 * lambda.den) == 0
}

fn unit(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, x)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-9
}

/// The planar condition triple evaluated with floating-point phases.
pub fn planar_triple(lambda: Q, twice_sigma: i64, r: i64) -> [bool; 3] {
    let kappa = unit(PI * lambda.value()) * r as f64;
    let turn = unit(PI * twice_sigma as f64);
    let diff = lambda.value() - twice_sigma as f64;
    [
        close(kappa, turn),
        (diff / 2.0 - (diff / 2.0).round()).abs() < 1e-12,
        r == 1,
    ]
}

/// The sector triples, evaluated with floating-point phases; `sector` is ±1.
pub fn sector_triple(lambda: i64, twice_sigma: i64, s: i64, sector: i64) -> [bool; 3] {
    let kappa = unit(PI * lambda as f64) * s as f64;
    let turn = unit(PI * twice_sigma as f64);
    let diff = lambda - twice_sigma;
    if sector == 1 {
        [close(kappa, turn), diff.rem_euclid(2) == 0, s * sector == 1]
    } else {
        [close(kappa, -turn), diff.rem_euclid(2) == 1, s * sector == -1]
    }
}

/// Exponents `e` of the phases `e^{iπe/q}` for `n` particles at
/// `κ = e^{iπp/q}`: relative, centre of mass, total, reduced mod `2q`.
pub fn braid_exponents(n: i64, p: i64, q: i64) -> (i64, i64, i64) {
    let m = 2 * q;
    (
        (p * n * (n - 1)).rem_euclid(m),
        (p * n).rem_euclid(m),
        (p * n * n).rem_euclid(m),
    )
}

/// Unit-circle samples sweeping `w` half turns counterclockwise.
pub fn circle_samples(start: f64, w: i64, per_half_turn: usize) -> Vec<[f64; 2]> {
    let steps = (w.unsigned_abs() as usize * per_half_turn).max(1);
    (0..=steps)
        .map(|i| {
            let a = start + PI * w as f64 * i as f64 / steps as f64;
            [a.cos(), a.sin()]
        })
        .collect()
}

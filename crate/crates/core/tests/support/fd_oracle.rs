//! Finite-difference eigensolver for `−i d/dφ` on `(−π/2, π/2)` with
//! `ψ(π/2) = e^{iθ}ψ(−π/2)`.
//!
//! Box scheme on `N` nodes: `−i(ψ_{j+1} − ψ_j)/h = μ(ψ_{j+1} + ψ_j)/2` on
//! every link, the boundary phase entering only through the last link
//! `ψ_N = e^{iθ}ψ_0`. Eigenvalues are found by shifted inverse iteration and
//! sharpened by Richardson extrapolation over `N`, `N/2`, `N/4`.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Solves `(aI + bT)y = x` where `(Ty)_j = y_{j+1}` and `y_N = e^{iθ}y_0`.
fn cyclic_solve(a: Complex64, b: Complex64, twist: Complex64, x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let mut p = vec![Complex64::new(0.0, 0.0); n];
    let mut q = vec![Complex64::new(0.0, 0.0); n];
    q[0] = Complex64::new(1.0, 0.0);
    for j in 0..n - 1 {
        p[j + 1] = (x[j] - a * p[j]) / b;
        q[j + 1] = -a * q[j] / b;
    }
    let y0 = (x[n - 1] - a * p[n - 1]) / (a * q[n - 1] + b * twist);
    (0..n).map(|j| p[j] + q[j] * y0).collect()
}

/// `(K − s)^{-1} v = (aI + bT)^{-1}(I + T)v`, `a = 2i/h − s`, `b = −2i/h − s`.
fn resolvent(h: f64, s: f64, twist: Complex64, v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    let rhs: Vec<Complex64> = (0..n)
        .map(|j| v[j] + if j + 1 < n { v[j + 1] } else { twist * v[0] })
        .collect();
    let a = Complex64::new(-s, 2.0 / h);
    let b = Complex64::new(-s, -2.0 / h);
    cyclic_solve(a, b, twist, &rhs)
}

fn dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn normalise(v: &mut [Complex64]) {
    let norm = dot(v, v).re.sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

/// Discrete eigenvalues in `[lo, hi]` on an `n`-node grid.
pub fn fd_eigenvalues(theta: f64, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let h = PI / n as f64;
    let twist = Complex64::from_polar(1.0, theta);
    let mut found: Vec<f64> = Vec::new();
    let mut shift = lo - 0.3817;
    while shift <= hi + 0.5 {
        let mut v: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new((0.37 * j as f64).sin() + 1.0, (1.3 * j as f64).cos()))
            .collect();
        normalise(&mut v);
        let mut rho = Complex64::new(0.0, 0.0);
        let mut converged = false;
        for _ in 0..40 {
            let w = resolvent(h, shift, twist, &v);
            rho = dot(&v, &w);
            let residual: f64 = w
                .iter()
                .zip(&v)
                .map(|(wi, vi)| (wi - rho * vi).norm_sqr())
                .sum::<f64>()
                .sqrt();
            v = w;
            normalise(&mut v);
            if residual <= 1e-12 * rho.norm() {
                converged = true;
                break;
            }
        }
        if converged {
            let mu = shift + (1.0 / rho).re;
            if mu >= lo && mu <= hi && !found.iter().any(|f| (f - mu).abs() < 1e-6) {
                found.push(mu);
            }
        }
        shift += 0.5;
    }
    found.sort_by(f64::total_cmp);
    found
}

fn nearest(values: &[f64], x: f64) -> f64 {
    *values
        .iter()
        .min_by(|a, b| (*a - x).abs().total_cmp(&(*b - x).abs()))
        .expect("nonempty eigenvalue list")
}

/// Richardson-extrapolated eigenvalues in `[lo, hi]` from grids
/// `n`, `n/2`, `n/4`. The leading error terms are `h²` and `h⁴`.
pub fn extrapolated_eigenvalues(theta: f64, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let fine = fd_eigenvalues(theta, n, lo, hi);
    let mid = fd_eigenvalues(theta, n / 2, lo - 1.0, hi + 1.0);
    let coarse = fd_eigenvalues(theta, n / 4, lo - 1.0, hi + 1.0);
    fine.iter()
        .map(|&f| (64.0 * f - 20.0 * nearest(&mid, f) + nearest(&coarse, f)) / 45.0)
        .collect()
}

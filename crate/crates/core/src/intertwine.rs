//! The unitaries `U_ν Ψ(r, φ) = e^{−iνφ} Ψ(r, 2φ)` from the plane to the
//! cone, their residuals, and spectral equivalence verdicts in the plane.
//!
//! The cone grid is the half-angle image of the plane grid: plane sample `j`
//! sits at `φ̃_j = 2φ_j`, so `U_ν` acts pointwise on sample vectors.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{
    format_rational, intertwiner_shift, ssc_holds, statistics_phase_2d, InvolutionSign,
    OffsetLambda, SpinLabel,
};
use crate::report::VerificationReport;
use crate::spectral2d::{
    plane_spectrum, rotate_plane, rotate_transport, total_j_spectrum, AngularDomain, AngularWaveFunction,
    Chart, ExtensionBC, SampledWaveFunction, SpectrumWindow, FLOW_TOLERANCE, SPECTRAL_TOLERANCE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerSpec {
    pub nu: i64,
    pub dimension: usize,
}

impl IntertwinerSpec {
    pub fn new(nu: i64, dimension: usize) -> Result<Self> {
        match dimension {
            2 | 3 => Ok(IntertwinerSpec { nu, dimension }),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    pub fn planar(nu: i64) -> Self {
        IntertwinerSpec { nu, dimension: 2 }
    }

    /// `(−1)^ν·R = 1`: the boundary phase picked up by `U_ν Ψ` across the
    /// cone matches the extension.
    pub fn admissible(&self, r: InvolutionSign) -> bool {
        let parity = if self.nu.rem_euclid(2) == 0 { 1 } else { -1 };
        parity * r.value() == 1
    }

    /// Cone eigenvalue reached by plane mode `m`.
    pub fn mode_image(&self, m: i64) -> i64 {
        2 * m - self.nu
    }

    fn phase_at(&self, phi: f64, sign: f64) -> Complex64 {
        Complex64::from_polar(1.0, sign * self.nu as f64 * phi)
    }

    fn require_dimension(&self, d: usize) -> Result<()> {
        if self.dimension == d {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: d, found: self.dimension })
        }
    }
}

/// `U_ν` on plane samples. The output lives on the cone chart with the same
/// number of angular samples and the same radial grid.
pub fn apply_u(spec: &IntertwinerSpec, psi: &SampledWaveFunction) -> Result<SampledWaveFunction> {
    spec.require_dimension(2)?;
    if psi.chart != Chart::Plane {
        return Err(Error::GridMismatch("U acts on plane samples".into()));
    }
    Ok(twist(spec, psi, Chart::Cone, -1.0))
}

/// `U_ν*` on cone samples.
pub fn apply_u_adjoint(spec: &IntertwinerSpec, chi: &SampledWaveFunction) -> Result<SampledWaveFunction> {
    spec.require_dimension(2)?;
    if chi.chart != Chart::Cone {
        return Err(Error::GridMismatch("U* acts on cone samples".into()));
    }
    Ok(twist(spec, chi, Chart::Plane, 1.0))
}

fn twist(spec: &IntertwinerSpec, psi: &SampledWaveFunction, target: Chart, sign: f64) -> SampledWaveFunction {
    let n = psi.n_angular;
    let phases: Vec<Complex64> = (0..n).map(|j| spec.phase_at(Chart::Cone.angle(j, n), sign)).collect();
    let values = psi
        .values
        .chunks(n)
        .flat_map(|row| row.iter().zip(&phases).map(|(v, p)| v * p))
        .collect();
    SampledWaveFunction {
        chart: target,
        n_angular: n,
        radial: psi.radial.clone(),
        values,
    }
}

/// `U_ν` on mode coefficients: plane mode `m` goes to the cone mode with
/// eigenvalue `2m − ν`.
///
/// Coefficients are taken in the `dφ`-orthonormal cone basis, so the image
/// has norm `‖Ψ‖/√2`; in the measure `2dφ` the norm is preserved.
pub fn apply_u_modes(spec: &IntertwinerSpec, psi: &AngularWaveFunction, bc: &ExtensionBC) -> Result<AngularWaveFunction> {
    spec.require_dimension(2)?;
    if psi.domain != AngularDomain::Plane {
        return Err(Error::GridMismatch("U acts on plane modes".into()));
    }
    let r = bc.require_involutive()?;
    if !spec.admissible(r) {
        return Err(Error::GridMismatch(format!(
            "ν = {} does not map plane modes onto the extension θ = {}",
            spec.nu,
            bc.theta()
        )));
    }
    let base = if r == InvolutionSign::Plus { 0 } else { 1 };
    let offset = (spec.nu + base) / 2;
    let order = psi.order() + offset.unsigned_abs() as usize;
    let mut out = AngularWaveFunction::zero(AngularDomain::Cone2D(*bc), order);
    for (m, c) in psi.modes() {
        *out.coefficient_mut(m - offset) = c / 2f64.sqrt();
    }
    Ok(out)
}

/// Largest relative deviation `|‖UΨ‖²_{2d²r} − ‖Ψ‖²| / ‖Ψ‖²`; zero states
/// are skipped.
pub fn unitarity_residual(spec: &IntertwinerSpec, tests: &[SampledWaveFunction]) -> Result<f64> {
    let mut worst = 0.0f64;
    for psi in tests {
        let before = psi.norm_squared();
        if before == 0.0 {
            continue;
        }
        let after = apply_u(spec, psi)?.norm_squared();
        worst = worst.max((after - before).abs() / before);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntertwiningResidual {
    pub residual: f64,
    pub admissible: bool,
}

/// Sup-norm of `e^{−iϑ·2L}Ψ − U*·e^{−iϑ(ℓ+ν)}·UΨ` over tests × angles.
/// Both rotations are evaluated by transport.
pub fn intertwining_residual(
    spec: &IntertwinerSpec,
    bc: &ExtensionBC,
    tests: &[SampledWaveFunction],
    angles: &[f64],
) -> Result<IntertwiningResidual> {
    let r = bc.require_involutive()?;
    let mut residual = 0.0f64;
    for psi in tests {
        let u_psi = apply_u(spec, psi)?;
        for &angle in angles {
            let lhs = rotate_plane(psi, 2.0 * angle)?;
            let turned = rotate_transport(&u_psi, angle, bc)?;
            let turned = turned.scaled(Complex64::from_polar(1.0, -angle * spec.nu as f64));
            let rhs = apply_u_adjoint(spec, &turned)?;
            residual = residual.max(lhs.sup_distance(&rhs)?);
        }
    }
    Ok(IntertwiningResidual {
        residual,
        admissible: spec.admissible(r),
    })
}

/// `n` equally spaced angles in `[0, 4π)`.
pub fn angle_grid(n: usize) -> Vec<f64> {
    (0..n).map(|j| 4.0 * PI * j as f64 / n as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestSetKind {
    GaussianBumps,
    BandLimited,
    Modes,
}

/// `e^{−(φ̃−c)²/2w²}` on the plane grid.
pub fn gaussian_bump(center: f64, width: f64, n: usize) -> SampledWaveFunction {
    SampledWaveFunction::from_fn(Chart::Plane, n, |phi| {
        Complex64::new((-(phi - center).powi(2) / (2.0 * width * width)).exp(), 0.0)
    })
}

/// Unit-norm superposition of plane modes `|m| ≤ order` with uniform random
/// coefficients.
pub fn random_band_limited(domain: AngularDomain, order: usize, rng: &mut impl Rng) -> AngularWaveFunction {
    let coefficients: Vec<Complex64> = (0..2 * order + 1)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let coefficients = coefficients.into_iter().map(|c| c / norm).collect();
    AngularWaveFunction::new(domain, order, coefficients).expect("length matches order")
}

/// Seeded plane test functions on an `n`-point grid.
pub fn plane_test_set(kind: TestSetKind, count: usize, order: usize, n: usize, seed: u64) -> Result<Vec<SampledWaveFunction>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = order as i64;
    (0..count)
        .map(|_| match kind {
            TestSetKind::GaussianBumps => {
                let center = 0.5 + rng.gen_range(-0.5..0.5);
                let width = 0.4 * rng.gen_range(0.75..1.25);
                Ok(gaussian_bump(center, width, n))
            }
            TestSetKind::BandLimited => random_band_limited(AngularDomain::Plane, order, &mut rng).to_samples(n),
            TestSetKind::Modes => AngularWaveFunction::mode(AngularDomain::Plane, order, rng.gen_range(-m..=m)).to_samples(n),
        })
        .collect()
}

/// A bump, a single mode, and band-limited functions for the rest.
pub fn mixed_test_set(count: usize, order: usize, n: usize, seed: u64) -> Result<Vec<SampledWaveFunction>> {
    let mut out = plane_test_set(TestSetKind::GaussianBumps, count.min(1), order, n, seed)?;
    out.extend(plane_test_set(TestSetKind::Modes, count.saturating_sub(1).min(1), order, n, seed.wrapping_add(1))?);
    out.extend(plane_test_set(TestSetKind::BandLimited, count.saturating_sub(2), order, n, seed.wrapping_add(2))?);
    Ok(out)
}

/// Eigenvalue-set equality on the common value range of two windows.
///
/// Truncated windows only cover part of each lattice; comparing the
/// eigenvalues that fall inside the overlap of both ranges keeps edge
/// effects from producing false negatives.
pub fn spectral_equivalence(a: &SpectrumWindow, b: &SpectrumWindow) -> Result<bool> {
    spectral_equivalence_with(a, b, SPECTRAL_TOLERANCE)
}

pub fn spectral_equivalence_with(a: &SpectrumWindow, b: &SpectrumWindow, tolerance: f64) -> Result<bool> {
    let (Some(&a_lo), Some(&a_hi), Some(&b_lo), Some(&b_hi)) = (
        a.eigenvalues.first(),
        a.eigenvalues.last(),
        b.eigenvalues.first(),
        b.eigenvalues.last(),
    ) else {
        return Err(Error::EmptyOverlap);
    };
    let lo = a_lo.max(b_lo) - tolerance;
    let hi = a_hi.min(b_hi) + tolerance;
    if lo > hi {
        return Err(Error::EmptyOverlap);
    }
    let inside = |w: &SpectrumWindow| -> Vec<f64> {
        w.eigenvalues.iter().copied().filter(|&x| x >= lo && x <= hi).collect()
    };
    let (a_in, b_in) = (inside(a), inside(b));
    Ok(a_in.len() == b_in.len() && a_in.iter().zip(&b_in).all(|(x, y)| (x - y).abs() <= tolerance))
}

/// `2(L + σ)` on the modes `|m| ≤ order`.
pub fn doubled_plane_spectrum(order: usize, sigma: SpinLabel) -> SpectrumWindow {
    let shift = 2.0 * crate::phase::rational_to_f64(sigma.value());
    plane_spectrum(order).affine(2.0, shift, format!("2(L+{sigma})"))
}

/// Numerical settings shared by the planar and sector verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictOptions {
    /// Mode window `|k| ≤ order` for spectra and test functions.
    pub order: usize,
    /// Angular samples; the transport angles are whole cells when this is a
    /// multiple of `angles / 4`.
    pub grid: usize,
    pub angles: usize,
    pub test_functions: usize,
    pub seed: u64,
    pub tolerance_spectral: f64,
    pub tolerance_flow: f64,
    pub include_spectra: bool,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions {
            order: 16,
            grid: 128,
            angles: 16,
            test_functions: 3,
            seed: 0,
            tolerance_spectral: SPECTRAL_TOLERANCE,
            tolerance_flow: FLOW_TOLERANCE,
            include_spectra: true,
        }
    }
}

/// `θ` as a multiple of π: `0`, `pi`, `1/2pi`.
pub fn format_theta(bc: &ExtensionBC) -> String {
    match crate::spectral2d::involution_r(bc).phase.exponent() {
        f if f == num_rational::Rational64::from_integer(0) => "0".into(),
        f if f == num_rational::Rational64::from_integer(1) => "pi".into(),
        f => format!("{}pi", format_rational(f)),
    }
}

/// Planar equivalence verdict: the spin-statistics connection against
/// spectral equivalence of `ĵ = ℓ(θ) + λ` and `2(L + σ)`.
pub fn theorem1_verdict(
    sigma: SpinLabel,
    lambda: OffsetLambda,
    bc: &ExtensionBC,
    opts: &VerdictOptions,
) -> Result<VerificationReport> {
    let r = bc.require_involutive()?;
    let kappa = statistics_phase_2d(lambda, r);
    let ssc = ssc_holds(sigma, kappa);
    let j = total_j_spectrum(bc, lambda, opts.order);
    let target = doubled_plane_spectrum(opts.order, sigma);
    let equiv = spectral_equivalence_with(&j, &target, opts.tolerance_spectral)?;

    let mut report = VerificationReport::new("theorem1");
    report
        .param("lambda", lambda)
        .param("sigma", sigma)
        .param("theta", format_theta(bc))
        .param("R", r)
        .param("kappa", kappa)
        .verdict("ssc", ssc)
        .verdict("equiv", equiv)
        .gated("agreement", ssc == equiv);
    if equiv {
        let nu = intertwiner_shift(lambda, sigma).expect("equivalent spectra force an integer shift");
        let spec = IntertwinerSpec::planar(nu);
        let tests = mixed_test_set(opts.test_functions, opts.order, opts.grid, opts.seed)?;
        let res = intertwining_residual(&spec, bc, &tests, &angle_grid(opts.angles))?;
        report
            .param("nu", nu)
            .verdict("admissible", res.admissible)
            .residual("residual", res.residual)
            .gated("intertwiner", res.admissible && res.residual <= opts.tolerance_flow);
    }
    if opts.include_spectra {
        report.spectrum("j", j).spectrum("2(L+sigma)", target);
    }
    Ok(report)
}

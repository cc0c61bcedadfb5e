//! Two particles in three dimensions: the half-space chart in cylinder
//! coordinates, the z-reflection `P_z`, its sectors `H±`, and the sector
//! verdicts.
//!
//! The half-space boundary is glued by `ψ(ρ, π/2, z) = e^{iθ₃} ψ(ρ, −π/2, −z)`
//! with `e^{iθ₃} = s`, so that `R_z = s·P_z`. On a sector of definite
//! z-parity the gluing becomes a planar extension with phase `s·(±1)`.

use num_complex::Complex64;
use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intertwine::{
    angle_grid, doubled_plane_spectrum, random_band_limited, spectral_equivalence_with, IntertwinerSpec,
    VerdictOptions,
};
use crate::phase::{
    intertwiner_shift, lemma6_conditions, ssc_holds, statistics_phase_3d, InvolutionSign, OffsetLambda,
    SectorLabel, SpinLabel,
};
use crate::report::VerificationReport;
use crate::spectral2d::{
    total_j_spectrum, transport_row, AngularDomain, AngularWaveFunction, Chart, ExtensionBC,
};

const GRID_SYMMETRY: f64 = 1e-12;

/// How a cylinder state depends on `z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ZProfile {
    /// Samples on a grid symmetric about `z = 0`.
    Sampled { z: Vec<f64>, values: Vec<Complex64> },
    /// Only the parity is known.
    Parity(SectorLabel),
}

/// `Ψ(ρ, φ, z) = a(φ)·g(z)` on the half-space chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderWaveFunction {
    pub angular: AngularWaveFunction,
    pub profile: ZProfile,
}

fn check_symmetric(z: &[f64]) -> Result<()> {
    let n = z.len();
    if n == 0 || (0..n).any(|i| (z[i] + z[n - 1 - i]).abs() > GRID_SYMMETRY) {
        return Err(Error::AsymmetricGrid);
    }
    if z.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::AsymmetricGrid);
    }
    Ok(())
}

/// Quadrature weights of a sorted grid: half the distance to each neighbour.
fn z_weights(z: &[f64]) -> Vec<f64> {
    let n = z.len();
    if n == 1 {
        return vec![1.0];
    }
    (0..n)
        .map(|i| {
            let left = if i == 0 { z[1] - z[0] } else { z[i] - z[i - 1] };
            let right = if i == n - 1 { z[n - 1] - z[n - 2] } else { z[i + 1] - z[i] };
            (left + right) / 2.0
        })
        .collect()
}

impl CylinderWaveFunction {
    pub fn new(angular: AngularWaveFunction, profile: ZProfile) -> Result<Self> {
        if let ZProfile::Sampled { z, values } = &profile {
            check_symmetric(z)?;
            if z.len() != values.len() {
                return Err(Error::GridMismatch("z grid and profile differ in length".into()));
            }
        }
        Ok(CylinderWaveFunction { angular, profile })
    }

    /// Samples `g` on `z`.
    pub fn sampled(angular: AngularWaveFunction, z: Vec<f64>, g: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = z.iter().map(|&x| g(x)).collect();
        Self::new(angular, ZProfile::Sampled { z, values })
    }

    /// The z-reflection `P_z`.
    pub fn reflect_z(&self) -> Self {
        let profile = match &self.profile {
            ZProfile::Sampled { z, values } => ZProfile::Sampled {
                z: z.clone(),
                values: values.iter().rev().copied().collect(),
            },
            ZProfile::Parity(p) => ZProfile::Parity(*p),
        };
        let mut out = CylinderWaveFunction {
            angular: self.angular.clone(),
            profile,
        };
        if let ZProfile::Parity(SectorLabel::Odd) = self.profile {
            out.angular = scale_angular(&self.angular, -1.0);
        }
        out
    }

    /// Definite parity, if any. Sampled profiles are tested to `tol`.
    pub fn parity(&self, tol: f64) -> Option<SectorLabel> {
        match &self.profile {
            ZProfile::Parity(p) => Some(*p),
            ZProfile::Sampled { values, .. } => {
                let n = values.len();
                let even = (0..n).all(|i| (values[i] - values[n - 1 - i]).norm() <= tol);
                let odd = (0..n).all(|i| (values[i] + values[n - 1 - i]).norm() <= tol);
                match (even, odd) {
                    (true, _) => Some(SectorLabel::Even),
                    (false, true) => Some(SectorLabel::Odd),
                    _ => None,
                }
            }
        }
    }

    /// `‖Ψ‖²` with `dφ` in angle and trapezoid-like weights in `z`. Parity
    /// tags stand for unit-norm profiles.
    pub fn norm_squared(&self) -> f64 {
        let angular = self.angular.norm().powi(2);
        match &self.profile {
            ZProfile::Parity(_) => angular,
            ZProfile::Sampled { z, values } => {
                angular * z_weights(z).iter().zip(values).map(|(w, v)| w * v.norm_sqr()).sum::<f64>()
            }
        }
    }

    pub fn profile_values(&self) -> Option<&[Complex64]> {
        match &self.profile {
            ZProfile::Sampled { values, .. } => Some(values),
            ZProfile::Parity(_) => None,
        }
    }
}

fn scale_angular(a: &AngularWaveFunction, factor: f64) -> AngularWaveFunction {
    let coeffs = a.coefficients().iter().map(|c| c * factor).collect();
    AngularWaveFunction::new(a.domain, a.order(), coeffs).expect("same shape")
}

/// `Ψ± = (Ψ ± P_zΨ)/2`.
pub fn parity_decompose(psi: &CylinderWaveFunction) -> Result<(CylinderWaveFunction, CylinderWaveFunction)> {
    match &psi.profile {
        ZProfile::Parity(p) => {
            let zero = CylinderWaveFunction {
                angular: AngularWaveFunction::zero(psi.angular.domain, psi.angular.order()),
                profile: ZProfile::Parity(p.other()),
            };
            Ok(match p {
                SectorLabel::Even => (psi.clone(), zero),
                SectorLabel::Odd => (zero, psi.clone()),
            })
        }
        ZProfile::Sampled { z, values } => {
            check_symmetric(z)?;
            let n = values.len();
            let part = |sign: f64| ZProfile::Sampled {
                z: z.clone(),
                values: (0..n).map(|i| (values[i] + values[n - 1 - i] * sign) / 2.0).collect(),
            };
            Ok((
                CylinderWaveFunction { angular: psi.angular.clone(), profile: part(1.0) },
                CylinderWaveFunction { angular: psi.angular.clone(), profile: part(-1.0) },
            ))
        }
    }
}

/// The planar extension seen by sector `sector` when `R_z = s·P_z`:
/// `θ = θ₃` on `H₊` and `θ₃ + π` on `H₋`.
pub fn sector_effective_bc(s: InvolutionSign, sector: SectorLabel) -> ExtensionBC {
    ExtensionBC::from_involution(s * sector.sign())
}

/// Samples `Ψ(φ_j, z_i)` on the cone or plane chart, one angular row per `z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderSamples {
    pub chart: Chart,
    pub n_angular: usize,
    pub z: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl CylinderSamples {
    pub fn from_fn(chart: Chart, n_angular: usize, z: Vec<f64>, f: impl Fn(f64, f64) -> Complex64) -> Result<Self> {
        check_symmetric(&z)?;
        let mut values = Vec::with_capacity(z.len() * n_angular);
        for &zi in &z {
            values.extend((0..n_angular).map(|j| f(chart.angle(j, n_angular), zi)));
        }
        Ok(CylinderSamples { chart, n_angular, z, values })
    }

    /// Tensor-product samples of a cylinder state on an `n`-point grid.
    pub fn from_product(psi: &CylinderWaveFunction, n_angular: usize) -> Result<Self> {
        let ZProfile::Sampled { z, values } = &psi.profile else {
            return Err(Error::GridMismatch("sampling needs an explicit z profile".into()));
        };
        let angular = psi.angular.to_samples(n_angular)?;
        let mut out = Vec::with_capacity(z.len() * n_angular);
        for g in values {
            out.extend(angular.values.iter().map(|a| a * g));
        }
        Ok(CylinderSamples {
            chart: angular.chart,
            n_angular,
            z: z.clone(),
            values: out,
        })
    }

    fn row(&self, i: usize) -> &[Complex64] {
        &self.values[i * self.n_angular..(i + 1) * self.n_angular]
    }

    pub fn reflect_z(&self) -> Self {
        let mut out = self.clone();
        out.values = (0..self.z.len()).rev().flat_map(|i| self.row(i).to_vec()).collect();
        out
    }

    /// `(Ψ₊, Ψ₋)` on the same grid.
    pub fn parity_parts(&self) -> (Self, Self) {
        let reflected = self.reflect_z();
        let combine = |sign: f64| {
            let mut out = self.clone();
            out.values = self
                .values
                .iter()
                .zip(&reflected.values)
                .map(|(a, b)| (a + b * sign) / 2.0)
                .collect();
            out
        };
        (combine(1.0), combine(-1.0))
    }

    /// `‖Ψ‖²` in `2ρ dρ dφ dz` (cone) or `ρ dρ dφ̃ dz` (plane), angular
    /// and z parts only.
    pub fn norm_squared(&self) -> f64 {
        let dphi = self.chart.length() / self.n_angular as f64;
        let weights = z_weights(&self.z);
        let total: f64 = (0..self.z.len())
            .map(|i| weights[i] * self.row(i).iter().map(|v| v.norm_sqr()).sum::<f64>())
            .sum();
        total * dphi * self.chart.measure_factor()
    }

    pub fn sup_distance(&self, other: &CylinderSamples) -> Result<f64> {
        if self.chart != other.chart || self.n_angular != other.n_angular || self.z != other.z {
            return Err(Error::GridMismatch("cylinder grids differ".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn map_rows(&self, f: impl Fn(&[Complex64]) -> Vec<Complex64>) -> Self {
        let mut out = self.clone();
        out.values = (0..self.z.len()).flat_map(|i| f(self.row(i))).collect();
        out
    }

    fn twisted(&self, nu: i64, sign: f64, target: Chart) -> Self {
        let n = self.n_angular;
        let phases: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, sign * nu as f64 * Chart::Cone.angle(j, n)))
            .collect();
        let mut out = self.map_rows(|row| row.iter().zip(&phases).map(|(v, p)| v * p).collect());
        out.chart = target;
        out
    }
}

/// `U_ν` in cylinder coordinates; `z` is untouched.
pub fn apply_u_3d(spec: &IntertwinerSpec, psi: &CylinderSamples) -> Result<CylinderSamples> {
    if spec.dimension != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: spec.dimension });
    }
    if psi.chart != Chart::Plane {
        return Err(Error::GridMismatch("U acts on plane samples".into()));
    }
    Ok(psi.twisted(spec.nu, -1.0, Chart::Cone))
}

pub fn apply_u_3d_adjoint(spec: &IntertwinerSpec, chi: &CylinderSamples) -> Result<CylinderSamples> {
    if spec.dimension != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: spec.dimension });
    }
    if chi.chart != Chart::Cone {
        return Err(Error::GridMismatch("U* acts on cone samples".into()));
    }
    Ok(chi.twisted(spec.nu, 1.0, Chart::Plane))
}

/// Rotation about the z-axis by `angle` on the half-space chart. Every pass
/// through the boundary multiplies by `s` and reflects `z`.
pub fn rotate_transport_3d(psi: &CylinderSamples, angle: f64, s: InvolutionSign) -> Result<CylinderSamples> {
    if psi.chart != Chart::Cone {
        return Err(Error::GridMismatch("rotate_transport_3d acts on cone samples".into()));
    }
    let n = psi.n_angular as i64;
    let cells = angle / (Chart::Cone.length() / n as f64);
    let rounded = cells.round();
    let nz = psi.z.len();
    if (cells - rounded).abs() <= 1e-9 {
        let shift = rounded as i64;
        let sign = s.value() as f64;
        let mut out = psi.clone();
        for i in 0..nz {
            for j in 0..n {
                let src = j - shift;
                let p = src.div_euclid(n);
                let idx = src.rem_euclid(n) as usize;
                let zi = if p.rem_euclid(2) == 0 { i } else { nz - 1 - i };
                let factor = if p.rem_euclid(2) == 0 { 1.0 } else { sign };
                out.values[i * n as usize + j as usize] = psi.values[zi * n as usize + idx] * factor;
            }
        }
        return Ok(out);
    }
    // off-grid: each parity part is a planar extension with phase s·(±1)
    let (even, odd) = psi.parity_parts();
    let wrap = |sector: SectorLabel| Complex64::new((s * sector.sign()).value() as f64, 0.0);
    let even = even.map_rows(|row| transport_row(row, cells, wrap(SectorLabel::Even)));
    let odd = odd.map_rows(|row| transport_row(row, cells, wrap(SectorLabel::Odd)));
    let mut out = even;
    out.values.iter_mut().zip(&odd.values).for_each(|(a, b)| *a += b);
    Ok(out)
}

/// Rotation about the z-axis on the plane chart.
pub fn rotate_plane_3d(psi: &CylinderSamples, angle: f64) -> Result<CylinderSamples> {
    if psi.chart != Chart::Plane {
        return Err(Error::GridMismatch("rotate_plane_3d acts on plane samples".into()));
    }
    let cells = angle / (Chart::Plane.length() / psi.n_angular as f64);
    Ok(psi.map_rows(|row| transport_row(row, cells, Complex64::new(1.0, 0.0))))
}

/// Sup-norm of `e^{−iϑ·2L_z}Ψ − U*·e^{−iϑ(ℓ_z+ν)}·UΨ` over tests × angles,
/// with every test state projected onto `sector` first.
pub fn intertwining_residual_3d(
    spec: &IntertwinerSpec,
    s: InvolutionSign,
    sector: SectorLabel,
    tests: &[CylinderSamples],
    angles: &[f64],
) -> Result<f64> {
    let mut residual = 0.0f64;
    for psi in tests {
        let (even, odd) = psi.parity_parts();
        let psi = match sector {
            SectorLabel::Even => even,
            SectorLabel::Odd => odd,
        };
        let u_psi = apply_u_3d(spec, &psi)?;
        for &angle in angles {
            let lhs = rotate_plane_3d(&psi, 2.0 * angle)?;
            let turned = rotate_transport_3d(&u_psi, angle, s)?;
            let phase = Complex64::from_polar(1.0, -angle * spec.nu as f64);
            let turned = turned.map_rows(|row| row.iter().map(|v| v * phase).collect());
            let rhs = apply_u_3d_adjoint(spec, &turned)?;
            residual = residual.max(lhs.sup_distance(&rhs)?);
        }
    }
    Ok(residual)
}

/// Symmetric `n`-point grid on `[−extent, extent]`.
pub fn symmetric_z_grid(n: usize, extent: f64) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    (0..n)
        .map(|i| {
            let z = -extent + 2.0 * extent * i as f64 / (n - 1) as f64;
            let mirror = -extent + 2.0 * extent * (n - 1 - i) as f64 / (n - 1) as f64;
            (z - mirror) / 2.0
        })
        .collect()
}

/// Seeded plane test states `a(φ̃)·e^{−z²}(1 + z + z²)` with no definite
/// z-parity.
pub fn cylinder_test_set(count: usize, order: usize, n_angular: usize, seed: u64) -> Result<Vec<CylinderSamples>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = symmetric_z_grid(9, 2.0);
    (0..count)
        .map(|_| {
            let a = random_band_limited(AngularDomain::Plane, order, &mut rng).to_samples(n_angular)?;
            let mut values = Vec::with_capacity(z.len() * n_angular);
            for &zi in &z {
                let g = (-zi * zi).exp() * (1.0 + zi + zi * zi);
                values.extend(a.values.iter().map(|v| v * g));
            }
            Ok(CylinderSamples {
                chart: Chart::Plane,
                n_angular,
                z: z.clone(),
                values,
            })
        })
        .collect()
}

/// The full-space `ĵ_z` spectrum (both sectors) is never that of
/// `2(L_z + σ)`.
pub fn obstruction_check(
    sigma: SpinLabel,
    lambda: OffsetLambda,
    s: InvolutionSign,
    order: usize,
) -> Result<VerificationReport> {
    lambda.require_integer()?;
    let plus = total_j_spectrum(&sector_effective_bc(s, SectorLabel::Even), lambda, order);
    let minus = total_j_spectrum(&sector_effective_bc(s, SectorLabel::Odd), lambda, order);
    let full = plus.union(&minus, "j_z");
    let target = doubled_plane_spectrum(order, sigma);
    let equiv = spectral_equivalence_with(&full, &target, crate::spectral2d::SPECTRAL_TOLERANCE)?;
    let mut report = VerificationReport::new("obstruction");
    report
        .param("lambda", lambda)
        .param("sigma", sigma)
        .param("s", s)
        .verdict("full_space_equiv", equiv)
        .gated("obstruction", !equiv);
    Ok(report)
}

/// Sector verdicts: the spin-statistics connection against spectral
/// equivalence on `H₊` and `H₋`.
pub fn theorem4_verdict(
    sigma: SpinLabel,
    lambda: OffsetLambda,
    s: InvolutionSign,
    opts: &VerdictOptions,
) -> Result<VerificationReport> {
    let kappa = statistics_phase_3d(lambda, s)?;
    let ssc = ssc_holds(sigma, kappa);
    let target = doubled_plane_spectrum(opts.order, sigma);
    let mut report = VerificationReport::new("theorem4");
    report
        .param("lambda", lambda)
        .param("sigma", sigma)
        .param("s", s)
        .param("kappa", kappa)
        .verdict("ssc", ssc);

    let mut equiv = [false; 2];
    for (slot, sector) in [SectorLabel::Even, SectorLabel::Odd].into_iter().enumerate() {
        let j = total_j_spectrum(&sector_effective_bc(s, sector), lambda, opts.order);
        equiv[slot] = spectral_equivalence_with(&j, &target, opts.tolerance_spectral)?;
        let name = if slot == 0 { "equiv_plus" } else { "equiv_minus" };
        report.verdict(name, equiv[slot]);
        if opts.include_spectra {
            report.spectrum(&format!("j_z|{sector}"), j);
        }
    }
    if opts.include_spectra {
        report.spectrum("2(L_z+sigma)", target);
    }
    let lemma6 = [SectorLabel::Even, SectorLabel::Odd]
        .into_iter()
        .map(|sector| lemma6_conditions(lambda, sigma, s, sector).map(|t| t.two_imply_third()))
        .collect::<Result<Vec<_>>>()?;
    report
        .gated("dichotomy", equiv[0] ^ equiv[1])
        .gated("agreement", ssc == equiv[0] && !ssc == equiv[1])
        .gated("lemma6", lemma6.iter().all(|&b| b));

    let obstruction = obstruction_check(sigma, lambda, s, opts.order)?;
    report.gated("obstruction", obstruction.get("obstruction") == Some(true));

    if let Some(sector) = match equiv {
        [true, false] => Some(SectorLabel::Even),
        [false, true] => Some(SectorLabel::Odd),
        _ => None,
    } {
        let nu = intertwiner_shift(lambda, sigma).expect("integer λ and half-integer σ");
        let spec = IntertwinerSpec::new(nu, 3)?;
        let tests = cylinder_test_set(opts.test_functions, opts.order, opts.grid, opts.seed)?;
        let residual = intertwining_residual_3d(&spec, s, sector, &tests, &angle_grid(opts.angles))?;
        report
            .param("nu", nu)
            .param("sector", sector)
            .residual("residual", residual)
            .gated("intertwiner", residual <= opts.tolerance_flow);
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exchange {
    Bose,
    Fermi,
}

impl Exchange {
    /// The sector in which the sector verdict grants an intertwiner for
    /// spinless particles.
    pub fn granted_sector(self) -> SectorLabel {
        match self {
            Exchange::Bose => SectorLabel::Even,
            Exchange::Fermi => SectorLabel::Odd,
        }
    }

    fn allows(self, l: u32) -> bool {
        (l % 2 == 0) == (self == Exchange::Bose)
    }
}

impl std::fmt::Display for Exchange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Exchange::Bose => "bose",
            Exchange::Fermi => "fermi",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundStateLabel {
    l: u32,
    m: i32,
    exchange: Exchange,
}

impl BoundStateLabel {
    pub fn new(l: i64, m: i64, exchange: Exchange) -> Result<Self> {
        if l < 0 || m.abs() > l || l > u32::MAX as i64 {
            return Err(Error::InvalidLabel { l, m });
        }
        Ok(BoundStateLabel { l: l as u32, m: m as i32, exchange })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn exchange(&self) -> Exchange {
        self.exchange
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundStateClass {
    pub label: BoundStateLabel,
    pub allowed: bool,
    /// `(−1)^{l−m}`, for allowed labels.
    pub sector: Option<SectorLabel>,
    pub in_granted_sector: bool,
    /// `m/2`, for labels in the granted sector.
    pub lz_eigenvalue: Option<Rational64>,
}

/// Classifies a two-particle bound state by its labels alone.
pub fn bound_state_classify(label: BoundStateLabel) -> BoundStateClass {
    let allowed = label.exchange.allows(label.l);
    let sector = allowed.then(|| {
        if (label.l as i64 - label.m as i64).rem_euclid(2) == 0 {
            SectorLabel::Even
        } else {
            SectorLabel::Odd
        }
    });
    let in_granted_sector = sector == Some(label.exchange.granted_sector());
    BoundStateClass {
        label,
        allowed,
        sector,
        in_granted_sector,
        lz_eigenvalue: in_granted_sector.then(|| Rational64::new(label.m as i64, 2)),
    }
}

/// Normalised associated Legendre function `P_l^m(x)` for `0 ≤ m ≤ l`,
/// including the spherical-harmonic factor.
fn legendre_normalised(l: u32, m: u32, x: f64) -> f64 {
    let pi4 = 4.0 * std::f64::consts::PI;
    let sin = (1.0 - x * x).max(0.0).sqrt();
    // P_m^m
    let mut pmm = (1.0 / pi4).sqrt();
    for k in 1..=m {
        let k = k as f64;
        pmm *= -((2.0 * k + 1.0) / (2.0 * k)).sqrt() * sin;
    }
    if l == m {
        return pmm;
    }
    let mut p_prev = pmm;
    let mut p = x * (2.0 * m as f64 + 3.0).sqrt() * pmm;
    for ll in (m + 2)..=l {
        let (lf, mf) = (ll as f64, m as f64);
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
        let next = a * (x * p - b * p_prev);
        p_prev = p;
        p = next;
    }
    p
}

/// `Y_l^m(ϑ, φ)` with the Condon–Shortley phase.
pub fn spherical_harmonic(l: u32, m: i32, polar: f64, azimuth: f64) -> Result<Complex64> {
    if m.unsigned_abs() > l {
        return Err(Error::InvalidLabel { l: l as i64, m: m as i64 });
    }
    let p = legendre_normalised(l, m.unsigned_abs(), polar.cos());
    let y = Complex64::from_polar(p, m.abs() as f64 * azimuth);
    Ok(if m < 0 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        y.conj() * sign
    } else {
        y
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParityCheck {
    /// `(−1)^{l−m}`.
    pub parity: i64,
    pub residual: f64,
}

/// Sup over a midpoint polar grid of `|Y(reflected) − (−1)^{l−m} Y|`.
pub fn ylm_parity_check(l: u32, m: i32, n_polar: usize, n_azimuth: usize) -> Result<ParityCheck> {
    let parity = if (l as i64 - m as i64).rem_euclid(2) == 0 { 1 } else { -1 };
    let mut residual = 0.0f64;
    for i in 0..n_polar {
        let polar = (i as f64 + 0.5) * std::f64::consts::PI / n_polar as f64;
        for k in 0..n_azimuth {
            let azimuth = (k as f64 + 0.5) * std::f64::consts::TAU / n_azimuth as f64;
            let y = spherical_harmonic(l, m, polar, azimuth)?;
            let reflected = spherical_harmonic(l, m, std::f64::consts::PI - polar, azimuth)?;
            residual = residual.max((reflected - y * parity as f64).norm());
        }
    }
    Ok(ParityCheck { parity, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intertwine::random_band_limited;
    use proptest::prelude::*;

    fn angular(seed: u64) -> AngularWaveFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_band_limited(AngularDomain::Cone2D(ExtensionBC::periodic()), 3, &mut rng)
    }

    fn profile_of(psi: &CylinderWaveFunction) -> Vec<Complex64> {
        psi.profile_values().unwrap().to_vec()
    }

    #[test]
    fn parity_decompose_examples() {
        let z = symmetric_z_grid(21, 3.0);
        let even = CylinderWaveFunction::sampled(angular(1), z.clone(), |z| Complex64::new((-z * z).exp(), 0.0)).unwrap();
        let (p, m) = parity_decompose(&even).unwrap();
        assert_eq!(p, even);
        assert!(profile_of(&m).iter().all(|v| v.norm() == 0.0));

        let odd = CylinderWaveFunction::sampled(angular(1), z.clone(), |z| Complex64::new(z * (-z * z).exp(), 0.0)).unwrap();
        let (p, m) = parity_decompose(&odd).unwrap();
        assert!(profile_of(&p).iter().all(|v| v.norm() == 0.0));
        assert_eq!(m, odd);

        let mixed = CylinderWaveFunction::sampled(angular(1), z.clone(), |z| Complex64::new((-z * z).exp() * (1.0 + z), 0.0)).unwrap();
        let (p, m) = parity_decompose(&mixed).unwrap();
        for (i, &zi) in z.iter().enumerate() {
            assert!((profile_of(&p)[i].re - (-zi * zi).exp()).abs() < 1e-15);
            assert!((profile_of(&m)[i].re - zi * (-zi * zi).exp()).abs() < 1e-15);
        }
        assert_eq!(p.parity(0.0), Some(SectorLabel::Even));
        assert_eq!(m.parity(0.0), Some(SectorLabel::Odd));
        assert_eq!(mixed.parity(1e-12), None);

        let bad = CylinderWaveFunction::sampled(angular(1), vec![-1.0, 0.0, 2.0], |_| Complex64::new(1.0, 0.0));
        assert_eq!(bad, Err(Error::AsymmetricGrid));
    }

    #[test]
    fn parity_tagged_states() {
        let psi = CylinderWaveFunction::new(angular(2), ZProfile::Parity(SectorLabel::Odd)).unwrap();
        let (p, m) = parity_decompose(&psi).unwrap();
        assert_eq!(p.norm_squared(), 0.0);
        assert_eq!(m, psi);
        let reflected = psi.reflect_z();
        for (a, b) in reflected.angular.coefficients().iter().zip(psi.angular.coefficients()) {
            assert_eq!(*a, -b);
        }
    }

    #[test]
    fn sector_effective_bc_examples() {
        use InvolutionSign::*;
        assert_eq!(sector_effective_bc(Plus, SectorLabel::Even).theta(), 0.0);
        assert_eq!(sector_effective_bc(Plus, SectorLabel::Odd).theta(), std::f64::consts::PI);
        assert_eq!(sector_effective_bc(Minus, SectorLabel::Even).theta(), std::f64::consts::PI);
        assert_eq!(sector_effective_bc(Minus, SectorLabel::Odd).theta(), 0.0);
    }

    #[test]
    fn gluing_reduces_to_sector_extension() {
        // half a turn through the 3D gluing acts on each parity part as the
        // planar extension of its sector
        let z = symmetric_z_grid(7, 1.5);
        for s in [InvolutionSign::Plus, InvolutionSign::Minus] {
            let psi = CylinderSamples::from_fn(Chart::Cone, 32, z.clone(), |phi, z| {
                Complex64::new((phi + 2.0 * z).cos(), z * phi)
            })
            .unwrap();
            let turned = rotate_transport_3d(&psi, std::f64::consts::PI, s).unwrap();
            let (even, odd) = psi.parity_parts();
            let (t_even, t_odd) = turned.parity_parts();
            for (part, turned_part, sector) in [(even, t_even, SectorLabel::Even), (odd, t_odd, SectorLabel::Odd)] {
                let r = sector_effective_bc(s, sector).boundary_phase().re;
                let expected = part.map_rows(|row| row.iter().map(|v| v * r).collect());
                assert!(turned_part.sup_distance(&expected).unwrap() < 1e-15);
            }
        }
    }

    #[test]
    fn off_grid_3d_transport_matches_whole_cells() {
        // even part periodic, odd part antiperiodic: the domain of s = +1
        let z = symmetric_z_grid(7, 1.5);
        let even = CylinderWaveFunction::sampled(
            angular(4),
            z.clone(),
            |z| Complex64::new((-z * z).exp(), 0.0),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let odd_angular = random_band_limited(AngularDomain::Cone2D(ExtensionBC::antiperiodic()), 3, &mut rng);
        let odd = CylinderWaveFunction::sampled(odd_angular, z, |z| Complex64::new(z * (-z * z).exp(), 0.0)).unwrap();
        let mut u = CylinderSamples::from_product(&even, 32).unwrap();
        let odd = CylinderSamples::from_product(&odd, 32).unwrap();
        u.values.iter_mut().zip(&odd.values).for_each(|(a, b)| *a += b);
        let h = std::f64::consts::PI / 32.0;
        let a = rotate_transport_3d(&u, 5.0 * h, InvolutionSign::Plus).unwrap();
        let b = rotate_transport_3d(&u, 5.0 * h + 1e-12, InvolutionSign::Plus).unwrap();
        assert!(a.sup_distance(&b).unwrap() < 1e-9);
        let c = rotate_transport_3d(&rotate_transport_3d(&u, 0.3, InvolutionSign::Plus).unwrap(), 5.0 * h - 0.3, InvolutionSign::Plus).unwrap();
        assert!(a.sup_distance(&c).unwrap() < 1e-9);
    }

    #[test]
    fn obstruction_examples() {
        use InvolutionSign::*;
        for (sigma, lambda, s) in [(0, 0, Plus), (1, 1, Plus), (2, -3, Minus)] {
            let r = obstruction_check(SpinLabel::new(sigma), OffsetLambda::integer(lambda), s, 12).unwrap();
            assert_eq!(r.get("full_space_equiv"), Some(false));
            assert!(r.passed());
        }
    }

    #[test]
    fn sector_verdict_examples() {
        use InvolutionSign::*;
        let opts = VerdictOptions::default();
        for (lambda, s, kappa_one, plus) in [(0, Plus, true, true), (1, Minus, true, true), (1, Plus, false, false)] {
            let r = theorem4_verdict(SpinLabel::new(0), OffsetLambda::integer(lambda), s, &opts).unwrap();
            assert_eq!(r.parameters["kappa"], if kappa_one { "1" } else { "-1" });
            assert_eq!(r.get("ssc"), Some(kappa_one));
            assert_eq!(r.get("equiv_plus"), Some(plus));
            assert_eq!(r.get("equiv_minus"), Some(!plus));
            assert!(r.residuals["residual"] <= 1e-9);
            assert!(r.passed(), "{r:?}");
        }
        let half = OffsetLambda::new(Rational64::new(1, 2));
        assert!(matches!(theorem4_verdict(SpinLabel::new(0), half, Plus, &opts), Err(Error::NonIntegerOffset(_))));
    }

    #[test]
    fn wrong_sector_has_large_residual() {
        let spec = IntertwinerSpec::new(0, 3).unwrap();
        let tests = cylinder_test_set(2, 6, 64, 1).unwrap();
        let angles = angle_grid(8);
        let good = intertwining_residual_3d(&spec, InvolutionSign::Plus, SectorLabel::Even, &tests, &angles).unwrap();
        let bad = intertwining_residual_3d(&spec, InvolutionSign::Plus, SectorLabel::Odd, &tests, &angles).unwrap();
        assert!(good <= 1e-9 && bad > 0.1, "{good} {bad}");
    }

    #[test]
    fn bound_state_examples() {
        let c = bound_state_classify(BoundStateLabel::new(0, 0, Exchange::Bose).unwrap());
        assert!(c.allowed && c.sector == Some(SectorLabel::Even));
        assert_eq!(c.lz_eigenvalue, Some(Rational64::from_integer(0)));
        let c = bound_state_classify(BoundStateLabel::new(2, 2, Exchange::Bose).unwrap());
        assert!(c.allowed && c.sector == Some(SectorLabel::Even));
        assert_eq!(c.lz_eigenvalue, Some(Rational64::from_integer(1)));
        let c = bound_state_classify(BoundStateLabel::new(1, 0, Exchange::Fermi).unwrap());
        assert!(c.allowed && c.sector == Some(SectorLabel::Odd));
        assert_eq!(c.lz_eigenvalue, Some(Rational64::from_integer(0)));
        let c = bound_state_classify(BoundStateLabel::new(1, 0, Exchange::Bose).unwrap());
        assert!(!c.allowed && c.sector.is_none() && c.lz_eigenvalue.is_none());
        assert_eq!(BoundStateLabel::new(1, 2, Exchange::Bose), Err(Error::InvalidLabel { l: 1, m: 2 }));
    }

    #[test]
    fn ylm_examples() {
        assert_eq!(ylm_parity_check(0, 0, 16, 8).unwrap(), ParityCheck { parity: 1, residual: 0.0 });
        let c = ylm_parity_check(1, 0, 16, 8).unwrap();
        assert_eq!(c.parity, -1);
        assert!(c.residual <= 1e-10);
        let c = ylm_parity_check(2, 1, 16, 8).unwrap();
        assert_eq!(c.parity, -1);
        assert!(c.residual <= 1e-10);
    }

    #[test]
    fn spherical_harmonics_match_closed_forms() {
        let (t, p) = (0.7f64, 1.3f64);
        let pi = std::f64::consts::PI;
        let y10 = (3.0 / (4.0 * pi)).sqrt() * t.cos();
        assert!((spherical_harmonic(1, 0, t, p).unwrap().re - y10).abs() < 1e-14);
        let y11 = -(3.0 / (8.0 * pi)).sqrt() * t.sin();
        assert!((spherical_harmonic(1, 1, t, p).unwrap() - Complex64::from_polar(y11, p)).norm() < 1e-14);
        let y21 = -(15.0 / (8.0 * pi)).sqrt() * t.sin() * t.cos();
        assert!((spherical_harmonic(2, 1, t, p).unwrap() - Complex64::from_polar(y21, p)).norm() < 1e-14);
        let y32 = (105.0 / (32.0 * pi)).sqrt() * t.sin().powi(2) * t.cos();
        assert!((spherical_harmonic(3, -2, t, p).unwrap() - Complex64::from_polar(y32, -2.0 * p)).norm() < 1e-14);
    }

    proptest! {
        #[test]
        fn projection_pair(seed in 0u64..500, n in 1usize..12) {
            let z = symmetric_z_grid(2 * n + 1, 2.0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<Complex64> = (0..z.len()).map(|_| {
                use rand::Rng;
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            }).collect();
            let psi = CylinderWaveFunction::new(angular(seed), ZProfile::Sampled { z, values }).unwrap();
            let (p, m) = parity_decompose(&psi).unwrap();
            let total = psi.norm_squared();
            prop_assert!((p.norm_squared() + m.norm_squared() - total).abs() <= 1e-12 * total.max(1.0));
            let sum: Vec<Complex64> = profile_of(&p).iter().zip(profile_of(&m)).map(|(a, b)| a + b).collect();
            for (a, b) in sum.iter().zip(profile_of(&psi)) {
                prop_assert!((a - b).norm() <= 1e-15);
            }
            let (pp, pm) = parity_decompose(&p).unwrap();
            prop_assert_eq!(profile_of(&pp), profile_of(&p));
            prop_assert!(profile_of(&pm).iter().all(|v| v.norm() == 0.0));
        }

        #[test]
        fn dichotomy(lambda in -6i64..=6, j in -5i64..=5, minus in any::<bool>()) {
            let s = if minus { InvolutionSign::Minus } else { InvolutionSign::Plus };
            let opts = VerdictOptions { test_functions: 1, angles: 4, grid: 32, order: 8, include_spectra: false, ..Default::default() };
            let r = theorem4_verdict(SpinLabel::new(j), OffsetLambda::integer(lambda), s, &opts).unwrap();
            prop_assert!(r.passed(), "{:?}", r);
            for sector in [SectorLabel::Even, SectorLabel::Odd] {
                let restricted = s * sector.sign();
                prop_assert_eq!(restricted.value() * restricted.value(), 1);
                prop_assert_eq!(sector_effective_bc(s, sector).involution_sign(), Some(restricted));
            }
        }

        #[test]
        fn bound_state_law(l in 0i64..=12, m_off in 0i64..=24, fermi in any::<bool>()) {
            let m = m_off.min(2 * l) - l;
            let exchange = if fermi { Exchange::Fermi } else { Exchange::Bose };
            let c = bound_state_classify(BoundStateLabel::new(l, m, exchange).unwrap());
            if c.allowed && exchange == Exchange::Bose {
                prop_assert!(l % 2 == 0);
            }
            if c.in_granted_sector {
                prop_assert!(m % 2 == 0);
                prop_assert!(c.lz_eigenvalue.unwrap().is_integer());
            }
        }
    }
}

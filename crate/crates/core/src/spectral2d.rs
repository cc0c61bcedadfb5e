//! Angular momentum on the plane and on the two-particle cone.
//!
//! The single-particle operator `L = −i∂φ̃` acts on `(−π, π)` with periodic
//! boundary conditions; its spectrum is `ℤ`. On the cone chart
//! `φ ∈ (−π/2, π/2)` the differential operator `−i∂φ` has the self-adjoint
//! extensions `ℓ(θ)` fixed by `ψ(π/2) = e^{iθ}ψ(−π/2)`, with eigenfunctions
//! `e^{iμφ}/√π` for `μ ∈ θ/π + 2ℤ`. Only `θ ∈ {0, π}` give an involutive
//! `R = e^{iπℓ}`; other values are kept for exploration.
//!
//! Rotations are available in two forms: multiplying mode coefficients by
//! `e^{−iϑμ}` ([`rotate_spectral`]) and transporting samples along
//! `φ → φ − ϑ` with one boundary phase per crossing ([`rotate_transport`]).

use std::f64::consts::{PI, TAU};
use std::io::{Read, Write};

use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{rational_to_f64, ExactPhase, InvolutionSign, OffsetLambda};

/// Absolute tolerance used when comparing spectra.
pub const SPECTRAL_TOLERANCE: f64 = 1e-9;
/// Sup-norm tolerance for comparing the two rotation flows.
pub const FLOW_TOLERANCE: f64 = 1e-9;

const CELL_SNAP: f64 = 1e-9;

/// Boundary condition `ψ(π/2) = e^{iθ}ψ(−π/2)` on the cone chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtensionBC {
    theta: f64,
    /// `θ/π` when known exactly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exact: Option<Rational64>,
}

impl ExtensionBC {
    pub fn new(theta: f64) -> Self {
        let theta = theta.rem_euclid(TAU);
        let exact = if theta == 0.0 {
            Some(Rational64::from_integer(0))
        } else if theta == PI {
            Some(Rational64::from_integer(1))
        } else {
            None
        };
        ExtensionBC { theta, exact }
    }

    /// `θ = π·fraction`.
    pub fn from_pi_fraction(fraction: Rational64) -> Self {
        let phase = ExactPhase::from_pi_fraction(fraction);
        let exponent = phase.exponent();
        ExtensionBC {
            theta: PI * rational_to_f64(exponent),
            exact: Some(exponent),
        }
    }

    pub fn periodic() -> Self {
        Self::from_pi_fraction(Rational64::from_integer(0))
    }

    pub fn antiperiodic() -> Self {
        Self::from_pi_fraction(Rational64::from_integer(1))
    }

    /// The extension with `R = e^{iθ}` equal to `sign`.
    pub fn from_involution(sign: InvolutionSign) -> Self {
        match sign {
            InvolutionSign::Plus => Self::periodic(),
            InvolutionSign::Minus => Self::antiperiodic(),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn theta_over_pi(&self) -> f64 {
        match self.exact {
            Some(r) => rational_to_f64(r),
            None => self.theta / PI,
        }
    }

    pub fn boundary_phase(&self) -> Complex64 {
        match self.involution_sign() {
            Some(s) => Complex64::new(s.value() as f64, 0.0),
            None => Complex64::from_polar(1.0, self.theta),
        }
    }

    pub fn is_involutive(&self) -> bool {
        self.involution_sign().is_some()
    }

    pub fn involution_sign(&self) -> Option<InvolutionSign> {
        if self.theta == 0.0 {
            Some(InvolutionSign::Plus)
        } else if self.theta == PI {
            Some(InvolutionSign::Minus)
        } else {
            None
        }
    }

    pub fn require_involutive(&self) -> Result<InvolutionSign> {
        self.involution_sign().ok_or(Error::NotInvolutive(self.theta))
    }
}

/// The value of `R = e^{iπℓ(θ)} = e^{iθ}` for an extension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Involution {
    pub phase: ExactPhase,
    /// `R² = 1`.
    pub involutive: bool,
}

impl Involution {
    pub fn check(&self) -> Result<()> {
        if self.involutive {
            Ok(())
        } else {
            Err(Error::NotInvolutive(PI * rational_to_f64(self.phase.exponent())))
        }
    }
}

/// `R = e^{iθ}`. Irrational `θ/π` is approximated by a continued fraction.
pub fn involution_r(bc: &ExtensionBC) -> Involution {
    let fraction = bc
        .exact
        .or_else(|| Rational64::approximate_float(bc.theta / PI))
        .unwrap_or_else(|| Rational64::from_integer(0));
    let phase = ExactPhase::from_pi_fraction(fraction);
    Involution {
        phase,
        involutive: phase.pow(2).is_one(),
    }
}

/// Eigenvalues of an angular operator on a symmetric mode window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumWindow {
    pub operator: String,
    /// Mode indices `k_min..=k_max` that produced the eigenvalues.
    pub window: (i64, i64),
    pub eigenvalues: Vec<f64>,
}

impl SpectrumWindow {
    fn from_modes(operator: String, order: usize, f: impl Fn(i64) -> f64) -> Self {
        let m = order as i64;
        let mut eigenvalues: Vec<f64> = (-m..=m).map(f).collect();
        eigenvalues.sort_by(f64::total_cmp);
        SpectrumWindow {
            operator,
            window: (-m, m),
            eigenvalues,
        }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `a·x + b` applied to every eigenvalue.
    pub fn affine(&self, scale: f64, shift: f64, operator: impl Into<String>) -> Self {
        let mut eigenvalues: Vec<f64> = self.eigenvalues.iter().map(|&x| scale * x + shift).collect();
        eigenvalues.sort_by(f64::total_cmp);
        SpectrumWindow {
            operator: operator.into(),
            window: self.window,
            eigenvalues,
        }
    }

    /// Multiset union, as for a direct sum of operators.
    pub fn union(&self, other: &SpectrumWindow, operator: impl Into<String>) -> Self {
        let mut eigenvalues = self.eigenvalues.clone();
        eigenvalues.extend_from_slice(&other.eigenvalues);
        eigenvalues.sort_by(f64::total_cmp);
        SpectrumWindow {
            operator: operator.into(),
            window: (self.window.0.min(other.window.0), self.window.1.max(other.window.1)),
            eigenvalues,
        }
    }

    pub fn to_json_array(&self) -> String {
        serde_json::to_string(&self.eigenvalues).expect("finite eigenvalues serialize")
    }
}

/// `{−M, …, M}`: the spectrum of `L` on the modes `e^{imφ̃}`, `|m| ≤ M`.
pub fn plane_spectrum(order: usize) -> SpectrumWindow {
    SpectrumWindow::from_modes("L".into(), order, |m| m as f64)
}

/// `{θ/π + 2k : |k| ≤ M}`.
pub fn cone_spectrum(bc: &ExtensionBC, order: usize) -> SpectrumWindow {
    let base = bc.theta_over_pi();
    SpectrumWindow::from_modes(format!("ell(theta={})", bc.theta), order, |k| base + 2.0 * k as f64)
}

/// Spectrum of `ĵ = ℓ(θ) + λ`.
pub fn total_j_spectrum(bc: &ExtensionBC, lambda: OffsetLambda, order: usize) -> SpectrumWindow {
    cone_spectrum(bc, order).affine(1.0, lambda.as_f64(), format!("j(theta={}, lambda={})", bc.theta, lambda))
}

/// Angular chart of a sampled function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    /// Slit plane, `φ̃ ∈ (−π, π)`.
    Plane,
    /// Cone chart, `φ ∈ (−π/2, π/2)`.
    Cone,
}

impl Chart {
    pub fn start(self) -> f64 {
        match self {
            Chart::Plane => -PI,
            Chart::Cone => -PI / 2.0,
        }
    }

    pub fn length(self) -> f64 {
        match self {
            Chart::Plane => TAU,
            Chart::Cone => PI,
        }
    }

    /// Density of the configuration-space measure relative to `r dr dφ`.
    pub fn measure_factor(self) -> f64 {
        match self {
            Chart::Plane => 1.0,
            Chart::Cone => 2.0,
        }
    }

    /// Midpoint grid angles.
    pub fn angle(self, j: usize, n: usize) -> f64 {
        self.start() + (j as f64 + 0.5) * self.length() / n as f64
    }
}

/// Mode basis of an angular wave function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AngularDomain {
    /// `e^{imφ̃}/√(2π)`, eigenvalue `m`.
    Plane,
    /// `e^{iμ_kφ}/√π`, `μ_k = θ/π + 2k`.
    Cone2D(ExtensionBC),
}

impl AngularDomain {
    pub fn chart(&self) -> Chart {
        match self {
            AngularDomain::Plane => Chart::Plane,
            AngularDomain::Cone2D(_) => Chart::Cone,
        }
    }

    pub fn eigenvalue(&self, k: i64) -> f64 {
        match self {
            AngularDomain::Plane => k as f64,
            AngularDomain::Cone2D(bc) => bc.theta_over_pi() + 2.0 * k as f64,
        }
    }

    fn normalization(&self) -> f64 {
        1.0 / self.chart().length().sqrt()
    }

    fn basis(&self, k: i64, phi: f64) -> Complex64 {
        Complex64::from_polar(self.normalization(), self.eigenvalue(k) * phi)
    }
}

/// Truncated expansion `Σ_{|k|≤M} c_k b_k` in the eigenmodes of `L` or `ℓ(θ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularWaveFunction {
    pub domain: AngularDomain,
    order: usize,
    coefficients: Vec<Complex64>,
}

impl AngularWaveFunction {
    pub fn new(domain: AngularDomain, order: usize, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != 2 * order + 1 {
            return Err(Error::GridMismatch(format!(
                "order {order} needs {} coefficients, got {}",
                2 * order + 1,
                coefficients.len()
            )));
        }
        if coefficients.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::GridMismatch("non-finite coefficient".into()));
        }
        Ok(AngularWaveFunction { domain, order, coefficients })
    }

    pub fn zero(domain: AngularDomain, order: usize) -> Self {
        AngularWaveFunction {
            domain,
            order,
            coefficients: vec![Complex64::new(0.0, 0.0); 2 * order + 1],
        }
    }

    /// The single eigenmode `k`.
    pub fn mode(domain: AngularDomain, order: usize, k: i64) -> Self {
        let mut f = Self::zero(domain, order);
        *f.coefficient_mut(k) = Complex64::new(1.0, 0.0);
        f
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: i64) -> Complex64 {
        self.coefficients[(k + self.order as i64) as usize]
    }

    pub fn coefficient_mut(&mut self, k: i64) -> &mut Complex64 {
        &mut self.coefficients[(k + self.order as i64) as usize]
    }

    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let m = self.order as i64;
        (-m..=m).zip(self.coefficients.iter().copied())
    }

    /// Norm in `L²` of the chart with Lebesgue measure `dφ`.
    pub fn norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn evaluate(&self, phi: f64) -> Complex64 {
        self.modes().map(|(k, c)| c * self.domain.basis(k, phi)).sum()
    }

    /// Samples on an `n`-point midpoint grid of the chart; `n ≥ 2M + 2`.
    pub fn to_samples(&self, n: usize) -> Result<SampledWaveFunction> {
        check_grid(n, self.order)?;
        let chart = self.domain.chart();
        let values = (0..n).map(|j| self.evaluate(chart.angle(j, n))).collect();
        Ok(SampledWaveFunction {
            chart,
            n_angular: n,
            radial: None,
            values,
        })
    }

    /// Projects angular samples onto the modes `|k| ≤ order`.
    pub fn from_samples(samples: &SampledWaveFunction, domain: AngularDomain, order: usize) -> Result<Self> {
        if samples.radial.is_some() {
            return Err(Error::GridMismatch("expected angular-only samples".into()));
        }
        if samples.chart != domain.chart() {
            return Err(Error::GridMismatch("chart does not match the mode domain".into()));
        }
        let n = samples.n_angular;
        check_grid(n, order)?;
        let weight = domain.chart().length() / n as f64;
        let m = order as i64;
        let coefficients = (-m..=m)
            .map(|k| {
                samples
                    .values
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| domain.basis(k, domain.chart().angle(j, n)).conj() * v)
                    .sum::<Complex64>()
                    * weight
            })
            .collect();
        Ok(AngularWaveFunction { domain, order, coefficients })
    }
}

fn check_grid(n: usize, order: usize) -> Result<()> {
    if n < 2 * order + 2 {
        Err(Error::GridMismatch(format!(
            "grid of {n} points cannot resolve modes up to order {order}"
        )))
    } else {
        Ok(())
    }
}

/// Uniform midpoint radial grid `r_i = (i + ½)Δr`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub n: usize,
    pub dr: f64,
}

impl RadialGrid {
    pub fn new(n: usize, r_max: f64) -> Self {
        RadialGrid { n, dr: r_max / n as f64 }
    }

    pub fn radius(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dr
    }
}

/// Values on a uniform midpoint grid of a chart, optionally tensored with a
/// radial grid (row-major: one angular row per radius).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledWaveFunction {
    pub chart: Chart,
    pub n_angular: usize,
    pub radial: Option<RadialGrid>,
    pub values: Vec<Complex64>,
}

impl SampledWaveFunction {
    pub fn from_fn(chart: Chart, n_angular: usize, f: impl Fn(f64) -> Complex64) -> Self {
        SampledWaveFunction {
            chart,
            n_angular,
            radial: None,
            values: (0..n_angular).map(|j| f(chart.angle(j, n_angular))).collect(),
        }
    }

    pub fn from_fn_radial(chart: Chart, n_angular: usize, radial: RadialGrid, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(radial.n * n_angular);
        for i in 0..radial.n {
            let r = radial.radius(i);
            values.extend((0..n_angular).map(|j| f(r, chart.angle(j, n_angular))));
        }
        SampledWaveFunction {
            chart,
            n_angular,
            radial: Some(radial),
            values,
        }
    }

    pub fn angle(&self, j: usize) -> f64 {
        self.chart.angle(j, self.n_angular)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.values.chunks(self.n_angular)
    }

    fn radial_weight(&self, row: usize) -> f64 {
        match &self.radial {
            Some(g) => g.radius(row) * g.dr,
            None => 1.0,
        }
    }

    /// `‖Ψ‖²` in the configuration-space measure of the chart: `r dr dφ̃` on
    /// the plane, `2 r dr dφ` on the cone.
    pub fn norm_squared(&self) -> f64 {
        let dphi = self.chart.length() / self.n_angular as f64;
        let total: f64 = self
            .rows()
            .enumerate()
            .map(|(i, row)| self.radial_weight(i) * row.iter().map(|v| v.norm_sqr()).sum::<f64>())
            .sum();
        total * dphi * self.chart.measure_factor()
    }

    pub fn sup_distance(&self, other: &SampledWaveFunction) -> Result<f64> {
        if self.chart != other.chart || self.n_angular != other.n_angular || self.radial != other.radial {
            return Err(Error::GridMismatch("sample grids differ".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= factor);
        out
    }

    /// CSV rows `angle,re,im`, or `r,angle,re,im` with a radial grid.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        match &self.radial {
            None => {
                w.write_record(["angle", "re", "im"])?;
                for (j, v) in self.values.iter().enumerate() {
                    w.write_record([fmt17(self.angle(j)), fmt17(v.re), fmt17(v.im)])?;
                }
            }
            Some(g) => {
                w.write_record(["r", "angle", "re", "im"])?;
                for (i, row) in self.rows().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        w.write_record([fmt17(g.radius(i)), fmt17(self.angle(j)), fmt17(v.re), fmt17(v.im)])?;
                    }
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the angular-only CSV form written by [`write_csv`](Self::write_csv).
    pub fn read_csv<R: Read>(chart: Chart, reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let mut values = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            if rec.len() != 3 {
                return Err(Error::Parse(format!("expected 3 columns, found {}", rec.len())));
            }
            let num = |i: usize| rec[i].parse::<f64>().map_err(|e| Error::Parse(e.to_string()));
            let (angle, re, im) = (num(0)?, num(1)?, num(2)?);
            values.push((angle, Complex64::new(re, im)));
        }
        let n = values.len();
        if n == 0 {
            return Err(Error::Parse("no samples".into()));
        }
        for (j, (angle, _)) in values.iter().enumerate() {
            if (angle - chart.angle(j, n)).abs() > 1e-12 {
                return Err(Error::GridMismatch(format!("row {j}: angle {angle} is off the midpoint grid")));
            }
        }
        Ok(SampledWaveFunction {
            chart,
            n_angular: n,
            radial: None,
            values: values.into_iter().map(|(_, v)| v).collect(),
        })
    }
}

pub(crate) fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Multiplies mode `k` by `e^{−iϑμ_k}`.
pub fn rotate_spectral(psi: &AngularWaveFunction, angle: f64) -> AngularWaveFunction {
    let mut out = psi.clone();
    let m = psi.order as i64;
    for (k, c) in (-m..).zip(out.coefficients.iter_mut()) {
        *c *= Complex64::from_polar(1.0, -angle * psi.domain.eigenvalue(k));
    }
    out
}

/// Transports one row of `n` quasi-periodic samples by `shift` grid cells:
/// `out_j = ext(j − shift)` with `ext(i + n) = wrap · ext(i)`.
///
/// Whole-cell shifts are pure index moves, one `wrap` factor per boundary
/// crossing. Fractional shifts fall back to trigonometric interpolation of
/// the untwisted periodic sequence.
pub(crate) fn transport_row(values: &[Complex64], shift: f64, wrap: Complex64) -> Vec<Complex64> {
    let n = values.len();
    let cells = shift.round();
    if (shift - cells).abs() <= CELL_SNAP {
        let cells = cells as i64;
        let n_i = n as i64;
        return (0..n_i)
            .map(|j| {
                let src = j - cells;
                let crossings = src.div_euclid(n_i);
                let idx = src.rem_euclid(n_i) as usize;
                values[idx] * wrap_power(wrap, crossings)
            })
            .collect();
    }
    let beta = wrap.arg() / n as f64;
    let untwisted: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(j, &v)| v * Complex64::from_polar(1.0, -beta * j as f64))
        .collect();
    (0..n)
        .map(|j| {
            let x = j as f64 - shift;
            let g: Complex64 = untwisted
                .iter()
                .enumerate()
                .map(|(i, &u)| u * periodic_sinc(x - i as f64, n))
                .sum();
            g * Complex64::from_polar(1.0, beta * x)
        })
        .collect()
}

fn wrap_power(wrap: Complex64, p: i64) -> Complex64 {
    if wrap == Complex64::new(1.0, 0.0) {
        wrap
    } else if wrap == Complex64::new(-1.0, 0.0) {
        Complex64::new(if p.rem_euclid(2) == 0 { 1.0 } else { -1.0 }, 0.0)
    } else {
        wrap.powi(p as i32)
    }
}

/// Dirichlet kernel of the `n`-point trigonometric interpolant.
fn periodic_sinc(x: f64, n: usize) -> f64 {
    let nf = n as f64;
    let s = (PI * x / nf).sin();
    if s.abs() < 1e-14 {
        let k = (x / nf).round();
        return if n % 2 == 0 && (k as i64) % 2 != 0 { -1.0 } else { 1.0 };
    }
    if n % 2 == 0 {
        (PI * x).sin() / (nf * (PI * x / nf).tan())
    } else {
        (PI * x).sin() / (nf * s)
    }
}

/// `e^{−iϑℓ(θ)}` evaluated pointwise on cone samples: `Ψ(φ) ↦ Ψ(φ − ϑ)`
/// continued through the boundary gluing.
pub fn rotate_transport(psi: &SampledWaveFunction, angle: f64, bc: &ExtensionBC) -> Result<SampledWaveFunction> {
    bc.require_involutive()?;
    if psi.chart != Chart::Cone {
        return Err(Error::GridMismatch("rotate_transport acts on cone samples".into()));
    }
    let cells = angle / (psi.chart.length() / psi.n_angular as f64);
    let wrap = bc.boundary_phase();
    let mut out = psi.clone();
    out.values = psi.rows().flat_map(|row| transport_row(row, cells, wrap)).collect();
    Ok(out)
}

/// `e^{−iαL}` on plane samples: rotation by `α` with periodic wrap.
pub fn rotate_plane(psi: &SampledWaveFunction, angle: f64) -> Result<SampledWaveFunction> {
    if psi.chart != Chart::Plane {
        return Err(Error::GridMismatch("rotate_plane acts on plane samples".into()));
    }
    let cells = angle / (psi.chart.length() / psi.n_angular as f64);
    let mut out = psi.clone();
    out.values = psi
        .rows()
        .flat_map(|row| transport_row(row, cells, Complex64::new(1.0, 0.0)))
        .collect();
    Ok(out)
}

/// Sup-norm gap between the two rotation flows applied to a cone state.
pub fn flow_discrepancy(psi: &AngularWaveFunction, angle: f64, n: usize) -> Result<f64> {
    let AngularDomain::Cone2D(bc) = psi.domain else {
        return Err(Error::GridMismatch("flow comparison needs a cone state".into()));
    };
    let transported = rotate_transport(&psi.to_samples(n)?, angle, &bc)?;
    let spectral = rotate_spectral(psi, angle).to_samples(n)?;
    transported.sup_distance(&spectral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(domain: AngularDomain, order: usize, seed: u64) -> AngularWaveFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = (0..2 * order + 1)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        AngularWaveFunction::new(domain, order, coeffs).unwrap()
    }

    #[test]
    fn plane_spectrum_examples() {
        assert_eq!(plane_spectrum(0).eigenvalues, vec![0.0]);
        assert_eq!(plane_spectrum(2).eigenvalues, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(plane_spectrum(5).len(), 11);
    }

    #[test]
    fn cone_spectrum_examples() {
        assert_eq!(cone_spectrum(&ExtensionBC::new(0.0), 1).eigenvalues, vec![-2.0, 0.0, 2.0]);
        assert_eq!(cone_spectrum(&ExtensionBC::new(PI), 1).eigenvalues, vec![-1.0, 1.0, 3.0]);
        assert_eq!(cone_spectrum(&ExtensionBC::new(PI / 2.0), 0).eigenvalues, vec![0.5]);
        // every eigenvalue solves e^{iμπ} = e^{iθ}
        for theta in [0.0, 0.3, PI, 5.0] {
            let bc = ExtensionBC::new(theta);
            for mu in cone_spectrum(&bc, 4).eigenvalues {
                assert!((Complex64::from_polar(1.0, mu * PI) - bc.boundary_phase()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn involution_examples() {
        let r = involution_r(&ExtensionBC::new(0.0));
        assert_eq!((r.phase, r.involutive), (ExactPhase::ONE, true));
        let r = involution_r(&ExtensionBC::new(PI));
        assert_eq!((r.phase, r.involutive), (ExactPhase::MINUS_ONE, true));
        let r = involution_r(&ExtensionBC::new(PI / 2.0));
        assert_eq!(r.phase, ExactPhase::pi_times(1, 2));
        assert!(!r.involutive);
        assert!(matches!(r.check(), Err(Error::NotInvolutive(_))));
        assert!(ExtensionBC::new(TAU + PI).is_involutive());
    }

    #[test]
    fn total_j_examples() {
        let half = OffsetLambda::new(Rational64::new(1, 2));
        assert_eq!(total_j_spectrum(&ExtensionBC::new(0.0), OffsetLambda::integer(0), 1).eigenvalues, vec![-2.0, 0.0, 2.0]);
        assert_eq!(total_j_spectrum(&ExtensionBC::new(PI), OffsetLambda::integer(1), 1).eigenvalues, vec![0.0, 2.0, 4.0]);
        assert_eq!(total_j_spectrum(&ExtensionBC::new(0.0), half, 0).eigenvalues, vec![0.5]);
    }

    #[test]
    fn rotate_spectral_examples() {
        let psi = random_state(AngularDomain::Plane, 6, 1);
        assert_eq!(rotate_spectral(&psi, 0.0), psi);
        let full = rotate_spectral(&psi, TAU);
        for (a, b) in full.coefficients().iter().zip(psi.coefficients()) {
            assert!((a - b).norm() < 1e-12);
        }
        let cone = random_state(AngularDomain::Cone2D(ExtensionBC::antiperiodic()), 6, 2);
        let half = rotate_spectral(&cone, PI);
        for (a, b) in half.coefficients().iter().zip(cone.coefficients()) {
            assert!((a + b).norm() < 1e-12);
        }
        assert!((half.norm() - cone.norm()).abs() <= 1e-12 * cone.norm());
    }

    #[test]
    fn rotate_transport_examples() {
        for bc in [ExtensionBC::periodic(), ExtensionBC::antiperiodic()] {
            let psi = random_state(AngularDomain::Cone2D(bc), 8, 3).to_samples(64).unwrap();
            assert_eq!(rotate_transport(&psi, 0.0, &bc).unwrap(), psi);
            let turned = rotate_transport(&psi, PI, &bc).unwrap();
            let expected = psi.scaled(bc.boundary_phase());
            assert!(turned.sup_distance(&expected).unwrap() < 1e-14);
        }
        let bc = ExtensionBC::new(PI / 2.0);
        let psi = random_state(AngularDomain::Cone2D(bc), 2, 4).to_samples(8).unwrap();
        assert!(matches!(rotate_transport(&psi, 0.1, &bc), Err(Error::NotInvolutive(_))));
    }

    #[test]
    fn transforms_round_trip() {
        for domain in [AngularDomain::Plane, AngularDomain::Cone2D(ExtensionBC::antiperiodic())] {
            let psi = random_state(domain, 7, 5);
            let back = AngularWaveFunction::from_samples(&psi.to_samples(16).unwrap(), domain, 7).unwrap();
            for (a, b) in back.coefficients().iter().zip(psi.coefficients()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
        let psi = random_state(AngularDomain::Plane, 7, 5);
        assert!(matches!(psi.to_samples(15), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn norms_agree_across_representations() {
        let psi = random_state(AngularDomain::Plane, 5, 6);
        let s = psi.to_samples(32).unwrap();
        assert!((s.norm_squared() - psi.norm().powi(2)).abs() < 1e-12 * s.norm_squared());
        // the cone measure carries a factor 2 relative to dφ
        let cone = random_state(AngularDomain::Cone2D(ExtensionBC::periodic()), 5, 7);
        let s = cone.to_samples(32).unwrap();
        assert!((s.norm_squared() - 2.0 * cone.norm().powi(2)).abs() < 1e-12 * s.norm_squared());
    }

    #[test]
    fn flows_agree_on_grid_and_off_grid() {
        for bc in [ExtensionBC::periodic(), ExtensionBC::antiperiodic()] {
            let psi = random_state(AngularDomain::Cone2D(bc), 6, 8);
            for j in 0..64 {
                let angle = 4.0 * PI * j as f64 / 64.0;
                assert!(flow_discrepancy(&psi, angle, 128).unwrap() < FLOW_TOLERANCE);
            }
            for angle in [0.123, 1.7, -2.9, 7.77] {
                assert!(flow_discrepancy(&psi, angle, 64).unwrap() < 1e-9, "angle {angle}");
            }
        }
    }

    #[test]
    fn group_law_and_unitarity() {
        let bc = ExtensionBC::antiperiodic();
        let psi = random_state(AngularDomain::Cone2D(bc), 6, 9);
        let s = psi.to_samples(96).unwrap();
        let (a, b) = (0.37, 2.2);
        let two_steps = rotate_transport(&rotate_transport(&s, a, &bc).unwrap(), b, &bc).unwrap();
        let one_step = rotate_transport(&s, a + b, &bc).unwrap();
        assert!(two_steps.sup_distance(&one_step).unwrap() < 1e-10);
        assert!((two_steps.norm_squared() - s.norm_squared()).abs() <= 1e-12 * s.norm_squared());
        let spectral = rotate_spectral(&rotate_spectral(&psi, a), b);
        let direct = rotate_spectral(&psi, a + b);
        for (x, y) in spectral.coefficients().iter().zip(direct.coefficients()) {
            assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn full_turn_is_identity_only_for_involutive_extensions() {
        // e^{2πiℓ(θ)} = e^{2iθ}
        for (theta, identity) in [(0.0, true), (PI, true), (PI / 2.0, false), (1.0, false)] {
            let psi = random_state(AngularDomain::Cone2D(ExtensionBC::new(theta)), 4, 10);
            let turned = rotate_spectral(&psi, -TAU);
            let factor = Complex64::from_polar(1.0, 2.0 * theta);
            let is_identity = turned.coefficients().iter().zip(psi.coefficients()).all(|(a, b)| (a - b).norm() < 1e-12);
            assert_eq!(is_identity, identity);
            for (a, b) in turned.coefficients().iter().zip(psi.coefficients()) {
                assert!((a - b * factor).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn csv_round_trip() {
        let psi = random_state(AngularDomain::Cone2D(ExtensionBC::periodic()), 3, 11).to_samples(8).unwrap();
        let mut buf = Vec::new();
        psi.write_csv(&mut buf).unwrap();
        let back = SampledWaveFunction::read_csv(Chart::Cone, buf.as_slice()).unwrap();
        assert_eq!(back, psi);
        assert!(SampledWaveFunction::read_csv(Chart::Plane, buf.as_slice()).is_err());
    }

    #[test]
    fn spectrum_json() {
        assert_eq!(plane_spectrum(1).to_json_array(), "[-1.0,0.0,1.0]");
    }
}

//! Configuration spaces of two identical particles.
//!
//! A two-particle configuration splits into its centre of mass and a
//! relative vector taken modulo `v ~ −v`. The relative space is charted by
//! the closed half plane (2D) or half space (3D) `x ≥ 0`, with boundary
//! points identified: `(r, −π/2) ~ (r, π/2)` in the plane and
//! `(0, y, z) ~ (0, −y, −z)` in space.
//!
//! Chart convention: the canonical representative of `±v` is the one whose
//! first nonzero Cartesian coordinate is positive. In polar terms that is
//! `φ ∈ (−π/2, π/2]`, with boundary points stored at `φ = +π/2`.
//!
//! Exchange paths wind counterclockwise for positive half-turn counts.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::{self, Debug};
use std::io::Read;

use num_rational::Rational64;
use num_traits::{Num, Signed};

use crate::error::{Error, Result};
use crate::phase::ExactPhase;

/// Scalar type for configuration coordinates: `f64`, or `Rational64` for
/// exact round trips.
pub trait Coordinate: Copy + PartialOrd + Num + Signed + Debug {}

impl Coordinate for f64 {}
impl Coordinate for Rational64 {}

fn half<T: Coordinate>() -> T {
    T::one() / (T::one() + T::one())
}

/// An ordered tuple of pairwise distinct points in `ℝˢ`, `s ∈ {2, 3}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistinguishableConfig<T> {
    dim: usize,
    points: Vec<Vec<T>>,
}

impl<T: Coordinate> DistinguishableConfig<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn validate_config<T: Coordinate>(points: Vec<Vec<T>>, s: usize) -> Result<DistinguishableConfig<T>> {
    if s != 2 && s != 3 {
        return Err(Error::UnsupportedDimension(s));
    }
    if points.is_empty() {
        return Err(Error::Config("a configuration needs at least one point".into()));
    }
    if let Some(p) = points.iter().find(|p| p.len() != s) {
        return Err(Error::DimensionMismatch { expected: s, found: p.len() });
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::CoincidentPoints(i, j));
            }
        }
    }
    Ok(DistinguishableConfig { dim: s, points })
}

/// Canonical representative of `±v`: the first nonzero coordinate is positive.
pub fn fold_vector<T: Coordinate>(v: &[T]) -> Result<Vec<T>> {
    match v.iter().find(|c| !c.is_zero()) {
        None => Err(Error::ZeroVector),
        Some(c) if c.is_negative() => Ok(v.iter().map(|&c| -c).collect()),
        Some(_) => Ok(v.to_vec()),
    }
}

/// Centre of mass and folded relative vector of a two-particle configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ComSplit<T> {
    pub com: Vec<T>,
    pub relative: Vec<T>,
}

impl<T: Coordinate> ComSplit<T> {
    /// The unordered pair `com ± relative/2`, larger representative first.
    pub fn reconstruct(&self) -> [Vec<T>; 2] {
        let h = half::<T>();
        let plus = self.com.iter().zip(&self.relative).map(|(&c, &r)| c + r * h).collect();
        let minus = self.com.iter().zip(&self.relative).map(|(&c, &r)| c - r * h).collect();
        [plus, minus]
    }
}

impl ComSplit<f64> {
    pub fn chart_point(&self) -> Result<ChartPoint> {
        chart_fold(&self.relative)
    }
}

pub fn com_split<T: Coordinate>(config: &DistinguishableConfig<T>) -> Result<ComSplit<T>> {
    if config.len() != 2 {
        return Err(Error::NotTwoParticles(config.len()));
    }
    let (a, b) = (&config.points[0], &config.points[1]);
    let h = half::<T>();
    let com = a.iter().zip(b).map(|(&x, &y)| (x + y) * h).collect();
    let diff: Vec<T> = a.iter().zip(b).map(|(&x, &y)| x - y).collect();
    Ok(ComSplit { com, relative: fold_vector(&diff)? })
}

/// True when the unordered pairs `{a₀, a₁}` and `{b₀, b₁}` coincide.
pub fn same_unordered_pair<T: PartialEq>(a: &[Vec<T>; 2], b: &[Vec<T>; 2]) -> bool {
    (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0])
}

/// A point of the planar relative cone in its half-plane chart.
#[derive(Debug, Clone, Copy)]
pub struct ConePoint2D {
    pub r: f64,
    pub phi: f64,
}

impl ConePoint2D {
    pub fn is_boundary(&self) -> bool {
        (self.phi.abs() - FRAC_PI_2).abs() < 1e-15
    }

    pub fn to_vector(&self) -> [f64; 2] {
        [self.r * self.phi.cos(), self.r * self.phi.sin()]
    }

    /// Equality on the cone: `(r, −π/2)` and `(r, π/2)` are one point.
    pub fn same_point(&self, other: &ConePoint2D, tol: f64) -> bool {
        if (self.r - other.r).abs() > tol * self.r.max(1.0) {
            return false;
        }
        (self.is_boundary() && other.is_boundary()) || (self.phi - other.phi).abs() <= tol
    }
}

/// Cylinder coordinates on the half-space chart `x ≥ 0`.
#[derive(Debug, Clone, Copy)]
pub struct HalfSpacePoint3D {
    pub rho: f64,
    pub phi: f64,
    pub z: f64,
}

impl HalfSpacePoint3D {
    pub fn is_boundary(&self) -> bool {
        self.rho == 0.0 || (self.phi.abs() - FRAC_PI_2).abs() < 1e-15
    }

    pub fn to_vector(&self) -> [f64; 3] {
        [self.rho * self.phi.cos(), self.rho * self.phi.sin(), self.z]
    }

    /// Equality on the relative space: `(ρ, π/2, z) ~ (ρ, −π/2, −z)`.
    pub fn same_point(&self, other: &HalfSpacePoint3D, tol: f64) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0);
        if !close(self.rho, other.rho) {
            return false;
        }
        if close(self.z, other.z) && (self.rho == 0.0 || (self.phi - other.phi).abs() <= tol) {
            return true;
        }
        let both_boundary = self.is_boundary() && other.is_boundary();
        both_boundary && close(self.z, -other.z) && (self.rho == 0.0 || (self.phi + other.phi).abs() <= tol)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum ChartPoint {
    Cone(ConePoint2D),
    HalfSpace(HalfSpacePoint3D),
}

impl ChartPoint {
    pub fn to_vector(&self) -> Vec<f64> {
        match self {
            ChartPoint::Cone(p) => p.to_vector().to_vec(),
            ChartPoint::HalfSpace(p) => p.to_vector().to_vec(),
        }
    }

    pub fn same_point(&self, other: &ChartPoint, tol: f64) -> bool {
        match (self, other) {
            (ChartPoint::Cone(a), ChartPoint::Cone(b)) => a.same_point(b, tol),
            (ChartPoint::HalfSpace(a), ChartPoint::HalfSpace(b)) => a.same_point(b, tol),
            _ => false,
        }
    }
}

/// Tuples with 17 significant digits.
impl fmt::Display for ChartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartPoint::Cone(p) => write!(f, "({:.16e}, {:.16e})", p.r, p.phi),
            ChartPoint::HalfSpace(p) => write!(f, "({:.16e}, {:.16e}, {:.16e})", p.rho, p.phi, p.z),
        }
    }
}

/// Chart representative of the class `{v, −v}` for a nonzero 2- or 3-vector.
pub fn chart_fold(vector: &[f64]) -> Result<ChartPoint> {
    if vector.iter().any(|c| !c.is_finite()) {
        return Err(Error::Parse("non-finite coordinate".into()));
    }
    let v = fold_vector(vector)?;
    match v.len() {
        2 => {
            let (x, y) = (v[0], v[1]);
            let phi = if x == 0.0 { FRAC_PI_2 } else { y.atan2(x) };
            Ok(ChartPoint::Cone(ConePoint2D { r: x.hypot(y), phi }))
        }
        3 => {
            let (x, y, z) = (v[0], v[1], v[2]);
            let phi = if x == 0.0 { FRAC_PI_2 } else { y.atan2(x) };
            Ok(ChartPoint::HalfSpace(HalfSpacePoint3D { rho: x.hypot(y), phi, z }))
        }
        n => Err(Error::UnsupportedDimension(n)),
    }
}

/// A sampled loop of the planar relative vector, closed in the
/// configuration space: the last sample equals the first up to sign.
#[derive(Debug, Clone, PartialEq)]
pub struct ExchangePath {
    samples: Vec<[f64; 2]>,
}

const CLOSURE_TOL: f64 = 1e-9;

fn close_to(a: [f64; 2], b: [f64; 2]) -> bool {
    let scale = a[0].hypot(a[1]).max(b[0].hypot(b[1])).max(1.0);
    (a[0] - b[0]).hypot(a[1] - b[1]) <= CLOSURE_TOL * scale
}

fn negate(p: [f64; 2]) -> [f64; 2] {
    [-p[0], -p[1]]
}

impl ExchangePath {
    pub fn new(samples: Vec<[f64; 2]>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::AmbiguousWinding("empty path".into()));
        }
        if let Some(i) = samples.iter().position(|p| p[0] == 0.0 && p[1] == 0.0) {
            return Err(Error::AmbiguousWinding(format!("sample {i} hits the excluded origin")));
        }
        let (first, last) = (samples[0], *samples.last().unwrap());
        if !close_to(first, last) && !close_to(negate(first), last) {
            return Err(Error::AmbiguousWinding("path is not closed up to exchange".into()));
        }
        Ok(ExchangePath { samples })
    }

    /// Circle of radius `radius` starting at angle `start`, sweeping `half_turns·π`
    /// with `per_half_turn` steps per half turn.
    pub fn circle(radius: f64, start: f64, half_turns: i64, per_half_turn: usize) -> Self {
        let steps = (half_turns.unsigned_abs() as usize * per_half_turn).max(1);
        let sweep = half_turns as f64 * PI;
        let samples = (0..=steps)
            .map(|i| {
                let a = start + sweep * i as f64 / steps as f64;
                [radius * a.cos(), radius * a.sin()]
            })
            .collect();
        ExchangePath { samples }
    }

    pub fn samples(&self) -> &[[f64; 2]] {
        &self.samples
    }

    pub fn reversed(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.reverse();
        ExchangePath { samples }
    }

    /// Follows `self` by `other`, flipping `other` if it starts at the
    /// antipode of where `self` ends.
    pub fn concat(&self, other: &ExchangePath) -> Result<Self> {
        let end = *self.samples.last().unwrap();
        let start = other.samples[0];
        let tail: Vec<[f64; 2]> = if close_to(end, start) {
            other.samples[1..].to_vec()
        } else if close_to(end, negate(start)) {
            other.samples[1..].iter().map(|&p| negate(p)).collect()
        } else {
            return Err(Error::AmbiguousWinding("paths do not join".into()));
        };
        let mut samples = self.samples.clone();
        samples.extend(tail);
        ExchangePath::new(samples)
    }
}

/// Number of half turns of the relative vector along the path
/// (counterclockwise positive). Odd values exchange the particles.
pub fn exchange_winding(path: &ExchangePath) -> Result<i64> {
    let s = &path.samples;
    let min_radius = s.iter().map(|p| p[0].hypot(p[1])).fold(f64::INFINITY, f64::min);
    let mut total = 0.0;
    for (i, w) in s.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let step = (b[0] - a[0]).hypot(b[1] - a[1]);
        if step >= min_radius {
            return Err(Error::AmbiguousWinding(format!(
                "step {i} has length {step} ≥ minimum radius {min_radius}"
            )));
        }
        let cross = a[0] * b[1] - a[1] * b[0];
        let dot = a[0] * b[0] + a[1] * b[1];
        total += cross.atan2(dot);
    }
    let half_turns = total / PI;
    let w = half_turns.round();
    if (half_turns - w).abs() > 1e-6 {
        return Err(Error::AmbiguousWinding(format!("non-integer half-turn count {half_turns}")));
    }
    let w = w as i64;
    let (first, last) = (s[0], *s.last().unwrap());
    let expected = if w % 2 == 0 { first } else { negate(first) };
    if !close_to(expected, last) {
        return Err(Error::AmbiguousWinding("endpoint inconsistent with winding parity".into()));
    }
    Ok(w)
}

/// κ^w: the statistics phase picked up along `w` half turns.
pub fn holonomy_phase(w: i64, kappa: ExactPhase) -> ExactPhase {
    kappa.pow(w)
}

/// Reads an exchange path from CSV, one `x,y` sample per line. A non-numeric
/// first line is treated as a header.
pub fn read_path_csv<R: Read>(reader: R) -> Result<ExchangePath> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut samples = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: rec.len() });
        }
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(v) => samples.push([v[0], v[1]]),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(Error::Parse(format!("line {}: {e}", i + 1))),
        }
    }
    ExchangePath::new(samples)
}

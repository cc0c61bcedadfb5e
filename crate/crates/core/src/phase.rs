//! Exact phase arithmetic for spins, statistics phases and the exchange
//! involution.
//!
//! Every phase handled here has the form `e^{iπq}` with `q` rational, so
//! equality tests are exact and the two-out-of-three laws can be checked
//! exhaustively over rational parameter grids without any rounding.

use std::fmt;
use std::ops::{Mul, MulAssign};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A unit-modulus phase `e^{iπ·(numerator/denominator)}`.
///
/// The exponent is kept reduced to `[0, 2)` so that two phases are equal
/// exactly when their fields are equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ExactPhase {
    numerator: i64,
    denominator: i64,
}

impl ExactPhase {
    pub const ONE: ExactPhase = ExactPhase { numerator: 0, denominator: 1 };
    pub const MINUS_ONE: ExactPhase = ExactPhase { numerator: 1, denominator: 1 };

    /// `e^{iπ·fraction}` for an arbitrary rational `fraction`.
    pub fn from_pi_fraction(fraction: Rational64) -> Self {
        let num = *fraction.numer() as i128;
        let den = *fraction.denom() as i128;
        Self::from_parts(num, den)
    }

    /// `e^{iπ·p/q}`.
    pub fn pi_times(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        Self::from_parts(p as i128, q as i128)
    }

    /// `e^{2πiσ}`, the phase a spin-σ particle picks up under a full turn.
    pub fn full_turn(spin: SpinLabel) -> Self {
        Self::pi_times(spin.twice_spin, 1)
    }

    fn from_parts(num: i128, den: i128) -> Self {
        debug_assert!(den > 0);
        let reduced = num.rem_euclid(2 * den);
        let g = reduced.gcd(&den);
        let (n, d) = if reduced == 0 { (0, 1) } else { (reduced / g, den / g) };
        ExactPhase {
            numerator: n as i64,
            denominator: d as i64,
        }
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    /// The exponent `q ∈ [0, 2)` with phase `e^{iπq}`.
    pub fn exponent(&self) -> Rational64 {
        Rational64::new_raw(self.numerator, self.denominator)
    }

    pub fn is_one(&self) -> bool {
        self.numerator == 0
    }

    /// `Some(±1)` when the phase is real.
    pub fn real_sign(&self) -> Option<i64> {
        match (self.numerator, self.denominator) {
            (0, 1) => Some(1),
            (1, 1) => Some(-1),
            _ => None,
        }
    }

    pub fn pow(self, k: i64) -> Self {
        let modulus = 2 * self.denominator as i128;
        let k = (k as i128).rem_euclid(modulus);
        Self::from_parts(self.numerator as i128 * k, self.denominator as i128)
    }

    pub fn inv(self) -> Self {
        Self::from_parts(-(self.numerator as i128), self.denominator as i128)
    }

    pub fn to_complex(self) -> Complex64 {
        match self.real_sign() {
            Some(s) => Complex64::new(s as f64, 0.0),
            None => {
                let angle = std::f64::consts::PI * self.numerator as f64 / self.denominator as f64;
                Complex64::from_polar(1.0, angle)
            }
        }
    }
}

impl Mul for ExactPhase {
    type Output = ExactPhase;

    fn mul(self, rhs: ExactPhase) -> ExactPhase {
        let den = self.denominator.lcm(&rhs.denominator) as i128;
        let a = self.numerator as i128 * (den / self.denominator as i128);
        let b = rhs.numerator as i128 * (den / rhs.denominator as i128);
        Self::from_parts(a + b, den)
    }
}

impl MulAssign for ExactPhase {
    fn mul_assign(&mut self, rhs: ExactPhase) {
        *self = *self * rhs;
    }
}

impl Default for ExactPhase {
    fn default() -> Self {
        ExactPhase::ONE
    }
}

impl fmt::Debug for ExactPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPhase({})", self)
    }
}

impl fmt::Display for ExactPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.numerator, self.denominator) {
            (0, 1) => write!(f, "1"),
            (1, 1) => write!(f, "-1"),
            (n, 1) => write!(f, "e^(iπ·{})", n),
            (n, d) => write!(f, "e^(iπ·{}/{})", n, d),
        }
    }
}

impl From<ExactPhase> for String {
    fn from(p: ExactPhase) -> String {
        if p.denominator == 1 {
            format!("{}", p.numerator)
        } else {
            format!("{}/{}", p.numerator, p.denominator)
        }
    }
}

impl TryFrom<String> for ExactPhase {
    type Error = Error;

    /// Parses the exponent in units of π, e.g. `"3/2"`.
    fn try_from(s: String) -> Result<Self> {
        Ok(ExactPhase::from_pi_fraction(parse_rational(&s)?))
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(p, q));
    }
    if let Ok(n) = s.parse::<i64>() {
        return Ok(Rational64::from_integer(n));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').ok_or_else(bad)?;
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let scale = 10i64.pow(frac.len() as u32);
    let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let r = Rational64::new(int * scale + frac, scale);
    Ok(if neg { -r } else { r })
}

pub fn format_rational(r: Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Spin σ = `twice_spin / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinLabel {
    pub twice_spin: i64,
}

impl SpinLabel {
    pub fn new(twice_spin: i64) -> Self {
        SpinLabel { twice_spin }
    }

    pub fn from_ratio(sigma: Rational64) -> Result<Self> {
        let twice = sigma * 2;
        if !twice.is_integer() {
            return Err(Error::InvalidSpin(format_rational(sigma)));
        }
        Ok(SpinLabel { twice_spin: twice.to_integer() })
    }

    pub fn value(&self) -> Rational64 {
        Rational64::new(self.twice_spin, 2)
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.value()))
    }
}

/// The additive constant λ in the relative total angular momentum `ℓ + λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OffsetLambda(pub Rational64);

impl OffsetLambda {
    pub fn new(value: Rational64) -> Self {
        OffsetLambda(value)
    }

    pub fn integer(value: i64) -> Self {
        OffsetLambda(Rational64::from_integer(value))
    }

    /// Constructor for three-dimensional use, where λ must be an integer.
    pub fn for_3d(value: Rational64) -> Result<Self> {
        let lambda = OffsetLambda(value);
        lambda.require_integer()?;
        Ok(lambda)
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }

    pub fn require_integer(&self) -> Result<i64> {
        if self.0.is_integer() {
            Ok(self.0.to_integer())
        } else {
            Err(Error::NonIntegerOffset(format_rational(self.0)))
        }
    }

    pub fn as_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl fmt::Display for OffsetLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(self.0))
    }
}

/// Value of the involution `R` in two dimensions, or the scalar `s` in
/// `R_z = s·P_z` in three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InvolutionSign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl InvolutionSign {
    pub fn value(self) -> i64 {
        match self {
            InvolutionSign::Plus => 1,
            InvolutionSign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(InvolutionSign::Plus),
            -1 => Some(InvolutionSign::Minus),
            _ => None,
        }
    }

    pub fn phase(self) -> ExactPhase {
        match self {
            InvolutionSign::Plus => ExactPhase::ONE,
            InvolutionSign::Minus => ExactPhase::MINUS_ONE,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            InvolutionSign::Plus => InvolutionSign::Minus,
            InvolutionSign::Minus => InvolutionSign::Plus,
        }
    }
}

impl Mul for InvolutionSign {
    type Output = InvolutionSign;

    fn mul(self, rhs: InvolutionSign) -> InvolutionSign {
        if self == rhs {
            InvolutionSign::Plus
        } else {
            InvolutionSign::Minus
        }
    }
}

impl fmt::Display for InvolutionSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionSign::Plus => "+1",
            InvolutionSign::Minus => "-1",
        })
    }
}

/// Eigenvalue of the z-reflection `P_z` labelling the sectors `H₊` and `H₋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SectorLabel {
    #[serde(rename = "+")]
    Even,
    #[serde(rename = "-")]
    Odd,
}

impl SectorLabel {
    pub fn sign(self) -> InvolutionSign {
        match self {
            SectorLabel::Even => InvolutionSign::Plus,
            SectorLabel::Odd => InvolutionSign::Minus,
        }
    }

    pub fn from_sign(sign: InvolutionSign) -> Self {
        match sign {
            InvolutionSign::Plus => SectorLabel::Even,
            InvolutionSign::Minus => SectorLabel::Odd,
        }
    }

    pub fn other(self) -> Self {
        match self {
            SectorLabel::Even => SectorLabel::Odd,
            SectorLabel::Odd => SectorLabel::Even,
        }
    }
}

impl fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SectorLabel::Even => "+",
            SectorLabel::Odd => "-",
        })
    }
}

/// κ = R·e^{iπλ}.
pub fn statistics_phase_2d(lambda: OffsetLambda, r: InvolutionSign) -> ExactPhase {
    r.phase() * ExactPhase::from_pi_fraction(lambda.value())
}

/// κ = s·e^{iπλ}, always ±1. Rejects non-integer λ.
pub fn statistics_phase_3d(lambda: OffsetLambda, s: InvolutionSign) -> Result<ExactPhase> {
    let lambda = lambda.require_integer()?;
    Ok(s.phase() * ExactPhase::pi_times(lambda, 1))
}

/// The spin-statistics connection `e^{2πiσ} = κ`.
pub fn ssc_holds(sigma: SpinLabel, kappa: ExactPhase) -> bool {
    ExactPhase::full_turn(sigma) == kappa
}

/// A triple of conditions of which any two are claimed to imply the third.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConditionTriple {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
}

impl ConditionTriple {
    pub fn new(c1: bool, c2: bool, c3: bool) -> Self {
        ConditionTriple { c1, c2, c3 }
    }

    pub fn as_array(&self) -> [bool; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn count_true(&self) -> usize {
        self.as_array().iter().filter(|&&c| c).count()
    }

    /// Negates condition `index` (0, 1 or 2).
    pub fn negated(mut self, index: usize) -> Self {
        match index {
            0 => self.c1 = !self.c1,
            1 => self.c2 = !self.c2,
            2 => self.c3 = !self.c3,
            _ => panic!("condition index {index} out of range"),
        }
        self
    }

    pub fn two_imply_third(&self) -> bool {
        two_imply_third(*self)
    }
}

/// True unless exactly two of the three conditions hold.
pub fn two_imply_third(conditions: ConditionTriple) -> bool {
    conditions.count_true() != 2
}

fn is_even_integer(r: Rational64) -> bool {
    r.is_integer() && r.to_integer().is_even()
}

fn is_odd_integer(r: Rational64) -> bool {
    r.is_integer() && r.to_integer().is_odd()
}

/// The planar conditions: (1) `e^{iπĵ} = e^{2πiσ}`, (2) `λ ∈ 2σ + 2ℤ`,
/// (3) `R = 1`.
pub fn lemma3_conditions(lambda: OffsetLambda, sigma: SpinLabel, r: InvolutionSign) -> ConditionTriple {
    let kappa = statistics_phase_2d(lambda, r);
    ConditionTriple {
        c1: kappa == ExactPhase::full_turn(sigma),
        c2: is_even_integer(lambda.value() - sigma.value() * 2),
        c3: r == InvolutionSign::Plus,
    }
}

/// The sector-restricted conditions in three dimensions.
///
/// On `H₊`: κ = e^{2πiσ}, `λ ∈ 2σ + 2ℤ`, `R_z|H₊ = 1`.
/// On `H₋`: κ = −e^{2πiσ}, `λ ∈ 2σ + 1 + 2ℤ`, `R_z|H₋ = −1`.
/// With `R_z = s·P_z` the restricted involution is `s·(sector sign)`, so
/// the third condition reads `s = +1` in both sectors.
pub fn lemma6_conditions(
    lambda: OffsetLambda,
    sigma: SpinLabel,
    s: InvolutionSign,
    sector: SectorLabel,
) -> Result<ConditionTriple> {
    let kappa = statistics_phase_3d(lambda, s)?;
    let turn = ExactPhase::full_turn(sigma);
    let diff = lambda.value() - sigma.value() * 2;
    let restricted_r = s * sector.sign();
    Ok(match sector {
        SectorLabel::Even => ConditionTriple {
            c1: kappa == turn,
            c2: is_even_integer(diff),
            c3: restricted_r == InvolutionSign::Plus,
        },
        SectorLabel::Odd => ConditionTriple {
            c1: kappa == ExactPhase::MINUS_ONE * turn,
            c2: is_odd_integer(diff),
            c3: restricted_r == InvolutionSign::Minus,
        },
    })
}

/// Statistics phases for a rotation of `n` identical particles about their
/// centre of mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidPhases {
    pub relative: ExactPhase,
    pub center_of_mass: ExactPhase,
    pub total: ExactPhase,
}

/// `(κ^{n(n−1)}, κ^n, κ^{n²})`.
pub fn braid_phases(n: u32, kappa: ExactPhase) -> BraidPhases {
    assert!(n >= 1, "need at least one particle");
    let n = n as i64;
    BraidPhases {
        relative: kappa.pow(n * (n - 1)),
        center_of_mass: kappa.pow(n),
        total: kappa.pow(n * n),
    }
}

/// `λ − 2σ ∈ ℤ` and `(−1)^{λ−2σ} = R`.
pub fn theorem1_arithmetic_criterion(lambda: OffsetLambda, sigma: SpinLabel, r: InvolutionSign) -> bool {
    let diff = lambda.value() - sigma.value() * 2;
    if !diff.is_integer() {
        return false;
    }
    let parity = if diff.to_integer().is_even() { 1 } else { -1 };
    parity == r.value()
}

/// The admissible shift ν = λ − 2σ, when it is an integer.
pub fn intertwiner_shift(lambda: OffsetLambda, sigma: SpinLabel) -> Option<i64> {
    let diff = lambda.value() - sigma.value() * 2;
    diff.is_integer().then(|| diff.to_integer())
}

pub(crate) fn rational_to_f64(r: Rational64) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    *r.numer() as f64 / *r.denom() as f64
}

//! Parameter sweeps over the verdicts, their JSON report document, and CSV
//! tables projected from it.
//!
//! A campaign is deterministic: the same configuration and seed give a
//! byte-identical report regardless of the number of workers.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intertwine::{angle_grid, format_theta, random_band_limited, theorem1_verdict, VerdictOptions};
use crate::phase::{
    braid_phases, format_rational, lemma3_conditions, lemma6_conditions, parse_rational, ConditionTriple,
    ExactPhase, InvolutionSign, OffsetLambda, SectorLabel, SpinLabel,
};
use crate::report::VerificationReport;
use crate::spectral2d::{flow_discrepancy, AngularDomain, ExtensionBC, FLOW_TOLERANCE, SPECTRAL_TOLERANCE};
use crate::spectral3d::{bound_state_classify, theorem4_verdict, ylm_parity_check, BoundStateLabel, Exchange};

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

const YLM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "verify-2d")]
    Verify2d,
    #[serde(rename = "verify-3d")]
    Verify3d,
    #[serde(rename = "lemma-tables")]
    LemmaTables,
    #[serde(rename = "bound-states")]
    BoundStates,
    #[serde(rename = "braid-phases")]
    BraidPhases,
    #[serde(rename = "flow-crosscheck")]
    FlowCrosscheck,
}

impl Mode {
    pub const ALL: [Mode; 6] = [
        Mode::Verify2d,
        Mode::Verify3d,
        Mode::LemmaTables,
        Mode::BoundStates,
        Mode::BraidPhases,
        Mode::FlowCrosscheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Verify2d => "verify-2d",
            Mode::Verify3d => "verify-3d",
            Mode::LemmaTables => "lemma-tables",
            Mode::BoundStates => "bound-states",
            Mode::BraidPhases => "braid-phases",
            Mode::FlowCrosscheck => "flow-crosscheck",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown mode {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

/// A grid entry: an integer, a decimal, or a string such as `"-3/4"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridValue {
    Int(i64),
    Float(f64),
    Text(String),
}

impl GridValue {
    pub fn rational(&self) -> Result<Rational64> {
        match self {
            GridValue::Int(i) => Ok(Rational64::from_integer(*i)),
            GridValue::Float(f) => parse_rational(&f.to_string()),
            GridValue::Text(s) => parse_rational(s),
        }
        .map_err(|e| Error::Config(format!("grid value {self:?}: {e}")))
    }
}

impl From<Rational64> for GridValue {
    fn from(r: Rational64) -> Self {
        if r.is_integer() {
            GridValue::Int(r.to_integer())
        } else {
            GridValue::Text(format_rational(r))
        }
    }
}

/// Campaign settings as read from a JSON file. Unset fields take the
/// defaults of the mode.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub mode: Option<Mode>,
    pub lambda: Option<Vec<GridValue>>,
    pub sigma: Option<Vec<GridValue>>,
    /// Extension angles as multiples of π.
    pub theta: Option<Vec<GridValue>>,
    pub s: Option<Vec<i64>>,
    pub order: Option<usize>,
    pub grid: Option<usize>,
    pub angles: Option<usize>,
    pub test_functions: Option<usize>,
    pub l_max: Option<u32>,
    pub n_max: Option<u32>,
    pub q_max: Option<i64>,
    pub seed: Option<u64>,
    pub tolerance_spectral: Option<f64>,
    pub tolerance_flow: Option<f64>,
    pub workers: Option<usize>,
    /// Negates one condition of each triple before the check. Negative control only.
    #[serde(skip)]
    pub mutate_condition: Option<usize>,
}

impl CampaignConfig {
    pub fn for_mode(mode: Mode) -> Self {
        CampaignConfig {
            mode: Some(mode),
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    fn resolve(&self) -> Result<Resolved> {
        let mode = self.mode.ok_or_else(|| Error::Config("no mode given".into()))?;
        let quarters = |lo: i64, hi: i64| (lo..=hi).map(|k| Rational64::new(k, 4)).collect::<Vec<_>>();
        let halves = |lo: i64, hi: i64| (lo..=hi).map(|k| Rational64::new(k, 2)).collect::<Vec<_>>();
        let (lambda_default, sigma_default) = match mode {
            Mode::Verify2d => (halves(0, 8), halves(0, 2)),
            Mode::Verify3d => (halves(-4, 4).into_iter().filter(|r| r.is_integer()).collect(), halves(0, 2)),
            _ => (quarters(-16, 16), halves(-4, 4)),
        };
        let rationals = |given: &Option<Vec<GridValue>>, default: Vec<Rational64>| -> Result<Vec<Rational64>> {
            match given {
                Some(values) => values.iter().map(GridValue::rational).collect(),
                None => Ok(default),
            }
        };
        let lambda = rationals(&self.lambda, lambda_default)?;
        let sigma = rationals(&self.sigma, sigma_default)?
            .into_iter()
            .map(SpinLabel::from_ratio)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Config(e.to_string()))?;
        let theta = rationals(&self.theta, vec![Rational64::from_integer(0), Rational64::from_integer(1)])?;
        let s = self
            .s
            .clone()
            .unwrap_or_else(|| vec![1, -1])
            .into_iter()
            .map(|v| InvolutionSign::from_value(v).ok_or_else(|| Error::Config(format!("s must be ±1, got {v}"))))
            .collect::<Result<Vec<_>>>()?;

        let flow = mode == Mode::FlowCrosscheck;
        let order = self.order.unwrap_or(16);
        let grid = self.grid.unwrap_or(128);
        let options = VerdictOptions {
            order,
            grid,
            angles: self.angles.unwrap_or(if flow { 64 } else { 16 }),
            test_functions: self.test_functions.unwrap_or(if flow { 20 } else { 3 }),
            seed: self.seed.unwrap_or(0),
            tolerance_spectral: self.tolerance_spectral.unwrap_or(SPECTRAL_TOLERANCE),
            tolerance_flow: self.tolerance_flow.unwrap_or(FLOW_TOLERANCE),
            include_spectra: true,
        };
        let resolved = Resolved {
            mode,
            lambda,
            sigma,
            theta,
            s,
            options,
            l_max: self.l_max.unwrap_or(3),
            n_max: self.n_max.unwrap_or(10),
            q_max: self.q_max.unwrap_or(8),
            workers: self.workers,
            mutate_condition: self.mutate_condition,
        };
        resolved.validate()?;
        Ok(resolved)
    }
}

#[derive(Debug, Clone)]
struct Resolved {
    mode: Mode,
    lambda: Vec<Rational64>,
    sigma: Vec<SpinLabel>,
    theta: Vec<Rational64>,
    s: Vec<InvolutionSign>,
    options: VerdictOptions,
    l_max: u32,
    n_max: u32,
    q_max: i64,
    workers: Option<usize>,
    mutate_condition: Option<usize>,
}

impl Resolved {
    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.into()));
        let o = &self.options;
        let grids_used = match self.mode {
            Mode::Verify2d => vec![self.lambda.len(), self.sigma.len(), self.theta.len()],
            Mode::Verify3d => vec![self.lambda.len(), self.sigma.len(), self.s.len()],
            Mode::LemmaTables => vec![self.lambda.len(), self.sigma.len(), self.s.len()],
            Mode::FlowCrosscheck => vec![self.theta.len()],
            Mode::BoundStates | Mode::BraidPhases => vec![],
        };
        if grids_used.contains(&0) {
            return bad("parameter grids must be nonempty");
        }
        if o.grid < 2 * o.order + 2 {
            return bad("grid must be at least 2·order + 2");
        }
        if self.mode == Mode::FlowCrosscheck && o.order < 4 {
            return bad("flow cross-checks need order ≥ 4");
        }
        if o.angles == 0 {
            return bad("angles must be positive");
        }
        if !(o.tolerance_spectral > 0.0 && o.tolerance_spectral.is_finite() && o.tolerance_flow > 0.0 && o.tolerance_flow.is_finite()) {
            return bad("tolerances must be positive and finite");
        }
        if self.n_max == 0 || self.q_max < 1 {
            return bad("n_max and q_max must be positive");
        }
        if self.workers == Some(0) {
            return bad("workers must be positive");
        }
        if matches!(self.mutate_condition, Some(i) if i > 2) {
            return bad("mutate_condition must be 0, 1 or 2");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub spectral: f64,
    pub flow: f64,
    pub ylm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub items: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

/// The JSON document written by a campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub mode: Mode,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub options: VerdictOptions,
    pub summary: Summary,
    pub reports: Vec<VerificationReport>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// 0 when every gated verdict holds, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        match value.get("schema_version").and_then(|v| v.as_u64()) {
            Some(v) if v == SCHEMA_VERSION as u64 => {}
            Some(v) => return Err(Error::SchemaMismatch(format!("schema version {v}, expected {SCHEMA_VERSION}"))),
            None => return Err(Error::SchemaMismatch("missing schema_version".into())),
        }
        serde_json::from_value(value).map_err(|e| Error::SchemaMismatch(e.to_string()))
    }
}

#[derive(Debug, Clone)]
enum Item {
    Theorem1 { lambda: Rational64, sigma: SpinLabel, theta: Rational64 },
    Theorem4 { lambda: Rational64, sigma: SpinLabel, s: InvolutionSign },
    Lemma3 { lambda: Rational64, sigma: SpinLabel, r: InvolutionSign },
    Lemma6 { lambda: Rational64, sigma: SpinLabel, s: InvolutionSign, sector: SectorLabel },
    BoundState { l: i64, m: i64 },
    Braid { n: u32, kappa: ExactPhase },
    Flow { theta: Rational64, state: usize },
}

fn items(cfg: &Resolved) -> Vec<Item> {
    let mut out = Vec::new();
    match cfg.mode {
        Mode::Verify2d => {
            for &lambda in &cfg.lambda {
                for &sigma in &cfg.sigma {
                    for &theta in &cfg.theta {
                        out.push(Item::Theorem1 { lambda, sigma, theta });
                    }
                }
            }
        }
        Mode::Verify3d => {
            for &lambda in &cfg.lambda {
                for &sigma in &cfg.sigma {
                    for &s in &cfg.s {
                        out.push(Item::Theorem4 { lambda, sigma, s });
                    }
                }
            }
        }
        Mode::LemmaTables => {
            for &lambda in &cfg.lambda {
                for &sigma in &cfg.sigma {
                    for r in [InvolutionSign::Plus, InvolutionSign::Minus] {
                        out.push(Item::Lemma3 { lambda, sigma, r });
                    }
                }
            }
            for &lambda in cfg.lambda.iter().filter(|l| l.is_integer()) {
                for &sigma in &cfg.sigma {
                    for &s in &cfg.s {
                        for sector in [SectorLabel::Even, SectorLabel::Odd] {
                            out.push(Item::Lemma6 { lambda, sigma, s, sector });
                        }
                    }
                }
            }
        }
        Mode::BoundStates => {
            for l in 0..=cfg.l_max as i64 {
                for m in -l..=l {
                    out.push(Item::BoundState { l, m });
                }
            }
        }
        Mode::BraidPhases => {
            for kappa in unit_fractions(cfg.q_max) {
                for n in 1..=cfg.n_max {
                    out.push(Item::Braid { n, kappa });
                }
            }
        }
        Mode::FlowCrosscheck => {
            for &theta in &cfg.theta {
                for state in 0..cfg.options.test_functions {
                    out.push(Item::Flow { theta, state });
                }
            }
        }
    }
    out
}

/// Distinct phases `e^{iπp/q}` with `q ≤ q_max`.
pub fn unit_fractions(q_max: i64) -> Vec<ExactPhase> {
    let mut out = Vec::new();
    for q in 1..=q_max {
        for p in 0..2 * q {
            if p.gcd(&q) == 1 {
                out.push(ExactPhase::pi_times(p, q));
            }
        }
    }
    out
}

fn triple_report(kind: &str, triple: ConditionTriple, mutate: Option<usize>) -> VerificationReport {
    let triple = match mutate {
        Some(i) => triple.negated(i),
        None => triple,
    };
    let mut r = VerificationReport::new(kind);
    r.param("table", kind)
        .verdict("c1", triple.c1)
        .verdict("c2", triple.c2)
        .verdict("c3", triple.c3)
        .gated("two_imply_third", triple.two_imply_third());
    r
}

fn run_item(item: &Item, cfg: &Resolved) -> Result<VerificationReport> {
    let opts = &cfg.options;
    match *item {
        Item::Theorem1 { lambda, sigma, theta } => {
            theorem1_verdict(sigma, OffsetLambda::new(lambda), &ExtensionBC::from_pi_fraction(theta), opts)
        }
        Item::Theorem4 { lambda, sigma, s } => theorem4_verdict(sigma, OffsetLambda::new(lambda), s, opts),
        Item::Lemma3 { lambda, sigma, r } => {
            let mut rep = triple_report("lemma3", lemma3_conditions(OffsetLambda::new(lambda), sigma, r), cfg.mutate_condition);
            rep.param("lambda", format_rational(lambda)).param("sigma", sigma).param("R", r);
            Ok(rep)
        }
        Item::Lemma6 { lambda, sigma, s, sector } => {
            let triple = lemma6_conditions(OffsetLambda::new(lambda), sigma, s, sector)?;
            let mut rep = triple_report("lemma6", triple, cfg.mutate_condition);
            rep.param("lambda", format_rational(lambda))
                .param("sigma", sigma)
                .param("s", s)
                .param("sector", sector);
            Ok(rep)
        }
        Item::BoundState { l, m } => {
            let exchange = if l % 2 == 0 { Exchange::Bose } else { Exchange::Fermi };
            let class = bound_state_classify(BoundStateLabel::new(l, m, exchange)?);
            let ylm = ylm_parity_check(l as u32, m as i32, 32, 16)?;
            let chain = class.allowed
                && (exchange != Exchange::Bose || l % 2 == 0)
                && (!class.in_granted_sector || (m % 2 == 0 && class.lz_eigenvalue.is_some_and(|e| e.is_integer())));
            let mut rep = VerificationReport::new("bound_state");
            rep.param("l", l)
                .param("m", m)
                .param("exchange", exchange)
                .param("sector", class.sector.map(|s| s.to_string()).unwrap_or_default())
                .param(
                    "eigenvalue",
                    class.lz_eigenvalue.map(format_rational).unwrap_or_default(),
                )
                .verdict("allowed", class.allowed)
                .verdict("in_granted_sector", class.in_granted_sector)
                .residual("ylm_residual", ylm.residual)
                .gated("chain", chain)
                .gated("ylm_parity", ylm.residual <= YLM_TOLERANCE);
            Ok(rep)
        }
        Item::Braid { n, kappa } => {
            let b = braid_phases(n, kappa);
            let bosonic = kappa.real_sign().is_some();
            let mut rep = VerificationReport::new("braid");
            rep.param("n", n)
                .param("kappa", kappa)
                .param("relative", b.relative)
                .param("center_of_mass", b.center_of_mass)
                .param("total", b.total)
                .gated("factorization", b.total == b.relative * b.center_of_mass)
                .gated("bosonic_relative", !bosonic || b.relative.is_one());
            Ok(rep)
        }
        Item::Flow { theta, state } => {
            let bc = ExtensionBC::from_pi_fraction(theta);
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(state as u64));
            let psi = random_band_limited(AngularDomain::Cone2D(bc), opts.order, &mut rng);
            let mut residual = 0.0f64;
            for angle in angle_grid(opts.angles) {
                residual = residual.max(flow_discrepancy(&psi, angle, opts.grid)?);
            }
            let mut rep = VerificationReport::new("flow");
            rep.param("theta", format_theta(&bc))
                .param("state", state)
                .residual("residual", residual)
                .gated("flow_agreement", residual <= opts.tolerance_flow);
            Ok(rep)
        }
    }
}

fn item_parameters(item: &Item) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        p.insert(k.to_owned(), v);
    };
    match item {
        Item::Theorem1 { lambda, sigma, theta } => {
            put("lambda", format_rational(*lambda));
            put("sigma", sigma.to_string());
            put("theta", format_theta(&ExtensionBC::from_pi_fraction(*theta)));
        }
        Item::Theorem4 { lambda, sigma, s } => {
            put("lambda", format_rational(*lambda));
            put("sigma", sigma.to_string());
            put("s", s.to_string());
        }
        Item::Lemma3 { lambda, sigma, r } => {
            put("lambda", format_rational(*lambda));
            put("sigma", sigma.to_string());
            put("R", r.to_string());
        }
        Item::Lemma6 { lambda, sigma, s, sector } => {
            put("lambda", format_rational(*lambda));
            put("sigma", sigma.to_string());
            put("s", s.to_string());
            put("sector", sector.to_string());
        }
        Item::BoundState { l, m } => {
            put("l", l.to_string());
            put("m", m.to_string());
        }
        Item::Braid { n, kappa } => {
            put("n", n.to_string());
            put("kappa", kappa.to_string());
        }
        Item::Flow { theta, state } => {
            put("theta", format_theta(&ExtensionBC::from_pi_fraction(*theta)));
            put("state", state.to_string());
        }
    }
    p
}

fn item_kind(item: &Item) -> &'static str {
    match item {
        Item::Theorem1 { .. } => "theorem1",
        Item::Theorem4 { .. } => "theorem4",
        Item::Lemma3 { .. } => "lemma3",
        Item::Lemma6 { .. } => "lemma6",
        Item::BoundState { .. } => "bound_state",
        Item::Braid { .. } => "braid",
        Item::Flow { .. } => "flow",
    }
}

/// Runs every item of the campaign. Failing items are recorded in the
/// report; only configuration problems abort.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    let cfg = config.resolve()?;
    let work = items(&cfg);
    let evaluate = || -> Vec<VerificationReport> {
        work.par_iter()
            .map(|item| {
                run_item(item, &cfg)
                    .unwrap_or_else(|e| VerificationReport::failed_item(item_kind(item), item_parameters(item), e))
            })
            .collect()
    };
    let reports = match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(evaluate),
        None => evaluate(),
    };
    let errors = reports.iter().filter(|r| r.error.is_some()).count();
    let passed = reports.iter().filter(|r| r.passed()).count();
    Ok(CampaignReport {
        schema_version: SCHEMA_VERSION,
        artifact_version: ARTIFACT_VERSION.to_owned(),
        mode: cfg.mode,
        seed: cfg.options.seed,
        tolerances: Tolerances {
            spectral: cfg.options.tolerance_spectral,
            flow: cfg.options.tolerance_flow,
            ylm: YLM_TOLERANCE,
        },
        summary: Summary {
            items: reports.len(),
            passed,
            failed: reports.len() - passed,
            errors,
        },
        options: cfg.options,
        reports,
    })
}

struct TableSchema {
    parameters: &'static [&'static str],
    values: &'static [&'static str],
    default: &'static [&'static str],
}

fn schema(mode: Mode) -> TableSchema {
    match mode {
        Mode::Verify2d => TableSchema {
            parameters: &["lambda", "sigma", "theta", "R", "kappa", "nu"],
            values: &["ssc", "equiv", "agreement", "admissible", "intertwiner", "residual"],
            default: &["lambda", "sigma", "theta", "ssc", "equiv", "residual"],
        },
        Mode::Verify3d => TableSchema {
            parameters: &["lambda", "sigma", "s", "kappa", "nu", "sector"],
            values: &[
                "ssc", "equiv_plus", "equiv_minus", "dichotomy", "agreement", "lemma6", "obstruction", "intertwiner",
                "residual",
            ],
            default: &["lambda", "sigma", "s", "kappa", "ssc", "equiv_plus", "equiv_minus", "dichotomy", "residual"],
        },
        Mode::LemmaTables => TableSchema {
            parameters: &["table", "lambda", "sigma", "R", "s", "sector"],
            values: &["c1", "c2", "c3", "two_imply_third"],
            default: &["table", "lambda", "sigma", "R", "s", "sector", "c1", "c2", "c3", "two_imply_third"],
        },
        Mode::BoundStates => TableSchema {
            parameters: &["l", "m", "exchange", "sector", "eigenvalue"],
            values: &["allowed", "in_granted_sector", "chain", "ylm_parity", "ylm_residual"],
            default: &["l", "m", "exchange", "allowed", "sector", "eigenvalue"],
        },
        Mode::BraidPhases => TableSchema {
            parameters: &["n", "kappa", "relative", "center_of_mass", "total"],
            values: &["factorization", "bosonic_relative"],
            default: &["n", "kappa", "relative", "center_of_mass", "total", "factorization"],
        },
        Mode::FlowCrosscheck => TableSchema {
            parameters: &["theta", "state"],
            values: &["residual", "flow_agreement"],
            default: &["theta", "state", "residual", "flow_agreement"],
        },
    }
}

/// Default table columns of a mode.
pub fn default_columns(mode: Mode) -> Vec<String> {
    schema(mode).default.iter().map(|s| s.to_string()).collect()
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum SortKey {
    Number(Rational64),
    Text(String),
}

fn sort_key(value: Option<&String>) -> SortKey {
    match value {
        Some(v) => match parse_rational(v) {
            Ok(r) => SortKey::Number(r),
            Err(_) => SortKey::Text(v.clone()),
        },
        None => SortKey::Text(String::new()),
    }
}

fn cell(report: &VerificationReport, column: &str) -> String {
    if column == "error" {
        return report.error.clone().unwrap_or_default();
    }
    if let Some(v) = report.parameters.get(column) {
        return v.clone();
    }
    if let Some(v) = report.verdicts.get(column) {
        return v.to_string();
    }
    if let Some(v) = report.residuals.get(column) {
        return format!("{v:.3e}");
    }
    String::new()
}

/// CSV projection of a report. Rows are ordered by the parameter columns of
/// the mode, compared numerically where they parse as rationals.
pub fn render_table(report: &CampaignReport, columns: Option<&[String]>) -> Result<String> {
    let schema = schema(report.mode);
    let columns: Vec<String> = match columns {
        Some(c) => c.to_vec(),
        None => default_columns(report.mode),
    };
    for c in &columns {
        if !(schema.parameters.contains(&c.as_str()) || schema.values.contains(&c.as_str()) || c == "error") {
            return Err(Error::SchemaMismatch(format!("column {c:?} is not part of the {} table", report.mode)));
        }
    }
    let mut rows: Vec<&VerificationReport> = report.reports.iter().collect();
    rows.sort_by(|a, b| {
        schema
            .parameters
            .iter()
            .map(|p| sort_key(a.parameters.get(*p)).cmp(&sort_key(b.parameters.get(*p))))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    });
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&columns)?;
    for r in rows {
        w.write_record(columns.iter().map(|c| cell(r, c)))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

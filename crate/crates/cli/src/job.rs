//! Job descriptions, series construction, and the batch runner.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use framing_core::arith::{lcm, ord_p_u64};
use framing_core::checks::{
    dwork_checks, fractional_theorem_check, gamma_p, harmonic_bounds, jk_check,
    main_theorem_check, power_coeff_bound_check, reduction_identity_check, s_order_scan,
    wolstenholme_general, CheckStatus, CongruenceReport, PeriodicSeq,
};
use framing_core::cyclo::CycloElem;
use framing_core::framing::{fractional_frame, FramingParams, Sign};
use framing_core::local::{make_local_context, LocalContext};
use framing_core::series::Series;
use framing_core::{CycloSeries, Rational};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Cyclo(CycloElem),
    Rational(Rational),
}

impl ScalarSpec {
    fn to_elem(&self) -> CycloElem {
        match self {
            ScalarSpec::Cyclo(c) => c.clone(),
            ScalarSpec::Rational(r) => CycloElem::from_rational(r.clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SeriesSpec {
    /// numerator(z) / denominator(z), coefficient lists from degree 0
    Rational {
        numerator: Vec<ScalarSpec>,
        denominator: Vec<ScalarSpec>,
    },
    /// sum a_n z^n with a cyclically repeating value list (a_1, ..., a_N)
    Periodic {
        conductor: u64,
        values: Vec<ScalarSpec>,
    },
    /// explicit coefficients from degree 0
    Coeffs { coeffs: Vec<ScalarSpec> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FramingSpec {
    #[serde(default = "default_sign")]
    pub sign: String,
    pub nu: Rational,
    #[serde(default = "one_u64")]
    pub sigma: u64,
    #[serde(default = "one_u64")]
    pub rho: u64,
    #[serde(default)]
    pub weight: u32,
}

fn default_sign() -> String {
    "+".to_string()
}

fn one_u64() -> u64 {
    1
}

impl FramingSpec {
    pub fn to_params(&self) -> Result<FramingParams, String> {
        let sign = match self.sign.as_str() {
            "+" | "plus" => Sign::Plus,
            "-" | "minus" => Sign::Minus,
            other => return Err(format!("unknown sign {other:?} (use \"+\" or \"-\")")),
        };
        FramingParams::new(sign, self.nu.clone(), self.sigma, self.rho, self.weight)
            .map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Precision {
    Fixed(u64),
    Auto(AutoTag),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoTag {
    Auto,
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Auto(AutoTag::Auto)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JkRange {
    #[serde(default = "default_a_max")]
    pub a_max: u64,
    #[serde(default = "default_r_max")]
    pub r_max: u32,
}

fn default_a_max() -> u64 {
    5
}

fn default_r_max() -> u32 {
    2
}

impl Default for JkRange {
    fn default() -> Self {
        JkRange {
            a_max: default_a_max(),
            r_max: default_r_max(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<FramingSpec>,
    #[serde(default)]
    pub primes: Vec<u64>,
    #[serde(default)]
    pub precision: Precision,
    pub checks: Vec<String>,
    /// indices n for the per-index checks (main, reduction, fractional,
    /// wolstenholme, harmonic, power_coeff)
    #[serde(default)]
    pub n_values: Vec<u64>,
    /// coefficient horizon for power_coeff
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    /// (m, r) pairs for s_order; generated up to the horizon when absent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(u64, u64)>>,
    /// s-sequence order for s_order
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jk: Option<JkRange>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub sharp: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub job: JobSpec,
    pub reports: Vec<CongruenceReport>,
    pub summary: Summary,
}

const KNOWN_CHECKS: &[&str] = &[
    "main",
    "reduction",
    "fractional",
    "wolstenholme",
    "harmonic",
    "dwork",
    "power_coeff",
    "s_order",
    "jk",
];

/// Expand a series description to truncation `t`, promoting all
/// coefficients to a common cyclotomic field.
pub fn series_from_spec(spec: &SeriesSpec, t: usize) -> Result<CycloSeries, String> {
    let promote_all = |xs: &[ScalarSpec]| -> Result<Vec<CycloElem>, String> {
        let elems: Vec<CycloElem> = xs.iter().map(ScalarSpec::to_elem).collect();
        let conductor = elems.iter().fold(1, |acc, e| lcm(acc, e.conductor()));
        elems
            .iter()
            .map(|e| e.promote(conductor).map_err(|e| e.to_string()))
            .collect()
    };
    match spec {
        SeriesSpec::Rational {
            numerator,
            denominator,
        } => {
            let mut all = numerator.clone();
            all.extend(denominator.iter().cloned());
            let all = promote_all(&all)?;
            let conductor = all[0].conductor();
            let (num_c, den_c) = all.split_at(numerator.len());
            let pad = |cs: &[CycloElem]| {
                Series::from_fn(t, |n| {
                    cs.get(n).cloned().unwrap_or_else(|| CycloElem::zero(conductor))
                })
            };
            let den = pad(den_c);
            let inv = den.invert_unit().map_err(|e| e.to_string())?;
            Ok(pad(num_c).mul(&inv))
        }
        SeriesSpec::Periodic { conductor, values } => {
            if values.is_empty() {
                return Err("periodic series needs at least one value".to_string());
            }
            let elems: Result<Vec<CycloElem>, String> = values
                .iter()
                .map(|v| v.to_elem().promote(*conductor).map_err(|e| e.to_string()))
                .collect();
            let elems = elems?;
            Ok(Series::from_fn(t, |n| {
                if n == 0 {
                    CycloElem::zero(*conductor)
                } else {
                    elems[(n - 1) % elems.len()].clone()
                }
            }))
        }
        SeriesSpec::Coeffs { coeffs } => {
            let elems = promote_all(coeffs)?;
            let conductor = elems[0].conductor();
            Ok(Series::from_fn(t, |n| {
                elems
                    .get(n)
                    .cloned()
                    .unwrap_or_else(|| CycloElem::zero(conductor))
            }))
        }
    }
}

/// Smallest period N with a_{k+N} = a_k for all k >= 1 up to the horizon;
/// errors when nothing at most horizon/2 repeats.
pub fn detect_period(coeffs: &[CycloElem], horizon: usize) -> Result<u64, String> {
    let horizon = horizon.min(coeffs.len().saturating_sub(1));
    for period in 1..=horizon / 2 {
        if (1..=horizon - period).all(|k| coeffs[k] == coeffs[k + period]) {
            return Ok(period as u64);
        }
    }
    Err(format!(
        "coefficient sequence is not periodic within horizon {horizon}"
    ))
}

struct Plan {
    v: Option<CycloSeries>,
    period: u64,
    conductor: u64,
    periodic: Option<PeriodicSeq>,
    framing: FramingParams,
    dwork_t: usize,
    m_max: usize,
}

fn needs_series(check: &str) -> bool {
    !matches!(check, "jk" | "harmonic")
}

fn default_pairs(p: u64, horizon: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for r in 1..=6u64 {
        let Some(pr) = p.checked_pow(r as u32) else { break };
        if pr > horizon {
            break;
        }
        for m in 1..=horizon / pr {
            out.push((m, r));
        }
    }
    out
}

/// Highest exponent this job can predict at prime p, for "auto" precision.
fn max_predicted(job: &JobSpec, plan: &Plan, p: u64) -> i64 {
    let mut best = 1i64;
    let ord = |n: u64| ord_p_u64(n, p).unwrap_or(0) as i64;
    let gamma = gamma_p(p, plan.period).ok();
    for check in &job.checks {
        for &n in &job.n_values {
            let bound = match check.as_str() {
                "main" => {
                    let r1 = ord(n) + 1;
                    match gamma {
                        Some(g) => 2 * r1 - i64::from(p == 2) + (r1 - g).max(0),
                        None => continue,
                    }
                }
                "reduction" => ord(p * n) - i64::from(p == 3),
                "fractional" => {
                    let opn = ord(p * n);
                    let orho = ord(plan.framing.rho);
                    let g = match p {
                        3 => 1,
                        _ => 0,
                    };
                    2 * opn + orho - i64::from(p == 2) + (opn - orho - g).max(0)
                }
                "wolstenholme" => ord(n),
                "power_coeff" => ord(n),
                _ => 0,
            };
            best = best.max(bound);
        }
        if check == "s_order" {
            let s = job.s.unwrap_or(2);
            let r_max = job
                .pairs
                .as_ref()
                .map(|ps| ps.iter().map(|&(_, r)| r).max().unwrap_or(1))
                .unwrap_or(6);
            best = best.max(s * r_max as i64);
        }
        if check == "dwork" {
            best = best.max(1);
        }
    }
    best
}

fn skip_record(check: &str, p: u64, reason: &str) -> CongruenceReport {
    let mut params = BTreeMap::new();
    params.insert("p".to_string(), p.to_string());
    CongruenceReport::skip(check, params, reason)
}

pub struct RunOutcome {
    pub document: ReportDocument,
    pub exit_code: i32,
}

pub fn run(job: &JobSpec, horizon: usize) -> Result<RunOutcome, String> {
    for check in &job.checks {
        if !KNOWN_CHECKS.contains(&check.as_str()) {
            return Err(format!(
                "unknown check {check:?}; known: {}",
                KNOWN_CHECKS.join(", ")
            ));
        }
    }
    if job.checks.is_empty() {
        return Err("no checks requested".to_string());
    }
    let series_needed = job.checks.iter().any(|c| needs_series(c));
    if series_needed && job.series.is_none() {
        return Err("the requested checks need a series".to_string());
    }

    let framing = match &job.framing {
        Some(f) => f.to_params()?,
        None => FramingParams::plain(Sign::Plus, Rational::from_int(1)),
    };

    // work out how deep the series must be expanded
    let p_max = job.primes.iter().copied().max().unwrap_or(2);
    let n_max = job.n_values.iter().copied().max().unwrap_or(1);
    let dwork_t = job.truncation.unwrap_or(32);
    let m_max = job.m_max.unwrap_or(24);
    let mut t_needed = 1usize;
    for check in &job.checks {
        let t = match check.as_str() {
            "main" | "reduction" => (p_max * n_max) as usize,
            "fractional" => (framing.sigma * p_max * n_max / framing.rho) as usize,
            "dwork" => dwork_t,
            "power_coeff" => m_max,
            "s_order" => {
                let t_max = job
                    .pairs
                    .as_ref()
                    .map(|ps| ps.iter().map(|&(m, r)| m * p_max.pow(r as u32)).max())
                    .flatten()
                    .unwrap_or(horizon as u64);
                (framing.sigma * t_max / framing.rho) as usize
            }
            "wolstenholme" => horizon,
            _ => 1,
        };
        t_needed = t_needed.max(t);
    }
    t_needed = t_needed.max(horizon);

    let (v, conductor) = match &job.series {
        Some(spec) => {
            let v = series_from_spec(spec, t_needed)?;
            let conductor = v.coeffs().iter().map(|c| c.conductor()).max().unwrap_or(1);
            if !v.coeffs()[0].is_zero() {
                return Err("series must have zero constant term".to_string());
            }
            (Some(v), conductor)
        }
        None => (None, 1),
    };

    let wants_period = job
        .checks
        .iter()
        .any(|c| matches!(c.as_str(), "main" | "wolstenholme"));
    let (period, periodic) = match (&v, wants_period) {
        (Some(v), true) => {
            let period = detect_period(v.coeffs(), horizon)?;
            let values: Vec<CycloElem> = (1..=period as usize)
                .map(|k| v.coeffs()[k].clone())
                .collect();
            let seq = PeriodicSeq::new(conductor, values).map_err(|e| e.to_string())?;
            (period, Some(seq))
        }
        _ => (1, None),
    };

    let plan = Plan {
        v,
        period,
        conductor,
        periodic,
        framing,
        dwork_t,
        m_max,
    };

    // one context per prime; unusable primes become skip records
    let mut contexts: BTreeMap<u64, LocalContext> = BTreeMap::new();
    let mut reports: Vec<CongruenceReport> = Vec::new();
    let series_checks: Vec<&String> =
        job.checks.iter().filter(|c| needs_series(c)).collect();
    for &p in &job.primes {
        if series_checks.is_empty() {
            break;
        }
        if plan.conductor > 1 && plan.conductor % p == 0 {
            for check in &series_checks {
                reports.push(skip_record(check, p, "p ramifies in the coefficient field"));
            }
            continue;
        }
        let m = match job.precision {
            Precision::Fixed(m) => m,
            Precision::Auto(_) => (max_predicted(job, &plan, p).max(1) as u64) + 2,
        };
        match make_local_context(plan.conductor, p, m) {
            Ok(ctx) => {
                contexts.insert(p, ctx);
            }
            Err(e) => {
                for check in &series_checks {
                    reports.push(skip_record(check, p, &e.to_string()));
                }
            }
        }
    }

    // independent report units, evaluated in parallel
    type Unit<'a> = Box<dyn Fn() -> Result<Vec<CongruenceReport>, String> + Send + Sync + 'a>;
    let mut units: Vec<Unit> = Vec::new();
    for check in &job.checks {
        match check.as_str() {
            "jk" => {
                let range = job.jk.clone().unwrap_or_default();
                for &p in &job.primes {
                    for a in 1..=range.a_max {
                        for b in 1..=a {
                            for r in 1..=range.r_max {
                                units.push(Box::new(move || {
                                    jk_check(a, b, p, r)
                                        .map(|r| vec![r])
                                        .map_err(|e| e.to_string())
                                }));
                            }
                        }
                    }
                }
            }
            "harmonic" => {
                for &p in &job.primes {
                    for &n in &job.n_values {
                        units.push(Box::new(move || Ok(harmonic_bounds(p, n))));
                    }
                }
            }
            "dwork" => {
                for ctx in contexts.values() {
                    let v = plan.v.as_ref().unwrap();
                    let t = plan.dwork_t;
                    units.push(Box::new(move || Ok(dwork_checks(v, ctx, t))));
                }
            }
            "power_coeff" => {
                for ctx in contexts.values() {
                    let v = plan.v.as_ref().unwrap();
                    let m_max = plan.m_max;
                    for &n in &job.n_values {
                        units.push(Box::new(move || {
                            power_coeff_bound_check(v, ctx, n, m_max)
                                .map_err(|e| e.to_string())
                        }));
                    }
                }
            }
            "wolstenholme" => {
                for ctx in contexts.values() {
                    let seq = plan.periodic.as_ref().unwrap();
                    for &n in &job.n_values {
                        units.push(Box::new(move || Ok(wolstenholme_general(seq, ctx, n))));
                    }
                }
            }
            "main" => {
                for ctx in contexts.values() {
                    let v = plan.v.as_ref().unwrap();
                    let period = plan.period;
                    let sign = plan.framing.sign;
                    let nu = &plan.framing.nu;
                    for &n in &job.n_values {
                        units.push(Box::new(move || {
                            main_theorem_check(v, period, sign, nu, ctx, n)
                                .map(|r| vec![r])
                                .map_err(|e| e.to_string())
                        }));
                    }
                }
            }
            "reduction" => {
                for ctx in contexts.values() {
                    let v = plan.v.as_ref().unwrap();
                    let nu = &plan.framing.nu;
                    for &n in &job.n_values {
                        units.push(Box::new(move || {
                            reduction_identity_check(v, nu, ctx, n)
                                .map(|r| vec![r])
                                .map_err(|e| e.to_string())
                        }));
                    }
                }
            }
            "fractional" => {
                for ctx in contexts.values() {
                    let v = plan.v.as_ref().unwrap();
                    let params = &plan.framing;
                    for &n in &job.n_values {
                        units.push(Box::new(move || {
                            fractional_theorem_check(params, v, ctx, n)
                                .map(|r| vec![r])
                                .map_err(|e| e.to_string())
                        }));
                    }
                }
            }
            "s_order" => {
                let s = job.s.unwrap_or(2);
                for (&p, ctx) in &contexts {
                    let v = plan.v.as_ref().unwrap();
                    let params = plan.framing.clone();
                    let pairs = job
                        .pairs
                        .clone()
                        .unwrap_or_else(|| default_pairs(p, horizon as u64));
                    units.push(Box::new(move || {
                        let t_max = pairs
                            .iter()
                            .map(|&(m, r)| m * p.pow(r as u32))
                            .max()
                            .unwrap_or(0) as usize;
                        let seq = fractional_frame(&params, v, t_max)
                            .map_err(|e| e.to_string())?;
                        Ok(s_order_scan(seq.coeffs(), s, ctx, &pairs))
                    }));
                }
            }
            _ => unreachable!("validated above"),
        }
    }

    let results: Result<Vec<Vec<CongruenceReport>>, String> =
        units.par_iter().map(|unit| unit()).collect();
    for batch in results? {
        reports.extend(batch);
    }
    reports.sort_by(|a, b| {
        (&a.check_id, &a.params).cmp(&(&b.check_id, &b.params))
    });

    let summary = Summary {
        pass: reports
            .iter()
            .filter(|r| r.status == CheckStatus::Pass)
            .count(),
        fail: reports
            .iter()
            .filter(|r| r.status == CheckStatus::Fail)
            .count(),
        skip: reports
            .iter()
            .filter(|r| r.status == CheckStatus::Skip)
            .count(),
        sharp: reports.iter().filter(|r| r.sharp).count(),
    };
    let failed = reports
        .iter()
        .any(|r| r.gating && r.status == CheckStatus::Fail);
    Ok(RunOutcome {
        document: ReportDocument {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            job: job.clone(),
            reports,
            summary,
        },
        exit_code: if failed { 1 } else { 0 },
    })
}

pub fn to_csv(doc: &ReportDocument) -> String {
    let mut out = String::from("check_id,params,observed,predicted,status,sharp,gating,note\n");
    for r in &doc.reports {
        let params = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let observed = r
            .observed
            .map(|o| o.to_string())
            .unwrap_or_default();
        let status = match r.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skip => "skip",
        };
        let note = r.note.clone().unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.check_id, params, observed, r.predicted, status, r.sharp, r.gating, note
        ));
    }
    out
}

//! Machine-readable report documents.
//!
//! Every rational is a string `p/q` (or `p`), so a document re-parses to the
//! exact values it was built from.

use fintype::format::{format_monomial, format_rational};
use fintype::invariants::WitnessCurve;
use fintype::jet::ProbeOutcome;
use fintype::nss::NssReport;
use fintype::oracle::CrossCheckReport;
use fintype::{Denominator, Rational, TypeReport};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub input: String,
    pub ambient_dim: usize,
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub result: CommandResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    /// Present only when timing was requested, so default output is reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandResult {
    Type(TypeSection),
    Ttype(TypeSection),
    Nss(NssSection),
    Probe(ProbeSection),
    Curves(CurvesSection),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeSection {
    pub value: String,
    pub boundary_type: String,
    pub denominator: Denominator,
    pub dim_zero_locus: usize,
    pub witnesses: Vec<WitnessEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub weight: Vec<u64>,
    pub r: String,
    pub m: String,
    pub ratio: String,
    pub center_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NssSection {
    pub ttype: String,
    pub exponent: u32,
    pub inclusion: bool,
    pub certificates: Vec<Certificate>,
    pub sigma_min: u32,
    pub briancon_skoda: bool,
    pub max_degree: u64,
    pub geometric_bound: String,
    pub geometric_ok: bool,
}

/// `monomial` is a minimal generator of the radical power, `generator` divides it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub monomial: String,
    pub generator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeStatus {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSection {
    pub lower_bound: String,
    pub boundary_lower_bound: String,
    pub status: ProbeStatus,
    pub best_arc: ArcEntry,
    pub ideal_order: usize,
    pub arc_order: usize,
    pub arcs_scored: usize,
    /// Weights of arcs whose order could not be certified at the largest truncation.
    pub inconclusive: Vec<Vec<Option<u32>>>,
    pub weight_bound: u32,
    pub truncation: usize,
    pub seed: u64,
}

/// `t -> (c_j t^{w_j})`; a `null` weight is the zero coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcEntry {
    pub weights: Vec<Option<u32>>,
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvesSection {
    pub ttype: String,
    pub seed: u64,
    pub curves: Vec<CurveEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEntry {
    pub weights: Vec<u64>,
    pub coefficients: Vec<String>,
    pub parametrization: String,
    pub ideal_order: u64,
    pub denominator_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub passed: bool,
    pub points_checked: usize,
    pub closure_mismatches: Vec<String>,
    pub ttype: String,
    pub brute_type: String,
    pub weight_bound: u32,
    pub facet_problems: Vec<String>,
}

fn frac(r: &Rational) -> String {
    format_rational(r)
}

pub fn type_section(report: &TypeReport, dim_zero_locus: usize) -> TypeSection {
    TypeSection {
        value: frac(&report.value),
        boundary_type: frac(&(&report.value * Rational::from_integer(2.into()))),
        denominator: report.denominator.clone(),
        dim_zero_locus,
        witnesses: report
            .witnesses
            .iter()
            .map(|w| WitnessEntry {
                weight: w.weight.primitive(),
                r: frac(&w.r),
                m: frac(&w.m),
                ratio: frac(&w.ratio),
                center_dim: w.center_dim,
            })
            .collect(),
    }
}

pub fn nss_section(report: &NssReport, vars: &[String]) -> NssSection {
    NssSection {
        ttype: frac(&report.ttype_value),
        exponent: report.exponent,
        inclusion: report.inclusion.holds,
        certificates: report
            .inclusion
            .certificates
            .iter()
            .map(|(u, g)| Certificate {
                monomial: format_monomial(u, vars),
                generator: format_monomial(g, vars),
            })
            .collect(),
        sigma_min: report.sigma_min,
        briancon_skoda: report.briancon_skoda,
        max_degree: report.max_degree,
        geometric_bound: report.geometric_bound.to_string(),
        geometric_ok: report.geometric_ok,
    }
}

pub fn probe_section(
    outcome: &ProbeOutcome,
    status: ProbeStatus,
    weight_bound: u32,
    truncation: usize,
    seed: u64,
) -> ProbeSection {
    let coefficients = outcome
        .best_weights
        .iter()
        .zip(&outcome.best_coefficients)
        .map(|(w, c)| match w {
            Some(_) => frac(c),
            None => "0".into(),
        })
        .collect();
    ProbeSection {
        lower_bound: frac(&outcome.lower_bound),
        boundary_lower_bound: frac(&(&outcome.lower_bound * Rational::from_integer(2.into()))),
        status,
        best_arc: ArcEntry {
            weights: outcome.best_weights.clone(),
            coefficients,
        },
        ideal_order: outcome.ideal_order,
        arc_order: outcome.arc_order,
        arcs_scored: outcome.arcs_scored,
        inconclusive: outcome.inconclusive.clone(),
        weight_bound,
        truncation,
        seed,
    }
}

pub fn curves_section(report: &TypeReport, curves: &[WitnessCurve], seed: u64) -> CurvesSection {
    CurvesSection {
        ttype: frac(&report.value),
        seed,
        curves: curves
            .iter()
            .map(|c| CurveEntry {
                weights: c.weights.clone(),
                coefficients: c.coefficients.iter().map(frac).collect(),
                parametrization: parametrization(&c.weights, &c.coefficients),
                ideal_order: c.ideal_order,
                denominator_order: c.denominator_order,
            })
            .collect(),
    }
}

fn parametrization(weights: &[u64], coefficients: &[Rational]) -> String {
    let parts: Vec<String> = weights
        .iter()
        .zip(coefficients)
        .map(|(&w, c)| match w {
            0 => frac(c),
            1 => format!("({})*t", frac(c)),
            _ => format!("({})*t^{w}", frac(c)),
        })
        .collect();
    format!("t -> ({})", parts.join(", "))
}

pub fn oracle_section(report: &CrossCheckReport, weight_bound: u32) -> OracleSection {
    OracleSection {
        passed: report.passed(),
        points_checked: report.points_checked,
        closure_mismatches: report
            .closure_mismatches
            .iter()
            .map(|(u, k, facets, combination)| {
                format!("{u} at k={k}: facets say {facets}, convex combination says {combination}")
            })
            .collect(),
        ttype: frac(&report.ttype_value),
        brute_type: frac(&report.brute_value),
        weight_bound,
        facet_problems: report.facet_problems.clone(),
    }
}

#[cfg(test)]
impl ReportDocument {
    /// Every exact value the document carries, parsed back from its strings.
    pub fn rationals(&self) -> fintype::Result<Vec<Rational>> {
        use fintype::format::parse_rational;
        let mut out = Vec::new();
        match &self.result {
            CommandResult::Type(s) | CommandResult::Ttype(s) => {
                out.push(parse_rational(&s.value)?);
                out.push(parse_rational(&s.boundary_type)?);
                for w in &s.witnesses {
                    for x in [&w.r, &w.m, &w.ratio] {
                        out.push(parse_rational(x)?);
                    }
                }
            }
            CommandResult::Nss(s) => {
                out.push(parse_rational(&s.ttype)?);
                out.push(parse_rational(&s.geometric_bound)?);
            }
            CommandResult::Probe(s) => {
                out.push(parse_rational(&s.lower_bound)?);
                out.push(parse_rational(&s.boundary_lower_bound)?);
                for c in &s.best_arc.coefficients {
                    out.push(parse_rational(c)?);
                }
            }
            CommandResult::Curves(s) => {
                out.push(parse_rational(&s.ttype)?);
                for c in s.curves.iter().flat_map(|c| &c.coefficients) {
                    out.push(parse_rational(c)?);
                }
            }
        }
        if let Some(o) = &self.oracle {
            out.push(parse_rational(&o.ttype)?);
            out.push(parse_rational(&o.brute_type)?);
        }
        Ok(out)
    }
}

/// One entry per input file of a batch run, in file-name order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchDocument {
    pub schema_version: u32,
    pub command: String,
    pub entries: Vec<BatchEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub file: String,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

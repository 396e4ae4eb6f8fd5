//! Human-readable rendering of report documents.

use std::fmt::Write as _;

use crate::report::{CommandResult, ProbeStatus, ReportDocument, TypeSection};

pub fn render(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ideal: <{}> in {} variables", doc.generators.join(", "), doc.ambient_dim);
    match &doc.result {
        CommandResult::Type(s) => {
            let _ = writeln!(out, "type T = {}", s.value);
            let _ = writeln!(out, "boundary type 2T = {}", s.boundary_type);
            witnesses(&mut out, s);
        }
        CommandResult::Ttype(s) => {
            let _ = writeln!(out, "invariant 𝒯 = {}", s.value);
            let _ = writeln!(out, "dim Z = {}", s.dim_zero_locus);
            witnesses(&mut out, s);
        }
        CommandResult::Nss(s) => {
            let _ = writeln!(out, "invariant 𝒯 = {}", s.ttype);
            let _ = writeln!(out, "exponent N = {}", s.exponent);
            let _ = writeln!(out, "rad(I)^N ⊆ I: {}", s.inclusion);
            for c in &s.certificates {
                let _ = writeln!(out, "  {} divisible by {}", c.monomial, c.generator);
            }
            let _ = writeln!(out, "minimal exponent σ = {}", s.sigma_min);
            let _ = writeln!(out, "closure(I^n) ⊆ I: {}", s.briancon_skoda);
            let _ = writeln!(
                out,
                "𝒯 ≤ d^n = {} (d = {}): {}",
                s.geometric_bound, s.max_degree, s.geometric_ok
            );
        }
        CommandResult::Probe(s) => {
            let status = match s.status {
                ProbeStatus::Exact => "exact",
                ProbeStatus::LowerBound => "lower-bound",
            };
            let _ = writeln!(out, "type T ≥ {} ({status})", s.lower_bound);
            let _ = writeln!(out, "boundary type ≥ {}", s.boundary_lower_bound);
            let weights: Vec<String> = s
                .best_arc
                .weights
                .iter()
                .map(|w| w.map_or("-".into(), |w| w.to_string()))
                .collect();
            let _ = writeln!(
                out,
                "best arc: weights ({}), coefficients ({}), orders ({}, {})",
                weights.join(","),
                s.best_arc.coefficients.join(", "),
                s.ideal_order,
                s.arc_order
            );
            let _ = writeln!(
                out,
                "{} arcs scored (B = {}, truncation {}, seed {})",
                s.arcs_scored, s.weight_bound, s.truncation, s.seed
            );
            if !s.inconclusive.is_empty() {
                let _ = writeln!(out, "{} inconclusive arcs:", s.inconclusive.len());
                for w in &s.inconclusive {
                    let _ = writeln!(out, "  {w:?}");
                }
            }
        }
        CommandResult::Curves(s) => {
            let _ = writeln!(out, "invariant 𝒯 = {}", s.ttype);
            for c in &s.curves {
                let _ = writeln!(
                    out,
                    "curve {}: orders ({}, {})",
                    c.parametrization, c.ideal_order, c.denominator_order
                );
            }
        }
    }
    if let Some(o) = &doc.oracle {
        let _ = writeln!(
            out,
            "oracle: {} ({} points, brute force {} with B = {})",
            if o.passed { "pass" } else { "FAIL" },
            o.points_checked,
            o.brute_type,
            o.weight_bound
        );
        for m in o.closure_mismatches.iter().chain(&o.facet_problems) {
            let _ = writeln!(out, "  {m}");
        }
    }
    out
}

fn witnesses(out: &mut String, s: &TypeSection) {
    for w in &s.witnesses {
        let weight: Vec<String> = w.weight.iter().map(u64::to_string).collect();
        let _ = writeln!(
            out,
            "witness ({}): r = {}, m = {}, center dim {}",
            weight.join(","),
            w.r,
            w.m,
            w.center_dim
        );
    }
}

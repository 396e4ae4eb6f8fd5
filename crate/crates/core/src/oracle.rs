//! Brute-force oracles for cross-checking the facet and ratio-program pipeline.
//!
//! Nothing here reads facets or solves the ratio programs: type bounds come
//! from enumerating integer weights, and integral-closure membership from the
//! feasibility of a convex-combination program.

use std::collections::BTreeSet;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ideal::{ExponentVector, MonomialIdeal};
use crate::invariants::ttype;
use crate::lp::{self, LinearProgram, LpOutcome, Relation};
use crate::newton::{advance, newton_polyhedron};
use crate::Rational;

/// Enumeration bounds; the defaults live in `config/oracle.toml`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    /// Largest weight entry tried by [`brute_type`].
    pub weight_bound: u32,
    /// Largest ambient dimension in the random corpus.
    pub max_dim: usize,
    /// Largest exponent entry in corpus generators.
    pub max_entry: u32,
    pub max_generators: usize,
    /// Largest coordinate of lattice points compared by [`cross_check`].
    pub entry_cap: u32,
    pub corpus_size: usize,
    pub seed: u64,
}

const DEFAULT_CONFIG: &str = include_str!("../config/oracle.toml");

impl OracleConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: OracleConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            ("weight_bound", self.weight_bound as usize),
            ("max_dim", self.max_dim),
            ("max_entry", self.max_entry as usize),
            ("max_generators", self.max_generators),
            ("entry_cap", self.entry_cap as usize),
        ];
        match positive.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(Error::Config(format!("{name} must be positive"))),
            None if self.max_dim > 16 => Err(Error::Config("max_dim is at most 16".into())),
            None => Ok(()),
        }
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig::from_toml(DEFAULT_CONFIG).expect("committed oracle config is valid")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteType {
    pub value: Rational,
    /// Among weights attaining `value`, one where the most generators of the
    /// ideal attain the minimum; the first in enumeration order on ties.
    pub weight: Vec<u32>,
}

/// Minimum of `<w, g>` over the generators, and how many generators attain it.
fn order_along(weight: &[u32], ideal: &MonomialIdeal) -> (u64, usize) {
    let values: Vec<u64> = ideal
        .generators()
        .iter()
        .map(|g| {
            g.entries()
                .iter()
                .zip(weight)
                .map(|(&e, &w)| u64::from(e) * u64::from(w))
                .sum()
        })
        .collect();
    let min = values.iter().copied().min().unwrap_or(0);
    (min, values.iter().filter(|&&v| v == min).count())
}

/// Largest `h_I(w) / h_den(w)` over integer weights in `[0, B]^n` with a
/// positive denominator.
pub fn brute_type(ideal: &MonomialIdeal, denominator: &MonomialIdeal, bound: u32) -> Result<BruteType> {
    ideal.require_proper()?;
    denominator.require_proper()?;
    let n = ideal.ambient_dim();
    if denominator.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: denominator.ambient_dim(),
        });
    }
    if bound == 0 {
        return Err(Error::Config("weight bound must be positive".into()));
    }
    let bounds = vec![bound; n];
    let mut w = vec![0u32; n];
    let mut best: Option<(u64, u64, usize, Vec<u32>)> = None;
    while advance(&mut w, &bounds) {
        let (m, _) = order_along(&w, denominator);
        if m == 0 {
            continue;
        }
        let (r, tight) = order_along(&w, ideal);
        let better = best.as_ref().is_none_or(|(br, bm, bt, _)| {
            let lhs = u128::from(r) * u128::from(*bm);
            let rhs = u128::from(*br) * u128::from(m);
            lhs > rhs || (lhs == rhs && tight > *bt)
        });
        if better {
            best = Some((r, m, tight, w.clone()));
        }
    }
    let (r, m, _, weight) = best.ok_or_else(|| Error::Config("no weight has a positive denominator".into()))?;
    Ok(BruteType {
        value: Rational::new(r.into(), m.into()),
        weight,
    })
}

/// `u` is a convex combination of the `k`-scaled generators plus a nonnegative
/// vector: `u >= sum_i λ_i k g_i` with `λ >= 0`, `sum λ = 1`.
pub fn convex_member(u: &ExponentVector, ideal: &MonomialIdeal, k: u32) -> Result<bool> {
    ideal.require_proper()?;
    if u.dim() != ideal.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: ideal.ambient_dim(),
            found: u.dim(),
        });
    }
    let gens = ideal.generators();
    let dominates = |g: &ExponentVector| {
        g.entries()
            .iter()
            .zip(u.entries())
            .all(|(&e, &x)| u64::from(k) * u64::from(e) <= u64::from(x))
    };
    if gens.iter().any(dominates) {
        return Ok(true);
    }
    // Necessary: <w, u> >= k min_i <w, g_i> for every weight w in {0, 1, 2}^n.
    let n = ideal.ambient_dim();
    let mut w = vec![0u32; n];
    while advance(&mut w, &vec![2; n]) {
        let along = |v: &ExponentVector| -> u64 {
            v.entries()
                .iter()
                .zip(&w)
                .map(|(&e, &c)| u64::from(e) * u64::from(c))
                .sum()
        };
        let least = gens.iter().map(along).min().unwrap_or(0);
        if along(u) < u64::from(k) * least {
            return Ok(false);
        }
    }
    let q = |x: u64| Rational::from_integer(x.into());
    let mut lp = LinearProgram::new(gens.len())
        .maximize(vec![Rational::zero(); gens.len()])
        .all_nonnegative()
        .constrain(vec![Rational::one(); gens.len()], Relation::Eq, Rational::one());
    for j in 0..ideal.ambient_dim() {
        let row = gens
            .iter()
            .map(|g| q(u64::from(k) * u64::from(g.entries()[j])))
            .collect();
        lp = lp.constrain(row, Relation::Le, q(u64::from(u.entries()[j])));
    }
    match lp::solve(&lp)? {
        LpOutcome::Optimal { .. } => Ok(true),
        LpOutcome::Infeasible => Ok(false),
        LpOutcome::Unbounded { .. } => unreachable!("zero objective"),
    }
}

/// Maximum of the objective over the vertices of an all-nonnegative program,
/// found by solving every square subsystem of tight constraints. Only
/// meaningful for small bounded programs; `None` if nothing is feasible.
pub fn lp_vertex_max(program: &LinearProgram) -> Option<Rational> {
    let n = program.num_vars;
    assert!(program.nonneg.iter().all(|&b| b), "vertex enumeration needs x >= 0");
    let mut rows: Vec<(Vec<Rational>, Rational)> = program
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        rows.push((e, Rational::zero()));
    }
    let mut best: Option<Rational> = None;
    for subset in subsets(rows.len(), n) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| rows[i].1.clone()).collect();
        let Some(x) = solve_square(a, b) else {
            continue;
        };
        if program.is_feasible(&x) {
            let v = program.objective_at(&x);
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
    }
    best
}

fn subsets(len: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, size, &mut Vec::new(), &mut out);
    out
}

/// Gaussian elimination; `None` when singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &f * &b[col];
            b[r] -= delta;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub points_checked: usize,
    /// `(u, k, facet verdict, convex-combination verdict)` for each disagreement.
    pub closure_mismatches: Vec<(ExponentVector, u32, bool, bool)>,
    pub ttype_value: Rational,
    pub brute_value: Rational,
    pub max_witness_entry: u64,
    /// The brute-force bound is consistent with the exact value.
    pub type_agrees: bool,
    pub facet_problems: Vec<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.closure_mismatches.is_empty() && self.type_agrees && self.facet_problems.is_empty()
    }
}

/// Compares the pipeline with the oracles on one ideal:
///
/// * facet membership against [`convex_member`] on every lattice point of
///   `prod_j [0, min(k M_j, entry_cap)]` for `k = 1..=n`;
/// * [`brute_type`] never exceeds `𝒯`, and matches it once the weight bound
///   covers a witness;
/// * every facet is valid at all generators and tight at one.
pub fn cross_check(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<CrossCheckReport> {
    let n = ideal.ambient_dim();
    let polyhedron = newton_polyhedron(ideal)?;
    let mut report = CrossCheckReport::default();

    for k in 1..=n as u32 {
        let bounds: Vec<u32> = (0..n)
            .map(|j| {
                let m = ideal.generators().iter().map(|g| g.entries()[j]).max().unwrap_or(0);
                (k * m).min(cfg.entry_cap)
            })
            .collect();
        let mut u = vec![0u32; n];
        loop {
            let point = ExponentVector::new(u.clone())?;
            let by_facets = polyhedron.contains_scaled(&point, k)?;
            let by_combination = convex_member(&point, ideal, k)?;
            report.points_checked += 1;
            if by_facets != by_combination {
                report.closure_mismatches.push((point, k, by_facets, by_combination));
            }
            if !advance(&mut u, &bounds) {
                break;
            }
        }
    }

    let exact = ttype(ideal)?;
    let radical = ideal.radical()?;
    let brute = brute_type(ideal, &radical, cfg.weight_bound)?;
    report.max_witness_entry = exact
        .witnesses
        .iter()
        .flat_map(|w| w.weight.primitive())
        .max()
        .unwrap_or(0);
    let covered = exact
        .witnesses
        .iter()
        .any(|w| w.weight.primitive().iter().all(|&x| x <= u64::from(cfg.weight_bound)));
    report.type_agrees = brute.value <= exact.value && (!covered || brute.value == exact.value);
    report.ttype_value = exact.value;
    report.brute_value = brute.value;

    for f in polyhedron.facets() {
        let values: Vec<u64> = ideal.generators().iter().map(|g| f.evaluate(g)).collect();
        if values.iter().any(|&v| v < f.offset) {
            report.facet_problems.push(format!("{f:?} is violated by a generator"));
        }
        if !values.contains(&f.offset) {
            report.facet_problems.push(format!("{f:?} is not tight at any generator"));
        }
    }
    Ok(report)
}

/// A deterministic corpus of distinct proper monomial ideals.
pub fn random_corpus(cfg: &OracleConfig) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen = BTreeSet::new();
    let mut corpus = Vec::with_capacity(cfg.corpus_size);
    while corpus.len() < cfg.corpus_size {
        let n = rng.gen_range(1..=cfg.max_dim);
        let count = rng.gen_range(1..=cfg.max_generators);
        let gens: Vec<ExponentVector> = (0..count)
            .map(|_| {
                (0..n)
                    .map(|_| rng.gen_range(0..=cfg.max_entry))
                    .collect::<Vec<u32>>()
            })
            .filter(|e| e.iter().any(|&x| x > 0))
            .map(|e| ExponentVector::new(e).expect("n >= 1"))
            .collect();
        if gens.is_empty() {
            continue;
        }
        let ideal = MonomialIdeal::minimalize(n, gens).expect("dimensions agree");
        if seen.insert(ideal.clone()) {
            corpus.push(ideal);
        }
    }
    corpus
}

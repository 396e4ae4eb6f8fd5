//! The type `T(I)` of an m-primary monomial ideal and its generalization
//! `𝒯(I)` with the radical in the denominator.
//!
//! For a monomial ideal both invariants are maxima of a ratio of support
//! functions over nonnegative weight vectors:
//!
//! ```text
//! T(I) = max_w  h_I(w) / min_j w_j        𝒯(I) = max_w  h_I(w) / h_rad(I)(w)
//! ```
//!
//! where `h_J(w) = min_{u in gens(J)} <w, u>`. The denominator is a minimum of
//! linear forms, so fixing which form attains it (and normalizing it to 1)
//! turns each piece into an ordinary linear program in `(t, w)`:
//!
//! ```text
//! maximize t  s.t.  t <= <w, u>  for u in gens(I),
//!                   <w, s> = 1,  <w, s'> >= 1 for the other denominator generators s'
//! ```
//!
//! The invariant is the largest optimum over the pieces. Witness weights come
//! from the optimal vertices, plus every facet normal of the Newton polyhedron
//! that attains the maximum.

use std::collections::BTreeSet;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{ExponentVector, MonomialIdeal};
use crate::jet::{ideal_pullback_order, Arc, JetOrder, DEFAULT_TRUNCATION, MAX_TRUNCATION};
use crate::lp::{solve, LinearProgram, LpOutcome, Relation};
use crate::newton::{newton_polyhedron, support_value};
use crate::polynomial::PolynomialIdeal;
use crate::Rational;

/// A nonnegative weight vector with at least one positive entry, i.e. a
/// monomial valuation `x^u -> <w, u>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some((index, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(Error::NegativeWeight {
                index,
                value: w.to_string(),
            });
        }
        if !weights.iter().any(Signed::is_positive) {
            return Err(Error::ZeroWeight);
        }
        Ok(WeightVector(weights))
    }

    pub fn from_integers(weights: &[u64]) -> Result<Self> {
        Self::new(
            weights
                .iter()
                .map(|&w| Rational::from_integer(w.into()))
                .collect(),
        )
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Scales to the unique proportional vector of coprime nonnegative integers.
    pub fn primitive(&self) -> Vec<u64> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|w| w.numer() * (&lcm / w.denom())).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        ints.iter()
            .map(|x| (x / &gcd).to_u64().expect("primitive weights fit in u64"))
            .collect()
    }

    pub fn normalized(&self) -> WeightVector {
        WeightVector::from_integers(&self.primitive()).expect("scaling preserves positivity")
    }

    /// Number of coordinates with zero weight: the dimension of the
    /// coordinate subspace on which the valuation is centered.
    pub fn center_dim(&self) -> usize {
        self.0.iter().filter(|w| w.is_zero()).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Denominator {
    /// The maximal ideal, for `T`.
    Maximal,
    /// The radical of the ideal, for `𝒯`.
    Radical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub weight: WeightVector,
    /// Order of the ideal along the valuation.
    pub r: Rational,
    /// Order of the denominator ideal along the valuation; always positive.
    pub m: Rational,
    pub ratio: Rational,
    pub center_dim: usize,
}

impl Witness {
    fn evaluate(weight: WeightVector, ideal: &MonomialIdeal, denominator: &MonomialIdeal) -> Result<Option<Self>> {
        let r = support_value(weight.weights(), ideal)?;
        let m = support_value(weight.weights(), denominator)?;
        if !m.is_positive() {
            return Ok(None);
        }
        let ratio = &r / &m;
        let center_dim = weight.center_dim();
        Ok(Some(Witness {
            weight,
            r,
            m,
            ratio,
            center_dim,
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeReport {
    pub value: Rational,
    /// Primitive integer witnesses attaining `value`, sorted by weight.
    pub witnesses: Vec<Witness>,
    pub denominator: Denominator,
    pub ideal: MonomialIdeal,
    pub denominator_ideal: MonomialIdeal,
}

/// `T(I)` for an m-primary monomial ideal.
pub fn type_m_primary(ideal: &MonomialIdeal) -> Result<TypeReport> {
    if !ideal.is_m_primary()? {
        return Err(Error::NotMPrimary);
    }
    let denominator = MonomialIdeal::maximal(ideal.ambient_dim());
    maximize_ratio(ideal, &denominator, Denominator::Maximal)
}

/// `𝒯(I)` for a proper nonzero monomial ideal; equals `T(I)` when `I` is m-primary.
pub fn ttype(ideal: &MonomialIdeal) -> Result<TypeReport> {
    let radical = ideal.radical()?;
    maximize_ratio(ideal, &radical, Denominator::Radical)
}

/// `T` of the real hypersurface `Re(z_{n+1}) + sum |h_i|^2` at the origin.
pub fn boundary_type(ideal: &MonomialIdeal) -> Result<Rational> {
    Ok(type_m_primary(ideal)?.value * Rational::from_integer(2.into()))
}

fn maximize_ratio(
    ideal: &MonomialIdeal,
    denominator: &MonomialIdeal,
    kind: Denominator,
) -> Result<TypeReport> {
    let n = ideal.ambient_dim();
    let num_vars = n + 1;
    let q = |x: u32| Rational::from_integer(x.into());
    let row = |lead: i64, u: &ExponentVector, sign: i64| -> Vec<Rational> {
        std::iter::once(Rational::from_integer(lead.into()))
            .chain(u.entries().iter().map(|&e| q(e) * Rational::from_integer(sign.into())))
            .collect()
    };

    let mut best: Option<Rational> = None;
    let mut candidates: Vec<WeightVector> = Vec::new();
    for pinned in denominator.generators() {
        let mut objective = vec![Rational::zero(); num_vars];
        objective[0] = Rational::one();
        let mut lp = LinearProgram::new(num_vars).maximize(objective).all_nonnegative();
        for u in ideal.generators() {
            lp = lp.constrain(row(1, u, -1), Relation::Le, Rational::zero());
        }
        for s in denominator.generators() {
            let rel = if s == pinned { Relation::Eq } else { Relation::Ge };
            lp = lp.constrain(row(0, s, 1), rel, Rational::one());
        }
        match solve(&lp)? {
            LpOutcome::Optimal { value, witness } => {
                let weight = WeightVector::new(witness[1..].to_vec())?;
                if best.as_ref().is_none_or(|b| value > *b) {
                    best = Some(value);
                }
                candidates.push(weight);
            }
            // The pinned generator is the denominator's minimizer nowhere on
            // the feasible region; that piece contributes nothing.
            LpOutcome::Infeasible => {}
            LpOutcome::Unbounded { .. } => {
                return Err(Error::SolverFailure(format!(
                    "ratio program pinned at {pinned} is unbounded"
                )))
            }
        }
    }
    let value = best.ok_or_else(|| Error::SolverFailure("every ratio program".into()))?;

    // Rees valuations of I: the facets of its Newton polyhedron with positive offset.
    for facet in newton_polyhedron(ideal)?.facets() {
        if facet.offset > 0 {
            candidates.push(WeightVector::from_integers(&facet.normal)?);
        }
    }

    let mut seen = BTreeSet::new();
    let mut witnesses = Vec::new();
    for weight in candidates {
        let weight = weight.normalized();
        if !seen.insert(weight.primitive()) {
            continue;
        }
        if let Some(w) = Witness::evaluate(weight, ideal, denominator)? {
            if w.ratio == value {
                witnesses.push(w);
            } else if w.ratio > value {
                return Err(Error::SolverFailure(format!(
                    "facet weight {:?} beats the linear program optimum",
                    w.weight.primitive()
                )));
            }
        }
    }
    witnesses.sort_by_key(|w| w.weight.primitive());
    Ok(TypeReport {
        value,
        witnesses,
        denominator: kind,
        ideal: ideal.clone(),
        denominator_ideal: denominator.clone(),
    })
}

/// A monomial curve `t -> (c_1 t^{w_1}, ..., c_n t^{w_n})` realizing a witness,
/// with its pullback orders verified by jet evaluation.
#[derive(Clone, Debug)]
pub struct WitnessCurve {
    pub weights: Vec<u64>,
    pub coefficients: Vec<Rational>,
    pub arc: Arc,
    pub ideal_order: u64,
    pub denominator_order: u64,
}

const COEFFICIENT_RETRIES: usize = 8;

/// Draws a nonzero rational `±p/q` with small `p`, `q`.
pub(crate) fn generic_coefficient(rng: &mut ChaCha8Rng) -> Rational {
    let p: i64 = rng.gen_range(1..=97);
    let q: i64 = rng.gen_range(1..=13);
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    Rational::new((sign * p).into(), q.into())
}

/// One curve per witness in `report`, with seeded generic coefficients.
///
/// Coordinates with weight zero become nonzero constants, so curves for `𝒯`
/// may pass through `Z` away from the origin.
pub fn witness_curves(report: &TypeReport, seed: u64) -> Result<Vec<WitnessCurve>> {
    if report.witnesses.is_empty() {
        return Err(Error::SolverFailure("report has no witnesses".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let numerator = PolynomialIdeal::from(&report.ideal);
    let denominator = PolynomialIdeal::from(&report.denominator_ideal);
    let mut curves = Vec::with_capacity(report.witnesses.len());
    for witness in &report.witnesses {
        let weights = witness.weight.primitive();
        let expected_r = witness.r.to_integer().to_u64().expect("integer weights give integer orders");
        let expected_m = witness.m.to_integer().to_u64().expect("integer weights give integer orders");
        let mut truncation = DEFAULT_TRUNCATION;
        while truncation as u64 <= expected_r {
            truncation *= 2;
            if truncation > MAX_TRUNCATION {
                return Err(Error::TruncationExhausted(MAX_TRUNCATION));
            }
        }
        let exponents: Vec<Option<u32>> = weights.iter().map(|&w| Some(w as u32)).collect();

        let mut found = None;
        for _ in 0..COEFFICIENT_RETRIES {
            let coefficients: Vec<Rational> =
                (0..weights.len()).map(|_| generic_coefficient(&mut rng)).collect();
            let arc = Arc::monomial(&exponents, &coefficients, truncation)?;
            let r = ideal_pullback_order(&arc, &numerator)?;
            let m = ideal_pullback_order(&arc, &denominator)?;
            if r == JetOrder::Exact(expected_r as usize) && m == JetOrder::Exact(expected_m as usize) {
                found = Some(WitnessCurve {
                    weights: weights.clone(),
                    coefficients,
                    arc,
                    ideal_order: expected_r,
                    denominator_order: expected_m,
                });
                break;
            }
        }
        curves.push(found.ok_or(Error::GenericityFailure {
            attempts: COEFFICIENT_RETRIES,
        })?);
    }
    Ok(curves)
}

//! Truncated power series in one variable `t` and pullbacks of polynomials
//! along arcs `t -> (γ_1(t), ..., γ_n(t))`.
//!
//! Only ring operations are needed to read off vanishing orders, so jets never
//! divide.

use std::collections::HashMap;

use num::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::invariants::generic_coefficient;
use crate::polynomial::{Polynomial, PolynomialIdeal};
use crate::Rational;

pub const DEFAULT_TRUNCATION: usize = 64;
pub const MAX_TRUNCATION: usize = 1024;

/// Order of vanishing at `t = 0` of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JetOrder {
    Exact(usize),
    /// Every stored coefficient vanishes; the true order is at least this.
    AtLeast(usize),
}

impl JetOrder {
    pub fn exact(self) -> Option<usize> {
        match self {
            JetOrder::Exact(k) => Some(k),
            JetOrder::AtLeast(_) => None,
        }
    }

    fn min(self, other: JetOrder) -> JetOrder {
        use JetOrder::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(a), AtLeast(_)) | (AtLeast(_), Exact(a)) => Exact(a),
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
        }
    }
}

/// A power series known modulo `t^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    coeffs: Vec<Rational>,
}

impl Jet {
    pub fn zero(truncation: usize) -> Self {
        Jet {
            coeffs: vec![Rational::zero(); truncation],
        }
    }

    /// `c t^k` modulo `t^N`.
    pub fn monomial(c: Rational, k: usize, truncation: usize) -> Self {
        let mut jet = Jet::zero(truncation);
        if k < truncation {
            jet.coeffs[k] = c;
        }
        jet
    }

    pub fn constant(c: Rational, truncation: usize) -> Self {
        Jet::monomial(c, 0, truncation)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>, truncation: usize) -> Self {
        coeffs.resize(truncation, Rational::zero());
        Jet { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn order(&self) -> JetOrder {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => JetOrder::Exact(k),
            None => JetOrder::AtLeast(self.truncation()),
        }
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn check(&self, other: &Jet) -> Result<()> {
        if self.truncation() == other.truncation() {
            Ok(())
        } else {
            Err(Error::TruncationMismatch(self.truncation(), other.truncation()))
        }
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        Ok(Jet {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        let n = self.truncation();
        let mut out = Jet::zero(n);
        let rhs: Vec<(usize, &Rational)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for &(j, b) in &rhs {
                if i + j >= n {
                    break;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Jet {
        let mut acc = Jet::constant(Rational::from_integer(1.into()), self.truncation());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same truncation");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same truncation");
            }
        }
        acc
    }
}

/// A parametrized arc given by one jet per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    components: Vec<Jet>,
    /// Weights of a monomial arc (`None` for identically zero coordinates).
    weights: Option<Vec<Option<u32>>>,
    seed: Option<u64>,
}

impl Arc {
    /// Errors unless the components share a truncation and some component is
    /// non-constant.
    pub fn new(components: Vec<Jet>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidArc("no components".into()));
        };
        let truncation = first.truncation();
        if let Some(c) = components.iter().find(|c| c.truncation() != truncation) {
            return Err(Error::TruncationMismatch(truncation, c.truncation()));
        }
        if !components
            .iter()
            .any(|c| c.coeffs.iter().skip(1).any(|x| !x.is_zero()))
        {
            return Err(Error::InvalidArc("arc is constant".into()));
        }
        Ok(Arc {
            components,
            weights: None,
            seed: None,
        })
    }

    /// `t -> (c_1 t^{w_1}, ..., c_n t^{w_n})`; a `None` weight gives the zero
    /// coordinate and a zero weight the constant `c_j`.
    pub fn monomial(weights: &[Option<u32>], coeffs: &[Rational], truncation: usize) -> Result<Self> {
        if weights.len() != coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: coeffs.len(),
            });
        }
        let components = weights
            .iter()
            .zip(coeffs)
            .map(|(w, c)| match w {
                Some(w) => Jet::monomial(c.clone(), *w as usize, truncation),
                None => Jet::zero(truncation),
            })
            .collect();
        let mut arc = Arc::new(components)?;
        arc.weights = Some(weights.to_vec());
        Ok(arc)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn components(&self) -> &[Jet] {
        &self.components
    }

    pub fn weights(&self) -> Option<&[Option<u32>]> {
        self.weights.as_deref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn truncation(&self) -> usize {
        self.components[0].truncation()
    }

    pub fn passes_through_origin(&self) -> bool {
        self.components.iter().all(|c| c.coeff(0).is_zero())
    }

    /// Order of the pullback of the maximal ideal: the least component order.
    pub fn order(&self) -> JetOrder {
        self.components
            .iter()
            .map(Jet::order)
            .reduce(JetOrder::min)
            .expect("arcs have components")
    }
}

/// Order of `f(γ(t))`.
pub fn pullback_order(arc: &Arc, f: &Polynomial) -> Result<JetOrder> {
    Ok(pullback(arc, f)?.order())
}

fn pullback(arc: &Arc, f: &Polynomial) -> Result<Jet> {
    if f.ambient_dim() != arc.dim() {
        return Err(Error::DimensionMismatch {
            expected: arc.dim(),
            found: f.ambient_dim(),
        });
    }
    let n = arc.truncation();
    let mut powers: HashMap<(usize, u32), Jet> = HashMap::new();
    let mut total = Jet::zero(n);
    for (u, c) in f.terms() {
        let mut term = Jet::constant(c.clone(), n);
        for (j, &e) in u.entries().iter().enumerate().filter(|(_, &e)| e > 0) {
            let p = powers
                .entry((j, e))
                .or_insert_with(|| arc.components[j].pow(e));
            term = term.mul(p)?;
        }
        total = total.add(&term)?;
    }
    Ok(total)
}

/// Order of the pulled-back ideal: the least order over the generators.
pub fn ideal_pullback_order(arc: &Arc, ideal: &PolynomialIdeal) -> Result<JetOrder> {
    ideal
        .generators()
        .iter()
        .map(|f| pullback_order(arc, f))
        .try_fold(None, |acc: Option<JetOrder>, o| {
            let o = o?;
            Ok(Some(acc.map_or(o, |a| a.min(o))))
        })?
        .ok_or_else(|| Error::InvalidArc("ideal has no generators".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeStrategy {
    pub weight_bound: u32,
    pub truncation: usize,
    pub seed: u64,
}

impl Default for ProbeStrategy {
    fn default() -> Self {
        ProbeStrategy {
            weight_bound: 6,
            truncation: DEFAULT_TRUNCATION,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProbeOutcome {
    /// `max ord(γ*I) / ord(γ*m)` over the scored arcs; a lower bound for `T(I)`.
    pub lower_bound: Rational,
    pub best_arc: Arc,
    pub best_weights: Vec<Option<u32>>,
    /// Coefficients of the best arc; entries at zero coordinates are unused.
    pub best_coefficients: Vec<Rational>,
    pub ideal_order: usize,
    pub arc_order: usize,
    pub arcs_scored: usize,
    /// Weights of arcs whose order stayed undecided at the largest truncation.
    pub inconclusive: Vec<Vec<Option<u32>>>,
}

/// Lower bound for the type of a polynomial ideal by scoring monomial arcs.
///
/// Arcs have component weights in `{1, ..., B}` or are identically zero in some
/// coordinates (not all). Each arc gets fresh generic coefficients from the
/// seeded generator, in enumeration order. An arc on which every generator
/// vanishes identically is discarded; an arc whose order is undecided at the
/// current truncation is retried with the truncation doubled up to
/// [`MAX_TRUNCATION`].
pub fn probe_type(ideal: &PolynomialIdeal, strategy: &ProbeStrategy) -> Result<ProbeOutcome> {
    if ideal.generators().is_empty() {
        return Err(Error::ZeroIdeal);
    }
    ideal.require_vanishing_at_origin()?;
    if strategy.weight_bound == 0 || strategy.truncation == 0 {
        return Err(Error::Config("weight bound and truncation must be positive".into()));
    }
    let n = ideal.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(strategy.seed);
    // Slot value 0 encodes a zero coordinate.
    let bounds = vec![strategy.weight_bound; n];
    let mut slots = vec![0u32; n];

    let mut best: Option<(Rational, Vec<Option<u32>>, Vec<Rational>, Arc, usize, usize)> = None;
    let mut scored = 0;
    let mut inconclusive = Vec::new();
    while crate::newton::advance(&mut slots, &bounds) {
        let weights: Vec<Option<u32>> = slots.iter().map(|&s| (s > 0).then_some(s)).collect();
        let coeffs: Vec<Rational> = (0..n).map(|_| generic_coefficient(&mut rng)).collect();
        let arc_order = weights.iter().flatten().copied().min().expect("some slot is nonzero") as usize;
        // Beyond this degree the pullback polynomial has no terms.
        let degree_bound = ideal
            .generators()
            .iter()
            .filter_map(|f| f.max_weighted_degree(&weights))
            .max();
        let Some(degree_bound) = degree_bound else {
            continue;
        };

        let mut truncation = strategy.truncation;
        let order = loop {
            let arc = Arc::monomial(&weights, &coeffs, truncation)?.with_seed(strategy.seed);
            match ideal_pullback_order(&arc, ideal)? {
                JetOrder::Exact(k) => break Some((k, arc)),
                JetOrder::AtLeast(_) if truncation as u64 > degree_bound => break None,
                JetOrder::AtLeast(_) if truncation * 2 <= MAX_TRUNCATION => truncation *= 2,
                JetOrder::AtLeast(_) => {
                    inconclusive.push(weights.clone());
                    break None;
                }
            }
        };
        let Some((ideal_order, arc)) = order else {
            continue;
        };
        scored += 1;
        let ratio = Rational::new(ideal_order.into(), arc_order.into());
        // Enumeration is not lexicographic, so ties resolve explicitly.
        let better = match &best {
            None => true,
            Some((b, bw, ..)) => ratio > *b || (ratio == *b && weight_key(&weights) < weight_key(bw)),
        };
        if better {
            best = Some((ratio, weights, coeffs, arc, ideal_order, arc_order));
        }
    }
    let (lower_bound, best_weights, best_coefficients, best_arc, ideal_order, arc_order) =
        best.ok_or_else(|| Error::InvalidArc("no arc could be scored".into()))?;
    debug_assert!(!lower_bound.is_negative());
    Ok(ProbeOutcome {
        lower_bound,
        best_arc,
        best_weights,
        best_coefficients,
        ideal_order,
        arc_order,
        arcs_scored: scored,
        inconclusive,
    })
}

// Lexicographic order on weights with the zero coordinate sorting last.
fn weight_key(w: &[Option<u32>]) -> Vec<u32> {
    w.iter().map(|x| x.unwrap_or(u32::MAX)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{ExponentVector, MonomialIdeal};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec()).unwrap()
    }

    fn poly(n: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::new(n, terms.iter().map(|(u, c)| (ev(u), q(*c)))).unwrap()
    }

    fn kohn(b: u32) -> PolynomialIdeal {
        PolynomialIdeal::new(
            2,
            vec![poly(2, &[(&[3, 0], 1), (&[1, b], 1)]), poly(2, &[(&[0, 1], 1)])],
        )
        .unwrap()
    }

    fn arc(weights: &[Option<u32>], coeffs: &[i64]) -> Arc {
        let c: Vec<Rational> = coeffs.iter().map(|&x| q(x)).collect();
        Arc::monomial(weights, &c, DEFAULT_TRUNCATION).unwrap()
    }

    #[test]
    fn jet_arithmetic() {
        let a = Jet::from_coeffs(vec![q(0), q(1), q(1)], 4); // t + t^2
        let sq = a.mul(&a).unwrap(); // t^2 + 2t^3 + (t^4 truncated)
        assert_eq!(sq, Jet::from_coeffs(vec![q(0), q(0), q(1), q(2)], 4));
        assert_eq!(a.pow(2), sq);
        assert_eq!(a.pow(4).order(), JetOrder::AtLeast(4));
        assert_eq!(sq.order(), JetOrder::Exact(2));
        assert!(a.mul(&Jet::zero(5)).is_err());
    }

    #[test]
    fn pullback_orders() {
        let f = poly(2, &[(&[2, 1], 1), (&[1, 2], 1)]);
        assert_eq!(pullback_order(&arc(&[Some(1), Some(1)], &[1, 1]), &f).unwrap(), JetOrder::Exact(3));

        let g = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        for n in [8, 64] {
            let a = Arc::monomial(&[Some(1), Some(1)], &[q(1), q(-1)], n).unwrap();
            assert_eq!(pullback_order(&a, &g).unwrap(), JetOrder::AtLeast(n));
        }

        // t^3 + t * t^6
        let k = poly(2, &[(&[3, 0], 1), (&[1, 2], 1)]);
        assert_eq!(pullback_order(&arc(&[Some(1), Some(3)], &[1, 1]), &k).unwrap(), JetOrder::Exact(3));
    }

    #[test]
    fn ideal_pullback_orders() {
        assert_eq!(
            ideal_pullback_order(&arc(&[Some(1), None], &[1, 1]), &kohn(2)).unwrap(),
            JetOrder::Exact(3)
        );
        assert_eq!(
            ideal_pullback_order(&arc(&[Some(1), Some(3)], &[1, 1]), &kohn(2)).unwrap(),
            JetOrder::Exact(3)
        );
        let m = PolynomialIdeal::from(&MonomialIdeal::from_exponents(2, &[&[2, 1], &[1, 2]]).unwrap());
        assert_eq!(
            ideal_pullback_order(&arc(&[Some(1), Some(1)], &[1, 1]), &m).unwrap(),
            JetOrder::Exact(3)
        );
    }

    #[test]
    fn probes() {
        let s = ProbeStrategy::default();
        assert_eq!(probe_type(&kohn(2), &s).unwrap().lower_bound, q(3));

        let i = MonomialIdeal::from_exponents(2, &[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(probe_type(&PolynomialIdeal::from(&i), &s).unwrap().lower_bound, q(3));

        let m = PolynomialIdeal::from(&MonomialIdeal::maximal(2));
        assert_eq!(probe_type(&m, &s).unwrap().lower_bound, q(1));
    }

    #[test]
    fn probe_rejects_units() {
        let p = PolynomialIdeal::new(1, vec![poly(1, &[(&[0], 1), (&[1], 1)])]).unwrap();
        assert_eq!(
            probe_type(&p, &ProbeStrategy::default()).unwrap_err(),
            Error::NonVanishingGenerator { index: 0 }
        );
    }

    #[test]
    fn probe_discards_arcs_inside_the_zero_set() {
        // (xy): every axis arc lies in the zero set.
        let p = PolynomialIdeal::from(&MonomialIdeal::from_exponents(2, &[&[1, 1]]).unwrap());
        let out = probe_type(&p, &ProbeStrategy { weight_bound: 2, ..Default::default() }).unwrap();
        assert!(out.best_weights.iter().all(Option::is_some));
        assert!(out.inconclusive.is_empty());
    }

    #[test]
    fn constant_arcs_are_rejected() {
        let c = Jet::constant(q(1), 4);
        assert!(matches!(Arc::new(vec![c]), Err(Error::InvalidArc(_))));
    }
}

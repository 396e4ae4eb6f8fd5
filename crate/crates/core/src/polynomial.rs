use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::{ExponentVector, MonomialIdeal};
use crate::Rational;

/// A nonzero polynomial with rational coefficients, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ambient_dim: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    /// Sums the given terms; like exponents are combined and zero coefficients dropped.
    pub fn new<I>(ambient_dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut map: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
        for (u, c) in terms {
            if u.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: u.dim(),
                });
            }
            *map.entry(u).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(Polynomial {
            ambient_dim,
            terms: map,
        })
    }

    pub fn monomial(u: ExponentVector) -> Self {
        let ambient_dim = u.dim();
        Polynomial {
            ambient_dim,
            terms: BTreeMap::from([(u, Rational::one())]),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The single exponent if this is a scalar multiple of a monomial.
    pub fn as_monomial(&self) -> Option<&ExponentVector> {
        match self.terms.len() {
            1 => self.terms.keys().next(),
            _ => None,
        }
    }

    pub fn vanishes_at_origin(&self) -> bool {
        !self.terms.keys().any(ExponentVector::is_zero)
    }

    /// Largest weighted degree of a term, where `None` weights mark variables
    /// that are set to zero (terms involving them are skipped).
    pub fn max_weighted_degree(&self, weights: &[Option<u32>]) -> Option<u64> {
        self.terms
            .keys()
            .filter_map(|u| {
                u.entries()
                    .iter()
                    .zip(weights)
                    .try_fold(0u64, |acc, (&e, w)| match (e, w) {
                        (0, _) => Some(acc),
                        (_, None) => None,
                        (e, Some(w)) => Some(acc + u64::from(e) * u64::from(*w)),
                    })
            })
            .max()
    }
}

/// An ideal given by a list of polynomial generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialIdeal {
    ambient_dim: usize,
    generators: Vec<Polynomial>,
}

impl PolynomialIdeal {
    pub fn new(ambient_dim: usize, generators: Vec<Polynomial>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::EmptyAmbientSpace);
        }
        if let Some(p) = generators.iter().find(|p| p.ambient_dim != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: p.ambient_dim,
            });
        }
        Ok(PolynomialIdeal {
            ambient_dim,
            generators,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The monomial ideal generated by these polynomials, when each is a monomial.
    pub fn as_monomial_ideal(&self) -> Option<MonomialIdeal> {
        let exps: Option<Vec<ExponentVector>> = self
            .generators
            .iter()
            .map(|p| p.as_monomial().cloned())
            .collect();
        MonomialIdeal::minimalize(self.ambient_dim, exps?).ok()
    }

    /// Errors on the first generator with a nonzero constant term.
    pub fn require_vanishing_at_origin(&self) -> Result<()> {
        match self.generators.iter().position(|p| !p.vanishes_at_origin()) {
            Some(index) => Err(Error::NonVanishingGenerator { index }),
            None => Ok(()),
        }
    }
}

impl From<&MonomialIdeal> for PolynomialIdeal {
    fn from(ideal: &MonomialIdeal) -> Self {
        PolynomialIdeal {
            ambient_dim: ideal.ambient_dim(),
            generators: ideal
                .generators()
                .iter()
                .cloned()
                .map(Polynomial::monomial)
                .collect(),
        }
    }
}

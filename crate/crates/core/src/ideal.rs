//! Monomial ideals in `k[x_1, ..., x_n]` represented by their minimal generating
//! exponent vectors.
//!
//! Every [`MonomialIdeal`] is stored minimalized (no generator divides another)
//! and sorted lexicographically, so structural equality is ideal equality.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x^u`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyAmbientSpace);
        }
        Ok(ExponentVector(entries))
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The exponent of the variable `x_j`.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut entries = vec![0; n];
        entries[j] = 1;
        ExponentVector(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total degree.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// `x^self` divides `x^other`, i.e. `self <= other` componentwise.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    /// The squarefree monomial with the same support.
    pub fn support(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|&e| u32::from(e > 0)).collect())
    }

    /// Bitmask of the variables occurring in `x^self`.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |mask, (j, _)| mask | (1 << j))
    }

    /// Index `j` if this is a pure power `x_j^a` with `a >= 1`.
    pub fn pure_power_index(&self) -> Option<usize> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((j, _)), None) => Some(j),
            _ => None,
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.dim(),
            })
        }
    }
}

impl From<ExponentVector> for Vec<u32> {
    fn from(u: ExponentVector) -> Self {
        u.0
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    ambient_dim: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, keeping only the divisibility-minimal
    /// ones in lexicographic order. An empty generating set gives the zero ideal.
    pub fn minimalize<I>(ambient_dim: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        if ambient_dim == 0 {
            return Err(Error::EmptyAmbientSpace);
        }
        let mut all: Vec<ExponentVector> = gens.into_iter().collect();
        for g in &all {
            g.check_dim(ambient_dim)?;
        }
        Ok(MonomialIdeal {
            ambient_dim,
            generators: minimal_elements(&mut all),
        })
    }

    /// Convenience constructor from raw exponent rows.
    pub fn from_exponents(ambient_dim: usize, rows: &[&[u32]]) -> Result<Self> {
        Self::minimalize(
            ambient_dim,
            rows.iter().map(|r| ExponentVector(r.to_vec())),
        )
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(n: usize) -> Self {
        MonomialIdeal {
            ambient_dim: n,
            generators: (0..n).rev().map(|j| ExponentVector::unit(n, j)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal {
            ambient_dim: n,
            generators: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(ExponentVector::is_zero)
    }

    /// Errors unless the ideal is nonzero and contained in the maximal ideal.
    pub fn require_proper(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else if self.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    /// `x^u` lies in the ideal.
    pub fn member(&self, u: &ExponentVector) -> Result<bool> {
        u.check_dim(self.ambient_dim)?;
        Ok(self.generators.iter().any(|g| g.divides(u)))
    }

    /// A generator dividing `x^u`, if any.
    pub fn dividing_generator(&self, u: &ExponentVector) -> Option<&ExponentVector> {
        self.generators.iter().find(|g| g.divides(u))
    }

    /// `other` is contained in `self`.
    pub fn contains(&self, other: &MonomialIdeal) -> Result<bool> {
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(other
            .generators
            .iter()
            .all(|u| self.generators.iter().any(|g| g.divides(u))))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let sums = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.add(b)));
        MonomialIdeal::minimalize(self.ambient_dim, sums)
    }

    /// `I^k`: minimal elements among all sums of `k` generators.
    ///
    /// Built as `I^(k-1) * I` with minimalization at every step, which yields the
    /// same minimal set as minimalizing all size-`k` multisets at once.
    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// The radical, generated by the supports of the generators.
    pub fn radical(&self) -> Result<MonomialIdeal> {
        self.require_proper()?;
        MonomialIdeal::minimalize(
            self.ambient_dim,
            self.generators.iter().map(ExponentVector::support),
        )
    }

    /// Dimension of the zero locus: `n` minus the size of a smallest set of
    /// variables meeting the support of every generator.
    pub fn dim_zero_locus(&self) -> Result<usize> {
        self.require_proper()?;
        let n = self.ambient_dim;
        let supports: Vec<u64> = self
            .generators
            .iter()
            .map(ExponentVector::support_mask)
            .collect();
        let min_hitting = (0u64..1 << n)
            .filter(|&s| supports.iter().all(|&g| g & s != 0))
            .map(|s| s.count_ones() as usize)
            .min()
            .expect("the full variable set meets every nonzero support");
        Ok(n - min_hitting)
    }

    /// The zero locus is exactly the origin: every variable has a pure power
    /// among the generators.
    pub fn is_m_primary(&self) -> Result<bool> {
        self.require_proper()?;
        let mut seen = vec![false; self.ambient_dim];
        for j in self.generators.iter().filter_map(ExponentVector::pure_power_index) {
            seen[j] = true;
        }
        Ok(seen.into_iter().all(|s| s))
    }

    pub fn max_generator_degree(&self) -> Result<u64> {
        self.generators
            .iter()
            .map(ExponentVector::degree)
            .max()
            .ok_or(Error::ZeroIdeal)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

fn minimal_elements(all: &mut Vec<ExponentVector>) -> Vec<ExponentVector> {
    // A proper divisor has strictly smaller degree, so scanning by degree only
    // needs to look back at already-kept elements.
    all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    all.dedup();
    let mut kept: Vec<ExponentVector> = Vec::with_capacity(all.len());
    for u in all.drain(..) {
        if !kept.iter().any(|g| g.divides(&u)) {
            kept.push(u);
        }
    }
    kept.sort();
    kept
}

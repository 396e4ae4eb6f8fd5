//! Newton polyhedra of monomial ideals.
//!
//! The Newton polyhedron `P(I)` is `conv(exponents of I) + R^n_{>=0}`. Its
//! lattice points are the exponents of the integral closure of `I`, and the
//! lattice points of `k * P(I)` those of the closure of `I^k`. Facets are found
//! with the double-description method applied to the cone of valid inequalities
//!
//! ```text
//! D = { (a, b) in Q^n x Q : a >= 0,  <a, g> + b >= 0 for every generator g }
//! ```
//!
//! whose extreme rays other than `(0, ..., 0, 1)` are exactly the facets
//! `<a, u> >= -b` of `P(I)`.

use fixedbitset::FixedBitSet;
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{ExponentVector, MonomialIdeal};
use crate::Rational;

/// The inequality `<normal, u> >= offset`, with a primitive nonnegative normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<u64>,
    pub offset: u64,
}

impl Facet {
    pub fn evaluate(&self, u: &ExponentVector) -> u64 {
        self.normal
            .iter()
            .zip(u.entries())
            .map(|(&v, &e)| v * u64::from(e))
            .sum()
    }

    pub fn offset_rational(&self) -> Rational {
        Rational::from_integer(self.offset.into())
    }

    /// Coordinate facets `x_j >= 0`.
    pub fn is_coordinate(&self) -> bool {
        self.offset == 0 && self.normal.iter().filter(|&&v| v != 0).count() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    ambient_dim: usize,
    facets: Vec<Facet>,
    source: MonomialIdeal,
}

impl NewtonPolyhedron {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Facets in lexicographic order of `(normal, offset)`.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn source(&self) -> &MonomialIdeal {
        &self.source
    }

    /// `u` lies in `k * P`.
    pub fn contains_scaled(&self, u: &ExponentVector, k: u32) -> Result<bool> {
        if u.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: u.dim(),
            });
        }
        Ok(self.contains_unchecked(u.entries(), u64::from(k)))
    }

    fn contains_unchecked(&self, u: &[u32], k: u64) -> bool {
        self.facets.iter().all(|f| {
            let lhs: u64 = f.normal.iter().zip(u).map(|(&v, &e)| v * u64::from(e)).sum();
            lhs >= k * f.offset
        })
    }

    /// Minimal lattice points of `k * P`, i.e. the minimal generators of the
    /// integral closure of `I^k`.
    ///
    /// Every minimal point lies in the box `prod_j [0, k * M_j]` with `M_j` the
    /// largest `j`-th exponent among the generators: the recession cone contains
    /// `e_j`, and each vertex of `k * P` has `j`-th entry at most `k * M_j`, so a
    /// point with `u_j > k * M_j` still lies in `k * P` after lowering `u_j` by one.
    pub fn closure_generators(&self, k: u32) -> Result<MonomialIdeal> {
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        let n = self.ambient_dim;
        let k64 = u64::from(k);
        let bounds: Vec<u32> = (0..n)
            .map(|j| {
                k * self
                    .source
                    .generators()
                    .iter()
                    .map(|g| g.entries()[j])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut minimal = Vec::new();
        let mut u = vec![0u32; n];
        loop {
            if self.contains_unchecked(&u, k64) && self.is_locally_minimal(&mut u, k64) {
                minimal.push(ExponentVector::new(u.clone())?);
            }
            if !advance(&mut u, &bounds) {
                break;
            }
        }
        MonomialIdeal::minimalize(n, minimal)
    }

    // In k*P, u is a minimal lattice point iff no u - e_j is in k*P.
    fn is_locally_minimal(&self, u: &mut [u32], k: u64) -> bool {
        for j in 0..u.len() {
            if u[j] == 0 {
                continue;
            }
            u[j] -= 1;
            let below = self.contains_unchecked(u, k);
            u[j] += 1;
            if below {
                return false;
            }
        }
        true
    }
}

/// Mixed-radix increment over `prod_j [0, bounds[j]]`; false once exhausted.
pub(crate) fn advance(u: &mut [u32], bounds: &[u32]) -> bool {
    for j in 0..u.len() {
        if u[j] < bounds[j] {
            u[j] += 1;
            return true;
        }
        u[j] = 0;
    }
    false
}

pub fn newton_polyhedron(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    ideal.require_proper()?;
    let n = ideal.ambient_dim();
    let gens = ideal.generators();
    let mut facets = if let [g] = gens {
        // Principal ideal: a translated orthant.
        (0..n)
            .map(|j| {
                let mut normal = vec![0; n];
                normal[j] = 1;
                Facet {
                    normal,
                    offset: u64::from(g.entries()[j]),
                }
            })
            .collect()
    } else {
        double_description(n, gens)
    };
    facets.sort();
    facets.dedup();
    debug_assert!(facets.iter().all(|f| {
        gens.iter().all(|g| f.evaluate(g) >= f.offset)
            && gens.iter().any(|g| f.evaluate(g) == f.offset)
    }));
    Ok(NewtonPolyhedron {
        ambient_dim: n,
        facets,
        source: ideal.clone(),
    })
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn double_description(n: usize, gens: &[ExponentVector]) -> Vec<Facet> {
    let num_constraints = n + gens.len();
    // Constraint c < n is a_c >= 0; constraint n + i is <g_i, a> + b >= 0.
    let value = |ray: &[BigInt], c: usize| -> BigInt {
        if c < n {
            ray[c].clone()
        } else {
            let g = &gens[c - n];
            g.entries()
                .iter()
                .zip(ray)
                .fold(ray[n].clone(), |acc, (&e, a)| acc + a * BigInt::from(e))
        }
    };

    // The first n + 1 constraints form a simplicial cone; its rays are the
    // columns of the inverse constraint matrix.
    let g0 = gens[0].entries();
    let mut rays: Vec<Ray> = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut coords = vec![BigInt::zero(); n + 1];
        coords[j] = BigInt::one();
        coords[n] = -BigInt::from(g0[j]);
        let mut zeros = FixedBitSet::with_capacity(num_constraints);
        for c in (0..n).filter(|&c| c != j) {
            zeros.insert(c);
        }
        zeros.insert(n);
        rays.push(Ray { coords, zeros });
    }
    let mut apex = vec![BigInt::zero(); n + 1];
    apex[n] = BigInt::one();
    let mut zeros = FixedBitSet::with_capacity(num_constraints);
    zeros.insert_range(0..n);
    rays.push(Ray {
        coords: apex,
        zeros,
    });

    let dim = n + 1;
    for c in n + 1..num_constraints {
        let values: Vec<BigInt> = rays.iter().map(|r| value(&r.coords, c)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if negative.is_empty() {
            for (ray, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    ray.zeros.insert(c);
                }
            }
            continue;
        }

        let mut fresh = Vec::new();
        for &p in &positive {
            for &q in &negative {
                let common = &rays[p].zeros & &rays[q].zeros;
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.is_subset(&rays[r].zeros));
                if !adjacent {
                    continue;
                }
                // vp * q_ray - vq * p_ray vanishes on constraint c; both weights positive.
                let vp = &values[p];
                let vq = -&values[q];
                let coords: Vec<BigInt> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[q].coords)
                    .map(|(a, b)| &vq * a + vp * b)
                    .collect();
                let mut zeros = common;
                zeros.insert(c);
                fresh.push(Ray {
                    coords: primitive(coords),
                    zeros,
                });
            }
        }

        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (mut ray, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                ray.zeros.insert(c);
            }
            next.push(ray);
        }
        next.extend(fresh);
        rays = next;
    }

    rays.into_iter()
        .filter(|r| r.coords[..n].iter().any(|a| !a.is_zero()))
        .map(|r| {
            let normal = r.coords[..n]
                .iter()
                .map(|a| a.to_u64().expect("facet normal entries are small and nonnegative"))
                .collect();
            let offset = (-&r.coords[n])
                .to_u64()
                .expect("facet offsets are small and nonnegative");
            Facet { normal, offset }
        })
        .collect()
}

fn primitive(coords: Vec<BigInt>) -> Vec<BigInt> {
    let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        coords
    } else {
        coords.into_iter().map(|c| c / &g).collect()
    }
}

/// `min_{u in gens(I)} <w, u>`: the order of `I` along the monomial valuation
/// with weights `w`.
pub fn support_value(weights: &[Rational], ideal: &MonomialIdeal) -> Result<Rational> {
    if weights.len() != ideal.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: ideal.ambient_dim(),
            found: weights.len(),
        });
    }
    if let Some((index, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
        return Err(Error::NegativeWeight {
            index,
            value: w.to_string(),
        });
    }
    ideal
        .generators()
        .iter()
        .map(|u| {
            weights
                .iter()
                .zip(u.entries())
                .map(|(w, &e)| w * Rational::from_integer(e.into()))
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .min()
        .ok_or(Error::ZeroIdeal)
}

/// `x^u` lies in the integral closure of `I^k`.
pub fn closure_member(u: &ExponentVector, ideal: &MonomialIdeal, k: u32) -> Result<bool> {
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    newton_polyhedron(ideal)?.contains_scaled(u, k)
}

/// Minimal generators of the integral closure of `I^k`.
pub fn closure_generators(ideal: &MonomialIdeal, k: u32) -> Result<MonomialIdeal> {
    newton_polyhedron(ideal)?.closure_generators(k)
}

//! Effective Nullstellensatz checks for monomial ideals.
//!
//! With `n` the ambient dimension, `rad(I)^⌈n 𝒯(I)⌉ ⊆ I`, and the closure of
//! `I^n` lies in `I`. Both are theorems; a failed check here is a bug, and is
//! reported as [`Error::TheoremViolation`] naming the offending monomial.

use num::{BigInt, ToPrimitive};

use crate::error::{Error, Result};
use crate::ideal::{ExponentVector, MonomialIdeal};
use crate::invariants::ttype;
use crate::newton::newton_polyhedron;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NssReport {
    pub ttype_value: Rational,
    pub exponent: u32,
    pub inclusion: InclusionCertificate,
    pub sigma_min: u32,
    pub briancon_skoda: bool,
    pub max_degree: u64,
    pub geometric_bound: BigInt,
    pub geometric_ok: bool,
}

/// Each minimal generator of `rad(I)^N` paired with a generator of `I` dividing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionCertificate {
    pub exponent: u32,
    pub holds: bool,
    pub certificates: Vec<(ExponentVector, ExponentVector)>,
    pub violations: Vec<ExponentVector>,
}

fn ceil_to_u32(x: &Rational) -> u32 {
    x.ceil()
        .to_integer()
        .to_u32()
        .expect("Nullstellensatz exponents are small")
}

/// `⌈n 𝒯(I)⌉`.
pub fn nss_exponent(ideal: &MonomialIdeal) -> Result<u32> {
    let t = ttype(ideal)?.value;
    Ok(exponent_for(ideal, &t))
}

fn exponent_for(ideal: &MonomialIdeal, ttype_value: &Rational) -> u32 {
    ceil_to_u32(&(ttype_value * Rational::from_integer(ideal.ambient_dim().into())))
}

pub fn verify_nss_inclusion(ideal: &MonomialIdeal) -> Result<InclusionCertificate> {
    let exponent = nss_exponent(ideal)?;
    inclusion_certificate(ideal, exponent)
}

fn inclusion_certificate(ideal: &MonomialIdeal, exponent: u32) -> Result<InclusionCertificate> {
    let power = ideal.radical()?.power(exponent)?;
    let mut certificates = Vec::new();
    let mut violations = Vec::new();
    for u in power.generators() {
        match ideal.dividing_generator(u) {
            Some(g) => certificates.push((u.clone(), g.clone())),
            None => violations.push(u.clone()),
        }
    }
    Ok(InclusionCertificate {
        exponent,
        holds: violations.is_empty(),
        certificates,
        violations,
    })
}

/// Least `σ >= 1` with `rad(I)^σ ⊆ I`.
pub fn sigma_min(ideal: &MonomialIdeal) -> Result<u32> {
    let radical = ideal.radical()?;
    let mut power = radical.clone();
    let mut sigma = 1;
    // Terminates: rad(I)^σ ⊆ I for σ at least the largest exponent in any generator.
    while !ideal.contains(&power)? {
        power = power.product(&radical)?;
        sigma += 1;
    }
    Ok(sigma)
}

/// Closure of `I^n` is contained in `I`.
pub fn verify_briancon_skoda(ideal: &MonomialIdeal) -> Result<bool> {
    let n = ideal.ambient_dim() as u32;
    let closure = newton_polyhedron(ideal)?.closure_generators(n)?;
    ideal.contains(&closure)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricBound {
    pub holds: bool,
    pub max_degree: u64,
    pub bound: BigInt,
    pub ttype_value: Rational,
}

/// `𝒯(I) <= d^n` with `d` the largest generator degree.
pub fn verify_geometric_bound(ideal: &MonomialIdeal) -> Result<GeometricBound> {
    let t = ttype(ideal)?.value;
    geometric_bound_for(ideal, t)
}

fn geometric_bound_for(ideal: &MonomialIdeal, ttype_value: Rational) -> Result<GeometricBound> {
    let d = ideal.max_generator_degree()?;
    let bound = num::pow(BigInt::from(d), ideal.ambient_dim());
    Ok(GeometricBound {
        holds: ttype_value <= Rational::from_integer(bound.clone()),
        max_degree: d,
        bound,
        ttype_value,
    })
}

/// Runs every check, turning any failure into [`Error::TheoremViolation`].
pub fn nss_report(ideal: &MonomialIdeal) -> Result<NssReport> {
    let t = ttype(ideal)?.value;
    let exponent = exponent_for(ideal, &t);
    let inclusion = inclusion_certificate(ideal, exponent)?;
    if let Some(u) = inclusion.violations.first() {
        return Err(Error::TheoremViolation {
            check: "nullstellensatz inclusion".into(),
            detail: format!("{u} lies in rad(I)^{exponent} but not in I = {ideal}"),
        });
    }
    let sigma = sigma_min(ideal)?;
    if sigma > exponent {
        return Err(Error::TheoremViolation {
            check: "minimal exponent".into(),
            detail: format!("sigma_min = {sigma} exceeds {exponent} for I = {ideal}"),
        });
    }
    let bs = verify_briancon_skoda(ideal)?;
    if !bs {
        let closure = closure_violation(ideal)?;
        return Err(Error::TheoremViolation {
            check: "briancon-skoda".into(),
            detail: format!("{closure} lies in the closure of I^n but not in I = {ideal}"),
        });
    }
    let geometric = geometric_bound_for(ideal, t.clone())?;
    if !geometric.holds {
        return Err(Error::TheoremViolation {
            check: "geometric bound".into(),
            detail: format!("𝒯 = {t} exceeds d^n = {} for I = {ideal}", geometric.bound),
        });
    }
    Ok(NssReport {
        ttype_value: t,
        exponent,
        inclusion,
        sigma_min: sigma,
        briancon_skoda: bs,
        max_degree: geometric.max_degree,
        geometric_bound: geometric.bound,
        geometric_ok: geometric.holds,
    })
}

fn closure_violation(ideal: &MonomialIdeal) -> Result<ExponentVector> {
    let n = ideal.ambient_dim() as u32;
    let closure = newton_polyhedron(ideal)?.closure_generators(n)?;
    closure
        .generators()
        .iter()
        .find(|u| ideal.dividing_generator(u).is_none())
        .cloned()
        .ok_or_else(|| Error::SolverFailure("no violating monomial found".into()))
}

/// The rounded-up exponent equals `n 𝒯` itself (no rounding happened).
pub fn exponent_is_exact(ideal: &MonomialIdeal, ttype_value: &Rational) -> bool {
    let scaled = ttype_value * Rational::from_integer(ideal.ambient_dim().into());
    Rational::from_integer(exponent_for(ideal, ttype_value).into()) == scaled
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, rows).unwrap()
    }

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::new(e.to_vec()).unwrap()
    }

    #[test]
    fn exponents() {
        assert_eq!(nss_exponent(&ideal(2, &[&[2, 1], &[1, 2]])).unwrap(), 3);
        assert_eq!(nss_exponent(&MonomialIdeal::maximal(2)).unwrap(), 2);
        assert_eq!(nss_exponent(&ideal(2, &[&[2, 0], &[1, 1]])).unwrap(), 4);
    }

    #[test]
    fn inclusion_certificates() {
        let c = verify_nss_inclusion(&ideal(2, &[&[2, 1], &[1, 2]])).unwrap();
        assert!(c.holds);
        assert_eq!(c.certificates.len(), 1);
        assert_eq!(c.certificates[0].0, ev(&[3, 3]));
        assert!(ev(&[3, 3]) == c.certificates[0].1.add(&ev(&[1, 2])) || ev(&[3, 3]) == c.certificates[0].1.add(&ev(&[2, 1])));

        assert!(verify_nss_inclusion(&MonomialIdeal::maximal(2)).unwrap().holds);

        let c = verify_nss_inclusion(&ideal(2, &[&[2, 0], &[1, 1]])).unwrap();
        assert_eq!(c.certificates, vec![(ev(&[4, 0]), ev(&[2, 0]))]);
    }

    #[test]
    fn sigma_min_values() {
        assert_eq!(sigma_min(&ideal(2, &[&[2, 1], &[1, 2]])).unwrap(), 2);
        assert_eq!(sigma_min(&ideal(2, &[&[2, 0], &[1, 1]])).unwrap(), 2);
        assert_eq!(sigma_min(&MonomialIdeal::maximal(2)).unwrap(), 1);
    }

    #[test]
    fn briancon_skoda() {
        assert!(verify_briancon_skoda(&ideal(2, &[&[2, 0], &[0, 2]])).unwrap());
        assert!(verify_briancon_skoda(&ideal(2, &[&[1, 1]])).unwrap());
        assert!(verify_briancon_skoda(&MonomialIdeal::maximal(2)).unwrap());
    }

    #[test]
    fn geometric_bounds() {
        let g = verify_geometric_bound(&ideal(2, &[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!((g.holds, g.max_degree, g.bound), (true, 3, BigInt::from(9)));
        assert!(verify_geometric_bound(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap().holds);
        let g = verify_geometric_bound(&MonomialIdeal::maximal(2)).unwrap();
        assert_eq!((g.holds, g.bound), (true, BigInt::from(1)));
    }

    #[test]
    fn full_report() {
        let r = nss_report(&ideal(2, &[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!((r.exponent, r.sigma_min, r.briancon_skoda, r.geometric_ok), (3, 2, true, true));
        assert!(exponent_is_exact(&ideal(2, &[&[2, 1], &[1, 2]]), &r.ttype_value));
    }
}

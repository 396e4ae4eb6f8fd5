//! Exact calculator for the type `T(I)` and the Nullstellensatz invariant
//! `𝒯(I)` of monomial ideals.
//!
//! Both invariants are maxima of ratios of monomial-valuation orders. For a
//! monomial ideal they reduce to support functions of Newton polyhedra, and are
//! computed by exact rational linear programming. The crate also produces
//! witness curves attaining them, checks the effective Nullstellensatz and
//! Briançon-Skoda inclusions they control, and probes general polynomial ideals
//! with truncated arcs.
//!
//! ```
//! use fintype::{ttype, MonomialIdeal, Rational};
//!
//! let ideal = MonomialIdeal::from_exponents(2, &[&[2, 1], &[1, 2]]).unwrap();
//! assert_eq!(ttype(&ideal).unwrap().value, Rational::new(3.into(), 2.into()));
//! ```

pub mod error;
pub mod format;
pub mod ideal;
pub mod invariants;
pub mod jet;
pub mod lp;
pub mod newton;
pub mod nss;
pub mod oracle;
pub mod polynomial;

/// Exact rational numbers used throughout.
pub type Rational = num::BigRational;

pub use error::{Error, Result};
pub use ideal::{ExponentVector, MonomialIdeal};
pub use invariants::{
    boundary_type, ttype, type_m_primary, witness_curves, Denominator, TypeReport, WeightVector,
    Witness, WitnessCurve,
};
pub use jet::{ideal_pullback_order, probe_type, pullback_order, Arc, Jet, JetOrder, ProbeStrategy};
pub use newton::{closure_generators, closure_member, newton_polyhedron, support_value, Facet, NewtonPolyhedron};
pub use nss::{nss_exponent, nss_report, sigma_min, verify_briancon_skoda, verify_geometric_bound, verify_nss_inclusion, NssReport};
pub use polynomial::{Polynomial, PolynomialIdeal};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/newton.md")]
    mod newton {}
    #[doc = include_str!("../../../book/src/type.md")]
    mod type_invariants {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/nullstellensatz.md")]
    mod nullstellensatz {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

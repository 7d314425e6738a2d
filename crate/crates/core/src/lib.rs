//! Exact extension data under which ideals of semilocal Dedekind domains
//! become powers of radical ideals.
//!
//! Ideals are given by their factorization over the maximal ideals of a
//! [`Spot`]; the positive exponents are the Rees integers. Extensions are
//! described by [`ConsistentSystem`]s (per-site splitting, ramification and
//! residue-degree data) and stacked into [`ExtensionChain`]s.

pub mod arith;
pub mod backends;
pub mod cli;
pub mod decimal;
pub mod equivalence;
pub mod error;
pub mod ideal;
pub mod multi;
pub mod normalization;
pub mod selftest;
pub mod system;

pub use error::{Error, Result};
pub use ideal::{gcd_normalize, radical, rees_profile, FactoredIdeal, ReesProfile, ResidueField, Site, Spot, SpotFlags};
pub use normalization::{
    closed_form, normalize, prime_elim_step, split_one_step, uniformize, verify_report, ClosedFormMode,
    NormalizationReport, Strategy,
};
pub use system::{
    apply_system, check_realizability, compose_chain, ConsistentSystem, Evidence, EvidenceKind, ExtensionChain,
    ExtensionStep, Triple,
};

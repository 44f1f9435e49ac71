//! Oriented-matroid analysis of discrete exponential families.
//!
//! Everything is computed over exact rationals: the oriented matroid of a
//! sufficient-statistics matrix (circuits, cocircuits, composition, axiom
//! checks), the finite implicit equation system cutting out the closure of
//! the associated exponential family, exact membership tests for that
//! closure, and the enumeration of all possible support sets together with
//! the face combinatorics of the convex support (f- and s-vectors,
//! neighborliness, Gale duality).
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! Matrix --(linalg)--> kernel --(matroid)--> circuits --(expfam)--> equations
//!                                         \--(supports)--> facial sets / faces
//! ```
//!
//! with [`models`] providing the reference families (one-dimensional example,
//! binary parity models, cyclic polytopes, moment matrices) used throughout
//! the test suite and the CLI.

pub mod error;
pub mod expfam;
pub mod fm;
pub mod linalg;
pub mod matroid;
pub mod models;
pub mod rational;
pub mod supports;

pub use error::Error;
pub use expfam::{
    boundary_sequence, implicit_equations, in_closure, in_closure_with_tol, in_family_full_support,
    moment_map, parametrize, Distribution, ExponentialFamily, ImplicitEquation, MembershipReport,
    SideValue, Violation, DEFAULT_FLOAT_TOLERANCE,
};
pub use linalg::{solve, InfeasibilityCertificate, Matrix, SolveOutcome, Vector};
pub use matroid::{
    axioms_check, circuit_count_bound, cocircuits, compose, conformal_decomposition,
    enumerate_circuits, is_acyclic, sign_consistent_circuit, sign_of, signed_circuits, AxiomReport,
    AxiomViolation, CircuitVector, OrientedMatroid, SignedSubset,
};
pub use rational::Rational;
pub use supports::{
    enumerate_supports, enumerate_supports_brute_force, f_vector, facial_certificate, is_facial,
    is_facial_in, neighborliness, s_vector, uniform_on, FacialCertificate, FacialOutcome,
    FacialSet, FarkasWitness, SupportFamily,
};

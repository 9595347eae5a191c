//! Exact operator laboratory for conformally invariant bidifferential
//! operators on the round sphere.
//!
//! The crate classifies weight configurations, generates the exact rational
//! coefficient tables of every basis operator, evaluates the operators along
//! two independent paths — a symbolic flat-cone engine and an intrinsic
//! spectral engine — and packages zero-tolerance verification suites for the
//! structural identities these operators satisfy (tangentiality, the
//! commutator with first spherical harmonics, formal self-adjointness, and
//! the reduction to powers of the Laplacian at degenerate weights).
//!
//! All arithmetic is exact: scalars are arbitrary-precision rationals, a
//! check passes only when a difference is identically zero, and every
//! failure carries an exact rational witness.
//!
//! ```
//! use orlab_core::{basis_tables, classify, evaluate_or_operator, rat, ratio,
//!                  SphereFunction, WeightConfig};
//!
//! // Order-two operator on S^5 at weights (-1, -1): a one-dimensional space.
//! let config = WeightConfig::new(5, 1, rat(-1), rat(-1));
//! assert_eq!(classify(&config).unwrap().dimension, 1);
//!
//! let table = &basis_tables(&config).unwrap()[0];
//! assert_eq!(table.get(0, 0), ratio(1, 4));
//!
//! // Applied to constants it returns the constant -5/2, exactly.
//! let one = SphereFunction::one(5);
//! let result = evaluate_or_operator(table, &one, &one);
//! assert_eq!(result, SphereFunction::constant(5, ratio(-5, 2)));
//! ```

pub mod ambient;
pub mod coeff;
pub mod poly;
pub mod rational;
pub mod sphere;
pub mod verify;

pub use ambient::{
    apply_bidifferential_ambient, bidifferential_ambient, harmonic_extend, q_element,
    AmbientElement,
};
pub use coeff::{
    basis_tables, check_recursion, classify, closed_form_entry, linear_operator_coeffs,
    multinomial, pochhammer, tables_to_json, CaseTag, CoeffError, CoeffTable, LinearCoeffTable,
    Normalization, SpaceClassification, WeightConfig,
};
pub use poly::Polynomial;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use sphere::{
    evaluate_linear_operator, evaluate_or_operator, harmonic_decompose, integrate,
    laplace_beltrami, monomial_integral, product_integral, shifted_laplacian, sphere_multiply,
    HarmonicPolynomial, SphereError, SphereFunction,
};
pub use verify::{
    verify_commutator_identity, verify_cross_agreement, verify_formal_self_adjointness,
    verify_gjms_reduction, verify_linear_fsa, verify_tangentiality,
    verify_tangentiality_converse, CaseResult, VerificationReport,
};

//! Exact computations with subalgebras of finite codimension in K[x1, …, xn].
//!
//! A subalgebra is described by an ordered list of subalgebra conditions
//! (character differences and α-derivations, both represented as
//! [`LinearFunctional`]s). From such a list the crate builds minimal SAGBI
//! bases level by level, and derives codimension, spectrum, clusters and
//! α-derivation spaces.
//!
//! All algorithms are generic over an exact [`Field`]; the aliases below fix
//! arbitrary-precision rationals, which is what the CLI and tests use.

pub mod derivations;
pub mod error;
pub mod functional;
pub mod jet;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod qn;
pub mod random;
pub mod report;
pub mod sagbi;
pub mod scalar;
pub mod spectrum;

pub use error::{Error, Result};
pub use functional::{
    character_difference, check_leibniz, express_in_span, Condition, ConditionKind, DerivativeAtom,
    LinearFunctional,
};
pub use linalg::{exact_linear_algebra, EchelonBasis, Matrix};
pub use poly::{parse_polynomial, Monomial, PartialMultiset, Point, Polynomial, TermOrder};
pub use sagbi::{
    build_from_conditions, codimension, kernel_sagbi, minimalize, CodimReport, ConditionFiltration, FiltrationBuilder,
    SagbiBasis,
};
pub use scalar::Field;
pub use derivations::{cotangent_dimension, derivation_space, DerivationSpace};
pub use qn::{
    p_n, pi_n, qn_build, qprime_membership, verify_d_of_q, verify_main_theorem, verify_qprime_eq_q, PointSet, QnSpec,
};
pub use report::{Check, Report};
pub use spectrum::{ansatz_bound, are_equivalent, spectrum, Spectrum};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
pub type Poly = Polynomial<Rational>;
pub type RPoint = Point<Rational>;
pub type Functional = LinearFunctional<Rational>;

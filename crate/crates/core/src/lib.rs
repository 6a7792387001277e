//! Exact-arithmetic invariants of tame cyclic covers of arithmetic surfaces.
//!
//! Given the special fiber of such a cover over one residue prime — fiber
//! components with ramification indices and inertia exponents, the
//! intersection matrix, and per-component Euler characteristics — this crate
//! computes, entirely in arbitrary-precision rational arithmetic:
//!
//! * resolvent divisors of the structure sheaf, the relative canonical
//!   sheaf, its square root, and arbitrary invariant divisors
//!   ([`resolvent`]);
//! * the quadratic/linear intersection forms on them, the T-invariant, the
//!   integral Euler-characteristic differences and exponent vectors
//!   ([`intersection`]);
//! * group-ring arithmetic over (Z/m)^*, Stickelberger elements, the s_i
//!   and b-sums and their exact identities ([`galois`]);
//! * class groups of real quadratic fields via reduced indefinite binary
//!   quadratic forms, principality tests, the signed residue sums t_i and
//!   the norm-exponent map ([`quadratic`]);
//! * the modular-curve quotient pipeline tying all of the above together,
//!   including the prime search for covers with non-trivial classes
//!   ([`modular`]).
//!
//! Floating point is never used: results are class-group exponents, where
//! rounding is meaningless. Every operation is a pure function over
//! immutable values, so anything here may be called concurrently on shared
//! or distinct inputs.

pub mod arith;
pub mod cover;
pub mod error;
pub mod galois;
pub mod intersection;
pub mod modular;
pub mod quadratic;
pub mod resolvent;
pub mod verify;

pub use cover::{
    canonical_degree, local_exponent, validate_cover, CharacterSpec, CoverDatum, FiberComponent,
    IntersectionMatrix,
};
pub use error::{Error, Result};
pub use galois::{
    b_sum, b_sum_factorization_holds, s_sum, stickelberger, stickelberger_integral,
    stickelberger_level, trace_lift, verify_power_sum_identities, GaloisRingElement,
    PowerSumIdentityReport,
};
pub use intersection::{
    a_invariant, canonical_pair, euler_delta, exponent_vector, pair, t_invariant, twisted_delta,
    ExponentVector, TInvariant,
};
pub use modular::{
    build_cover, exponent_elements, norm_report, search_prime, t_closed_form, ClassReport,
    ExponentReport, ModularParams, NormData, SearchOutcome, Verdict,
};
pub use quadratic::{
    class_group, norm_exponent, split_prime_class, t_sum, ClassGroupSummary, FormClass, QuadForm,
};
pub use resolvent::{
    lagrange_valuation_oracle, resolvent_coefficient, resolvent_divisor, support_divisor,
    ResolventDivisor, SheafSpec,
};

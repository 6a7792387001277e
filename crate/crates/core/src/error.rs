//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enum. Validation reports the first violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("even group order: {0}")]
    EvenGroupOrder(u64),
    #[error("component {id}: ramification index {e} does not divide the group order {n}")]
    RamificationIndex { id: String, e: u64, n: u64 },
    #[error("component {id}: inertia exponent not a unit: gcd({m}, {e}) != 1")]
    InertiaNotUnit { id: String, m: u64, e: u64 },
    #[error("component {id}: inertia exponent {m} out of range [0, {e})")]
    InertiaOutOfRange { id: String, m: u64, e: u64 },
    #[error("component {id}: unramified component must have inertia exponent 0, got {m}")]
    UnramifiedInertia { id: String, m: u64 },
    #[error("duplicate component id {0}")]
    DuplicateComponent(String),
    #[error("unknown component id {0}")]
    UnknownComponent(String),
    #[error("asymmetric intersection matrix at ({0}, {1})")]
    AsymmetricIntersection(String, String),
    #[error("diagonal intersection entry for {id} is {entry}, expected the self-intersection {expected}")]
    DiagonalMismatch {
        id: String,
        entry: i64,
        expected: i64,
    },
    #[error("negative intersection number {value} between distinct components {a} and {b}")]
    NegativeIntersection { a: String, b: String, value: i64 },
    #[error("residue prime {0} is not prime")]
    ResidueNotPrime(u64),
    #[error("group order {n} is not coprime to the residue prime {p}: the cover would be wild")]
    WildCover { n: u64, p: u64 },
    #[error("raw character exponent {value} at component {id} out of range [0, {e})")]
    CharacterOutOfRange { id: String, value: u64, e: u64 },
    #[error("component {id}: custom sheaf selected but no custom coefficient given")]
    MissingCustomCoefficient { id: String },
    #[error("local exponent {nphi} out of range [0, {e})")]
    ExponentOutOfRange { nphi: u64, e: u64 },
    #[error("non-integral Euler-characteristic difference {0}: the input does not describe a tame cover")]
    NonIntegralDelta(String),
    #[error("Euler-characteristic deltas are defined for the structure sheaf, the canonical sheaf and its square root only")]
    SheafOutOfScope,
    #[error("group-ring modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("index {index} is not a unit modulo {modulus}")]
    NonUnitIndex { index: u64, modulus: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("invalid b-sum parameters (l, s, t, u) = ({l}, {s}, {t}, {u}): require l an odd prime, 1 <= t <= s, gcd(u, l) = 1 and l^s within range")]
    InvalidBSum { l: u64, s: u32, t: u32, u: u64 },
    #[error("trace lift from modulus {from} to {to} requires both to be powers of the same prime")]
    InvalidTraceLift { from: u64, to: u64 },
    #[error("{0} is not a prime congruent to 1 mod 4")]
    NotOneModFourPrime(u64),
    #[error("{p} does not split in Q(sqrt({l}))")]
    NotSplit { l: u64, p: u64 },
    #[error("non-integral coefficient in a norm-exponent input")]
    NonIntegralCoefficient,
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(String, String),
    #[error("character index {a} out of range [1, {l})")]
    CharacterIndexOutOfRange { a: u64, l: u64 },
    #[error("invalid modular parameters: {0}")]
    InvalidModularParams(String),
    #[error("divisibility failure: {0}")]
    Divisibility(String),
}

pub type Result<T> = std::result::Result<T, Error>;

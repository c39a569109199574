//! Exact arithmetic for character sums attached to cyclic isogenies of
//! elliptic curves over finite fields.
//!
//! The library builds finite fields F_{p^n} (p >= 5), general Weierstrass
//! curves with the full chord-tangent group law, Velu isogenies with their
//! complement ("dual up to Frobenius") isogenies, truncated Laurent
//! expansions at infinity for normalization constants, and the cokernel
//! character chi(R) = zeta^j attached to a cyclic rational kernel. On top of
//! that it verifies, with zero tolerance, the identity
//!
//!   S_P = sum over R in E_2(F_q) of chi(R) x_R
//!       = sum over j of zeta^j x_{jP}
//!
//! together with its closed lambda-forms, exactness of the kernel/image
//! sequence, the Frobenius factorization phi' o phi = 1 - Fr, and the
//! classical class-number identities the m = 2 case specializes to.
//!
//! Everything is deterministic: canonical moduli, canonical element order,
//! and canonical roots of unity are fixed once and reproduced bit-for-bit
//! across runs.

pub mod charsum;
pub mod classnum;
pub mod families;
pub mod ff;
pub mod formal;
pub mod numutil;
pub mod report;
pub mod velu;
pub mod weierstrass;
pub mod wire;

use thiserror::Error;

/// Library-wide error type. Variants marked "internal" indicate a broken
/// invariant (a bug or an impossible mathematical state), not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is below 5")]
    CharTooSmall(u64),
    #[error("polynomial is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not a square")]
    NonResidue,
    #[error("gcd({q}, {m}) != 1: no {m}-th roots of unity in any extension")]
    NotCoprime { q: u128, m: u64 },
    #[error("no root of the source modulus in the target field")]
    NoEmbedding,
    #[error("element does not lie in the embedded subfield")]
    NotInSubfield,
    #[error("curve is singular (discriminant = 0)")]
    SingularCurve,
    #[error("point does not satisfy the curve equation")]
    NotOnCurve,
    #[error("points lie on different curves")]
    CurveMismatch,
    #[error("field cardinality {0} exceeds the enumeration bound")]
    FieldTooLarge(u128),
    #[error("curve coefficients are not fixed by the q-power Frobenius")]
    CoefficientsNotRational,
    #[error("point does not have exact order {0}")]
    NotExactOrder(u64),
    #[error("internal: not enough sample points to interpolate the codomain")]
    TooFewSamplePoints,
    #[error("internal: complement codomain differs from the original domain")]
    ComplementCodomainMismatch,
    #[error("series precision {have} below required {need}")]
    PrecisionTooLow { have: usize, need: usize },
    #[error("internal: pulled-back differential is not proportional to the invariant differential")]
    NonProportional,
    #[error("no closed lambda-form for m = {0}")]
    UnsupportedM(u64),
    #[error("internal: no rational preimage under the complement isogeny")]
    NoPreimage,
    #[error("internal: character exponent not found in 0..m")]
    NoExponent,
    #[error("no parametrized family for m = {0}")]
    NoSuchFamily(u64),
    #[error("parameter yields a point of wrong order")]
    WrongOrder,
    #[error("prime {0} divides 2b(a^2 - 4b): bad reduction")]
    BadReduction(u64),
    #[error("p must be 1 mod m with m odd and greater than 2")]
    CongruenceViolated,
    #[error("malformed wire data: {0}")]
    WireFormat(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that signal a broken invariant rather than bad input
    /// or an unsatisfiable query. The CLI maps these to exit code 3.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::TooFewSamplePoints
                | Error::ComplementCodomainMismatch
                | Error::NonProportional
                | Error::NoPreimage
                | Error::NoExponent
                | Error::Internal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

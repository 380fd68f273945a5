use thiserror::Error;

/// Errors surfaced by semigroup constructors and chain analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The complement of the requested gap set is not closed under addition.
    /// Carries one witnessing pair of members whose sum is a gap.
    #[error("complement is not additively closed: {a} and {b} are members but {a}+{b} is a gap")]
    ClosureViolation { a: u64, b: u64 },

    /// Generators with gcd > 1 span a set with infinite complement.
    #[error("generators are not coprime (gcd = {gcd})")]
    NotCoprime { gcd: u64 },

    /// The semigroup of all non-negative integers has no parent in the tree.
    #[error("the root semigroup has no parent")]
    RootHasNoParent,

    /// The gcd of the nonzero left elements is undefined for ordinary semigroups.
    #[error("operation is undefined for ordinary semigroups")]
    OrdinaryInput,

    /// The requested quantity exists only under a different chain classification.
    #[error("operation does not apply to this semigroup")]
    NotApplicable,

    /// Scale-down divisor does not divide every nonzero left element.
    #[error("divisor {d} does not divide every nonzero left element")]
    InvalidDivisor { d: u64 },

    /// The mandatory member set is not coprime, so the descendant search
    /// would not terminate.
    #[error("descendant search is unbounded: mandatory members have gcd {gcd}")]
    Unbounded { gcd: u64 },

    /// Chain count was requested for a semigroup outside every infinite chain.
    #[error("semigroup does not lie in any infinite chain")]
    NotInChain,

    /// A chain prefix was too short for the seed to stabilize.
    #[error("chain prefix is too short to recover a seed")]
    PrefixTooShort,

    /// Parameter outside the documented range.
    #[error("parameter out of range: {0}")]
    RangeError(String),

    /// The semigroup does not have the fixed-multiplicity tuple shape.
    #[error("semigroup is not expressible in tuple notation with multiplicity {multiplicity}")]
    NotExpressible { multiplicity: u64 },

    /// The multiplicity argument must be a prime number.
    #[error("{m} is not prime")]
    NotPrime { m: u64 },

    /// Constructing the semigroup would need a membership window beyond the guard.
    #[error("membership window of {required} bits exceeds the limit of {limit}")]
    WindowTooLarge { required: u64, limit: u64 },
}

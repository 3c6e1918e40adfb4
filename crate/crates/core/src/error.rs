use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("size cap exceeded: {requested} elements requested, cap is {cap}")]
    SizeCapExceeded { requested: u128, cap: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{m} does not divide the multiplicative group order {group_order}")]
    OrderDoesNotDivide { m: u64, group_order: u64 },
    #[error("element not found in group table (broken closure)")]
    UnknownElement,
    #[error("generators produce {found} elements, expected {expected}")]
    GeneratorsDoNotGenerate { found: usize, expected: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("prime {prime} does not divide group order {order}")]
    PrimeDoesNotDivide { prime: u64, order: u64 },
    #[error("normal subgroup lattice exceeds cap of {0} subgroups")]
    LatticeCapExceeded(usize),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("unit has multiplicative order {actual}, expected {expected}")]
    WrongOrder { expected: u64, actual: u64 },
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error("group is not an A-group (some Sylow subgroup is nonabelian)")]
    NotAGroup,
    #[error("group order has {0} distinct prime divisors, at most 2 supported")]
    TooManyPrimes(usize),
    #[error("decomposition invariant failed: {0}")]
    DecompositionInvariantFailed(String),
    #[error("group was not built by the family constructor")]
    NotFamilyGroup,
}

impl Error {
    /// True for the two resource-cap variants.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::SizeCapExceeded { .. } | Error::LatticeCapExceeded(_))
    }
}

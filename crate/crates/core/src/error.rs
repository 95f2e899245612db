use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("bad parameters: {}", .0.join("; "))]
    BadParams(Vec<String>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("quaternion is not a unit")]
    NotUnit,
    #[error("group has no quaternion model")]
    NotQuaternionGroup,
    #[error("group is not Sylow-cycloidal")]
    NotCycloidal,
    #[error("group is not Sylow-cyclic")]
    NotSylowCyclic,
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("character exponent {k} is not prime to {m}")]
    NotFaithful { k: i64, m: usize },
    #[error("orders {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("group has no quaternion labels")]
    NoQuaternionLabels,
    #[error("group is not freely representable")]
    NotFreelyRepresentable,
    #[error("subgroups do not partition the nonidentity elements: {0}")]
    NotAPartition(String),
    #[error("operands belong to different groups")]
    ParentMismatch,
    #[error("conductor {from} does not divide {to}")]
    BadConductor { from: u32, to: u32 },
    #[error("set is not closed under conjugation")]
    NotConjugationClosed,
    #[error("computation cancelled or deadline reached")]
    Cancelled,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

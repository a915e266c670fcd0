use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidCartanType(String),
    #[error("lattice does not contain the root lattice")]
    LatticeDoesNotContainRoots,
    #[error(
        "lattice generators do not span a full-rank lattice (rank {rank}, expected {expected})"
    )]
    LatticeNotFullRank { rank: usize, expected: usize },
    #[error("group exceeds the enumeration cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("weight is not dominant")]
    NonDominantWeight,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("geometric factor needs a nonzero root")]
    ZeroRoot,
    #[error("group is infinite")]
    InfiniteGroup,
    #[error("Galois action is not elliptic")]
    NotElliptic,
    #[error("Galois action does not preserve the coroot lattice")]
    ActionDoesNotPreserveCorootLattice,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("homomorphism does not respect the relations of its source")]
    InvalidHom,
    #[error("character support leaves the root lattice")]
    SupportOutsideRootLattice,
    #[error("empty range of m values")]
    EmptyRange,
}

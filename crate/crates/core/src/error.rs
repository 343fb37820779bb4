use thiserror::Error;

use crate::complex::Face;

/// Errors raised by the algorithms in this crate.
///
/// Variants split into precondition failures (bad input for the requested
/// operation) and internal failures, where a computed object broke an
/// invariant that should hold unconditionally. See [`Error::is_internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count {0} outside 1..=64")]
    BadVertexCount(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("complex is not pure")]
    NotPure,
    #[error("complex has no facets of positive size")]
    Degenerate,

    #[error("interval specification has no parts")]
    EmptySpec,
    #[error("interval [{lo},{hi}] invalid for n = {n}")]
    BadInterval { lo: usize, hi: usize, n: usize },
    #[error("interval parts must have strictly increasing left endpoints")]
    UnorderedParts,
    #[error("interval [{0},{1}] is nested in another part")]
    NestedParts(usize, usize),
    #[error("rank must be positive")]
    ZeroRank,
    #[error("not an interval complex: facet {facet} spans an interval missing {missing}")]
    NotIntervalComplex { facet: Face, missing: Face },
    #[error("facets of mixed sizes inside clique interval {0}")]
    MixedRanks(Face),
    #[error("not a unit-interval complex")]
    NotUnitInterval,
    #[error("requires dimension > 1, got {0}")]
    DimensionTooSmall(isize),
    #[error("interval parts do not partition [1,n]")]
    NotPartition,

    #[error("generators span a rank {rank} sublattice of Z^{dim}")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("cone contains a line")]
    NotPointed,
    #[error("expected ambient dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("value does not fit in a machine integer")]
    Overflow,

    #[error("set is not sortable: sort({0}, {1}) leaves the set")]
    NotSortable(Face, Face),
    #[error("no facet form contains t")]
    NoTForms,
    #[error("{what} exceeds the supported bound {bound}")]
    TooLarge { what: &'static str, bound: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True when the error signals a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_) | Error::Overflow)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

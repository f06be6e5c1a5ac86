use thiserror::Error;

/// Every failure the library can report. Each variant carries a stable
/// machine-readable code (see [`Error::code`]) that the command-line front
/// end forwards verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown series `{0}`")]
    UnknownSeries(String),
    #[error("lattice is not between the root lattice and the weight lattice: {0}")]
    LatticeNotIntermediate(String),
    #[error("rank {rank} exceeds the configured cap {cap}")]
    RankCapExceeded { rank: usize, cap: usize },
    #[error("Weyl group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },
    #[error("not a subset of the roots: {0}")]
    NotASubsetOfRoots(String),
    #[error("root subset is not closed under addition: {0}")]
    NotClosed(String),
    #[error("not a subgroup of the ambient scope")]
    NotASubgroup,
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("objects belong to different root data")]
    MismatchedDatum,
    #[error("elements live over different ambient lattices")]
    DatumMismatch,
    #[error("shift class is not stable under the acting Weyl group")]
    ShiftNotStable,
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not dominant for the subgroup")]
    NotHDominant(String),
    #[error("element is not anti-invariant")]
    NotAntiInvariant,
    #[error("twist class does not match: {0}")]
    BadTwist(String),
    #[error("element is not invariant under the subgroup Weyl group")]
    NotWHInvariant,
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("homogeneous space has no invariant spin structure")]
    NotSpin,
    #[error("character is not c-spinorial")]
    NotCSpinorial,
    #[error("subgroup is not a standard Levi subgroup")]
    NotLevi,
    #[error("character does not lie in X(H)")]
    NotInXH,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("basis has {found} elements, expected {expected}")]
    WrongBasisSize { expected: usize, found: usize },
    #[error("basis twists do not pair to the orientation class")]
    BadTwistPairing,
    #[error("every sample point was too close to a singular denominator")]
    DegenerateSample,
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownSeries(_) => "unknown_series",
            Error::LatticeNotIntermediate(_) => "lattice_not_intermediate",
            Error::RankCapExceeded { .. } => "rank_cap_exceeded",
            Error::OrderCapExceeded { .. } => "order_cap_exceeded",
            Error::NotASubsetOfRoots(_) => "not_a_subset_of_roots",
            Error::NotClosed(_) => "not_closed",
            Error::NotASubgroup => "not_a_subgroup",
            Error::NotARoot(_) => "not_a_root",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::MismatchedDatum => "mismatched_datum",
            Error::DatumMismatch => "datum_mismatch",
            Error::ShiftNotStable => "shift_not_stable",
            Error::NotDominant(_) => "not_dominant",
            Error::NotHDominant(_) => "not_h_dominant",
            Error::NotAntiInvariant => "not_anti_invariant",
            Error::BadTwist(_) => "bad_twist",
            Error::NotWHInvariant => "not_wh_invariant",
            Error::InexactDivision(_) => "inexact_division",
            Error::NotSpin => "not_spin",
            Error::NotCSpinorial => "not_c_spinorial",
            Error::NotLevi => "not_levi",
            Error::NotInXH => "not_in_xh",
            Error::InternalInconsistency(_) => "internal_inconsistency",
            Error::WrongBasisSize { .. } => "wrong_basis_size",
            Error::BadTwistPairing => "bad_twist_pairing",
            Error::DegenerateSample => "degenerate_sample",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::Overflow(_) => "overflow",
            Error::Unsupported(_) => "unsupported",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

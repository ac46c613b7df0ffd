use alloc::string::String;

use crate::setcalc::Kernel;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed value literal {0:?}")]
    ValueSyntax(String),
    #[error("x ⊘ y is only defined for finite x")]
    OslashInfiniteNumerator,
    #[error("empty kernel where a nonempty one is required")]
    EmptyKernel,
    #[error("carrier must have at least one point")]
    EmptyCarrier,
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("carrier of {size} points exceeds the limit of {max}")]
    CarrierTooLarge { size: usize, max: usize },
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("unknown hyperspace structure {0:?}")]
    UnknownStructure(String),
    #[error("set {0:?} is not a subset of the carrier")]
    OutOfCarrier(Kernel),
    #[error("table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("monotone axiom violated: kernel {smaller:?} ⊆ {larger:?} at point {point}")]
    Monotone { smaller: Kernel, larger: Kernel, point: usize },
    #[error("centered axiom violated at point {0}")]
    Centered(usize),
    #[error("set {0:?} is not closed")]
    NotClosed(Kernel),
    #[error("set {0:?} is not an element of the hyperspace carrier")]
    NotInHyperCarrier(Kernel),
    #[error("hyperspace filter needs a nonempty kernel family")]
    EmptyHyperFilter,
    #[error("operation needs a hyperspace whose filter carrier equals its limit carrier")]
    MixedHyperCarrier,
    #[error("tower thresholds must be strictly increasing and end at ∞")]
    TowerThresholds,
    #[error("tower layers must coarsen as the threshold grows (violated above threshold index {0})")]
    TowerAntitone(usize),
    #[error("tower layer at ∞ must be antidiscrete")]
    TowerTop,
    #[error("tower layers live on carriers of different sizes")]
    TowerCarrier,
}

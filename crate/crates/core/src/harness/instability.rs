use crate::complex::TimeValue;
use crate::exactla::{int, Scalar};
use crate::harmonic::{canonical_barcode, subordinate_as_barcode, subordinate_barcode, HarmonicError};
use crate::harness::examples::swap_pair;
use crate::metrics::bottleneck;
use crate::persistence::persistence_barcode;

/// Bottleneck distances between the two swap-pair filtrations for one gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstabilityReport {
    pub gap: Scalar,
    /// Amount by which the two edge times move.
    pub swap: Scalar,
    pub d_subordinate: TimeValue,
    pub d_canonical: TimeValue,
    pub d_persistence: TimeValue,
}

pub fn instability_at(gap: &Scalar) -> Result<InstabilityReport, HarmonicError> {
    let (left, right) = swap_pair(gap);
    let sub = |f| -> Result<_, HarmonicError> {
        Ok(subordinate_as_barcode(1, &subordinate_barcode(f, 1, &persistence_barcode(f, 1))?))
    };
    let d = |a, b| bottleneck(a, b).expect("same dimension");
    Ok(InstabilityReport {
        gap: gap.clone(),
        swap: int(1),
        d_subordinate: d(&sub(&left)?, &sub(&right)?),
        d_canonical: d(&canonical_barcode(&left, 1)?, &canonical_barcode(&right, 1)?),
        d_persistence: d(&persistence_barcode(&left, 1), &persistence_barcode(&right, 1)),
    })
}

/// The swap pair at gaps 10, 100, 1000 and 10000.
pub fn instability_demo() -> Result<Vec<InstabilityReport>, HarmonicError> {
    [10, 100, 1000, 10_000].iter().map(|&g| instability_at(&int(g))).collect()
}

//! Localization of a depth sensor in a known polygonal map.
//!
//! The workspace is preprocessed into a rotational trapezoidal decomposition
//! (RTD) of the pose space `W × S¹`; single-reading and antipodal-reading
//! queries are answered from indices built over its cells.

pub mod antipodal;
pub mod contrib;
pub mod curves;
pub mod fixtures;
pub mod geom;
pub mod interval_tree;
pub mod opt;
pub mod oracle;
pub mod rtd;
pub mod single;
pub mod visibility;

pub use geom::{Direction, Point, Scalar, Workspace};
pub use rtd::{build_rtd, Rtd, RtdCell};

/// Default numeric tolerance for trigonometric evaluation.
pub const EPS: f64 = 1e-9;

static EPS_BITS: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0x3E11_2E0B_E826_D695);

/// Current tolerance; `EPS` unless overridden with [`set_eps`].
pub fn eps() -> f64 {
    f64::from_bits(EPS_BITS.load(std::sync::atomic::Ordering::Relaxed))
}

/// Process-wide tolerance override. Ignored unless positive and finite.
pub fn set_eps(e: f64) -> bool {
    let ok = e > 0.0 && e.is_finite();
    if ok {
        EPS_BITS.store(e.to_bits(), std::sync::atomic::Ordering::Relaxed);
    }
    ok
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point lies outside the workspace")]
    PointOutsideWorkspace,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("degenerate workspace: {0}")]
    Degenerate(String),
    #[error("direction lies outside the cell's angle interval")]
    AngleOutsideCell,
    #[error("argument outside the cell's domain")]
    OutOfDomain,
    #[error("measurement must be positive (got {0})")]
    NonPositiveMeasurement(f64),
    #[error("measurement {0} exceeds the cell's maximum opening")]
    EmptyRegion(f64),
    #[error("pole lies on the directrix")]
    PoleOnDirectrix,
    #[error("support lines are parallel")]
    ParallelSupportLines,
    #[error("value {0} is a critical value of the cell")]
    OnCriticalValue(f64),
    #[error("inconsistent sweep: {0}")]
    InconsistentSweep(String),
    #[error("no segment of length {0} through the vertex")]
    NoIncidence(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
#[test]
fn eps_default_bits() {
    assert_eq!(f64::from_bits(0x3E11_2E0B_E826_D695), EPS);
}

pub(crate) fn check_measurement(d: f64) -> Result<()> {
    if d > 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveMeasurement(d))
    }
}

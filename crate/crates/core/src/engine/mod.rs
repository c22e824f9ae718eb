//! The measure engine and the experiments built on it.

mod checks;
mod gap;
mod measure;
mod oracle;
pub mod scan;
mod takeoff;

pub use checks::{regular_factor_check, FactorCheck};
pub use gap::{gap_scan, GapReport};
pub use measure::{gr_measure, Lattice, MeasureCache};
pub use oracle::gr_measure_oracle;
pub use scan::{scan_realized, Catalog, Provenance, ScanMode, ScanRecord, SkippedDim};
pub use takeoff::{takeoff_sequence, TakeoffReport};

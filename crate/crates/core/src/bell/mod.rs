//! Correlation functions, the CHSH function and its bounds, and the
//! time-scan optimizer for kaon strangeness questions.

mod chsh;
mod optimize;
mod scan;

pub use chsh::{
    chsh_value, correlation_from_table, kaon_chsh, kaon_correlation, lhv_brute_force_bound,
    lhv_extremes, planar_direction, quantum_chsh, ChshConfig, ChshResult, JointOutcomeTable,
    LocalStrategy, MeasurementSetting, OutcomeMapping, CLASSICAL_BOUND, QUANTUM_BOUND,
};
pub use optimize::{nelder_mead, NelderMeadOptions, NelderMeadResult};
pub use scan::{kaon_chsh_scan, KaonScanResult, ScanOptions, ScanSummary, ScanTable, TimeGrid};

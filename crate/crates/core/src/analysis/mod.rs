//! Spectra of observable time series, peak detection and assignment,
//! response-order fits and the ground-state entanglement entropy.

mod entropy;
mod peaks;
mod scaling;
mod spectrum;

pub use entropy::{entanglement_entropy, EntropyReport, NEGATIVE_OCCUPATION_TOL};
pub use peaks::{
    find_peaks, label_peaks, Label, Peak, PeakList, DEFAULT_MIN_HEIGHT_RATIO, NOISE_FLOOR,
};
pub use scaling::{
    classify_order, fit_power_law, order_scaling, PeakScaling, ScalingFit, ScalingReport,
    FIRST_ORDER_TOL, SECOND_ORDER_TOL,
};
pub use spectrum::{compute_spectrum, spectrum_of, Spectrum, Window, DEFAULT_PADDING, MIN_SAMPLES};

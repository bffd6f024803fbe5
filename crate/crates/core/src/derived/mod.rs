//! Free resolutions, Ext and Tor, and the comparison maps between them.

mod comparison;
mod functors;
mod resolution;
mod spectral;

pub use comparison::{
    degree_shift_check, degree_shift_dims, evaluation_map, evaluation_map_with, tor_ext_window, vartheta_comparison,
    DegreeShift, DegreeVerdict, EvaluationMap, EvaluationSign,
};
pub use functors::{
    bass_truncation, complex_key, ext_dim, ext_dims, poincare_truncation, tor_complexes, tor_dim, tor_dims,
    ResolutionCache,
};
pub use resolution::FreeResolution;
pub use spectral::{certify_injective, spectral_sequence, Cell, Page, PageDifferential, SpectralSequencePages};

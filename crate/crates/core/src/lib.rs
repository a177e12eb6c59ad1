//! Exact cubic symmetry algebras of two-dimensional superintegrable systems:
//! operator calculus, deformed-oscillator realizations, spectra, and
//! numerical cross-checks.

pub mod exactnum;
pub mod weylop;
pub mod algebra;
pub mod ladder;
pub mod reference;
pub mod repcheck;
pub mod schrodinger;
pub mod spectrum;

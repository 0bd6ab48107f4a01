pub mod complex;
pub mod exactla;
pub mod harmonic;
pub mod harness;
pub mod metrics;
pub mod persistence;

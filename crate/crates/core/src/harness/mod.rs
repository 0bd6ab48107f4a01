//! Experiment drivers and independent oracles: random filtrations, monotone
//! functions and their perturbations, stability trials, the greedy
//! construction of the canonical barcode, and small reference complexes.

mod checks;
pub mod examples;
mod instability;
mod oracle;
mod random;
mod stability;

pub use checks::check_invariants;
pub use instability::{instability_at, instability_demo, InstabilityReport};
pub use oracle::greedy_oracle_barcode;
pub use random::{
    random_complex, random_filtration, random_filtration_with, refine, RandomFiltrationConfig, Refinement,
};
pub use stability::{
    perturb, stability_trial, stability_trial_for, stability_trials, Generator, MonotoneFunction, TrialReport,
};

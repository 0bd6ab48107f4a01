use std::collections::HashMap;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::complex::{Filtration, Simplex, TimeValue};
use crate::exactla::{format_scalar, int, ratio, Scalar};
use crate::harmonic::{canonical_barcode, HarmonicError};
use crate::metrics::bottleneck;
use crate::persistence::persistence_barcode;

/// How the values of a [`MonotoneFunction`] were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// Independent values per simplex, raised to dominate their faces.
    Simplexwise,
    /// Values on vertices, extended by the maximum over a simplex's vertices.
    LowerStar,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Self::Simplexwise => "simplexwise",
            Self::LowerStar => "lower-star",
        }
    }
}

/// Face-monotone function on a fixed complex. Simplices are kept sorted by
/// dimension, so faces always come first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneFunction {
    pub generator: Generator,
    values: Vec<(Simplex, Scalar)>,
}

impl MonotoneFunction {
    /// Wraps explicit values; `None` if some face has a larger value than a
    /// coface or is missing.
    pub fn new(generator: Generator, mut values: Vec<(Simplex, Scalar)>) -> Option<Self> {
        values.sort_by(|(a, _), (b, _)| a.dim().cmp(&b.dim()).then(a.cmp(b)));
        let f = Self { generator, values };
        f.is_monotone().then_some(f)
    }

    /// The function whose sublevel filtration is `f`.
    pub fn from_filtration(f: &Filtration) -> Self {
        Self::new(Generator::Simplexwise, f.entries().map(|(s, t)| (s.clone(), t.clone())).collect())
            .expect("filtrations are monotone")
    }

    /// Random integer-valued function on `complex`.
    pub fn random(complex: &[Simplex], generator: Generator, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sorted = complex.to_vec();
        sorted.sort_by(|a, b| a.dim().cmp(&b.dim()).then(a.cmp(b)));
        let mut values: HashMap<Simplex, Scalar> = HashMap::new();
        let mut out = Vec::with_capacity(sorted.len());
        for s in sorted {
            let v = match (generator, s.dim()) {
                (Generator::Simplexwise, 0) => int(rng.gen_range(0..=4)),
                (Generator::LowerStar, 0) => int(rng.gen_range(0..=6)),
                (Generator::Simplexwise, _) => face_max(&values, &s) + int(rng.gen_range(0..=2)),
                (Generator::LowerStar, _) => face_max(&values, &s),
            };
            values.insert(s.clone(), v.clone());
            out.push((s, v));
        }
        Self { generator, values: out }
    }

    pub fn values(&self) -> &[(Simplex, Scalar)] {
        &self.values
    }

    pub fn is_monotone(&self) -> bool {
        let lookup: HashMap<&Simplex, &Scalar> = self.values.iter().map(|(s, v)| (s, v)).collect();
        self.values.iter().all(|(s, v)| s.boundary().all(|(_, face)| lookup.get(&face).is_some_and(|fv| *fv <= v)))
    }

    /// Sublevel filtration: every simplex enters at its value.
    pub fn filtration(&self) -> Filtration {
        Filtration::new(self.values.clone()).expect("monotone functions give valid filtrations")
    }

    /// `max |f(σ) - g(σ)|`; both functions must live on the same complex.
    pub fn sup_distance(&self, other: &Self) -> Scalar {
        assert_eq!(self.values.len(), other.values.len(), "functions on different complexes");
        self.values
            .iter()
            .zip(&other.values)
            .map(|((s, a), (s2, b))| {
                assert_eq!(s, s2, "functions on different complexes");
                (a - b).abs()
            })
            .fold(Scalar::zero(), Scalar::max)
    }

    /// Smallest positive difference between two values.
    pub fn min_gap(&self) -> Option<Scalar> {
        let mut distinct: Vec<&Scalar> = self.values.iter().map(|(_, v)| v).collect();
        distinct.sort();
        distinct.dedup();
        distinct.windows(2).map(|w| w[1] - w[0]).min()
    }
}

fn face_max(values: &HashMap<Simplex, Scalar>, s: &Simplex) -> Scalar {
    s.boundary()
        .map(|(_, face)| values.get(&face).cloned().expect("faces come first"))
        .max()
        .expect("a positive-dimensional simplex has faces")
}

const NOISE_STEPS: i64 = 1000;

/// Adds uniform noise from `[-eps, eps]` (in steps of `eps/1000`) and then
/// restores monotonicity by raising every simplex to the maximum of its
/// faces, in increasing dimension. Raising never moves a value further than
/// `eps` from the original, because the original was already monotone.
/// Lower-star functions are perturbed on vertices and re-extended.
pub fn perturb(f: &MonotoneFunction, eps: &Scalar, seed: u64) -> MonotoneFunction {
    assert!(!eps.is_negative(), "perturbation size must be nonnegative");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut noise = || eps * ratio(rng.gen_range(-NOISE_STEPS..=NOISE_STEPS), NOISE_STEPS);
    let mut values: HashMap<Simplex, Scalar> = HashMap::new();
    let mut out = Vec::with_capacity(f.values.len());
    for (s, v) in &f.values {
        let g = match (f.generator, s.dim()) {
            (_, 0) => v + noise(),
            (Generator::LowerStar, _) => face_max(&values, s),
            (Generator::Simplexwise, _) => (v + noise()).max(face_max(&values, s)),
        };
        values.insert(s.clone(), g.clone());
        out.push((s.clone(), g));
    }
    MonotoneFunction { generator: f.generator, values: out }
}

/// Outcome of comparing the barcodes of `f` and a perturbation `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialReport {
    pub seed: u64,
    pub generator: Generator,
    pub dim: usize,
    pub eps_requested: Scalar,
    /// `‖f - g‖∞`, measured.
    pub sup_norm: Scalar,
    pub min_gap: Option<Scalar>,
    /// The requested perturbation is below a quarter of the smallest gap
    /// between values of `f`.
    pub very_close: bool,
    pub d_chd: TimeValue,
    pub d_dgm: TimeValue,
    pub chd_pass: bool,
    pub dgm_pass: bool,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.chd_pass && self.dgm_pass
    }

    /// `d_chd / ‖f - g‖∞`, when the denominator is positive and the distance
    /// finite.
    pub fn ratio(&self) -> Option<Scalar> {
        if self.sup_norm.is_zero() {
            return None;
        }
        self.d_chd.finite().map(|d| d / &self.sup_norm)
    }
}

impl Serialize for TrialReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let time = |t: &TimeValue| t.finite().map(format_scalar);
        let mut st = serializer.serialize_struct("TrialReport", 11)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("generator", &self.generator)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("eps_requested", &format_scalar(&self.eps_requested))?;
        st.serialize_field("sup_norm", &format_scalar(&self.sup_norm))?;
        st.serialize_field("min_gap", &self.min_gap.as_ref().map(format_scalar))?;
        st.serialize_field("very_close", &self.very_close)?;
        st.serialize_field("d_chd", &time(&self.d_chd))?;
        st.serialize_field("d_dgm", &time(&self.d_dgm))?;
        st.serialize_field("chd_pass", &self.chd_pass)?;
        st.serialize_field("dgm_pass", &self.dgm_pass)?;
        st.end()
    }
}

/// Perturbs `f` with the given seed and compares canonical harmonic barcodes
/// and persistence barcodes of both sublevel filtrations in dimension `p`.
pub fn stability_trial_for(
    f: &MonotoneFunction,
    seed: u64,
    eps: &Scalar,
    p: usize,
) -> Result<TrialReport, HarmonicError> {
    let g = perturb(f, eps, seed);
    let (ff, gf) = (f.filtration(), g.filtration());
    let sup_norm = g.sup_distance(f);
    let d_chd = bottleneck(&canonical_barcode(&ff, p)?, &canonical_barcode(&gf, p)?).expect("same dimension");
    let d_dgm = bottleneck(&persistence_barcode(&ff, p), &persistence_barcode(&gf, p)).expect("same dimension");
    let bound = TimeValue::Finite(sup_norm.clone());
    let min_gap = f.min_gap();
    let very_close = min_gap.as_ref().is_none_or(|gap| eps * int(4) < *gap);
    Ok(TrialReport {
        seed,
        generator: f.generator,
        dim: p,
        eps_requested: eps.clone(),
        sup_norm,
        min_gap,
        very_close,
        chd_pass: d_chd <= bound,
        dgm_pass: d_dgm <= bound,
        d_chd,
        d_dgm,
    })
}

/// Draws a random function of the given kind on `complex` and runs one trial.
/// Both the function and the perturbation are derived from `seed`.
pub fn stability_trial(
    complex: &[Simplex],
    seed: u64,
    eps: &Scalar,
    p: usize,
    generator: Generator,
) -> Result<TrialReport, HarmonicError> {
    let f = MonotoneFunction::random(complex, generator, seed);
    let report = stability_trial_for(&f, seed.wrapping_add(0x9e37_79b9), eps, p)?;
    Ok(TrialReport { seed, ..report })
}

/// Runs independent trials in parallel; reports come back in seed order.
pub fn stability_trials<F>(seeds: &[u64], trial: F) -> Result<Vec<TrialReport>, HarmonicError>
where
    F: Fn(u64) -> Result<TrialReport, HarmonicError> + Sync,
{
    let mut reports: Vec<TrialReport> = seeds.par_iter().map(|&s| trial(s)).collect::<Result<_, _>>()?;
    reports.sort_by_key(|r| r.seed);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::random::random_complex;

    #[test]
    fn zero_perturbation_is_identity() {
        let k = random_complex(1, 6, 2, 0.6);
        for generator in [Generator::Simplexwise, Generator::LowerStar] {
            let f = MonotoneFunction::random(&k, generator, 5);
            assert_eq!(perturb(&f, &int(0), 9), f);
            let report = stability_trial_for(&f, 9, &int(0), 1).unwrap();
            assert_eq!(
                (report.d_chd.clone(), report.d_dgm.clone()),
                (TimeValue::Finite(int(0)), TimeValue::Finite(int(0)))
            );
            assert!(report.passed());
        }
    }

    #[test]
    fn perturbation_is_monotone_and_bounded() {
        let k = random_complex(4, 8, 2, 0.5);
        let eps = ratio(1, 5);
        for generator in [Generator::Simplexwise, Generator::LowerStar] {
            let f = MonotoneFunction::random(&k, generator, 2);
            assert!(f.is_monotone());
            for seed in 0..20 {
                let g = perturb(&f, &eps, seed);
                assert!(g.is_monotone());
                assert!(g.sup_distance(&f) <= eps);
            }
        }
    }

    #[test]
    fn report_serializes_exactly() {
        let k = random_complex(3, 5, 2, 0.8);
        let f = MonotoneFunction::random(&k, Generator::LowerStar, 1);
        let report = stability_trial_for(&f, 2, &ratio(1, 5), 1).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["generator"], "lower-star");
        assert_eq!(json["eps_requested"], "1/5");
        assert_eq!(json["sup_norm"], format_scalar(&report.sup_norm));
    }
}

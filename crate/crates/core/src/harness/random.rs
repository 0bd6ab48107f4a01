use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Filtration, Simplex};
use crate::exactla::{int, Scalar};

/// Parameters of [`random_filtration_with`].
#[derive(Clone, Debug)]
pub struct RandomFiltrationConfig {
    pub max_vertices: usize,
    pub max_dim: usize,
    pub p_include: f64,
    /// Give every simplex its own time step.
    pub one_per_step: bool,
}

impl RandomFiltrationConfig {
    pub fn new(max_vertices: usize, max_dim: usize, p_include: f64) -> Self {
        Self { max_vertices, max_dim, p_include, one_per_step: false }
    }
}

/// Downward-closed random complex with monotone integer times, deterministic
/// in the seed. Between half and all of `max_vertices` vertices are used;
/// a higher simplex is offered only when all its facets are present and is
/// kept with probability `p_include`.
pub fn random_filtration(seed: u64, max_vertices: usize, max_dim: usize, p_include: f64) -> Filtration {
    random_filtration_with(seed, &RandomFiltrationConfig::new(max_vertices, max_dim, p_include))
}

pub fn random_filtration_with(seed: u64, config: &RandomFiltrationConfig) -> Filtration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = random_entries(&mut rng, config);
    let f = Filtration::new(entries).expect("generated filtrations are closed");
    if config.one_per_step {
        refine(&f).filtration
    } else {
        f
    }
}

/// The simplices of a random complex, in filtration order.
pub fn random_complex(seed: u64, max_vertices: usize, max_dim: usize, p_include: f64) -> Vec<Simplex> {
    random_filtration(seed, max_vertices, max_dim, p_include).simplices().to_vec()
}

fn random_entries(rng: &mut ChaCha8Rng, config: &RandomFiltrationConfig) -> Vec<(Simplex, Scalar)> {
    if config.max_vertices == 0 {
        return Vec::new();
    }
    let n = rng.gen_range(config.max_vertices.div_ceil(2)..=config.max_vertices) as u32;
    let mut times: std::collections::HashMap<Simplex, i64> = std::collections::HashMap::new();
    let mut entries = Vec::new();
    for v in 0..n {
        let t = rng.gen_range(0..=2);
        let s = Simplex::new(vec![v]).expect("vertex");
        times.insert(s.clone(), t);
        entries.push((s, int(t)));
    }
    for d in 1..=config.max_dim {
        for vertices in (0..n).combinations(d + 1) {
            let s = Simplex::new(vertices).expect("distinct vertices");
            let face_times: Option<Vec<i64>> = s.boundary().map(|(_, face)| times.get(&face).copied()).collect();
            let Some(face_times) = face_times else { continue };
            if !rng.gen_bool(config.p_include) {
                continue;
            }
            let t = face_times.into_iter().max().expect("a facet") + rng.gen_range(0..=2);
            times.insert(s.clone(), t);
            entries.push((s, int(t)));
        }
    }
    entries
}

/// A filtration with one simplex per step together with the original time of
/// every step.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub filtration: Filtration,
    pub original: Vec<Scalar>,
}

/// Spreads the simplices of `f` over the steps `0, 1, 2, ...` in filtration
/// order, which keeps every face before its cofaces.
pub fn refine(f: &Filtration) -> Refinement {
    let entries = f.simplices().iter().enumerate().map(|(k, s)| (s.clone(), int(k as i64))).collect();
    let original = (0..f.len()).map(|k| f.time(k).clone()).collect();
    Refinement { filtration: Filtration::new(entries).expect("refinement keeps closure"), original }
}

use num_traits::Zero;

use crate::complex::{Filtration, TimeValue};
use crate::exactla::Backend;
use crate::harmonic::{
    canonical_barcode, harmonic_basis, harmonic_span, rank_table_by_intersection, rank_table_by_kernel,
    rank_table_with, HarmonicSpan,
};
use crate::persistence::betti_table;

/// Re-derives the structural facts every filtration must satisfy in
/// dimension `p` and reports the first one that fails:
/// the rank table agrees across backends and both intersection routes,
/// harmonic dimensions equal Betti numbers, canonical bars alive at each time
/// add up to the harmonic dimension, and every harmonic basis cycle, once it
/// gains a coboundary, keeps it.
pub fn check_invariants(f: &Filtration, p: usize) -> Result<(), String> {
    let table = rank_table_with(f, p, Backend::Sparse);
    if rank_table_with(f, p, Backend::Dense) != table {
        return Err("rank table differs between backends".into());
    }
    if rank_table_by_kernel(f, p) != table {
        return Err("rank table differs from the kernel route".into());
    }
    if rank_table_by_intersection(f, p, Backend::Dense) != table {
        return Err("rank table differs from the basis intersection route".into());
    }

    let betti = betti_table(f, p);
    let canonical = canonical_barcode(f, p).map_err(|e| e.to_string())?;
    let times = f.critical_times();
    for (i, t) in times.iter().enumerate() {
        let basis = harmonic_basis(f, p, t);
        if basis.h() != betti[t] {
            return Err(format!("harmonic dimension {} but Betti number {} at {t}", basis.h(), betti[t]));
        }
        if canonical.alive_at(t) != basis.h() {
            return Err(format!(
                "{} canonical bars alive at {t}, harmonic dimension {}",
                canonical.alive_at(t),
                basis.h()
            ));
        }
        for z in basis.chains(f) {
            let mut dead = false;
            for later in &times[i..] {
                let v = f.chain_vector(&z, later).expect("support stays present");
                let nonzero = f.coboundary_matrix(p, later).mul_vec(&v).iter().any(|x| !x.is_zero());
                if dead && !nonzero {
                    return Err(format!("cycle {z} regains harmonicity at {later}"));
                }
                dead |= nonzero;
            }
            match harmonic_span(f, &z).map_err(|e| e.to_string())? {
                HarmonicSpan::Interval { start, end } if start <= *t && TimeValue::Finite(t.clone()) < end => {}
                span => return Err(format!("harmonic cycle at {t} has span {span:?}")),
            }
        }
    }
    Ok(())
}

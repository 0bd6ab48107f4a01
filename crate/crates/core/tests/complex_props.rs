use harmonia_core::complex::*;
use harmonia_core::exactla::int;
use harmonia_core::harness::random_filtration;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_vanishes(seed in 0u64..10_000) {
        let f = random_filtration(seed, 7, 3, 0.7);
        let last = f.critical_times().last().cloned().unwrap_or(int(0));
        for p in 1..=f.max_dim().unwrap_or(0) {
            let d1 = f.boundary_matrix(p, &last);
            let d2 = f.boundary_matrix(p + 1, &last);
            prop_assert!(d1.mul(&d2).is_zero());
        }
    }

    #[test]
    fn boundary_matrices_restrict_to_leading_blocks(seed in 0u64..10_000) {
        let f = random_filtration(seed, 7, 2, 0.6);
        let times = f.critical_times();
        let Some(last) = times.last() else { return Ok(()) };
        for p in 1..=2 {
            let full = f.boundary_matrix(p, last);
            for t in times {
                let part = f.boundary_matrix(p, t);
                for r in 0..part.nrows() {
                    for c in 0..part.ncols() {
                        prop_assert_eq!(part.get(r, c), full.get(r, c));
                    }
                }
                let cob = f.coboundary_matrix(p - 1, t);
                prop_assert_eq!(cob, part.transpose());
            }
        }
    }

    #[test]
    fn parsing_ignores_line_order(seed in 0u64..10_000, shuffle in 0u64..1000) {
        let f = random_filtration(seed, 6, 2, 0.6);
        let text = f.to_text();
        let mut lines: Vec<&str> = text.lines().collect();
        lines.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        prop_assert_eq!(parse_filtration(&lines.join("\n")).unwrap(), f);
    }
}

#[test]
fn closure_errors_name_line_and_face() {
    let err = parse_filtration("0 0\n1 0 1").unwrap_err();
    assert!(matches!(err, ComplexError::ClosureViolation { line: Some(2), kind: ClosureKind::MissingFace, .. }));
    let err = parse_filtration("0 0\n2 1\n1 0 1").unwrap_err();
    assert!(matches!(err, ComplexError::ClosureViolation { kind: ClosureKind::FaceLater, .. }));
}

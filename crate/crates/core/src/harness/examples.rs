//! Small filtrations with known harmonic behaviour.

use crate::complex::{parse_filtration, Filtration, Simplex};
use crate::exactla::{int, Scalar};

/// Triangle on vertices 0, 1, 2 with its edges at time 1, filled at time 2
/// when `filled` is set.
pub fn triangle(filled: bool) -> Filtration {
    let mut text = String::from("0 0\n0 1\n0 2\n1 0 1\n1 1 2\n1 0 2\n");
    if filled {
        text.push_str("2 0 1 2\n");
    }
    parse_filtration(&text).expect("valid")
}

/// Four triangles glued along the spine edge `12`, like the pages of a
/// book. Vertices `1..=6` enter at times 1 to 6, then
/// `13 @ 7, 23 @ 8, 12 @ 9, 14 @ 10, 24 @ 11, 15 @ 12, 25 @ 13, 16 @ 14,
/// 26 @ 15`, creating one cycle at each of 9, 11, 13, 15. The pages are
/// filled in the order `126 @ 16, 125 @ 17, 124 @ 18, 123 @ 19`.
pub fn four_page_book() -> Filtration {
    let text = "\
1 1\n2 2\n3 3\n4 4\n5 5\n6 6\n\
7 1 3\n8 2 3\n9 1 2\n10 1 4\n11 2 4\n12 1 5\n13 2 5\n14 1 6\n15 2 6\n\
16 1 2 6\n17 1 2 5\n18 1 2 4\n19 1 2 3\n";
    parse_filtration(text).expect("valid")
}

/// Times of the swap-pair construction with the triangle gap `gap`.
pub fn swap_pair_times(gap: &Scalar) -> Vec<Scalar> {
    let mut t: Vec<Scalar> = (0..=7).map(int).collect();
    for k in 1..=3 {
        t.push(int(7) + gap * int(k));
    }
    t
}

/// Two filtrations of one complex that differ only by exchanging the times
/// of the spine edge `01` (time 4) and the edge `13` (time 5).
///
/// Vertices `0, 1` span the spine; apexes 2, 3 and 4 make three triangles
/// `012, 013, 014` with it. Edges `02 @ 1, 12 @ 2, 03 @ 3, 01 @ 4, 13 @ 5,
/// 04 @ 6, 14 @ 7`; the triangles `014, 012, 013` enter at `7 + gap`,
/// `7 + 2 gap`, `7 + 3 gap`.
pub fn swap_pair(gap: &Scalar) -> (Filtration, Filtration) {
    let t = swap_pair_times(gap);
    let v = |vs: &[u32]| Simplex::new(vs.to_vec()).expect("simplex");
    let build = |spine: usize, other: usize| {
        let mut entries: Vec<(Simplex, Scalar)> = (0..5).map(|i| (v(&[i]), int(0))).collect();
        entries.extend([
            (v(&[0, 2]), t[1].clone()),
            (v(&[1, 2]), t[2].clone()),
            (v(&[0, 3]), t[3].clone()),
            (v(&[0, 1]), t[spine].clone()),
            (v(&[1, 3]), t[other].clone()),
            (v(&[0, 4]), t[6].clone()),
            (v(&[1, 4]), t[7].clone()),
            (v(&[0, 1, 4]), t[8].clone()),
            (v(&[0, 1, 2]), t[9].clone()),
            (v(&[0, 1, 3]), t[10].clone()),
        ]);
        Filtration::new(entries).expect("valid")
    };
    (build(4, 5), build(5, 4))
}

/// Cone over an `n`-cycle: centre 0 and rim `1..=n` at time 0, all `2n`
/// edges at time 1 and the first `k` fan triangles `0 i i+1` at times
/// `2..=k+1`.
pub fn wheel(n: u32, k: u32) -> Filtration {
    assert!(n >= 3 && k <= n, "need n >= 3 and k <= n");
    let v = |vs: &[u32]| Simplex::new(vs.to_vec()).expect("simplex");
    let next = |i: u32| if i == n { 1 } else { i + 1 };
    let mut entries: Vec<(Simplex, Scalar)> = (0..=n).map(|i| (v(&[i]), int(0))).collect();
    for i in 1..=n {
        entries.push((v(&[0, i]), int(1)));
        entries.push((v(&[i, next(i)]), int(1)));
    }
    for i in 1..=k {
        entries.push((v(&[0, i, next(i)]), int(i as i64 + 1)));
    }
    Filtration::new(entries).expect("valid")
}

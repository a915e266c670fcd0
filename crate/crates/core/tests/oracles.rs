//! Independent brute-force checks that bypass the character ring.

use num_bigint::BigInt;
use weyl_equidist_core::{build_root_datum, compute_h, s_values, GaloisAction, LatticeChoice};

/// Class counts of `Σ_β j_β β` over all tuples `j_β ∈ [−2m, 2m]`, with the
/// class of `a α1 + b α2` being `(a + b) mod 3`.
fn a2_bins(m: i64) -> [i64; 3] {
    let mut bins = [0i64; 3];
    let r = -2 * m..=2 * m;
    for x in r.clone() {
        for y in r.clone() {
            for z in r.clone() {
                // x α1 + y α2 + z (α1 + α2)
                let (a, b) = (x + z, y + z);
                bins[(a + b).rem_euclid(3) as usize] += 1;
            }
        }
    }
    bins
}

#[test]
fn a2_z3_bins_match_enumeration() {
    let rd = build_root_datum(&"A2".parse().unwrap(), &LatticeChoice::Root).unwrap();
    let act = GaloisAction::new(rd, vec![vec![vec![0, -1], vec![1, -1]]]).unwrap();
    let hg = compute_h(&act).unwrap();
    // H-index of the class containing α1.
    let one = hg.project(&[1, 0]).unwrap();
    let two = hg.add(one, one);
    for m in 0..=6 {
        let bins = a2_bins(m);
        let s = s_values(&hg, m as u32);
        let got = [&s.coset_sums[0], &s.coset_sums[one], &s.coset_sums[two]];
        let expect = bins.map(BigInt::from);
        assert_eq!(got, [&expect[0], &expect[1], &expect[2]], "m={m}");
    }
    assert_eq!(a2_bins(1), [41, 42, 42]);
    // 3 | 4m+1 at m = 2, 5: exactly uniform.
    assert_eq!(a2_bins(2), [243, 243, 243]);
}

#[test]
fn a1_z2_bins_match_parity_count() {
    let rd = build_root_datum(&"A1".parse().unwrap(), &LatticeChoice::Root).unwrap();
    let hg = compute_h(&GaloisAction::new(rd, vec![vec![vec![-1]]]).unwrap()).unwrap();
    for m in 0..30i64 {
        let even = (-2 * m..=2 * m).filter(|j| j % 2 == 0).count();
        let odd = (4 * m + 1) as usize - even;
        let s = s_values(&hg, m as u32);
        assert_eq!(s.coset_sums, vec![BigInt::from(even), BigInt::from(odd)]);
    }
}

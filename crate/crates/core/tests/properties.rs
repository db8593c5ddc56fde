mod support;

use rand::Rng;
use support::props;
use unlinking::exactla::{snf, IntMatrix};

#[test]
fn diagonal_bump_moves_nullity_and_signature_by_little() {
    let (same, changed) = props::diagonal_bump(500).unwrap();
    assert!(same > 0 && changed > 0, "both cases exercised: {same} / {changed}");
}

#[test]
fn snf_matches_minor_gcds() {
    props::snf_minor_gcd(100).unwrap();
}

#[test]
fn snf_is_invariant_under_unimodular_mixing() {
    let mut rng = props::rng(7);
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let data = (0..r * c).map(|_| rng.gen_range(-6..=6)).collect();
        let m = IntMatrix::new(r, c, data).unwrap();
        let mixed = props::unimodular_mix(&mut rng, &m, 12);
        assert_eq!(snf(&m), snf(&mixed), "{:?} vs {:?}", m.to_rows(), mixed.to_rows());
    }
}

#[test]
fn det_matches_cofactor_expansion() {
    props::det_vs_cofactor(100).unwrap();
}

#[test]
fn inertia_matches_eigenvalues() {
    props::inertia_vs_eigen(200).unwrap();
}

#[test]
fn embeddings_match_brute_force() {
    let nonempty = props::embeddings_complete(50).unwrap();
    assert!(nonempty > 10, "only {nonempty} instances had embeddings");
}

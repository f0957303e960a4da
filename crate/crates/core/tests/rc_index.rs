use num_bigint::BigInt;

use sepdesc::disk_tree::{enumerate_shapes, DiskTree};
use sepdesc::perm::Permutation;
use sepdesc::poly::{s_poly, separable_gamma, Method};
use sepdesc::rc_index::{catalan, monomial_of_shape, phi, NCMonomial, RCIndex};
use sepdesc::verify::{schroder_numbers, REFERENCE_RC_INDEX};

#[test]
fn listings_through_six() {
    for n in 1..=6 {
        let computed = phi(n).unwrap();
        assert_eq!(computed, RCIndex::parse_listing(n, REFERENCE_RC_INDEX[n - 1]).unwrap());
        // The display order reproduces the listings character for character.
        assert_eq!(computed.to_string(), REFERENCE_RC_INDEX[n - 1]);
    }
}

#[test]
fn three_trees_share_a_weight() {
    let text = std::fs::read_to_string(format!("{}/fixtures/weight_trees.txt", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let target = NCMonomial(vec![1, 4, 3]);
    let mut seen = 0;
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let (tree, perm) = line.split_once('|').unwrap();
        let t: DiskTree = tree.trim().parse().unwrap();
        assert_eq!(t.to_permutation(), Permutation::from_digits(perm.trim()).unwrap());
        assert_eq!(monomial_of_shape(&t.shape()), target);
        seen += 1;
    }
    assert_eq!(seen, 3);
    // Pinned by enumeration: one more shape carries this weight.
    assert_eq!(phi(9).unwrap().multiplicity(&target), 4);
}

#[test]
fn term_counts_are_compositions_of_n_minus_one() {
    for n in 2..=10 {
        let idx = phi(n).unwrap();
        assert_eq!(idx.distinct_terms(), 1 << (n - 2), "n = {n}");
        assert!(idx.terms.keys().all(|m| m.weight() as usize == n - 1));
    }
}

#[test]
fn evaluations_through_ten() {
    let schroder = schroder_numbers(10);
    for n in 1..=10 {
        let idx = phi(n).unwrap();
        assert_eq!(BigInt::from(idx.total_multiplicity()), catalan(n - 1));
        assert_eq!(idx.evaluate_constant(1), catalan(n - 1));
        assert_eq!(idx.evaluate_constant(2), schroder[n - 1]);
        assert_eq!(idx.substitute_ab(), s_poly(n, Method::Recurrence).unwrap());
        let g = separable_gamma(n).unwrap();
        for k in 0..=(n - 1) / 2 {
            assert_eq!(idx.gamma_from_shapes(k), g.gamma(k), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn labelings_per_shape() {
    for n in 1..=7 {
        for s in enumerate_shapes(n) {
            let r = s.right_chains().r();
            let trees: Vec<DiskTree> = s.labelings().collect();
            assert_eq!(trees.len(), 1 << r);
            assert!(trees.iter().all(|t| t.shape() == s));
        }
    }
}

#[test]
fn missing_generator_values() {
    let idx = phi(5).unwrap();
    let ones = vec![BigInt::from(1); 3];
    assert!(idx.evaluate(&ones).is_err());
    assert_eq!(idx.evaluate(&vec![BigInt::from(1); 4]).unwrap(), BigInt::from(14));
}

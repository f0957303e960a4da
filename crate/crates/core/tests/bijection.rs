//! ψ and φ against the transcribed case fixtures, plus exhaustive sweeps.

use std::collections::BTreeSet;

use sepdesc::disk_tree::{enumerate_trees, DiskTree};
use sepdesc::gamma_bij::{
    adjoint_sites, certify_bijection, classify, find_adjoint, in_dt1, in_dt2, l_sites, order_independence_certificate, phi,
    phi_plan, phi_sequential, psi, psi_plan, psi_sequential, AdjointCase, LCase,
};
use sepdesc::poly::separable_gamma;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Non-comment lines split on `|`.
fn rows(name: &str) -> Vec<Vec<String>> {
    fixture(name)
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.split('|').map(|c| c.trim().to_string()).collect())
        .collect()
}

fn pair() -> (DiskTree, DiskTree) {
    let text = fixture("bijection_pair.txt");
    let get = |key: &str| text.lines().find_map(|l| l.strip_prefix(key)).unwrap().trim().parse::<DiskTree>().unwrap();
    (get("left ="), get("right ="))
}

#[test]
fn forty_node_pair() {
    let (left, right) = pair();
    assert_eq!(left.node_count(), 40);
    let k = left.n_minus();
    assert!(in_dt2(&left, k));
    assert!(in_dt1(&right, k));
    assert_eq!(psi(&left).unwrap(), right);
    assert_eq!(phi(&right).unwrap(), left);
    assert_eq!(psi_sequential(&left).unwrap(), right);
    assert_eq!(phi_sequential(&right).unwrap(), left);

    let cases: Vec<AdjointCase> = psi_plan(&left).unwrap().into_iter().map(|(s, _)| s.case).collect();
    assert_eq!(cases, [AdjointCase::IV, AdjointCase::II, AdjointCase::V, AdjointCase::III, AdjointCase::I]);
    assert_eq!(phi_plan(&right).len(), 5);
}

#[test]
fn forty_node_pair_is_order_independent() {
    let (left, right) = pair();
    assert!(order_independence_certificate(&left, 25).unwrap());
    assert!(order_independence_certificate(&right, 25).unwrap());
}

#[test]
fn adjoint_case_fixtures() {
    let l_trees: Vec<Vec<String>> = rows("l_cases.txt");
    for row in rows("adjoint_cases.txt") {
        let t: DiskTree = row[1].parse().unwrap();
        let chain: usize = row[2].parse().unwrap();
        let adjoint: usize = row[3].parse().unwrap();
        let site = find_adjoint(&t, chain).unwrap();
        assert_eq!(site.case.to_string(), row[0], "{}", row[1]);
        assert_eq!(site.adjoint, adjoint, "case {}", row[0]);
        assert_eq!(adjoint_sites(&t).unwrap(), vec![site.clone()], "case {}", row[0]);
        let image = psi(&t).unwrap();
        assert_eq!(phi(&image).unwrap(), t, "case {}", row[0]);
        // Cases I to IV land on the matching L-case panel.
        let index = ["I", "II", "III", "IV"].iter().position(|c| *c == row[0]);
        if let Some(i) = index {
            assert_eq!(image.to_string(), l_trees[i][1], "case {}", row[0]);
        }
    }
}

#[test]
fn l_case_fixtures() {
    for row in rows("l_cases.txt") {
        let t: DiskTree = row[1].parse().unwrap();
        let chain: usize = row[2].parse().unwrap();
        let receiver = if row[3] == "-" { None } else { Some(row[3].parse::<usize>().unwrap()) };
        let sites = l_sites(&t);
        assert_eq!(sites.len(), 1, "case {}", row[0]);
        assert_eq!(sites[0].case.to_string(), row[0]);
        assert_eq!((sites[0].chain, sites[0].receiver), (chain, receiver), "case {}", row[0]);
        let back = phi(&t).unwrap();
        assert_eq!(psi(&back).unwrap(), t, "case {}", row[0]);
    }
}

#[test]
fn out_of_family_inputs_are_rejected() {
    let (left, right) = pair();
    assert!(psi(&right).is_err());
    assert!(phi(&left).is_err());
    let t: DiskTree = "(- _ _)".parse().unwrap();
    assert!(!classify(&t, 1).in_dt2);
    assert!(psi(&t).is_err());
}

#[test]
fn exhaustive_through_eight() {
    for n in 1..=8 {
        let gamma = separable_gamma(n).unwrap();
        for k in 0..=(n - 1) / 2 {
            let c = certify_bijection(n, k);
            assert!(c.bijection_ok, "n = {n}, k = {k}");
            assert_eq!(c.dt1, c.dt2);
            assert_eq!(num_bigint::BigInt::from(c.dt1), gamma.gamma(k), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn ten_orders_per_tree_through_eight() {
    for n in 1..=8 {
        for t in enumerate_trees(n) {
            let k = t.n_minus();
            if in_dt1(&t, k) || in_dt2(&t, k) {
                assert!(order_independence_certificate(&t, 10).unwrap(), "{t}");
            }
        }
    }
}

#[test]
fn every_case_occurs_by_eight() {
    let mut adjoint = BTreeSet::new();
    let mut l = BTreeSet::new();
    for n in 1..=8 {
        for t in enumerate_trees(n) {
            let k = t.n_minus();
            if in_dt2(&t, k) {
                adjoint.extend(psi_plan(&t).unwrap().into_iter().map(|(s, _)| s.case));
            }
            if in_dt1(&t, k) {
                l.extend(phi_plan(&t).into_iter().map(|(s, _)| s.case));
            }
        }
    }
    assert_eq!(adjoint.len(), 6, "{adjoint:?}");
    assert_eq!(l.len(), 6, "{l:?}");
    assert!(l.contains(&LCase::Six));
}

use num_bigint::BigInt;

use sepdesc::perm::BruteForceCap;
use sepdesc::poly::{
    check_spiral, d_poly, desarrangement_histogram, df_gr_sides, dtilde_poly, gessel_gamma, s_poly, separable_gamma,
    spiral_report, Family, GesselOutcome, IntPolynomial, Method,
};
use sepdesc::verify::{derangement_numbers, REFERENCE_D, REFERENCE_GAMMA, REFERENCE_S};
use sepdesc::Error;

#[test]
fn separable_table() {
    for n in 1..=6 {
        assert_eq!(s_poly(n, Method::Recurrence).unwrap().to_string(), REFERENCE_S[n - 1]);
        let g = separable_gamma(n).unwrap();
        let want: Vec<BigInt> = REFERENCE_GAMMA[n - 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(g.full(), want);
    }
}

#[test]
fn derangement_table_and_the_misprint() {
    for n in 2..=6 {
        assert_eq!(d_poly(n, Method::Recurrence).unwrap().to_string(), REFERENCE_D[n - 2]);
    }
    let d7 = d_poly(7, Method::Recurrence).unwrap();
    assert_eq!(d7, d_poly(7, Method::enumerate()).unwrap());
    assert_eq!(d7.coeff(2), BigInt::from(392));
    assert_eq!(d7.coefficient_sum(), BigInt::from(1854));
    assert_eq!(derangement_numbers(7)[7], BigInt::from(1854));
    let printed: IntPolynomial = REFERENCE_D[5].parse().unwrap();
    assert_eq!(&d7 - &printed, IntPolynomial::monomial(10, 2));
}

#[test]
fn derangement_facts() {
    for n in 2..=30 {
        let d = d_poly(n, Method::Recurrence).unwrap();
        assert_eq!(d.coeff(1), BigInt::from(1) << (n - 2), "n = {n}");
        if n % 2 == 0 {
            assert_eq!(d.degree(), Some(n - 1));
            assert_eq!(d.leading(), Some(&BigInt::from(1)));
        } else {
            assert_eq!(d.degree(), Some(n - 2));
        }
    }
}

#[test]
fn desarrangements_even_top() {
    let h = desarrangement_histogram(6, BruteForceCap::default()).unwrap();
    assert_eq!(h.to_string(), "16t+104t^2+120t^3+24t^4+t^5");
    assert_eq!(desarrangement_histogram(2, BruteForceCap::default()).unwrap().to_string(), "t");
}

#[test]
fn series_identity_sample() {
    let (lhs, rhs) = df_gr_sides(4, 10).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.coeff(0), BigInt::from(0));
}

#[test]
fn spiral_single_equality() {
    for n in 1..=40 {
        let r = check_spiral(n);
        assert!(r.violations.is_empty(), "n = {n}");
        if n == 4 {
            assert_eq!(r.equalities.len(), 1);
            let (a, b) = r.equalities[0];
            let d4 = d_poly(4, Method::Recurrence).unwrap();
            assert_eq!((d4.coeff(a), d4.coeff(b)), (BigInt::from(4), BigInt::from(4)));
            assert_eq!((a.min(b), a.max(b)), (1, 2));
        } else {
            assert!(r.holds_strictly(), "n = {n}: {r:?}");
        }
    }
}

#[test]
fn fixed_point_polynomial_spiral() {
    assert_eq!(dtilde_poly(4, Method::Recurrence).unwrap().to_string(), "1+7t+7t^2");
    for n in 1..=40 {
        let p = dtilde_poly(n, Method::Recurrence).unwrap();
        assert!(p.is_unimodal(), "n = {n}");
        let r = spiral_report(&p);
        assert!(r.violations.is_empty(), "n = {n}");
        for &(a, b) in &r.equalities {
            let pair = (a.min(b), a.max(b));
            let ends = pair == (0, n - 1) && n % 2 == 1;
            assert!(ends || (n == 4 && pair == (1, 2)), "n = {n}: {pair:?}");
        }
    }
}

#[test]
fn two_variable_expansion() {
    for n in 1..=7 {
        match gessel_gamma(n, BruteForceCap::default()).unwrap() {
            GesselOutcome::Solved { nonnegative, dominates_separable, rank, unknowns, .. } => {
                assert!(nonnegative && dominates_separable, "n = {n}");
                assert_eq!(rank, unknowns);
            }
            GesselOutcome::Indeterminate { .. } => {}
        }
    }
    assert!(matches!(gessel_gamma(11, BruteForceCap::default()), Err(Error::ResourceCap { .. })));
}

#[test]
fn families_by_name() {
    assert_eq!("dtilde".parse::<Family>().unwrap(), Family::Dtilde);
    assert!("E".parse::<Family>().is_err());
    let a = Family::A.poly(5, Method::Recurrence).unwrap();
    assert_eq!(a.to_string(), "1+26t+66t^2+26t^3+t^4");
    assert_eq!(Family::Gamma.poly(6, Method::Recurrence).unwrap().display_in("x"), "1+30x+61x^2");
}

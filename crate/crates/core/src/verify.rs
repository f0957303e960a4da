//! Verification suites: reference tables, the bijection, exact identities and
//! finite-range evidence for the inequality statements.
//!
//! Every check yields a [`CheckRecord`]; a suite passes when none has status
//! [`Status::Fail`]. Records are sorted by id, so reports are deterministic.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::{CacheOutcome, PolyCache};
use crate::disk_tree::{enumerate_shapes, enumerate_trees, DiskTree};
use crate::error::{Error, Result};
use crate::gamma_bij::{certify_bijection, in_dt1, in_dt2, order_independence_certificate, phi_plan, psi_plan};
use crate::perm::{BruteForceCap, Permutation, Permutations};
use crate::poly::{
    a_poly, check_spiral, cubic_residual, d_poly, desarrangement_histogram, dtilde_poly, gamma_poly,
    gessel_gamma, is_real_rooted, narayana_poly, s_poly, s_split, separable_gamma, spiral_report,
    verify_df_gr_identity, Family, GesselOutcome, IntPolynomial, Method,
};
use crate::rc_index::{catalan, phi, RCIndex};
use crate::schroder::{enumerate_words, sweep, word_to_perm, Op};

pub const REPORT_FORMAT_VERSION: u32 = 1;

/// Descent polynomials of separable permutations, `n = 1..=6`.
pub const REFERENCE_S: [&str; 6] = [
    "1",
    "1+t",
    "1+4t+t^2",
    "1+10t+10t^2+t^3",
    "1+20t+48t^2+20t^3+t^4",
    "1+35t+161t^2+161t^3+35t^4+t^5",
];

/// Their γ-vectors, `n = 1..=6`.
pub const REFERENCE_GAMMA: [&[i64]; 6] = [&[1], &[1], &[1, 2], &[1, 7], &[1, 16, 10], &[1, 30, 61]];

/// Descent polynomials of derangements as printed, `n = 2..=7`. The `t^2`
/// coefficient of the last entry is 382 in print; the row sum forces 392.
pub const REFERENCE_D: [&str; 6] = [
    "t",
    "2t",
    "4t+4t^2+t^3",
    "8t+24t^2+12t^3",
    "16t+104t^2+120t^3+24t^4+t^5",
    "32t+382t^2+896t^3+480t^4+54t^5",
];

/// Printed coefficients known to be misprints, as `(n, exponent)`.
const KNOWN_D_MISPRINTS: [(usize, usize); 1] = [(7, 2)];

/// The rc-index listings, `n = 1..=6`.
pub const REFERENCE_RC_INDEX: [&str; 6] = [
    "1",
    "c_1",
    "c_1^2+c_2",
    "c_1^3+c_1c_2+2c_2c_1+c_3",
    "c_1^4+c_1^2c_2+2c_1c_2c_1+3c_2c_1^2+2c_2^2+c_1c_3+3c_3c_1+c_4",
    "c_1^5+c_1^3c_2+2c_1^2c_2c_1+3c_1c_2c_1^2+4c_2c_1^3+2c_1c_2^2+3c_2c_1c_2+5c_2^2c_1+c_1^2c_3\
     +3c_1c_3c_1+6c_3c_1^2+2c_2c_3+3c_3c_2+c_1c_4+4c_4c_1+c_5",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A printed value disagrees with the computation and an independent
    /// consistency check sides with the computation.
    DocumentedDiscrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::DocumentedDiscrepancy => "documented-discrepancy",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The statement being checked.
    pub anchor: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

impl CheckRecord {
    fn new(id: impl Into<String>, anchor: &str, status: Status, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        CheckRecord { id: id.into(), anchor: anchor.to_string(), status, expected: expected.to_string(), actual: actual.to_string() }
    }

    fn when(id: impl Into<String>, anchor: &str, ok: bool, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        Self::new(id, anchor, if ok { Status::Pass } else { Status::Fail }, expected, actual)
    }

    /// Passes when both sides render identically.
    fn same(id: impl Into<String>, anchor: &str, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        let (e, a) = (expected.to_string(), actual.to_string());
        Self::when(id, anchor, e == a, e, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tables,
    Bijection,
    Identities,
    Conjectures,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Tables, Suite::Bijection, Suite::Identities, Suite::Conjectures];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Bijection => "bijection",
            Suite::Identities => "identities",
            Suite::Conjectures => "conjectures",
        }
    }

    /// Default upper bound on `n`.
    ///
    /// For `bijection` it bounds the exhaustive range, for `identities` the
    /// brute-force range, for `conjectures` the spiral range (the root-count
    /// and two-variable checks stop at 12 and 7 or at the bound if lower).
    /// `tables` ignores it.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Tables => 7,
            Suite::Bijection | Suite::Identities => 8,
            Suite::Conjectures => 40,
        }
    }

    /// `evidence` for finite-range checks of general statements.
    pub fn label(self) -> &'static str {
        match self {
            Suite::Conjectures => "evidence",
            _ => "exact",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}' (expected tables, bijection, identities or conjectures)")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub format_version: u32,
    pub suite: Suite,
    pub max_n: usize,
    pub label: &'static str,
    pub passed: bool,
    pub records: Vec<CheckRecord>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One row per check: `id,anchor,status,expected,actual`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "anchor", "status", "expected", "actual"]).expect("in-memory write");
        for r in &self.records {
            let status = r.status.to_string();
            w.write_record([&r.id, &r.anchor, &status, &r.expected, &r.actual]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!("{:<24} {:<45} {}", r.status.to_string(), r.id, r.actual));
            if r.status != Status::Pass {
                out.push_str(&format!("  (expected {})", r.expected));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "suite {} ({}, max n {}): {} pass, {} fail, {} documented discrepancy; {}\n",
            self.suite,
            self.label,
            self.max_n,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::DocumentedDiscrepancy),
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

type Job<'a> = Box<dyn Fn() -> Result<Vec<CheckRecord>> + Send + Sync + 'a>;

/// Runs a suite. `max_n` defaults to [`Suite::default_max_n`].
pub fn verify_suite(suite: Suite, max_n: Option<usize>) -> Result<VerificationReport> {
    verify_suite_with_cache(suite, max_n, None)
}

/// As [`verify_suite`]; with a cache, the `tables` suite also checks every
/// stored polynomial it touches against the fresh value.
pub fn verify_suite_with_cache(suite: Suite, max_n: Option<usize>, cache: Option<&PolyCache>) -> Result<VerificationReport> {
    let start = Instant::now();
    let bound = max_n.unwrap_or(suite.default_max_n());
    let jobs = match suite {
        Suite::Tables => table_jobs(cache),
        Suite::Bijection => {
            BruteForceCap::new(bound)?;
            bijection_jobs(bound)
        }
        Suite::Identities => {
            BruteForceCap::new(bound)?;
            identity_jobs(bound)
        }
        Suite::Conjectures => conjecture_jobs(bound),
    };
    let mut records: Vec<CheckRecord> = jobs.par_iter().map(|j| j()).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    records.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = records.iter().all(|r| r.status != Status::Fail);
    Ok(VerificationReport {
        format_version: REPORT_FORMAT_VERSION,
        suite,
        max_n: bound,
        label: suite.label(),
        passed,
        records,
        wall_time: start.elapsed(),
    })
}

/// Separable permutation counts for `n = 1..=max`, by the convolution
/// recurrence of the large Schröder numbers.
pub fn schroder_numbers(max: usize) -> Vec<BigInt> {
    let mut r = vec![BigInt::one()];
    for m in 1..max {
        let conv: BigInt = (0..m).map(|k| &r[k] * &r[m - 1 - k]).sum();
        let next = &r[m - 1] + conv;
        r.push(next);
    }
    r.truncate(max);
    r
}

/// Derangement counts `d_0..=d_max`, from `d_n = n d_{n-1} + (-1)^n`.
pub fn derangement_numbers(max: usize) -> Vec<BigInt> {
    let mut d = vec![BigInt::one()];
    for n in 1..=max {
        let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let next = BigInt::from(n) * &d[n - 1] + sign;
        d.push(next);
    }
    d
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn join<T: fmt::Display>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn minus_positions(t: &DiskTree) -> Vec<usize> {
    t.labels().iter().enumerate().filter(|(_, &op)| op == Op::Skew).map(|(i, _)| i + 1).collect()
}

fn all_perms(n: usize) -> Vec<Permutation> {
    Permutations::new(n).collect()
}

// ---------------------------------------------------------------- tables

fn table_jobs(cache: Option<&PolyCache>) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(|| {
        let mut out = Vec::new();
        for n in 1..=6 {
            let rec = s_poly(n, Method::Recurrence)?;
            let en = s_poly(n, Method::enumerate())?;
            let actual = if rec == en { rec.to_string() } else { format!("recurrence {rec}, enumeration {en}") };
            out.push(CheckRecord::same(format!("tables/s-poly/{n:02}"), "descent polynomial of separable permutations", REFERENCE_S[n - 1], actual));
            let g = separable_gamma(n)?;
            let ok = g.reconstruct() == rec;
            let actual = if ok { join(g.full()) } else { format!("{} (does not reconstruct)", join(g.full())) };
            out.push(CheckRecord::same(format!("tables/s-gamma/{n:02}"), "γ-vector of the separable descent polynomial", join(REFERENCE_GAMMA[n - 1]), actual));
        }
        Ok(out)
    }));
    jobs.push(Box::new(|| {
        let derangements = derangement_numbers(7);
        let mut out = Vec::new();
        for n in 2..=7 {
            let rec = d_poly(n, Method::Recurrence)?;
            let en = d_poly(n, Method::enumerate())?;
            let printed: IntPolynomial = REFERENCE_D[n - 2].parse()?;
            let id = format!("tables/d-poly/{n:02}");
            let anchor = "descent polynomial of derangements";
            if rec != en {
                out.push(CheckRecord::new(id, anchor, Status::Fail, printed, format!("recurrence {rec}, enumeration {en}")));
                continue;
            }
            if rec == printed {
                out.push(CheckRecord::same(id, anchor, printed, rec));
                continue;
            }
            let len = rec.coeffs().len().max(printed.coeffs().len());
            let differing: Vec<usize> = (0..len).filter(|&i| rec.coeff(i) != printed.coeff(i)).collect();
            let explained = differing.iter().all(|&i| KNOWN_D_MISPRINTS.contains(&(n, i)))
                && rec.coefficient_sum() == derangements[n];
            let status = if explained { Status::DocumentedDiscrepancy } else { Status::Fail };
            let note = format!(
                "{rec} (printed value differs at t^{}; row sum {} equals the derangement count {})",
                join(&differing),
                rec.coefficient_sum(),
                derangements[n]
            );
            out.push(CheckRecord::new(id, anchor, status, printed, note));
        }
        Ok(out)
    }));
    jobs.push(Box::new(|| {
        let mut out = Vec::new();
        for n in 1..=6 {
            let listing = RCIndex::parse_listing(n, REFERENCE_RC_INDEX[n - 1])?;
            let computed = phi(n)?;
            out.push(CheckRecord::when(
                format!("tables/rc-index/{n:02}"),
                "rc-index listing",
                listing == computed,
                REFERENCE_RC_INDEX[n - 1],
                &computed,
            ));
        }
        // The text counts distinct terms as compositions of n; the listings
        // themselves have one term per composition of n - 1.
        let counts: Vec<usize> = (2..=9).map(|n| phi(n).map(|p| p.distinct_terms())).collect::<Result<_>>()?;
        let compositions_of_n_minus_1: Vec<usize> = (2..=9).map(|n| 1 << (n - 2)).collect();
        let claimed: Vec<usize> = (2..=9).map(|n| 1 << (n - 1)).collect();
        let status = if counts == claimed {
            Status::Pass
        } else if counts == compositions_of_n_minus_1 {
            Status::DocumentedDiscrepancy
        } else {
            Status::Fail
        };
        out.push(CheckRecord::new(
            "tables/rc-index-distinct-terms",
            "distinct rc-index terms for n = 2..9, stated as compositions of n",
            status,
            join(claimed),
            format!("{} (compositions of n - 1)", join(counts)),
        ));
        Ok(out)
    }));
    jobs.push(Box::new(|| {
        let schroder = schroder_numbers(7);
        let mut out = Vec::new();
        for n in 1..=7 {
            let perms = Permutations::new(n).filter(|p| p.find_pattern(&[2, 4, 1, 3]).is_none() && p.find_pattern(&[3, 1, 4, 2]).is_none()).count();
            let words = enumerate_words(n).count();
            let trees = enumerate_trees(n).count();
            out.push(CheckRecord::same(
                format!("tables/schroder-counts/{n:02}"),
                "separable permutations, Schröder words and di-sk trees are equinumerous",
                format!("{0}/{0}/{0}", schroder[n - 1]),
                format!("{perms}/{words}/{trees}"),
            ));
        }
        Ok(out)
    }));
    jobs.push(Box::new(|| {
        let schroder = schroder_numbers(10);
        let out = (1..=10)
            .into_par_iter()
            .map(|n| {
                let shapes: Vec<_> = enumerate_shapes(n).collect();
                let labelled: BigInt = shapes.iter().map(|s| BigInt::one() << s.right_chains().r()).sum();
                CheckRecord::same(
                    format!("tables/shape-counts/{n:02}"),
                    "shape classes number C_(n-1); their 2^r labelings sum to the Schröder number",
                    format!("{}/{}", catalan(n - 1), schroder[n - 1]),
                    format!("{}/{}", shapes.len(), labelled),
                )
            })
            .collect();
        Ok(out)
    }));
    if let Some(cache) = cache {
        jobs.push(Box::new(move || {
            let mut out = Vec::new();
            let touched = (1..=6).map(|n| (Family::S, n)).chain((2..=7).map(|n| (Family::D, n)));
            for (family, n) in touched {
                let fresh = family.poly(n, Method::Recurrence)?;
                let outcome = cache.reconcile(family, n, &fresh)?;
                let (ok, actual) = match outcome {
                    CacheOutcome::Stored => (true, "stored".to_string()),
                    CacheOutcome::Matched => (true, "matched".to_string()),
                    CacheOutcome::Replaced { stale } => (false, format!("stale entry {stale} replaced")),
                };
                out.push(CheckRecord::when(
                    format!("tables/cache/{family}/{n:02}"),
                    "cached polynomial equals the fresh computation",
                    ok,
                    "stored or matched",
                    actual,
                ));
            }
            Ok(out)
        }));
    }
    jobs
}

// ---------------------------------------------------------------- bijection

fn bijection_jobs(bound: usize) -> Vec<Job<'static>> {
    let mut jobs: Vec<Job> = Vec::new();
    for n in 1..=bound {
        jobs.push(Box::new(move || {
            let words: Vec<_> = enumerate_words(n).collect();
            let failures = words
                .par_iter()
                .filter(|w| {
                    let p = word_to_perm(w);
                    let t = DiskTree::from_word(w);
                    let swept = sweep(&p).ok();
                    swept.as_ref() != Some(*w)
                        || t.to_word() != **w
                        || t.to_permutation() != p
                        || DiskTree::from_permutation(&p).ok().as_ref() != Some(&t)
                })
                .count();
            Ok(vec![CheckRecord::same(
                format!("bijection/round-trips/{n:02}"),
                "permutation, Schröder word and di-sk tree conversions are mutually inverse",
                format!("0 failures over {}", words.len()),
                format!("{failures} failures over {}", words.len()),
            )])
        }));
        jobs.push(Box::new(move || {
            let gamma = separable_gamma(n)?;
            let mut expected = Vec::new();
            let mut actual = Vec::new();
            let mut all_ok = true;
            for k in 0..=(n - 1) / 2 {
                let c = certify_bijection(n, k);
                all_ok &= c.bijection_ok;
                expected.push(format!("{0}/{0}", gamma.gamma(k)));
                actual.push(format!("{}/{}{}", c.dt1, c.dt2, if c.bijection_ok { "" } else { "!" }));
            }
            let (e, a) = (expected.join(","), actual.join(","));
            Ok(vec![CheckRecord::when(
                format!("bijection/psi-phi/{n:02}"),
                "|DT1_(n,k)| = |DT2_(n,k)| = γ_(n,k) with ψ and φ mutually inverse",
                all_ok && e == a,
                e,
                a,
            )])
        }));
        jobs.push(Box::new(move || {
            let trees: Vec<DiskTree> =
                enumerate_trees(n).filter(|t| in_dt1(t, t.n_minus()) || in_dt2(t, t.n_minus())).collect();
            let bad = trees
                .par_iter()
                .map(|t| order_independence_certificate(t, 10).map(|ok| usize::from(!ok)))
                .sum::<Result<usize>>()?;
            Ok(vec![CheckRecord::same(
                format!("bijection/order-independence/{n:02}"),
                "the elementary steps of ψ and φ commute (10 random orders per tree)",
                format!("0 of {}", trees.len()),
                format!("{bad} of {}", trees.len()),
            )])
        }));
    }
    jobs.push(Box::new(move || {
        let mut adjoint: BTreeMap<String, usize> = BTreeMap::new();
        let mut l_cases: BTreeMap<String, usize> = BTreeMap::new();
        for case in ["I", "II", "III", "IV", "V", "VI"] {
            adjoint.insert(case.to_string(), 0);
        }
        for case in 1..=6 {
            l_cases.insert(case.to_string(), 0);
        }
        for n in 1..=bound {
            for t in enumerate_trees(n) {
                let k = t.n_minus();
                if in_dt2(&t, k) {
                    for (site, _) in psi_plan(&t)? {
                        *adjoint.entry(site.case.to_string()).or_default() += 1;
                    }
                }
                if in_dt1(&t, k) {
                    for (site, _) in phi_plan(&t) {
                        *l_cases.entry(site.case.to_string()).or_default() += 1;
                    }
                }
            }
        }
        let render = |m: &BTreeMap<String, usize>| join(m.iter().map(|(k, v)| format!("{k}:{v}")));
        let ok = adjoint.values().chain(l_cases.values()).all(|&c| c > 0);
        Ok(vec![CheckRecord::when(
            "bijection/case-coverage",
            "every adjoint case I-VI and L case 1-6 occurs",
            ok,
            "all counts positive",
            format!("adjoint {}; L {}", render(&adjoint), render(&l_cases)),
        )])
    }));
    jobs
}

// ---------------------------------------------------------------- identities

fn identity_jobs(bound: usize) -> Vec<Job<'static>> {
    let cap = BruteForceCap::new(bound).expect("checked by caller");
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(move || {
        let pools: Vec<Vec<Permutation>> = (0..bound).map(all_perms).collect();
        let pairs: Vec<(usize, usize)> = (1..bound).flat_map(|a| (1..=bound - a).map(move |b| (a, b))).collect();
        let (checked, bad) = pairs
            .par_iter()
            .map(|&(a, b)| {
                let mut bad = 0usize;
                for p in &pools[a] {
                    for q in &pools[b] {
                        let d = p.direct_sum(q);
                        let s = p.skew_sum(q);
                        let ok = d.des() == p.des() + q.des()
                            && d.ides() == p.ides() + q.ides()
                            && s.des() == p.des() + q.des() + 1
                            && s.ides() == p.ides() + q.ides() + 1;
                        bad += usize::from(!ok);
                    }
                }
                (pools[a].len() * pools[b].len(), bad)
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        Ok(vec![CheckRecord::same(
            "identities/sum-additivity",
            "des and ides add under ⊕, and gain one under ⊖",
            format!("0 failures over {checked} pairs"),
            format!("{bad} failures over {checked} pairs"),
        )])
    }));
    jobs.push(Box::new(move || {
        let mut out = Vec::new();
        for n in 1..=bound {
            let perms = all_perms(n);
            let bad = perms
                .par_iter()
                .filter(|p| {
                    let avoids = p.find_pattern(&[2, 4, 1, 3]).is_none() && p.find_pattern(&[3, 1, 4, 2]).is_none();
                    let ides_ok = p.ides() == p.inverse().des();
                    sweep(p).is_ok() != avoids || !ides_ok
                })
                .count();
            out.push(CheckRecord::same(
                format!("identities/sweep-characterisation/{n:02}"),
                "the sweep succeeds exactly on 2413- and 3142-avoiders; ides = des of the inverse",
                "0 failures",
                format!("{bad} failures"),
            ));
        }
        Ok(out)
    }));
    jobs.push(Box::new(move || {
        let mut out = Vec::new();
        for n in 1..=bound {
            let bad = enumerate_words(n)
                .filter(|w| {
                    let p = word_to_perm(w);
                    let des = p.descent_set();
                    w.skew_positions() != des || minus_positions(&DiskTree::from_word(w)) != des
                })
                .count();
            out.push(CheckRecord::same(
                format!("identities/descent-correspondence/{n:02}"),
                "⊖ operators of the word and ⊖ nodes of the tree sit at the descents",
                "0 failures",
                format!("{bad} failures"),
            ));
        }
        Ok(out)
    }));
    jobs.push(Box::new(|| {
        let mut out = Vec::new();
        for n in 2..=10 {
            let ok = verify_df_gr_identity(n, 12)?;
            out.push(CheckRecord::when(
                format!("identities/derangement-series/{n:02}"),
                "D_n(t)/(1-t)^(n+1) = Σ T_r(n) t^(r-1) through t^11",
                ok,
                "equal",
                if ok { "equal" } else { "differ" },
            ));
        }
        Ok(out)
    }));
    jobs.push(Box::new(move || {
        let mut out = Vec::new();
        let families: [(&str, fn(usize, Method) -> Result<IntPolynomial>); 6] = [
            ("S", s_poly),
            ("D", d_poly),
            ("A", a_poly),
            ("Dtilde", dtilde_poly),
            ("Gamma", gamma_poly),
            ("Narayana", narayana_poly),
        ];
        for (name, f) in families {
            for n in 1..=bound {
                let rec = f(n, Method::Recurrence)?;
                let en = f(n, Method::Enumeration(cap))?;
                out.push(CheckRecord::same(
                    format!("identities/recurrence-vs-enumeration/{name}/{n:02}"),
                    "recurrence agrees with brute-force enumeration",
                    en,
                    rec,
                ));
            }
        }
        Ok(out)
    }));
    jobs.push(Box::new(|| {
        // Coefficientwise form of the derangement recurrence, checked
        // against the polynomial form for n ≤ 40, with row sums.
        let derangements = derangement_numbers(40);
        let mut bad = Vec::new();
        let mut prev = IntPolynomial::zero();
        for n in 2..=40usize {
            let d = d_poly(n, Method::Recurrence)?;
            let mut expect = vec![BigInt::zero(); n];
            for (k, slot) in expect.iter_mut().enumerate().skip(1) {
                *slot = BigInt::from(k + 1) * prev.coeff(k) + BigInt::from(n - k) * prev.coeff(k - 1);
            }
            expect[n - 1] += if n % 2 == 0 { 1 } else { -1 };
            let a = a_poly(n, Method::Recurrence)?;
            let dt = dtilde_poly(n, Method::Recurrence)?;
            let top_ok = d.coeff(n - 1) == BigInt::from(usize::from(n % 2 == 0));
            if IntPolynomial::new(expect) != d
                || &d + &dt != a
                || d.coefficient_sum() != derangements[n]
                || a.coefficient_sum() != factorial(n)
                || !top_ok
            {
                bad.push(n);
            }
            prev = d;
        }
        Ok(vec![CheckRecord::same(
            "identities/derangement-recurrence",
            "coefficient recurrence, D + D̃ = A, row sums and top coefficient for n ≤ 40",
            "no failing n",
            if bad.is_empty() { "no failing n".to_string() } else { format!("failing n: {}", join(bad)) },
        )])
    }));
    jobs.push(Box::new(|| {
        let residual = cubic_residual(10)?;
        let bad: Vec<usize> = residual.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(m, _)| m).collect();
        Ok(vec![CheckRecord::same(
            "identities/cubic-equation",
            "z + (1+t)zS + tzS² + tS³ - S vanishes through z^10",
            "zero through z^10",
            if bad.is_empty() { "zero through z^10".to_string() } else { format!("nonzero at z^{}", join(bad)) },
        )])
    }));
    jobs.push(Box::new(move || {
        let mut out = Vec::new();
        for n in 1..=bound {
            let (plus, minus) = s_split(n)?;
            let mut by_root = [vec![0u64; n], vec![0u64; n]];
            for t in enumerate_trees(n) {
                let side = match t.tree().root() {
                    Some(r) if t.label(r) == Op::Skew => 1,
                    _ => 0,
                };
                by_root[side][t.n_minus()] += 1;
            }
            let counted = |v: &[u64]| IntPolynomial::new(v.iter().map(|&c| BigInt::from(c)).collect());
            // A single leaf has no root node; both parts are 1 by convention.
            let (ep, em) = if n == 1 { (IntPolynomial::one(), IntPolynomial::one()) } else { (counted(&by_root[0]), counted(&by_root[1])) };
            out.push(CheckRecord::same(
                format!("identities/root-split/{n:02}"),
                "S splits by the root label of the tree",
                format!("{ep} | {em}"),
                format!("{plus} | {minus}"),
            ));
        }
        Ok(out)
    }));
    jobs.push(Box::new(|| {
        let schroder = schroder_numbers(10);
        let out = (1..=10)
            .into_par_iter()
            .map(|n| -> Result<Vec<CheckRecord>> {
                let idx = phi(n)?;
                let mut v = vec![CheckRecord::same(
                    format!("identities/shape-gamma-sum/{n:02}"),
                    "γ_(n,k) = Σ 2^(r_e) over shapes with n-1-2k odd chains",
                    join(separable_gamma(n)?.full()),
                    join((0..=(n - 1) / 2).map(|k| idx.gamma_from_shapes(k))),
                )];
                if n <= 9 {
                    v.push(CheckRecord::same(
                        format!("identities/rc-index-evaluations/{n:02}"),
                        "Φ_n(1,…,1) = C_(n-1), Φ_n(2,…,2) = Schröder, a=1,b=t gives S_n",
                        format!("{}/{}/{}", catalan(n - 1), schroder[n - 1], s_poly(n, Method::Recurrence)?),
                        format!("{}/{}/{}", idx.evaluate_constant(1), idx.evaluate_constant(2), idx.substitute_ab()),
                    ));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(out.into_iter().flatten().collect())
    }));
    jobs.push(Box::new(move || {
        let mut out = Vec::new();
        for n in 1..=bound {
            let gamma = separable_gamma(n)?;
            let mut counts = vec![0u64; n];
            for p in Permutations::new(n) {
                if p.double_descents() == 0 && p.find_pattern(&[2, 4, 1, 3]).is_none() && p.find_pattern(&[3, 1, 4, 2]).is_none() {
                    counts[p.des()] += 1;
                }
            }
            let k_max = (n - 1) / 2;
            let beyond = counts[k_max + 1..].iter().any(|&c| c > 0);
            let actual = join(&counts[..=k_max]) + if beyond { " (+ terms beyond ⌊(n-1)/2⌋)" } else { "" };
            out.push(CheckRecord::same(
                format!("identities/gamma-interpretation/{n:02}"),
                "γ_(n,k) counts separable permutations with no double descent and k descents",
                join(gamma.full()),
                actual,
            ));
        }
        Ok(out)
    }));
    jobs.push(Box::new(move || {
        let mut out = Vec::new();
        for n in 1..=bound {
            out.push(CheckRecord::same(
                format!("identities/desarrangement-ides/{n:02}"),
                "ides over desarrangements has the derangement descent distribution",
                d_poly(n, Method::Recurrence)?,
                desarrangement_histogram(n, cap)?,
            ));
        }
        Ok(out)
    }));
    jobs.push(Box::new(move || {
        let mut out = Vec::new();
        for n in 2..=bound.min(7) {
            let mut image = HashSet::new();
            let mut bad = 0usize;
            for p in all_perms(n - 1) {
                let inv_des = p.inverse_descent_set();
                for j in 1..=n as u32 {
                    let s = p.insert_map(j)?;
                    // Appending n never adds an inverse descent.
                    let keep = j as usize == n || inv_des.contains(&(j as usize - 1));
                    let expected = if keep { p.ides() } else { p.ides() + 1 };
                    bad += usize::from(s.ides() != expected || s.at(n) != j);
                    image.insert(s);
                }
            }
            out.push(CheckRecord::same(
                format!("identities/insertion-map/{n:02}"),
                "insertion (π, j) ↦ σ is a bijection onto 𝔖_n; ides grows by one unless j-1 is an inverse descent or j = n",
                format!("{} images, 0 failures", factorial(n)),
                format!("{} images, {bad} failures", image.len()),
            ));
        }
        Ok(out)
    }));
    jobs
}

// ---------------------------------------------------------------- conjectures

fn conjecture_jobs(bound: usize) -> Vec<Job<'static>> {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(move || {
        let mut exceptions = Vec::new();
        for n in 1..=bound {
            let r = check_spiral(n);
            let d = d_poly(n, Method::Recurrence)?;
            for &(a, b) in &r.equalities {
                exceptions.push(format!("d_({n},{a}) = d_({n},{b}) = {}", d.coeff(a)));
            }
            for &(a, b) in &r.violations {
                exceptions.push(format!("d_({n},{a}) > d_({n},{b})"));
            }
        }
        let expected = if bound >= 4 { "d_(4,1) = d_(4,2) = 4" } else { "" };
        let actual = exceptions.join("; ");
        Ok(vec![CheckRecord::same(
            "conjectures/spiral/D",
            "spiral inequalities for D_n, n ≤ bound, with the single permitted equality",
            expected,
            actual,
        )])
    }));
    jobs.push(Box::new(move || {
        let mut unexpected = Vec::new();
        for n in 1..=bound {
            let p = dtilde_poly(n, Method::Recurrence)?;
            let r = spiral_report(&p);
            let top = n - 1;
            for &(a, b) in &r.equalities {
                let pair = (a.min(b), a.max(b));
                let end_tie = pair == (0, top) && p.coeff(0) == BigInt::one() && p.coeff(top) == BigInt::one();
                if !end_tie && !(n == 4 && pair == (1, 2)) {
                    unexpected.push(format!("d̃_({n},{a}) = d̃_({n},{b})"));
                }
            }
            for &(a, b) in &r.violations {
                unexpected.push(format!("d̃_({n},{a}) > d̃_({n},{b})"));
            }
            if !p.is_unimodal() {
                unexpected.push(format!("D̃_{n} not unimodal"));
            }
        }
        Ok(vec![CheckRecord::same(
            "conjectures/spiral/Dtilde",
            "spiral inequalities and unimodality for D̃_n, n ≤ bound; ties only between the two end coefficients 1 and at d̃_(4,1) = d̃_(4,2) = 7",
            "no other exceptions",
            if unexpected.is_empty() {
                "no other exceptions".to_string()
            } else {
                unexpected.join("; ")
            },
        )])
    }));
    jobs.push(Box::new(move || {
        let mut out = Vec::new();
        for n in 1..=12.min(bound) {
            let s = s_poly(n, Method::Recurrence)?;
            let g = s.gamma_decompose(n - 1);
            let ok = s.is_palindromic(n - 1) && s.is_unimodal() && g.as_ref().is_ok_and(|g| g.is_nonnegative());
            out.push(CheckRecord::when(
                format!("conjectures/s-shape/{n:02}"),
                "S_n palindromic of darga n-1, unimodal and γ-positive",
                ok,
                "palindromic, unimodal, γ-positive",
                if ok { "palindromic, unimodal, γ-positive".to_string() } else { format!("{s}") },
            ));
        }
        Ok(out)
    }));
    jobs.push(Box::new(move || {
        let mut out = Vec::new();
        for n in 2..=12.min(bound) {
            for (name, p) in [("S", s_poly(n, Method::Recurrence)?), ("D", d_poly(n, Method::Recurrence)?)] {
                let ok = is_real_rooted(&p)?;
                out.push(CheckRecord::when(
                    format!("conjectures/real-rooted/{name}/{n:02}"),
                    "every root real (exact Sturm count)",
                    ok,
                    "real-rooted",
                    if ok { "real-rooted" } else { "complex roots present" },
                ));
            }
        }
        Ok(out)
    }));
    jobs.push(Box::new(move || {
        let mut out = Vec::new();
        for n in 1..=7.min(bound) {
            let (ok, actual) = match gessel_gamma(n, BruteForceCap::default()) {
                Err(e) => (false, e.to_string()),
                Ok(GesselOutcome::Solved { nonnegative, dominates_separable, rank, unknowns, .. }) => (
                    nonnegative && dominates_separable,
                    format!("rank {rank}/{unknowns}; nonnegative {nonnegative}; dominates γ^S {dominates_separable}"),
                ),
                Ok(GesselOutcome::Indeterminate { rank, unknowns, .. }) => (true, format!("indeterminate, rank {rank}/{unknowns}")),
            };
            out.push(CheckRecord::when(
                format!("conjectures/two-variable-gamma/{n:02}"),
                "γ_(n,i,j) ≥ 0 and γ_(n,k,n-1-2k) ≥ γ^S_(n,k)",
                ok,
                "nonnegative and dominating, or indeterminate",
                actual,
            ));
        }
        Ok(out)
    }));
    jobs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_numbers() {
        assert_eq!(schroder_numbers(7), [1, 2, 6, 22, 90, 394, 1806].map(BigInt::from));
        assert_eq!(derangement_numbers(7)[7], BigInt::from(1854));
    }

    #[test]
    fn tables_suite() {
        let r = verify_suite(Suite::Tables, None).unwrap();
        assert!(r.passed, "{}", r.to_text());
        let flagged: Vec<&str> =
            r.records.iter().filter(|x| x.status == Status::DocumentedDiscrepancy).map(|x| x.id.as_str()).collect();
        assert_eq!(flagged, ["tables/d-poly/07", "tables/rc-index-distinct-terms"]);
    }

    #[test]
    fn suite_names() {
        assert_eq!("Bijection".parse::<Suite>().unwrap(), Suite::Bijection);
        assert!("proofs".parse::<Suite>().is_err());
        assert!(matches!(verify_suite(Suite::Bijection, Some(11)), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn csv_has_one_row_per_check() {
        let r = verify_suite(Suite::Conjectures, Some(6)).unwrap();
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), r.records.len() + 1);
        assert_eq!(r.label, "evidence");
    }
}

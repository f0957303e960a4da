//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Everything is exact integer arithmetic, so the only tolerances are the
//! wall-clock budgets, pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use sepdesc::disk_tree::{enumerate_shapes, enumerate_trees};
use sepdesc::perm::Permutations;
use sepdesc::rc_index::catalan;
use sepdesc::schroder::{enumerate_words, word_to_perm};
use sepdesc::disk_tree::DiskTree;
use sepdesc::verify::{verify_suite, Status, Suite, VerificationReport};

const TABLES_BUDGET: Duration = Duration::from_secs(10);
const BIJECTION_8_BUDGET: Duration = Duration::from_secs(60);
const BIJECTION_9_BUDGET: Duration = Duration::from_secs(600);

const SCHRODER: [u64; 10] = [1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098];

struct Outcome {
    ok: bool,
    detail: String,
}

fn record_status(r: &VerificationReport, id: &str) -> Option<Status> {
    r.records.iter().find(|x| x.id == id).map(|x| x.status)
}

fn all_pass_with_prefix(r: &VerificationReport, prefix: &str) -> (bool, usize) {
    let matching: Vec<_> = r.records.iter().filter(|x| x.id.starts_with(prefix)).collect();
    (!matching.is_empty() && matching.iter().all(|x| x.status == Status::Pass), matching.len())
}

fn tables() -> Outcome {
    let start = Instant::now();
    let r = verify_suite(Suite::Tables, None).expect("tables suite runs");
    let elapsed = start.elapsed();
    let d7 = r.records.iter().find(|x| x.id == "tables/d-poly/07").expect("D_7 record");
    let d7_ok = d7.status == Status::DocumentedDiscrepancy && d7.actual.starts_with("32t+392t^2+") && d7.expected.contains("382t^2");
    let (s_ok, _) = all_pass_with_prefix(&r, "tables/s-poly/");
    let (g_ok, _) = all_pass_with_prefix(&r, "tables/s-gamma/");
    let d_rest = (2..=6).all(|n| record_status(&r, &format!("tables/d-poly/{n:02}")) == Some(Status::Pass));
    let ok = r.passed && d7_ok && s_ok && g_ok && d_rest && elapsed < TABLES_BUDGET;
    Outcome {
        ok,
        detail: format!("S_1..S_6 with γ-vectors, D_2..D_6 verbatim; D_7 t^2 = 392 vs printed 382 flagged; {elapsed:.2?} (budget {TABLES_BUDGET:?})"),
    }
}

fn counting() -> Outcome {
    let mut ok = true;
    for n in 1..=7usize {
        let want = SCHRODER[n - 1] as usize;
        let perms = Permutations::new(n).filter(|p| p.find_pattern(&[2, 4, 1, 3]).is_none() && p.find_pattern(&[3, 1, 4, 2]).is_none()).count();
        ok &= perms == want && enumerate_words(n).count() == want && enumerate_trees(n).count() == want;
    }
    for n in 1..=10usize {
        let shapes: Vec<_> = enumerate_shapes(n).collect();
        let labelled: u64 = shapes.iter().map(|s| 1u64 << s.right_chains().r()).sum();
        ok &= BigInt::from(shapes.len()) == catalan(n - 1) && labelled == SCHRODER[n - 1];
    }
    Outcome { ok, detail: "1,2,6,22,90,394,1806 permutations/words/trees for n ≤ 7; C_(n-1) shapes and Σ 2^r = Schröder for n ≤ 10".into() }
}

fn bijection() -> Outcome {
    let start = Instant::now();
    let r8 = verify_suite(Suite::Bijection, Some(8)).expect("bijection suite runs");
    let t8 = start.elapsed();
    let start = Instant::now();
    let r9 = verify_suite(Suite::Bijection, Some(9)).expect("bijection suite runs");
    let t9 = start.elapsed();
    let mut descents_ok = true;
    for n in 1..=9 {
        for w in enumerate_words(n) {
            let p = word_to_perm(&w);
            let t = DiskTree::from_word(&w);
            let minus: Vec<usize> = t.labels().iter().enumerate().filter(|(_, o)| o.is_skew()).map(|(i, _)| i + 1).collect();
            descents_ok &= w.skew_positions() == p.descent_set() && minus == p.descent_set();
        }
    }
    let coverage = record_status(&r9, "bijection/case-coverage") == Some(Status::Pass);
    let ok = r8.passed && r9.passed && coverage && descents_ok && t8 < BIJECTION_8_BUDGET && t9 < BIJECTION_9_BUDGET;
    Outcome {
        ok,
        detail: format!(
            "round trips, ⊖ = descents, |DT1| = |DT2| = γ, ψφ = φψ = id, 10 orders per tree, cases I-VI and 1-6 covered; n ≤ 8 in {t8:.2?} (budget {BIJECTION_8_BUDGET:?}), n = 9 in {t9:.2?} (budget {BIJECTION_9_BUDGET:?})"
        ),
    }
}

fn identities() -> Outcome {
    let r = verify_suite(Suite::Identities, Some(8)).expect("identities suite runs");
    let tables = verify_suite(Suite::Tables, None).expect("tables suite runs");
    let listings = (1..=6).all(|n| record_status(&tables, &format!("tables/rc-index/{n:02}")) == Some(Status::Pass));
    let wanted = [
        "identities/sum-additivity",
        "identities/derangement-series/",
        "identities/recurrence-vs-enumeration/S/",
        "identities/recurrence-vs-enumeration/D/",
        "identities/recurrence-vs-enumeration/A/",
        "identities/cubic-equation",
        "identities/rc-index-evaluations/",
        "identities/shape-gamma-sum/",
        "identities/desarrangement-ides/",
    ];
    let present = wanted.iter().all(|p| all_pass_with_prefix(&r, p).0);
    Outcome {
        ok: r.passed && present && listings,
        detail: format!("{} exact checks: sum additivity, series identity (M = 12), recurrences vs enumeration, cubic residual mod z^11, Φ_1..Φ_6 listings, rc-index evaluations, shape γ-sums, desarrangements", r.records.len()),
    }
}

fn theorem_properties() -> Outcome {
    let r = verify_suite(Suite::Conjectures, Some(40)).expect("conjectures suite runs");
    let d = record_status(&r, "conjectures/spiral/D") == Some(Status::Pass);
    let dt = record_status(&r, "conjectures/spiral/Dtilde") == Some(Status::Pass);
    let (s_ok, s_count) = all_pass_with_prefix(&r, "conjectures/s-shape/");
    Outcome {
        ok: d && dt && s_ok && s_count == 12,
        detail: "D_n spiral for n ≤ 40 with only d_(4,1) = d_(4,2) = 4; S_n palindromic and unimodal for n ≤ 12; D̃_n spiral and unimodal for n ≤ 40".into(),
    }
}

fn conjecture_evidence() -> Outcome {
    let r = verify_suite(Suite::Conjectures, Some(40)).expect("conjectures suite runs");
    let (rr, rr_count) = all_pass_with_prefix(&r, "conjectures/real-rooted/");
    let (gv, gv_count) = all_pass_with_prefix(&r, "conjectures/two-variable-gamma/");
    Outcome {
        ok: r.label == "evidence" && rr && rr_count == 22 && gv && gv_count == 7,
        detail: "evidence: S_n and D_n real-rooted for 2 ≤ n ≤ 12; two-variable γ grid nonnegative and dominating γ^S for n ≤ 7".into(),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("table reproduction", tables),
        ("counting", counting),
        ("bijection suite", bijection),
        ("identity suite", identities),
        ("theorem-level properties", theorem_properties),
        ("conjecture evidence", conjecture_evidence),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        all &= o.ok;
        println!("criterion {} {:<26} {}  {}", i + 1, name, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

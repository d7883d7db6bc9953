//! Acceptance criteria 1 to 9, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::process::ExitCode;

use tangletwist::bracket::{det_via_bracket, ShapeMode, DET_ROUNDING_TOLERANCE};
use tangletwist::checkerboard::is_alternative;
use tangletwist::determinant::determinant;
use tangletwist::seifert::is_homogeneous;
use tangletwist::tangle::{BlockPattern, TangleBlock};
use tangletwist::twist::{generate_family, random_extending_block, replace_crossing, TwistSpec};
use tangletwist::verify::{diagram_report, run_suite, run_trial, FamilyRecord, Outcome, Suite};
use tangletwist::{catalog, Diagram, State};

const MASTER_SEED: u64 = 20_240_601;
const PRESERVATION_TRIALS: u64 = 500;
const DET_LEMMA_TRIALS: u64 = 200;
const DET_LEMMA_MIN_PASSES: u64 = 100;
const EXTREMES_TRIALS: u64 = 200;
const EXTREMES_MIN_PASSES: u64 = 100;
const MAX_BLOCK_CROSSINGS: usize = 6;
const MAX_TRIAL_CROSSINGS: usize = 20;
const ENUMERATION_MAX_N: usize = 12;
const FAMILY_MAX_N: usize = 20;
const PINNED_ROUNDING_TOLERANCE: f64 = 1e-6;

struct Criterion {
    id: u8,
    pass: bool,
    detail: String,
}

fn criterion(id: u8, pass: bool, detail: impl Into<String>) -> Criterion {
    Criterion { id, pass, detail: detail.into() }
}

fn load(name: &str) -> Diagram {
    catalog::load(name).expect("catalog entry")
}

fn class_checks() -> Criterion {
    let d = load("10_152");
    let p = load("P(2,2,-2,-2)");
    let got = (d.is_adequate(), is_homogeneous(&d), is_alternative(&d), p.is_adequate());
    criterion(1, got == (true, true, true, true), format!("10_152 (adequate, homogeneous, alternative) and pretzel adequate = {got:?}"))
}

/// Exhaustive check over every state of sigma `n - 2` (A side) or `2 - n` (B side).
fn enumerated_adequacy(d: &Diagram) -> (bool, bool) {
    let n = d.crossing_count();
    let count = |s: &State| d.resolve(s).expect("state length").circle_count;
    let (a, b) = (count(&d.all_a()), count(&d.all_b()));
    let (mut a_ok, mut b_ok) = (true, true);
    for mask in 0..(1u64 << n) {
        let s = State::from_mask(n, mask);
        if n >= 1 && s.sigma() == n as i64 - 2 {
            a_ok &= count(&s) < a;
        }
        if n >= 1 && s.sigma() == 2 - n as i64 {
            b_ok &= count(&s) < b;
        }
    }
    (a_ok, b_ok)
}

fn adequacy_equivalence() -> Criterion {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (name, d) in catalog::all() {
        if d.crossing_count() > ENUMERATION_MAX_N {
            continue;
        }
        checked += 1;
        if enumerated_adequacy(&d) != (d.is_a_adequate(), d.is_b_adequate()) {
            mismatches.push(name);
        }
    }
    criterion(2, mismatches.is_empty(), format!("{checked} catalog diagrams with n <= {ENUMERATION_MAX_N}, mismatches {mismatches:?}"))
}

/// Every failure record replays to itself.
fn replays(suite: Suite, records: &[tangletwist::verify::TrialRecord]) -> bool {
    records.iter().filter(|r| r.outcome == Outcome::Fail).all(|r| {
        let mut again = run_trial(suite, r.seed, MAX_BLOCK_CROSSINGS);
        again.trial = r.trial;
        &again == r
    })
}

fn preservation() -> Criterion {
    let mut pass = true;
    let mut parts = Vec::new();
    for suite in [Suite::Adequacy, Suite::Homogeneity, Suite::Alternativity, Suite::Positivity] {
        let r = run_suite(suite, MASTER_SEED, PRESERVATION_TRIALS, MAX_BLOCK_CROSSINGS);
        let s = &r.summary;
        pass &= s.failed == 0 && s.passed >= PRESERVATION_TRIALS && replays(suite, &r.records);
        parts.push(format!("{} {}/{} (excluded {})", suite.name(), s.passed, s.trials, s.excluded));
    }
    criterion(3, pass, parts.join(", "))
}

fn det_lemma() -> Criterion {
    let r = run_suite(Suite::DetLemma, MASTER_SEED, DET_LEMMA_TRIALS, MAX_BLOCK_CROSSINGS);
    let s = &r.summary;
    let pass = s.failed == 0 && s.passed >= DET_LEMMA_MIN_PASSES && replays(Suite::DetLemma, &r.records);
    criterion(4, pass, format!("{} passed, {} failed, {} with x*y = 0 reported separately", s.passed, s.failed, s.excluded))
}

/// Twist crossing 0 by `[k]`, `k` carrying the crossing's sign, up to `FAMILY_MAX_N` crossings.
fn families() -> Vec<(Diagram, TangleBlock, Diagram)> {
    let pattern = BlockPattern::parse("[?]").expect("pattern");
    let mut out = Vec::new();
    for (_, d) in catalog::all() {
        let n = d.crossing_count();
        if n == 0 || n > FAMILY_MAX_N {
            continue;
        }
        let s = d.sign(0) as i64;
        let top = (FAMILY_MAX_N + 1 - n) as i64;
        let range = if s > 0 { 1..=top } else { -top..=-1 };
        for member in generate_family(&d, 0, &pattern, range, false) {
            let (_, block, t) = member.expect("extending family");
            out.push((d.clone(), block, t));
        }
    }
    out
}

fn determinant_cross_oracle(family: &[(Diagram, TangleBlock, Diagram)]) -> Criterion {
    let mut mismatches = 0;
    let mut checked = 0;
    let catalog_diagrams = catalog::all().into_iter().map(|(_, d)| d);
    for d in catalog_diagrams.chain(family.iter().map(|(_, _, t)| t.clone())) {
        if d.crossing_count() > FAMILY_MAX_N {
            continue;
        }
        checked += 1;
        if det_via_bracket(&d).ok() != Some(determinant(&d)) {
            mismatches += 1;
        }
    }
    let spots = [("trefoil", 3), ("figure-eight", 5)];
    let spot_ok = spots.iter().all(|&(n, v)| {
        let d = load(n);
        determinant(&d) == v && det_via_bracket(&d).ok() == Some(v)
    });
    let tol_ok = DET_ROUNDING_TOLERANCE == PINNED_ROUNDING_TOLERANCE;
    criterion(
        5,
        mismatches == 0 && spot_ok && tol_ok,
        format!(
            "{checked} diagrams with n <= {FAMILY_MAX_N}, {mismatches} mismatches, trefoil=3 and figure-eight=5 by both: {spot_ok}, rounding tolerance {DET_ROUNDING_TOLERANCE:e}"
        ),
    )
}

fn extreme_power_prediction() -> Criterion {
    let r = run_suite(Suite::BracketProp, MASTER_SEED, EXTREMES_TRIALS, MAX_BLOCK_CROSSINGS);
    let s = &r.summary;
    let max_n = r.records.iter().filter_map(|x| x.details["crossings"].as_u64()).max().unwrap_or(0) as usize;
    let modes: BTreeSet<String> = r.records.iter().filter_map(|x| x.details["mode"].as_str().map(String::from)).collect();
    let pass = s.failed == 0
        && s.passed >= EXTREMES_MIN_PASSES
        && max_n <= MAX_TRIAL_CROSSINGS
        && modes.len() == 2
        && replays(Suite::BracketProp, &r.records);
    criterion(6, pass, format!("{} passed, {} failed, largest D* has {max_n} crossings, shapes {modes:?}", s.passed, s.failed))
}

/// Distinct blocks with exactly three crossings, all of sign `sign`.
fn three_crossing_blocks(sign: i8) -> Vec<TangleBlock> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for seed in 0..4000 {
        let b = random_extending_block(seed, sign, 3);
        if b.crossing_count() == 3 && seen.insert(b.to_string()) {
            out.push(b);
        }
    }
    out
}

fn crossing_count_law(family: &[(Diagram, TangleBlock, Diagram)]) -> Criterion {
    let law = |d: &Diagram, b: &TangleBlock, t: &Diagram| t.crossing_count() == d.crossing_count() - 1 + b.crossing_count();
    let family_ok = family.iter().all(|(d, b, t)| law(d, b, t));
    let d = load("10_152");
    let (pos, neg) = (three_crossing_blocks(1), three_crossing_blocks(-1));
    let mut twisted = 0;
    let mut good = 0;
    let mut modes = BTreeSet::new();
    for c in 0..d.crossing_count() {
        for b in if d.sign(c) > 0 { &pos } else { &neg } {
            let t = replace_crossing(&d, &TwistSpec { crossing: c, block: b.clone(), oriented: false }).expect("extending");
            twisted += 1;
            if law(&d, b, &t) && t.crossing_count() == 12 && t.is_adequate() {
                good += 1;
            }
            if let Ok(shape) = b.shape() {
                modes.insert(shape.mode == ShapeMode::ProductOfSums);
            }
        }
    }
    let pass = family_ok && twisted > 0 && good == twisted && modes.len() == 2;
    criterion(
        7,
        pass,
        format!(
            "{} family members obey the law: {family_ok}; 10_152 with {} distinct 3-crossing blocks: {good}/{twisted} twists are 12-crossing adequate",
            family.len(),
            pos.len()
        ),
    )
}

fn monotone_family() -> Criterion {
    let pattern = BlockPattern::parse("[?]").expect("pattern");
    let run = |name: &str, range: std::ops::RangeInclusive<i64>| -> (Vec<u64>, Vec<usize>) {
        let d = load(name);
        generate_family(&d, 0, &pattern, range, false)
            .map(|m| {
                let (_, _, t) = m.expect("extending");
                (determinant(&t), t.crossing_count())
            })
            .unzip()
    };
    let strictly_up = |v: &[u64]| v.windows(2).all(|w| w[0] < w[1]);
    let (dets, counts) = run("trefoil-right", 1..=10);
    let (mirror_dets, _) = run("trefoil", -10..=-1);
    let mirror_dets: Vec<u64> = mirror_dets.into_iter().rev().collect();
    let pass = strictly_up(&dets) && counts.windows(2).all(|w| w[0] < w[1]) && mirror_dets == dets;
    criterion(8, pass, format!("[k], k = 1..10 on a positive trefoil crossing: determinants {dets:?}, crossings {counts:?}"))
}

fn family_json(d: &Diagram) -> String {
    let pattern = BlockPattern::parse("[1,?]").expect("pattern");
    let mut out = String::new();
    for m in generate_family(d, 0, &pattern, 1..=4, false) {
        let (k, block, t) = m.expect("extending");
        let record = FamilyRecord { k, block: block.to_string(), report: diagram_report(&t).expect("small diagram") };
        out.push_str(&serde_json::to_string(&record).expect("serializable"));
        out.push('\n');
    }
    out
}

fn determinism() -> Criterion {
    let mut pass = true;
    for suite in Suite::ALL {
        let a = run_suite(suite, MASTER_SEED, 64, MAX_BLOCK_CROSSINGS).to_json_lines();
        let b = run_suite(suite, MASTER_SEED, 64, MAX_BLOCK_CROSSINGS).to_json_lines();
        pass &= a == b;
    }
    let right = load("trefoil-right");
    pass &= family_json(&right) == family_json(&right);
    criterion(9, pass, "six suites and one family report are byte-identical across two runs")
}

fn main() -> ExitCode {
    let family = families();
    let results = [
        class_checks(),
        adequacy_equivalence(),
        preservation(),
        det_lemma(),
        determinant_cross_oracle(&family),
        extreme_power_prediction(),
        crossing_count_law(&family),
        monotone_family(),
        determinism(),
    ];
    for r in &results {
        println!("criterion {}: {} {}", r.id, if r.pass { "PASS" } else { "FAIL" }, r.detail);
    }
    if results.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Randomized verification suites.
//!
//! Trial `i` of a run with master seed `S` uses the seed `splitmix64(S + (i + 1) * 0x9E3779B97F4A7C15)`,
//! which drives a ChaCha8 generator. A trial is a pure function of its seed, so any
//! record can be replayed with [`run_trial`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bracket::{bracket, extreme_powers, predict_state_circle_deltas, predict_twisted_extremes_signed};
use crate::catalog;
use crate::checkerboard::is_alternative;
use crate::determinant::{determinant, predict_twisted_det, smooth_at, xy_values, Smoothing};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::seifert::{is_homogeneous, is_positive};
use crate::tangle::TangleBlock;
use crate::twist::{random_extending_block, replace_crossing, TwistSpec};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Random blocks tried before an oriented trial is excluded.
const ORIENTED_ATTEMPTS: usize = 64;

/// Largest seed diagram drawn by the suites.
pub const MAX_SEED_CROSSINGS: usize = 10;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Adequate seeds stay adequate under extending blocks.
    Adequacy,
    /// Homogeneity is preserved both ways under oriented blocks.
    Homogeneity,
    /// Alternativity is preserved both ways under oriented blocks.
    Alternativity,
    /// Positive seeds stay positive under oriented blocks.
    Positivity,
    /// Determinant of a single rational twist against the closed form.
    DetLemma,
    /// Bracket extremes and state circle counts against the closed form.
    BracketProp,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Adequacy,
        Suite::Homogeneity,
        Suite::Alternativity,
        Suite::Positivity,
        Suite::DetLemma,
        Suite::BracketProp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Adequacy => "adequacy",
            Suite::Homogeneity => "homogeneity",
            Suite::Alternativity => "alternativity",
            Suite::Positivity => "positivity",
            Suite::DetLemma => "det-lemma",
            Suite::BracketProp => "bracket-prop",
        }
    }

    pub fn from_name(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }

    fn oriented(self) -> bool {
        matches!(self, Suite::Homogeneity | Suite::Alternativity | Suite::Positivity)
    }

    fn admits(self, d: &Diagram) -> bool {
        let n = d.crossing_count();
        if n == 0 || n > MAX_SEED_CROSSINGS {
            return false;
        }
        match self {
            Suite::Adequacy | Suite::BracketProp => d.is_adequate(),
            Suite::Positivity => is_positive(d),
            Suite::Homogeneity | Suite::Alternativity | Suite::DetLemma => true,
        }
    }

    /// Catalog diagrams this suite draws seeds from.
    pub fn pool(self) -> Vec<(&'static str, Diagram)> {
        catalog::all().into_iter().filter(|(_, d)| self.admits(d)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Not counted: the trial falls outside the statement being checked.
    Excluded,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub suite: Suite,
    pub trial: u64,
    pub seed: u64,
    pub diagram: String,
    pub pd: String,
    /// 1-based crossing id.
    pub crossing: usize,
    pub block: String,
    pub outcome: Outcome,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub suite: Suite,
    pub master_seed: u64,
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
    pub excluded: u64,
    pub seed_derivation: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub summary: Summary,
    pub records: Vec<TrialRecord>,
}

impl Report {
    pub fn is_success(&self) -> bool {
        self.summary.failed == 0
    }

    /// JSON lines: the summary first, then one record per trial in trial order.
    pub fn to_json_lines(&self) -> String {
        let mut out = serde_json::to_string(&self.summary).expect("serializable");
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        out
    }
}

pub const SEED_DERIVATION: &str = "splitmix64(master + (trial + 1) * 0x9E3779B97F4A7C15)";

/// Run `trials` trials of `suite` in parallel; records come back in trial order.
pub fn run_suite(suite: Suite, master_seed: u64, trials: u64, max_crossings: usize) -> Report {
    let pool = suite.pool();
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut r = trial_with_pool(suite, &pool, trial_seed(master_seed, i), max_crossings);
            r.trial = i;
            r
        })
        .collect();
    let count = |o: Outcome| records.iter().filter(|r| r.outcome == o).count() as u64;
    let summary = Summary {
        suite,
        master_seed,
        trials,
        passed: count(Outcome::Pass),
        failed: count(Outcome::Fail),
        excluded: count(Outcome::Excluded),
        seed_derivation: SEED_DERIVATION,
    };
    Report { summary, records }
}

/// Replay one trial from its seed.
pub fn run_trial(suite: Suite, seed: u64, max_crossings: usize) -> TrialRecord {
    trial_with_pool(suite, &suite.pool(), seed, max_crossings)
}

fn trial_with_pool(suite: Suite, pool: &[(&'static str, Diagram)], seed: u64, max_crossings: usize) -> TrialRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (name, d) = &pool[rng.gen_range(0..pool.len())];
    let c = rng.gen_range(0..d.crossing_count());
    let mut record = TrialRecord {
        suite,
        trial: 0,
        seed,
        diagram: name.to_string(),
        pd: d.to_pd_text(),
        crossing: c + 1,
        block: String::new(),
        outcome: Outcome::Excluded,
        details: Value::Null,
    };
    let result = match suite {
        Suite::DetLemma => det_lemma_trial(d, c, &mut rng, &mut record),
        Suite::BracketProp => bracket_prop_trial(d, c, &mut rng, max_crossings, &mut record),
        _ => class_trial(suite, d, c, &mut rng, max_crossings, &mut record),
    };
    if let Err(e) = result {
        record.outcome = Outcome::Fail;
        record.details = json!({ "error": e.to_string() });
    }
    record
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn class_trial(
    suite: Suite,
    d: &Diagram,
    c: usize,
    rng: &mut ChaCha8Rng,
    max_crossings: usize,
    record: &mut TrialRecord,
) -> Result<()> {
    let sign = d.sign(c);
    let attempts = if suite.oriented() { ORIENTED_ATTEMPTS } else { 1 };
    let mut twisted = None;
    for _ in 0..attempts {
        let block = random_extending_block(rng.gen(), sign, max_crossings);
        record.block = block.to_string();
        let spec = TwistSpec { crossing: c, block, oriented: suite.oriented() };
        match replace_crossing(d, &spec) {
            Ok(t) => {
                twisted = Some(t);
                break;
            }
            Err(Error::NoOrientationExtends(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let Some(t) = twisted else {
        record.details = json!({ "reason": "no orientation-extending block found" });
        return Ok(());
    };
    let (before, after) = match suite {
        Suite::Adequacy => (d.is_adequate(), t.is_adequate()),
        Suite::Homogeneity => (is_homogeneous(d), is_homogeneous(&t)),
        Suite::Alternativity => (is_alternative(d), is_alternative(&t)),
        Suite::Positivity => (is_positive(d), is_positive(&t)),
        _ => unreachable!("not a class suite"),
    };
    record.outcome = pass_if(before == after);
    record.details = json!({ "before": before, "after": after, "crossings": t.crossing_count() });
    Ok(())
}

/// Single leaf with up to three denominators of size at most 4, all of sign `sign`.
fn random_leaf(rng: &mut ChaCha8Rng, sign: i8) -> TangleBlock {
    let m = rng.gen_range(1..=3);
    let d = (0..m).map(|_| rng.gen_range(1..=4) * sign as i64).collect();
    TangleBlock::leaf(d).expect("nonzero denominators")
}

fn det_lemma_trial(d: &Diagram, c: usize, rng: &mut ChaCha8Rng, record: &mut TrialRecord) -> Result<()> {
    let sign = d.sign(c);
    let block = random_leaf(rng, sign);
    record.block = block.to_string();
    let TangleBlock::Leaf(cf) = &block else { unreachable!("leaf") };
    let positive = if sign < 0 { cf.negate() } else { cf.clone() };
    let (beta, alpha) = positive.slope()?;
    let twisted = replace_crossing(d, &TwistSpec { crossing: c, block: block.clone(), oriented: false })?;
    // x and y are taken at a positive crossing; a negative one is read in the mirror.
    let (x, y) = if sign > 0 { xy_values(d, c)? } else { xy_values(&d.mirror(), c)? };
    let xy_zero = x.sign() == num_bigint::Sign::NoSign || y.sign() == num_bigint::Sign::NoSign;
    let sign_xy: i8 = if xy_zero || (x.sign() == y.sign()) { 1 } else { -1 };
    let det0 = determinant(&smooth_at(d, c, Smoothing::A)?);
    let det1 = determinant(&smooth_at(d, c, Smoothing::B)?);
    let predicted = predict_twisted_det(alpha as u64, beta as u64, det0, det1, sign_xy, sign);
    let measured = determinant(&twisted);
    record.outcome = if xy_zero { Outcome::Excluded } else { pass_if(predicted == measured) };
    record.details = json!({
        "alpha": alpha, "beta": beta, "x": x.to_string(), "y": y.to_string(),
        "sign_xy": sign_xy, "det0": det0, "det1": det1,
        "predicted": predicted, "measured": measured, "xy_zero": xy_zero,
    });
    Ok(())
}

fn circle_counts(d: &Diagram) -> Result<(i64, i64)> {
    let a = d.resolve(&d.all_a())?.circle_count as i64;
    let b = d.resolve(&d.all_b())?.circle_count as i64;
    Ok((a, b))
}

fn bracket_prop_trial(
    d: &Diagram,
    c: usize,
    rng: &mut ChaCha8Rng,
    max_crossings: usize,
    record: &mut TrialRecord,
) -> Result<()> {
    let sign = d.sign(c);
    let block = random_extending_block(rng.gen(), sign, max_crossings);
    record.block = block.to_string();
    let shape = block.shape()?;
    let twisted = replace_crossing(d, &TwistSpec { crossing: c, block, oriented: false })?;
    let (max, min) = extreme_powers(&bracket(d)?)?;
    let predicted = predict_twisted_extremes_signed(max, min, &shape, sign);
    let measured = extreme_powers(&bracket(&twisted)?)?;
    // The deltas are stated for a positive crossing; a negative one swaps A and B.
    let (pa, pb) = predict_state_circle_deltas(&shape);
    let predicted_deltas = if sign > 0 { (pa, pb) } else { (pb, pa) };
    let (a0, b0) = circle_counts(d)?;
    let (a1, b1) = circle_counts(&twisted)?;
    let measured_deltas = (a1 - a0, b1 - b0);
    record.outcome = pass_if(predicted == measured && predicted_deltas == measured_deltas);
    record.details = json!({
        "mode": shape.mode, "crossings": twisted.crossing_count(),
        "predicted_extremes": [predicted.0, predicted.1], "measured_extremes": [measured.0, measured.1],
        "predicted_deltas": [predicted_deltas.0, predicted_deltas.1],
        "measured_deltas": [measured_deltas.0, measured_deltas.1],
    });
    Ok(())
}

/// Class checks and invariants of one diagram.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagramReport {
    pub name: Option<String>,
    pub crossings: usize,
    pub components: usize,
    pub writhe: i64,
    pub adequate: bool,
    pub a_adequate: bool,
    pub b_adequate: bool,
    pub homogeneous: bool,
    pub alternative: bool,
    pub positive: bool,
    pub determinant: u64,
    pub bracket: String,
    /// `[max, min]` powers of the bracket.
    pub extremes: [i64; 2],
    pub pd: String,
}

/// Report on `d`; fails with a resource limit past the state-sum cutoff.
pub fn diagram_report(d: &Diagram) -> Result<DiagramReport> {
    let p = bracket(d)?;
    let (max, min) = extreme_powers(&p)?;
    Ok(DiagramReport {
        name: d.name().map(str::to_string),
        crossings: d.crossing_count(),
        components: d.link_components(),
        writhe: d.writhe(),
        adequate: d.is_adequate(),
        a_adequate: d.is_a_adequate(),
        b_adequate: d.is_b_adequate(),
        homogeneous: is_homogeneous(d),
        alternative: is_alternative(d),
        positive: is_positive(d),
        determinant: determinant(d),
        bracket: p.to_string(),
        extremes: [max, min],
        pd: d.to_pd_text(),
    })
}

/// One member of a generated family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyRecord {
    pub k: i64,
    pub block: String,
    #[serde(flatten)]
    pub report: DiagramReport,
}

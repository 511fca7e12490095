use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::eval::evaluate;
use crate::random::random_diagram_for;

use super::{apply, find_all_directions, Match, RuleId};

pub const SOUNDNESS_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub bindings: Vec<usize>,
    pub reverse: bool,
    /// Entrywise max deviation, or infinity when the rewrite itself failed.
    pub max_diff: f64,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SoundnessReport {
    pub rule: RuleId,
    pub trials: usize,
    pub seed: u64,
    pub matches_checked: usize,
    /// Trials whose diagram exceeded the evaluator's limits.
    pub skipped: usize,
    pub failures: Vec<Counterexample>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Applies every match of `rule` on `trials` random diagrams (each with an
/// instance of the rule planted) and compares exact semantics.
pub fn check_rule_sound(rule: RuleId, trials: usize, seed: u64) -> SoundnessReport {
    check_sound_with(rule, trials, seed, &apply)
}

/// As [`check_rule_sound`] with a caller-supplied application procedure,
/// so that deliberately broken rewrites can be shown to be caught.
pub fn check_sound_with(
    rule: RuleId,
    trials: usize,
    seed: u64,
    rewrite: &dyn Fn(&Diagram, &Match) -> Result<Diagram>,
) -> SoundnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SoundnessReport {
        rule,
        trials,
        seed,
        matches_checked: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for trial in 0..trials {
        let d = random_diagram_for(&mut rng, rule);
        let before = match evaluate(&d) {
            Ok(m) => m,
            Err(Error::TooLarge(_)) => {
                report.skipped += 1;
                continue;
            }
            Err(e) => {
                report.failures.push(Counterexample {
                    trial,
                    bindings: Vec::new(),
                    reverse: false,
                    max_diff: f64::INFINITY,
                    note: format!("input not evaluable: {e}"),
                });
                continue;
            }
        };
        for m in find_all_directions(&d, rule) {
            report.matches_checked += 1;
            let fail = |max_diff: f64, note: String| Counterexample {
                trial,
                bindings: m.vertices.clone(),
                reverse: m.reverse,
                max_diff,
                note,
            };
            let after = match rewrite(&d, &m) {
                Ok(a) => a,
                Err(e) => {
                    report.failures.push(fail(f64::INFINITY, format!("rewrite failed: {e}")));
                    continue;
                }
            };
            if !after.is_valid() {
                report.failures.push(fail(f64::INFINITY, format!("invalid result: {:?}", after.validate())));
                continue;
            }
            match evaluate(&after) {
                Ok(a) => {
                    let diff = a.max_diff(&before);
                    if !(diff <= SOUNDNESS_TOL) {
                        report.failures.push(fail(diff, "semantics changed".into()));
                    }
                }
                Err(Error::TooLarge(_)) => report.skipped += 1,
                Err(e) => report.failures.push(fail(f64::INFINITY, format!("result not evaluable: {e}"))),
            }
        }
    }
    report
}

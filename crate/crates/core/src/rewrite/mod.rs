//! Rule catalogue, matching and application.
//!
//! Every rule is exact: the tracked scalar is adjusted so that the
//! evaluated matrix of the diagram does not change at all.

mod rules;
mod simplify;
mod sound;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, V};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use simplify::{pi_potential, simplify, simplify_with, SimplifyOptions, Strategy};
pub use sound::{check_rule_sound, check_sound_with, Counterexample, SoundnessReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    SpiderFuse,
    IdentityRemove,
    SelfLoop,
    HLoop,
    HHCancel,
    ColorChange,
    Hopf,
    Bialgebra,
    StateCopy,
    UnitCopy,
    PiCommute,
    PiThroughH,
}

impl RuleId {
    pub const ALL: [RuleId; 12] = [
        RuleId::SpiderFuse,
        RuleId::IdentityRemove,
        RuleId::SelfLoop,
        RuleId::HLoop,
        RuleId::HHCancel,
        RuleId::ColorChange,
        RuleId::Hopf,
        RuleId::Bialgebra,
        RuleId::StateCopy,
        RuleId::UnitCopy,
        RuleId::PiCommute,
        RuleId::PiThroughH,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::SpiderFuse => "SpiderFuse",
            RuleId::IdentityRemove => "IdentityRemove",
            RuleId::SelfLoop => "SelfLoop",
            RuleId::HLoop => "HLoop",
            RuleId::HHCancel => "HHCancel",
            RuleId::ColorChange => "ColorChange",
            RuleId::Hopf => "Hopf",
            RuleId::Bialgebra => "Bialgebra",
            RuleId::StateCopy => "StateCopy",
            RuleId::UnitCopy => "UnitCopy",
            RuleId::PiCommute => "PiCommute",
            RuleId::PiThroughH => "PiThroughH",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;
    fn from_str(s: &str) -> Result<RuleId> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Validation(format!("unknown rule `{s}`")))
    }
}

/// A place where a rule applies.
///
/// `vertices` holds the rule-specific bindings; their meaning per rule is
/// documented on the matcher in `rules.rs`. A match remembers the revision
/// of the diagram it was found in and is rejected anywhere else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Match {
    pub rule: RuleId,
    pub vertices: Vec<V>,
    /// Only meaningful for `Bialgebra`: apply the law right to left.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reverse: bool,
    #[serde(skip)]
    revision: u64,
}

impl Match {
    fn new(d: &Diagram, rule: RuleId, vertices: Vec<V>) -> Match {
        Match {
            rule,
            vertices,
            reverse: false,
            revision: d.revision(),
        }
    }
}

/// One applied rewrite, as recorded in derivation traces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub rule: RuleId,
    pub bindings: Vec<V>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reverse: bool,
    pub scalar_delta: Scalar,
}

/// All matches of `rule`, sorted by their bindings. For `Bialgebra` these
/// are the left-to-right matches; see [`find_bialgebra_reverse`].
pub fn find_matches(d: &Diagram, rule: RuleId) -> Vec<Match> {
    let mut out: Vec<Match> = rules::find(d, rule)
        .into_iter()
        .map(|vs| Match::new(d, rule, vs))
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

/// Matches of the bialgebra law read right to left (X–Z edge to square).
pub fn find_bialgebra_reverse(d: &Diagram) -> Vec<Match> {
    let mut out: Vec<Match> = rules::find_bialgebra_reverse(d)
        .into_iter()
        .map(|vs| Match {
            reverse: true,
            ..Match::new(d, RuleId::Bialgebra, vs)
        })
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

/// Every match of `rule`, including reverse bialgebra matches.
pub fn find_all_directions(d: &Diagram, rule: RuleId) -> Vec<Match> {
    let mut out = find_matches(d, rule);
    if rule == RuleId::Bialgebra {
        out.extend(find_bialgebra_reverse(d));
    }
    out
}

fn check_fresh(d: &Diagram, m: &Match) -> Result<()> {
    let stale = || Error::StaleMatch(format!("{} at {:?}", m.rule, m.vertices));
    if m.revision != d.revision() {
        return Err(stale());
    }
    if !rules::still_matches(d, m) {
        return Err(stale());
    }
    Ok(())
}

/// Applies `m` in place and returns the recorded step.
pub fn apply_in_place(d: &mut Diagram, m: &Match) -> Result<Step> {
    check_fresh(d, m)?;
    let delta = rules::apply(d, m);
    d.mul_scalar(&delta);
    Ok(Step {
        rule: m.rule,
        bindings: m.vertices.clone(),
        reverse: m.reverse,
        scalar_delta: delta,
    })
}

pub fn apply(d: &Diagram, m: &Match) -> Result<Diagram> {
    let mut out = d.clone();
    apply_in_place(&mut out, m)?;
    Ok(out)
}

/// Applies the first match of `rule`, if any.
pub fn apply_first(d: &mut Diagram, rule: RuleId) -> Result<Option<Step>> {
    match find_matches(d, rule).first() {
        Some(m) => apply_in_place(d, m).map(Some),
        None => Ok(None),
    }
}

/// Applies `rule` until it no longer matches or `max_steps` is reached.
/// `PiCommute` and `PiThroughH` can oscillate, hence the bound.
pub fn apply_exhaustively(d: &mut Diagram, rule: RuleId, max_steps: usize) -> Result<Vec<Step>> {
    let mut steps = Vec::new();
    while steps.len() < max_steps {
        match apply_first(d, rule)? {
            Some(s) => steps.push(s),
            None => break,
        }
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::evaluate;
    use crate::phase::Phase;

    fn wire_with(phases: &[Phase]) -> Diagram {
        let mut d = Diagram::new(1, 1);
        let mut prev = d.inputs()[0];
        for p in phases {
            let z = d.add_z(p.clone());
            d.add_edge(prev, z).unwrap();
            prev = z;
        }
        d.add_edge(prev, d.outputs()[0]).unwrap();
        d
    }

    #[test]
    fn fuse_adds_phases() {
        let d = wire_with(&[Phase::new(1, 4), Phase::new(1, 2)]);
        let s = simplify(&d, Strategy::Basic);
        assert!(s.isomorphic(&wire_with(&[Phase::new(3, 4)])));
    }

    #[test]
    fn identity_wire_has_no_matches() {
        let id = Diagram::identity(1);
        for r in RuleId::ALL {
            assert!(find_all_directions(&id, r).is_empty(), "{r}");
        }
    }

    #[test]
    fn hh_chain_has_one_match() {
        let mut d = Diagram::new(1, 1);
        let h1 = d.add_h();
        let h2 = d.add_h();
        d.add_edge(d.inputs()[0], h1).unwrap();
        d.add_edge(h1, h2).unwrap();
        d.add_edge(h2, d.outputs()[0]).unwrap();
        let ms = find_matches(&d, RuleId::HHCancel);
        assert_eq!(ms.len(), 1);
        let out = apply(&d, &ms[0]).unwrap();
        assert!(out.isomorphic(&Diagram::identity(1)));
    }

    #[test]
    fn stale_match_rejected() {
        let mut d = wire_with(&[Phase::zero()]);
        let m = find_matches(&d, RuleId::IdentityRemove).remove(0);
        d.add_z(Phase::pi());
        assert!(matches!(apply(&d, &m), Err(Error::StaleMatch(_))));
        let fresh = find_matches(&d, RuleId::IdentityRemove).remove(0);
        apply_in_place(&mut d, &fresh).unwrap();
        assert!(matches!(apply(&d, &fresh), Err(Error::StaleMatch(_))));
    }

    #[test]
    fn pi_commute_on_a_wire() {
        // X(π) then Z(α) equals e^{iα} · Z(−α) then X(π).
        let a = Phase::new(1, 3);
        let mut d = Diagram::new(1, 1);
        let x = d.add_x(Phase::pi());
        let z = d.add_z(a.clone());
        d.add_edge(d.inputs()[0], x).unwrap();
        d.add_edge(x, z).unwrap();
        d.add_edge(z, d.outputs()[0]).unwrap();
        let ms = find_matches(&d, RuleId::PiCommute);
        assert_eq!(ms.len(), 1);
        let out = apply(&d, &ms[0]).unwrap();
        assert_eq!(*out.scalar().phase(), a);
        assert_eq!(out.kind(z), Some(&crate::VertexKind::Z(-&a)));
        assert!(evaluate(&out).unwrap().approx_eq(&evaluate(&d).unwrap(), 1e-12));
    }

    #[test]
    fn simplify_is_idempotent_on_normal_forms() {
        let d = wire_with(&[Phase::new(1, 4)]);
        let (s, steps) = simplify_with(&d, &SimplifyOptions::default());
        assert!(steps.is_empty());
        assert!(s.isomorphic(&d));
    }

    #[test]
    fn every_rule_is_sound() {
        for r in RuleId::ALL {
            let rep = check_rule_sound(r, 60, 11);
            assert!(rep.passed(), "{r}: {:?}", rep.failures);
            assert!(rep.matches_checked >= 60, "{r}");
        }
    }

    #[test]
    fn wrong_hopf_scalar_is_caught() {
        let broken = |d: &Diagram, m: &Match| {
            let mut out = apply(d, m)?;
            out.mul_sqrt2_pow(1);
            Ok(out)
        };
        let rep = check_sound_with(RuleId::Hopf, 20, 3, &broken);
        assert!(!rep.passed());
    }
}

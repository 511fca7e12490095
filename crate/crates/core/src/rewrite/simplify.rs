use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;

use super::{apply_in_place, find_matches, RuleId, Step};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Basic,
    /// Basic plus colour changes that strictly reduce the Hadamard count.
    Full,
}

impl std::str::FromStr for Strategy {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> crate::error::Result<Strategy> {
        match s {
            "basic" => Ok(Strategy::Basic),
            "full" => Ok(Strategy::Full),
            _ => Err(crate::error::Error::Validation(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SimplifyOptions {
    pub strategy: Strategy,
    /// Backstop on the number of rewrites.
    pub max_steps: usize,
}

impl Default for SimplifyOptions {
    fn default() -> Self {
        SimplifyOptions {
            strategy: Strategy::Basic,
            max_steps: 10_000,
        }
    }
}

const BASIC: [RuleId; 9] = [
    RuleId::SpiderFuse,
    RuleId::IdentityRemove,
    RuleId::SelfLoop,
    RuleId::HLoop,
    RuleId::HHCancel,
    RuleId::Hopf,
    RuleId::UnitCopy,
    RuleId::StateCopy,
    RuleId::PiCommute,
];

/// Sum over degree-2 π spiders of their distance to the nearest boundary.
/// Spiders in components without boundary count as the vertex total.
pub fn pi_potential(d: &Diagram) -> usize {
    let dist = d.boundary_distances();
    d.vertices()
        .filter(|v| {
            d.kind(*v).and_then(|k| k.phase()).is_some_and(|p| p.is_pi()) && d.degree(*v) == 2 && d.self_loops(*v) == 0
        })
        .map(|v| dist.get(&v).copied().unwrap_or(d.vertex_count()))
        .sum()
}

pub fn simplify(d: &Diagram, strategy: Strategy) -> Diagram {
    simplify_with(
        d,
        &SimplifyOptions {
            strategy,
            ..SimplifyOptions::default()
        },
    )
    .0
}

/// Applies the basic rules in fixed priority, restarting from the top after
/// every rewrite. `PiCommute` is only taken when it lowers
/// [`pi_potential`], and colour changes only when they remove Hadamards.
pub fn simplify_with(d: &Diagram, opts: &SimplifyOptions) -> (Diagram, Vec<Step>) {
    let mut d = d.clone();
    let mut trace = Vec::new();
    'outer: while trace.len() < opts.max_steps {
        for rule in BASIC {
            for m in find_matches(&d, rule) {
                if rule == RuleId::PiCommute {
                    let before = pi_potential(&d);
                    let mut trial = d.clone();
                    let step = apply_in_place(&mut trial, &m).expect("fresh match");
                    if pi_potential(&trial) < before {
                        d = trial;
                        trace.push(step);
                        continue 'outer;
                    }
                    continue;
                }
                trace.push(apply_in_place(&mut d, &m).expect("fresh match"));
                continue 'outer;
            }
        }
        if opts.strategy == Strategy::Full {
            // The matcher only accepts spiders with more Hadamard legs than
            // plain legs, so every colour change lowers the Hadamard count.
            if let Some(m) = find_matches(&d, RuleId::ColorChange).first() {
                trace.push(apply_in_place(&mut d, m).expect("fresh match"));
                continue;
            }
        }
        break;
    }
    (d, trace)
}

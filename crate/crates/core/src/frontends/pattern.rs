use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::diagram::{Diagram, V};
use crate::error::{Error, Result};
use crate::phase::Phase;

use super::{arity, commands, parse_index, parse_phase, syntax, Token};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// `N q`: fresh qubit in `|0⟩ + |1⟩`.
    Prepare(usize),
    /// `E a b`: controlled-Z.
    Entangle(usize, usize),
    /// `M q α`: post-selected onto the copoint `⟨0| + e^{iα}⟨1|`.
    Measure(usize, Phase),
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Prepare(q) => write!(f, "N {q}"),
            Command::Entangle(a, b) => write!(f, "E {a} {b}"),
            Command::Measure(q, p) => write!(f, "M {q} {p}"),
        }
    }
}

/// A one-way computation with every measurement post-selected.
/// Commands run left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pattern {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub commands: Vec<Command>,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in &self.inputs {
            writeln!(f, "in {q}")?;
        }
        for q in &self.outputs {
            writeln!(f, "out {q}")?;
        }
        for c in &self.commands {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Pattern> {
        parse_pattern(s)
    }
}

impl Pattern {
    pub fn validate(&self) -> Result<()> {
        self.check(|_| None)
    }

    /// `pos(i)` gives the source position of command `i` for messages.
    fn check(&self, pos: impl Fn(usize) -> Option<(usize, usize)>) -> Result<()> {
        let err = |i: Option<usize>, msg: String| {
            let at = i.and_then(&pos).map(|(l, c)| format!("line {l}, col {c}: ")).unwrap_or_default();
            Error::Validation(format!("{at}{msg}"))
        };
        let ins: BTreeSet<usize> = self.inputs.iter().copied().collect();
        let outs: BTreeSet<usize> = self.outputs.iter().copied().collect();
        if ins.len() != self.inputs.len() {
            return Err(err(None, "duplicate input qubit".into()));
        }
        if outs.len() != self.outputs.len() {
            return Err(err(None, "duplicate output qubit".into()));
        }
        let mut live = ins.clone();
        let mut measured = BTreeSet::new();
        let mut prepared = BTreeSet::new();
        for (i, c) in self.commands.iter().enumerate() {
            let usable = |q: &usize, live: &BTreeSet<usize>| -> Result<()> {
                if live.contains(q) {
                    Ok(())
                } else if measured.contains(q) {
                    Err(err(Some(i), format!("qubit {q} used after measurement")))
                } else {
                    Err(err(Some(i), format!("qubit {q} is neither an input nor prepared")))
                }
            };
            match c {
                Command::Prepare(q) => {
                    if ins.contains(q) || prepared.contains(q) {
                        return Err(err(Some(i), format!("qubit {q} already exists")));
                    }
                    prepared.insert(*q);
                    live.insert(*q);
                }
                Command::Entangle(a, b) => {
                    if a == b {
                        return Err(err(Some(i), "E needs two distinct qubits".into()));
                    }
                    usable(a, &live)?;
                    usable(b, &live)?;
                }
                Command::Measure(q, _) => {
                    if outs.contains(q) {
                        return Err(err(Some(i), format!("output qubit {q} cannot be measured")));
                    }
                    if measured.contains(q) {
                        return Err(err(Some(i), format!("qubit {q} measured twice")));
                    }
                    usable(q, &live)?;
                    live.remove(q);
                    measured.insert(*q);
                }
            }
        }
        if let Some(q) = live.iter().find(|q| !outs.contains(q)) {
            return Err(err(None, format!("non-output qubit {q} is never measured")));
        }
        if let Some(q) = outs.iter().find(|q| !live.contains(q)) {
            return Err(err(None, format!("output qubit {q} is never created")));
        }
        Ok(())
    }
}

/// Parses `in q`, `out q`, `N q`, `E a b`, `M q phase` commands separated by
/// newlines or semicolons.
pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let mut p = Pattern::default();
    let mut positions = Vec::new();
    for cmd in commands(text, true) {
        let head: &Token = &cmd[0];
        match head.text {
            "in" | "out" => {
                arity(&cmd, 1)?;
                let q = parse_index(&cmd[1])?;
                if head.text == "in" {
                    p.inputs.push(q);
                } else {
                    p.outputs.push(q);
                }
            }
            "N" | "n" => {
                arity(&cmd, 1)?;
                p.commands.push(Command::Prepare(parse_index(&cmd[1])?));
                positions.push((head.line, head.col));
            }
            "E" | "e" => {
                arity(&cmd, 2)?;
                p.commands.push(Command::Entangle(parse_index(&cmd[1])?, parse_index(&cmd[2])?));
                positions.push((head.line, head.col));
            }
            "M" | "m" => {
                arity(&cmd, 2)?;
                p.commands.push(Command::Measure(parse_index(&cmd[1])?, parse_phase(&cmd[2])?));
                positions.push((head.line, head.col));
            }
            other => return Err(syntax(head, format!("unknown command `{other}`"))),
        }
    }
    p.check(|i| positions.get(i).copied())?;
    Ok(p)
}

/// Compiles a valid pattern. `N` is a phase-0 Z state, `E` a Z–H–Z edge
/// (scaled to the exact controlled-Z) and `M q α` the Z(α) effect.
/// Panics on an invalid pattern.
pub fn compile_pattern(p: &Pattern) -> Diagram {
    p.validate().expect("valid pattern");
    let mut d = Diagram::new(p.inputs.len(), p.outputs.len());
    let mut front: BTreeMap<usize, V> = p.inputs.iter().copied().zip(d.inputs().to_vec()).collect();
    let extend = |d: &mut Diagram, front: &mut BTreeMap<usize, V>, q: usize| {
        let z = d.add_z(Phase::zero());
        d.add_edge(front[&q], z).unwrap();
        front.insert(q, z);
        z
    };
    for c in &p.commands {
        match c {
            Command::Prepare(q) => {
                let z = d.add_z(Phase::zero());
                front.insert(*q, z);
            }
            Command::Entangle(a, b) => {
                let za = extend(&mut d, &mut front, *a);
                let zb = extend(&mut d, &mut front, *b);
                let h = d.add_h();
                d.add_edge(za, h).unwrap();
                d.add_edge(h, zb).unwrap();
                d.mul_sqrt2_pow(1);
            }
            Command::Measure(q, a) => {
                let m = d.add_z(a.clone());
                d.add_edge(front[q], m).unwrap();
                front.remove(q);
            }
        }
    }
    let outs = d.outputs().to_vec();
    for (q, o) in p.outputs.iter().zip(outs) {
        d.add_edge(front[q], o).unwrap();
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    const CNOT: &str = "in 1; in 2; out 1; out 4; N 3; N 4; E 1 3; E 2 3; E 3 4; M 2 0; M 3 0";

    #[test]
    fn parse_cnot_pattern() {
        let p = parse_pattern(CNOT).unwrap();
        assert_eq!(p.inputs, vec![1, 2]);
        assert_eq!(p.outputs, vec![1, 4]);
        assert_eq!(p.commands.len(), 7);
        assert_eq!(parse_pattern(&p.to_string()).unwrap(), p);
        assert!(compile_pattern(&p).is_valid());
    }

    #[test]
    fn validation_errors() {
        let dup = "in 1; out 2; N 2; E 1 2; M 1 0; M 1 0";
        let e = parse_pattern(dup).unwrap_err();
        assert!(matches!(&e, Error::Validation(m) if m.contains("line 1")), "{e:?}");
        assert!(parse_pattern("in 1; out 1; M 1 0").is_err());
        assert!(parse_pattern("in 1; out 2; N 2; E 1 2").is_err());
        assert!(parse_pattern("out 2; E 1 2; N 2").is_err());
        assert!(parse_pattern("in 1; out 1; N 1").is_err());
        assert!(matches!(parse_pattern("in 1; out 1; X 1"), Err(Error::Syntax { line: 1, col: 14, .. })));
    }

    #[test]
    fn empty_pattern_is_identity() {
        let p = parse_pattern("in 0\nout 0").unwrap();
        assert!(compile_pattern(&p).isomorphic(&Diagram::identity(1)));
    }
}

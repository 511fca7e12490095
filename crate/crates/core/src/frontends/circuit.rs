use std::fmt;
use std::str::FromStr;

use crate::diagram::{Diagram, V};
use crate::error::{Error, Result};
use crate::phase::Phase;

use super::{arity, commands, parse_index, parse_phase, syntax};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    Rz(usize, Phase),
    Rx(usize, Phase),
    Cnot(usize, usize),
    Cz(usize, usize),
    /// `diag(1, 1, 1, e^{iα})` on the two qubits.
    CzPhase(usize, usize, Phase),
    Swap(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::Rz(q, _) | Gate::Rx(q, _) => vec![*q],
            Gate::Cnot(a, b) | Gate::Cz(a, b) | Gate::CzPhase(a, b, _) | Gate::Swap(a, b) => vec![*a, *b],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "h {q}"),
            Gate::Rz(q, p) => write!(f, "rz {q} {p}"),
            Gate::Rx(q, p) => write!(f, "rx {q} {p}"),
            Gate::Cnot(c, t) => write!(f, "cnot {c} {t}"),
            Gate::Cz(a, b) => write!(f, "cz {a} {b}"),
            Gate::CzPhase(a, b, p) => write!(f, "czp {a} {b} {p}"),
            Gate::Swap(a, b) => write!(f, "swap {a} {b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, g: Gate) -> &mut Self {
        self.gates.push(g);
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gates.iter().enumerate() {
            check_gate(self.n_qubits, g).map_err(|m| Error::Validation(format!("gate {} (`{g}`): {m}", i + 1)))?;
        }
        Ok(())
    }

    /// `self` followed by `other`; both must act on the same register.
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::ArityMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        let mut c = self.clone();
        c.gates.extend(other.gates.iter().cloned());
        Ok(c)
    }
}

fn check_gate(n: usize, g: &Gate) -> std::result::Result<(), String> {
    let qs = g.qubits();
    if let Some(q) = qs.iter().find(|q| **q >= n) {
        return Err(format!("qubit {q} out of range for {n} qubits"));
    }
    if qs.len() == 2 && qs[0] == qs[1] {
        return Err("two-qubit gate needs distinct qubits".into());
    }
    if let Gate::CzPhase(_, _, p) = g {
        if p.half().is_none() {
            return Err(format!("phase `{p}` has an odd symbol coefficient and cannot be split"));
        }
    }
    Ok(())
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n_qubits)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Circuit> {
        parse_circuit(s)
    }
}

/// Parses the line-based circuit format: a `qubits N` header, then one gate
/// per line. `#` starts a comment.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let cmds = commands(text, false);
    let Some(header) = cmds.first() else {
        return Err(Error::Syntax {
            line: 1,
            col: 1,
            msg: "empty circuit, expected `qubits N`".into(),
        });
    };
    if header[0].text != "qubits" {
        return Err(syntax(&header[0], format!("expected `qubits N`, found `{}`", header[0].text)));
    }
    arity(header, 1)?;
    let n = parse_index(&header[1])?;
    let mut c = Circuit::new(n);
    for cmd in &cmds[1..] {
        let head = &cmd[0];
        let g = match head.text.to_ascii_lowercase().as_str() {
            "h" => {
                arity(cmd, 1)?;
                Gate::H(parse_index(&cmd[1])?)
            }
            "rz" | "rx" => {
                arity(cmd, 2)?;
                let (q, p) = (parse_index(&cmd[1])?, parse_phase(&cmd[2])?);
                if head.text.eq_ignore_ascii_case("rz") {
                    Gate::Rz(q, p)
                } else {
                    Gate::Rx(q, p)
                }
            }
            "cnot" | "cz" | "swap" => {
                arity(cmd, 2)?;
                let (a, b) = (parse_index(&cmd[1])?, parse_index(&cmd[2])?);
                match head.text.to_ascii_lowercase().as_str() {
                    "cnot" => Gate::Cnot(a, b),
                    "cz" => Gate::Cz(a, b),
                    _ => Gate::Swap(a, b),
                }
            }
            "czp" => {
                arity(cmd, 3)?;
                Gate::CzPhase(parse_index(&cmd[1])?, parse_index(&cmd[2])?, parse_phase(&cmd[3])?)
            }
            other => return Err(syntax(head, format!("unknown gate `{other}`"))),
        };
        check_gate(n, &g).map_err(|m| Error::Validation(format!("line {}: {m}", head.line)))?;
        c.gates.push(g);
    }
    Ok(c)
}

struct Wires {
    d: Diagram,
    front: Vec<V>,
}

impl Wires {
    fn append(&mut self, q: usize, v: V) {
        self.d.add_edge(self.front[q], v).expect("frontier exists");
        self.front[q] = v;
    }
}

/// Compiles a circuit to a diagram whose matrix is the ordered product of
/// the gate matrices, scalar included. Panics on an invalid circuit.
pub fn compile_circuit(c: &Circuit) -> Diagram {
    c.validate().expect("valid circuit");
    let d = Diagram::new(c.n_qubits, c.n_qubits);
    let front = d.inputs().to_vec();
    let mut w = Wires { d, front };
    for g in &c.gates {
        match g {
            Gate::H(q) => {
                let h = w.d.add_h();
                w.append(*q, h);
            }
            Gate::Rz(q, p) => {
                let z = w.d.add_z(p.clone());
                w.append(*q, z);
            }
            Gate::Rx(q, p) => {
                let x = w.d.add_x(p.clone());
                w.append(*q, x);
            }
            Gate::Cnot(ctl, tgt) => {
                let z = w.d.add_z(Phase::zero());
                let x = w.d.add_x(Phase::zero());
                w.append(*ctl, z);
                w.append(*tgt, x);
                w.d.add_edge(z, x).unwrap();
                w.d.mul_sqrt2_pow(1);
            }
            Gate::Cz(a, b) => {
                // A CNOT with the target conjugated by Hadamards.
                let z = w.d.add_z(Phase::zero());
                let x = w.d.add_x(Phase::zero());
                let (h1, h2) = (w.d.add_h(), w.d.add_h());
                w.append(*a, z);
                w.append(*b, h1);
                w.append(*b, x);
                w.append(*b, h2);
                w.d.add_edge(z, x).unwrap();
                w.d.mul_sqrt2_pow(1);
            }
            Gate::CzPhase(a, b, p) => {
                // e^{iα ab} = e^{iα a/2} e^{iα b/2} e^{-iα (a⊕b)/2}: two phase
                // spiders plus a parity gadget carrying the last factor.
                let half = p.half().expect("validated");
                let za = w.d.add_z(half.clone());
                let zb = w.d.add_z(half.clone());
                w.append(*a, za);
                w.append(*b, zb);
                let parity = w.d.add_x(Phase::zero());
                let leaf = w.d.add_z(-&half);
                w.d.add_edge(za, parity).unwrap();
                w.d.add_edge(zb, parity).unwrap();
                w.d.add_edge(parity, leaf).unwrap();
                w.d.mul_sqrt2_pow(1);
            }
            Gate::Swap(a, b) => w.front.swap(*a, *b),
        }
    }
    let outs = w.d.outputs().to_vec();
    for (q, o) in outs.into_iter().enumerate() {
        w.d.add_edge(w.front[q], o).unwrap();
    }
    w.d
}

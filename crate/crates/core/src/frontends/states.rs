use std::collections::BTreeSet;

use crate::diagram::{Color, Diagram};
use crate::error::{Error, Result};
use crate::phase::Phase;

use super::{compile_circuit, Circuit, Gate};

/// Graph state on `n` vertices: a Z spider with one output per vertex and a
/// Hadamard on each graph edge. The scalar makes it exactly
/// `∏ CZ (|0⟩+|1⟩)^{⊗n}`.
pub fn graph_state(n: usize, edges: &[(usize, usize)]) -> Result<Diagram> {
    let mut seen = BTreeSet::new();
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return Err(Error::Validation(format!("bad graph edge ({a}, {b}) on {n} vertices")));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::Validation(format!("repeated graph edge ({a}, {b})")));
        }
    }
    let mut d = Diagram::new(0, n);
    let zs: Vec<_> = (0..n).map(|_| d.add_z(Phase::zero())).collect();
    for (q, z) in zs.iter().enumerate() {
        d.add_edge(*z, d.outputs()[q]).unwrap();
    }
    for &(a, b) in edges {
        let h = d.add_h();
        d.add_edge(zs[a], h).unwrap();
        d.add_edge(h, zs[b]).unwrap();
    }
    d.mul_sqrt2_pow(edges.len() as i32);
    Ok(d)
}

/// `|0…0⟩ + |1…1⟩` as one Z spider.
pub fn ghz_state(n: usize) -> Diagram {
    Diagram::spider(Color::Z, Phase::zero(), 0, n)
}

fn plus_states(n: usize) -> Diagram {
    (0..n).fold(Diagram::new(0, 0), |acc, _| {
        acc.compose_par(&Diagram::spider(Color::Z, Phase::zero(), 0, 1))
    })
}

/// Linear cluster built as a circuit: `|0⟩+|1⟩` states then a chain of CZ gates.
pub fn cluster_by_cz(n: usize) -> Diagram {
    let mut c = Circuit::new(n);
    for k in 0..n.saturating_sub(1) {
        c.push(Gate::Cz(k, k + 1));
    }
    plus_states(n).compose_seq(&compile_circuit(&c)).expect("arity")
}

/// Linear cluster built by fusing two-qubit graph states: the shared
/// qubits of neighbouring pieces are merged by Z spiders.
pub fn cluster_by_fusion(n: usize) -> Diagram {
    if n < 2 {
        return plus_states(n);
    }
    let piece = graph_state(2, &[(0, 1)]).expect("edge");
    let pieces = (1..n - 1).fold(piece.clone(), |acc, _| acc.compose_par(&piece));
    let mut merge = Diagram::identity(1);
    for _ in 1..n - 1 {
        merge = merge.compose_par(&Diagram::spider(Color::Z, Phase::zero(), 2, 1));
    }
    merge = merge.compose_par(&Diagram::identity(1));
    pieces.compose_seq(&merge).expect("arity")
}

fn wire_with(spiders: &[(Color, Phase)]) -> Diagram {
    spiders.iter().fold(Diagram::identity(1), |acc, (c, p)| {
        acc.compose_seq(&Diagram::spider(*c, p.clone(), 1, 1)).expect("arity")
    })
}

/// Branch `i` of post-selected teleportation, with its Pauli correction.
///
/// The input qubit and one half of `|00⟩+|11⟩` are projected onto Bell
/// state `i` (in order `|00⟩+|11⟩`, `|00⟩−|11⟩`, `|01⟩+|10⟩`, `|01⟩−|10⟩`);
/// the other half is the output. Corrections are I, Z, X and Z∘X.
pub fn teleport_branch(i: usize) -> Result<(Diagram, Diagram)> {
    let (z, x) = ((Color::Z, Phase::pi()), (Color::X, Phase::pi()));
    // The Bell effect is ⟨00|+⟨11| after a Pauli on the input leg.
    let (decor, correction): (Vec<(Color, Phase)>, Vec<(Color, Phase)>) = match i {
        0 => (vec![], vec![]),
        1 => (vec![z.clone()], vec![z]),
        2 => (vec![x.clone()], vec![x]),
        3 => (vec![z.clone(), x.clone()], vec![x, z]),
        _ => return Err(Error::Validation(format!("teleport branch {i} out of range 0..3"))),
    };
    let bell = Diagram::identity(1).compose_par(&Diagram::spider(Color::Z, Phase::zero(), 0, 2));
    let project = wire_with(&decor)
        .compose_par(&Diagram::identity(1))
        .compose_seq(&Diagram::spider(Color::Z, Phase::zero(), 2, 0))?
        .compose_par(&Diagram::identity(1));
    let branch = bell.compose_seq(&project)?;
    Ok((branch, wire_with(&correction)))
}

/// `δ_Z ∘ Λ(α) ∘ δ_Z†` on two qubits; for `α = 0` the projector onto
/// `span{|00⟩, |11⟩}`.
pub fn transfer_projector(alpha: &Phase) -> Diagram {
    Diagram::spider(Color::Z, alpha.clone(), 2, 1)
        .compose_seq(&Diagram::spider(Color::Z, Phase::zero(), 1, 2))
        .expect("arity")
}

/// Moves a qubit onto a fresh `|0⟩+|1⟩` ancilla by the projector above and
/// a final `⟨0|+⟨1|` on the original qubit.
pub fn transfer_protocol(alpha: &Phase) -> Diagram {
    let prep = Diagram::identity(1).compose_par(&Diagram::spider(Color::Z, Phase::zero(), 0, 1));
    let unprep = Diagram::spider(Color::Z, Phase::zero(), 1, 0).compose_par(&Diagram::identity(1));
    prep.compose_seq(&transfer_projector(alpha))
        .and_then(|d| d.compose_seq(&unprep))
        .expect("arity")
}

//! Tensor-network semantics of qubit diagrams.
//!
//! Every edge instance is a dimension-2 bond. Spiders and Hadamards become
//! tensors over their edge ends, each boundary becomes an identity tensor
//! linking its edge to an open index. Open indices are ordered outputs then
//! inputs, qubit 0 most significant, so the result reads as a
//! `2^outputs × 2^inputs` matrix.

use std::collections::BTreeMap;

use crate::diagram::{Color, Diagram, VertexKind};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::phase::Phase;

pub const MAX_OPEN_WIRES: usize = 14;
pub const MAX_VERTICES: usize = 64;
/// Largest rank an intermediate tensor may reach (2^24 entries).
pub const MAX_RANK: usize = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    /// Repeatedly contract the pair of tensors whose result has least rank.
    #[default]
    Greedy,
    /// Absorb tensors one by one in vertex-id order.
    Sequential,
}

type Label = usize;

/// Dense tensor; label at position `p` is bit `n-1-p` of the flat index.
#[derive(Clone, Debug)]
struct Tensor {
    labels: Vec<Label>,
    data: Vec<C64>,
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

impl Tensor {
    fn scalar(z: C64) -> Tensor {
        Tensor {
            labels: Vec::new(),
            data: vec![z],
        }
    }

    fn rank(&self) -> usize {
        self.labels.len()
    }

    fn bit(&self, idx: usize, pos: usize) -> usize {
        (idx >> (self.rank() - 1 - pos)) & 1
    }

    /// Sums over the diagonal of two positions carrying the same label.
    fn trace(&self, p: usize, q: usize) -> Tensor {
        let keep: Vec<usize> = (0..self.rank()).filter(|i| *i != p && *i != q).collect();
        let mut out = vec![C64::new(0.0, 0.0); 1 << keep.len()];
        for (idx, z) in self.data.iter().enumerate() {
            if self.bit(idx, p) != self.bit(idx, q) {
                continue;
            }
            let mut o = 0;
            for &k in &keep {
                o = (o << 1) | self.bit(idx, k);
            }
            out[o] += z;
        }
        Tensor {
            labels: keep.iter().map(|k| self.labels[*k]).collect(),
            data: out,
        }
    }

    fn trace_repeated(mut self) -> Tensor {
        loop {
            let mut found = None;
            'outer: for p in 0..self.rank() {
                for q in p + 1..self.rank() {
                    if self.labels[p] == self.labels[q] {
                        found = Some((p, q));
                        break 'outer;
                    }
                }
            }
            match found {
                Some((p, q)) => self = self.trace(p, q),
                None => return self,
            }
        }
    }

    fn result_rank(&self, other: &Tensor) -> usize {
        let shared = self.labels.iter().filter(|l| other.labels.contains(l)).count();
        self.rank() + other.rank() - 2 * shared
    }

    /// Contracts all shared labels; free labels of `self` come first.
    fn contract(&self, other: &Tensor) -> Tensor {
        let shared: Vec<Label> = self.labels.iter().copied().filter(|l| other.labels.contains(l)).collect();
        let a_free: Vec<usize> = (0..self.rank()).filter(|p| !shared.contains(&self.labels[*p])).collect();
        let b_free: Vec<usize> = (0..other.rank()).filter(|p| !shared.contains(&other.labels[*p])).collect();
        let a_sh: Vec<usize> = shared
            .iter()
            .map(|l| self.labels.iter().position(|x| x == l).unwrap())
            .collect();
        let b_sh: Vec<usize> = shared
            .iter()
            .map(|l| other.labels.iter().position(|x| x == l).unwrap())
            .collect();

        let gather = |t: &Tensor, idx: usize, pos: &[usize]| pos.iter().fold(0, |acc, p| (acc << 1) | t.bit(idx, *p));

        let mut by_shared: Vec<Vec<(usize, C64)>> = vec![Vec::new(); 1 << shared.len()];
        for (ib, z) in other.data.iter().enumerate() {
            if z.re != 0.0 || z.im != 0.0 {
                by_shared[gather(other, ib, &b_sh)].push((gather(other, ib, &b_free), *z));
            }
        }
        let nb = b_free.len();
        let mut out = vec![C64::new(0.0, 0.0); 1 << (a_free.len() + nb)];
        for (ia, za) in self.data.iter().enumerate() {
            if za.re == 0.0 && za.im == 0.0 {
                continue;
            }
            let base = gather(self, ia, &a_free) << nb;
            for (fb, zb) in &by_shared[gather(self, ia, &a_sh)] {
                out[base | fb] += za * zb;
            }
        }
        let labels = a_free
            .iter()
            .map(|p| self.labels[*p])
            .chain(b_free.iter().map(|p| other.labels[*p]))
            .collect();
        Tensor { labels, data: out }
    }

    fn permute_to(&self, order: &[Label]) -> Tensor {
        let pos: Vec<usize> = order
            .iter()
            .map(|l| self.labels.iter().position(|x| x == l).expect("label present"))
            .collect();
        let mut out = vec![C64::new(0.0, 0.0); self.data.len()];
        for (idx, z) in self.data.iter().enumerate() {
            let o = pos.iter().fold(0, |acc, p| (acc << 1) | self.bit(idx, *p));
            out[o] = *z;
        }
        Tensor {
            labels: order.to_vec(),
            data: out,
        }
    }
}

/// Flat spider tensor on `n` legs.
fn spider_tensor(color: Color, n: usize, phase: &Phase) -> Result<Vec<C64>> {
    let e = C64::from_polar(1.0, phase.try_radians()?);
    let size = 1usize << n;
    let mut data = vec![C64::new(0.0, 0.0); size];
    match color {
        Color::Z => {
            data[0] += one();
            data[size - 1] += e;
        }
        Color::X => {
            let norm = 0.5f64.sqrt().powi(n as i32);
            for (idx, z) in data.iter_mut().enumerate() {
                let sign = if idx.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                *z = (one() + e * sign) * norm;
            }
        }
    }
    Ok(data)
}

/// Matrix of a single spider: rows index the `n_out` outputs, columns the
/// `n_in` inputs.
pub fn spider_matrix(color: Color, n_in: usize, n_out: usize, phase: &Phase) -> Result<ComplexMatrix> {
    let data = spider_tensor(color, n_in + n_out, phase)?;
    Ok(ComplexMatrix::from_vec(1 << n_out, 1 << n_in, data))
}

pub fn hadamard_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, -1.0]).scale_real(0.5f64.sqrt())
}

pub fn evaluate(d: &Diagram) -> Result<ComplexMatrix> {
    evaluate_with(d, Schedule::Greedy)
}

pub fn evaluate_with(d: &Diagram, schedule: Schedule) -> Result<ComplexMatrix> {
    let n_open = d.inputs().len() + d.outputs().len();
    if n_open > MAX_OPEN_WIRES {
        return Err(Error::TooLarge(format!("{n_open} open wires (limit {MAX_OPEN_WIRES})")));
    }
    if d.vertex_count() > MAX_VERTICES {
        return Err(Error::TooLarge(format!(
            "{} vertices (limit {MAX_VERTICES})",
            d.vertex_count()
        )));
    }
    d.ensure_valid()?;
    let scalar = d.scalar().to_complex()?;

    // One label per edge instance, then one per open wire.
    let mut ends: BTreeMap<usize, Vec<Label>> = BTreeMap::new();
    let mut next: Label = 0;
    for (a, b, m) in d.edges() {
        for _ in 0..m {
            ends.entry(a).or_default().push(next);
            ends.entry(b).or_default().push(next);
            next += 1;
        }
    }
    let mut open = BTreeMap::new();
    for v in d.outputs().iter().chain(d.inputs()) {
        open.insert(*v, next);
        next += 1;
    }
    let open_order: Vec<Label> = d.outputs().iter().chain(d.inputs()).map(|v| open[v]).collect();

    let mut tensors = Vec::new();
    for v in d.vertices() {
        let labels = ends.remove(&v).unwrap_or_default();
        let t = match d.kind(v).expect("vertex exists") {
            VertexKind::Z(p) => Tensor {
                data: spider_tensor(Color::Z, labels.len(), p)?,
                labels,
            },
            VertexKind::X(p) => Tensor {
                data: spider_tensor(Color::X, labels.len(), p)?,
                labels,
            },
            VertexKind::H => Tensor {
                data: hadamard_matrix().data().to_vec(),
                labels,
            },
            VertexKind::Boundary => Tensor {
                labels: vec![labels[0], open[&v]],
                data: vec![one(), C64::new(0.0, 0.0), C64::new(0.0, 0.0), one()],
            },
        };
        tensors.push(t.trace_repeated());
    }

    let result = match schedule {
        Schedule::Greedy => contract_greedy(tensors)?,
        Schedule::Sequential => contract_sequential(tensors)?,
    };
    let result = result.permute_to(&open_order);
    let m = ComplexMatrix::from_vec(1 << d.outputs().len(), 1 << d.inputs().len(), result.data);
    Ok(m.scale(scalar))
}

fn check_rank(r: usize) -> Result<()> {
    if r > MAX_RANK {
        Err(Error::TooLarge(format!("intermediate tensor of rank {r} (limit {MAX_RANK})")))
    } else {
        Ok(())
    }
}

fn contract_greedy(mut ts: Vec<Tensor>) -> Result<Tensor> {
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                if !ts[i].labels.iter().any(|l| ts[j].labels.contains(l)) {
                    continue;
                }
                let r = ts[i].result_rank(&ts[j]);
                if best.is_none_or(|b| r < b.2) {
                    best = Some((i, j, r));
                }
            }
        }
        let Some((i, j, r)) = best else { break };
        check_rank(r)?;
        let b = ts.remove(j);
        let a = ts.remove(i);
        ts.push(a.contract(&b));
    }
    // Remaining tensors share no labels: take the outer product, smallest first.
    ts.sort_by_key(Tensor::rank);
    let mut acc = Tensor::scalar(one());
    for t in ts {
        check_rank(acc.rank() + t.rank())?;
        acc = acc.contract(&t);
    }
    Ok(acc)
}

fn contract_sequential(ts: Vec<Tensor>) -> Result<Tensor> {
    let mut acc = Tensor::scalar(one());
    for t in ts {
        check_rank(acc.result_rank(&t))?;
        acc = acc.contract(&t);
    }
    Ok(acc)
}

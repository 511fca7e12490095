//! Exact structural isomorphism of diagrams.
//!
//! Boundaries are pinned by position, so the search only has to place
//! interior vertices. Vertices are visited breadth-first from the
//! boundaries and candidates are drawn from the image of an already
//! placed neighbour, which keeps the backtracking shallow on connected
//! diagrams.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::diagram::{Diagram, VertexKind, V};

type Signature = (VertexKind, usize, usize);

fn signature(d: &Diagram, v: V) -> Signature {
    (d.kind(v).cloned().expect("vertex exists"), d.degree(v), d.self_loops(v))
}

struct Search<'a> {
    a: &'a Diagram,
    b: &'a Diagram,
    order: Vec<V>,
    fwd: BTreeMap<V, V>,
    used: BTreeSet<V>,
}

impl Search<'_> {
    fn consistent(&self, u: V, w: V) -> bool {
        if signature(self.a, u) != signature(self.b, w) {
            return false;
        }
        let mut mapped_a = 0;
        for (n, m) in self.a.neighbors(u) {
            if let Some(&fn_) = self.fwd.get(&n) {
                if self.b.multiplicity(w, fn_) != m {
                    return false;
                }
                mapped_a += m;
            }
        }
        let mapped_b: usize = self
            .b
            .neighbors(w)
            .into_iter()
            .filter(|(n, _)| self.used.contains(n))
            .map(|(_, m)| m)
            .sum();
        mapped_a == mapped_b
    }

    fn candidates(&self, u: V) -> Vec<V> {
        for (n, _) in self.a.neighbors(u) {
            if let Some(&fn_) = self.fwd.get(&n) {
                return self
                    .b
                    .neighbors(fn_)
                    .into_iter()
                    .map(|(w, _)| w)
                    .filter(|w| !self.used.contains(w))
                    .collect();
            }
        }
        self.b.vertices().filter(|w| !self.used.contains(w)).collect()
    }

    fn run(&mut self, idx: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let u = self.order[idx];
        if self.fwd.contains_key(&u) {
            return self.run(idx + 1);
        }
        for w in self.candidates(u) {
            if self.consistent(u, w) {
                self.fwd.insert(u, w);
                self.used.insert(w);
                if self.run(idx + 1) {
                    return true;
                }
                self.fwd.remove(&u);
                self.used.remove(&w);
            }
        }
        false
    }
}

fn bfs_order(d: &Diagram) -> Vec<V> {
    let mut seen = BTreeSet::new();
    let mut order = Vec::new();
    let roots: Vec<V> = d
        .inputs()
        .iter()
        .chain(d.outputs())
        .copied()
        .chain(d.vertices())
        .collect();
    for r in roots {
        if !seen.insert(r) {
            continue;
        }
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for (w, _) in d.neighbors(u) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

pub(crate) fn isomorphic(a: &Diagram, b: &Diagram, compare_scalar: bool) -> bool {
    if compare_scalar && a.scalar() != b.scalar() {
        return false;
    }
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.inputs().len() != b.inputs().len()
        || a.outputs().len() != b.outputs().len()
    {
        return false;
    }
    let mut sa: Vec<Signature> = a.vertices().map(|v| signature(a, v)).collect();
    let mut sb: Vec<Signature> = b.vertices().map(|v| signature(b, v)).collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }

    let mut search = Search {
        a,
        b,
        order: bfs_order(a),
        fwd: BTreeMap::new(),
        used: BTreeSet::new(),
    };
    let pinned: Vec<(V, V)> = a
        .inputs()
        .iter()
        .zip(b.inputs())
        .chain(a.outputs().iter().zip(b.outputs()))
        .map(|(x, y)| (*x, *y))
        .collect();
    for (x, y) in pinned {
        if search.fwd.contains_key(&x) || search.used.contains(&y) || !search.consistent(x, y) {
            return false;
        }
        search.fwd.insert(x, y);
        search.used.insert(y);
    }
    search.run(0)
}

//! Open multigraph representation of spider diagrams.
//!
//! Vertices are Z/X spiders, Hadamard boxes and boundaries. Edges are
//! unordered and may be parallel or self-loops; multiplicity matters. The
//! ordered `inputs` and `outputs` lists give the wire order, leftmost first.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::Phase;
use crate::scalar::Scalar;

pub type V = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Z,
    X,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Z => Color::X,
            Color::X => Color::Z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Z(Phase),
    X(Phase),
    H,
    Boundary,
}

impl VertexKind {
    pub fn spider(color: Color, phase: Phase) -> Self {
        match color {
            Color::Z => VertexKind::Z(phase),
            Color::X => VertexKind::X(phase),
        }
    }

    pub fn color(&self) -> Option<Color> {
        match self {
            VertexKind::Z(_) => Some(Color::Z),
            VertexKind::X(_) => Some(Color::X),
            _ => None,
        }
    }

    pub fn phase(&self) -> Option<&Phase> {
        match self {
            VertexKind::Z(p) | VertexKind::X(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_spider(&self) -> bool {
        self.color().is_some()
    }

    pub fn is_h(&self) -> bool {
        matches!(self, VertexKind::H)
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, VertexKind::Boundary)
    }
}

/// A broken [`Diagram`] invariant, as reported by [`Diagram::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BoundaryDegree { vertex: V, degree: usize },
    BoundaryNotListed(V),
    BoundaryListedTwice(V),
    ListedNotBoundary(V),
    HDegree { vertex: V, degree: usize },
    MissingVertex(V),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BoundaryDegree { vertex, degree } => {
                write!(f, "boundary {vertex} has degree {degree}, expected 1")
            }
            Violation::BoundaryNotListed(v) => write!(f, "boundary {v} is neither an input nor an output"),
            Violation::BoundaryListedTwice(v) => write!(f, "boundary {v} is listed more than once"),
            Violation::ListedNotBoundary(v) => write!(f, "vertex {v} is listed as input/output but is not a boundary"),
            Violation::HDegree { vertex, degree } => {
                write!(f, "hadamard {vertex} has degree {degree}, expected 2")
            }
            Violation::MissingVertex(v) => write!(f, "vertex {v} does not exist"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Diagram {
    kinds: BTreeMap<V, VertexKind>,
    /// Symmetric; `adj[v][v]` counts self-loops on `v`.
    adj: BTreeMap<V, BTreeMap<V, usize>>,
    inputs: Vec<V>,
    outputs: Vec<V>,
    scalar: Scalar,
    next: V,
    revision: u64,
}

impl Default for Diagram {
    fn default() -> Self {
        Diagram::new(0, 0)
    }
}

impl Diagram {
    /// `n_in + n_out` unconnected boundaries and nothing else.
    pub fn new(n_in: usize, n_out: usize) -> Self {
        let mut d = Diagram {
            kinds: BTreeMap::new(),
            adj: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            scalar: Scalar::one(),
            next: 0,
            revision: 0,
        };
        for _ in 0..n_in {
            d.add_input();
        }
        for _ in 0..n_out {
            d.add_output();
        }
        d
    }

    /// `n` parallel identity wires.
    pub fn identity(n: usize) -> Self {
        let mut d = Diagram::new(n, n);
        for i in 0..n {
            let (a, b) = (d.inputs[i], d.outputs[i]);
            d.add_edge(a, b).expect("fresh boundaries");
        }
        d
    }

    /// A single spider with `n_in` input and `n_out` output legs.
    pub fn spider(color: Color, phase: Phase, n_in: usize, n_out: usize) -> Self {
        let mut d = Diagram::new(n_in, n_out);
        let v = d.add_spider(color, phase);
        let ends: Vec<V> = d.inputs.iter().chain(&d.outputs).copied().collect();
        for b in ends {
            d.add_edge(b, v).expect("fresh boundary");
        }
        d
    }

    fn touch(&mut self) {
        self.revision = self.revision.wrapping_add(1);
    }

    /// Incremented on every mutation; used to detect stale rewrite matches.
    pub fn revision(&self) -> u64 {
        self.revision
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> V {
        let v = self.next;
        self.next += 1;
        self.kinds.insert(v, kind);
        self.adj.insert(v, BTreeMap::new());
        self.touch();
        v
    }

    /// Inserts a vertex with a caller-chosen id, as used when loading files.
    pub fn add_vertex_with_id(&mut self, v: V, kind: VertexKind) -> Result<()> {
        if self.kinds.contains_key(&v) {
            return Err(Error::InvalidDiagram(format!("duplicate vertex id {v}")));
        }
        self.kinds.insert(v, kind);
        self.adj.insert(v, BTreeMap::new());
        self.next = self.next.max(v + 1);
        self.touch();
        Ok(())
    }

    pub fn add_spider(&mut self, color: Color, phase: Phase) -> V {
        self.add_vertex(VertexKind::spider(color, phase))
    }

    pub fn add_z(&mut self, phase: Phase) -> V {
        self.add_vertex(VertexKind::Z(phase))
    }

    pub fn add_x(&mut self, phase: Phase) -> V {
        self.add_vertex(VertexKind::X(phase))
    }

    pub fn add_h(&mut self) -> V {
        self.add_vertex(VertexKind::H)
    }

    pub fn add_input(&mut self) -> V {
        let v = self.add_vertex(VertexKind::Boundary);
        self.inputs.push(v);
        v
    }

    pub fn add_output(&mut self) -> V {
        let v = self.add_vertex(VertexKind::Boundary);
        self.outputs.push(v);
        v
    }

    pub fn set_inputs(&mut self, inputs: Vec<V>) {
        self.inputs = inputs;
        self.touch();
    }

    pub fn set_outputs(&mut self, outputs: Vec<V>) {
        self.outputs = outputs;
        self.touch();
    }

    pub fn add_edge(&mut self, a: V, b: V) -> Result<()> {
        self.add_edges(a, b, 1)
    }

    pub fn add_edges(&mut self, a: V, b: V, count: usize) -> Result<()> {
        for v in [a, b] {
            if !self.kinds.contains_key(&v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        if count == 0 {
            return Ok(());
        }
        *self.adj.get_mut(&a).unwrap().entry(b).or_insert(0) += count;
        if a != b {
            *self.adj.get_mut(&b).unwrap().entry(a).or_insert(0) += count;
        }
        self.touch();
        Ok(())
    }

    /// Removes one edge instance; false if there was none.
    pub fn remove_edge(&mut self, a: V, b: V) -> bool {
        self.remove_edges(a, b, 1) == 1
    }

    /// Removes up to `count` edge instances, returning how many were removed.
    pub fn remove_edges(&mut self, a: V, b: V, count: usize) -> usize {
        let have = self.multiplicity(a, b);
        let k = have.min(count);
        if k == 0 {
            return 0;
        }
        let pairs: &[(V, V)] = if a == b { &[(a, a)] } else { &[(a, b), (b, a)] };
        for &(x, y) in pairs {
            let row = self.adj.get_mut(&x).unwrap();
            let e = row.get_mut(&y).unwrap();
            *e -= k;
            if *e == 0 {
                row.remove(&y);
            }
        }
        self.touch();
        k
    }

    pub fn remove_vertex(&mut self, v: V) {
        if let Some(row) = self.adj.remove(&v) {
            for u in row.keys() {
                if *u != v {
                    if let Some(r) = self.adj.get_mut(u) {
                        r.remove(&v);
                    }
                }
            }
        }
        self.kinds.remove(&v);
        self.inputs.retain(|x| *x != v);
        self.outputs.retain(|x| *x != v);
        self.touch();
    }

    pub fn contains(&self, v: V) -> bool {
        self.kinds.contains_key(&v)
    }

    pub fn kind(&self, v: V) -> Option<&VertexKind> {
        self.kinds.get(&v)
    }

    pub fn set_kind(&mut self, v: V, kind: VertexKind) {
        if let Some(k) = self.kinds.get_mut(&v) {
            *k = kind;
            self.touch();
        }
    }

    pub fn set_phase(&mut self, v: V, phase: Phase) {
        if let Some(c) = self.kinds.get(&v).and_then(VertexKind::color) {
            self.set_kind(v, VertexKind::spider(c, phase));
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = V> + '_ {
        self.kinds.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    /// Total number of edge instances.
    pub fn edge_count(&self) -> usize {
        self.edges().iter().map(|e| e.2).sum()
    }

    pub fn h_count(&self) -> usize {
        self.kinds.values().filter(|k| k.is_h()).count()
    }

    /// Neighbours other than `v` itself, with multiplicities, sorted by id.
    pub fn neighbors(&self, v: V) -> Vec<(V, usize)> {
        self.adj
            .get(&v)
            .map(|row| row.iter().filter(|(u, _)| **u != v).map(|(u, m)| (*u, *m)).collect())
            .unwrap_or_default()
    }

    /// Neighbours listed once per edge instance.
    pub fn neighbor_ends(&self, v: V) -> Vec<V> {
        self.neighbors(v)
            .into_iter()
            .flat_map(|(u, m)| std::iter::repeat_n(u, m))
            .collect()
    }

    pub fn multiplicity(&self, a: V, b: V) -> usize {
        self.adj.get(&a).and_then(|r| r.get(&b)).copied().unwrap_or(0)
    }

    pub fn self_loops(&self, v: V) -> usize {
        self.multiplicity(v, v)
    }

    /// Number of edge ends at `v`; a self-loop counts twice.
    pub fn degree(&self, v: V) -> usize {
        self.adj
            .get(&v)
            .map(|row| row.iter().map(|(u, m)| if *u == v { 2 * m } else { *m }).sum())
            .unwrap_or(0)
    }

    /// `(a, b, multiplicity)` with `a <= b`, sorted.
    pub fn edges(&self) -> Vec<(V, V, usize)> {
        let mut out = Vec::new();
        for (a, row) in &self.adj {
            for (b, m) in row {
                if a <= b {
                    out.push((*a, *b, *m));
                }
            }
        }
        out
    }

    pub fn inputs(&self) -> &[V] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[V] {
        &self.outputs
    }

    pub fn scalar(&self) -> &Scalar {
        &self.scalar
    }

    pub fn set_scalar(&mut self, s: Scalar) {
        self.scalar = s;
        self.touch();
    }

    pub fn mul_scalar(&mut self, s: &Scalar) {
        self.scalar *= s;
        self.touch();
    }

    pub fn mul_sqrt2_pow(&mut self, k: i32) {
        self.scalar.mul_sqrt2_pow(k);
        self.touch();
    }

    pub fn mul_phase(&mut self, p: &Phase) {
        self.scalar.mul_phase(p);
        self.touch();
    }

    /// Copies all of `other` into `self` under fresh ids. Boundary lists and
    /// the scalar are not touched; the returned map sends old ids to new ones.
    pub fn import(&mut self, other: &Diagram) -> BTreeMap<V, V> {
        let mut map = BTreeMap::new();
        for (v, k) in &other.kinds {
            map.insert(*v, self.add_vertex(k.clone()));
        }
        for (a, b, m) in other.edges() {
            self.add_edges(map[&a], map[&b], m).expect("imported vertices exist");
        }
        map
    }

    /// The sole neighbour of a boundary vertex; `b` itself for a self-loop.
    fn boundary_neighbor(&self, b: V) -> Option<V> {
        self.adj.get(&b).and_then(|row| row.keys().next().copied())
    }

    /// Joins two degree-1 boundary vertices: both are removed and their
    /// neighbours connected. A closed wire left behind becomes the scalar 2.
    fn plug(&mut self, u: V, w: V) {
        let nu = self.boundary_neighbor(u);
        let nw = self.boundary_neighbor(w);
        self.remove_vertex(u);
        self.remove_vertex(w);
        match (nu, nw) {
            (Some(a), Some(_)) if a == w => self.scalar.mul_sqrt2_pow(2),
            (Some(a), Some(b)) => {
                self.add_edge(a, b).expect("neighbours exist");
            }
            _ => {}
        }
    }

    /// Sequential composition: `self` first, then `g` (the map `g ∘ self`).
    pub fn compose_seq(&self, g: &Diagram) -> Result<Diagram> {
        if self.outputs.len() != g.inputs.len() {
            return Err(Error::ArityMismatch {
                left: self.outputs.len(),
                right: g.inputs.len(),
            });
        }
        let mut d = Diagram::new(0, 0);
        let fm = d.import(self);
        let gm = d.import(g);
        let joins: Vec<(V, V)> = self
            .outputs
            .iter()
            .zip(&g.inputs)
            .map(|(o, i)| (fm[o], gm[i]))
            .collect();
        d.inputs = self.inputs.iter().map(|v| fm[v]).collect();
        d.outputs = g.outputs.iter().map(|v| gm[v]).collect();
        for (u, w) in joins {
            d.plug(u, w);
        }
        d.scalar = &(&self.scalar * &g.scalar) * &d.scalar;
        d.touch();
        Ok(d)
    }

    /// Parallel composition: `self` on the left, `g` on the right.
    pub fn compose_par(&self, g: &Diagram) -> Diagram {
        let mut d = Diagram::new(0, 0);
        let fm = d.import(self);
        let gm = d.import(g);
        d.inputs = self.inputs.iter().map(|v| fm[v]).chain(g.inputs.iter().map(|v| gm[v])).collect();
        d.outputs = self.outputs.iter().map(|v| fm[v]).chain(g.outputs.iter().map(|v| gm[v])).collect();
        d.scalar = &self.scalar * &g.scalar;
        d.touch();
        d
    }

    /// Mirror image: inputs and outputs swapped, phases and scalar conjugated.
    pub fn adjoint(&self) -> Diagram {
        let mut d = self.clone();
        for k in d.kinds.values_mut() {
            match k {
                VertexKind::Z(p) | VertexKind::X(p) => *p = -&*p,
                _ => {}
            }
        }
        std::mem::swap(&mut d.inputs, &mut d.outputs);
        d.scalar = self.scalar.conjugate();
        d.touch();
        d
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for v in self.inputs.iter().chain(&self.outputs) {
            match self.kinds.get(v) {
                None => out.push(Violation::MissingVertex(*v)),
                Some(k) if !k.is_boundary() => out.push(Violation::ListedNotBoundary(*v)),
                _ => {}
            }
            if !seen.insert(*v) {
                out.push(Violation::BoundaryListedTwice(*v));
            }
        }
        for (v, k) in &self.kinds {
            let deg = self.degree(*v);
            match k {
                VertexKind::Boundary => {
                    if deg != 1 {
                        out.push(Violation::BoundaryDegree { vertex: *v, degree: deg });
                    }
                    if !seen.contains(v) {
                        out.push(Violation::BoundaryNotListed(*v));
                    }
                }
                VertexKind::H if deg != 2 => out.push(Violation::HDegree { vertex: *v, degree: deg }),
                _ => {}
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Error::InvalidDiagram(msgs.join("; ")))
        }
    }

    /// Connected components, sorted by smallest vertex id.
    pub fn components(&self) -> Vec<Vec<V>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([v]);
            seen.insert(v);
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for (w, _) in self.neighbors(u) {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Shortest-path distance from every vertex to the nearest boundary.
    pub fn boundary_distances(&self) -> BTreeMap<V, usize> {
        let mut dist = BTreeMap::new();
        let mut queue = VecDeque::new();
        for (v, k) in &self.kinds {
            if k.is_boundary() {
                dist.insert(*v, 0);
                queue.push_back(*v);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            for (w, _) in self.neighbors(u) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn isomorphic(&self, other: &Diagram) -> bool {
        crate::iso::isomorphic(self, other, true)
    }

    /// Isomorphism of the graphs alone, ignoring the tracked scalar.
    pub fn isomorphic_up_to_scalar(&self, other: &Diagram) -> bool {
        crate::iso::isomorphic(self, other, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnot() -> Diagram {
        let mut d = Diagram::new(2, 2);
        let z = d.add_z(Phase::zero());
        let x = d.add_x(Phase::zero());
        let (i0, i1, o0, o1) = (d.inputs()[0], d.inputs()[1], d.outputs()[0], d.outputs()[1]);
        for (a, b) in [(i0, z), (z, o0), (i1, x), (x, o1), (z, x)] {
            d.add_edge(a, b).unwrap();
        }
        d
    }

    #[test]
    fn builder_examples() {
        let d = Diagram::new(0, 0);
        assert_eq!(d.vertex_count(), 0);
        assert!(d.is_valid());

        let mut d = Diagram::new(0, 0);
        let v = d.add_z(Phase::pi());
        assert_eq!(d.degree(v), 0);
        assert!(d.is_valid());

        d.add_edge(v, v).unwrap();
        d.add_edge(v, v).unwrap();
        assert_eq!(d.self_loops(v), 2);
        assert_eq!(d.degree(v), 4);

        let w = d.add_x(Phase::zero());
        d.add_edge(v, w).unwrap();
        d.add_edge(w, v).unwrap();
        assert_eq!(d.multiplicity(v, w), 2);
        assert_eq!(d.edge_count(), 4);
        assert_eq!(d.add_edge(v, 99), Err(Error::UnknownVertex(99)));
    }

    #[test]
    fn remove_edges_and_vertices() {
        let mut d = Diagram::new(0, 0);
        let a = d.add_z(Phase::zero());
        let b = d.add_z(Phase::zero());
        d.add_edges(a, b, 3).unwrap();
        d.add_edges(a, a, 2).unwrap();
        assert_eq!(d.remove_edges(a, b, 2), 2);
        assert_eq!(d.multiplicity(b, a), 1);
        assert!(d.remove_edge(a, a));
        assert_eq!(d.self_loops(a), 1);
        d.remove_vertex(a);
        assert_eq!(d.degree(b), 0);
        assert!(d.neighbors(b).is_empty());
    }

    #[test]
    fn validate_reports_violations() {
        assert!(cnot().validate().is_empty());

        let mut d = Diagram::new(1, 1);
        let (i, o) = (d.inputs()[0], d.outputs()[0]);
        let z = d.add_z(Phase::zero());
        d.add_edge(i, z).unwrap();
        d.add_edge(i, o).unwrap();
        let v = d.validate();
        assert!(v.contains(&Violation::BoundaryDegree { vertex: i, degree: 2 }));

        let mut d = Diagram::new(0, 0);
        let h = d.add_h();
        for _ in 0..3 {
            let z = d.add_z(Phase::zero());
            d.add_edge(h, z).unwrap();
        }
        assert_eq!(d.validate(), vec![Violation::HDegree { vertex: h, degree: 3 }]);

        let mut d = Diagram::new(0, 0);
        d.add_vertex(VertexKind::Boundary);
        assert_eq!(d.validate().len(), 2);
    }

    #[test]
    fn seq_identity_is_identity() {
        let id = Diagram::identity(1);
        let d = id.compose_seq(&id).unwrap();
        assert!(d.isomorphic(&id));
        assert!(d.is_valid());
    }

    #[test]
    fn seq_arity_mismatch() {
        let e = Diagram::identity(1).compose_seq(&Diagram::identity(2)).unwrap_err();
        assert_eq!(e, Error::ArityMismatch { left: 1, right: 2 });
    }

    #[test]
    fn cup_then_cap_is_circle() {
        let mut cup = Diagram::new(0, 2);
        let (a, b) = (cup.outputs()[0], cup.outputs()[1]);
        cup.add_edge(a, b).unwrap();
        let cap = cup.adjoint();
        let d = cup.compose_seq(&cap).unwrap();
        assert_eq!(d.vertex_count(), 0);
        assert_eq!(*d.scalar(), Scalar::sqrt2_pow(2));
    }

    #[test]
    fn par_examples() {
        let e = Diagram::new(0, 0);
        let c = cnot();
        assert!(e.compose_par(&c).isomorphic(&c));
        let id2 = Diagram::identity(1).compose_par(&Diagram::identity(1));
        assert!(id2.isomorphic(&Diagram::identity(2)));
    }

    #[test]
    fn adjoint_examples() {
        let id = Diagram::identity(1);
        assert!(id.adjoint().isomorphic(&id));
        let mut d = Diagram::new(1, 2);
        let z = d.add_z(Phase::new(1, 4));
        for b in [d.inputs()[0], d.outputs()[0], d.outputs()[1]] {
            d.add_edge(b, z).unwrap();
        }
        d.set_scalar(Scalar::from_phase(Phase::new(1, 3)));
        let a = d.adjoint();
        assert_eq!(a.inputs().len(), 2);
        assert_eq!(a.outputs().len(), 1);
        assert_eq!(a.kind(z), Some(&VertexKind::Z(Phase::new(7, 4))));
        assert_eq!(*a.scalar().phase(), Phase::new(5, 3));
        assert!(a.adjoint().isomorphic(&d));
    }

    #[test]
    fn components_and_distances() {
        let c = cnot();
        assert_eq!(c.components().len(), 1);
        let two = Diagram::identity(2);
        assert_eq!(two.components().len(), 2);
        let dist = c.boundary_distances();
        assert!(dist.values().all(|d| *d <= 1));
    }
}

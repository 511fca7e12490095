//! Matchers and appliers.
//!
//! Bindings per rule:
//! - `SpiderFuse [u, w]`: same-colour spiders joined by plain edges; `u` survives.
//! - `IdentityRemove [v]`: phase-0 spider of degree 2, or any spider of degree 0.
//! - `SelfLoop [v]`: spider carrying plain self-loops.
//! - `HLoop [h, s]`: Hadamard with both legs on spider `s`.
//! - `HHCancel [h1, h2]`: adjacent Hadamards.
//! - `ColorChange [v]`: spider with more Hadamard legs than plain legs.
//! - `Hopf [z, x]`: Z and X spider joined by at least two edges.
//! - `Bialgebra [z1, z2, x1, x2]`, or `[x, z]` when reversed.
//! - `StateCopy` / `UnitCopy [u, v]`: Pauli state `u` on host `v` of the other colour.
//! - `PiCommute [p, v]`: degree-2 π spider `p` next to host `v` of the other colour.
//! - `PiThroughH [p, h]`: degree-2 π spider next to Hadamard `h`.

use crate::diagram::{Color, Diagram, VertexKind, V};
use crate::phase::Phase;
use crate::scalar::Scalar;

use super::{Match, RuleId};

fn spider(d: &Diagram, v: V) -> Option<(Color, Phase)> {
    let k = d.kind(v)?;
    Some((k.color()?, k.phase()?.clone()))
}

fn is_h(d: &Diagram, v: V) -> bool {
    d.kind(v).is_some_and(VertexKind::is_h)
}

/// The neighbour ends of `v` with one occurrence of `skip` removed.
fn ends_except(d: &Diagram, v: V, skip: V) -> Vec<V> {
    let mut ends = d.neighbor_ends(v);
    if let Some(i) = ends.iter().position(|x| *x == skip) {
        ends.remove(i);
    }
    ends
}

/// The other end of a degree-2 vertex `v` seen from `from`.
fn other_end(d: &Diagram, v: V, from: V) -> Option<V> {
    ends_except(d, v, from).first().copied()
}

fn add_phase(d: &mut Diagram, v: V, p: &Phase) {
    let (_, q) = spider(d, v).expect("spider");
    d.set_phase(v, &q + p);
}

pub(super) fn find(d: &Diagram, rule: RuleId) -> Vec<Vec<V>> {
    let verts: Vec<V> = d.vertices().collect();
    let cands: Vec<Vec<V>> = match rule {
        RuleId::SpiderFuse | RuleId::HHCancel | RuleId::Hopf => d
            .edges()
            .into_iter()
            .filter(|(a, b, _)| a != b)
            .flat_map(|(a, b, _)| [vec![a, b], vec![b, a]])
            .collect(),
        RuleId::IdentityRemove | RuleId::SelfLoop | RuleId::ColorChange => verts.iter().map(|v| vec![*v]).collect(),
        RuleId::HLoop => verts
            .iter()
            .filter_map(|h| d.neighbors(*h).first().map(|(s, _)| vec![*h, *s]))
            .collect(),
        RuleId::StateCopy | RuleId::UnitCopy | RuleId::PiCommute | RuleId::PiThroughH => verts
            .iter()
            .flat_map(|u| d.neighbors(*u).into_iter().map(move |(v, _)| vec![*u, v]))
            .collect(),
        RuleId::Bialgebra => bialgebra_candidates(d),
    };
    cands.into_iter().filter(|vs| holds(d, rule, false, vs)).collect()
}

fn bialgebra_candidates(d: &Diagram) -> Vec<Vec<V>> {
    let mut out = Vec::new();
    for z1 in d.vertices() {
        if !matches!(d.kind(z1), Some(VertexKind::Z(_))) {
            continue;
        }
        let xs: Vec<V> = d
            .neighbors(z1)
            .into_iter()
            .filter(|(x, _)| matches!(d.kind(*x), Some(VertexKind::X(_))))
            .map(|(x, _)| x)
            .collect();
        for (i, &x1) in xs.iter().enumerate() {
            for &x2 in &xs[i + 1..] {
                for (z2, _) in d.neighbors(x1) {
                    if z2 > z1 && d.multiplicity(x2, z2) > 0 {
                        out.push(vec![z1, z2, x1, x2]);
                    }
                }
            }
        }
    }
    out
}

pub(super) fn find_bialgebra_reverse(d: &Diagram) -> Vec<Vec<V>> {
    d.edges()
        .into_iter()
        .filter(|(a, b, _)| a != b)
        .flat_map(|(a, b, _)| [vec![a, b], vec![b, a]])
        .filter(|vs| holds(d, RuleId::Bialgebra, true, vs))
        .collect()
}

pub(super) fn still_matches(d: &Diagram, m: &Match) -> bool {
    m.vertices.iter().all(|v| d.contains(*v)) && holds(d, m.rule, m.reverse, &m.vertices)
}

fn holds(d: &Diagram, rule: RuleId, reverse: bool, vs: &[V]) -> bool {
    let arity = match (rule, reverse) {
        (RuleId::IdentityRemove | RuleId::SelfLoop | RuleId::ColorChange, _) => 1,
        (RuleId::Bialgebra, false) => 4,
        _ => 2,
    };
    if vs.len() != arity || vs.iter().any(|v| !d.contains(*v)) {
        return false;
    }
    match rule {
        RuleId::SpiderFuse => {
            let (u, w) = (vs[0], vs[1]);
            u < w
                && matches!((spider(d, u), spider(d, w)), (Some((a, _)), Some((b, _))) if a == b)
                && d.multiplicity(u, w) > 0
        }
        RuleId::IdentityRemove => {
            let v = vs[0];
            match spider(d, v) {
                Some((_, p)) => d.self_loops(v) == 0 && (d.degree(v) == 0 || (d.degree(v) == 2 && p.is_zero())),
                None => false,
            }
        }
        RuleId::SelfLoop => spider(d, vs[0]).is_some() && d.self_loops(vs[0]) > 0,
        RuleId::HLoop => {
            let (h, s) = (vs[0], vs[1]);
            is_h(d, h) && spider(d, s).is_some() && d.multiplicity(h, s) == 2 && d.degree(h) == 2
        }
        RuleId::HHCancel => {
            let (a, b) = (vs[0], vs[1]);
            a < b && is_h(d, a) && is_h(d, b) && d.multiplicity(a, b) > 0 && d.degree(a) == 2 && d.degree(b) == 2
        }
        RuleId::ColorChange => color_change_ok(d, vs[0]),
        RuleId::Hopf => {
            let (z, x) = (vs[0], vs[1]);
            matches!(d.kind(z), Some(VertexKind::Z(_)))
                && matches!(d.kind(x), Some(VertexKind::X(_)))
                && d.multiplicity(z, x) >= 2
        }
        RuleId::Bialgebra if reverse => {
            let (x, z) = (vs[0], vs[1]);
            d.kind(x) == Some(&VertexKind::X(Phase::zero()))
                && d.kind(z) == Some(&VertexKind::Z(Phase::zero()))
                && d.degree(x) == 3
                && d.degree(z) == 3
                && d.self_loops(x) == 0
                && d.self_loops(z) == 0
                && d.multiplicity(x, z) == 1
        }
        RuleId::Bialgebra => {
            let (z1, z2, x1, x2) = (vs[0], vs[1], vs[2], vs[3]);
            let zero_z = |v| d.kind(v) == Some(&VertexKind::Z(Phase::zero()));
            let zero_x = |v| d.kind(v) == Some(&VertexKind::X(Phase::zero()));
            z1 < z2
                && x1 < x2
                && zero_z(z1)
                && zero_z(z2)
                && zero_x(x1)
                && zero_x(x2)
                && [z1, z2, x1, x2].iter().all(|v| d.degree(*v) == 3 && d.self_loops(*v) == 0)
                && [(z1, x1), (z1, x2), (z2, x1), (z2, x2)].iter().all(|(a, b)| d.multiplicity(*a, *b) == 1)
                && d.multiplicity(z1, z2) == 0
                && d.multiplicity(x1, x2) == 0
        }
        RuleId::StateCopy | RuleId::UnitCopy => {
            let (u, v) = (vs[0], vs[1]);
            let (Some((cu, pu)), Some((cv, _))) = (spider(d, u), spider(d, v)) else {
                return false;
            };
            let n = d.degree(v).wrapping_sub(1);
            cu != cv
                && pu.is_pauli()
                && d.degree(u) == 1
                && d.multiplicity(u, v) == 1
                && d.self_loops(v) == 0
                && if rule == RuleId::UnitCopy { n == 1 } else { n != 1 }
        }
        RuleId::PiCommute => {
            let (p, v) = (vs[0], vs[1]);
            let (Some((cp, pp)), Some((cv, _))) = (spider(d, p), spider(d, v)) else {
                return false;
            };
            cp != cv
                && pp.is_pi()
                && d.degree(p) == 2
                && d.self_loops(p) == 0
                && d.multiplicity(p, v) == 1
                && d.self_loops(v) == 0
        }
        RuleId::PiThroughH => {
            let (p, h) = (vs[0], vs[1]);
            matches!(spider(d, p), Some((_, ph)) if ph.is_pi())
                && d.degree(p) == 2
                && d.self_loops(p) == 0
                && is_h(d, h)
                && d.degree(h) == 2
                && d.self_loops(h) == 0
                && d.multiplicity(p, h) == 1
        }
    }
}

fn color_change_ok(d: &Diagram, v: V) -> bool {
    if spider(d, v).is_none() || d.self_loops(v) > 0 {
        return false;
    }
    let hs: Vec<(V, usize)> = d.neighbors(v).into_iter().filter(|(n, _)| is_h(d, *n)).collect();
    let mut h_legs = 0;
    for &(h, m) in &hs {
        if m != 1 || d.degree(h) != 2 || d.self_loops(h) > 0 {
            return false;
        }
        // The far end must not be another Hadamard on `v`, which would be
        // rewired while we are still walking the legs.
        let far = other_end(d, h, v).expect("degree-2 hadamard");
        if hs.iter().any(|(g, _)| *g == far) {
            return false;
        }
        h_legs += 1;
    }
    h_legs > d.degree(v) - h_legs
}

/// Rewrites `d` in place and returns the scalar factor to multiply in.
pub(super) fn apply(d: &mut Diagram, m: &Match) -> Scalar {
    let vs = &m.vertices;
    match m.rule {
        RuleId::SpiderFuse => {
            let (u, w) = (vs[0], vs[1]);
            let (_, pw) = spider(d, w).unwrap();
            let k = d.multiplicity(u, w);
            d.remove_edges(u, w, k);
            d.add_edges(u, u, k - 1).unwrap();
            d.add_edges(u, u, d.self_loops(w)).unwrap();
            for (n, c) in d.neighbors(w) {
                d.add_edges(u, n, c).unwrap();
            }
            d.remove_vertex(w);
            add_phase(d, u, &pw);
            Scalar::one()
        }
        RuleId::IdentityRemove => {
            let v = vs[0];
            let (_, p) = spider(d, v).unwrap();
            let ends = d.neighbor_ends(v);
            d.remove_vertex(v);
            if ends.is_empty() {
                Scalar::one_plus(p)
            } else {
                d.add_edge(ends[0], ends[1]).unwrap();
                Scalar::one()
            }
        }
        RuleId::SelfLoop => {
            let v = vs[0];
            d.remove_edges(v, v, d.self_loops(v));
            Scalar::one()
        }
        RuleId::HLoop => {
            let (h, s) = (vs[0], vs[1]);
            d.remove_vertex(h);
            add_phase(d, s, &Phase::pi());
            Scalar::sqrt2_pow(-1)
        }
        RuleId::HHCancel => {
            let (h1, h2) = (vs[0], vs[1]);
            if d.multiplicity(h1, h2) == 2 {
                d.remove_vertex(h1);
                d.remove_vertex(h2);
                return Scalar::sqrt2_pow(2);
            }
            let a = other_end(d, h1, h2).unwrap();
            let b = other_end(d, h2, h1).unwrap();
            d.remove_vertex(h1);
            d.remove_vertex(h2);
            d.add_edge(a, b).unwrap();
            Scalar::one()
        }
        RuleId::ColorChange => {
            let v = vs[0];
            let (c, p) = spider(d, v).unwrap();
            for (n, k) in d.neighbors(v) {
                if is_h(d, n) {
                    let far = other_end(d, n, v).unwrap();
                    d.remove_vertex(n);
                    d.add_edge(v, far).unwrap();
                } else {
                    d.remove_edges(v, n, k);
                    for _ in 0..k {
                        let h = d.add_h();
                        d.add_edge(v, h).unwrap();
                        d.add_edge(h, n).unwrap();
                    }
                }
            }
            d.set_kind(v, VertexKind::spider(c.flip(), p));
            Scalar::one()
        }
        RuleId::Hopf => {
            d.remove_edges(vs[0], vs[1], 2);
            Scalar::sqrt2_pow(-2)
        }
        RuleId::Bialgebra if m.reverse => {
            let (x, z) = (vs[0], vs[1]);
            let a = ends_except(d, x, z);
            let b = ends_except(d, z, x);
            d.remove_vertex(x);
            d.remove_vertex(z);
            let zs = [d.add_z(Phase::zero()), d.add_z(Phase::zero())];
            let xs = [d.add_x(Phase::zero()), d.add_x(Phase::zero())];
            for i in 0..2 {
                d.add_edge(zs[i], a[i]).unwrap();
                d.add_edge(xs[i], b[i]).unwrap();
                for &x in &xs {
                    d.add_edge(zs[i], x).unwrap();
                }
            }
            Scalar::sqrt2_pow(1)
        }
        RuleId::Bialgebra => {
            let (z1, z2, x1, x2) = (vs[0], vs[1], vs[2], vs[3]);
            let third = |v: V, p: V, q: V| ends_except(d, v, p).into_iter().find(|e| *e != q).unwrap();
            let a = [third(z1, x1, x2), third(z2, x1, x2)];
            let b = [third(x1, z1, z2), third(x2, z1, z2)];
            for v in [z1, z2, x1, x2] {
                d.remove_vertex(v);
            }
            let x = d.add_x(Phase::zero());
            let z = d.add_z(Phase::zero());
            d.add_edge(x, a[0]).unwrap();
            d.add_edge(x, a[1]).unwrap();
            d.add_edge(z, b[0]).unwrap();
            d.add_edge(z, b[1]).unwrap();
            d.add_edge(x, z).unwrap();
            Scalar::sqrt2_pow(-1)
        }
        RuleId::StateCopy | RuleId::UnitCopy => {
            let (u, v) = (vs[0], vs[1]);
            let (cu, pu) = spider(d, u).unwrap();
            let (_, pv) = spider(d, v).unwrap();
            let ends = ends_except(d, v, u);
            let n = ends.len() as i32;
            d.remove_vertex(u);
            d.remove_vertex(v);
            for w in ends {
                let s = d.add_spider(cu, pu.clone());
                d.add_edge(s, w).unwrap();
            }
            let a = if pu.is_pi() { 1 } else { 0 };
            Scalar::new(1 - n, pv.scale(a), Vec::new())
        }
        RuleId::PiCommute => {
            let (p, v) = (vs[0], vs[1]);
            let (cp, _) = spider(d, p).unwrap();
            let (_, alpha) = spider(d, v).unwrap();
            let w = other_end(d, p, v).unwrap();
            let ends = ends_except(d, v, p);
            d.remove_vertex(p);
            for y in ends {
                d.remove_edge(v, y);
                let q = d.add_spider(cp, Phase::pi());
                d.add_edge(v, q).unwrap();
                d.add_edge(q, y).unwrap();
            }
            d.add_edge(v, w).unwrap();
            d.set_phase(v, -&alpha);
            Scalar::from_phase(alpha)
        }
        RuleId::PiThroughH => {
            let (p, h) = (vs[0], vs[1]);
            let (cp, pp) = spider(d, p).unwrap();
            let a = other_end(d, p, h).unwrap();
            let b = other_end(d, h, p).unwrap();
            d.remove_edge(a, p);
            d.remove_edge(p, h);
            d.remove_edge(h, b);
            d.add_edge(a, h).unwrap();
            d.add_edge(h, p).unwrap();
            d.add_edge(p, b).unwrap();
            d.set_kind(p, VertexKind::spider(cp.flip(), pp));
            Scalar::one()
        }
    }
}

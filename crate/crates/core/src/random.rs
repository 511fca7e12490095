//! Seeded random diagrams for property and soundness testing.

use rand::Rng;

use crate::diagram::{Color, Diagram, VertexKind, V};
use crate::phase::Phase;
use crate::rewrite::RuleId;

pub const MAX_WIRES: usize = 6;
pub const MAX_VERTICES: usize = 20;
const BASE_VERTICES: usize = 12;

pub fn random_phase<R: Rng>(rng: &mut R) -> Phase {
    Phase::new(rng.gen_range(0..8), 4)
}

pub fn random_color<R: Rng>(rng: &mut R) -> Color {
    if rng.gen_bool(0.5) {
        Color::Z
    } else {
        Color::X
    }
}

fn spiders(d: &Diagram) -> Vec<V> {
    d.vertices().filter(|v| d.kind(*v).is_some_and(VertexKind::is_spider)).collect()
}

/// A valid diagram with at most 3 inputs, 3 outputs and 12 vertices.
pub fn random_diagram<R: Rng>(rng: &mut R) -> Diagram {
    let mut d = Diagram::new(rng.gen_range(0..=3), rng.gen_range(0..=3));
    let n_spiders = rng.gen_range(1..=5);
    let sp: Vec<V> = (0..n_spiders)
        .map(|_| {
            let (c, p) = (random_color(rng), random_phase(rng));
            d.add_spider(c, p)
        })
        .collect();
    let boundaries: Vec<V> = d.inputs().iter().chain(d.outputs()).copied().collect();
    for b in boundaries {
        d.add_edge(b, sp[rng.gen_range(0..sp.len())]).unwrap();
    }
    let mut pairs = Vec::new();
    for _ in 0..rng.gen_range(0..=6) {
        let a = sp[rng.gen_range(0..sp.len())];
        let b = sp[rng.gen_range(0..sp.len())];
        if a == b && !rng.gen_bool(0.2) {
            continue;
        }
        pairs.push((a, b));
    }
    for (a, b) in pairs {
        if a != b && d.vertex_count() < BASE_VERTICES && rng.gen_bool(0.3) {
            let h = d.add_h();
            d.add_edge(a, h).unwrap();
            d.add_edge(h, b).unwrap();
        } else {
            d.add_edge(a, b).unwrap();
        }
    }
    d
}

fn leg<R: Rng>(rng: &mut R, d: &mut Diagram, v: V, base: &[V]) {
    let t = base[rng.gen_range(0..base.len())];
    d.add_edge(v, t).unwrap();
}

fn legs<R: Rng>(rng: &mut R, d: &mut Diagram, v: V, base: &[V], max: usize) {
    for _ in 0..rng.gen_range(0..=max) {
        leg(rng, d, v, base);
    }
}

/// Adds an instance of the left-hand side of `rule` wired into the existing
/// spiders of `d`. Uses at most 8 new vertices.
pub fn plant<R: Rng>(rng: &mut R, d: &mut Diagram, rule: RuleId) {
    let mut base = spiders(d);
    if base.is_empty() {
        let (c, p) = (random_color(rng), random_phase(rng));
        base.push(d.add_spider(c, p));
    }
    let base = &base;
    let c = random_color(rng);
    match rule {
        RuleId::SpiderFuse => {
            let u = d.add_spider(c, random_phase(rng));
            let w = d.add_spider(c, random_phase(rng));
            d.add_edges(u, w, rng.gen_range(1..=3)).unwrap();
            legs(rng, d, u, base, 2);
            legs(rng, d, w, base, 2);
        }
        RuleId::IdentityRemove => {
            if rng.gen_bool(0.3) {
                d.add_spider(c, random_phase(rng));
            } else {
                let v = d.add_spider(c, Phase::zero());
                leg(rng, d, v, base);
                leg(rng, d, v, base);
            }
        }
        RuleId::SelfLoop => {
            let v = d.add_spider(c, random_phase(rng));
            d.add_edges(v, v, rng.gen_range(1..=2)).unwrap();
            legs(rng, d, v, base, 2);
        }
        RuleId::HLoop => {
            let s = d.add_spider(c, random_phase(rng));
            legs(rng, d, s, base, 2);
            let h = d.add_h();
            d.add_edges(s, h, 2).unwrap();
        }
        RuleId::HHCancel => {
            let h1 = d.add_h();
            let h2 = d.add_h();
            if rng.gen_bool(0.2) {
                d.add_edges(h1, h2, 2).unwrap();
            } else {
                d.add_edge(h1, h2).unwrap();
                leg(rng, d, h1, base);
                leg(rng, d, h2, base);
            }
        }
        RuleId::ColorChange => {
            let v = d.add_spider(c, random_phase(rng));
            let k = rng.gen_range(1..=3);
            for _ in 0..k {
                let h = d.add_h();
                d.add_edge(v, h).unwrap();
                leg(rng, d, h, base);
            }
            legs(rng, d, v, base, k - 1);
        }
        RuleId::Hopf => {
            let z = d.add_z(random_phase(rng));
            let x = d.add_x(random_phase(rng));
            d.add_edges(z, x, rng.gen_range(2..=3)).unwrap();
            legs(rng, d, z, base, 2);
            legs(rng, d, x, base, 2);
        }
        RuleId::Bialgebra => {
            if rng.gen_bool(0.5) {
                let zs = [d.add_z(Phase::zero()), d.add_z(Phase::zero())];
                let xs = [d.add_x(Phase::zero()), d.add_x(Phase::zero())];
                for z in zs {
                    for x in xs {
                        d.add_edge(z, x).unwrap();
                    }
                }
                for v in zs.into_iter().chain(xs) {
                    leg(rng, d, v, base);
                }
            } else {
                let x = d.add_x(Phase::zero());
                let z = d.add_z(Phase::zero());
                d.add_edge(x, z).unwrap();
                for v in [x, x, z, z] {
                    leg(rng, d, v, base);
                }
            }
        }
        RuleId::StateCopy | RuleId::UnitCopy => {
            let pauli = if rng.gen_bool(0.5) { Phase::zero() } else { Phase::pi() };
            let u = d.add_spider(c, pauli);
            let v = d.add_spider(c.flip(), random_phase(rng));
            d.add_edge(u, v).unwrap();
            let n = if rule == RuleId::UnitCopy {
                1
            } else {
                [0, 2, 3][rng.gen_range(0..3)]
            };
            for _ in 0..n {
                leg(rng, d, v, base);
            }
        }
        RuleId::PiCommute => {
            let p = d.add_spider(c, Phase::pi());
            let v = d.add_spider(c.flip(), random_phase(rng));
            d.add_edge(p, v).unwrap();
            leg(rng, d, p, base);
            for _ in 0..rng.gen_range(1..=3) {
                leg(rng, d, v, base);
            }
        }
        RuleId::PiThroughH => {
            let p = d.add_spider(c, Phase::pi());
            let h = d.add_h();
            d.add_edge(p, h).unwrap();
            leg(rng, d, p, base);
            leg(rng, d, h, base);
        }
    }
}

/// A random diagram that contains at least one instance of `rule`.
pub fn random_diagram_for<R: Rng>(rng: &mut R, rule: RuleId) -> Diagram {
    let mut d = random_diagram(rng);
    plant(rng, &mut d, rule);
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::find_all_directions;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_diagrams_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for rule in RuleId::ALL {
            for _ in 0..50 {
                let d = random_diagram_for(&mut rng, rule);
                assert!(d.is_valid(), "{rule}: {:?}", d.validate());
                assert!(d.inputs().len() + d.outputs().len() <= MAX_WIRES);
                assert!(d.vertex_count() <= MAX_VERTICES);
                assert!(!find_all_directions(&d, rule).is_empty(), "{rule} not planted");
            }
        }
    }
}

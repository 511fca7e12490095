use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;
use crate::structure::{norm, ObservableStructure};
use crate::Result;

/// Group laws of `⊙` on sampled unbiased points (length `√D`), with
/// conjugation as inverse, and `Λ` as a monoid isomorphism onto its range:
/// `Λ(a⊙b) = Λ(a)Λ(b)`, `Λ(ε†) = 1`, `Λ(a_*) = Λ(a)†`, `Λ(a)ε† = a`.
///
/// Points come from [`ObservableStructure::unbiased_grid`]; pairs and triples
/// are drawn from them with a seeded generator.
pub fn check_phase_group(os: &ObservableStructure, samples: usize, seed: u64) -> Result<Report> {
    let d = os.dim as f64;
    let pts = os.unbiased_grid(samples, seed)?;
    let n = pts.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let unit = os.unit();
    let id = os.id();
    let mut r = [0.0f64; 9];
    for a in &pts {
        let conj = os.conjugate_point(a);
        let la = os.lambda_map(a);
        r[0] = r[0].max(os.point_mult(&unit, a).max_diff(a));
        r[1] = r[1].max(os.point_mult(a, &conj).max_diff(&unit));
        r[2] = r[2].max(os.lambda_map(&conj).max_diff(&la.adjoint()));
        r[3] = r[3].max((&la * &unit).max_diff(a));
        r[4] = r[4].max((&la.adjoint() * &la).max_diff(&id));
    }
    for _ in 0..4 * n {
        let (a, b, c) = (&pts[rng.gen_range(0..n)], &pts[rng.gen_range(0..n)], &pts[rng.gen_range(0..n)]);
        let ab = os.point_mult(a, b);
        // Closed in the group: unbiased and still of length √D.
        r[5] = r[5].max(os.unbiased_residual(&ab).max((norm(&ab) - d.sqrt()).abs()));
        r[6] = r[6].max(ab.max_diff(&os.point_mult(b, a)));
        r[7] = r[7].max(os.point_mult(&ab, c).max_diff(&os.point_mult(a, &os.point_mult(b, c))));
        r[8] = r[8].max(os.lambda_map(&ab).max_diff(&(&os.lambda_map(a) * &os.lambda_map(b))));
    }
    let lambda_unit = os.lambda_map(&unit).max_diff(&id);
    Ok(Report::from_parts(
        "phase-group",
        os.dim,
        &[
            ("unit", r[0]),
            ("inverse", r[1]),
            ("lambda conjugation", r[2]),
            ("lambda injective", r[3]),
            ("lambda unitary", r[4]),
            ("closure", r[5]),
            ("commutative", r[6]),
            ("associative", r[7]),
            ("lambda multiplicative", r[8]),
            ("lambda unit", lambda_unit),
        ],
    ))
}

use zxlab_core::{ComplexMatrix, C64};

use crate::report::Report;
use crate::structure::{inner, norm, obs_from_basis, obs_tensor, swap_matrix, ObservableStructure};
use crate::{OracleError, Result, TOL};

/// Two structures on the same space. `left` plays Z, `right` plays X.
#[derive(Clone, Debug)]
pub struct StructurePair {
    left: ObservableStructure,
    right: ObservableStructure,
    dualiser: ComplexMatrix,
}

impl StructurePair {
    pub fn new(left: ObservableStructure, right: ObservableStructure) -> Result<StructurePair> {
        if left.dim != right.dim {
            return Err(OracleError::DimensionMismatch {
                left: left.dim,
                right: right.dim,
            });
        }
        let i = left.id();
        let dualiser = &left.eta().adjoint().kron(&i) * &i.kron(&right.eta());
        Ok(StructurePair { left, right, dualiser })
    }

    pub fn left(&self) -> &ObservableStructure {
        &self.left
    }

    pub fn right(&self) -> &ObservableStructure {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.left.dim
    }

    /// `(η_Z† ⊗ 1)(1 ⊗ η_X)`.
    pub fn dualiser(&self) -> &ComplexMatrix {
        &self.dualiser
    }

    /// The same pair with the roles of Z and X exchanged.
    pub fn swapped(&self) -> StructurePair {
        StructurePair::new(self.right.clone(), self.left.clone()).expect("equal dims")
    }

    fn d(&self) -> f64 {
        self.dim() as f64
    }
}

/// Pair of induced structures on the tensor product.
pub fn pair_tensor(a: &StructurePair, b: &StructurePair) -> StructurePair {
    StructurePair::new(obs_tensor(&a.left, &b.left), obs_tensor(&a.right, &b.right)).expect("equal dims")
}

pub fn dualiser(pair: &StructurePair) -> ComplexMatrix {
    pair.dualiser.clone()
}

/// `D·δ_X† (d ⊗ 1) δ_Z = ε_X† ε_Z`, with `d` the dualiser or the identity.
pub fn check_hopf(pair: &StructurePair, use_dualiser: bool) -> Report {
    let (z, x) = (&pair.left, &pair.right);
    let anti = if use_dualiser { pair.dualiser.clone() } else { z.id() };
    let lhs = (&(&x.delta.adjoint() * &anti.kron(&z.id())) * &z.delta).scale_real(pair.d());
    let rhs = &x.unit() * &z.epsilon;
    let name = if use_dualiser { "hopf" } else { "hopf-trivial" };
    Report::from_parts(name, pair.dim(), &[("hopf", lhs.max_diff(&rhs))])
}

/// Every classical point of each side is unbiased for the other.
pub fn check_complementary(pair: &StructurePair) -> Result<Report> {
    let (z, x) = (&pair.left, &pair.right);
    let mut items = Vec::new();
    for (i, p) in z.basis()?.iter().enumerate() {
        items.push((format!("Z point {i} unbiased for X"), x.unbiased_residual(p)));
    }
    for (i, p) in x.basis()?.iter().enumerate() {
        items.push((format!("X point {i} unbiased for Z"), z.unbiased_residual(p)));
    }
    Ok(Report::collect("complementary", pair.dim(), items))
}

/// `√D·δ_Z ε_X† = ε_X† ⊗ ε_X†` and the same with colours exchanged.
pub fn check_coherent(pair: &StructurePair) -> Report {
    let s = pair.d().sqrt();
    let half = |a: &ObservableStructure, b: &ObservableStructure| {
        (&a.delta * &b.unit()).scale_real(s).max_diff(&b.unit().kron(&b.unit()))
    };
    Report::from_parts(
        "coherent",
        pair.dim(),
        &[("coher1", half(&pair.left, &pair.right)), ("coher2", half(&pair.right, &pair.left))],
    )
}

/// Multiplies every vector of `targets` by the phase making its overlap
/// with `anchor` a positive real.
fn align(targets: &[ComplexMatrix], anchor: &ComplexMatrix) -> Result<Vec<ComplexMatrix>> {
    targets
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let o = inner(v, anchor);
            if o.norm() <= TOL {
                return Err(OracleError::ZeroOverlap(i));
            }
            Ok(v.scale(o / o.norm()))
        })
        .collect()
}

/// Re-phases both bases so that each deleting point becomes `√D` times a
/// classical point of the other structure. The bases, and hence the
/// observables, are unchanged up to phases.
///
/// X is aligned to the Z point nearest `ε_X†`, then Z is aligned to the X
/// point nearest the new `ε_Z†`. The second step leaves the anchor of the
/// first fixed, so both coherence laws hold afterwards. A coherent pair is
/// returned unchanged.
pub fn coherify(pair: &StructurePair) -> Result<StructurePair> {
    let nearest = |basis: &[ComplexMatrix], s: &ComplexMatrix| {
        let mut best = 0;
        for (i, v) in basis.iter().enumerate() {
            if inner(v, s).norm() > inner(&basis[best], s).norm() + TOL {
                best = i;
            }
        }
        basis[best].clone()
    };
    let zb = pair.left.basis()?.to_vec();
    let xb = pair.right.basis()?.to_vec();
    let xs = align(&xb, &nearest(&zb, &pair.right.unit()))?;
    let x = obs_from_basis(&xs)?;
    let zs = align(&zb, &nearest(&xs, &pair.left.unit()))?;
    let z = obs_from_basis(&zs)?;
    StructurePair::new(z, x)
}

/// `z ⊙_X z′` is again a classical point of Z, for all `z, z′ ∈ B_Z`
/// (points at length `√D`).
pub fn check_closed(pair: &StructurePair) -> Result<Report> {
    let bz = pair.left.scaled_basis()?;
    let mut items = Vec::new();
    for (i, a) in bz.iter().enumerate() {
        for (j, b) in bz.iter().enumerate() {
            let p = pair.right.point_mult(a, b);
            let dist = bz.iter().map(|c| p.max_diff(c)).fold(f64::INFINITY, f64::min);
            items.push((format!("z{i} ⊙X z{j}"), dist));
        }
    }
    Ok(Report::collect("closed", pair.dim(), items))
}

/// `Λ^Z(x) Λ^X(z) = (conj(x†z)/√D) Λ^X(z) Λ^Z(x)` for `z ∈ B_Z`, `x ∈ B_X`.
pub fn check_oper_comm(pair: &StructurePair) -> Result<Report> {
    let (z, x) = (&pair.left, &pair.right);
    let (bz, bx) = (z.scaled_basis()?, x.scaled_basis()?);
    let mut items = Vec::new();
    for (i, zp) in bz.iter().enumerate() {
        for (j, xp) in bx.iter().enumerate() {
            let (lz, lx) = (z.lambda_map(xp), x.lambda_map(zp));
            let c = inner(xp, zp).conj() / pair.d().sqrt();
            let r = (&lz * &lx).max_diff(&(&lx * &lz).scale(c));
            items.push((format!("z{i}, x{j}"), r));
        }
    }
    Ok(Report::collect("oper", pair.dim(), items))
}

/// `δ_Z Λ^X(z) = (Λ^X(z) ⊗ Λ^X(z)) δ_Z` for `z ∈ B_Z`.
pub fn check_comul_comm(pair: &StructurePair) -> Result<Report> {
    let (z, x) = (&pair.left, &pair.right);
    let mut items = Vec::new();
    for (i, zp) in z.scaled_basis()?.iter().enumerate() {
        let l = x.lambda_map(zp);
        let r = (&z.delta * &l).max_diff(&(&l.kron(&l) * &z.delta));
        items.push((format!("z{i}"), r));
    }
    Ok(Report::collect("comul", pair.dim(), items))
}

/// `D (δ_X† ⊗ δ_X†)(1 ⊗ σ ⊗ 1)(δ_Z ⊗ δ_Z) = √D δ_Z δ_X†`.
pub fn check_bialg_comm(pair: &StructurePair) -> Result<Report> {
    let (z, x) = (&pair.left, &pair.right);
    let i = z.id();
    let mid = ComplexMatrix::kron_all(&[i.clone(), swap_matrix(z.dim, z.dim), i]);
    let lhs = (&(&x.delta.adjoint().kron(&x.delta.adjoint()) * &mid) * &z.delta.kron(&z.delta)).scale_real(pair.d());
    let rhs = (&z.delta * &x.delta.adjoint()).scale_real(pair.d().sqrt());
    Ok(Report::from_parts("bialg", pair.dim(), &[("bialg", lhs.max_diff(&rhs))]))
}

/// `η_Z†η_Z = η_X†η_X = D`.
pub fn check_dimension(pair: &StructurePair) -> Report {
    let loop_value = |s: &ObservableStructure| (&s.eta().adjoint() * &s.eta())[(0, 0)];
    let d = C64::new(pair.d(), 0.0);
    Report::from_parts(
        "dimension",
        pair.dim(),
        &[("Z", (loop_value(&pair.left) - d).norm()), ("X", (loop_value(&pair.right) - d).norm())],
    )
}

/// Each `K = Λ^X(k)` for a classical point `k` of Z (length `√D`) is unitary,
/// keeps sampled unbiased points of Z unbiased, respects `⊙_Z` and fixes
/// `ε_Z†` up to a phase.
pub fn check_automorphism(pair: &StructurePair, samples: usize, seed: u64) -> Result<Report> {
    let (z, x) = (&pair.left, &pair.right);
    let grid = z.unbiased_grid(samples, seed)?;
    let n = grid.len();
    let mut items = Vec::new();
    for (i, k) in z.scaled_basis()?.iter().enumerate() {
        let kk = x.lambda_map(k);
        let unitary = (&kk.adjoint() * &kk).max_diff(&z.id());
        items.push((format!("K{i} unitary"), unitary));
        let mut unbiased: f64 = 0.0;
        let mut hom: f64 = 0.0;
        for (a, alpha) in grid.iter().enumerate() {
            let beta = &grid[(7 * a + 1) % n];
            let (ka, kb) = (&kk * alpha, &kk * beta);
            unbiased = unbiased.max(z.unbiased_residual(&ka));
            hom = hom.max((&kk * &z.point_mult(alpha, beta)).max_diff(&z.point_mult(&ka, &kb)));
        }
        items.push((format!("K{i} unbiased"), unbiased));
        items.push((format!("K{i} homomorphism"), hom));
        let u = z.unit();
        let ku = &kk * &u;
        items.push((format!("K{i} unit"), norm(&u) * norm(&ku) - inner(&u, &ku).norm()));
    }
    Ok(Report::collect("automorphism", pair.dim(), items))
}

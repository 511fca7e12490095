use zxlab_core::{ComplexMatrix, C64};

use crate::report::Report;
use crate::{OracleError, Result, TOL};

/// A copy/delete pair `(δ, ε)` on `ℂ^d`, optionally remembering the
/// orthonormal basis it was built from.
#[derive(Clone, Debug)]
pub struct ObservableStructure {
    pub dim: usize,
    /// `d² × d`.
    pub delta: ComplexMatrix,
    /// `1 × d`.
    pub epsilon: ComplexMatrix,
    /// Unit-length column vectors.
    pub basis: Option<Vec<ComplexMatrix>>,
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// The swap on `ℂ^a ⊗ ℂ^b`.
pub fn swap_matrix(a: usize, b: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(a * b, a * b);
    for i in 0..a {
        for j in 0..b {
            m[(j * a + i, i * b + j)] = C64::new(1.0, 0.0);
        }
    }
    m
}

pub(crate) fn norm(v: &ComplexMatrix) -> f64 {
    v.data().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.data().iter().zip(b.data()).map(|(x, y)| x.conj() * y).sum()
}

/// Builds `(δ, ε)` copying and uniformly deleting the given vectors.
pub fn obs_from_basis(vectors: &[ComplexMatrix]) -> Result<ObservableStructure> {
    let d = vectors.len();
    if d == 0 {
        return Err(OracleError::NotOrthonormal("empty basis".into()));
    }
    for (i, v) in vectors.iter().enumerate() {
        if v.shape() != (d, 1) {
            return Err(OracleError::NotOrthonormal(format!(
                "vector {i} has shape {:?}, expected ({d}, 1)",
                v.shape()
            )));
        }
    }
    for i in 0..d {
        for j in 0..d {
            let want = if i == j { 1.0 } else { 0.0 };
            let got = inner(&vectors[i], &vectors[j]);
            if (got - C64::new(want, 0.0)).norm() > TOL {
                return Err(OracleError::NotOrthonormal(format!("⟨v{i}|v{j}⟩ = {got}")));
            }
        }
    }
    let mut delta = ComplexMatrix::zeros(d * d, d);
    let mut epsilon = ComplexMatrix::zeros(1, d);
    for v in vectors {
        delta = &delta + &(&v.kron(v) * &v.adjoint());
        epsilon = &epsilon + &v.adjoint();
    }
    Ok(ObservableStructure {
        dim: d,
        delta,
        epsilon,
        basis: Some(vectors.to_vec()),
    })
}

pub fn standard_basis(d: usize) -> Vec<ComplexMatrix> {
    (0..d)
        .map(|i| {
            let mut v = vec![zero(); d];
            v[i] = C64::new(1.0, 0.0);
            ComplexMatrix::column(&v)
        })
        .collect()
}

pub fn obs_standard(d: usize) -> ObservableStructure {
    obs_from_basis(&standard_basis(d)).expect("standard basis is orthonormal")
}

/// `F[k][j] = ω^{jk}` with `ω = e^{2πi/d}`, unnormalized.
pub fn fourier_matrix(d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    for k in 0..d {
        for j in 0..d {
            m[(k, j)] = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * ((j * k) % d) as f64 / d as f64);
        }
    }
    m
}

pub fn obs_fourier(d: usize) -> ObservableStructure {
    obs_from_hadamard(&fourier_matrix(d)).expect("Fourier matrix is a dephased Hadamard matrix")
}

/// Structure on the normalized columns of a dephased complex Hadamard matrix.
pub fn obs_from_hadamard(h: &ComplexMatrix) -> Result<ObservableStructure> {
    let (d, c) = h.shape();
    if d != c || d == 0 {
        return Err(OracleError::NotHadamard(format!("shape {:?} is not square", h.shape())));
    }
    for i in 0..d {
        for j in 0..d {
            let z = h[(i, j)];
            if (z.norm() - 1.0).abs() > TOL {
                return Err(OracleError::NotHadamard(format!("entry ({i}, {j}) = {z} is not unimodular")));
            }
            if (i == 0 || j == 0) && (z - C64::new(1.0, 0.0)).norm() > TOL {
                return Err(OracleError::NotHadamard(format!("entry ({i}, {j}) = {z}; not dephased")));
            }
        }
    }
    let cols: Vec<ComplexMatrix> = (0..d)
        .map(|j| ComplexMatrix::column(&h.col(j)).scale_real(1.0 / (d as f64).sqrt()))
        .collect();
    obs_from_basis(&cols).map_err(|e| match e {
        OracleError::NotOrthonormal(m) => OracleError::NotHadamard(format!("columns not orthogonal: {m}")),
        other => other,
    })
}

/// The induced structure on `A ⊗ B`.
pub fn obs_tensor(a: &ObservableStructure, b: &ObservableStructure) -> ObservableStructure {
    let (da, db) = (a.dim, b.dim);
    let mid = ComplexMatrix::kron_all(&[
        ComplexMatrix::identity(da),
        swap_matrix(da, db),
        ComplexMatrix::identity(db),
    ]);
    let basis = match (&a.basis, &b.basis) {
        (Some(x), Some(y)) => Some(x.iter().flat_map(|u| y.iter().map(move |v| u.kron(v))).collect()),
        _ => None,
    };
    ObservableStructure {
        dim: da * db,
        delta: &mid * &a.delta.kron(&b.delta),
        epsilon: a.epsilon.kron(&b.epsilon),
        basis,
    }
}

impl ObservableStructure {
    pub fn id(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.dim)
    }

    /// The cup `η = δ ε†`, a point of `A ⊗ A`.
    pub fn eta(&self) -> ComplexMatrix {
        &self.delta * &self.epsilon.adjoint()
    }

    pub fn unit(&self) -> ComplexMatrix {
        self.epsilon.adjoint()
    }

    pub fn basis(&self) -> Result<&[ComplexMatrix]> {
        self.basis.as_deref().ok_or(OracleError::MissingBasis)
    }

    /// Classical points rescaled to length `√D`.
    pub fn scaled_basis(&self) -> Result<Vec<ComplexMatrix>> {
        let s = (self.dim as f64).sqrt();
        Ok(self.basis()?.iter().map(|v| v.scale_real(s)).collect())
    }

    /// `a ⊙ b = δ†(a ⊗ b)`.
    pub fn point_mult(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        &self.delta.adjoint() * &a.kron(b)
    }

    /// `Λ(a) = δ†(a ⊗ 1)`.
    pub fn lambda_map(&self, a: &ComplexMatrix) -> ComplexMatrix {
        &self.delta.adjoint() * &a.kron(&self.id())
    }

    /// `a_* = (a† ⊗ 1) η`.
    pub fn conjugate_point(&self, a: &ComplexMatrix) -> ComplexMatrix {
        &a.adjoint().kron(&self.id()) * &self.eta()
    }

    pub fn classical_residual(&self, z: &ComplexMatrix) -> f64 {
        let copy = (&self.delta * z).max_diff(&z.kron(z));
        let delete = ((&self.epsilon * z)[(0, 0)] - C64::new(1.0, 0.0)).norm();
        let selfconj = self.conjugate_point(z).max_diff(z);
        copy.max(delete).max(selfconj)
    }

    /// Unit-length classical point: copied by `δ`, deleted by `ε`, self-conjugate.
    pub fn is_classical(&self, z: &ComplexMatrix) -> bool {
        self.classical_residual(z) <= TOL
    }

    /// `|D·(â ⊙ â_*) − ε†|` for `â = a/|a|`; infinite for the zero vector.
    pub fn unbiased_residual(&self, a: &ComplexMatrix) -> f64 {
        let n = norm(a);
        if n <= TOL {
            return f64::INFINITY;
        }
        let a = a.scale_real(1.0 / n);
        self.point_mult(&a, &self.conjugate_point(&a))
            .scale_real(self.dim as f64)
            .max_diff(&self.unit())
    }

    pub fn is_unbiased(&self, a: &ComplexMatrix) -> bool {
        self.unbiased_residual(a) <= TOL
    }

    /// `|⟨a|b⟩ − ε(a_* ⊙ b)|`.
    pub fn inner_product_check(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        let lhs = inner(a, b);
        let rhs = (&self.epsilon * &self.point_mult(&self.conjugate_point(a), b))[(0, 0)];
        (lhs - rhs).norm()
    }

    /// Points `Σ_k e^{iθ_k} v_k` with `θ_0 = 0` and the other angles on a
    /// 16-step grid; length `√D`. Every grid point is listed when there are
    /// at most `limit`, otherwise the first `limit` in a fixed shuffle.
    pub fn unbiased_grid(&self, limit: usize, seed: u64) -> Result<Vec<ComplexMatrix>> {
        use rand::{Rng, SeedableRng};
        let basis = self.basis()?;
        let d = self.dim;
        let free = d.saturating_sub(1) as u32;
        let total = 16usize.checked_pow(free).unwrap_or(usize::MAX);
        let indices: Vec<usize> = if total <= limit {
            (0..total).collect()
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..limit).map(|_| (0..free).fold(0, |k, _| k * 16 + rng.gen_range(0..16))).collect()
        };
        Ok(indices
            .into_iter()
            .map(|mut k| {
                let mut v = basis[0].clone();
                for b in basis.iter().skip(1).rev() {
                    let t = (k % 16) as f64 * std::f64::consts::PI / 8.0;
                    k /= 16;
                    v = &v + &b.scale(C64::from_polar(1.0, t));
                }
                v
            })
            .collect())
    }

    /// Coassociativity, cocommutativity, counit, speciality and Frobenius.
    pub fn check(&self) -> Report {
        let d = self.dim;
        let (i, dl) = (self.id(), &self.delta);
        let coassoc = (&dl.kron(&i) * dl).max_diff(&(&i.kron(dl) * dl));
        let cocomm = (&swap_matrix(d, d) * dl).max_diff(dl);
        let counit = (&self.epsilon.kron(&i) * dl)
            .max_diff(&i)
            .max((&i.kron(&self.epsilon) * dl).max_diff(&i));
        let special = (&dl.adjoint() * dl).max_diff(&i);
        let dd = dl * &dl.adjoint();
        let frob = dd
            .max_diff(&(&dl.adjoint().kron(&i) * &i.kron(dl)))
            .max(dd.max_diff(&(&i.kron(&dl.adjoint()) * &dl.kron(&i))));
        Report::from_parts(
            "structure",
            d,
            &[
                ("coassociativity", coassoc),
                ("cocommutativity", cocomm),
                ("counit", counit),
                ("speciality", special),
                ("frobenius", frob),
            ],
        )
    }
}

/// `f: A → B` returns the transpose `B → A` and the conjugate `A → B`
/// taken with respect to the cups of `a` and `b`.
pub fn transpose_conjugate(
    f: &ComplexMatrix,
    a: &ObservableStructure,
    b: &ObservableStructure,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if f.shape() != (b.dim, a.dim) {
        return Err(OracleError::DimensionMismatch {
            left: f.rows(),
            right: b.dim,
        });
    }
    let (ia, ib) = (a.id(), b.id());
    let lift = ib.kron(&a.eta());
    let mid = ComplexMatrix::kron_all(&[ib.clone(), f.clone(), ia.clone()]);
    let cap = b.eta().adjoint().kron(&ia);
    let t = &(&cap * &mid) * &lift;
    let conj = t.adjoint();
    Ok((t, conj))
}

use std::fmt;
use std::str::FromStr;

use zxlab_core::{ComplexMatrix, C64};

use crate::group::check_phase_group;
use crate::pair::*;
use crate::report::Report;
use crate::structure::{obs_from_hadamard, obs_standard};
use crate::{OracleError, Result};

/// Unbiased points sampled by the quantified checks.
pub const GRID_SAMPLES: usize = 256;

/// The dephased 4×4 Hadamard family
/// `[[1,1,1,1],[1,ie^{ix},−1,−ie^{ix}],[1,−1,1,−1],[1,−ie^{ix},−1,ie^{ix}]]`.
pub fn f4_matrix(x: f64) -> ComplexMatrix {
    let e = C64::from_polar(1.0, x) * C64::new(0.0, 1.0);
    let (o, m) = (C64::new(1.0, 0.0), C64::new(-1.0, 0.0));
    ComplexMatrix::from_rows(&[vec![o, o, o, o], vec![o, e, m, -e], vec![o, m, o, m], vec![o, -e, m, e]])
}

/// Standard basis paired with a second basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// Standard and Fourier bases of `ℂ^d`.
    Fourier(usize),
    /// Standard basis and the columns of `F₄(x)`.
    F4(f64),
}

impl Family {
    pub fn pair(&self) -> Result<StructurePair> {
        match *self {
            Family::Fourier(d) if d == 0 || d > 8 => Err(OracleError::Unsupported(format!("dimension {d} outside 1..=8"))),
            Family::Fourier(d) => StructurePair::new(obs_standard(d), crate::structure::obs_fourier(d)),
            Family::F4(x) => StructurePair::new(obs_standard(4), obs_from_hadamard(&f4_matrix(x))?),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Fourier(d) => write!(f, "fourier(d={d})"),
            Family::F4(x) => write!(f, "f4(x={x})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Structure,
    Complementary,
    Hopf,
    HopfTrivial,
    Coherent,
    Closed,
    Oper,
    Comul,
    Bialg,
    Automorphism,
    PhaseGroup,
    Dimension,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::Structure,
        Check::Complementary,
        Check::Hopf,
        Check::HopfTrivial,
        Check::Coherent,
        Check::Closed,
        Check::Oper,
        Check::Comul,
        Check::Bialg,
        Check::Automorphism,
        Check::PhaseGroup,
        Check::Dimension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Structure => "structure",
            Check::Complementary => "complementary",
            Check::Hopf => "hopf",
            Check::HopfTrivial => "hopf-trivial",
            Check::Coherent => "coherent",
            Check::Closed => "closed",
            Check::Oper => "oper",
            Check::Comul => "comul",
            Check::Bialg => "bialg",
            Check::Automorphism => "automorphism",
            Check::PhaseGroup => "phase-group",
            Check::Dimension => "dimension",
        }
    }

    /// Runs on `pair`; the structure and phase-group checks cover both sides.
    pub fn run(self, pair: &StructurePair, seed: u64) -> Result<Report> {
        let both = |name: &str, a: Report, b: Report| {
            let mut w: Vec<String> = a.witnesses.iter().map(|s| format!("Z {s}")).collect();
            w.extend(b.witnesses.iter().map(|s| format!("X {s}")));
            Report::new(name, pair.dim(), a.residual.max(b.residual), w)
        };
        Ok(match self {
            Check::Structure => both("structure", pair.left().check(), pair.right().check()),
            Check::Complementary => check_complementary(pair)?,
            Check::Hopf => check_hopf(pair, true),
            Check::HopfTrivial => check_hopf(pair, false),
            Check::Coherent => check_coherent(pair),
            Check::Closed => check_closed(pair)?,
            Check::Oper => check_oper_comm(pair)?,
            Check::Comul => check_comul_comm(pair)?,
            Check::Bialg => check_bialg_comm(pair)?,
            Check::Automorphism => check_automorphism(pair, GRID_SAMPLES, seed)?,
            Check::PhaseGroup => both(
                "phase-group",
                check_phase_group(pair.left(), GRID_SAMPLES, seed)?,
                check_phase_group(pair.right(), GRID_SAMPLES, seed)?,
            ),
            Check::Dimension => check_dimension(pair),
        })
    }
}

impl FromStr for Check {
    type Err = OracleError;
    fn from_str(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| OracleError::Unsupported(format!("unknown check `{s}`")))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Comma-separated check names, or `all`.
pub fn parse_checks(s: &str) -> Result<Vec<Check>> {
    if s.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    s.split(',').map(|t| t.trim().parse()).collect()
}

/// Runs `checks` in the given order.
pub fn run_checks(pair: &StructurePair, checks: &[Check], seed: u64) -> Result<Vec<Report>> {
    checks.iter().map(|c| c.run(pair, seed)).collect()
}

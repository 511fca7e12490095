//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use zxlab_core::frontends::*;
use zxlab_core::rewrite::{apply_in_place, check_rule_sound, find_matches, simplify, RuleId, Strategy};
use zxlab_core::{equal_matrices, evaluate, Color, CompareMode, ComplexMatrix, Diagram, Phase, C64};
use zxlab_oracle::{
    check_automorphism, check_bialg_comm, check_closed, check_coherent, check_complementary, check_comul_comm,
    check_hopf, check_oper_comm, check_phase_group, coherify, obs_fourier, obs_standard, Family, Report, GRID_SAMPLES,
};

/// Matrix comparisons.
const TOL: f64 = 1e-9;
/// Projector identities of the state-transfer check.
const PROJ_TOL: f64 = 1e-12;
const SOUNDNESS_TRIALS: usize = 200;
const SOUNDNESS_SEED: u64 = 2024;
const ORACLE_SEED: u64 = 7;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn circ(text: &str) -> Diagram {
    compile_circuit(&parse_circuit(text).expect("circuit parses"))
}

fn eval(d: &Diagram) -> Result<ComplexMatrix, String> {
    evaluate(d).map_err(|e| e.to_string())
}

fn proportional(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<bool, String> {
    equal_matrices(a, b, CompareMode::UpToGlobalScalar, TOL)
        .map(|r| r.equal)
        .map_err(|e| e.to_string())
}

fn zx(x: f64) -> ComplexMatrix {
    ComplexMatrix::diag(&[c(1.0, 0.0), C64::from_polar(1.0, x)])
}

fn xr(x: f64) -> ComplexMatrix {
    let h = ComplexMatrix::from_real(2, 2, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
    &(&h * &zx(x)) * &h
}

fn gate_algebra() -> Outcome {
    let id2 = Diagram::identity(2);
    for (name, text) in [("CNOT;CNOT", "qubits 2\ncnot 0 1\ncnot 0 1"), ("CZ;CZ", "qubits 2\ncz 0 1\ncz 0 1")] {
        let s = simplify(&circ(text), Strategy::Basic);
        ensure(s.isomorphic(&id2), format!("{name} did not reduce to the identity"))?;
        ensure(s.scalar().is_one(), format!("{name} left scalar {:?}", s.scalar()))?;
    }
    let mut d = circ("qubits 2\ncnot 0 1\ncnot 1 0\ncnot 0 1");
    let m = find_matches(&d, RuleId::Bialgebra);
    ensure(!m.is_empty(), "no bialgebra site in the triple CNOT")?;
    apply_in_place(&mut d, &m[0]).map_err(|e| e.to_string())?;
    let s = simplify(&d, Strategy::Basic);
    let mut swap = Diagram::new(2, 2);
    let (i, o) = (swap.inputs().to_vec(), swap.outputs().to_vec());
    swap.add_edge(i[0], o[1]).unwrap();
    swap.add_edge(i[1], o[0]).unwrap();
    ensure(s.isomorphic(&swap), "triple CNOT did not reduce to the swap")?;
    Ok("CNOT² = CZ² = id with scalar 1; 3×CNOT = SWAP via one bialgebra step".into())
}

fn qft() -> Outcome {
    let input = Diagram::spider(Color::X, Phase::pi(), 0, 1).compose_par(&Diagram::spider(Color::X, Phase::zero(), 0, 1));
    let d = input
        .compose_seq(&circ("qubits 2\nh 1\nczp 0 1 1/2\nh 0"))
        .map_err(|e| e.to_string())?;
    let s = simplify(&d, Strategy::Full);
    let comps = s.components().len();
    ensure(comps == 2, format!("{comps} components after simplification"))?;
    let want = ComplexMatrix::column(&[c(1.0, 0.0), c(-1.0, 0.0)])
        .kron(&ComplexMatrix::column(&[c(1.0, 0.0), c(0.0, 1.0)]));
    ensure(proportional(&eval(&s)?, &want)?, "state is not ∝ (|0⟩−|1⟩)⊗(|0⟩+i|1⟩)")?;
    Ok("QFT₂|10⟩ separates into 2 components ∝ (|0⟩−|1⟩)⊗(|0⟩+i|1⟩)".into())
}

fn one_way() -> Outcome {
    let p = parse_pattern("in 1; in 2; out 1; out 4; N 3; N 4; E 1 3; E 2 3; E 3 4; M 2 0; M 3 0").map_err(|e| e.to_string())?;
    let s = simplify(&compile_pattern(&p), Strategy::Full);
    ensure(s.isomorphic_up_to_scalar(&circ("qubits 2\ncnot 0 1")), "CNOT pattern is not the CNOT diagram")?;
    let (a, b, g) = (PI / 4.0, PI / 2.0, PI / 3.0);
    let euler = parse_pattern(
        "in 1; out 5; N 2; N 3; N 4; N 5; E 1 2; E 2 3; E 3 4; E 4 5; M 1 1/4; M 2 1/2; M 3 1/3; M 4 0",
    )
    .map_err(|e| e.to_string())?;
    let want = &(&zx(g) * &xr(b)) * &zx(a);
    ensure(proportional(&eval(&compile_pattern(&euler))?, &want)?, "Euler pattern is not ∝ Z_γ X_β Z_α")?;
    Ok("CNOT pattern ≅ CNOT up to scalar; Euler pattern ∝ Z_γX_βZ_α".into())
}

fn state_transfer() -> Outcome {
    let p = eval(&transfer_projector(&Phase::zero()))?;
    let want = ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    ensure(p.max_diff(&want) <= PROJ_TOL, "projector differs from diag(1,0,0,1)")?;
    ensure((&p * &p).max_diff(&p) <= PROJ_TOL, "projector is not idempotent")?;
    ensure(p.adjoint().max_diff(&p) <= PROJ_TOL, "projector is not self-adjoint")?;
    ensure(
        proportional(&eval(&transfer_protocol(&Phase::zero()))?, &ComplexMatrix::identity(2))?,
        "protocol is not ∝ I",
    )?;
    ensure(
        proportional(&eval(&transfer_protocol(&Phase::new(1, 3)))?, &zx(PI / 3.0))?,
        "decorated protocol is not ∝ diag(1, e^{iπ/3})",
    )?;
    Ok("projector = diag(1,0,0,1), P² = P = P†; protocol ∝ I; decorated ∝ diag(1,e^{iπ/3})".into())
}

fn teleportation() -> Outcome {
    for i in 0..4 {
        let (branch, correction) = teleport_branch(i).map_err(|e| e.to_string())?;
        let d = branch.compose_seq(&correction).map_err(|e| e.to_string())?;
        let s = simplify(&d, Strategy::Basic);
        ensure(s.isomorphic_up_to_scalar(&Diagram::identity(1)), format!("branch {i} is not a bare wire"))?;
        ensure(proportional(&eval(&d)?, &ComplexMatrix::identity(2))?, format!("branch {i} is not ∝ I"))?;
    }
    Ok("all four corrected branches reduce to a wire and evaluate ∝ I".into())
}

fn soundness() -> Outcome {
    let mut total = 0;
    for rule in RuleId::ALL {
        let r = check_rule_sound(rule, SOUNDNESS_TRIALS, SOUNDNESS_SEED);
        if let Some(f) = r.failures.first() {
            return Err(format!("{}: {} failures, first {:?}", rule.name(), r.failures.len(), f));
        }
        ensure(r.skipped == 0, format!("{}: {} trials skipped", rule.name(), r.skipped))?;
        ensure(r.matches_checked >= SOUNDNESS_TRIALS, format!("{}: only {} matches", rule.name(), r.matches_checked))?;
        total += r.matches_checked;
    }
    Ok(format!("{} rules × {SOUNDNESS_TRIALS} diagrams, {total} rewrites, 0 failures", RuleId::ALL.len()))
}

fn oracle_suite() -> Outcome {
    let pass = |r: zxlab_oracle::Result<Report>| r.map(|r| r.pass).map_err(|e| e.to_string());
    for d in 2..=5 {
        let p = Family::Fourier(d).pair().map_err(|e| e.to_string())?;
        let coherent = coherify(&p).map_err(|e| e.to_string())?;
        let results = [
            ("structure", p.left().check().pass && p.right().check().pass),
            ("complementary", pass(check_complementary(&p))?),
            ("hopf", check_hopf(&p, d > 2).pass),
            ("coherent", check_coherent(&coherent).pass),
            ("closed", pass(check_closed(&p))?),
            ("oper", pass(check_oper_comm(&p))?),
            ("comul", pass(check_comul_comm(&p))?),
            ("bialg", pass(check_bialg_comm(&p))?),
        ];
        for (name, ok) in results {
            ensure(ok, format!("fourier d={d}: {name} failed"))?;
        }
    }
    let f4 = Family::F4(1.0).pair().map_err(|e| e.to_string())?;
    ensure(pass(check_complementary(&f4))?, "F₄(1) not complementary")?;
    ensure(check_coherent(&f4).pass, "F₄(1) not coherent")?;
    let families = [
        Family::Fourier(2),
        Family::Fourier(3),
        Family::Fourier(4),
        Family::Fourier(5),
        Family::F4(0.0),
        Family::F4(1.0),
        Family::F4(PI / 3.0),
    ];
    for f in families {
        let p = f.pair().map_err(|e| e.to_string())?;
        let v = [
            pass(check_closed(&p))?,
            pass(check_oper_comm(&p))?,
            pass(check_comul_comm(&p))?,
            pass(check_bialg_comm(&p))?,
        ];
        ensure(v.iter().all(|x| *x == v[0]), format!("{f}: predicates disagree {v:?}"))?;
        if f == Family::F4(1.0) {
            ensure(!v[0], "F₄(1) unexpectedly closed")?;
        }
    }
    Ok("standard/Fourier d=2..5 pass all laws; F₄(1) complementary, coherent, not closed; predicates agree".into())
}

fn phase_group() -> Outcome {
    for os in [obs_standard(2), obs_fourier(2), obs_fourier(3)] {
        let r = check_phase_group(&os, GRID_SAMPLES, ORACLE_SEED).map_err(|e| e.to_string())?;
        ensure(r.pass, format!("d={}: {:?}", os.dim, r.witnesses))?;
    }
    for d in [2, 3] {
        let p = Family::Fourier(d).pair().map_err(|e| e.to_string())?;
        let r = check_automorphism(&p, GRID_SAMPLES, ORACLE_SEED).map_err(|e| e.to_string())?;
        ensure(r.pass, format!("automorphisms d={d}: {:?}", r.witnesses))?;
    }
    let p = Family::Fourier(2).pair().map_err(|e| e.to_string())?;
    let k = p.right().lambda_map(&p.left().scaled_basis().map_err(|e| e.to_string())?[1]);
    for step in 0..16 {
        let a = step as f64 * PI / 8.0;
        let point = |t: f64| ComplexMatrix::column(&[c(1.0, 0.0), C64::from_polar(1.0, t)]);
        let got = &k * &point(a);
        let want = point(-a).scale(C64::from_polar(1.0, a));
        ensure(got.max_diff(&want) <= TOL, format!("X does not send Z_{a} to Z_{}", -a))?;
    }
    Ok("phase groups of qubit and d=3 structures; Λ monoid iso; X: Z_α ↦ Z_−α".into())
}

fn clusters() -> Outcome {
    let (a, b) = (cluster_by_cz(4), cluster_by_fusion(4));
    let (sa, sb) = (simplify(&a, Strategy::Full), simplify(&b, Strategy::Full));
    ensure(sa.isomorphic(&sb), "simplified clusters are not isomorphic")?;
    ensure(proportional(&eval(&a)?, &eval(&b)?)?, "cluster matrices differ")?;
    Ok("CZ-built and fusion-built 4-clusters simplify to isomorphic diagrams".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("gate algebra", gate_algebra),
        ("QFT simulation", qft),
        ("one-way patterns", one_way),
        ("state transfer", state_transfer),
        ("teleportation", teleportation),
        ("rule soundness", soundness),
        ("oracle axioms", oracle_suite),
        ("phase group", phase_group),
        ("cluster states", clusters),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS {} {name}: {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! The check runners: each turns one claim about the model into a
//! deterministic pass/fail row.
//!
//! Residual conventions:
//! * numeric eigen checks: `|(Op psi)(x) - kappa psi(x)| / max(|psi(x)|, 1e-30)`
//!   on the gauge-normalized wavefunction, the worst value over all sampled
//!   points and states;
//! * commutator checks: `max coeff |[A,B]f| / max(1, |A B f|, |B A f|)` on
//!   seeded polynomial test jets (sup over surviving jet coefficients);
//! * exact kinds compare rational objects for equality and never use a
//!   tolerance; their reported residual is an `f64` rendering of the largest
//!   mismatching coefficient (zero on pass).
//!
//! Tolerances follow from worst-case rounding of the jet contractions
//! involved: 1e-8 for single second-order applications in double precision,
//! 1e-6 for nested commutators (two applications), 1e-3 as the detection
//! threshold for commutators that must not vanish.
//!
//! Every sample is drawn from [`SplitMix64`]
//! sub-streams of the check seed, so reports are reproducible bit for bit
//! (wall-clock fields aside) from the spec alone.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use num::{One, Signed, ToPrimitive, Zero};

use crate::fieldop::FieldDiffOp;
use crate::jet::{Jet, JetPoint};
use crate::model::{
    self, build_gauged_ops, decompose_generators, eigenfunction, gauged_parabolic_vars,
    recompose_generators, spectrum, y1_tridiagonal, GaugedOps, ModelParams, QuantumNumbers,
    System,
};
use crate::multi_index::MultiIndex;
use crate::orthopoly::{jacobi, laguerre};
use crate::poly::MultiPoly;
use crate::polyop::PolyDiffOp;
use crate::rational::{binom_u32, rat, rint, Rational};

use super::report::{CheckKind, CheckParams, CheckReport, CheckSpec, CheckStatus, SuiteReport};
use super::rng::SplitMix64;

/// Scope shared by every check of one suite.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n: usize,
    pub gamma: Rational,
    pub p: Vec<Rational>,
    pub qmax: u32,
    pub points: u32,
    pub seed: u64,
    pub tol_numeric: f64,
    pub tol_commutator: f64,
    pub tol_nonzero: f64,
}

impl SuiteConfig {
    pub fn new(n: usize, gamma: Rational, p: Vec<Rational>, seed: u64) -> Self {
        SuiteConfig {
            n,
            gamma,
            p,
            qmax: 4,
            points: 20,
            seed,
            tol_numeric: 1e-8,
            tol_commutator: 1e-6,
            tol_nonzero: 1e-3,
        }
    }

    fn params(&self) -> Result<ModelParams, String> {
        ModelParams::new(self.n, self.gamma.clone(), self.p.clone()).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteSelector {
    All,
    Exact,
    Numeric,
    Commutators,
    Tridiagonal,
}

struct Outcome {
    pass: bool,
    worst: f64,
    witness: Option<String>,
}

impl Outcome {
    fn clean() -> Self {
        Outcome {
            pass: true,
            worst: 0.0,
            witness: None,
        }
    }

    /// Numeric accumulation: keep the worst residual and the first witness
    /// at or beyond the tolerance.
    fn observe(&mut self, residual: f64, tolerance: f64, witness: impl Fn() -> String) {
        if residual > self.worst {
            self.worst = residual;
        }
        if residual > tolerance && self.pass {
            self.pass = false;
            self.witness = Some(witness());
        }
    }

    /// Exact accumulation: any nonzero mismatch fails.
    fn observe_exact(&mut self, mismatch: f64, witness: impl Fn() -> String) {
        if mismatch > self.worst {
            self.worst = mismatch;
        }
        if mismatch != 0.0 && self.pass {
            self.pass = false;
            self.witness = Some(witness());
        }
    }
}

pub fn run_check(spec: &CheckSpec) -> CheckReport {
    let start = Instant::now();
    let result = if spec.kind.is_exact() && spec.tolerance != 0.0 {
        Err(format!(
            "exact kind {:?} must run with tolerance 0, got {}",
            spec.kind, spec.tolerance
        ))
    } else {
        dispatch(spec)
    };
    let (status, worst, witness) = match result {
        Ok(out) => (
            if out.pass {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            out.worst,
            out.witness,
        ),
        Err(msg) => (CheckStatus::Error, 0.0, Some(msg)),
    };
    CheckReport {
        name: spec.name.clone(),
        kind: spec.kind,
        params: spec.params.clone(),
        seed: spec.seed,
        tolerance: spec.tolerance,
        status,
        worst_residual: worst,
        witness,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

pub fn run_suite(specs: &[CheckSpec]) -> SuiteReport {
    SuiteReport::from_checks(specs.iter().map(run_check).collect())
}

fn dispatch(spec: &CheckSpec) -> Result<Outcome, String> {
    match spec.kind {
        CheckKind::ExactEigen => run_exact_eigen(spec),
        CheckKind::NumericEigen => run_numeric_eigen(spec),
        CheckKind::CommutatorZero => run_commutator_zero(spec),
        CheckKind::CommutatorNonzero => run_commutator_nonzero(spec),
        CheckKind::CommutatorIdentity => run_commutator_identity(spec),
        CheckKind::Tridiagonal => run_tridiagonal(spec),
        CheckKind::SpectrumSet => run_spectrum_set(spec),
        CheckKind::Degeneracy => run_degeneracy(spec),
        CheckKind::GeneratorDecomposition => run_generator_decomposition(spec),
        CheckKind::Mutation => run_mutation(spec),
    }
}

fn spec_params(spec: &CheckSpec) -> Result<ModelParams, String> {
    ModelParams::new(spec.params.n, spec.params.gamma.clone(), spec.params.p.clone())
        .map_err(|e| e.to_string())
}

/// Largest coefficient of an exact jet or polynomial difference, rendered
/// as a double for the report.
fn rational_sup<'a>(coeffs: impl Iterator<Item = &'a Rational>) -> f64 {
    coeffs
        .map(|q| q.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

fn poly_mismatch(a: &MultiPoly, b: &MultiPoly) -> f64 {
    let diff = a.checked_sub(b).expect("same variable list");
    rational_sup(diff.terms().map(|(_, c)| c))
}

fn jet_mismatch(a: &Jet<Rational>, b: &Jet<Rational>) -> f64 {
    let diff = a.sub(b);
    rational_sup(diff.terms().map(|(_, c)| c))
}

// ---------------------------------------------------------------------------
// exact gauged eigen checks

fn run_exact_eigen(spec: &CheckSpec) -> Result<Outcome, String> {
    let params = spec_params(spec)?;
    if spec.params.system != Some(System::Parabolic) {
        return Err("exact-eigen runs on the parabolic (gauged) family".into());
    }
    let mut out = Outcome::clean();
    for qn in model::states_up_to(&params, System::Parabolic, spec.params.qmax) {
        let rec = spectrum(&params, &qn).map_err(|e| e.to_string())?;
        let ops = build_gauged_ops(&params, &rec.m).map_err(|e| e.to_string())?;
        let ef = eigenfunction(&params, &qn).map_err(|e| e.to_string())?;
        let poly = &ef.polypart;
        let (n1, n2) = match &qn {
            QuantumNumbers::Parabolic { n1, n2, .. } => (*n1, *n2),
            _ => unreachable!(),
        };
        let m_top = rec.m.last().unwrap().clone();
        // core eigenvalues: -2 N - m - 1 in each Laguerre sector
        let plus_expect = poly.scale(&(rint(-2 * n1 as i64) - &m_top - rint(1)));
        let plus_got = ops.q_plus_core.apply(poly).map_err(|e| e.to_string())?;
        out.observe_exact(poly_mismatch(&plus_got, &plus_expect), || {
            format!("state {qn}: Laguerre-sector core in s")
        });
        let minus_expect = poly.scale(&(rint(-2 * n2 as i64) - &m_top - rint(1)));
        let minus_got = ops.q_minus_core.apply(poly).map_err(|e| e.to_string())?;
        out.observe_exact(poly_mismatch(&minus_got, &minus_expect), || {
            format!("state {qn}: Laguerre-sector core in t")
        });
        // combined: Q0~ P = 2 gamma P after sqrt(-2E) = gamma/D
        let prefactor = GaugedOps::prefactor(&rec.sqrt_minus_2e);
        let q0_got = plus_got
            .checked_add(&minus_got)
            .unwrap()
            .scale(&(prefactor / rint(2)));
        let q0_expect = poly.scale(&(rint(2) * params.gamma()));
        out.observe_exact(poly_mismatch(&q0_got, &q0_expect), || {
            format!("state {qn}: combined conformal eigenvalue")
        });
        for (idx, ztilde) in ops.z_tilde.iter().enumerate() {
            let got = ztilde.apply(poly).map_err(|e| e.to_string())?;
            let expect = poly.scale(&rec.k[idx]);
            out.observe_exact(poly_mismatch(&got, &expect), || {
                format!("state {qn}: angular sector {}", idx + 1)
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// numeric eigen checks in the original coordinates

const PYTHAGOREAN: &[(i64, i64, i64)] = &[
    (3, 4, 5),
    (5, 12, 13),
    (8, 15, 17),
    (7, 24, 25),
    (20, 21, 29),
    (9, 40, 41),
];

fn exact_angle(idx: usize) -> (Rational, Rational) {
    let (a, b, c) = PYTHAGOREAN[idx % PYTHAGOREAN.len()];
    (rat(a, c), rat(b, c))
}

const EXACT_RADII: &[(i64, i64)] = &[(1, 1), (1, 2), (3, 2), (2, 1), (5, 2), (2, 3)];

fn exact_parabolic_point(n: usize, idx: usize) -> Arc<JetPoint<Rational>> {
    let (mn, md) = EXACT_RADII[idx % EXACT_RADII.len()];
    let (nn, nd) = EXACT_RADII[(idx + 2) % EXACT_RADII.len()];
    let mut coords = vec![rat(mn, md), rat(nn, nd)];
    coords.extend(vec![rint(0); n - 2]);
    let angles: Vec<(usize, Rational, Rational)> = (0..n - 2)
        .map(|i| {
            let (s, c) = exact_angle(idx + i);
            (2 + i, s, c)
        })
        .collect();
    JetPoint::with_angles(coords, &angles)
}

fn exact_spherical_point(n: usize, idx: usize) -> Arc<JetPoint<Rational>> {
    let (rn, rd) = EXACT_RADII[(idx + 1) % EXACT_RADII.len()];
    let mut coords = vec![rat(rn, rd)];
    coords.extend(vec![rint(0); n - 1]);
    let angles: Vec<(usize, Rational, Rational)> = (0..n - 1)
        .map(|i| {
            let (s, c) = exact_angle(idx + i);
            (1 + i, s, c)
        })
        .collect();
    JetPoint::with_angles(coords, &angles)
}

fn float_point(system: System, n: usize, rng: &mut SplitMix64) -> Arc<JetPoint<f64>> {
    match system {
        System::Parabolic => {
            let mut coords = vec![rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)];
            for _ in 0..n - 2 {
                coords.push(rng.angle());
            }
            JetPoint::real(coords)
        }
        System::Spherical => {
            let mut coords = vec![rng.uniform(0.5, 3.0)];
            for _ in 0..n - 1 {
                coords.push(rng.angle());
            }
            JetPoint::real(coords)
        }
    }
}

/// A labeled operator with the eigenvalue it must reproduce on one state.
type EigenOp = (String, FieldDiffOp, Rational);

/// The operator family of one coordinate system with per-state eigenvalues.
fn eigen_ops(
    params: &ModelParams,
    rec: &crate::model::EigenvalueRecord,
    system: System,
) -> Result<Vec<EigenOp>, String> {
    let n = params.n();
    let mut ops = Vec::new();
    match system {
        System::Parabolic => {
            ops.push((
                "H".to_string(),
                model::parabolic_h(params).map_err(|e| e.to_string())?,
                rec.energy.clone(),
            ));
            ops.push((
                "X".to_string(),
                model::parabolic_x(params).map_err(|e| e.to_string())?,
                rec.lambda.clone().expect("parabolic record"),
            ));
            for l in 1..=n - 2 {
                let k_prev = if l == 1 {
                    model::k_zero(params)
                } else {
                    rec.k[l - 2].clone()
                };
                ops.push((
                    format!("Z{l}"),
                    model::parabolic_z_resolved(params, l, &k_prev).map_err(|e| e.to_string())?,
                    rec.k[l - 1].clone(),
                ));
                ops.push((
                    format!("Z{l}-chain"),
                    model::parabolic_z_chain(params, l).map_err(|e| e.to_string())?,
                    rec.k[l - 1].clone(),
                ));
            }
        }
        System::Spherical => {
            ops.push(("H".to_string(), model::spherical_h(params), rec.energy.clone()));
            for l in 1..=n - 1 {
                let k_next = if l == n - 1 {
                    rint(0)
                } else {
                    rec.k[l].clone()
                };
                ops.push((
                    format!("Y{l}"),
                    model::spherical_y_resolved(params, l, &k_next),
                    rec.k[l - 1].clone(),
                ));
                ops.push((
                    format!("Y{l}-chain"),
                    model::spherical_y_chain(params, l),
                    rec.k[l - 1].clone(),
                ));
            }
        }
    }
    Ok(ops)
}

fn run_numeric_eigen(spec: &CheckSpec) -> Result<Outcome, String> {
    let params = spec_params(spec)?;
    let system = spec
        .params
        .system
        .ok_or_else(|| "numeric-eigen needs a coordinate system".to_string())?;
    let mut out = Outcome::clean();
    let mut rng = SplitMix64::stream(spec.seed, 1);
    for (state_idx, qn) in model::states_up_to(&params, system, spec.params.qmax)
        .into_iter()
        .enumerate()
    {
        let ef = eigenfunction(&params, &qn).map_err(|e| e.to_string())?;
        let ops = eigen_ops(&params, &ef.record, system)?;
        // float sweep
        for point_idx in 0..spec.params.points {
            let point = float_point(system, params.n(), &mut rng);
            let psi = ef.jet(&point, 2, true).map_err(|e| e.to_string())?;
            let psi0 = psi.value();
            for (label, op, kappa) in &ops {
                let got = op.apply(&psi).map_err(|e| e.to_string())?.value();
                let expect = f64::from_rational_ref(kappa) * psi0;
                let resid = (got - expect).abs() / psi0.abs().max(1e-30);
                out.observe(resid, spec.tolerance, || {
                    format!("state {qn}, op {label}, float point {point_idx}, residual {resid:.3e}")
                });
            }
        }
        // one exact point per state: residual must vanish identically
        let point = match system {
            System::Parabolic => exact_parabolic_point(params.n(), state_idx),
            System::Spherical => exact_spherical_point(params.n(), state_idx),
        };
        let psi = ef.jet(&point, 3, true).map_err(|e| e.to_string())?;
        for (label, op, kappa) in &ops {
            let got = op.apply(&psi).map_err(|e| e.to_string())?;
            let expect = psi.truncate(got.order()).scale_rat(kappa);
            out.observe_exact(jet_mismatch(&got, &expect), || {
                format!("state {qn}, op {label}, exact point {state_idx}")
            });
        }
    }
    Ok(out)
}

trait FromRationalRef {
    fn from_rational_ref(q: &Rational) -> f64;
}

impl FromRationalRef for f64 {
    fn from_rational_ref(q: &Rational) -> f64 {
        q.to_f64().expect("rational in float range")
    }
}

// ---------------------------------------------------------------------------
// commutator checks on seeded polynomial test jets

/// Random polynomial of total degree <= 4 with rational coefficients in
/// [-5, 5]: six terms, each built by distributing `below(5)` degree units
/// over the variables.
fn random_poly(rng: &mut SplitMix64, vars: &Arc<Vec<String>>) -> MultiPoly {
    let arity = vars.len();
    let mut poly = MultiPoly::zero(vars.clone());
    for _ in 0..6 {
        let deg = rng.below(5) as usize;
        let mut exps = vec![0u32; arity];
        for _ in 0..deg {
            exps[rng.below(arity as u64) as usize] += 1;
        }
        poly.add_term(MultiIndex::new(exps), rng.rational_coeff());
    }
    poly
}

fn cartesian_float_point(rng: &mut SplitMix64, n: usize) -> Arc<JetPoint<f64>> {
    JetPoint::cartesian((0..n).map(|_| rng.coordinate()).collect())
}

/// Pairs whose commutator must vanish, per family selector.
fn commuting_family(
    params: &ModelParams,
    family: &str,
    free_a: &Rational,
    free_f: &Rational,
) -> Result<Vec<(String, FieldDiffOp, FieldDiffOp)>, String> {
    let n = params.n();
    let mut pairs = Vec::new();
    match family {
        "angular-momentum" => {
            let h = model::cartesian_h(params);
            for a in 0..n {
                for b in a + 1..n {
                    pairs.push((
                        format!("[H, L{}{}]", a + 1, b + 1),
                        h.clone(),
                        model::angular_momentum(n, a, b),
                    ));
                }
            }
        }
        "runge-lenz" => {
            let h = model::cartesian_h(params);
            for i in 0..n {
                pairs.push((
                    format!("[H, A{}]", i + 1),
                    h.clone(),
                    model::runge_lenz(params, i).map_err(|e| e.to_string())?,
                ));
            }
        }
        "parabolic-family" => {
            let h = model::cartesian_h(params);
            let x = model::cartesian_x(params);
            let zs: Vec<FieldDiffOp> = (1..=n - 2)
                .map(|l| model::cartesian_z(params, l))
                .collect();
            pairs.push(("[H, X]".to_string(), h.clone(), x.clone()));
            for (i, z) in zs.iter().enumerate() {
                pairs.push((format!("[H, Z{}]", i + 1), h.clone(), z.clone()));
                pairs.push((format!("[X, Z{}]", i + 1), x.clone(), z.clone()));
                for (j, z2) in zs.iter().enumerate().skip(i + 1) {
                    pairs.push((
                        format!("[Z{}, Z{}]", i + 1, j + 1),
                        z.clone(),
                        z2.clone(),
                    ));
                }
            }
        }
        "spherical-family" => {
            let h = model::cartesian_h(params);
            let ys: Vec<FieldDiffOp> = (1..=n - 1)
                .map(|p| model::cartesian_y(params, p))
                .collect();
            for (i, y) in ys.iter().enumerate() {
                pairs.push((format!("[H, Y{}]", i + 1), h.clone(), y.clone()));
                for (j, y2) in ys.iter().enumerate().skip(i + 1) {
                    pairs.push((
                        format!("[Y{}, Y{}]", i + 1, j + 1),
                        y.clone(),
                        y2.clone(),
                    ));
                }
            }
        }
        "cross-family" => {
            let y1 = model::cartesian_y(params, 1);
            for l in 1..=n - 2 {
                pairs.push((
                    format!("[Y1, Z{l}]"),
                    y1.clone(),
                    model::cartesian_z(params, l),
                ));
            }
        }
        "n3-pairs" => {
            for (a, f) in [
                (rint(1), rint(1)),
                (rint(1), free_f.clone()),
                (free_a.clone(), rint(1)),
                (free_a.clone(), free_f.clone()),
            ] {
                let sets =
                    model::commuting_pairs_n3(params, &a, &f).map_err(|e| e.to_string())?;
                for (i, (x1, x2)) in sets.into_iter().enumerate() {
                    pairs.push((format!("set{} (a={a}, f={f})", i + 1), x1, x2));
                }
            }
        }
        other => return Err(format!("unknown commutator family `{other}`")),
    }
    Ok(pairs)
}

/// What a commutator should equal on a test jet (zero when absent).
type CommutatorRhs<'a> = &'a dyn Fn(&Jet<f64>) -> Result<Jet<f64>, String>;

fn commutator_sweep(
    spec: &CheckSpec,
    pairs: &[(String, FieldDiffOp, FieldDiffOp)],
    identity_rhs: Option<CommutatorRhs<'_>>,
) -> Result<Outcome, String> {
    let n = spec.params.n;
    let vars = model::cartesian_vars(n);
    let mut out = Outcome::clean();
    let mut rng = SplitMix64::stream(spec.seed, 2);
    for jet_idx in 0..spec.params.points {
        let point = cartesian_float_point(&mut rng, n);
        let poly = random_poly(&mut rng, &vars);
        let f: Jet<f64> = Jet::lift_poly(&poly, &point, 6).map_err(|e| e.to_string())?;
        for (label, a, b) in pairs {
            let bf = b.apply(&f).map_err(|e| e.to_string())?;
            let ab = a.apply(&bf).map_err(|e| e.to_string())?;
            let af = a.apply(&f).map_err(|e| e.to_string())?;
            let ba = b.apply(&af).map_err(|e| e.to_string())?;
            let mut delta = ab.sub(&ba);
            let mut scale = ab.max_abs().max(ba.max_abs()).max(1.0);
            if let Some(rhs) = identity_rhs {
                // rhs yields what [A, B] f should equal
                let r = rhs(&f)?;
                let r = r.truncate(delta.order());
                scale = scale.max(r.max_abs());
                delta = delta.sub(&r);
            }
            let resid = delta.max_abs() / scale;
            out.observe(resid, spec.tolerance, || {
                format!("{label}, test jet {jet_idx}, residual {resid:.3e}")
            });
        }
    }
    Ok(out)
}

fn run_commutator_zero(spec: &CheckSpec) -> Result<Outcome, String> {
    let params = spec_params(spec)?;
    let pairs = commuting_family(&params, &spec.params.detail, &rat(2, 3), &rat(5, 7))?;
    commutator_sweep(spec, &pairs, None)
}

fn run_commutator_identity(spec: &CheckSpec) -> Result<Outcome, String> {
    // [A_i, A_j] + 2 H L_ij = 0 over all pairs, pure Coulomb case.
    let params = spec_params(spec)?;
    let n = params.n();
    let h = model::cartesian_h(&params);
    let mut out = Outcome::clean();
    for i in 0..n {
        for j in i + 1..n {
            let ai = model::runge_lenz(&params, i).map_err(|e| e.to_string())?;
            let aj = model::runge_lenz(&params, j).map_err(|e| e.to_string())?;
            let lij = model::angular_momentum(n, i, j);
            let h = h.clone();
            let rhs = move |f: &Jet<f64>| -> Result<Jet<f64>, String> {
                // -2 H L_ij f: moved to the left side as delta + 2 H L f
                Ok(h.apply(&lij.apply(f).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?
                    .scale_rat(&rint(-2)))
            };
            let pairs = vec![(format!("[A{}, A{}]", i + 1, j + 1), ai, aj)];
            let sub = commutator_sweep(spec, &pairs, Some(&rhs))?;
            out.worst = out.worst.max(sub.worst);
            if !sub.pass && out.pass {
                out.pass = false;
                out.witness = sub.witness;
            }
        }
    }
    Ok(out)
}

fn run_commutator_nonzero(spec: &CheckSpec) -> Result<Outcome, String> {
    let params = spec_params(spec)?;
    let (a, b) = match spec.params.detail.as_str() {
        "y2-z1" => (
            model::cartesian_y(&params, 2),
            model::cartesian_z(&params, 1),
        ),
        "y1-x" => (model::cartesian_y(&params, 1), model::cartesian_x(&params)),
        other => return Err(format!("unknown nonzero pair `{other}`")),
    };
    let pairs = vec![(spec.params.detail.clone(), a, b)];
    // reuse the sweep with tolerance +inf to collect the max residual
    let mut probe = spec.clone();
    probe.tolerance = f64::INFINITY;
    let swept = commutator_sweep(&probe, &pairs, None)?;
    let detected = swept.worst >= spec.tolerance;
    Ok(Outcome {
        pass: detected,
        worst: swept.worst,
        witness: if detected {
            None
        } else {
            Some(format!(
                "largest residual {:.3e} stayed below the detection threshold {:.1e}",
                swept.worst, spec.tolerance
            ))
        },
    })
}

// ---------------------------------------------------------------------------
// tridiagonal ladder action

fn run_tridiagonal(spec: &CheckSpec) -> Result<Outcome, String> {
    let n = spec.params.n;
    let nmax = spec.params.qmax.min(6);
    let m_values = [
        rint(0),
        rint(1),
        rat(1, 2),
        rat(3, 2),
        rint(2),
        rat(5, 2),
        rat(1, 3),
        rat(7, 3),
        rint(3),
        rat(9, 4),
    ];
    let vars = gauged_parabolic_vars(3);
    let mut out = Outcome::clean();
    let basis = |n1: i64, n2: i64, m: &Rational| -> MultiPoly {
        laguerre(n1, m, "s")
            .embed(vars.clone())
            .unwrap()
            .checked_mul(&laguerre(n2, m, "t").embed(vars.clone()).unwrap())
            .unwrap()
    };
    for m in &m_values {
        let ladder = model::gauged_y1(3, m, &vars);
        for n1 in 0..=nmax {
            for n2 in 0..=nmax {
                let p = basis(n1 as i64, n2 as i64, m);
                let got = ladder.apply(&p).map_err(|e| e.to_string())?;
                let (cm, c0, cp) = y1_tridiagonal(n1, n2, m);
                let expect = basis(n1 as i64 - 1, n2 as i64 + 1, m)
                    .scale(&cm)
                    .checked_add(&p.scale(&c0))
                    .unwrap()
                    .checked_add(&basis(n1 as i64 + 1, n2 as i64 - 1, m).scale(&cp))
                    .unwrap();
                out.observe_exact(poly_mismatch(&got, &expect), || {
                    format!("ladder mismatch at N1={n1}, N2={n2}, m={m}")
                });
                // flag preservation: every monomial of the image satisfies
                // deg_s + deg_t <= N1 + N2 (the level is not raised)
                let level_ok = got
                    .terms()
                    .all(|(idx, _)| idx.get(0) + idx.get(1) <= n1 + n2);
                out.observe_exact(if level_ok { 0.0 } else { 1.0 }, || {
                    format!("level raised at N1={n1}, N2={n2}, m={m}")
                });
            }
        }
        // a spectator Jacobi factor passes through untouched
        let rider = jacobi(2, &rat(1, 2), m, "z1").embed(vars.clone()).unwrap();
        let p = basis(2, 1, m).checked_mul(&rider).unwrap();
        let got = ladder.apply(&p).map_err(|e| e.to_string())?;
        let (cm, c0, cp) = y1_tridiagonal(2, 1, m);
        let expect = basis(1, 2, m)
            .scale(&cm)
            .checked_add(&basis(2, 1, m).scale(&c0))
            .unwrap()
            .checked_add(&basis(3, 0, m).scale(&cp))
            .unwrap()
            .checked_mul(&rider)
            .unwrap();
        out.observe_exact(poly_mismatch(&got, &expect), || {
            format!("spectator factor disturbed at m={m}")
        });
        // dimension constant: the n-dim ladder shifts the diagonal by
        // (n-3)(n-1)/4 and nothing else
        if n > 3 {
            let shifted = model::gauged_y1(n, m, &vars);
            let diff = shifted.sub(&ladder);
            let expect = PolyDiffOp::identity_scaled(
                vars.clone(),
                rat((n as i64 - 3) * (n as i64 - 1), 4),
            );
            let delta = diff.sub(&expect);
            out.observe_exact(
                if delta.is_zero() { 0.0 } else { 1.0 },
                || format!("dimension constant mismatch at m={m}"),
            );
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// spectra and degeneracies

fn run_spectrum_set(spec: &CheckSpec) -> Result<Outcome, String> {
    let params = spec_params(spec)?;
    if params.n() < 3 {
        return Err("spectrum-set compares the two families and needs n >= 3".into());
    }
    let mut out = Outcome::clean();
    let mut parabolic_energies = BTreeSet::new();
    let mut spherical_energies = BTreeSet::new();
    for q in 0..=spec.params.qmax {
        let (pc, pstates) = model::degeneracy(&params, System::Parabolic, q);
        let (sc, sstates) = model::degeneracy(&params, System::Spherical, q);
        for qn in &pstates {
            parabolic_energies.insert(spectrum(&params, qn).map_err(|e| e.to_string())?.energy);
        }
        for qn in &sstates {
            spherical_energies.insert(spectrum(&params, qn).map_err(|e| e.to_string())?.energy);
        }
        // enumerated relation between the families' level counts:
        // spherical states are as numerous as parabolic states with N1 <= N2
        let half = pstates
            .iter()
            .filter(|qn| match qn {
                QuantumNumbers::Parabolic { n1, n2, .. } => n1 <= n2,
                _ => false,
            })
            .count();
        out.observe_exact(if sc == half { 0.0 } else { 1.0 }, || {
            format!("level {q}: spherical count {sc} vs parabolic half-count {half} ({pc} total)")
        });
    }
    out.observe_exact(
        if parabolic_energies == spherical_energies {
            0.0
        } else {
            1.0
        },
        || {
            format!(
                "energy sets differ: {} parabolic vs {} spherical values",
                parabolic_energies.len(),
                spherical_energies.len()
            )
        },
    );
    Ok(out)
}

fn run_degeneracy(spec: &CheckSpec) -> Result<Outcome, String> {
    let params = spec_params(spec)?;
    let n = params.n();
    let mut out = Outcome::clean();
    let systems: &[System] = if n >= 3 {
        &[System::Parabolic, System::Spherical]
    } else {
        &[System::Spherical]
    };
    for &system in systems {
        for q in 0..=spec.params.qmax {
            let (count, states) = model::degeneracy(&params, system, q);
            // counted independently with binomial sums
            let jslots = match system {
                System::Parabolic => n - 2,
                System::Spherical => n - 1,
            } as u32;
            let mut expect = Rational::zero();
            for j in 0..=q / 2 {
                let vecs = Rational::from_integer(binom_u32(j + jslots - 1, jslots - 1));
                let laguerre_fill = match system {
                    System::Parabolic => rint((q - 2 * j) as i64 + 1),
                    System::Spherical => Rational::one(),
                };
                expect += vecs * laguerre_fill;
            }
            let matches = expect == rint(count as i64);
            out.observe_exact(if matches { 0.0 } else { 1.0 }, || {
                format!("{system} level {q}: enumerated {count}, closed form {expect}")
            });
            // each listed state really sits at this level; no duplicates
            let distinct: BTreeSet<_> = states.iter().collect();
            let wellformed =
                distinct.len() == states.len() && states.iter().all(|s| s.level() == q);
            out.observe_exact(if wellformed { 0.0 } else { 1.0 }, || {
                format!("{system} level {q}: malformed enumeration")
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// generator decomposition

fn run_generator_decomposition(spec: &CheckSpec) -> Result<Outcome, String> {
    let params = spec_params(spec)?;
    let mut out = Outcome::clean();
    let mut seen = BTreeSet::new();
    for qn in model::states_up_to(&params, System::Parabolic, spec.params.qmax.min(2)) {
        let rec = spectrum(&params, &qn).map_err(|e| e.to_string())?;
        let key = rec
            .m
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(";");
        if !seen.insert(key) {
            continue;
        }
        let ops = build_gauged_ops(&params, &rec.m).map_err(|e| e.to_string())?;
        let mut labeled: Vec<(String, &PolyDiffOp)> = vec![
            ("s-sector core".into(), &ops.q_plus_core),
            ("t-sector core".into(), &ops.q_minus_core),
            ("ladder".into(), &ops.y1),
        ];
        for (i, z) in ops.z_tilde.iter().enumerate() {
            labeled.push((format!("angular sector {}", i + 1), z));
        }
        for (label, op) in labeled {
            let witness = decompose_generators(op).map_err(|e| e.to_string())?;
            let back = recompose_generators(&witness, &ops.vars);
            out.observe_exact(
                if &back == op { 0.0 } else { 1.0 },
                || format!("{label} for tower of {qn} fails to recompose"),
            );
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// mutation probes (pass when the corrupted operator is caught)

fn run_mutation(spec: &CheckSpec) -> Result<Outcome, String> {
    let params = spec_params(spec)?;
    let n = params.n();
    let detection = match spec.params.detail.as_str() {
        "cartesian-h-gamma-sign" => {
            // flip the sign of the gamma/r term; the ground-state residual
            // must become nonzero at an exact point
            let coulomb = ModelParams::coulomb(n, params.gamma().clone());
            let flipped = ModelParams::coulomb(n, -params.gamma().clone());
            let h_bad = model::cartesian_h(&flipped);
            let tuple: &[i64] = match n {
                2 => &[3, 4],
                3 => &[1, 2, 2],
                4 => &[1, 2, 2, 4],
                5 => &[1, 1, 3, 3, 4],
                _ => &[1, 1, 2, 3, 3, 5],
            };
            let point = JetPoint::cartesian(tuple.iter().map(|&v| rint(v)).collect());
            let r = {
                let mut r2 = Jet::zero(point.clone(), 4);
                for i in 0..n {
                    let x = Jet::variable(point.clone(), 4, i).unwrap();
                    r2 = r2.add(&x.mul(&x));
                }
                r2.sqrt().map_err(|e| e.to_string())?
            };
            let psi = r.scale_rat(&-coulomb.gamma().clone()).exp_reduced();
            // true ground-state energy: spherical record with all indices zero
            let qn = QuantumNumbers::Spherical {
                nr: 0,
                j: vec![0; n - 1],
            };
            let rec = spectrum(&coulomb, &qn).map_err(|e| e.to_string())?;
            let got = h_bad.apply(&psi).map_err(|e| e.to_string())?;
            jet_mismatch(&got, &psi.truncate(got.order()).scale_rat(&rec.energy))
        }
        "parabolic-h-gamma-sign" | "x-gamma-sign" | "spherical-h-gamma-sign" => {
            let flipped =
                ModelParams::new(n, -params.gamma().clone(), params.p_all().to_vec())
                    .map_err(|e| e.to_string())?;
            let (system, qn) = match spec.params.detail.as_str() {
                "spherical-h-gamma-sign" => (
                    System::Spherical,
                    QuantumNumbers::Spherical {
                        nr: 0,
                        j: vec![0; n - 1],
                    },
                ),
                _ => (
                    System::Parabolic,
                    QuantumNumbers::Parabolic {
                        n1: 0,
                        n2: 0,
                        j: vec![0; n - 2],
                    },
                ),
            };
            let ef = eigenfunction(&params, &qn).map_err(|e| e.to_string())?;
            let point = match system {
                System::Parabolic => exact_parabolic_point(n, 0),
                System::Spherical => exact_spherical_point(n, 0),
            };
            let psi = ef.jet(&point, 3, true).map_err(|e| e.to_string())?;
            let (op, kappa) = match spec.params.detail.as_str() {
                "parabolic-h-gamma-sign" => (
                    model::parabolic_h(&flipped).map_err(|e| e.to_string())?,
                    ef.record.energy.clone(),
                ),
                "spherical-h-gamma-sign" => {
                    (model::spherical_h(&flipped), ef.record.energy.clone())
                }
                _ => (
                    model::parabolic_x(&flipped).map_err(|e| e.to_string())?,
                    ef.record.lambda.clone().unwrap(),
                ),
            };
            let got = op.apply(&psi).map_err(|e| e.to_string())?;
            jet_mismatch(&got, &psi.truncate(got.order()).scale_rat(&kappa))
        }
        "y1-constant" => {
            let vars = gauged_parabolic_vars(3);
            let m = rat(1, 2);
            let bad = model::gauged_y1(3, &m, &vars)
                .add(&PolyDiffOp::identity_scaled(vars.clone(), rint(1)));
            let basis = |n1: i64, n2: i64| {
                laguerre(n1, &m, "s")
                    .embed(vars.clone())
                    .unwrap()
                    .checked_mul(&laguerre(n2, &m, "t").embed(vars.clone()).unwrap())
                    .unwrap()
            };
            let p = basis(1, 1);
            let got = bad.apply(&p).map_err(|e| e.to_string())?;
            let (cm, c0, cp) = y1_tridiagonal(1, 1, &m);
            let expect = basis(0, 2)
                .scale(&cm)
                .checked_add(&p.scale(&c0))
                .unwrap()
                .checked_add(&basis(2, 0).scale(&cp))
                .unwrap();
            poly_mismatch(&got, &expect)
        }
        "ztilde-constant" | "q-core-constant" => {
            let qn = QuantumNumbers::Parabolic {
                n1: 1,
                n2: 0,
                j: vec![0; n - 2],
            };
            let rec = spectrum(&params, &qn).map_err(|e| e.to_string())?;
            let ops = build_gauged_ops(&params, &rec.m).map_err(|e| e.to_string())?;
            let poly = eigenfunction(&params, &qn)
                .map_err(|e| e.to_string())?
                .polypart;
            let one = PolyDiffOp::identity_scaled(ops.vars.clone(), rint(1));
            if spec.params.detail == "ztilde-constant" {
                let bad = ops.z_tilde[0].add(&one);
                let got = bad.apply(&poly).map_err(|e| e.to_string())?;
                poly_mismatch(&got, &poly.scale(&rec.k[0]))
            } else {
                let bad = ops.q_plus_core.add(&one);
                let got = bad.apply(&poly).map_err(|e| e.to_string())?;
                let m_top = rec.m.last().unwrap().clone();
                poly_mismatch(&got, &poly.scale(&(rint(-2) - &m_top - rint(1))))
            }
        }
        other => return Err(format!("unknown mutation target `{other}`")),
    };
    Ok(Outcome {
        pass: detection != 0.0,
        worst: detection,
        witness: if detection == 0.0 {
            Some("mutated operator went undetected".into())
        } else {
            None
        },
    })
}

// ---------------------------------------------------------------------------
// suite construction

fn base_params(cfg: &SuiteConfig, system: Option<System>, detail: &str) -> CheckParams {
    CheckParams {
        n: cfg.n,
        gamma: cfg.gamma.clone(),
        p: cfg.p.clone(),
        system,
        qmax: cfg.qmax,
        points: cfg.points,
        detail: detail.to_string(),
    }
}

fn coulomb_params(cfg: &SuiteConfig, detail: &str) -> CheckParams {
    CheckParams {
        p: vec![Rational::zero(); cfg.n - 1],
        ..base_params(cfg, None, detail)
    }
}

/// The checks selected by one CLI suite selector. `All` also includes the
/// mutation probes that prove the other checks can fail.
pub fn suite_for(selector: SuiteSelector, cfg: &SuiteConfig) -> Result<Vec<CheckSpec>, String> {
    cfg.params()?; // validate the scope once, up front
    let mut specs = Vec::new();
    let exact = matches!(selector, SuiteSelector::All | SuiteSelector::Exact);
    let numeric = matches!(selector, SuiteSelector::All | SuiteSelector::Numeric);
    let commutators = matches!(selector, SuiteSelector::All | SuiteSelector::Commutators);
    let tridiagonal = matches!(selector, SuiteSelector::All | SuiteSelector::Tridiagonal);

    if exact && cfg.n >= 3 {
        specs.push(CheckSpec {
            name: "eigen/exact-parabolic".into(),
            kind: CheckKind::ExactEigen,
            params: base_params(cfg, Some(System::Parabolic), ""),
            seed: cfg.seed,
            tolerance: 0.0,
        });
    }
    if exact {
        if cfg.n >= 3 {
            specs.push(CheckSpec {
                name: "spectrum/cross-family-levels".into(),
                kind: CheckKind::SpectrumSet,
                params: CheckParams {
                    qmax: cfg.qmax.max(8),
                    ..base_params(cfg, None, "")
                },
                seed: cfg.seed,
                tolerance: 0.0,
            });
        }
        specs.push(CheckSpec {
            name: "spectrum/degeneracy".into(),
            kind: CheckKind::Degeneracy,
            params: CheckParams {
                qmax: cfg.qmax.max(8),
                ..base_params(cfg, None, "")
            },
            seed: cfg.seed,
            tolerance: 0.0,
        });
        if cfg.n >= 3 {
            specs.push(CheckSpec {
                name: "algebra/generator-decomposition".into(),
                kind: CheckKind::GeneratorDecomposition,
                params: base_params(cfg, None, ""),
                seed: cfg.seed,
                tolerance: 0.0,
            });
        }
    }
    if tridiagonal && cfg.n >= 3 {
        specs.push(CheckSpec {
            name: "ladder/tridiagonal".into(),
            kind: CheckKind::Tridiagonal,
            params: CheckParams {
                qmax: 6,
                ..base_params(cfg, None, "")
            },
            seed: cfg.seed,
            tolerance: 0.0,
        });
    }
    if numeric {
        if cfg.n >= 3 {
            specs.push(CheckSpec {
                name: "eigen/numeric-parabolic".into(),
                kind: CheckKind::NumericEigen,
                params: base_params(cfg, Some(System::Parabolic), ""),
                seed: cfg.seed,
                tolerance: cfg.tol_numeric,
            });
        }
        specs.push(CheckSpec {
            name: "eigen/numeric-spherical".into(),
            kind: CheckKind::NumericEigen,
            params: base_params(cfg, Some(System::Spherical), ""),
            seed: cfg.seed,
            tolerance: cfg.tol_numeric,
        });
    }
    if commutators {
        let jets = cfg.points.clamp(3, 5);
        let comm_params = |detail: &str, coulomb: bool| CheckParams {
            points: jets,
            ..if coulomb {
                coulomb_params(cfg, detail)
            } else {
                base_params(cfg, None, detail)
            }
        };
        specs.push(CheckSpec {
            name: "commutators/angular-momentum".into(),
            kind: CheckKind::CommutatorZero,
            params: comm_params("angular-momentum", true),
            seed: cfg.seed,
            tolerance: cfg.tol_commutator,
        });
        specs.push(CheckSpec {
            name: "commutators/runge-lenz".into(),
            kind: CheckKind::CommutatorZero,
            params: comm_params("runge-lenz", true),
            seed: cfg.seed,
            tolerance: cfg.tol_commutator,
        });
        specs.push(CheckSpec {
            name: "commutators/runge-lenz-closure".into(),
            kind: CheckKind::CommutatorIdentity,
            params: comm_params("", true),
            seed: cfg.seed,
            tolerance: cfg.tol_commutator,
        });
        if cfg.n >= 3 {
            specs.push(CheckSpec {
                name: "commutators/parabolic-family".into(),
                kind: CheckKind::CommutatorZero,
                params: comm_params("parabolic-family", false),
                seed: cfg.seed,
                tolerance: cfg.tol_commutator,
            });
        }
        specs.push(CheckSpec {
            name: "commutators/spherical-family".into(),
            kind: CheckKind::CommutatorZero,
            params: comm_params("spherical-family", false),
            seed: cfg.seed,
            tolerance: cfg.tol_commutator,
        });
        if cfg.n >= 3 {
            specs.push(CheckSpec {
                name: "commutators/cross-family".into(),
                kind: CheckKind::CommutatorZero,
                params: comm_params("cross-family", false),
                seed: cfg.seed,
                tolerance: cfg.tol_commutator,
            });
            specs.push(CheckSpec {
                name: "commutators/nonzero-y2-z1".into(),
                kind: CheckKind::CommutatorNonzero,
                params: comm_params("y2-z1", false),
                seed: cfg.seed,
                tolerance: cfg.tol_nonzero,
            });
            specs.push(CheckSpec {
                name: "commutators/nonzero-y1-x".into(),
                kind: CheckKind::CommutatorNonzero,
                params: comm_params("y1-x", false),
                seed: cfg.seed,
                tolerance: cfg.tol_nonzero,
            });
        }
        if cfg.n == 3 {
            specs.push(CheckSpec {
                name: "commutators/n3-pairs".into(),
                kind: CheckKind::CommutatorZero,
                params: CheckParams {
                    points: 5,
                    ..coulomb_params(cfg, "n3-pairs")
                },
                seed: cfg.seed,
                tolerance: cfg.tol_commutator,
            });
        }
    }
    if matches!(selector, SuiteSelector::All) {
        let mut targets = vec!["cartesian-h-gamma-sign".to_string()];
        if cfg.n >= 3 {
            targets.extend(
                [
                    "parabolic-h-gamma-sign",
                    "x-gamma-sign",
                    "y1-constant",
                    "ztilde-constant",
                    "q-core-constant",
                ]
                .map(String::from),
            );
        }
        targets.push("spherical-h-gamma-sign".into());
        for target in targets {
            specs.push(CheckSpec {
                name: format!("mutation/{target}"),
                kind: CheckKind::Mutation,
                params: base_params(cfg, None, &target),
                seed: cfg.seed,
                tolerance: 0.0,
            });
        }
    }
    specs.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(specs)
}

pub fn default_suite(cfg: &SuiteConfig) -> Result<Vec<CheckSpec>, String> {
    suite_for(SuiteSelector::All, cfg)
}

//! Sweep driver and output assembly: runs scenarios against the requested
//! classical/quantum methods, renders table/JSON/CSV reports, and hosts the
//! cross-check suite behind `--verify`.
//!
//! Output determinism: identical configuration (including seed and worker
//! count) produces byte-identical JSON and CSV. Timings are therefore opt-in
//! and never part of the default output.

use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::{
    bipartite_quarter_bound, closed_classical_bound, generic_classical_bound, qcr, quantum_bound,
    variant_quarter_bound, BoundsReport, BruteSummary, Provenance, VIOLATION_TOLERANCE,
};
use crate::lhv::{
    brute_force_max_with, sampled_max_with, splitmix64, Objective, DEFAULT_ENUMERATION_CAP,
};
use crate::qm::{
    bell_operator, bell_value_correlator_form, correlation, fourier_matrix, ghz_state, observable,
    omega_half_step, optimal_state, phase_shift, raising_operator, Scenario, Setting,
};
use crate::tensor::{
    expectation, hermitian_eigenvalues, max_hermitian_eigenvalue, ComplexMatrix, StateVector,
};
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalMethod {
    Brute,
    Closed,
    Sample,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantumMethod {
    /// Expectation of the Bell operator in the saturating state.
    State,
    /// `State` plus the largest eigenvalue of the Bell operator.
    Eigen,
    /// Just the closed-form quantum bound d - 1 (no operator is built).
    Bound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

/// Everything a sweep needs; the CLI maps its flags onto this.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub parties: Vec<usize>,
    pub dims: Vec<usize>,
    pub nus: Vec<Rational>,
    pub classical: ClassicalMethod,
    pub quantum: QuantumMethod,
    pub samples: u64,
    pub seed: u64,
    pub threads: Option<usize>,
    pub enumeration_cap: Option<u64>,
    /// Maximize |B| instead of B in the enumerated search. Applies to brute
    /// and sampled modes only; closed forms are one-sided.
    pub two_sided: bool,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            parties: vec![3],
            dims: vec![2],
            nus: vec![Rational::from_integer(0)],
            classical: ClassicalMethod::Both,
            quantum: QuantumMethod::State,
            samples: 100_000,
            seed: 0,
            threads: None,
            enumeration_cap: None,
            two_sided: false,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.parties.is_empty() || self.dims.is_empty() || self.nus.is_empty() {
            return Err(Error::InvalidConfig {
                reason: "need at least one value each for parties, dim, and variant".into(),
            });
        }
        if matches!(self.classical, ClassicalMethod::Sample) && self.samples == 0 {
            return Err(Error::InvalidConfig {
                reason: "sample mode needs --samples >= 1".into(),
            });
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidConfig {
                reason: "thread count must be at least 1".into(),
            });
        }
        if self.two_sided
            && !matches!(self.classical, ClassicalMethod::Brute | ClassicalMethod::Sample)
        {
            return Err(Error::InvalidConfig {
                reason: "--two-sided applies only to brute or sample classical modes \
                         (closed forms are one-sided)"
                    .into(),
            });
        }
        Ok(())
    }

    fn scenarios(&self) -> Result<Vec<Scenario>> {
        let mut out = Vec::new();
        for &n in &self.parties {
            for &d in &self.dims {
                for &nu in &self.nus {
                    out.push(Scenario::new(n, d, nu)?);
                }
            }
        }
        out.sort_by_key(|s| (s.parties(), s.dim(), s.nu()));
        out.dedup();
        Ok(out)
    }
}

/// Wall-clock milliseconds per phase; only populated under `timings`.
#[derive(Clone, Debug, Serialize)]
pub struct RowTiming {
    pub classical: f64,
    pub quantum: f64,
    pub total: f64,
}

/// One scenario's results.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub report: BoundsReport,
    pub timing: Option<RowTiming>,
}

/// Runs the configured sweep; rows come back sorted by (N, d, nu).
pub fn run(config: &RunConfig) -> Result<Vec<ReportRow>> {
    config.validate()?;
    let scenarios = config.scenarios()?;
    match config.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidConfig {
                    reason: format!("could not build thread pool: {e}"),
                })?;
            pool.install(|| sweep(&scenarios, config))
        }
        None => sweep(&scenarios, config),
    }
}

fn sweep(scenarios: &[Scenario], config: &RunConfig) -> Result<Vec<ReportRow>> {
    scenarios
        .iter()
        .map(|s| compute_row(s, config))
        .collect()
}

fn compute_row(scenario: &Scenario, config: &RunConfig) -> Result<ReportRow> {
    let started = Instant::now();
    let cap = config.enumeration_cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    let objective = if config.two_sided {
        Objective::Magnitude
    } else {
        Objective::Value
    };

    let classical_started = Instant::now();
    let (closed, brute) = match config.classical {
        ClassicalMethod::Closed => {
            let bound = closed_classical_bound(scenario).ok_or_else(|| Error::InvalidConfig {
                reason: format!(
                    "no closed-form classical bound for nu={}; use brute or sample",
                    scenario.nu()
                ),
            })?;
            (Some(bound), None)
        }
        ClassicalMethod::Brute => (None, Some(run_brute(scenario, objective, cap)?)),
        ClassicalMethod::Sample => (
            None,
            Some(run_sampled(scenario, config.samples, config.seed, objective)?),
        ),
        ClassicalMethod::Both => (
            closed_classical_bound(scenario),
            Some(run_brute(scenario, objective, cap)?),
        ),
    };
    let classical_ms = ms_since(classical_started);

    let quantum_started = Instant::now();
    let (quantum_expectation, quantum_provenance, max_eigenvalue) = match config.quantum {
        QuantumMethod::Bound => (quantum_bound(scenario.dim()), Provenance::PaperConstant, None),
        QuantumMethod::State => (state_expectation(scenario)?, Provenance::GhzState, None),
        QuantumMethod::Eigen => {
            let op = bell_operator(scenario)?;
            let state = optimal_state(scenario)?;
            let e = expectation(&state, &op)?.re;
            let top = max_hermitian_eigenvalue(&op)?;
            (e, Provenance::GhzState, Some(top))
        }
    };
    let quantum_ms = ms_since(quantum_started);

    let report = BoundsReport::assemble(
        *scenario,
        closed,
        brute,
        quantum_expectation,
        quantum_provenance,
        max_eigenvalue,
    )?;
    let timing = config.timings.then(|| RowTiming {
        classical: classical_ms,
        quantum: quantum_ms,
        total: ms_since(started),
    });
    Ok(ReportRow { report, timing })
}

fn run_brute(scenario: &Scenario, objective: Objective, cap: u64) -> Result<BruteSummary> {
    let res = brute_force_max_with(scenario, objective, cap)?;
    Ok(BruteSummary {
        value: res.max_value,
        exhaustive: res.exhaustive,
        argmax: res.argmax,
        strategies_evaluated: res.strategies_evaluated,
    })
}

fn run_sampled(
    scenario: &Scenario,
    samples: u64,
    seed: u64,
    objective: Objective,
) -> Result<BruteSummary> {
    let res = sampled_max_with(scenario, samples, seed, objective)?;
    Ok(BruteSummary {
        value: res.max_value,
        exhaustive: res.exhaustive,
        argmax: res.argmax,
        strategies_evaluated: res.strategies_evaluated,
    })
}

fn state_expectation(scenario: &Scenario) -> Result<f64> {
    let op = bell_operator(scenario)?;
    let state = optimal_state(scenario)?;
    Ok(expectation(&state, &op)?.re)
}

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Rounds to 12 significant digits; all serialized numbers go through this.
fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("round-trip of finite f64")
}

fn fmt_num(x: f64) -> String {
    format!("{}", round_sig(x))
}

fn fmt_nu(nu: Rational) -> String {
    if nu.is_integer() {
        format!("{}", nu.numer())
    } else {
        format!("{}/{}", nu.numer(), nu.denom())
    }
}

#[derive(Serialize)]
struct ScenarioJson {
    parties: usize,
    dim: usize,
    nu: String,
}

#[derive(Serialize)]
struct ArgmaxJson {
    alpha: Vec<usize>,
    beta: Vec<usize>,
}

#[derive(Serialize)]
struct BruteJson {
    value: f64,
    exhaustive: bool,
    argmax: ArgmaxJson,
}

#[derive(Serialize)]
struct ClassicalJson {
    closed: Option<f64>,
    brute: Option<BruteJson>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    bounds_match: Option<bool>,
}

#[derive(Serialize)]
struct QuantumJson {
    expectation: f64,
    max_eigenvalue: Option<f64>,
    bound: f64,
}

#[derive(Serialize)]
struct ProvenanceJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    classical_closed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classical_brute: Option<String>,
    classical_used: String,
    quantum_expectation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    quantum_max_eigenvalue: Option<String>,
    quantum_bound: String,
    /// QCR inherits the method of the classical bound it divides by.
    qcr: String,
}

#[derive(Serialize)]
struct ReportJson {
    scenario: ScenarioJson,
    classical: ClassicalJson,
    quantum: QuantumJson,
    qcr: f64,
    violated: bool,
    provenance: ProvenanceJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<RowTiming>,
}

fn to_json_struct(row: &ReportRow) -> ReportJson {
    let r = &row.report;
    let brute_prov = r.classical_brute.as_ref().map(|b| {
        if b.exhaustive {
            Provenance::BruteExhaustive.to_string()
        } else {
            Provenance::BruteSampled.to_string()
        }
    });
    ReportJson {
        scenario: ScenarioJson {
            parties: r.scenario.parties(),
            dim: r.scenario.dim(),
            nu: fmt_nu(r.scenario.nu()),
        },
        classical: ClassicalJson {
            closed: r.classical_closed.as_ref().map(|c| round_sig(c.value)),
            brute: r.classical_brute.as_ref().map(|b| BruteJson {
                value: round_sig(b.value),
                exhaustive: b.exhaustive,
                argmax: ArgmaxJson {
                    alpha: b.argmax.alpha.clone(),
                    beta: b.argmax.beta.clone(),
                },
            }),
            bounds_match: r.bounds_match,
        },
        quantum: QuantumJson {
            expectation: round_sig(r.quantum_expectation),
            max_eigenvalue: r.quantum_max_eigenvalue.map(round_sig),
            bound: round_sig(r.quantum_bound),
        },
        qcr: round_sig(r.qcr),
        violated: r.violated,
        provenance: ProvenanceJson {
            classical_closed: r
                .classical_closed
                .as_ref()
                .map(|_| Provenance::ClosedForm.to_string()),
            classical_brute: brute_prov,
            classical_used: r.classical_provenance.to_string(),
            quantum_expectation: r.quantum_provenance.to_string(),
            quantum_max_eigenvalue: r
                .quantum_max_eigenvalue
                .map(|_| Provenance::Eigensolve.to_string()),
            quantum_bound: Provenance::PaperConstant.to_string(),
            qcr: r.classical_provenance.to_string(),
        },
        timing_ms: row.timing.clone(),
    }
}

/// Renders rows in the requested format. JSON is an array with one object
/// per scenario; CSV has a fixed column set; the table sorts the same way
/// the sweep does.
pub fn render(rows: &[ReportRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let payload: Vec<ReportJson> = rows.iter().map(to_json_struct).collect();
            let mut s =
                serde_json::to_string_pretty(&payload).expect("report serialization is infallible");
            s.push('\n');
            s
        }
        OutputFormat::Csv => render_csv(rows),
        OutputFormat::Table => render_table(rows),
    }
}

fn render_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(
        "parties,dim,nu,classical_closed,classical_brute,exhaustive,\
         quantum_expectation,quantum_max_eig,qcr,violated\n",
    );
    for row in rows {
        let r = &row.report;
        let closed = r
            .classical_closed
            .as_ref()
            .map(|c| fmt_num(c.value))
            .unwrap_or_default();
        let (brute, exhaustive) = match &r.classical_brute {
            Some(b) => (fmt_num(b.value), b.exhaustive.to_string()),
            None => (String::new(), String::new()),
        };
        let max_eig = r
            .quantum_max_eigenvalue
            .map(fmt_num)
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.scenario.parties(),
            r.scenario.dim(),
            fmt_nu(r.scenario.nu()),
            closed,
            brute,
            exhaustive,
            fmt_num(r.quantum_expectation),
            max_eig,
            fmt_num(r.qcr),
            r.violated
        ));
    }
    out
}

fn render_table(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:>3} {:>3} {:>6}  {:>16} {:>16} {:>14} {:>14} {:>12}  {}\n",
        "N", "d", "nu", "classical-closed", "classical-brute", "quantum", "max-eig", "qcr",
        "violated"
    ));
    for row in rows {
        let r = &row.report;
        let closed = r
            .classical_closed
            .as_ref()
            .map(|c| fmt_num(c.value))
            .unwrap_or_else(|| "-".into());
        let brute = r
            .classical_brute
            .as_ref()
            .map(|b| {
                if b.exhaustive {
                    fmt_num(b.value)
                } else {
                    format!("{}*", fmt_num(b.value))
                }
            })
            .unwrap_or_else(|| "-".into());
        let max_eig = r
            .quantum_max_eigenvalue
            .map(fmt_num)
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "{:>3} {:>3} {:>6}  {:>16} {:>16} {:>14} {:>14} {:>12}  {}\n",
            r.scenario.parties(),
            r.scenario.dim(),
            fmt_nu(r.scenario.nu()),
            closed,
            brute,
            fmt_num(r.quantum_expectation),
            max_eig,
            fmt_num(r.qcr),
            if r.violated { "yes" } else { "no" }
        ));
        if let Some(t) = &row.timing {
            out.push_str(&format!(
                "{:>11} classical {:.1} ms, quantum {:.1} ms, total {:.1} ms\n",
                "", t.classical, t.quantum, t.total
            ));
        }
    }
    let any_sampled = rows.iter().any(|row| {
        row.report
            .classical_brute
            .as_ref()
            .is_some_and(|b| !b.exhaustive)
    });
    if any_sampled {
        out.push_str("(* sampled lower bound, not exhaustive)\n");
    }
    out
}

// ---------------------------------------------------------------------------
// Verification suite
// ---------------------------------------------------------------------------

/// Range and hooks for the self-check suite.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub parties: Vec<usize>,
    pub dims: Vec<usize>,
    pub nus: Vec<Rational>,
    /// Test hook: multiplies the half step omega^(1/2) by exp(i*eps) inside
    /// the raising-identity check. Nonzero values must make the suite fail;
    /// never set outside negative-control tests.
    pub omega_half_step_perturbation: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            parties: vec![2, 3, 4],
            dims: vec![2, 3, 4, 5, 6],
            nus: vec![Rational::from_integer(0), Rational::new(1, 4)],
            omega_half_step_perturbation: 0.0,
        }
    }
}

/// One executed check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub tolerance: f64,
    pub residual: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, tolerance: f64, residual: f64) -> Self {
        Self {
            name: name.into(),
            tolerance,
            residual,
            passed: residual <= tolerance,
        }
    }
}

pub fn all_passed(checks: &[CheckOutcome]) -> bool {
    checks.iter().all(|c| c.passed)
}

pub fn render_verify(checks: &[CheckOutcome]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!(
            "{} {:<44} tolerance {:>8.1e}  residual {:>12.3e}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.tolerance,
            c.residual
        ));
    }
    let failures = checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!(
        "{} checks, {} failed\n",
        checks.len(),
        failures
    ));
    out
}

/// Runs the cross-check suite over the configured grid: operator identities,
/// closed-form vs enumeration agreement, spectrum invariance, correlator
/// consistency, and the violation pattern.
pub fn verify(opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    let mut checks = Vec::new();
    let eps = opts.omega_half_step_perturbation;

    // Raising identity J^n = (A^n + omega^(n/2) B^n)/2, per dimension.
    for &d in &opts.dims {
        let a = observable(d, Setting::A).matrix;
        let b = observable(d, Setting::B).matrix;
        let half = omega_half_step(d) * Complex64::from_polar(1.0, eps);
        let mut worst = 0.0f64;
        for n in 1..d {
            let phase = half.powu(n as u32);
            let combo = a
                .matpow(n)
                .add(&b.matpow(n).scale(phase))?
                .scale(Complex64::new(0.5, 0.0));
            worst = worst.max(combo.max_abs_diff(&raising_operator(d).matpow(n)));
        }
        checks.push(CheckOutcome::new(
            format!("raising-identity d={d}"),
            1e-12,
            worst,
        ));
    }

    // Qubit reduction to the Pauli matrices.
    if opts.dims.contains(&2) {
        let a = observable(2, Setting::A).matrix;
        let b = observable(2, Setting::B).matrix;
        let sigma_x = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])?;
        let sigma_y = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ])?;
        let residual = a.max_abs_diff(&sigma_x).max(b.max_abs_diff(&sigma_y));
        checks.push(CheckOutcome::new("qubit-pauli-reduction", 1e-12, residual));

        if opts.parties.contains(&3) {
            let op = bell_operator(&Scenario::generic(3, 2)?)?;
            let kron3 = |p: &ComplexMatrix, q: &ComplexMatrix, r: &ComplexMatrix| {
                p.kron(q).and_then(|pq| pq.kron(r))
            };
            let mermin = kron3(&sigma_x, &sigma_x, &sigma_x)?
                .add(&kron3(&sigma_x, &sigma_y, &sigma_y)?.scale(Complex64::new(-1.0, 0.0)))?
                .add(&kron3(&sigma_y, &sigma_x, &sigma_y)?.scale(Complex64::new(-1.0, 0.0)))?
                .add(&kron3(&sigma_y, &sigma_y, &sigma_x)?.scale(Complex64::new(-1.0, 0.0)))?
                .scale(Complex64::new(0.25, 0.0));
            checks.push(CheckOutcome::new(
                "mermin-reduction (3,2,0)",
                1e-12,
                op.max_abs_diff(&mermin),
            ));
        }
    }

    // Per-scenario operator checks, capped by the dense-dimension limit.
    let mut scenarios = Vec::new();
    for &n in &opts.parties {
        for &d in &opts.dims {
            for &nu in &opts.nus {
                let s = Scenario::new(n, d, nu)?;
                if s.hilbert_dim().is_ok() {
                    scenarios.push(s);
                }
            }
        }
    }
    scenarios.sort_by_key(|s| (s.parties(), s.dim(), s.nu()));
    scenarios.dedup();

    let mut ghz_worst = 0.0f64;
    let mut saturation_worst = 0.0f64;
    for s in &scenarios {
        let op = bell_operator(s)?;
        if s.nu() == Rational::from_integer(0) {
            let ghz = ghz_state(s.parties(), s.dim())?;
            let applied = op.apply(ghz.amplitudes())?;
            let lambda = (s.dim() - 1) as f64;
            let res = applied
                .iter()
                .zip(ghz.amplitudes())
                .map(|(got, amp)| (got - amp * lambda).norm())
                .fold(0.0, f64::max);
            ghz_worst = ghz_worst.max(res);
        }
        let state = optimal_state(s)?;
        let e = expectation(&state, &op)?;
        saturation_worst =
            saturation_worst.max((e.re - (s.dim() - 1) as f64).abs().max(e.im.abs()));
    }
    checks.push(CheckOutcome::new(
        "ghz-eigenstate (nu=0 grid)",
        1e-9,
        ghz_worst,
    ));
    checks.push(CheckOutcome::new(
        "saturating-state-expectation (grid)",
        1e-9,
        saturation_worst,
    ));

    // Spectrum invariance under the variant phase (unitary conjugation),
    // restricted to small operators where full spectra are cheap.
    let mut spectrum_worst = 0.0f64;
    for s in scenarios
        .iter()
        .filter(|s| s.nu() != Rational::from_integer(0))
    {
        if s.hilbert_dim()? > 128 {
            continue;
        }
        let generic = Scenario::generic(s.parties(), s.dim())?;
        let ev_g = hermitian_eigenvalues(&bell_operator(&generic)?)?;
        let ev_v = hermitian_eigenvalues(&bell_operator(s)?)?;
        let worst = ev_g
            .iter()
            .zip(&ev_v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        spectrum_worst = spectrum_worst.max(worst);
    }
    checks.push(CheckOutcome::new(
        "spectrum-invariance (dim<=128)",
        1e-9,
        spectrum_worst,
    ));

    // Correlator form vs operator form on deterministic pseudorandom states
    // (tripartite only, where the expansion applies).
    if opts.parties.contains(&3) {
        let mut worst = 0.0f64;
        for &d in opts.dims.iter().filter(|&&d| d <= 4) {
            let s = Scenario::generic(3, d)?;
            let op = bell_operator(&s)?;
            for k in 0..5u64 {
                let state = pseudorandom_state(d.pow(3), 0x5EED ^ (d as u64) << 8 ^ k);
                let via_correlators = bell_value_correlator_form(&state, d)?;
                let via_operator = expectation(&state, &op)?.re;
                worst = worst.max((via_correlators - via_operator).abs());
            }
        }
        checks.push(CheckOutcome::new(
            "correlator-vs-operator (N=3)",
            1e-9,
            worst,
        ));

        // Fold identity E^(d-n) = conj(E^n) on GHZ states.
        let mut fold_worst = 0.0f64;
        use Setting::{A, B};
        let combos: [[Setting; 3]; 4] = [[A, A, A], [A, B, B], [B, A, B], [B, B, A]];
        for &d in opts.dims.iter().filter(|&&d| d <= 6) {
            let ghz = ghz_state(3, d)?;
            for settings in &combos {
                for n in 1..d {
                    let e = correlation(&ghz, settings, n)?;
                    let folded = correlation(&ghz, settings, d - n)?;
                    fold_worst = fold_worst.max((folded - e.conj()).norm());
                }
            }
        }
        checks.push(CheckOutcome::new("fold-identity (N=3)", 1e-10, fold_worst));
    }

    // Closed form vs exhaustive enumeration wherever both are feasible.
    let mut oracle_worst = 0.0f64;
    let mut pattern_errors = 0usize;
    let mut pattern_checked = 0usize;
    for s in &scenarios {
        let Some(closed) = closed_classical_bound(s) else {
            continue;
        };
        if s.strategy_count() <= 2_000_000 {
            let brute = brute_force_max_with(s, Objective::Value, DEFAULT_ENUMERATION_CAP)?;
            oracle_worst = oracle_worst.max((brute.max_value - closed.value).abs());
        }
        // Violation pattern against the closed bounds.
        pattern_checked += 1;
        let violated = quantum_bound(s.dim()) > closed.value + VIOLATION_TOLERANCE;
        let fract = s.nu() - s.nu().floor();
        let expected = if fract == Rational::from_integer(0) {
            s.dim() % 2 == 0 && s.parties() >= 3
        } else {
            true // the quarter variant violates everywhere
        };
        if violated != expected {
            pattern_errors += 1;
        }
    }
    checks.push(CheckOutcome::new(
        "closed-vs-brute-force (grid)",
        1e-9,
        oracle_worst,
    ));
    checks.push(CheckOutcome::new(
        format!("violation-pattern ({pattern_checked} scenarios)"),
        0.5,
        pattern_errors as f64,
    ));

    // Bipartite consistency of the even-parties quarter formula.
    let mut eq_worst = 0.0f64;
    for d in 2..=12 {
        eq_worst =
            eq_worst.max((variant_quarter_bound(2, d) - bipartite_quarter_bound(d)).abs());
    }
    checks.push(CheckOutcome::new(
        "bipartite-quarter-consistency d=2..12",
        1e-12,
        eq_worst,
    ));

    // QCR trend: strictly decreasing in d for the tripartite generic case.
    let ratios: Vec<f64> = [2usize, 4, 6, 8]
        .iter()
        .map(|&d| qcr(quantum_bound(d), generic_classical_bound(3, d).value))
        .collect::<Result<_>>()?;
    let trend_residual = ratios
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    checks.push(CheckOutcome::new(
        "qcr-monotone-decreasing (N=3, even d)",
        0.0,
        trend_residual.max(0.0),
    ));

    // Unitarity of the building blocks over the dimension range.
    let mut unitary_worst = 0.0f64;
    for &d in &opts.dims {
        unitary_worst = unitary_worst.max(fourier_matrix(d).unitarity_defect());
        for &nu in &opts.nus {
            unitary_worst = unitary_worst.max(phase_shift(d, nu).unitarity_defect());
        }
    }
    checks.push(CheckOutcome::new(
        "building-block-unitarity",
        1e-12,
        unitary_worst,
    ));

    Ok(checks)
}

/// Deterministic pseudorandom unit vector derived from `splitmix64`.
fn pseudorandom_state(len: usize, seed: u64) -> StateVector {
    let mut amps = Vec::with_capacity(len);
    for i in 0..len {
        let re = splitmix64(seed ^ (2 * i as u64 + 1)) as f64 / u64::MAX as f64 - 0.5;
        let im = splitmix64(seed ^ (2 * i as u64 + 2)) as f64 / u64::MAX as f64 - 0.5;
        amps.push(Complex64::new(re, im));
    }
    StateVector::normalized(amps).expect("nonzero pseudorandom vector")
}

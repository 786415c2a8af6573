//! Closed-form classical and quantum bounds, the quantum-to-classical ratio
//! (QCR), and the per-scenario report that ties them together. These closed
//! forms are the independent oracle the enumeration engine is checked
//! against.

use std::f64::consts::PI;

use crate::lhv::Strategy;
use crate::qm::Scenario;
use crate::{Error, Rational, Result};

/// Quantum expectations above the classical bound by more than this count as
/// violations.
pub const VIOLATION_TOLERANCE: f64 = 1e-9;

/// Closed-form and brute-force classical bounds are reported as matching
/// when they differ by no more than this.
pub const BOUND_MATCH_TOLERANCE: f64 = 1e-9;

/// Which closed-form clause produced a classical bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundClause {
    /// Even d, three or more parties: `d (2^(-ceil(N/2)) + 1/2) - 1`.
    GenericEvenMultiparty,
    /// Odd d: the larger bound `d - 1`.
    GenericOddDim,
    /// Two parties: `d - 1` (the generic inequality is not violated).
    GenericBipartite,
    /// nu = 1/4 variant, odd number of parties.
    QuarterOddParties,
    /// nu = 1/4 variant, even number of parties.
    QuarterEvenParties,
}

impl std::fmt::Display for BoundClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self {
            BoundClause::GenericEvenMultiparty => "generic-even-multiparty",
            BoundClause::GenericOddDim => "generic-odd-dim",
            BoundClause::GenericBipartite => "generic-bipartite",
            BoundClause::QuarterOddParties => "quarter-odd-parties",
            BoundClause::QuarterEvenParties => "quarter-even-parties",
        };
        f.write_str(tag)
    }
}

/// A closed-form classical bound plus the clause that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedBound {
    pub value: f64,
    pub clause: BoundClause,
}

/// Classical upper bound of the generic (nu = 0) inequality.
///
/// Even d with N >= 3 parties uses the parity formula
/// `d (2^(-N/2) + 1/2) - 1` (N even) or `d (2^(-(N+1)/2) + 1/2) - 1`
/// (N odd), which reproduces `3d/4 - 1` at N = 3. Odd d and the bipartite
/// case both sit at the larger bound `d - 1`.
pub fn generic_classical_bound(parties: usize, dim: usize) -> ClosedBound {
    assert!(parties >= 2 && dim >= 2);
    if parties == 2 {
        return ClosedBound {
            value: (dim - 1) as f64,
            clause: BoundClause::GenericBipartite,
        };
    }
    if dim % 2 == 1 {
        return ClosedBound {
            value: (dim - 1) as f64,
            clause: BoundClause::GenericOddDim,
        };
    }
    let half_exponent = parties.div_ceil(2);
    let value = dim as f64 * (0.5f64.powi(half_exponent as i32) + 0.5) - 1.0;
    ClosedBound {
        value,
        clause: BoundClause::GenericEvenMultiparty,
    }
}

/// Exact binomial coefficient in f64 (0 outside the valid index range).
fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Cotangent. The arguments used here are odd multiples of pi/(4d), never a
/// multiple of pi/2, so the tangent below is always finite and nonzero.
fn cot(x: f64) -> f64 {
    let t = x.tan();
    debug_assert!(t.is_finite() && t != 0.0, "cot argument {x} hit a pole");
    1.0 / t
}

/// The coefficient `b_(n,k) = (-1)^k C(n, (n-1-2k)/2) cot(pi (2k+1) / (4d))`.
///
/// When `(n-1-2k)/2` is negative or not an integer the binomial—and hence
/// the whole coefficient—is zero.
pub fn b_coeff(n: usize, k: usize, d: usize) -> f64 {
    let twice_lower = n as i64 - 1 - 2 * k as i64;
    if twice_lower < 0 || twice_lower % 2 != 0 {
        return 0.0;
    }
    let lower = (twice_lower / 2) as usize;
    let binom = binomial(n, lower);
    if binom == 0.0 {
        return 0.0;
    }
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * binom * cot(PI * (2.0 * k as f64 + 1.0) / (4.0 * d as f64))
}

/// Classical upper bound of the nu = 1/4 variant:
/// `2^(1-N) sum_k b_(N,k) - 1` over `k = 0..=(N-1)/2` for odd N, and
/// `2^(-N) (sum_(k<=(N-2)/2) b_(N+1,k) + b_(N+1,N/2)) - 1` for even N.
pub fn variant_quarter_bound(parties: usize, dim: usize) -> f64 {
    assert!(parties >= 2 && dim >= 2);
    if parties % 2 == 1 {
        let sum: f64 = (0..=(parties - 1) / 2)
            .map(|k| b_coeff(parties, k, dim))
            .sum();
        sum / (1u64 << (parties - 1)) as f64 - 1.0
    } else {
        let sum: f64 = (0..=(parties - 2) / 2)
            .map(|k| b_coeff(parties + 1, k, dim))
            .sum::<f64>()
            + b_coeff(parties + 1, parties / 2, dim);
        sum / (1u64 << parties) as f64 - 1.0
    }
}

/// Bipartite special case of the nu = 1/4 bound,
/// `(1/4)(3 cot(pi/4d) - cot(3 pi/4d)) - 1`. The even-N formula evaluated at
/// N = 2 must reproduce this exactly; a test pins that down.
pub fn bipartite_quarter_bound(dim: usize) -> f64 {
    assert!(dim >= 2);
    let d = dim as f64;
    0.25 * (3.0 * cot(PI / (4.0 * d)) - cot(3.0 * PI / (4.0 * d))) - 1.0
}

/// Closed-form classical bound for a scenario, if one exists.
///
/// Bounds depend on nu only through its fractional part (an integer shift of
/// nu relabels strategies bijectively): fraction 0 is the generic family,
/// 1/4 the quarter variant. Anything else has no closed form here and must
/// be brute forced.
pub fn closed_classical_bound(scenario: &Scenario) -> Option<ClosedBound> {
    let nu = scenario.nu();
    let fract = nu - nu.floor();
    if fract == Rational::from_integer(0) {
        Some(generic_classical_bound(scenario.parties(), scenario.dim()))
    } else if fract == Rational::new(1, 4) {
        let clause = if scenario.parties() % 2 == 1 {
            BoundClause::QuarterOddParties
        } else {
            BoundClause::QuarterEvenParties
        };
        Some(ClosedBound {
            value: variant_quarter_bound(scenario.parties(), scenario.dim()),
            clause,
        })
    } else {
        None
    }
}

/// Quantum upper bound `d - 1`, saturated by the GHZ state.
pub fn quantum_bound(dim: usize) -> f64 {
    assert!(dim >= 2);
    (dim - 1) as f64
}

/// Quantum-to-classical ratio.
pub fn qcr(quantum: f64, classical: f64) -> Result<f64> {
    if classical <= 0.0 {
        return Err(Error::NonPositiveClassicalBound { bound: classical });
    }
    Ok(quantum / classical)
}

/// How a reported number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    BruteExhaustive,
    BruteSampled,
    GhzState,
    Eigensolve,
    PaperConstant,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::BruteExhaustive => "brute-exhaustive",
            Provenance::BruteSampled => "brute-sampled",
            Provenance::GhzState => "ghz-state",
            Provenance::Eigensolve => "eigensolve",
            Provenance::PaperConstant => "paper-constant",
        };
        f.write_str(tag)
    }
}

/// Brute-force side of a report.
#[derive(Clone, Debug, PartialEq)]
pub struct BruteSummary {
    pub value: f64,
    pub exhaustive: bool,
    pub argmax: Strategy,
    pub strategies_evaluated: u64,
}

/// Everything known about one scenario: classical bound(s), quantum
/// expectation, QCR, and the violation verdict, with the provenance of each
/// number.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    pub scenario: Scenario,
    pub classical_closed: Option<ClosedBound>,
    pub classical_brute: Option<BruteSummary>,
    /// The classical bound the QCR and verdict are computed against: the
    /// closed form when available, otherwise the brute-force maximum.
    pub classical_used: f64,
    pub classical_provenance: Provenance,
    pub quantum_expectation: f64,
    pub quantum_provenance: Provenance,
    pub quantum_max_eigenvalue: Option<f64>,
    pub quantum_bound: f64,
    pub qcr: f64,
    pub violated: bool,
    /// When both classical numbers are present: do they agree to
    /// [`BOUND_MATCH_TOLERANCE`]?
    pub bounds_match: Option<bool>,
}

impl BoundsReport {
    pub fn assemble(
        scenario: Scenario,
        classical_closed: Option<ClosedBound>,
        classical_brute: Option<BruteSummary>,
        quantum_expectation: f64,
        quantum_provenance: Provenance,
        quantum_max_eigenvalue: Option<f64>,
    ) -> Result<Self> {
        let (classical_used, classical_provenance) = match (&classical_closed, &classical_brute) {
            (Some(closed), _) => (closed.value, Provenance::ClosedForm),
            (None, Some(brute)) => (
                brute.value,
                if brute.exhaustive {
                    Provenance::BruteExhaustive
                } else {
                    Provenance::BruteSampled
                },
            ),
            (None, None) => {
                return Err(Error::InvalidConfig {
                    reason: format!("no classical bound available for {scenario}"),
                })
            }
        };
        let ratio = qcr(quantum_expectation, classical_used)?;
        let bounds_match = match (&classical_closed, &classical_brute) {
            (Some(closed), Some(brute)) => {
                Some((closed.value - brute.value).abs() <= BOUND_MATCH_TOLERANCE)
            }
            _ => None,
        };
        Ok(Self {
            scenario,
            classical_closed,
            classical_brute,
            classical_used,
            classical_provenance,
            quantum_expectation,
            quantum_provenance,
            quantum_max_eigenvalue,
            quantum_bound: quantum_bound(scenario.dim()),
            qcr: ratio,
            violated: quantum_expectation > classical_used + VIOLATION_TOLERANCE,
            bounds_match,
        })
    }
}

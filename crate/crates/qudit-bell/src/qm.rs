//! The quantum side of the inequalities: roots of unity, Fourier and
//! phase-shift observables, GHZ states, raising operators, and the generic
//! and variant Bell operators.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * `omega(d, x) = exp(-2*pi*i*x/d)` for rational `x`. The orientation of
//!   the primitive root is chosen so that at `d = 2` the two observables
//!   come out entrywise as the Pauli matrices `sigma_x` and `sigma_y`.
//! * The computational basis `|0>, ..., |d-1>` indexes rows/columns; the
//!   multiparty index is big-endian (party 1 is the most significant digit),
//!   so `|a_1, ..., a_N>` sits at `a_1 d^(N-1) + ... + a_N`.
//! * Observables are built from their spectral definition
//!   `V = sum_a omega^a |a><a|_V`, not from closed-form entries, so the
//!   maximal-test property (d distinct root-of-unity eigenvalues) holds by
//!   construction and is checked after.

use num_complex::Complex64;

use crate::tensor::{expectation, ComplexMatrix, StateVector, DIM_CAP};
use crate::{Error, Rational, Result};

/// Which of the two per-party observables is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Setting {
    A,
    B,
}

impl std::fmt::Display for Setting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Setting::A => write!(f, "A"),
            Setting::B => write!(f, "B"),
        }
    }
}

/// One Bell inequality: N parties, d outcomes per observable, and a variant
/// phase nu (nu = 0 is the generic inequality).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scenario {
    parties: usize,
    dim: usize,
    nu: Rational,
}

impl Scenario {
    pub fn new(parties: usize, dim: usize, nu: Rational) -> Result<Self> {
        if parties < 2 {
            return Err(Error::InvalidScenario {
                reason: format!("need at least 2 parties, got {parties}"),
            });
        }
        if dim < 2 {
            return Err(Error::InvalidScenario {
                reason: format!("need at least 2 outcomes per observable, got {dim}"),
            });
        }
        // The classical strategy space d^(2N) must stay countable in u64.
        let mut count: u128 = 1;
        for _ in 0..2 * parties {
            count = count.saturating_mul(dim as u128);
            if count > u64::MAX as u128 {
                return Err(Error::InvalidScenario {
                    reason: format!(
                        "strategy space {dim}^(2*{parties}) does not fit in a 64-bit count"
                    ),
                });
            }
        }
        Ok(Self { parties, dim, nu })
    }

    /// The generic inequality (nu = 0).
    pub fn generic(parties: usize, dim: usize) -> Result<Self> {
        Self::new(parties, dim, Rational::from_integer(0))
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nu(&self) -> Rational {
        self.nu
    }

    /// Total Hilbert-space dimension d^N, checked against [`DIM_CAP`].
    pub fn hilbert_dim(&self) -> Result<usize> {
        let mut acc: u128 = 1;
        for _ in 0..self.parties {
            acc *= self.dim as u128;
            if acc > DIM_CAP as u128 {
                return Err(Error::DimensionLimit {
                    requested: acc,
                    cap: DIM_CAP,
                });
            }
        }
        Ok(acc as usize)
    }

    /// Number of deterministic strategies, d^(2N).
    pub fn strategy_count(&self) -> u64 {
        let mut acc: u64 = 1;
        for _ in 0..2 * self.parties {
            acc *= self.dim as u64;
        }
        acc
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(N={}, d={}, nu={})", self.parties, self.dim, self.nu)
    }
}

/// `omega(d, x) = exp(-2*pi*i*x/d)` for a rational exponent `x`.
///
/// The exponent is reduced modulo d in exact arithmetic before the angle is
/// formed, so large integer exponents do not lose precision.
pub fn omega(d: usize, exponent: Rational) -> Complex64 {
    let period = Rational::from_integer(d as i64);
    let reduced = exponent - (exponent / period).floor() * period;
    let angle = -std::f64::consts::TAU * (*reduced.numer() as f64)
        / (*reduced.denom() as f64 * d as f64);
    Complex64::from_polar(1.0, angle)
}

/// `omega` with an integer exponent.
pub fn omega_int(d: usize, exponent: i64) -> Complex64 {
    omega(d, Rational::from_integer(exponent))
}

/// The half step `omega^(1/2)`; satisfies `half(d)^d = -1`.
pub fn omega_half_step(d: usize) -> Complex64 {
    omega(d, Rational::new(1, 2))
}

/// Discrete Fourier matrix with `F[b][a] = omega^(-a*b)/sqrt(d)`, so that
/// column `a` is the eigenvector of the first observable with eigenvalue
/// `omega^a`.
pub fn fourier_matrix(d: usize) -> ComplexMatrix {
    let scale = 1.0 / (d as f64).sqrt();
    ComplexMatrix::from_fn(d, |b, a| {
        omega_int(d, -((a * b) as i64)) * scale
    })
}

/// Diagonal phase shift `P_nu |a> = omega^(-nu*a) |a>`.
pub fn phase_shift(d: usize, nu: Rational) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, |r, c| {
        if r == c {
            omega(d, -nu * Rational::from_integer(r as i64))
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// A unitary observable together with its spectral data: a maximal test with
/// the d-th roots of unity as eigenvalues.
#[derive(Clone, Debug)]
pub struct Observable {
    pub matrix: ComplexMatrix,
    pub label: Setting,
    pub eigenbasis: Vec<StateVector>,
    pub eigenvalues: Vec<Complex64>,
}

impl Observable {
    /// Largest residual over the defining properties: unitarity and the
    /// eigenrelation `M v_a = omega^a v_a` for every a.
    pub fn verify(&self) -> f64 {
        let mut worst = self.matrix.unitarity_defect();
        for (vec, lambda) in self.eigenbasis.iter().zip(&self.eigenvalues) {
            let applied = self
                .matrix
                .apply(vec.amplitudes())
                .expect("eigenbasis matches matrix dimension");
            let residual = applied
                .iter()
                .zip(vec.amplitudes())
                .map(|(got, v)| (got - lambda * v).norm())
                .fold(0.0, f64::max);
            worst = worst.max(residual);
        }
        worst
    }
}

/// Builds one of the two observables for a d-outcome party.
///
/// The `A` eigenvectors are the Fourier images `F|a>`; the `B` eigenvectors
/// carry the extra half-step phase, `P_(1/2) F|a>`. At d = 2 these are
/// exactly `sigma_x` and `sigma_y`.
pub fn observable(d: usize, label: Setting) -> Observable {
    let fourier = fourier_matrix(d);
    let half_phase = phase_shift(d, Rational::new(1, 2));
    let eigenvalues: Vec<Complex64> = (0..d).map(|a| omega_int(d, a as i64)).collect();
    let mut eigenbasis = Vec::with_capacity(d);
    for a in 0..d {
        let mut col: Vec<Complex64> = (0..d).map(|b| fourier.get(b, a)).collect();
        if label == Setting::B {
            for (b, amp) in col.iter_mut().enumerate() {
                *amp *= half_phase.get(b, b);
            }
        }
        eigenbasis.push(StateVector::new(col).expect("Fourier columns are unit vectors"));
    }
    let mut matrix = ComplexMatrix::zeros(d);
    for (vec, lambda) in eigenbasis.iter().zip(&eigenvalues) {
        let amps = vec.amplitudes();
        for r in 0..d {
            for c in 0..d {
                let cur = matrix.get(r, c);
                matrix.set(r, c, cur + lambda * amps[r] * amps[c].conj());
            }
        }
    }
    Observable {
        matrix,
        label,
        eigenbasis,
        eigenvalues,
    }
}

/// Generalized GHZ state `(1/sqrt(d)) sum_a |a>^(tensor N)`.
pub fn ghz_state(parties: usize, dim: usize) -> Result<StateVector> {
    let scenario = Scenario::generic(parties, dim)?;
    let total = scenario.hilbert_dim()?;
    let mut amps = vec![Complex64::new(0.0, 0.0); total];
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    let stride = diagonal_stride(parties, dim);
    for a in 0..dim {
        amps[a * stride] = amp;
    }
    StateVector::new(amps)
}

/// Index stride of `|a, a, ..., a>`: 1 + d + ... + d^(N-1).
fn diagonal_stride(parties: usize, dim: usize) -> usize {
    let mut stride = 0usize;
    let mut power = 1usize;
    for _ in 0..parties {
        stride += power;
        power *= dim;
    }
    stride
}

/// The raising operator: `J|a> = |a+1>` for `a < d-1` and `J|d-1> = 0`.
///
/// It also equals `(A + omega^(1/2) B)/2` for the two observables above; the
/// identity is cross-checked in tests rather than assumed here.
pub fn raising_operator(d: usize) -> ComplexMatrix {
    n_level_raising(d, 1)
}

/// `J^n` built directly: `|a> -> |a+n>` where that stays in range.
fn n_level_raising(d: usize, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, |r, c| {
        if n < d && r == c + n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// The Bell operator `sum_n omega^(nu*n) (tensor_j J_j^n) + h.c.`; `nu = 0`
/// gives the generic operator. Hermitian by construction.
pub fn bell_operator(scenario: &Scenario) -> Result<ComplexMatrix> {
    let d = scenario.dim();
    let total = scenario.hilbert_dim()?;
    let mut sum = ComplexMatrix::zeros(total);
    for n in 1..d {
        let single = n_level_raising(d, n);
        let mut product = single.clone();
        for _ in 1..scenario.parties() {
            product = product.kron(&single)?;
        }
        let weight = omega(d, scenario.nu() * Rational::from_integer(n as i64));
        sum = sum.add(&product.scale(weight))?;
    }
    sum.add(&sum.adjoint())
}

/// The state saturating the quantum bound: the GHZ state carried through the
/// local phase rotation that turns the generic operator into the variant,
/// `(I x ... x I x P_nu)^dagger |GHZ>`. Its Bell expectation is `d - 1`.
pub fn optimal_state(scenario: &Scenario) -> Result<StateVector> {
    let d = scenario.dim();
    let total = scenario.hilbert_dim()?;
    let mut amps = vec![Complex64::new(0.0, 0.0); total];
    let scale = 1.0 / (d as f64).sqrt();
    let stride = diagonal_stride(scenario.parties(), d);
    for a in 0..d {
        // P_nu^dagger adds the phase omega^(+nu*a) on the last party.
        amps[a * stride] = omega(d, scenario.nu() * Rational::from_integer(a as i64)) * scale;
    }
    StateVector::new(amps)
}

/// n-th order correlation `<psi| V_1^n x ... x V_N^n |psi>` for one choice
/// of per-party settings. Its magnitude never exceeds 1, and
/// `correlation(.., d - n) = conj(correlation(.., n))`.
pub fn correlation(state: &StateVector, settings: &[Setting], n: usize) -> Result<Complex64> {
    let parties = settings.len();
    if parties < 2 {
        return Err(Error::InvalidConfig {
            reason: "need settings for at least 2 parties".into(),
        });
    }
    let d = infer_local_dim(state.len(), parties)?;
    if n == 0 || n >= d {
        return Err(Error::InvalidConfig {
            reason: format!("correlation order n={n} outside 1..={}", d - 1),
        });
    }
    let pow_a = observable(d, Setting::A).matrix.matpow(n);
    let pow_b = observable(d, Setting::B).matrix.matpow(n);
    let pick = |s: &Setting| match s {
        Setting::A => &pow_a,
        Setting::B => &pow_b,
    };
    let mut op = pick(&settings[0]).clone();
    for s in &settings[1..] {
        op = op.kron(pick(s))?;
    }
    expectation(state, &op)
}

/// Recovers d from `len = d^parties`.
fn infer_local_dim(len: usize, parties: usize) -> Result<usize> {
    let mut d = (len as f64).powf(1.0 / parties as f64).round() as usize;
    d = d.max(1);
    for candidate in [d.saturating_sub(1), d, d + 1] {
        if candidate >= 2 && candidate.checked_pow(parties as u32) == Some(len) {
            return Ok(candidate);
        }
    }
    Err(Error::ShapeMismatch {
        left: len,
        right: parties,
    })
}

/// Tripartite Bell value in correlator form:
/// `(1/4) sum_n (E^n_AAA + omega^n E^n_ABB + omega^n E^n_BAB + omega^n E^n_BBA)`.
///
/// Agrees with `expectation(state, bell_operator(N=3, d, nu=0))` on any
/// state, which the tests exercise.
pub fn bell_value_correlator_form(state: &StateVector, d: usize) -> Result<f64> {
    if d < 2 || d.checked_pow(3) != Some(state.len()) {
        return Err(Error::ShapeMismatch {
            left: state.len(),
            right: d,
        });
    }
    let mut total = Complex64::new(0.0, 0.0);
    use Setting::{A, B};
    for n in 1..d {
        let e_aaa = correlation(state, &[A, A, A], n)?;
        let e_abb = correlation(state, &[A, B, B], n)?;
        let e_bab = correlation(state, &[B, A, B], n)?;
        let e_bba = correlation(state, &[B, B, A], n)?;
        total += e_aaa + omega_int(d, n as i64) * (e_abb + e_bab + e_bba);
    }
    Ok(0.25 * total.re)
}

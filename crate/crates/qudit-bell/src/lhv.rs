//! Classical (local-realistic) side: evaluates the Bell function on
//! deterministic hidden-variable strategies and maximizes it over the full
//! d^(2N) strategy space, exhaustively or by seeded sampling.
//!
//! The local-hidden-variable optimum is attained on deterministic
//! assignments (averaging over a hidden parameter cannot beat the best
//! single assignment), so the engine enumerates per-party integer exponent
//! pairs (alpha_j, beta_j) only.
//!
//! Determinism contract: results are bit-identical for any worker count.
//! The strategy space is split into fixed contiguous chunks, each chunk is
//! scanned sequentially, chunk results are collected in chunk order, and the
//! final reduction is a sequential fold with a lexicographic tie-break.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::qm::{omega, Scenario};
use crate::{Error, Rational, Result};

/// Default ceiling on exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;

/// Values within this of each other are treated as tied maxima; ties resolve
/// to the lexicographically smallest strategy.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Strategies per parallel work unit.
const CHUNK: u64 = 1 << 14;

/// One deterministic assignment: party j answers `omega^alpha_j` to the
/// first observable and `omega^beta_j` to the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

impl Strategy {
    pub fn new(alpha: Vec<usize>, beta: Vec<usize>) -> Self {
        Self { alpha, beta }
    }

    pub fn validate(&self, scenario: &Scenario) -> Result<()> {
        let n = scenario.parties();
        let d = scenario.dim();
        if self.alpha.len() != n || self.beta.len() != n {
            return Err(Error::InvalidStrategy {
                reason: format!(
                    "expected {n} entries per list, got {} alphas and {} betas",
                    self.alpha.len(),
                    self.beta.len()
                ),
            });
        }
        for &x in self.alpha.iter().chain(&self.beta) {
            if x >= d {
                return Err(Error::InvalidStrategy {
                    reason: format!("exponent {x} outside 0..{d}"),
                });
            }
        }
        Ok(())
    }

    fn from_digits(digits: &[usize]) -> Self {
        let n = digits.len() / 2;
        let mut alpha = Vec::with_capacity(n);
        let mut beta = Vec::with_capacity(n);
        for j in 0..n {
            alpha.push(digits[2 * j]);
            beta.push(digits[2 * j + 1]);
        }
        Self { alpha, beta }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "alpha={:?} beta={:?}", self.alpha, self.beta)
    }
}

/// What the search maximizes: the Bell value itself, or its magnitude (the
/// two-sided reading of the inequality). Neither is singled out as canonical;
/// the default everywhere is `Value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Value,
    Magnitude,
}

impl Objective {
    #[inline]
    fn key(self, value: f64) -> f64 {
        match self {
            Objective::Value => value,
            Objective::Magnitude => value.abs(),
        }
    }
}

/// Outcome of a maximization run.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxResult {
    /// Objective value of `argmax` (the plain Bell value, or its magnitude
    /// under [`Objective::Magnitude`]).
    pub max_value: f64,
    /// Lexicographically smallest strategy attaining the maximum (within
    /// [`TIE_TOLERANCE`]).
    pub argmax: Strategy,
    pub strategies_evaluated: u64,
    pub exhaustive: bool,
}

/// Deterministic value of the Bell function for one strategy:
/// `2 Re[ 2^(-N) sum_n omega^(nu n) prod_j (omega^(n alpha_j) + omega^(n (beta_j + 1/2))) ]`.
///
/// This is the straightforward evaluation; the search loop uses a factor
/// table that the tests check against this function.
pub fn classical_bell_value(scenario: &Scenario, strategy: &Strategy) -> Result<f64> {
    strategy.validate(scenario)?;
    let d = scenario.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..d {
        let mut term = omega(d, scenario.nu() * Rational::from_integer(n as i64));
        for (&a, &b) in strategy.alpha.iter().zip(&strategy.beta) {
            let fa = omega(d, Rational::from_integer((n * a) as i64));
            // n (beta + 1/2) = (2 beta + 1) n / 2
            let fb = omega(d, Rational::new(((2 * b + 1) * n) as i64, 2));
            term *= fa + fb;
        }
        acc += term;
    }
    Ok(acc.re * prefactor(scenario.parties()))
}

/// 2 / 2^N.
#[inline]
fn prefactor(parties: usize) -> f64 {
    2.0 / (1u64 << parties) as f64
}

/// Per-party factor cache: for every outcome pair (a, b) and every order n,
/// the complex factor `omega^(n a) + omega^(n (b + 1/2))`, shared read-only
/// by all workers. A strategy evaluation is then N(d-1) complex multiplies.
struct FactorTable {
    parties: usize,
    dim: usize,
    /// omega^(nu n), n = 1..d-1.
    weights: Vec<Complex64>,
    /// `[(n-1) d^2 + a d + b]`.
    factors: Vec<Complex64>,
    prefactor: f64,
}

impl FactorTable {
    fn build(scenario: &Scenario) -> Self {
        let d = scenario.dim();
        let mut weights = Vec::with_capacity(d - 1);
        let mut factors = vec![Complex64::new(0.0, 0.0); (d - 1) * d * d];
        for n in 1..d {
            weights.push(omega(d, scenario.nu() * Rational::from_integer(n as i64)));
            for a in 0..d {
                let fa = omega(d, Rational::from_integer((n * a) as i64));
                for b in 0..d {
                    let fb = omega(d, Rational::new(((2 * b + 1) * n) as i64, 2));
                    factors[(n - 1) * d * d + a * d + b] = fa + fb;
                }
            }
        }
        Self {
            parties: scenario.parties(),
            dim: d,
            weights,
            factors,
            prefactor: prefactor(scenario.parties()),
        }
    }

    /// Bell value from interleaved digits (alpha_1, beta_1, ...).
    #[inline]
    fn value(&self, digits: &[usize]) -> f64 {
        let d = self.dim;
        let dd = d * d;
        let mut acc = Complex64::new(0.0, 0.0);
        for (n_idx, &w) in self.weights.iter().enumerate() {
            let block = &self.factors[n_idx * dd..(n_idx + 1) * dd];
            let mut term = w;
            for j in 0..self.parties {
                term *= block[digits[2 * j] * d + digits[2 * j + 1]];
            }
            acc += term;
        }
        acc.re * self.prefactor
    }
}

/// A candidate maximum: objective key plus the strategy digits achieving it.
#[derive(Clone)]
struct Candidate {
    key: f64,
    digits: Vec<usize>,
}

/// True if `a` precedes `b` in lexicographic (alpha vector, beta vector)
/// order. Digits are interleaved, so compare all alphas first, then betas.
fn lex_less(a: &[usize], b: &[usize]) -> bool {
    let n = a.len() / 2;
    let key = |d: &[usize], i: usize| if i < n { d[2 * i] } else { d[2 * (i - n) + 1] };
    for i in 0..2 * n {
        let (x, y) = (key(a, i), key(b, i));
        if x != y {
            return x < y;
        }
    }
    false
}

fn consider(best: &mut Option<Candidate>, key: f64, digits: &[usize]) {
    match best {
        None => {
            *best = Some(Candidate {
                key,
                digits: digits.to_vec(),
            })
        }
        Some(cur) => {
            let strictly_better = key > cur.key + TIE_TOLERANCE;
            let tied_but_smaller =
                (key - cur.key).abs() <= TIE_TOLERANCE && lex_less(digits, &cur.digits);
            if strictly_better || tied_but_smaller {
                cur.key = key;
                cur.digits.clear();
                cur.digits.extend_from_slice(digits);
            }
        }
    }
}

fn merge(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if x.key > y.key + TIE_TOLERANCE {
                Some(x)
            } else if y.key > x.key + TIE_TOLERANCE {
                Some(y)
            } else if lex_less(&x.digits, &y.digits) {
                Some(x)
            } else {
                Some(y)
            }
        }
    }
}

/// Decodes a strategy index into interleaved digits; index 0 is the all-zero
/// strategy and alpha_1 is the most significant digit.
fn decode_index(mut index: u64, parties: usize, d: usize) -> Vec<usize> {
    let width = 2 * parties;
    let mut digits = vec![0usize; width];
    for slot in (0..width).rev() {
        digits[slot] = (index % d as u64) as usize;
        index /= d as u64;
    }
    digits
}

/// Odometer increment in enumeration order.
#[inline]
fn increment(digits: &mut [usize], d: usize) {
    for slot in (0..digits.len()).rev() {
        digits[slot] += 1;
        if digits[slot] < d {
            return;
        }
        digits[slot] = 0;
    }
}

/// Exhaustive maximum over all d^(2N) strategies with the default objective
/// and enumeration cap.
pub fn brute_force_max(scenario: &Scenario) -> Result<MaxResult> {
    brute_force_max_with(scenario, Objective::Value, DEFAULT_ENUMERATION_CAP)
}

/// Exhaustive maximum with an explicit objective and cap.
pub fn brute_force_max_with(
    scenario: &Scenario,
    objective: Objective,
    cap: u64,
) -> Result<MaxResult> {
    let total = scenario.strategy_count();
    if total > cap {
        return Err(Error::EnumerationLimit {
            strategies: total as u128,
            cap,
        });
    }
    let table = FactorTable::build(scenario);
    let d = scenario.dim();
    let parties = scenario.parties();
    let chunks: u64 = total.div_ceil(CHUNK);

    let per_chunk: Vec<Option<Candidate>> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut digits = decode_index(start, parties, d);
            let mut best = None;
            for _ in start..end {
                let key = objective.key(table.value(&digits));
                consider(&mut best, key, &digits);
                increment(&mut digits, d);
            }
            best
        })
        .collect();

    let best = per_chunk
        .into_iter()
        .fold(None, merge)
        .expect("strategy space is nonempty");
    Ok(MaxResult {
        max_value: best.key,
        argmax: Strategy::from_digits(&best.digits),
        strategies_evaluated: total,
        exhaustive: true,
    })
}

/// Maximum over `samples` strategies drawn from a seeded deterministic
/// stream with the default objective.
///
/// The stream is a keyed permutation of the strategy indices, so any
/// `samples >= d^(2N)` run touches every strategy and reproduces the
/// exhaustive maximum (while still reporting `exhaustive = false`).
pub fn sampled_max(scenario: &Scenario, samples: u64, seed: u64) -> Result<MaxResult> {
    sampled_max_with(scenario, samples, seed, Objective::Value)
}

pub fn sampled_max_with(
    scenario: &Scenario,
    samples: u64,
    seed: u64,
    objective: Objective,
) -> Result<MaxResult> {
    if samples == 0 {
        return Err(Error::InvalidConfig {
            reason: "sampled search needs at least one sample".into(),
        });
    }
    let total = scenario.strategy_count();
    let table = FactorTable::build(scenario);
    let d = scenario.dim();
    let parties = scenario.parties();
    let permutation = FeistelPermutation::new(total, seed);
    let chunks: u64 = samples.div_ceil(CHUNK);

    let per_chunk: Vec<Option<Candidate>> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * CHUNK;
            let end = (start + CHUNK).min(samples);
            let mut best = None;
            for i in start..end {
                let index = permutation.apply(i % total);
                let digits = decode_index(index, parties, d);
                let key = objective.key(table.value(&digits));
                consider(&mut best, key, &digits);
            }
            best
        })
        .collect();

    let best = per_chunk
        .into_iter()
        .fold(None, merge)
        .expect("at least one sample");
    Ok(MaxResult {
        max_value: best.key,
        argmax: Strategy::from_digits(&best.digits),
        strategies_evaluated: samples,
        exhaustive: false,
    })
}

/// SplitMix64: the counter-based generator behind the sampled stream.
/// Exposed so tests and examples can derive reproducible pseudorandom data.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Keyed bijection on [0, size) built from a 4-round balanced Feistel
/// network with cycle walking, mapping sample counters to strategy indices.
struct FeistelPermutation {
    half_bits: u32,
    mask: u64,
    keys: [u64; 4],
    size: u64,
}

impl FeistelPermutation {
    fn new(size: u64, seed: u64) -> Self {
        debug_assert!(size >= 1);
        let bits = 64 - size.saturating_sub(1).leading_zeros();
        let half_bits = (bits.div_ceil(2)).clamp(1, 32);
        let mask = if half_bits == 32 {
            u32::MAX as u64
        } else {
            (1u64 << half_bits) - 1
        };
        let keys = std::array::from_fn(|i| splitmix64(seed ^ (i as u64).wrapping_mul(0xA5A5_A5A5_A5A5_A5A5).wrapping_add(1)));
        Self {
            half_bits,
            mask,
            keys,
            size,
        }
    }

    fn apply(&self, x: u64) -> u64 {
        debug_assert!(x < self.size);
        let mut y = self.encrypt(x);
        // Walk cycles until we land back inside [0, size); the domain is
        // less than 4x the size, so this terminates quickly.
        while y >= self.size {
            y = self.encrypt(y);
        }
        y
    }

    fn encrypt(&self, x: u64) -> u64 {
        let mut l = (x >> self.half_bits) & self.mask;
        let mut r = x & self.mask;
        for key in self.keys {
            let next = l ^ (splitmix64(key ^ r) & self.mask);
            l = r;
            r = next;
        }
        (l << self.half_bits) | r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qm::Scenario;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn scenario(n: usize, d: usize, nu: Rational) -> Scenario {
        Scenario::new(n, d, nu).unwrap()
    }

    #[test]
    fn hand_evaluated_strategy_value() {
        // (N=3, d=2, nu=0), all-zero strategy: each factor is 1 + i,
        // (1+i)^3 = -2+2i, value = 2 Re[(-2+2i)/8] = -1/2.
        let s = scenario(3, 2, rat(0, 1));
        let strat = Strategy::new(vec![0, 0, 0], vec![0, 0, 0]);
        let v = classical_bell_value(&s, &strat).unwrap();
        assert!((v - (-0.5)).abs() < 1e-14, "v = {v}");
    }

    #[test]
    fn qubit_generic_values_are_bounded_by_half() {
        let s = scenario(3, 2, rat(0, 1));
        let mut digits = vec![0usize; 6];
        for _ in 0..64 {
            let strat = Strategy::from_digits(&digits);
            let v = classical_bell_value(&s, &strat).unwrap();
            assert!(v.abs() <= 0.5 + 1e-12, "{strat}: {v}");
            increment(&mut digits, 2);
        }
    }

    #[test]
    fn rejects_out_of_range_strategies() {
        let s = scenario(2, 3, rat(0, 1));
        let bad = Strategy::new(vec![0, 3], vec![0, 0]);
        assert!(matches!(
            classical_bell_value(&s, &bad),
            Err(Error::InvalidStrategy { .. })
        ));
        let short = Strategy::new(vec![0], vec![0, 0]);
        assert!(short.validate(&s).is_err());
    }

    #[test]
    fn uniform_shift_leaves_value_unchanged() {
        // Adding c to every exponent multiplies each order-n term by
        // omega^(n N c); with N c = 0 mod d nothing changes.
        let cases = [
            (scenario(2, 4, rat(0, 1)), 2usize),  // N c = 4 = 0 mod 4
            (scenario(3, 3, rat(1, 4)), 1usize),  // N c = 3 = 0 mod 3
            (scenario(3, 3, rat(1, 4)), 2usize),
        ];
        for (s, c) in cases {
            let d = s.dim();
            let base = Strategy::new(
                (0..s.parties()).map(|j| j % d).collect(),
                (0..s.parties()).map(|j| (j + 1) % d).collect(),
            );
            let shifted = Strategy::new(
                base.alpha.iter().map(|&a| (a + c) % d).collect(),
                base.beta.iter().map(|&b| (b + c) % d).collect(),
            );
            let v0 = classical_bell_value(&s, &base).unwrap();
            let v1 = classical_bell_value(&s, &shifted).unwrap();
            assert!((v0 - v1).abs() < 1e-12, "{s}: {v0} vs {v1}");
        }
    }

    #[test]
    fn factor_table_matches_naive_evaluation() {
        // 10^4 pseudorandom strategies across a few scenarios.
        for s in [
            scenario(3, 4, rat(0, 1)),
            scenario(2, 5, rat(1, 4)),
            scenario(4, 3, rat(-2, 7)),
        ] {
            let table = FactorTable::build(&s);
            let width = 2 * s.parties();
            let d = s.dim();
            for i in 0..10_000u64 {
                let mut x = splitmix64(i ^ 0xD1CE);
                let digits: Vec<usize> = (0..width)
                    .map(|_| {
                        x = splitmix64(x);
                        (x % d as u64) as usize
                    })
                    .collect();
                let fast = table.value(&digits);
                let naive =
                    classical_bell_value(&s, &Strategy::from_digits(&digits)).unwrap();
                assert!(
                    (fast - naive).abs() < 1e-12,
                    "{s} digits={digits:?}: {fast} vs {naive}"
                );
            }
        }
    }

    #[test]
    fn generic_even_dimension_maximum() {
        // 3d/4 - 1 at (N=3, d=4).
        let res = brute_force_max(&scenario(3, 4, rat(0, 1))).unwrap();
        assert!((res.max_value - 2.0).abs() < 1e-9);
        assert!(res.exhaustive);
        assert_eq!(res.strategies_evaluated, 4096);
    }

    #[test]
    fn generic_odd_dimension_maximum() {
        // d - 1 at (N=3, d=3).
        let res = brute_force_max(&scenario(3, 3, rat(0, 1))).unwrap();
        assert!((res.max_value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn quarter_variant_two_qubit_maximum() {
        let res = brute_force_max(&scenario(2, 2, rat(1, 4))).unwrap();
        assert!((res.max_value - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn reported_value_belongs_to_reported_argmax() {
        for s in [scenario(3, 2, rat(0, 1)), scenario(2, 3, rat(1, 4))] {
            let res = brute_force_max(&s).unwrap();
            let recomputed = classical_bell_value(&s, &res.argmax).unwrap();
            assert!((res.max_value - recomputed).abs() < 1e-14);
        }
    }

    #[test]
    fn argmax_is_lexicographically_smallest() {
        let s = scenario(3, 2, rat(0, 1));
        let res = brute_force_max(&s).unwrap();
        // Reference scan: collect every strategy within the tie band of the
        // true maximum and take the lexicographic minimum.
        let mut best_val = f64::NEG_INFINITY;
        let mut digits = vec![0usize; 6];
        let mut all: Vec<(f64, Vec<usize>)> = Vec::new();
        for _ in 0..64 {
            let v = classical_bell_value(&s, &Strategy::from_digits(&digits)).unwrap();
            best_val = best_val.max(v);
            all.push((v, digits.clone()));
            increment(&mut digits, 2);
        }
        let mut tied: Vec<Vec<usize>> = all
            .into_iter()
            .filter(|(v, _)| (*v - best_val).abs() <= TIE_TOLERANCE)
            .map(|(_, dg)| dg)
            .collect();
        tied.sort_by(|a, b| {
            if lex_less(a, b) {
                std::cmp::Ordering::Less
            } else if lex_less(b, a) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        assert_eq!(res.argmax, Strategy::from_digits(&tied[0]));
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let s = scenario(3, 4, rat(0, 1)); // 4096 strategies
        let err = brute_force_max_with(&s, Objective::Value, 1000).unwrap_err();
        assert!(matches!(err, Error::EnumerationLimit { strategies: 4096, cap: 1000 }));
    }

    #[test]
    fn full_period_sampling_reproduces_brute_force() {
        for s in [scenario(2, 2, rat(0, 1)), scenario(2, 2, rat(1, 4))] {
            let brute = brute_force_max(&s).unwrap();
            let sampled = sampled_max(&s, s.strategy_count(), 7).unwrap();
            assert_eq!(sampled.max_value, brute.max_value);
            assert_eq!(sampled.argmax, brute.argmax);
            assert!(!sampled.exhaustive);
        }
    }

    #[test]
    fn sampling_never_exceeds_the_true_maximum() {
        let s = scenario(3, 4, rat(0, 1));
        for seed in [0u64, 1, 42, 0xDEAD_BEEF] {
            let res = sampled_max(&s, 100_000, seed).unwrap();
            assert!(res.max_value <= 2.0 + 1e-9, "seed {seed}: {}", res.max_value);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let s = scenario(3, 3, rat(1, 4));
        let a = sampled_max(&s, 5000, 123).unwrap();
        let b = sampled_max(&s, 5000, 123).unwrap();
        assert_eq!(a, b);
        let c = sampled_max(&s, 5000, 124).unwrap();
        assert_eq!(c.strategies_evaluated, 5000);
    }

    #[test]
    fn results_are_identical_across_worker_counts() {
        let s = scenario(3, 3, rat(0, 1));
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| {
                (
                    brute_force_max(&s).unwrap(),
                    sampled_max(&s, 2000, 9).unwrap(),
                )
            })
        };
        let base = run(1);
        for threads in [2, 8] {
            assert_eq!(run(threads), base, "threads = {threads}");
        }
    }

    #[test]
    fn magnitude_objective_dominates_value_objective() {
        for s in [scenario(3, 2, rat(0, 1)), scenario(2, 3, rat(1, 8))] {
            let plain = brute_force_max(&s).unwrap();
            let magnitude =
                brute_force_max_with(&s, Objective::Magnitude, DEFAULT_ENUMERATION_CAP).unwrap();
            assert!(magnitude.max_value >= plain.max_value - 1e-12);
            let at_argmax = classical_bell_value(&s, &magnitude.argmax).unwrap();
            assert!((magnitude.max_value - at_argmax.abs()).abs() < 1e-14);
        }
    }

    #[test]
    fn feistel_is_a_permutation() {
        for size in [16u64, 81, 100, 1000] {
            for seed in [0u64, 1, 99] {
                let p = FeistelPermutation::new(size, seed);
                let mut seen = vec![false; size as usize];
                for i in 0..size {
                    let y = p.apply(i);
                    assert!(y < size);
                    assert!(!seen[y as usize], "collision at {i} (size {size}, seed {seed})");
                    seen[y as usize] = true;
                }
            }
        }
    }

    mod properties {
        use super::{Strategy as LhvStrategy, *};
        use crate::bounds::closed_classical_bound;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(256))]

            // Soundness: no strategy beats the closed-form bound where one
            // exists.
            #[test]
            fn no_strategy_exceeds_the_closed_bound(
                pick in 0usize..6,
                seed in any::<u64>(),
            ) {
                let scenarios = [
                    scenario(3, 2, rat(0, 1)),
                    scenario(3, 4, rat(0, 1)),
                    scenario(4, 2, rat(0, 1)),
                    scenario(2, 3, rat(1, 4)),
                    scenario(3, 3, rat(1, 4)),
                    scenario(5, 2, rat(1, 4)),
                ];
                let s = scenarios[pick];
                let d = s.dim();
                let mut x = seed;
                let digits: Vec<usize> = (0..2 * s.parties())
                    .map(|_| {
                        x = splitmix64(x);
                        (x % d as u64) as usize
                    })
                    .collect();
                let value =
                    classical_bell_value(&s, &LhvStrategy::from_digits(&digits)).unwrap();
                let bound = closed_classical_bound(&s).unwrap().value;
                prop_assert!(value <= bound + 1e-9, "{s}: {value} > {bound}");
            }

            // A global exponent shift with N c = 0 mod d never changes the
            // value.
            #[test]
            fn shift_invariance_holds_for_random_strategies(
                seed in any::<u64>(),
                c in 1usize..6,
            ) {
                let s = scenario(3, 3, rat(1, 4)); // N c = 3 c = 0 mod 3
                let d = s.dim();
                let mut x = seed;
                let digits: Vec<usize> = (0..6)
                    .map(|_| {
                        x = splitmix64(x);
                        (x % d as u64) as usize
                    })
                    .collect();
                let base = LhvStrategy::from_digits(&digits);
                let shifted = LhvStrategy::new(
                    base.alpha.iter().map(|&a| (a + c) % d).collect(),
                    base.beta.iter().map(|&b| (b + c) % d).collect(),
                );
                let v0 = classical_bell_value(&s, &base).unwrap();
                let v1 = classical_bell_value(&s, &shifted).unwrap();
                prop_assert!((v0 - v1).abs() < 1e-12);
            }
        }
    }
}

//! Minimal dense complex linear algebra: products, Kronecker products,
//! adjoints, matrix powers, expectation values, and Hermitian extremal
//! eigenvalues.
//!
//! Everything is double precision, row-major, and immutable after
//! construction; operators in this crate stay at a few thousand rows at most
//! (see [`DIM_CAP`]), so dense storage is the right trade-off.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

/// Hard cap on dense operator dimension; [`ComplexMatrix::kron`] refuses to
/// build anything larger.
pub const DIM_CAP: usize = 4096;

/// State vectors must be normalized to within this at construction.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Matrices whose hermiticity defect exceeds this are rejected by the
/// eigensolver; smaller defects are symmetrized away.
pub const HERMITICITY_THRESHOLD: f64 = 1e-8;

/// Convergence tolerance of the iterative extremal-eigenvalue method.
pub const EIGEN_TOLERANCE: f64 = 1e-10;

/// Above this dimension the eigensolver switches from a full Hermitian
/// decomposition to the iterative extremal method.
const FULL_EIG_MAX_DIM: usize = 1024;

/// Dense square complex matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix ({0}x{0})", self.dim)?;
        for r in 0..self.dim.min(8) {
            for c in 0..self.dim.min(8) {
                let z = self.get(r, c);
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        if self.dim > 8 {
            writeln!(f, " ...")?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.data[r * dim + c] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from explicit rows, validating shape and finiteness.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidConfig {
                reason: "matrix must have at least one row".into(),
            });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::ShapeMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            for z in row {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::InvalidConfig {
                        reason: "matrix entries must be finite".into(),
                    });
                }
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::ShapeMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row_b = &rhs.data[k * n..(k + 1) * n];
                let row_o = &mut out.data[i * n..(i + 1) * n];
                for (o, b) in row_o.iter_mut().zip(row_b) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::ShapeMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let mut out = self.clone();
        for (o, b) in out.data.iter_mut().zip(&rhs.data) {
            *o += b;
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for z in &mut out.data {
            *z *= s;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |r, c| self.data[c * n + r].conj())
    }

    /// Kronecker product; the big-endian convention puts `self` on the most
    /// significant index block.
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        let target = self.dim as u128 * rhs.dim as u128;
        if target > DIM_CAP as u128 {
            return Err(Error::DimensionLimit {
                requested: target,
                cap: DIM_CAP,
            });
        }
        let (da, db) = (self.dim, rhs.dim);
        let n = da * db;
        let mut out = Self::zeros(n);
        for i1 in 0..da {
            for j1 in 0..da {
                let a = self.data[i1 * da + j1];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for i2 in 0..db {
                    let dst = (i1 * db + i2) * n + j1 * db;
                    let src = i2 * db;
                    for j2 in 0..db {
                        out.data[dst + j2] = a * rhs.data[src + j2];
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self` raised to a nonnegative integer power; `n = 0` gives the
    /// identity.
    pub fn matpow(&self, n: usize) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..n {
            acc = acc.mul(self).expect("square matrices of equal dimension");
        }
        acc
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.dim {
            return Err(Error::ShapeMismatch {
                left: self.dim,
                right: x.len(),
            });
        }
        let n = self.dim;
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for (i, yi) in y.iter_mut().enumerate() {
            let row = &self.data[i * n..(i + 1) * n];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            *yi = acc;
        }
        Ok(y)
    }

    /// Largest entrywise deviation from `other`; handy residual for tests.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "comparing matrices of unequal size");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise magnitude of `m - m^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in r..n {
                let diff = (self.data[r * n + c] - self.data[c * n + r].conj()).norm();
                worst = worst.max(diff);
            }
        }
        worst
    }

    /// Largest entrywise deviation from unitarity, `max |U U^dagger - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.mul(&self.adjoint()).expect("same dimension");
        prod.max_abs_diff(&Self::identity(self.dim))
    }
}

/// Normalized complex vector; norm is enforced at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    data: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized to within
    /// [`NORM_TOLERANCE`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidConfig {
                reason: "state vector must have at least one amplitude".into(),
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                norm,
                tolerance: NORM_TOLERANCE,
            });
        }
        Ok(Self { data: amplitudes })
    }

    /// Rescales arbitrary amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized {
                norm,
                tolerance: NORM_TOLERANCE,
            });
        }
        let data = amplitudes.into_iter().map(|z| z / norm).collect();
        Ok(Self { data })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.data
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// `<state| op |state>`. For Hermitian `op` the imaginary part stays below
/// 1e-10 in magnitude.
pub fn expectation(state: &StateVector, op: &ComplexMatrix) -> Result<Complex64> {
    if state.len() != op.dim() {
        return Err(Error::ShapeMismatch {
            left: op.dim(),
            right: state.len(),
        });
    }
    let applied = op.apply(state.amplitudes())?;
    Ok(state
        .amplitudes()
        .iter()
        .zip(&applied)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Largest eigenvalue of a Hermitian matrix.
///
/// The input is rejected if its hermiticity defect exceeds
/// [`HERMITICITY_THRESHOLD`]; smaller defects are removed by explicit
/// symmetrization `(m + m^dagger)/2` before solving. Up to dimension 1024 a
/// full Hermitian decomposition is used; above that, a deterministic Lanczos
/// iteration seeded with the normalized all-ones vector.
pub fn max_hermitian_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    max_hermitian_eigenvalue_impl(m, FULL_EIG_MAX_DIM)
}

fn max_hermitian_eigenvalue_impl(m: &ComplexMatrix, full_threshold: usize) -> Result<f64> {
    let sym = symmetrize_checked(m)?;
    if sym.dim() <= full_threshold {
        let ev = to_nalgebra(&sym).symmetric_eigenvalues();
        Ok(ev.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
    } else {
        lanczos_max(&sym)
    }
}

/// Full Hermitian spectrum, ascending. O(dim^3); intended for the moderate
/// dimensions used in cross-checks.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let sym = symmetrize_checked(m)?;
    let ev = to_nalgebra(&sym).symmetric_eigenvalues();
    let mut vals: Vec<f64> = ev.iter().cloned().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

fn symmetrize_checked(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let defect = m.hermiticity_defect();
    if defect > HERMITICITY_THRESHOLD {
        return Err(Error::NotHermitian {
            defect,
            threshold: HERMITICITY_THRESHOLD,
        });
    }
    let n = m.dim();
    Ok(ComplexMatrix::from_fn(n, |r, c| {
        0.5 * (m.get(r, c) + m.get(c, r).conj())
    }))
}

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.dim(), m.dim(), m.entries())
}

/// Lanczos iteration with full reorthogonalization for the largest
/// eigenvalue. Deterministic: the Krylov space is seeded with the normalized
/// all-ones vector (with one fixed fallback seed in case of an invariant
/// subspace breakdown), so results do not depend on scheduling.
fn lanczos_max(m: &ComplexMatrix) -> Result<f64> {
    let n = m.dim();
    let ones = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let first = lanczos_from_seed(m, ones)?;
    match first {
        LanczosOutcome::Converged(v) => Ok(v),
        LanczosOutcome::Breakdown(best) => {
            // The all-ones seed spanned an invariant subspace; retry from a
            // generic deterministic direction and keep the larger estimate.
            let alt: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new((i as f64 + 1.0).sin(), (i as f64 + 1.0).cos()))
                .collect();
            let norm = alt.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let alt = alt.into_iter().map(|z| z / norm).collect();
            match lanczos_from_seed(m, alt)? {
                LanczosOutcome::Converged(v) | LanczosOutcome::Breakdown(v) => Ok(v.max(best)),
            }
        }
    }
}

enum LanczosOutcome {
    Converged(f64),
    /// Krylov space closed early; carries the best estimate found inside it.
    Breakdown(f64),
}

fn lanczos_from_seed(m: &ComplexMatrix, seed: Vec<Complex64>) -> Result<LanczosOutcome> {
    const MAX_STEPS: usize = 512;
    const SETTLED_STEPS: usize = 3;

    let n = m.dim();
    let mut basis: Vec<Vec<Complex64>> = vec![seed];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut theta_prev = f64::NEG_INFINITY;
    let mut settled = 0usize;

    for step in 0..MAX_STEPS.min(n) {
        let v = &basis[step];
        let mut w = m.apply(v)?;
        // alpha_k = <v_k, A v_k> is real for Hermitian A.
        let alpha: f64 = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        alphas.push(alpha);
        // Full reorthogonalization (two passes) keeps the basis clean.
        for _ in 0..2 {
            for b in &basis {
                let coeff: Complex64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= coeff * bi;
                }
            }
        }
        let beta = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

        let theta = tridiagonal_max_eigenvalue(&alphas, &betas);
        let scale = theta.abs().max(1.0);
        if (theta - theta_prev).abs() <= EIGEN_TOLERANCE * scale * 1e-1 {
            settled += 1;
            if settled >= SETTLED_STEPS {
                return Ok(LanczosOutcome::Converged(theta));
            }
        } else {
            settled = 0;
        }
        theta_prev = theta;

        if beta <= 1e-14 * scale {
            // Invariant subspace: theta is exact within span(basis).
            return Ok(LanczosOutcome::Breakdown(theta));
        }
        betas.push(beta);
        basis.push(w.into_iter().map(|z| z / beta).collect());
    }
    Err(Error::EigenNoConvergence {
        iterations: MAX_STEPS,
    })
}

/// Largest eigenvalue of a symmetric tridiagonal matrix by Sturm-sequence
/// bisection.
fn tridiagonal_max_eigenvalue(diag: &[f64], off: &[f64]) -> f64 {
    let k = diag.len();
    debug_assert_eq!(off.len() + 1, k);
    // Gershgorin bracket.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..k {
        let radius = if i > 0 { off[i - 1].abs() } else { 0.0 }
            + if i < k - 1 { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    if k == 1 {
        return diag[0];
    }
    // Count of eigenvalues < x via the LDL^T sign recurrence.
    let count_below = |x: f64| -> usize {
        let mut count = 0usize;
        let mut d = diag[0] - x;
        if d < 0.0 {
            count += 1;
        }
        for i in 1..k {
            let denom = if d.abs() < 1e-300 {
                1e-300_f64.copysign(d)
            } else {
                d
            };
            d = (diag[i] - x) - off[i - 1] * off[i - 1] / denom;
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    // Bisect for the largest eigenvalue: the smallest x with all k below it.
    let (mut lo, mut hi) = (lo, hi + 1e-12);
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if count_below(mid) == k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-14 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

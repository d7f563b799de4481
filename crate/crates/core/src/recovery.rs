//! Sparse recovery: orthogonal matching pursuit over real or complex
//! systems, the incremental least-squares kernel behind it, and an
//! exhaustive-search oracle for desk-scale instances.

use crate::matrix::{dotc, norm2, Mat, NormState, Scalar};
use crate::{Error, Result};

/// Condition-estimate ceiling for the QR kernel.
const CONDITION_LIMIT: f64 = 1e12;

/// Tie rule for equal correlation magnitudes during atom selection.
///
/// Ties have probability ~0 on generic float data but tests construct
/// them; the rule keeps trials reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestIndex,
}

/// Stopping rules for [`omp`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryConfig {
    pub max_iterations: usize,
    /// Absolute l2 residual threshold.
    pub residual_tolerance: f64,
    pub tie_break: TieBreak,
}

impl RecoveryConfig {
    /// Run exactly `k` iterations (unless the residual hits zero first).
    pub fn for_sparsity(k: usize) -> Self {
        RecoveryConfig {
            max_iterations: k,
            residual_tolerance: 0.0,
            tie_break: TieBreak::LowestIndex,
        }
    }

    /// Budget of `k` iterations with an early-out residual threshold.
    pub fn with_tolerance(k: usize, residual_tolerance: f64) -> Self {
        RecoveryConfig {
            max_iterations: k,
            residual_tolerance,
            tie_break: TieBreak::LowestIndex,
        }
    }

    /// No sparsity budget: iterate until the residual drops below
    /// `1e-9 * y_norm` (or the columns run out).
    pub fn auto(y_norm: f64) -> Self {
        RecoveryConfig {
            max_iterations: usize::MAX,
            residual_tolerance: 1e-9 * y_norm,
            tie_break: TieBreak::LowestIndex,
        }
    }
}

/// Outcome of a pursuit run. `support` is in selection order and
/// `coefficients` line up with it; both refer to the unit-norm columns the
/// solver saw, so callers rescale if they normalized beforehand.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult<T> {
    pub support: Vec<usize>,
    pub coefficients: Vec<T>,
    pub residual_norm: f64,
    pub iterations: usize,
    /// `[|y|, |r_1|, |r_2|, ...]` — non-increasing.
    pub residual_trace: Vec<f64>,
}

/// An OMP failure, carrying the partial result when the run broke down
/// mid-stream (rank-deficient selection).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{error}")]
pub struct OmpFailure<T> {
    pub error: Error,
    pub partial: Option<RecoveryResult<T>>,
}

impl<T> From<Error> for OmpFailure<T> {
    fn from(error: Error) -> Self {
        OmpFailure {
            error,
            partial: None,
        }
    }
}

/// Incrementally extended thin QR via modified Gram-Schmidt with one
/// reorthogonalization pass. Grows one column per OMP iteration.
struct IncrementalQr<T> {
    rows: usize,
    q: Vec<Vec<T>>,
    /// `r_cols[j]` holds R[0..=j, j].
    r_cols: Vec<Vec<T>>,
    diag_max: f64,
    diag_min: f64,
}

impl<T: Scalar> IncrementalQr<T> {
    fn new(rows: usize) -> Self {
        IncrementalQr {
            rows,
            q: Vec::new(),
            r_cols: Vec::new(),
            diag_max: 0.0,
            diag_min: f64::INFINITY,
        }
    }

    fn len(&self) -> usize {
        self.q.len()
    }

    fn push(&mut self, col: &[T]) -> Result<()> {
        debug_assert_eq!(col.len(), self.rows);
        let mut v = col.to_vec();
        let k = self.q.len();
        let mut rj = vec![T::ZERO; k + 1];
        for pass in 0..2 {
            for (i, qi) in self.q.iter().enumerate() {
                let h = dotc(qi, &v);
                for (ve, qe) in v.iter_mut().zip(qi) {
                    *ve = *ve - *qe * h;
                }
                rj[i] = if pass == 0 { h } else { rj[i] + h };
            }
        }
        let norm = norm2(&v);
        let diag_max = self.diag_max.max(norm);
        let diag_min = self.diag_min.min(norm);
        if norm == 0.0 || diag_max / norm > CONDITION_LIMIT {
            return Err(Error::RankDeficient(CONDITION_LIMIT));
        }
        let inv = 1.0 / norm;
        for ve in &mut v {
            *ve = ve.scale(inv);
        }
        rj[k] = T::from_real(norm);
        self.q.push(v);
        self.r_cols.push(rj);
        self.diag_max = diag_max;
        self.diag_min = diag_min;
        Ok(())
    }

    /// Solves `R c = qty` by back substitution.
    fn solve(&self, qty: &[T]) -> Vec<T> {
        let k = self.len();
        let mut c = vec![T::ZERO; k];
        for j in (0..k).rev() {
            let mut acc = qty[j];
            for i in j + 1..k {
                acc = acc - self.r_cols[i][j] * c[i];
            }
            c[j] = acc.div(self.r_cols[j][j]);
        }
        c
    }
}

/// Minimizes `|columns * c - y|_2` for a full-column-rank system.
/// Returns the coefficients and the residual vector `y - columns * c`.
pub fn least_squares<T: Scalar>(columns: &Mat<T>, y: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    if y.len() != columns.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, measurement has {} entries",
            columns.rows(),
            y.len()
        )));
    }
    if columns.cols() == 0 || columns.cols() > columns.rows() {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= cols <= rows, got {}x{}",
            columns.rows(),
            columns.cols()
        )));
    }
    let mut qr = IncrementalQr::new(columns.rows());
    for c in 0..columns.cols() {
        qr.push(&columns.col_to_vec(c))?;
    }
    let qty: Vec<T> = qr.q.iter().map(|qi| dotc(qi, y)).collect();
    let coeffs = qr.solve(&qty);
    let fitted = columns.mat_vec(&coeffs)?;
    let residual: Vec<T> = y.iter().zip(&fitted).map(|(&a, &b)| a - b).collect();
    Ok((coeffs, residual))
}

/// Orthogonal matching pursuit on a unit-column matrix.
///
/// Each iteration selects the column with the largest correlation modulus
/// against the current residual (ties to the lowest index), re-solves the
/// dense least-squares problem on the selected set, and updates the
/// residual. Stops at the iteration budget, at the residual threshold, or
/// when every remaining correlation is exactly zero.
pub fn omp<T: Scalar>(
    matrix: &Mat<T>,
    y: &[T],
    config: &RecoveryConfig,
) -> std::result::Result<RecoveryResult<T>, OmpFailure<T>> {
    if matrix.norm_state() != NormState::UnitColumns {
        return Err(Error::NotUnitColumns.into());
    }
    if y.len() != matrix.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, measurement has {} entries",
            matrix.rows(),
            y.len()
        ))
        .into());
    }
    let budget = config
        .max_iterations
        .min(matrix.rows())
        .min(matrix.cols());
    let mut qr = IncrementalQr::new(matrix.rows());
    let mut selected = vec![false; matrix.cols()];
    let mut support = Vec::new();
    let mut qty: Vec<T> = Vec::new();
    let mut residual: Vec<T> = y.to_vec();
    let mut residual_norm = norm2(y);
    let mut trace = vec![residual_norm];

    while support.len() < budget && residual_norm > config.residual_tolerance {
        let mut best = usize::MAX;
        let mut best_corr = 0.0f64;
        for c in 0..matrix.cols() {
            if selected[c] {
                continue;
            }
            let corr: T = {
                let mut acc = T::ZERO;
                for r in 0..matrix.rows() {
                    acc = acc + matrix.get(r, c).conj() * residual[r];
                }
                acc
            };
            let mag = corr.abs();
            // strict '>' keeps the lowest index on ties
            if mag > best_corr {
                best_corr = mag;
                best = c;
            }
        }
        if best == usize::MAX || best_corr == 0.0 {
            break;
        }

        let col = matrix.col_to_vec(best);
        if let Err(error) = qr.push(&col) {
            let coefficients = qr.solve(&qty);
            return Err(OmpFailure {
                error,
                partial: Some(RecoveryResult {
                    support,
                    coefficients,
                    residual_norm,
                    iterations: qr.len(),
                    residual_trace: trace,
                }),
            });
        }
        selected[best] = true;
        support.push(best);
        let q_new = qr.q.last().expect("just pushed");
        qty.push(dotc(q_new, y));
        // deflate: r <- r - q (q^H r), keeps r orthogonal to the span
        let h = dotc(q_new, &residual);
        for (re, qe) in residual.iter_mut().zip(q_new) {
            *re = *re - *qe * h;
        }
        residual_norm = norm2(&residual);
        trace.push(residual_norm);
    }

    let coefficients = qr.solve(&qty);
    Ok(RecoveryResult {
        iterations: support.len(),
        support,
        coefficients,
        residual_norm,
        residual_trace: trace,
    })
}

/// True iff the two index collections are equal as sets.
pub fn support_match(estimated: &[usize], truth: &[usize]) -> bool {
    let mut a = estimated.to_vec();
    let mut b = truth.to_vec();
    a.sort_unstable();
    a.dedup();
    b.sort_unstable();
    b.dedup();
    a == b
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Budget guard for the exhaustive oracle.
const EXHAUSTIVE_BUDGET: u128 = 1_000_000;

/// Brute-force sparse solve: least squares over every `k`-subset of
/// columns, returning the subset with the smallest residual norm. Ties go
/// to the lexicographically smallest support (first found wins; supports
/// are enumerated in lexicographic order). Subsets that fail the rank
/// check are skipped — they cannot beat a well-posed minimizer on the
/// matrices this oracle is meant for.
pub fn exhaustive_sparse_solve<T: Scalar>(
    matrix: &Mat<T>,
    y: &[T],
    k: usize,
) -> Result<(Vec<usize>, Vec<T>, f64)> {
    if y.len() != matrix.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, measurement has {} entries",
            matrix.rows(),
            y.len()
        )));
    }
    if k == 0 || k > matrix.rows() || k > matrix.cols() {
        return Err(Error::InvalidArgument(format!(
            "sparsity must be in 1..=min(rows, cols), got {k}"
        )));
    }
    let count = binomial(matrix.cols(), k);
    if count > EXHAUSTIVE_BUDGET {
        return Err(Error::BudgetExceeded {
            actual: count,
            budget: EXHAUSTIVE_BUDGET,
        });
    }

    let mut best: Option<(Vec<usize>, Vec<T>, f64)> = None;
    let mut support: Vec<usize> = (0..k).collect();
    loop {
        match least_squares(&matrix.select_columns(&support), y) {
            Ok((coeffs, residual)) => {
                let rn = norm2(&residual);
                if best.as_ref().map_or(true, |(_, _, b)| rn < *b) {
                    best = Some((support.clone(), coeffs, rn));
                }
            }
            Err(Error::RankDeficient(_)) => {}
            Err(e) => return Err(e),
        }
        // advance to the next combination in lexicographic order
        let n = matrix.cols();
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(best.expect("at least one support evaluated"));
            }
            i -= 1;
            if support[i] != i + n - k {
                break;
            }
        }
        support[i] += 1;
        for j in i + 1..k {
            support[j] = support[j - 1] + 1;
        }
    }
}

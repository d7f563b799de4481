//! Construction and analysis of the deterministic sensing matrix.
//!
//! For valid parameters `(N, p)` the matrix has entries
//! `A[m, n] = exp(j*2*pi * p*m^2 * n / N)` for `m = 1..=M`, `n = 1..=N`,
//! which is the partial Fourier matrix picking the quadratic-residue row
//! set `{p*m^2 mod N}`. Storage is 0-based; the `+1` shift from storage
//! index to the 1-based construction index happens in exactly one place,
//! [`build_sensing_matrix`] (and its random-baseline counterpart).

use crate::eigen::hermitian_eigenvalues;
use crate::matrix::{Mat, NormState};
use crate::numtheory::{gcd, Modulus};
use crate::rng::CounterRng;
use crate::{Complex64, ComplexMatrix, Error, Result};

/// The arithmetic frame everything is derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SensingParams {
    modulus: Modulus,
    m: usize,
    p: u64,
}

impl SensingParams {
    /// Validates `N` (prime, 3 mod 4, >= 7) and `p` (positive, coprime to
    /// `N`), and fixes `M = (N - 1) / 2`.
    pub fn new(n: u64, p: u64) -> Result<Self> {
        let modulus = Modulus::new(n)?;
        if p == 0 || gcd(p, n) != 1 {
            return Err(Error::NotCoprime { k: p as i64, n });
        }
        Ok(SensingParams {
            modulus,
            m: ((n - 1) / 2) as usize,
            p,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn n(&self) -> u64 {
        self.modulus.n()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

/// Statistics of extreme sub-Gram eigenvalues across random supports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSweepRecord {
    pub k: usize,
    pub trials: usize,
    pub mean_max_eig: f64,
    pub mean_min_eig: f64,
    pub extreme_max_eig: f64,
    pub extreme_min_eig: f64,
}

/// The two left-hand-side quantities of the statistical-RIP sufficient
/// condition, plus their ingredients. No pass/fail judgment is made: the
/// condition's constant is not pinned down, so callers compare
/// `coherence_term` against `c*delta` and `energy_term` against
/// `c*delta^2` for whatever constant they trust.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RipBoundReport {
    pub mu: f64,
    pub spectral_norm_sq: f64,
    pub delta: f64,
    pub epsilon: f64,
    /// `mu * ln(N / epsilon)`
    pub coherence_term: f64,
    /// `(k / N) * |Phi|_2^2 * ln(N / epsilon)`
    pub energy_term: f64,
}

/// `exp(j*2*pi*r/n)` for `r = 0..n`. All matrix entries are drawn from
/// this table so equal angles produce bit-equal values.
fn unity_table(n: u64) -> Vec<Complex64> {
    let step = 2.0 * std::f64::consts::PI / n as f64;
    (0..n)
        .map(|r| {
            let a = step * r as f64;
            Complex64::new(a.cos(), a.sin())
        })
        .collect()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// The M x N deterministic matrix, raw (unit-modulus entries).
pub fn build_sensing_matrix(params: &SensingParams) -> ComplexMatrix {
    let n = params.n();
    let p = params.p() % n;
    let table = unity_table(n);
    // storage row r is construction index m = r + 1, column c is n = c + 1
    Mat::from_fn(params.m(), n as usize, |r, c| {
        let m = r as u64 + 1;
        let residue = mul_mod(p, mul_mod(m, m, n), n);
        table[mul_mod(residue, c as u64 + 1, n) as usize]
    })
}

/// A random partial Fourier baseline: `m` distinct rows of the `n x n`
/// Fourier matrix, drawn uniformly without replacement.
pub fn random_partial_fourier(n: usize, m: usize, rng: &mut CounterRng) -> Result<ComplexMatrix> {
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= M <= N, got M={m}, N={n}"
        )));
    }
    let rows: Vec<u64> = rng
        .sample_distinct(n, m)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect();
    let table = unity_table(n as u64);
    Ok(Mat::from_fn(m, n, |r, c| {
        table[mul_mod(rows[r], c as u64 + 1, n as u64) as usize]
    }))
}

/// Coherence by brute force: the maximum inner-product modulus over all
/// unordered column pairs. Requires unit columns.
pub fn coherence_bruteforce(matrix: &ComplexMatrix) -> Result<f64> {
    if matrix.norm_state() != NormState::UnitColumns {
        return Err(Error::NotUnitColumns);
    }
    if matrix.cols() < 2 {
        return Err(Error::InvalidArgument(
            "coherence needs at least two columns".into(),
        ));
    }
    let mut max = 0.0f64;
    for i in 0..matrix.cols() - 1 {
        for j in i + 1..matrix.cols() {
            max = max.max(matrix.col_dotc(i, j).norm());
        }
    }
    Ok(max)
}

/// Closed-form coherence of the deterministic matrix:
/// `sqrt(M + 1) / (sqrt(2) * M)`.
pub fn coherence_closed_form(params: &SensingParams) -> f64 {
    let m = params.m() as f64;
    (m + 1.0).sqrt() / (std::f64::consts::SQRT_2 * m)
}

/// `<phi_n, phi_n'> = sum_m phi_n[m] * conj(phi_n'[m])` for distinct
/// columns of a unit-column matrix.
///
/// For the deterministic matrix this equals
/// `(jacobi(p*(n - n'), N) * j * sqrt(N) - 1) / (2 M)`.
pub fn column_inner_product(
    matrix: &ComplexMatrix,
    n: usize,
    n_prime: usize,
) -> Result<Complex64> {
    if matrix.norm_state() != NormState::UnitColumns {
        return Err(Error::NotUnitColumns);
    }
    if n == n_prime {
        return Err(Error::InvalidArgument(
            "inner product of a column with itself is its squared norm; use the norm".into(),
        ));
    }
    if n >= matrix.cols() || n_prime >= matrix.cols() {
        return Err(Error::InvalidArgument(format!(
            "column index out of range: {n} or {n_prime} >= {}",
            matrix.cols()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..matrix.rows() {
        acc += matrix.get(r, n) * matrix.get(r, n_prime).conj();
    }
    Ok(acc)
}

/// Gram matrix of the selected columns, mirrored to be exactly Hermitian.
fn sub_gram(matrix: &ComplexMatrix, support: &[usize]) -> ComplexMatrix {
    let k = support.len();
    let mut g = Mat::zeros(k, k);
    for i in 0..k {
        let norm = matrix.col_norm(support[i]);
        g.set(i, i, Complex64::new(norm * norm, 0.0));
        for j in i + 1..k {
            let d = matrix.col_dotc(support[i], support[j]);
            g.set(i, j, d);
            g.set(j, i, d.conj());
        }
    }
    g
}

/// Smallest and largest eigenvalues of the Gram matrix of the selected
/// columns.
pub fn sub_gram_extreme_eigs(matrix: &ComplexMatrix, support: &[usize]) -> Result<(f64, f64)> {
    if matrix.norm_state() != NormState::UnitColumns {
        return Err(Error::NotUnitColumns);
    }
    if support.is_empty() || support.len() > matrix.rows() {
        return Err(Error::InvalidArgument(format!(
            "support size must be in 1..={}, got {}",
            matrix.rows(),
            support.len()
        )));
    }
    if let Some(&bad) = support.iter().find(|&&c| c >= matrix.cols()) {
        return Err(Error::InvalidArgument(format!(
            "support index {bad} out of range for {} columns",
            matrix.cols()
        )));
    }
    let vals = hermitian_eigenvalues(&sub_gram(matrix, support))?;
    Ok((vals[0], *vals.last().unwrap()))
}

/// Draws `trials` uniform `k`-subsets of columns and records the mean and
/// extreme sub-Gram eigenvalues. Trial `t` draws from `rng.split(t)`, so
/// results do not depend on evaluation order.
pub fn rip_eigen_sweep(
    matrix: &ComplexMatrix,
    k: usize,
    trials: usize,
    rng: &CounterRng,
) -> Result<EigenSweepRecord> {
    if k == 0 || k > matrix.rows() {
        return Err(Error::InvalidArgument(format!(
            "sparsity must be in 1..={}, got {k}",
            matrix.rows()
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let mut sum_min = 0.0;
    let mut sum_max = 0.0;
    let mut ext_min = f64::INFINITY;
    let mut ext_max = f64::NEG_INFINITY;
    for t in 0..trials {
        let mut trial_rng = rng.split(t as u64);
        let support = trial_rng.sample_distinct(matrix.cols(), k);
        let (lo, hi) = sub_gram_extreme_eigs(matrix, &support)?;
        sum_min += lo;
        sum_max += hi;
        ext_min = ext_min.min(lo);
        ext_max = ext_max.max(hi);
    }
    Ok(EigenSweepRecord {
        k,
        trials,
        mean_max_eig: sum_max / trials as f64,
        mean_min_eig: sum_min / trials as f64,
        extreme_max_eig: ext_max,
        extreme_min_eig: ext_min,
    })
}

/// Largest eigenvalue of `Phi^H Phi` (the squared operator norm), computed
/// on whichever Gram product is smaller.
pub fn spectral_norm_squared(matrix: &ComplexMatrix) -> Result<f64> {
    let (rows, cols) = (matrix.rows(), matrix.cols());
    let gram = if rows <= cols {
        // Phi Phi^H: same nonzero spectrum as Phi^H Phi
        let mut g = Mat::zeros(rows, rows);
        for i in 0..rows {
            for j in i..rows {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..cols {
                    acc += matrix.get(i, c) * matrix.get(j, c).conj();
                }
                g.set(i, j, acc);
                g.set(j, i, acc.conj());
            }
        }
        // mirror made it Hermitian; force the diagonal real
        for i in 0..rows {
            let d = g.get(i, i);
            g.set(i, i, Complex64::new(d.re, 0.0));
        }
        g
    } else {
        sub_gram(matrix, &(0..cols).collect::<Vec<_>>())
    };
    let vals = hermitian_eigenvalues(&gram)?;
    Ok(*vals.last().unwrap())
}

/// Builds the normalized matrix and reports the two quantities the
/// statistical-RIP condition bounds, together with their ingredients.
pub fn rip_bound_report(
    params: &SensingParams,
    k: usize,
    delta: f64,
    epsilon: f64,
) -> Result<RipBoundReport> {
    if !(0.0 < delta && delta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "delta must be in (0, 1), got {delta}"
        )));
    }
    if !(0.0 < epsilon && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be in (0, 1), got {epsilon}"
        )));
    }
    let n = params.n() as usize;
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "sparsity must be in 1..={n}, got {k}"
        )));
    }
    let mu = coherence_closed_form(params);
    let normalized = build_sensing_matrix(params).column_normalize()?;
    let spectral_norm_sq = spectral_norm_squared(&normalized)?;
    let ln_term = (params.n() as f64 / epsilon).ln();
    Ok(RipBoundReport {
        mu,
        spectral_norm_sq,
        delta,
        epsilon,
        coherence_term: mu * ln_term,
        energy_term: (k as f64 / n as f64) * spectral_norm_sq * ln_term,
    })
}

/// The sparsity level below which greedy and convex recovery are both
/// guaranteed: `(1/mu + 1) / 2`.
pub fn sparsity_guarantee(params: &SensingParams) -> f64 {
    0.5 * (1.0 / coherence_closed_form(params) + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::dotc;
    use crate::numtheory::jacobi_symbol;

    fn det_unit(n: u64, p: u64) -> (SensingParams, ComplexMatrix) {
        let params = SensingParams::new(n, p).unwrap();
        let a = build_sensing_matrix(&params).column_normalize().unwrap();
        (params, a)
    }

    #[test]
    fn params_validation() {
        assert!(SensingParams::new(23, 1).is_ok());
        assert!(matches!(
            SensingParams::new(13, 1),
            Err(Error::InvalidModulus(13))
        ));
        assert!(matches!(
            SensingParams::new(7, 14),
            Err(Error::NotCoprime { .. })
        ));
        assert!(SensingParams::new(7, 0).is_err());
        let p = SensingParams::new(103, 100).unwrap();
        assert_eq!(p.m(), 51);
        assert_eq!(p.modulus().z(), 25);
    }

    #[test]
    fn matrix_entries_match_construction() {
        let params = SensingParams::new(7, 1).unwrap();
        let a = build_sensing_matrix(&params);
        assert_eq!(a.rows(), 3);
        assert_eq!(a.cols(), 7);
        // (m=1, n=7): exponent is an integer multiple of 2*pi
        assert!((a.get(0, 6) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        // (m=1, n=1): exp(j*2*pi/7)
        let w = Complex64::new(
            (2.0 * std::f64::consts::PI / 7.0).cos(),
            (2.0 * std::f64::consts::PI / 7.0).sin(),
        );
        assert!((a.get(0, 0) - w).norm() < 1e-12);
    }

    #[test]
    fn row_two_is_fourier_row_four_for_n11() {
        // 1 * 2^2 mod 11 = 4
        let params = SensingParams::new(11, 1).unwrap();
        let a = build_sensing_matrix(&params);
        for c in 0..11usize {
            let angle = 2.0 * std::f64::consts::PI * (4 * (c + 1)) as f64 / 11.0;
            let f = Complex64::new(angle.cos(), angle.sin());
            assert!((a.get(1, c) - f).norm() < 1e-12, "col {c}");
        }
    }

    #[test]
    fn entries_have_unit_modulus() {
        for (n, p) in [(7u64, 1u64), (11, 1), (23, 5), (103, 100)] {
            let a = build_sensing_matrix(&SensingParams::new(n, p).unwrap());
            for v in a.data() {
                assert!((v.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn normalization_scales_by_sqrt_m() {
        let (params, a) = det_unit(7, 1);
        let expect = 1.0 / (params.m() as f64).sqrt();
        for c in 0..a.cols() {
            assert!((a.col_norm(c) - 1.0).abs() < 1e-12);
        }
        for v in a.data() {
            assert!((v.norm() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn coherence_bruteforce_matches_closed_form() {
        let (params, a) = det_unit(23, 1);
        let bf = coherence_bruteforce(&a).unwrap();
        assert!((bf - 0.22268088570756162).abs() < 1e-10);
        assert!((bf - coherence_closed_form(&params)).abs() < 1e-10);
    }

    #[test]
    fn coherence_requires_unit_columns() {
        let params = SensingParams::new(7, 1).unwrap();
        let raw = build_sensing_matrix(&params);
        assert_eq!(coherence_bruteforce(&raw), Err(Error::NotUnitColumns));
    }

    #[test]
    fn coherence_of_orthonormal_and_duplicate_columns() {
        let id = ComplexMatrix::identity(3).column_normalize().unwrap();
        assert!(coherence_bruteforce(&id).unwrap() < 1e-15);
        // two identical columns
        let m = Mat::from_fn(2, 2, |r, _| {
            Complex64::new(if r == 0 { 3.0 } else { 4.0 }, 0.0)
        })
        .column_normalize()
        .unwrap();
        assert!((coherence_bruteforce(&m).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_values() {
        let cases = [
            (23u64, 1u64, 0.22268088570756162),
            (103, 100, 0.0999807747763291),
            (7, 1, 0.4714045207910316),
        ];
        for (n, p, expect) in cases {
            let params = SensingParams::new(n, p).unwrap();
            assert!((coherence_closed_form(&params) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn inner_product_modulus_and_real_part() {
        let (params, a) = det_unit(7, 1);
        let mu = coherence_closed_form(&params);
        let ip = column_inner_product(&a, 0, 1).unwrap();
        assert!((ip.norm() - mu).abs() < 1e-10);

        let (params11, a11) = det_unit(11, 1);
        let m = params11.m() as f64;
        for i in 0..11usize {
            for j in 0..11usize {
                if i == j {
                    continue;
                }
                let ip = column_inner_product(&a11, i, j).unwrap();
                assert!((ip.re + 1.0 / (2.0 * m)).abs() < 1e-10, "({i},{j})");
            }
        }
    }

    #[test]
    fn inner_product_sign_law() {
        for (n, p) in [(11u64, 1u64), (23, 2), (23, 9)] {
            let (params, a) = det_unit(n, p);
            let m = params.m() as f64;
            let half_sqrt_n = (n as f64).sqrt() / 2.0;
            for i in 0..n as usize {
                for j in 0..n as usize {
                    if i == j {
                        continue;
                    }
                    let d = i as i64 - j as i64;
                    let sign = jacobi_symbol(p as i64 * d, n).unwrap() as f64;
                    let ip = column_inner_product(&a, i, j).unwrap();
                    assert!(
                        (m * ip.im - sign * half_sqrt_n).abs() < 1e-9,
                        "N={n} p={p} pair ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn constant_correlation_across_all_pairs() {
        let (params, a) = det_unit(23, 5);
        let mu = coherence_closed_form(&params);
        for i in 0..a.cols() {
            for j in i + 1..a.cols() {
                let ip = column_inner_product(&a, i, j).unwrap();
                assert!((ip.norm() - mu).abs() < 1e-9, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn inner_product_rejects_same_column() {
        let (_, a) = det_unit(7, 1);
        assert!(column_inner_product(&a, 2, 2).is_err());
        assert!(column_inner_product(&a, 0, 99).is_err());
    }

    #[test]
    fn orthonormal_pair_inner_product_is_zero() {
        let id = ComplexMatrix::identity(2).column_normalize().unwrap();
        let ip = column_inner_product(&id, 0, 1).unwrap();
        assert!(ip.norm() < 1e-15);
    }

    #[test]
    fn random_partial_fourier_basics() {
        let mut rng = CounterRng::from_seed(11);
        let m = random_partial_fourier(23, 11, &mut rng).unwrap();
        assert_eq!((m.rows(), m.cols()), (11, 23));
        for v in m.data() {
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
        // same seed, same matrix
        let mut rng2 = CounterRng::from_seed(11);
        let m2 = random_partial_fourier(23, 11, &mut rng2).unwrap();
        assert_eq!(m, m2);
        assert!(random_partial_fourier(5, 6, &mut rng).is_err());
    }

    #[test]
    fn full_fourier_draw_is_row_permutation() {
        let n = 13usize;
        let mut rng = CounterRng::from_seed(3);
        let m = random_partial_fourier(n, n, &mut rng).unwrap();
        let mut seen = vec![false; n + 1];
        for r in 0..n {
            // infer the row index from the first entry exp(j*2*pi*m/n)
            let angle = m.get(r, 0).arg().rem_euclid(2.0 * std::f64::consts::PI);
            let idx = (angle * n as f64 / (2.0 * std::f64::consts::PI)).round() as usize;
            let idx = if idx == 0 { n } else { idx };
            assert!(!seen[idx], "row {idx} drawn twice");
            seen[idx] = true;
            for c in 0..n {
                let a = 2.0 * std::f64::consts::PI * ((idx * (c + 1)) % n) as f64 / n as f64;
                assert!((m.get(r, c) - Complex64::new(a.cos(), a.sin())).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn sub_gram_extremes() {
        let (params, a) = det_unit(23, 1);
        let mu = coherence_closed_form(&params);
        let (lo, hi) = sub_gram_extreme_eigs(&a, &[4]).unwrap();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
        let (lo, hi) = sub_gram_extreme_eigs(&a, &[2, 17]).unwrap();
        assert!((lo - (1.0 - mu)).abs() < 1e-10);
        assert!((hi - (1.0 + mu)).abs() < 1e-10);
        let id = ComplexMatrix::identity(4).column_normalize().unwrap();
        let (lo, hi) = sub_gram_extreme_eigs(&id, &[0, 2, 3]).unwrap();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
        assert!(sub_gram_extreme_eigs(&a, &[]).is_err());
        assert!(sub_gram_extreme_eigs(&a, &[30]).is_err());
    }

    #[test]
    fn eigen_sweep_degenerate_cases() {
        let (params, a) = det_unit(23, 1);
        let rng = CounterRng::from_seed(21);
        let rec = rip_eigen_sweep(&a, 1, 50, &rng).unwrap();
        for v in [
            rec.mean_max_eig,
            rec.mean_min_eig,
            rec.extreme_max_eig,
            rec.extreme_min_eig,
        ] {
            assert!((v - 1.0).abs() < 1e-12);
        }
        let mu = coherence_closed_form(&params);
        let rec = rip_eigen_sweep(&a, 2, 100, &rng).unwrap();
        assert!((rec.mean_max_eig - (1.0 + mu)).abs() < 1e-10);
        assert!((rec.extreme_max_eig - (1.0 + mu)).abs() < 1e-10);
        assert!((rec.mean_min_eig - (1.0 - mu)).abs() < 1e-10);
        assert!((rec.extreme_min_eig - (1.0 - mu)).abs() < 1e-10);
    }

    #[test]
    fn eigen_sweep_record_ordering_invariant() {
        let (_, a) = det_unit(23, 1);
        let rng = CounterRng::from_seed(77);
        for k in [3usize, 6, 9] {
            let rec = rip_eigen_sweep(&a, k, 300, &rng).unwrap();
            assert!(rec.extreme_min_eig <= rec.mean_min_eig);
            assert!(rec.mean_min_eig <= 1.0 + 1e-12);
            assert!(1.0 - 1e-12 <= rec.mean_max_eig);
            assert!(rec.mean_max_eig <= rec.extreme_max_eig);
            assert!(rec.extreme_min_eig >= -1e-12);
        }
    }

    #[test]
    fn eigen_sweep_extremes_match_exhaustive_enumeration() {
        // N=7, k=3: only 35 supports, and 3000 seeded trials hit them all
        let (_, a) = det_unit(7, 1);
        let k = 3;
        let mut ext_min = f64::INFINITY;
        let mut ext_max = f64::NEG_INFINITY;
        for i in 0..7usize {
            for j in i + 1..7 {
                for l in j + 1..7 {
                    let (lo, hi) = sub_gram_extreme_eigs(&a, &[i, j, l]).unwrap();
                    ext_min = ext_min.min(lo);
                    ext_max = ext_max.max(hi);
                }
            }
        }
        let rng = CounterRng::from_seed(123);
        let rec = rip_eigen_sweep(&a, k, 3000, &rng).unwrap();
        assert!((rec.extreme_min_eig - ext_min).abs() < 1e-12);
        assert!((rec.extreme_max_eig - ext_max).abs() < 1e-12);
    }

    #[test]
    fn spectral_norm_of_normalized_matrices() {
        let (params, a) = det_unit(23, 1);
        let expect = params.n() as f64 / params.m() as f64;
        assert!((spectral_norm_squared(&a).unwrap() - expect).abs() < 1e-8);

        let id = ComplexMatrix::identity(5);
        assert!((spectral_norm_squared(&id).unwrap() - 1.0).abs() < 1e-10);

        let mut rng = CounterRng::from_seed(8);
        let rpf = random_partial_fourier(23, 11, &mut rng)
            .unwrap()
            .column_normalize()
            .unwrap();
        assert!((spectral_norm_squared(&rpf).unwrap() - expect).abs() < 1e-8);
    }

    #[test]
    fn rows_are_orthogonal() {
        for (n, p) in [(7u64, 1u64), (23, 5), (103, 100)] {
            let params = SensingParams::new(n, p).unwrap();
            let a = build_sensing_matrix(&params);
            for i in 0..a.rows() {
                for j in 0..a.rows() {
                    let d = dotc(a.row(i), a.row(j));
                    let expect = if i == j { n as f64 } else { 0.0 };
                    assert!(
                        (d - Complex64::new(expect, 0.0)).norm() < 1e-9,
                        "N={n} rows ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn bound_report_values() {
        let params = SensingParams::new(103, 100).unwrap();
        let rep = rip_bound_report(&params, 1, 0.5, 0.5).unwrap();
        assert!((rep.mu - coherence_closed_form(&params)).abs() < 1e-15);
        assert!((rep.coherence_term - 0.5326851872679224).abs() < 1e-9);
        assert!((rep.spectral_norm_sq - 103.0 / 51.0).abs() < 1e-8);
        // k = N makes the energy term the full spectral term
        let rep_full = rip_bound_report(&params, 103, 0.5, 0.5).unwrap();
        let ln_term = (103.0f64 / 0.5).ln();
        assert!((rep_full.energy_term - rep_full.spectral_norm_sq * ln_term).abs() < 1e-9);
        assert!(rip_bound_report(&params, 0, 0.5, 0.5).is_err());
        assert!(rip_bound_report(&params, 1, 1.5, 0.5).is_err());
        assert!(rip_bound_report(&params, 1, 0.5, 0.0).is_err());
    }

    #[test]
    fn sparsity_guarantee_values() {
        let p103 = SensingParams::new(103, 100).unwrap();
        assert!((sparsity_guarantee(&p103) - 5.500961446023693).abs() < 1e-9);
        let p23 = SensingParams::new(23, 1).unwrap();
        assert!((sparsity_guarantee(&p23) - 2.7453655975512468).abs() < 1e-9);
        // large-M limit approaches sqrt(M/2)
        let p499 = SensingParams::new(499, 1).unwrap();
        let limit = (p499.m() as f64 / 2.0).sqrt();
        assert!((sparsity_guarantee(&p499) / limit - 1.0).abs() < 0.05);
    }

    #[test]
    fn coherence_identity_over_parameter_grid() {
        // brute force equals closed form for every small valid (N, p)
        for n in [7u64, 11, 19, 23, 31, 43] {
            for p in [1u64, 2, 3, n - 1] {
                if crate::numtheory::gcd(p, n) != 1 {
                    continue;
                }
                let (params, a) = det_unit(n, p);
                let bf = coherence_bruteforce(&a).unwrap();
                assert!(
                    (bf - coherence_closed_form(&params)).abs() < 1e-9,
                    "N={n} p={p}"
                );
            }
        }
    }
}

//! Sub-Nyquist harmonic detection.
//!
//! A multi-tone signal on the grid `{f0, 2*f0, ..., N*f0}` is sampled at
//! the deterministic time points `{l * dt : l = m^2 mod N}` with
//! `dt = p / (N * f0)`. Those samples are exactly a measurement through
//! the deterministic sensing matrix, so the tone frequencies, amplitudes,
//! and phases fall out of a sparse recovery over the real-domain system
//! `y' = B' x'`.
//!
//! Ordering convention: samples travel in m-order (the order of the
//! construction index `m = 1..=M`), which is the row order of the sensing
//! matrix. The sorted slot list on [`SamplingSchedule`] describes the
//! acquisition times; [`SamplingSchedule::measurement_slots`] gives the
//! m-order permutation that measurement vectors use. This is the most
//! bug-prone convention in the system; `schedule_identity` in the tests
//! pins it.

use crate::matrix::{norm2, Mat, RealMatrix};
use crate::numtheory::is_valid_modulus;
use crate::recovery::{omp, RecoveryConfig};
use crate::rng::CounterRng;
use crate::sensing::{build_sensing_matrix, SensingParams};
use crate::{Complex64, ComplexMatrix, Error, Result};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Wraps a phase into `[0, 2*pi)`.
pub fn normalize_phase(phase: f64) -> f64 {
    let p = phase.rem_euclid(TWO_PI);
    if p >= TWO_PI {
        0.0
    } else {
        p
    }
}

/// The deterministic sampling schedule and its rates.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingSchedule {
    params: SensingParams,
    f0: f64,
    f_grid_max: f64,
    f_sample: f64,
    dt: f64,
    slots: Vec<u64>,
}

impl SamplingSchedule {
    pub fn params(&self) -> &SensingParams {
        &self.params
    }

    /// Fundamental grid frequency (Hz).
    pub fn f0(&self) -> f64 {
        self.f0
    }

    /// Highest grid frequency `N * f0` (Hz).
    pub fn f_grid_max(&self) -> f64 {
        self.f_grid_max
    }

    /// Sampling rate `f_grid_max / p` (Hz).
    pub fn f_sample(&self) -> f64 {
        self.f_sample
    }

    /// Sample period `1 / f_sample` (s).
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// The slot set `{m^2 mod N}`, sorted: acquisition order in time.
    pub fn slots(&self) -> &[u64] {
        &self.slots
    }

    /// Slots in m-order (`m = 1..=M`), the order measurement vectors use.
    pub fn measurement_slots(&self) -> Vec<u64> {
        let n = self.params.n();
        (1..=self.params.m() as u64).map(|m| m * m % n).collect()
    }

    /// Sample times in m-order.
    pub fn measurement_times(&self) -> Vec<f64> {
        self.measurement_slots()
            .iter()
            .map(|&l| l as f64 * self.dt)
            .collect()
    }
}

/// Builds the schedule for grid size `n`, undersampling factor `p`, and
/// fundamental frequency `f0`.
pub fn make_schedule(n: u64, p: u64, f0: f64) -> Result<SamplingSchedule> {
    let params = SensingParams::new(n, p)?;
    if !(f0 > 0.0 && f0.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "fundamental frequency must be positive and finite, got {f0}"
        )));
    }
    let f_grid_max = n as f64 * f0;
    let f_sample = f_grid_max / p as f64;
    let mut slots: Vec<u64> = (1..=params.m() as u64).map(|m| m * m % n).collect();
    slots.sort_unstable();
    Ok(SamplingSchedule {
        params,
        f0,
        f_grid_max,
        f_sample,
        dt: 1.0 / f_sample,
        slots,
    })
}

/// The smallest valid modulus `>= n`; a suggestion helper for callers whose
/// desired grid size is not itself valid. Never substituted silently.
pub fn suggest_modulus(n: u64) -> u64 {
    let mut candidate = n.max(7);
    loop {
        if is_valid_modulus(candidate) {
            return candidate;
        }
        candidate += 1;
    }
}

/// One tone: grid index (frequency `index * f0`), amplitude, phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicComponent {
    pub index: usize,
    pub amplitude: f64,
    pub phase: f64,
}

/// A ground-truth multi-tone signal with indexes in the detectable range.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSpec {
    components: Vec<HarmonicComponent>,
}

impl HarmonicSpec {
    /// Validates: distinct indexes in `1..=max_index`, positive amplitudes,
    /// phases in `[0, 2*pi)`.
    pub fn new(components: Vec<HarmonicComponent>, max_index: usize) -> Result<Self> {
        let mut seen = vec![false; max_index + 1];
        for c in &components {
            if c.index == 0 || c.index > max_index {
                return Err(Error::InvalidArgument(format!(
                    "frequency index {} outside 1..={max_index}",
                    c.index
                )));
            }
            if std::mem::replace(&mut seen[c.index], true) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate frequency index {}",
                    c.index
                )));
            }
            if !(c.amplitude > 0.0 && c.amplitude.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "amplitude must be positive, got {}",
                    c.amplitude
                )));
            }
            if !(0.0..TWO_PI).contains(&c.phase) {
                return Err(Error::InvalidArgument(format!(
                    "phase must be in [0, 2*pi), got {}",
                    c.phase
                )));
            }
        }
        Ok(HarmonicSpec { components })
    }

    pub fn components(&self) -> &[HarmonicComponent] {
        &self.components
    }

    pub fn sparsity(&self) -> usize {
        self.components.len()
    }

    pub fn indexes(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.index).collect()
    }
}

/// `sum_i C_i * cos(2*pi * index_i * f0 * t + phase_i)` at each time.
pub fn waveform(components: &[HarmonicComponent], f0: f64, times: &[f64]) -> Vec<f64> {
    times
        .iter()
        .map(|&t| {
            components
                .iter()
                .map(|c| c.amplitude * (TWO_PI * (c.index as f64 * f0) * t + c.phase).cos())
                .sum()
        })
        .collect()
}

/// Ideal point samples of the signal at the schedule's times, in m-order.
pub fn synthesize_samples(spec: &HarmonicSpec, schedule: &SamplingSchedule) -> Vec<f64> {
    waveform(
        spec.components(),
        schedule.f0(),
        &schedule.measurement_times(),
    )
}

/// Adds white Gaussian noise at the requested SNR (dB), with the noise
/// variance referenced to the mean squared value of the input samples.
/// `snr_db = f64::INFINITY` returns the samples unchanged.
pub fn add_awgn(samples: &[f64], snr_db: f64, rng: &mut CounterRng) -> Result<Vec<f64>> {
    if snr_db == f64::INFINITY {
        return Ok(samples.to_vec());
    }
    if snr_db.is_nan() {
        return Err(Error::InvalidArgument("SNR must not be NaN".into()));
    }
    let power = samples.iter().map(|s| s * s).sum::<f64>() / samples.len().max(1) as f64;
    if power == 0.0 {
        return Err(Error::InvalidArgument(
            "cannot set a finite SNR on an all-zero signal".into(),
        ));
    }
    let sigma = (power / 10f64.powf(snr_db / 10.0)).sqrt();
    Ok(samples
        .iter()
        .map(|&s| s + sigma * rng.standard_normal())
        .collect())
}

/// The real-domain measurement system.
///
/// `b` holds the first `M` columns of the raw sensing matrix (the dropped
/// column `N` is the all-ones DC column; signals are assumed zero-mean).
/// `bprime` is the `2M x 4M` block matrix
/// `[[Br, -Bi, Br, Bi], [Bi, Br, -Bi, Br]]` with unit columns;
/// `column_scales` records the factor applied to each column (all equal to
/// `1/sqrt(M)`, the exact norm of the raw columns), which keeps the shared
/// blocks bit-identical after normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSystem {
    b: ComplexMatrix,
    bprime: RealMatrix,
    column_scales: Vec<f64>,
}

impl RealSystem {
    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn bprime(&self) -> &RealMatrix {
        &self.bprime
    }

    pub fn column_scales(&self) -> &[f64] {
        &self.column_scales
    }

    pub fn m(&self) -> usize {
        self.b.rows()
    }
}

/// Assembles `B` and the unit-column `B'` for the given parameters.
pub fn build_real_system(params: &SensingParams) -> RealSystem {
    let a = build_sensing_matrix(params);
    let m = params.m();
    let b = a.select_columns(&(0..m).collect::<Vec<_>>());
    let scale = 1.0 / (m as f64).sqrt();
    let b_unit: Vec<Complex64> = b.data().iter().map(|v| v.scale(scale)).collect();
    let entry = |r: usize, c: usize| b_unit[r * m + c];
    let bprime = Mat::from_fn(2 * m, 4 * m, |r, c| {
        let col = c % m;
        let block = c / m;
        if r < m {
            match block {
                0 | 2 => entry(r, col).re,
                1 => -entry(r, col).im,
                _ => entry(r, col).im,
            }
        } else {
            match block {
                0 => entry(r - m, col).im,
                1 | 3 => entry(r - m, col).re,
                _ => -entry(r - m, col).im,
            }
        }
    })
    .assume_unit_columns();
    RealSystem {
        b,
        bprime,
        column_scales: vec![scale; 4 * m],
    }
}

/// The measurement vector pair: the real samples and the stacked
/// `y' = (2*y_r ; 0)` the real-domain recovery runs on.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementAssembly {
    y_r: Vec<f64>,
    y_prime: Vec<f64>,
}

impl MeasurementAssembly {
    pub fn y_r(&self) -> &[f64] {
        &self.y_r
    }

    pub fn y_prime(&self) -> &[f64] {
        &self.y_prime
    }
}

/// Stacks `M` samples (in m-order) into `y' = (2*y_r ; 0...0)`.
pub fn assemble_measurement(samples: &[f64]) -> MeasurementAssembly {
    let mut y_prime = Vec::with_capacity(2 * samples.len());
    y_prime.extend(samples.iter().map(|&s| 2.0 * s));
    y_prime.extend(std::iter::repeat(0.0).take(samples.len()));
    MeasurementAssembly {
        y_r: samples.to_vec(),
        y_prime,
    }
}

/// A recovered spectrum: components sorted by frequency index, plus the
/// recovery residual norm on `y'`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    components: Vec<HarmonicComponent>,
    residual_norm: f64,
}

impl SpectrumEstimate {
    pub fn components(&self) -> &[HarmonicComponent] {
        &self.components
    }

    pub fn residual_norm(&self) -> f64 {
        self.residual_norm
    }

    pub fn indexes(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.index).collect()
    }
}

/// Recovers the `k` strongest tones from an assembled measurement.
///
/// Runs OMP on `(B', y')` with an iteration budget of `4k` — each active
/// frequency occupies up to four positions of `x'` — stopping early once
/// the residual drops below `1e-9 * |y'|`. The four recovered blocks fold
/// back into one complex coefficient per frequency:
/// `x1[n] = (x'[n]*s_n + x'[2M+n]*s_{2M+n})/2
///        + j*(x'[M+n]*s_{M+n} - x'[3M+n]*s_{3M+n})/2`,
/// with the recorded column scales `s` mapping unit-column coefficients
/// back to the raw system. Amplitude is `|x1[n]|`, phase is `arg(x1[n])`
/// wrapped into `[0, 2*pi)`.
pub fn estimate_spectrum(
    system: &RealSystem,
    assembly: &MeasurementAssembly,
    k: usize,
) -> Result<SpectrumEstimate> {
    let m = system.m();
    if k == 0 || k > m {
        return Err(Error::InvalidArgument(format!(
            "sparsity must be in 1..={m}, got {k}"
        )));
    }
    if assembly.y_r.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "expected {m} samples, got {}",
            assembly.y_r.len()
        )));
    }
    let y_prime = assembly.y_prime();
    let config = RecoveryConfig::with_tolerance(4 * k, 1e-9 * norm2(y_prime));
    let result = omp(system.bprime(), y_prime, &config).map_err(|f| f.error)?;

    let mut x_prime = vec![0.0f64; 4 * m];
    for (&col, &coeff) in result.support.iter().zip(&result.coefficients) {
        x_prime[col] = coeff * system.column_scales()[col];
    }
    let x1: Vec<Complex64> = (0..m)
        .map(|j| {
            Complex64::new(
                0.5 * (x_prime[j] + x_prime[2 * m + j]),
                0.5 * (x_prime[m + j] - x_prime[3 * m + j]),
            )
        })
        .collect();

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        x1[b].norm()
            .partial_cmp(&x1[a].norm())
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut components: Vec<HarmonicComponent> = order[..k]
        .iter()
        .map(|&j| HarmonicComponent {
            index: j + 1,
            amplitude: x1[j].norm(),
            phase: normalize_phase(x1[j].arg()),
        })
        .collect();
    components.sort_by_key(|c| c.index);
    Ok(SpectrumEstimate {
        components,
        residual_norm: result.residual_norm,
    })
}

/// Evaluates the recovered spectrum in the time domain.
pub fn reconstruct_signal(estimate: &SpectrumEstimate, f0: f64, times: &[f64]) -> Vec<f64> {
    waveform(estimate.components(), f0, times)
}

/// `sum |estimate - truth| / sum |truth|`.
pub fn relative_accumulated_error(estimate: &[f64], truth: &[f64]) -> Result<f64> {
    if estimate.len() != truth.len() {
        return Err(Error::DimensionMismatch(format!(
            "estimate has {} points, truth has {}",
            estimate.len(),
            truth.len()
        )));
    }
    let denom: f64 = truth.iter().map(|t| t.abs()).sum();
    if denom == 0.0 {
        return Err(Error::InvalidArgument(
            "relative error undefined for an all-zero truth".into(),
        ));
    }
    let num: f64 = estimate
        .iter()
        .zip(truth)
        .map(|(e, t)| (e - t).abs())
        .sum();
    Ok(num / denom)
}
